#pragma once

#include <utility>
#include <vector>

#include "ergcftp/graph.hpp"
#include "ergcftp/statistics.hpp"

namespace ergcftp {

/// Coupled lower/upper bounding states. Invariant: lower ⊆ upper, and
/// diff_count() equals differing_dyads(lower, upper) at all times.
class BoundPair {
 public:
  BoundPair(AdjacencyState lower, AdjacencyState upper);
  // (N'_n, K'_n) of the space.
  static BoundPair of_space(const GraphSpace& space);

  const AdjacencyState& lower() const noexcept { return lower_; }
  const AdjacencyState& upper() const noexcept { return upper_; }
  std::size_t diff_count() const noexcept { return diff_; }
  bool coalesced() const noexcept { return diff_ == 0; }

  // Set canonical free dyad d in each state, maintaining diff_count in O(1).
  // Keeping lower ⊆ upper is the caller's job (a valid kernel does).
  void set(Dyad d, bool lower_present, bool upper_present) noexcept;

 private:
  AdjacencyState lower_;
  AdjacencyState upper_;
  std::size_t diff_ = 0;
};

struct DeltaBounds {
  std::vector<double> lower;
  std::vector<double> upper;
};

/// Change-score bounds for the bounding chains.
/// Census-monotone components take Δ_d(L) or Δ_d(U) by the sign of θ_l;
/// statistic-monotone components use (0, t(U+_d) - t(L-_d)); custom
/// components with change_bounds() use those. Throws UnsupportedModel for a
/// general statistic without bounds.
class BoundScorer {
 public:
  BoundScorer(ModelSpec model, const GraphSpace& space);

  const ChangeScorer& scorer() const noexcept { return scorer_; }
  const ModelSpec& model() const noexcept { return scorer_.model(); }

  DeltaBounds delta_bounds(const BoundPair& pair, Dyad d) const;
  // (θᵀΔᴸ, θᵀΔᵁ)
  std::pair<double, double> log_odds_bounds(const BoundPair& pair, Dyad d) const;
  std::pair<double, double> prob_bounds(const BoundPair& pair, Dyad d) const {
    auto [lo, hi] = log_odds_bounds(pair, d);
    return {inverse_logit(lo), inverse_logit(hi)};
  }

 private:
  // Per-component (min, max) of Δ_d over the sandwich.
  std::pair<double, double> component_range(std::size_t l, const BoundPair& pair, Dyad d) const;

  ChangeScorer scorer_;
  bool all_census_ = true;
};

// Free-function forms. All compile a BoundScorer per call; the sampler keeps one.
DeltaBounds delta_bounds(const ModelSpec& model, const BoundPair& pair, Dyad d);
std::pair<double, double> prob_bounds(const ModelSpec& model, const BoundPair& pair, Dyad d);

// Present iff u <= p, for L and U with the same u.
BoundPair update_pair(const ModelSpec& model, const BoundPair& pair, Dyad d, double u);

// One step of the ERG Gibbs sampler: dyad present iff u <= logit^-1(θᵀΔ_d(y)).
AdjacencyState gibbs_step(const ModelSpec& model, const AdjacencyState& y, Dyad d, double u);

}  // namespace ergcftp
