#pragma once

#include <cmath>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ergcftp/graph.hpp"

namespace ergcftp {

enum class StatKind { EdgeCount, KStar, Triangle, Mutual, Custom };

// How a statistic's change score behaves under edge addition.
//   CensusMonotone:    0 <= Δ_d(y) <= Δ_d(y') whenever y ⊆ y'
//   StatisticMonotone: t itself is nondecreasing, Δ is not
//   General:           neither; needs user-supplied bounds
enum class Monotonicity { CensusMonotone, StatisticMonotone, General };

/// Extension point for user statistics. Override change_score when a closed
/// form exists; the default toggles the dyad and differences evaluate().
/// change_bounds returns (min, max) of Δ_d over {y : lower ⊆ y ⊆ upper};
/// it is required for Monotonicity::General.
class CustomStatistic {
 public:
  virtual ~CustomStatistic() = default;
  virtual std::string name() const = 0;
  virtual Monotonicity monotonicity() const = 0;
  virtual double evaluate(const AdjacencyState& y) const = 0;
  virtual double change_score(const AdjacencyState& y, Dyad d) const;
  virtual std::optional<std::pair<double, double>> change_bounds(const AdjacencyState& lower,
                                                                 const AdjacencyState& upper,
                                                                 Dyad d) const {
    (void)lower, (void)upper, (void)d;
    return std::nullopt;
  }
};

struct StatisticDescriptor {
  StatKind kind = StatKind::EdgeCount;
  unsigned k = 0;  // KStar order
  std::shared_ptr<const CustomStatistic> custom;

  static StatisticDescriptor edges() { return {StatKind::EdgeCount, 0, nullptr}; }
  static StatisticDescriptor kstar(unsigned k) { return {StatKind::KStar, k, nullptr}; }
  static StatisticDescriptor triangle() { return {StatKind::Triangle, 0, nullptr}; }
  static StatisticDescriptor mutual() { return {StatKind::Mutual, 0, nullptr}; }
  static StatisticDescriptor user(std::shared_ptr<const CustomStatistic> stat);

  Monotonicity monotonicity() const;
  // Short column-friendly name: edges, kstar2, triangle, mutual, or the custom name.
  std::string name() const;
  // Throws IncompatibleSpace.
  void validate_for(const GraphSpace& space) const;
};

/// Sufficient statistics t and natural parameter θ of an ERG model.
class ModelSpec {
 public:
  ModelSpec(std::vector<StatisticDescriptor> stats, std::vector<double> theta);

  const std::vector<StatisticDescriptor>& stats() const noexcept { return stats_; }
  const std::vector<double>& theta() const noexcept { return theta_; }
  std::size_t size() const noexcept { return stats_.size(); }

  ModelSpec with_theta(std::vector<double> theta) const { return ModelSpec(stats_, std::move(theta)); }
  void validate_for(const GraphSpace& space) const;

 private:
  std::vector<StatisticDescriptor> stats_;
  std::vector<double> theta_;
};

double binomial(unsigned n, unsigned k) noexcept;

// Triangle-closing two-paths between i and j, excluding i and j themselves.
std::uint32_t common_neighbors(const AdjacencyState& y, Vertex i, Vertex j) noexcept;

double evaluate(const StatisticDescriptor& stat, const AdjacencyState& y);
std::vector<double> evaluate(const ModelSpec& model, const AdjacencyState& y);

// t(y+_d) - t(y-_d), independent of the current value of d.
double change_score(const StatisticDescriptor& stat, const AdjacencyState& y, Dyad d);
std::vector<double> change_vector(const ModelSpec& model, const AdjacencyState& y, Dyad d);

/// Precompiled change-score evaluator for the sampler hot path: validates the
/// model once and tabulates the binomial coefficients each k-star needs.
class ChangeScorer {
 public:
  ChangeScorer(ModelSpec model, const GraphSpace& space);

  const ModelSpec& model() const noexcept { return model_; }
  std::size_t size() const noexcept { return model_.size(); }

  double score(std::size_t l, const AdjacencyState& y, Dyad d) const;
  void scores(const AdjacencyState& y, Dyad d, std::span<double> out) const;
  // θᵀΔ_d(y)
  double log_odds(const AdjacencyState& y, Dyad d) const;

 private:
  ModelSpec model_;
  std::vector<std::vector<double>> kstar_table_;  // per statistic: C(m, k-1) for m = 0..n
};

inline double inverse_logit(double x) noexcept {
  return x >= 0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
}

}  // namespace ergcftp
