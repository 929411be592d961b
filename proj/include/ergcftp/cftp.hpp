#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ergcftp/bounding.hpp"
#include "ergcftp/graph.hpp"
#include "ergcftp/statistics.hpp"
#include "ergcftp/tape.hpp"

namespace ergcftp {

enum class OnMaxDepth { Fail, ReturnDiagnostic };

struct CftpConfig {
  std::uint64_t seed = 1;
  std::size_t initial_depth = 0;  // 0: number of free dyads
  std::size_t max_depth = std::size_t{1} << 20;
  OnMaxDepth on_max_depth = OnMaxDepth::Fail;
  // Run a shadow chain from a random interior state and count sandwich breaches.
  bool audit = false;

  static constexpr std::size_t kGrowthFactor = 2;
};

struct DrawResult {
  AdjacencyState graph;
  bool coalesced = false;
  // Updates from the start of the final round until L = U.
  std::size_t coalescence_time = 0;
  // Chain updates over all rounds (bounding pair steps + coalesced steps).
  std::size_t total_updates = 0;
  std::size_t rounds = 0;
  std::size_t final_depth = 0;
  std::size_t audit_violations = 0;
};

class NonCoalescenceError : public std::runtime_error {
 public:
  NonCoalescenceError(const std::string& what, DrawResult diagnostics)
      : std::runtime_error(what), diagnostics_(std::move(diagnostics)) {}
  const DrawResult& diagnostics() const noexcept { return diagnostics_; }

 private:
  DrawResult diagnostics_;
};

// What the CFTP driver needs from a model: bounds for the pair, the
// single-chain conditional, and the threshold convention.
template <class K>
concept CftpKernel = requires(const K& k, const BoundPair& pair, const AdjacencyState& y, Dyad d,
                              double u, double p) {
  { k.bound_probs(pair, d) } -> std::convertible_to<std::pair<double, double>>;
  { k.prob(y, d) } -> std::convertible_to<double>;
  { K::accept(u, p) } -> std::convertible_to<bool>;
};

/// ERG Gibbs kernel: present iff u <= logit^-1(θᵀΔ).
class ErgKernel {
 public:
  ErgKernel(ModelSpec model, const GraphSpace& space) : bounds_(std::move(model), space) {}

  std::pair<double, double> bound_probs(const BoundPair& pair, Dyad d) const {
    return bounds_.prob_bounds(pair, d);
  }
  double prob(const AdjacencyState& y, Dyad d) const {
    return inverse_logit(bounds_.scorer().log_odds(y, d));
  }
  static bool accept(double u, double p) noexcept { return u <= p; }

  const BoundScorer& bounds() const noexcept { return bounds_; }

 private:
  BoundScorer bounds_;
};

namespace detail {

AdjacencyState random_interior(const BoundPair& pair, std::uint64_t seed);
void validate_config(const CftpConfig& config, const GraphSpace& space);

}  // namespace detail

/// Coupling from the past with sandwiching bounding chains and a doubling
/// back-off. The tape is shared by L, U and the coalesced chain and is only
/// ever extended into the past.
template <CftpKernel Kernel>
DrawResult run_cftp(const Kernel& kernel, const GraphSpace& space, const CftpConfig& config) {
  detail::validate_config(config, space);
  const auto& dyads = space.free_dyads();
  RandomTape tape(config.seed, dyads.size());
  std::size_t depth = config.initial_depth ? config.initial_depth : dyads.size();
  tape.extend(depth);

  DrawResult result{AdjacencyState(space)};
  for (;;) {
    ++result.rounds;
    result.final_depth = depth;
    const std::uint64_t tape_mark = config.audit ? tape.fingerprint(depth) : 0;

    BoundPair pair = BoundPair::of_space(space);
    std::optional<AdjacencyState> shadow;
    if (config.audit) shadow = detail::random_interior(pair, derive_seed(config.seed, depth));

    bool coalesced = pair.coalesced();
    AdjacencyState y = pair.lower();
    std::size_t coal_time = 0;
    for (std::size_t t = depth; t >= 1; --t) {
      const TapeEntry& e = tape.at_time(t);
      const Dyad d = dyads[e.dyad];
      if (shadow) shadow->assign_free(d, Kernel::accept(e.u, kernel.prob(*shadow, d)));
      if (!coalesced) {
        const auto [pl, pu] = kernel.bound_probs(pair, d);
        pair.set(d, Kernel::accept(e.u, pl), Kernel::accept(e.u, pu));
        ++result.total_updates;
        if (shadow && !(is_subgraph(pair.lower(), *shadow) && is_subgraph(*shadow, pair.upper())))
          ++result.audit_violations;
        if (pair.coalesced()) {
          coalesced = true;
          coal_time = depth - t + 1;
          y = pair.lower();
        }
      } else {
        y.assign_free(d, Kernel::accept(e.u, kernel.prob(y, d)));
        ++result.total_updates;
        if (shadow && !(*shadow == y)) ++result.audit_violations;
      }
    }

    if (coalesced) {
      result.graph = std::move(y);
      result.coalesced = true;
      result.coalescence_time = coal_time;
      return result;
    }
    if (depth > config.max_depth / CftpConfig::kGrowthFactor) {
      result.graph = pair.upper();
      if (config.on_max_depth == OnMaxDepth::ReturnDiagnostic) return result;
      throw NonCoalescenceError("no coalescence within max depth " +
                                    std::to_string(config.max_depth) + " (last round depth " +
                                    std::to_string(depth) + ")",
                                std::move(result));
    }
    depth *= CftpConfig::kGrowthFactor;
    tape.extend(depth);
    if (config.audit && tape.fingerprint(result.final_depth) != tape_mark) ++result.audit_violations;
  }
}

// Exact draw from ERG(t, θ) on the space.
DrawResult sample(const ModelSpec& model, const GraphSpace& space, const CftpConfig& config);

struct Replication {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::optional<DrawResult> draw;  // empty on failure
  std::string error;
  std::optional<DrawResult> diagnostics;  // set for non-coalescence failures
};

/// Runs `count` independent replications; replication r uses
/// derive_seed(base_seed, r). Results are ordered by index and do not
/// depend on `workers`. A failing replication is recorded, not rethrown.
template <class DrawFn>
std::vector<Replication> run_replications(std::size_t count, std::size_t workers,
                                          std::uint64_t base_seed, const DrawFn& draw) {
  std::vector<Replication> out(count);
  const int threads = static_cast<int>(workers ? workers : 1);
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for num_threads(threads) schedule(dynamic, 1)
  for (std::int64_t r = 0; r < n; ++r) {
    auto& rep = out[std::size_t(r)];
    rep.index = std::size_t(r);
    rep.seed = derive_seed(base_seed, std::uint64_t(r));
    try {
      rep.draw = draw(rep.seed);
    } catch (const NonCoalescenceError& e) {
      rep.error = e.what();
      rep.diagnostics = e.diagnostics();
    } catch (const std::exception& e) {
      rep.error = e.what();
    }
  }
  return out;
}

std::vector<Replication> sample_many(const ModelSpec& model, const GraphSpace& space,
                                     const CftpConfig& config, std::size_t count,
                                     std::size_t workers);

}  // namespace ergcftp
