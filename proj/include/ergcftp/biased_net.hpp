#pragma once

#include <string>
#include <vector>

#include "ergcftp/cftp.hpp"
#include "ergcftp/graph.hpp"

namespace ergcftp {

// Bias events for dyad (i, j), all counted on y with d removed:
//   Baseline            1
//   Parent              y_ji (reciprocation)
//   Sibling             #{k != i,j : k -> i and k -> j}
//   DichotomizedSibling 1 if Sibling >= 1
// All are nondecreasing under edge addition.
enum class BiasKind { Baseline, Parent, Sibling, DichotomizedSibling };

std::string bias_name(BiasKind kind);

/// Biased-net model: each bias event independently forms the edge with
/// probability theta_star[k].
class BiasModel {
 public:
  BiasModel(std::vector<BiasKind> stats, std::vector<double> theta_star);

  const std::vector<BiasKind>& stats() const noexcept { return stats_; }
  const std::vector<double>& theta_star() const noexcept { return theta_star_; }
  std::size_t size() const noexcept { return stats_.size(); }

  BiasModel with_theta_star(std::vector<double> theta_star) const {
    return BiasModel(stats_, std::move(theta_star));
  }

 private:
  std::vector<BiasKind> stats_;
  std::vector<double> theta_star_;
};

std::vector<unsigned> bias_counts(const BiasModel& model, const AdjacencyState& y, Dyad d);

// 1 - prod_k (1 - theta*_k)^{t_k(i, j, y-_d)}
double edge_prob(const BiasModel& model, const AdjacencyState& y, Dyad d);

// Present iff u < edge_prob (strict).
AdjacencyState pseudo_gibbs_step(const BiasModel& model, const AdjacencyState& y, Dyad d, double u);

/// Kernel for the pseudo-Gibbs chain; monotone, so the bounding chains just
/// evaluate edge_prob on L and U.
class BiasKernel {
 public:
  explicit BiasKernel(BiasModel model);

  std::pair<double, double> bound_probs(const BoundPair& pair, Dyad d) const {
    return {prob(pair.lower(), d), prob(pair.upper(), d)};
  }
  double prob(const AdjacencyState& y, Dyad d) const;
  static bool accept(double u, double p) noexcept { return u < p; }

 private:
  BiasModel model_;
  std::vector<double> log_keep_;  // log(1 - theta*_k)
};

DrawResult sample_biased(const BiasModel& model, const GraphSpace& space, const CftpConfig& config);

std::vector<Replication> sample_biased_many(const BiasModel& model, const GraphSpace& space,
                                            const CftpConfig& config, std::size_t count,
                                            std::size_t workers);

// Closed two-paths i->j->k (i != k) over all two-paths; 0 when there are none.
// Undirected graphs are read as symmetric digraphs.
double transitivity(const AdjacencyState& y);

// Present dyads over all dyads of the space.
double density(const AdjacencyState& y);

}  // namespace ergcftp
