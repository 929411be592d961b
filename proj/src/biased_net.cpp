#include "ergcftp/biased_net.hpp"

#include <bit>
#include <cmath>

namespace ergcftp {

namespace {

using Word = AdjacencyState::Word;

// |a ∩ b| with vertices i and j removed.
unsigned intersect_excluding(std::span<const Word> a, std::span<const Word> b, Vertex i, Vertex j) {
  unsigned c = 0;
  for (std::size_t w = 0; w < a.size(); ++w) {
    Word x = a[w] & b[w];
    if (w == i / AdjacencyState::kWordBits) x &= ~(Word{1} << (i % AdjacencyState::kWordBits));
    if (w == j / AdjacencyState::kWordBits) x &= ~(Word{1} << (j % AdjacencyState::kWordBits));
    c += std::popcount(x);
  }
  return c;
}

unsigned sibling_count(const AdjacencyState& y, Dyad d) {
  return intersect_excluding(y.in_row(d.i), y.in_row(d.j), d.i, d.j);
}

unsigned bias_count(BiasKind kind, const AdjacencyState& y, Dyad d) {
  switch (kind) {
    case BiasKind::Baseline:
      return 1;
    case BiasKind::Parent:
      // on y-_d the reciprocal of an undirected dyad or a loop is d itself
      return (y.space().directed() && d.i != d.j) ? y.has(d.j, d.i) : 0;
    case BiasKind::Sibling:
      return sibling_count(y, d);
    case BiasKind::DichotomizedSibling:
      return sibling_count(y, d) > 0 ? 1 : 0;
  }
  return 0;
}

}  // namespace

std::string bias_name(BiasKind kind) {
  switch (kind) {
    case BiasKind::Baseline: return "baseline";
    case BiasKind::Parent: return "parent";
    case BiasKind::Sibling: return "sibling";
    case BiasKind::DichotomizedSibling: return "dsibling";
  }
  return "?";
}

BiasModel::BiasModel(std::vector<BiasKind> stats, std::vector<double> theta_star)
    : stats_(std::move(stats)), theta_star_(std::move(theta_star)) {
  if (stats_.empty()) throw InvalidArgument("bias model needs at least one statistic");
  if (stats_.size() != theta_star_.size())
    throw InvalidArgument("bias model statistic and parameter counts differ");
  for (double p : theta_star_)
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("bias parameters must lie in [0, 1]");
}

std::vector<unsigned> bias_counts(const BiasModel& model, const AdjacencyState& y, Dyad d) {
  d = y.space().canonical(d);
  std::vector<unsigned> out;
  out.reserve(model.size());
  for (auto kind : model.stats()) out.push_back(bias_count(kind, y, d));
  return out;
}

double edge_prob(const BiasModel& model, const AdjacencyState& y, Dyad d) {
  return BiasKernel(model).prob(y, y.space().canonical(d));
}

AdjacencyState pseudo_gibbs_step(const BiasModel& model, const AdjacencyState& y, Dyad d, double u) {
  d = y.space().canonical(d);
  if (y.space().status(d) != DyadStatus::Free)
    throw RestrictionViolation("update requested on a restricted dyad");
  AdjacencyState out = y;
  out.assign_free(d, BiasKernel::accept(u, edge_prob(model, y, d)));
  return out;
}

BiasKernel::BiasKernel(BiasModel model) : model_(std::move(model)) {
  for (double p : model_.theta_star()) log_keep_.push_back(std::log1p(-p));
}

double BiasKernel::prob(const AdjacencyState& y, Dyad d) const {
  double log_none = 0.0;
  const auto& stats = model_.stats();
  for (std::size_t k = 0; k < stats.size(); ++k) {
    if (log_keep_[k] == 0.0) continue;
    const unsigned t = bias_count(stats[k], y, d);
    if (t == 0) continue;
    if (std::isinf(log_keep_[k])) return 1.0;
    log_none += t * log_keep_[k];
  }
  return -std::expm1(log_none);
}

DrawResult sample_biased(const BiasModel& model, const GraphSpace& space, const CftpConfig& config) {
  return run_cftp(BiasKernel(model), space, config);
}

std::vector<Replication> sample_biased_many(const BiasModel& model, const GraphSpace& space,
                                            const CftpConfig& config, std::size_t count,
                                            std::size_t workers) {
  if (count == 0) throw InvalidArgument("replication count must be at least 1");
  const BiasKernel kernel(model);
  return run_replications(count, workers, config.seed, [&](std::uint64_t seed) {
    CftpConfig c = config;
    c.seed = seed;
    return run_cftp(kernel, space, c);
  });
}

double transitivity(const AdjacencyState& y) {
  double paths = 0, closed = 0;
  const Vertex n = y.n();
  for (Vertex i = 0; i < n; ++i) {
    auto out_i = y.out_row(i);
    for (Vertex j = 0; j < n; ++j) {
      if (j == i || !y.has(i, j)) continue;
      auto out_j = y.out_row(j);
      paths += intersect_excluding(out_j, out_j, i, j);
      closed += intersect_excluding(out_j, out_i, i, j);
    }
  }
  return paths > 0 ? closed / paths : 0.0;
}

double density(const AdjacencyState& y) {
  return double(y.edge_count()) / double(y.space().dyad_count());
}

}  // namespace ergcftp
