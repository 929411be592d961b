#include "ergcftp/statistics.hpp"

#include <bit>
#include <numeric>

namespace ergcftp {

double CustomStatistic::change_score(const AdjacencyState& y, Dyad d) const {
  d = y.space().canonical(d);
  AdjacencyState plus = y;
  AdjacencyState minus = y;
  plus.assign_free(d, true);
  minus.assign_free(d, false);
  return evaluate(plus) - evaluate(minus);
}

StatisticDescriptor StatisticDescriptor::user(std::shared_ptr<const CustomStatistic> stat) {
  if (!stat) throw InvalidArgument("custom statistic is null");
  return {StatKind::Custom, 0, std::move(stat)};
}

Monotonicity StatisticDescriptor::monotonicity() const {
  return kind == StatKind::Custom ? custom->monotonicity() : Monotonicity::CensusMonotone;
}

std::string StatisticDescriptor::name() const {
  switch (kind) {
    case StatKind::EdgeCount: return "edges";
    case StatKind::KStar: return "kstar" + std::to_string(k);
    case StatKind::Triangle: return "triangle";
    case StatKind::Mutual: return "mutual";
    case StatKind::Custom: return custom->name();
  }
  return "?";
}

void StatisticDescriptor::validate_for(const GraphSpace& space) const {
  switch (kind) {
    case StatKind::KStar:
      if (k < 1 || k + 1 > space.n())
        throw IncompatibleSpace("kstar order must lie in [1, n-1]");
      break;
    case StatKind::Triangle:
      if (space.directed()) throw IncompatibleSpace("triangle statistic requires an undirected space");
      break;
    case StatKind::Mutual:
      if (!space.directed()) throw IncompatibleSpace("mutual statistic requires a directed space");
      break;
    default:
      break;
  }
}

ModelSpec::ModelSpec(std::vector<StatisticDescriptor> stats, std::vector<double> theta)
    : stats_(std::move(stats)), theta_(std::move(theta)) {
  if (stats_.empty()) throw InvalidArgument("model needs at least one statistic");
  if (stats_.size() != theta_.size())
    throw InvalidArgument("model has " + std::to_string(stats_.size()) + " statistics but " +
                          std::to_string(theta_.size()) + " parameters");
  for (double t : theta_)
    if (!std::isfinite(t)) throw InvalidArgument("model parameters must be finite");
  for (const auto& s : stats_) {
    if (s.kind == StatKind::Custom && !s.custom) throw InvalidArgument("custom statistic is null");
    if (s.kind == StatKind::KStar && s.k < 1) throw InvalidArgument("kstar order must be >= 1");
  }
}

void ModelSpec::validate_for(const GraphSpace& space) const {
  for (const auto& s : stats_) s.validate_for(space);
}

double binomial(unsigned n, unsigned k) noexcept {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

std::uint32_t common_neighbors(const AdjacencyState& y, Vertex i, Vertex j) noexcept {
  auto ri = y.out_row(i);
  auto rj = y.out_row(j);
  std::uint32_t c = 0;
  for (std::size_t w = 0; w < ri.size(); ++w) c += std::popcount(ri[w] & rj[w]);
  // loops on i or j would put i/j in the intersection
  if (y.has(i, i) && y.has(j, i)) --c;
  if (i != j && y.has(j, j) && y.has(i, j)) --c;
  return c;
}

double evaluate(const StatisticDescriptor& stat, const AdjacencyState& y) {
  const auto& space = y.space();
  stat.validate_for(space);
  const Vertex n = y.n();
  switch (stat.kind) {
    case StatKind::EdgeCount:
      return double(y.edge_count());
    case StatKind::KStar: {
      if (stat.k == 1) {
        double e = 0;
        for (Vertex i = 0; i < n; ++i) e += y.out_degree(i);
        return space.directed() ? e : e / 2;
      }
      double t = 0;
      for (Vertex i = 0; i < n; ++i) t += binomial(y.out_degree(i), stat.k);
      return t;
    }
    case StatKind::Triangle: {
      double t = 0;
      for (const auto& d : y.edges())
        if (d.i != d.j) t += common_neighbors(y, d.i, d.j);
      return t / 3;
    }
    case StatKind::Mutual: {
      double t = 0;
      for (Vertex i = 0; i < n; ++i)
        for (Vertex j = 0; j < i; ++j) t += y.has(i, j) && y.has(j, i);
      return t;
    }
    case StatKind::Custom:
      return stat.custom->evaluate(y);
  }
  return 0.0;
}

std::vector<double> evaluate(const ModelSpec& model, const AdjacencyState& y) {
  std::vector<double> out;
  out.reserve(model.size());
  for (const auto& s : model.stats()) out.push_back(evaluate(s, y));
  return out;
}

namespace {

// Degree of endpoint v of d in y-_d (d non-loop).
std::uint32_t out_degree_without(const AdjacencyState& y, Vertex v, Dyad d) {
  return y.out_degree(v) - (y.has(d) ? 1 : 0);
}

}  // namespace

double change_score(const StatisticDescriptor& stat, const AdjacencyState& y, Dyad d) {
  stat.validate_for(y.space());
  d = y.space().canonical(d);
  const bool loop = d.i == d.j;
  switch (stat.kind) {
    case StatKind::EdgeCount:
      return 1.0;
    case StatKind::KStar: {
      if (loop) return 0.0;
      if (stat.k == 1) return 1.0;
      double c = binomial(out_degree_without(y, d.i, d), stat.k - 1);
      if (!y.space().directed()) c += binomial(out_degree_without(y, d.j, d), stat.k - 1);
      return c;
    }
    case StatKind::Triangle:
      return loop ? 0.0 : double(common_neighbors(y, d.i, d.j));
    case StatKind::Mutual:
      return loop ? 0.0 : double(y.has(d.j, d.i));
    case StatKind::Custom:
      return stat.custom->change_score(y, d);
  }
  return 0.0;
}

std::vector<double> change_vector(const ModelSpec& model, const AdjacencyState& y, Dyad d) {
  std::vector<double> out;
  out.reserve(model.size());
  for (const auto& s : model.stats()) out.push_back(change_score(s, y, d));
  return out;
}

ChangeScorer::ChangeScorer(ModelSpec model, const GraphSpace& space) : model_(std::move(model)) {
  model_.validate_for(space);
  kstar_table_.resize(model_.size());
  for (std::size_t l = 0; l < model_.size(); ++l) {
    const auto& s = model_.stats()[l];
    if (s.kind != StatKind::KStar) continue;
    auto& tab = kstar_table_[l];
    tab.resize(space.n() + 1);
    for (unsigned m = 0; m <= space.n(); ++m) tab[m] = s.k == 1 ? 0.0 : binomial(m, s.k - 1);
  }
}

double ChangeScorer::score(std::size_t l, const AdjacencyState& y, Dyad d) const {
  const auto& s = model_.stats()[l];
  const bool loop = d.i == d.j;
  switch (s.kind) {
    case StatKind::EdgeCount:
      return 1.0;
    case StatKind::KStar: {
      if (loop) return 0.0;
      if (s.k == 1) return 1.0;
      const auto& tab = kstar_table_[l];
      const std::uint32_t present = y.has(d) ? 1 : 0;
      double c = tab[y.out_degree(d.i) - present];
      if (!y.space().directed()) c += tab[y.out_degree(d.j) - present];
      return c;
    }
    case StatKind::Triangle:
      return loop ? 0.0 : double(common_neighbors(y, d.i, d.j));
    case StatKind::Mutual:
      return loop ? 0.0 : double(y.has(d.j, d.i));
    case StatKind::Custom:
      return s.custom->change_score(y, d);
  }
  return 0.0;
}

void ChangeScorer::scores(const AdjacencyState& y, Dyad d, std::span<double> out) const {
  for (std::size_t l = 0; l < model_.size(); ++l) out[l] = score(l, y, d);
}

double ChangeScorer::log_odds(const AdjacencyState& y, Dyad d) const {
  double x = 0;
  const auto& theta = model_.theta();
  for (std::size_t l = 0; l < model_.size(); ++l) x += theta[l] * score(l, y, d);
  return x;
}

}  // namespace ergcftp
