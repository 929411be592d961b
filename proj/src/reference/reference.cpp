#include "reference/reference.hpp"

#include <cmath>

namespace ergcftp::reference {

namespace {

// Number of k-subsets of an m-set by Pascal's rule.
double choose(int m, int k) {
  if (k < 0 || k > m) return 0;
  std::vector<double> row(k + 1, 0.0);
  row[0] = 1;
  for (int i = 1; i <= m; ++i)
    for (int j = std::min(i, k); j >= 1; --j) row[j] += row[j - 1];
  return row[k];
}

}  // namespace

Matrix to_matrix(const AdjacencyState& y) {
  const int n = int(y.n());
  Matrix m(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = y.has(Vertex(i), Vertex(j)) ? 1 : 0;
  return m;
}

double count_statistic(const StatisticDescriptor& stat, const Matrix& y, bool directed) {
  const int n = int(y.size());
  switch (stat.kind) {
    case StatKind::EdgeCount: {
      double e = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (directed || j <= i) e += y[i][j];
      return e;
    }
    case StatKind::KStar: {
      double t = 0;
      if (stat.k == 1) {
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            if (i != j && (directed || j < i)) t += y[i][j];
        return t;
      }
      for (int i = 0; i < n; ++i) {
        int deg = 0;
        for (int j = 0; j < n; ++j) deg += (i != j) * y[i][j];
        t += choose(deg, int(stat.k));
      }
      return t;
    }
    case StatKind::Triangle: {
      double t = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          for (int k = j + 1; k < n; ++k) t += y[i][j] * y[j][k] * y[i][k];
      return t;
    }
    case StatKind::Mutual: {
      double t = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) t += y[i][j] * y[j][i];
      return t;
    }
    case StatKind::Custom:
      break;
  }
  return 0;
}

double brute_change_score(const StatisticDescriptor& stat, const AdjacencyState& y, Dyad d) {
  const bool directed = y.space().directed();
  Matrix plus = to_matrix(y), minus = plus;
  plus[d.i][d.j] = 1;
  minus[d.i][d.j] = 0;
  if (!directed) {
    plus[d.j][d.i] = 1;
    minus[d.j][d.i] = 0;
  }
  return count_statistic(stat, plus, directed) - count_statistic(stat, minus, directed);
}

double brute_edge_prob(const BiasModel& model, const AdjacencyState& y, Dyad d) {
  Matrix m = to_matrix(y);
  const int n = int(m.size());
  m[d.i][d.j] = 0;
  if (!y.space().directed()) m[d.j][d.i] = 0;
  double none = 1.0;
  for (std::size_t k = 0; k < model.size(); ++k) {
    int t = 0;
    int shared = 0;
    for (int v = 0; v < n; ++v)
      if (v != int(d.i) && v != int(d.j)) shared += m[v][d.i] * m[v][d.j];
    switch (model.stats()[k]) {
      case BiasKind::Baseline: t = 1; break;
      case BiasKind::Parent: t = d.i == d.j ? 0 : m[d.j][d.i]; break;
      case BiasKind::Sibling: t = shared; break;
      case BiasKind::DichotomizedSibling: t = shared > 0; break;
    }
    none *= std::pow(1.0 - model.theta_star()[k], t);
  }
  return 1.0 - none;
}

std::vector<double> naive_distribution(const ModelSpec& model, const GraphSpace& space) {
  const std::size_t k = space.free_dyads().size();
  std::vector<double> w(std::size_t{1} << k);
  double z = 0;
  for (std::uint64_t key = 0; key < w.size(); ++key) {
    const Matrix m = to_matrix(decode_free_bits(space, key));
    double s = 0;
    for (std::size_t l = 0; l < model.size(); ++l)
      s += model.theta()[l] * count_statistic(model.stats()[l], m, space.directed());
    w[key] = std::exp(s);
    z += w[key];
  }
  for (double& x : w) x /= z;
  return w;
}

std::vector<Replication> sample_many_serial(const ModelSpec& model, const GraphSpace& space,
                                            const CftpConfig& config, std::size_t count) {
  std::vector<Replication> out;
  for (std::size_t r = 0; r < count; ++r) {
    Replication rep;
    rep.index = r;
    rep.seed = derive_seed(config.seed, r);
    CftpConfig c = config;
    c.seed = rep.seed;
    try {
      rep.draw = sample(model, space, c);
    } catch (const NonCoalescenceError& e) {
      rep.error = e.what();
      rep.diagnostics = e.diagnostics();
    }
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace ergcftp::reference
