#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "ergcftp/experiment.hpp"
#include "ergcftp/oracle.hpp"
#include "helpers.hpp"
#include "reference/reference.hpp"

using namespace ergcftp;

namespace {

double logit(double p) { return std::log(p / (1 - p)); }

ModelSpec two_star(double a, double b) {
  return ModelSpec({StatisticDescriptor::edges(), StatisticDescriptor::kstar(2)}, {a, b});
}

// Swaps the roles of L and U when choosing per-component change scores.
class FlippedKernel {
 public:
  FlippedKernel(ModelSpec model, const GraphSpace& space) : inner_(std::move(model), space) {}
  std::pair<double, double> bound_probs(const BoundPair& pair, Dyad d) const {
    const auto [lo, hi] = inner_.bound_probs(pair, d);
    return {hi, lo};
  }
  double prob(const AdjacencyState& y, Dyad d) const { return inner_.prob(y, d); }
  static bool accept(double u, double p) noexcept { return u <= p; }

 private:
  ErgKernel inner_;
};

double binom_pmf(unsigned e, unsigned m, double p) {
  return std::pow(p, e) * std::pow(1 - p, m - e);
}

}  // namespace

TEST_CASE("free-dyad keys round trip") {
  const GraphSpace s(4, true);
  for (std::uint64_t key = 0; key < 4096; key += 37) CHECK(encode_free_bits(decode_free_bits(s, key)) == key);
  const auto y = decode_free_bits(GraphSpace(3), 0b101);
  CHECK(y.has(1, 0));
  CHECK_FALSE(y.has(2, 0));
  CHECK(y.has(2, 1));
}

TEST_CASE("independent-edge models enumerate to the product form") {
  for (const auto& s : {GraphSpace(3), GraphSpace(4), GraphSpace(3, true), GraphSpace::bipartite(2, 3)}) {
    for (double p : {0.1, 0.3, 0.5, 0.8}) {
      const auto exact = enumerate_distribution(ModelSpec({StatisticDescriptor::edges()}, {logit(p)}), s);
      const unsigned m = unsigned(s.free_dyads().size());
      REQUIRE(exact.size() == (std::size_t{1} << m));
      double total = 0;
      for (std::uint64_t key = 0; key < exact.size(); ++key) {
        const auto e = unsigned(decode_free_bits(s, key).edge_count());
        CHECK(std::abs(exact.probability(key) - binom_pmf(e, m, p)) < 1e-12);
        total += exact.probability(key);
      }
      CHECK(std::abs(total - 1) < 1e-12);
    }
  }
  const auto uniform = enumerate_distribution(two_star(0, 0), GraphSpace(4));
  for (double q : uniform.probabilities()) CHECK(q == doctest::Approx(1.0 / 64).epsilon(1e-13));
}

TEST_CASE("stabilized and naive normalizers agree") {
  const GraphSpace s(4);
  for (const auto& m : {two_star(-0.5, 0.2),
                        ModelSpec({StatisticDescriptor::edges(), StatisticDescriptor::triangle()}, {-0.5, 0.3}),
                        ModelSpec({StatisticDescriptor::edges(), StatisticDescriptor::kstar(3)}, {1.5, -0.7})}) {
    const auto exact = enumerate_distribution(m, s);
    const auto naive = reference::naive_distribution(m, s);
    double z = 0;
    for (std::uint64_t key = 0; key < naive.size(); ++key) {
      CHECK(std::abs(exact.probability(key) - naive[key]) < 1e-13);
      double w = 0;
      const auto t = evaluate(m, decode_free_bits(s, key));
      for (std::size_t l = 0; l < t.size(); ++l) w += m.theta()[l] * t[l];
      z += std::exp(w);
    }
    CHECK(exact.log_normalizer() == doctest::Approx(std::log(z)).epsilon(1e-13));
  }
  // far from zero the shift keeps things finite where the naive sum overflows
  const auto extreme = enumerate_distribution(two_star(40, 10), GraphSpace(5));
  CHECK(std::isfinite(extreme.log_normalizer()));
  CHECK(extreme.probability(extreme.size() - 1) == doctest::Approx(1.0));
}

TEST_CASE("enumeration cap") {
  CHECK_THROWS_AS(enumerate_distribution(two_star(0, 0), GraphSpace(7)), EnumerationCapExceeded);
  CHECK_NOTHROW(enumerate_distribution(two_star(0, 0), GraphSpace(7), {21, 1}).size());
  const auto a = enumerate_distribution(two_star(-0.3, 0.1), GraphSpace(5), {20, 1});
  const auto b = enumerate_distribution(two_star(-0.3, 0.1), GraphSpace(5), {20, 4});
  CHECK(a.probabilities() == b.probabilities());
}

TEST_CASE("probability ratios") {
  const GraphSpace s(5);
  std::mt19937_64 rng(1);
  const auto m = two_star(-0.4, 0.15);
  for (int r = 0; r < 20; ++r) {
    const auto y = testing::random_state(s, rng);
    const auto y2 = testing::random_state(s, rng);
    CHECK(probability_ratio(m, y, y) == 1.0);
    CHECK(probability_ratio(m, y, y2) * probability_ratio(m, y2, y) == doctest::Approx(1.0).epsilon(1e-13));
    const ModelSpec e({StatisticDescriptor::edges()}, {0.7});
    for (const auto& d : s.free_dyads())
      if (!y.has(d)) CHECK(probability_ratio(e, y, with_edge(y, d, true)) == doctest::Approx(std::exp(0.7)));
  }
  CHECK_THROWS_AS(probability_ratio(m, AdjacencyState(s), AdjacencyState(GraphSpace(4))), SpaceMismatch);
}

TEST_CASE("total variation distance") {
  const GraphSpace s(3);
  const auto uniform = enumerate_distribution(two_star(0, 0), s);
  EmpiricalDistribution even(s);
  for (std::uint64_t k = 0; k < 8; ++k) even.add_key(k, 5);
  CHECK(tv_distance(even, uniform) == doctest::Approx(0.0));

  // all mass on a graph the exact law gives no weight to is impossible with finite θ,
  // so build the disjoint case from a point mass on each side
  const auto point = enumerate_distribution(ModelSpec({StatisticDescriptor::edges()}, {-60}), s);
  EmpiricalDistribution full(s);
  full.add(testing::complete(s));
  CHECK(tv_distance(full, point) == doctest::Approx(1.0).epsilon(1e-12));

  EmpiricalDistribution other(GraphSpace(4));
  other.add_key(0);
  CHECK_THROWS_AS(tv_distance(other, uniform), SpaceMismatch);
  CHECK_THROWS_AS(even.add(AdjacencyState(GraphSpace(4))), SpaceMismatch);
}

TEST_CASE("exact summaries") {
  const GraphSpace s(3);
  const auto edges = [](const AdjacencyState& y) { return std::vector<double>{double(y.edge_count())}; };
  CHECK(exact_summary(two_star(0, 0), s, edges)[0] == doctest::Approx(1.5));
  const auto [n3, k3] = bounds_of_space(s);
  const auto extreme = [&](const AdjacencyState& y) { return std::vector<double>{(y == n3 || y == k3) ? 1.0 : 0.0}; };
  CHECK(exact_summary(two_star(0, 0), s, extreme)[0] == doctest::Approx(0.25));
  const auto tri = [](const AdjacencyState& y) {
    return std::vector<double>{evaluate(StatisticDescriptor::triangle(), y)};
  };
  const double p = 0.35;
  CHECK(exact_summary(ModelSpec({StatisticDescriptor::edges()}, {logit(p)}), s, tri)[0] ==
        doctest::Approx(p * p * p).epsilon(1e-12));
}

TEST_CASE("enumerated ratios and conditionals match the closed forms") {
  const GraphSpace s(4);
  for (const auto& m : {ModelSpec({StatisticDescriptor::edges()}, {-1}), two_star(-0.5, 0.2),
                        ModelSpec({StatisticDescriptor::edges(), StatisticDescriptor::triangle()}, {-0.5, 0.3})}) {
    const auto check = check_consistency(m, enumerate_distribution(m, s));
    CHECK(check.max_ratio_error < 1e-10);
    CHECK(check.max_conditional_error < 1e-10);
  }
  const GraphSpace d(3, true, true);
  const ModelSpec dm({StatisticDescriptor::edges(), StatisticDescriptor::mutual(), StatisticDescriptor::kstar(2)},
                     {-0.3, 0.8, 0.1});
  const auto check = check_consistency(dm, enumerate_distribution(dm, d));
  CHECK(check.max_ratio_error < 1e-10);
  CHECK(check.max_conditional_error < 1e-10);
}

TEST_CASE("CFTP matches enumeration on small spaces") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> th(-1, 1);
  struct Case {
    GraphSpace space;
    std::vector<StatisticDescriptor> stats;
  };
  const std::vector<Case> cases{
      {GraphSpace(4), {StatisticDescriptor::edges(), StatisticDescriptor::kstar(2), StatisticDescriptor::triangle()}},
      {GraphSpace(3, true), {StatisticDescriptor::edges(), StatisticDescriptor::mutual()}},
      {GraphSpace(3, false, true), {StatisticDescriptor::edges(), StatisticDescriptor::kstar(2)}},
      {GraphSpace::bipartite(2, 3), {StatisticDescriptor::edges(), StatisticDescriptor::kstar(2)}},
      {GraphSpace::egocentric(4, 0), {StatisticDescriptor::kstar(2), StatisticDescriptor::triangle()}}};
  for (const auto& c : cases) {
    REQUIRE(c.space.free_dyads().size() <= 6);
    std::vector<double> theta;
    for (std::size_t l = 0; l < c.stats.size(); ++l) theta.push_back(th(rng));
    OracleOptions o;
    o.seed = rng();
    const auto report = run_oracle(ModelSpec(c.stats, theta), c.space, o);
    CHECK(report.tv < 0.02);
    CHECK(report.failures == 0);
  }
}

TEST_CASE("CFTP matches enumeration on a ten-dyad space within sampling noise") {
  // With 1024 states, 50k draws already carry TV ~ 0.05 of pure noise, so the
  // bar is the expected noise level, computed from the exact law.
  const GraphSpace s(5);
  const auto m = ModelSpec({StatisticDescriptor::edges(), StatisticDescriptor::kstar(2), StatisticDescriptor::triangle()},
                           {-0.6, 0.3, -0.4});
  OracleOptions o;
  o.draws = 50000;
  o.seed = 2024;
  const auto report = run_oracle(m, s, o);
  const auto exact = enumerate_distribution(m, s);
  double noise = 0;
  const double pi = std::acos(-1.0);
  for (double p : exact.probabilities()) noise += 0.5 * std::sqrt(2 * p * (1 - p) / (pi * double(o.draws)));
  CHECK(report.tv < 1.15 * noise);
  CHECK(report.consistency_pass());
}

TEST_CASE("a sampler with flipped bounds fails the oracle") {
  // Under weak dependence a flipped rule barely moves the output law, so the
  // control uses a model where triangles pull hard.
  const GraphSpace s(4);
  const ModelSpec m({StatisticDescriptor::edges(), StatisticDescriptor::triangle()}, {0.0, 1.5});
  const FlippedKernel broken(m, s);
  OracleOptions o;
  o.draws = 50000;
  const auto report = run_oracle(m, s, o, [&](std::uint64_t seed) {
    CftpConfig c;
    c.seed = seed;
    return run_cftp(broken, s, c);
  });
  CHECK_FALSE(report.pass());
  CHECK(report.tv >= 0.02);
  std::ostringstream os;
  write_oracle_report(os, report);
  CHECK(os.str().find("result: FAIL") != std::string::npos);

  const auto good = run_oracle(m, s, o);
  CHECK(good.pass());
}

TEST_CASE("distribution CSV") {
  const auto exact = enumerate_distribution(two_star(0, 0), GraphSpace(3));
  std::ostringstream os;
  write_distribution_csv(os, exact);
  const std::string text = os.str();
  CHECK(text.rfind("graph_bits_hex,probability\n0,0.125\n1,0.125\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 9);
}
