#include <doctest.h>

#include <cmath>
#include <random>

#include "ergcftp/bounding.hpp"
#include "helpers.hpp"

using namespace ergcftp;

namespace {

// Nondecreasing in the graph, but its change score shrinks as edges are added.
class CappedEdges : public CustomStatistic {
 public:
  std::string name() const override { return "capped_edges"; }
  Monotonicity monotonicity() const override { return Monotonicity::StatisticMonotone; }
  double evaluate(const AdjacencyState& y) const override {
    return std::min<double>(double(y.edge_count()), 3.0);
  }
};

class EdgeParity : public CustomStatistic {
 public:
  explicit EdgeParity(bool with_bounds) : with_bounds_(with_bounds) {}
  std::string name() const override { return "parity"; }
  Monotonicity monotonicity() const override { return Monotonicity::General; }
  double evaluate(const AdjacencyState& y) const override { return double(y.edge_count() % 2); }
  std::optional<std::pair<double, double>> change_bounds(const AdjacencyState&, const AdjacencyState&,
                                                         Dyad) const override {
    if (!with_bounds_) return std::nullopt;
    return std::pair{-1.0, 1.0};
  }

 private:
  bool with_bounds_;
};

ModelSpec random_census_model(const GraphSpace& s, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> th(-2, 2);
  std::vector<StatisticDescriptor> stats{StatisticDescriptor::edges(), StatisticDescriptor::kstar(2)};
  if (rng() & 1) stats.push_back(StatisticDescriptor::kstar(3));
  stats.push_back(s.directed() ? StatisticDescriptor::mutual() : StatisticDescriptor::triangle());
  std::vector<double> theta;
  for (std::size_t l = 0; l < stats.size(); ++l) theta.push_back(th(rng));
  return ModelSpec(stats, theta);
}

BoundPair random_pair(const GraphSpace& s, std::mt19937_64& rng) {
  const auto lo = testing::random_state(s, rng, 0.25);
  return BoundPair(lo, testing::random_superset(lo, rng, 0.5));
}

double gibbs_prob(const ModelSpec& m, const AdjacencyState& y, Dyad d) {
  const auto delta = change_vector(m, y, d);
  double s = 0;
  for (std::size_t l = 0; l < delta.size(); ++l) s += m.theta()[l] * delta[l];
  return inverse_logit(s);
}

}  // namespace

TEST_CASE("bound pair bookkeeping") {
  const GraphSpace s(5);
  const auto pair = BoundPair::of_space(s);
  CHECK(pair.diff_count() == 10);
  CHECK_FALSE(pair.coalesced());
  CHECK_THROWS_AS(BoundPair(testing::complete(s), AdjacencyState(s)), InvalidArgument);
  BoundPair p = pair;
  p.set({1, 0}, true, true);
  CHECK(p.diff_count() == 9);
  p.set({1, 0}, false, true);
  CHECK(p.diff_count() == 10);
  for (const auto& d : s.free_dyads()) p.set(d, false, false);
  CHECK(p.coalesced());
}

TEST_CASE("delta bounds examples") {
  const GraphSpace s5(5);
  const auto pair = BoundPair::of_space(s5);
  const ModelSpec pos({StatisticDescriptor::edges(), StatisticDescriptor::triangle()}, {0.5, 0.5});
  auto db = delta_bounds(pos, pair, {1, 0});
  CHECK(db.lower == std::vector<double>{1, 0});
  CHECK(db.upper == std::vector<double>{1, 3});
  const ModelSpec neg({StatisticDescriptor::edges(), StatisticDescriptor::triangle()}, {0.5, -0.5});
  db = delta_bounds(neg, pair, {1, 0});
  CHECK(db.lower == std::vector<double>{1, 3});
  CHECK(db.upper == std::vector<double>{1, 0});

  std::mt19937_64 rng(2);
  for (int r = 0; r < 20; ++r) {
    const auto y = testing::random_state(s5, rng);
    const auto m = random_census_model(s5, rng);
    const BoundPair single(y, y);
    for (const auto& d : s5.free_dyads()) {
      const auto b = delta_bounds(m, single, d);
      CHECK(b.lower == change_vector(m, y, d));
      CHECK(b.upper == b.lower);
      const auto [pl, pu] = prob_bounds(m, single, d);
      CHECK(pl == doctest::Approx(gibbs_prob(m, y, d)).epsilon(1e-14));
      CHECK(pu == pl);
    }
  }
}

TEST_CASE("probability bounds examples") {
  const GraphSpace s6(6);
  std::mt19937_64 rng(4);
  const ModelSpec zero({StatisticDescriptor::edges(), StatisticDescriptor::kstar(2)}, {0, 0});
  const ModelSpec ind({StatisticDescriptor::edges()}, {std::log(0.3 / 0.7)});
  for (int r = 0; r < 20; ++r) {
    const auto pair = random_pair(s6, rng);
    for (const auto& d : s6.free_dyads()) {
      CHECK(prob_bounds(zero, pair, d) == std::pair{0.5, 0.5});
      const auto [a, b] = prob_bounds(ind, pair, d);
      CHECK(a == doctest::Approx(0.3).epsilon(1e-14));
      CHECK(b == doctest::Approx(0.3).epsilon(1e-14));
    }
  }
}

TEST_CASE("update_pair threshold cases") {
  const GraphSpace s5(5);
  const ModelSpec m({StatisticDescriptor::edges(), StatisticDescriptor::triangle()}, {-0.2, 0.4});
  const auto pair = BoundPair::of_space(s5);
  const Dyad d{1, 0};
  auto up = update_pair(m, pair, d, 0.0);
  CHECK(up.lower().has(d));
  CHECK(up.upper().has(d));
  up = update_pair(m, pair, d, 1.0);
  CHECK_FALSE(up.lower().has(d));
  CHECK_FALSE(up.upper().has(d));
  const auto [pl, pu] = prob_bounds(m, pair, d);
  REQUIRE(pl < pu);
  up = update_pair(m, pair, d, 0.5 * (pl + pu));
  CHECK_FALSE(up.lower().has(d));
  CHECK(up.upper().has(d));
  CHECK(up.diff_count() == pair.diff_count());
  CHECK_THROWS_AS(update_pair(m, BoundPair::of_space(GraphSpace::egocentric(5, 0)), d, 0.5),
                  RestrictionViolation);
}

TEST_CASE("sandwich preserved against a shadow Gibbs chain") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> unif(0, 1);
  for (const auto& s : {GraphSpace(7), GraphSpace(5, true), GraphSpace::bipartite(3, 4)}) {
    for (int rep = 0; rep < 10; ++rep) {
      const auto m = random_census_model(s, rng);
      const BoundScorer scorer(m, s);
      BoundPair pair = random_pair(s, rng);
      AdjacencyState y = pair.lower();
      for (const auto& d : s.free_dyads())
        if (pair.upper().has(d) && (rng() & 1)) y.assign_free(d, true);
      const auto& free = s.free_dyads();
      for (int step = 0; step < 1000; ++step) {
        const Dyad d = free[rng() % free.size()];
        const double u = unif(rng);
        const auto [pl, pu] = scorer.prob_bounds(pair, d);
        pair.set(d, u <= pl, u <= pu);
        y = gibbs_step(m, y, d, u);
        REQUIRE(is_subgraph(pair.lower(), y));
        REQUIRE(is_subgraph(y, pair.upper()));
        REQUIRE(pair.diff_count() == differing_dyads(pair.lower(), pair.upper()));
      }
    }
  }
}

TEST_CASE("bounds hold for every interior graph") {
  std::mt19937_64 rng(13);
  for (const auto& s : {GraphSpace(5), GraphSpace(4, true, false, {}, {{0, 1}, {2, 3}})}) {
    REQUIRE(s.free_dyads().size() <= 10);
    const auto everything = testing::all_states(s);
    for (int rep = 0; rep < 15; ++rep) {
      const auto m = random_census_model(s, rng);
      const auto pair = random_pair(s, rng);
      for (const auto& d : s.free_dyads()) {
        const auto [pl, pu] = prob_bounds(m, pair, d);
        for (const auto& y : everything) {
          if (!is_subgraph(pair.lower(), y) || !is_subgraph(y, pair.upper())) continue;
          const double p = gibbs_prob(m, y, d);
          CHECK(pl <= p * (1 + 1e-12));
          CHECK(p <= pu * (1 + 1e-12));
        }
      }
    }
  }
}

TEST_CASE("ordered pairs stay ordered under shared inputs") {
  // Component-wise order (L1 ⊆ L2, U1 ⊆ U2) survives only when no parameter
  // is negative: a negative θ_l makes L's probability depend on U inversely.
  // Nested pairs (L2 ⊆ L1, U1 ⊆ U2) stay nested for any signs.
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unif(0, 1);
  const GraphSpace s(6);
  for (int rep = 0; rep < 40; ++rep) {
    ModelSpec m = random_census_model(s, rng);
    const bool ordered = rep % 2 == 0;
    if (ordered) {
      auto theta = m.theta();
      for (double& t : theta) t = std::abs(t);
      m = m.with_theta(theta);
    }
    const BoundScorer scorer(m, s);
    const auto a0 = testing::random_state(s, rng, 0.2);
    const auto a1 = testing::random_superset(a0, rng, 0.2);
    const auto a2 = testing::random_superset(a1, rng, 0.4);
    const auto a3 = testing::random_superset(a2, rng, 0.4);
    BoundPair a = ordered ? BoundPair(a0, a2) : BoundPair(a1, a2);
    BoundPair b = ordered ? BoundPair(a1, a3) : BoundPair(a0, a3);
    for (int step = 0; step < 500; ++step) {
      const Dyad d = s.free_dyads()[rng() % s.free_dyads().size()];
      const double u = unif(rng);
      const auto [al, au] = scorer.prob_bounds(a, d);
      const auto [bl, bu] = scorer.prob_bounds(b, d);
      a.set(d, u <= al, u <= au);
      b.set(d, u <= bl, u <= bu);
      if (ordered) {
        REQUIRE(is_subgraph(a.lower(), b.lower()));
      } else {
        REQUIRE(is_subgraph(b.lower(), a.lower()));
      }
      REQUIRE(is_subgraph(a.upper(), b.upper()));
    }
  }
}

TEST_CASE("a coalesced pair follows the Gibbs trajectory") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> unif(0, 1);
  const GraphSpace s(7);
  const auto m = random_census_model(s, rng);
  const BoundScorer scorer(m, s);
  const auto y0 = testing::random_state(s, rng);
  BoundPair pair(y0, y0);
  AdjacencyState y = y0;
  for (int step = 0; step < 2000; ++step) {
    const Dyad d = s.free_dyads()[rng() % s.free_dyads().size()];
    const double u = unif(rng);
    const auto [pl, pu] = scorer.prob_bounds(pair, d);
    pair.set(d, u <= pl, u <= pu);
    y = gibbs_step(m, y, d, u);
    REQUIRE(pair.coalesced());
    REQUIRE(pair.lower() == y);
  }
}

TEST_CASE("custom statistics in the bounds") {
  const GraphSpace s(4);
  std::mt19937_64 rng(23);
  const auto capped = StatisticDescriptor::user(std::make_shared<CappedEdges>());
  const ModelSpec m({StatisticDescriptor::edges(), capped}, {0.3, -1.1});
  const auto everything = testing::all_states(s);
  for (int rep = 0; rep < 10; ++rep) {
    const auto pair = random_pair(s, rng);
    for (const auto& d : s.free_dyads()) {
      // θ₂ < 0, so the loose pair (0, t(U+) - t(L-)) is taken in reverse
      const auto b = delta_bounds(m, pair, d);
      CHECK(b.upper[1] == 0);
      CHECK(b.lower[1] == evaluate(capped, with_edge(pair.upper(), d, true)) -
                              evaluate(capped, with_edge(pair.lower(), d, false)));
      const auto [pl, pu] = prob_bounds(m, pair, d);
      for (const auto& y : everything)
        if (is_subgraph(pair.lower(), y) && is_subgraph(y, pair.upper())) {
          CHECK(pl <= gibbs_prob(m, y, d) + 1e-15);
          CHECK(gibbs_prob(m, y, d) <= pu + 1e-15);
        }
    }
  }

  const auto bare = StatisticDescriptor::user(std::make_shared<EdgeParity>(false));
  CHECK_THROWS_AS(BoundScorer(ModelSpec({bare}, {1.0}), s), UnsupportedModel);
  const auto bounded = StatisticDescriptor::user(std::make_shared<EdgeParity>(true));
  const BoundScorer ok(ModelSpec({bounded}, {1.0}), s);
  const auto [lo, hi] = ok.log_odds_bounds(BoundPair::of_space(s), {1, 0});
  CHECK(lo == -1.0);
  CHECK(hi == 1.0);
}

TEST_CASE("gibbs step examples") {
  const GraphSpace s(5);
  const AdjacencyState y(s);
  const ModelSpec zero({StatisticDescriptor::edges(), StatisticDescriptor::triangle()}, {0, 0});
  CHECK(gibbs_step(zero, y, {1, 0}, 0.4).has(1, 0));
  CHECK_FALSE(gibbs_step(zero, y, {1, 0}, 0.6).has(1, 0));
  const ModelSpec big({StatisticDescriptor::edges()}, {700});
  CHECK(gibbs_step(big, y, {1, 0}, std::nextafter(1.0, 0.0)).has(1, 0));
}
