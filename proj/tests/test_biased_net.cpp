#include <doctest.h>

#include <cmath>
#include <random>

#include "ergcftp/biased_net.hpp"
#include "helpers.hpp"
#include "reference/reference.hpp"

using namespace ergcftp;
using testing::graph_of;

TEST_CASE("bias counts") {
  const GraphSpace s(5, true);
  // vertex 3 sends to 1 and 2
  auto y = graph_of(s, {{3, 1}, {3, 2}});
  const BiasModel all({BiasKind::Baseline, BiasKind::Parent, BiasKind::Sibling, BiasKind::DichotomizedSibling},
                      {0.1, 0.1, 0.1, 0.1});
  CHECK(bias_counts(all, y, {0, 1}) == std::vector<unsigned>{1, 0, 1, 1});
  y.assign({3, 0}, true);
  y.assign({3, 1}, true);
  CHECK(bias_counts(all, y, {0, 1}) == std::vector<unsigned>{1, 0, 2, 1});
  y.assign({1, 0}, true);
  CHECK(bias_counts(all, y, {0, 1}) == std::vector<unsigned>{1, 1, 2, 1});
  // the dyad itself is removed before counting
  CHECK(bias_counts(all, with_edge(y, {0, 1}, true), {0, 1}) == bias_counts(all, y, {0, 1}));
  CHECK(bias_counts(all, AdjacencyState(s), {4, 2}) == std::vector<unsigned>{1, 0, 0, 0});
}

TEST_CASE("edge probability examples") {
  const GraphSpace s(6, true);
  std::mt19937_64 rng(1);
  const BiasModel base({BiasKind::Baseline}, {0.125});
  const BiasModel none({BiasKind::Baseline, BiasKind::Sibling, BiasKind::Parent}, {0, 0, 0});
  for (int r = 0; r < 10; ++r) {
    const auto y = testing::random_state(s, rng);
    for (const auto& d : s.free_dyads()) {
      CHECK(edge_prob(base, y, d) == doctest::Approx(0.125).epsilon(1e-15));
      CHECK(edge_prob(none, y, d) == 0.0);
    }
  }

  // two shared partners of (1, 2): 3 and 4
  const auto y = graph_of(s, {{3, 1}, {3, 2}, {4, 1}, {4, 2}});
  const BiasModel sib({BiasKind::Baseline, BiasKind::Sibling}, {0.125, 0.1});
  // 1 - 0.875 * 0.81
  const double independent = 1.0 - (1.0 - 0.125) * (1.0 - 0.1) * (1.0 - 0.1);
  CHECK(independent == doctest::Approx(0.29125).epsilon(1e-15));
  CHECK(reference::brute_edge_prob(sib, y, {0, 1}) == doctest::Approx(independent).epsilon(1e-14));
  CHECK(edge_prob(sib, y, {0, 1}) == doctest::Approx(independent).epsilon(1e-14));
}

TEST_CASE("edge probability agrees with the direct product") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> th(0, 1);
  for (bool directed : {true, false}) {
    const GraphSpace s(7, directed);
    for (int r = 0; r < 30; ++r) {
      const BiasModel m({BiasKind::Baseline, BiasKind::Parent, BiasKind::Sibling, BiasKind::DichotomizedSibling},
                        {th(rng) * 0.3, th(rng), th(rng) * 0.3, th(rng)});
      const auto y = testing::random_state(s, rng, 0.4);
      for (const auto& d : s.free_dyads())
        CHECK(edge_prob(m, y, d) == doctest::Approx(reference::brute_edge_prob(m, y, d)).epsilon(1e-12));
    }
  }
}

TEST_CASE("pseudo-Gibbs thresholds") {
  const GraphSpace s(4, true);
  const AdjacencyState y(s);
  const BiasModel zero({BiasKind::Baseline}, {0.0});
  const BiasModel one({BiasKind::Baseline}, {1.0});
  CHECK_FALSE(pseudo_gibbs_step(zero, y, {0, 1}, 0.0).has(0, 1));
  CHECK(pseudo_gibbs_step(one, y, {0, 1}, std::nextafter(1.0, 0.0)).has(0, 1));
  const BiasModel half({BiasKind::Baseline}, {0.5});
  CHECK_FALSE(pseudo_gibbs_step(half, y, {0, 1}, 0.5).has(0, 1));
  CHECK(pseudo_gibbs_step(half, y, {0, 1}, 0.4999).has(0, 1));
  CHECK_THROWS_AS(BiasModel({BiasKind::Baseline}, {1.5}), InvalidArgument);
  CHECK_THROWS_AS(BiasModel({}, {}), InvalidArgument);
}

TEST_CASE("edge probability is monotone and dichotomizing never raises it") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> th(0, 1);
  const GraphSpace s(7, true);
  for (int r = 0; r < 40; ++r) {
    const double b = th(rng) * 0.3, p = th(rng), sg = th(rng) * 0.4;
    const BiasModel full({BiasKind::Baseline, BiasKind::Parent, BiasKind::Sibling, BiasKind::DichotomizedSibling},
                         {b, p, sg, th(rng)});
    const BiasModel raw({BiasKind::Baseline, BiasKind::Sibling}, {b, sg});
    const BiasModel dich({BiasKind::Baseline, BiasKind::DichotomizedSibling}, {b, sg});
    const auto y = testing::random_state(s, rng, 0.3);
    const auto y2 = testing::random_superset(y, rng, 0.3);
    for (const auto& d : s.free_dyads()) {
      CHECK(edge_prob(full, y, d) <= edge_prob(full, y2, d));
      CHECK(edge_prob(dich, y, d) <= edge_prob(raw, y, d));
      const auto cr = bias_counts(raw, y, d), cd = bias_counts(dich, y, d);
      CHECK(cd[1] <= cr[1]);
    }
  }
}

TEST_CASE("biased CFTP keeps the shadow chain sandwiched") {
  const GraphSpace s(8, true);
  const BiasModel m({BiasKind::Baseline, BiasKind::Parent, BiasKind::Sibling}, {0.1, 0.3, 0.08});
  const BiasKernel kernel(m);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    CftpConfig c;
    c.seed = seed;
    c.audit = true;
    const auto r = run_cftp(kernel, s, c);
    CHECK(r.coalesced);
    CHECK(r.audit_violations == 0);
  }
}

TEST_CASE("baseline-only draws are iid Bernoulli") {
  const GraphSpace s(10, true);
  const BiasModel base({BiasKind::Baseline}, {0.125});
  CftpConfig c;
  c.seed = 5;
  const auto reps = sample_biased_many(base, s, c, 2000, 1);
  double sum = 0, sq = 0;
  for (const auto& r : reps) {
    REQUIRE(r.draw);
    const double x = density(r.draw->graph);
    sum += x, sq += x * x;
  }
  const double mean = sum / 2000, sd = std::sqrt((sq - 2000 * mean * mean) / 1999);
  CHECK(std::abs(mean - 0.125) < 3 * sd / std::sqrt(2000.0));

  // a zero sibling bias is inert: same seeds, same graphs
  const BiasModel inert({BiasKind::Baseline, BiasKind::Sibling}, {0.125, 0.0});
  const auto same = sample_biased_many(inert, s, c, 200, 1);
  for (std::size_t r = 0; r < 200; ++r) CHECK(same[r].draw->graph == reps[r].draw->graph);
}

TEST_CASE("CFTP agrees with a long forward pseudo-Gibbs chain") {
  // approximate: the forward chain is only asymptotically at equilibrium
  const GraphSpace s(8, true);
  const BiasModel m({BiasKind::Baseline, BiasKind::Sibling}, {0.1, 0.1});
  CftpConfig c;
  c.seed = 17;
  double cftp = 0;
  const auto reps = sample_biased_many(m, s, c, 2000, 1);
  for (const auto& r : reps) cftp += density(r.draw->graph);
  cftp /= 2000;

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unif(0, 1);
  AdjacencyState y(s);
  const auto& free = s.free_dyads();
  double fwd = 0;
  std::size_t samples = 0;
  for (std::size_t step = 0; step < 2000000; ++step) {
    const Dyad d = free[rng() % free.size()];
    y = pseudo_gibbs_step(m, y, d, unif(rng));
    if (step > 20000 && step % 500 == 0) fwd += density(y), ++samples;
  }
  fwd /= double(samples);
  CHECK(std::abs(cftp - fwd) < 0.01);
}

TEST_CASE("transitivity and density") {
  const GraphSpace s(4, true);
  CHECK(transitivity(testing::complete(s)) == 1.0);
  CHECK(transitivity(AdjacencyState(s)) == 0.0);
  CHECK(transitivity(graph_of(s, {{1, 2}, {2, 3}})) == 0.0);
  CHECK(transitivity(graph_of(s, {{1, 2}, {2, 3}, {1, 3}})) == 1.0);
  CHECK(transitivity(graph_of(s, {{1, 2}, {2, 3}, {1, 3}, {3, 4}})) == doctest::Approx(1.0 / 3));
  const GraphSpace u(4);
  CHECK(transitivity(graph_of(u, {{1, 2}, {2, 3}, {1, 3}})) == 1.0);
  CHECK(density(graph_of(s, {{1, 2}, {2, 3}, {1, 3}})) == doctest::Approx(3.0 / 12));
  CHECK(density(testing::complete(u)) == 1.0);
}
