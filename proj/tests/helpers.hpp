#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <utility>
#include <vector>

#include "ergcftp/graph.hpp"
#include "ergcftp/oracle.hpp"

namespace testing {

using namespace ergcftp;

// Edges given 1-based, as in the text formats.
inline AdjacencyState graph_of(const GraphSpace& space,
                               std::initializer_list<std::pair<Vertex, Vertex>> edges) {
  AdjacencyState y(space);
  for (auto [a, b] : edges) y.assign(space.canonical({a - 1, b - 1}), true);
  return y;
}

inline AdjacencyState complete(const GraphSpace& space) { return bounds_of_space(space).second; }

inline AdjacencyState random_state(const GraphSpace& space, std::mt19937_64& rng, double p = 0.5) {
  std::bernoulli_distribution coin(p);
  AdjacencyState y(space);
  for (const auto& d : space.free_dyads()) y.assign_free(d, coin(rng));
  return y;
}

// Random y' with y ⊆ y'.
inline AdjacencyState random_superset(const AdjacencyState& y, std::mt19937_64& rng, double p = 0.5) {
  std::bernoulli_distribution coin(p);
  AdjacencyState out = y;
  for (const auto& d : y.space().free_dyads())
    if (!y.has(d) && coin(rng)) out.assign_free(d, true);
  return out;
}

inline std::vector<AdjacencyState> all_states(const GraphSpace& space) {
  std::vector<AdjacencyState> out;
  const std::uint64_t count = std::uint64_t{1} << space.free_dyads().size();
  for (std::uint64_t key = 0; key < count; ++key) out.push_back(decode_free_bits(space, key));
  return out;
}

}  // namespace testing
