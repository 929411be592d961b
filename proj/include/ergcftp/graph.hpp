#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "ergcftp/errors.hpp"

namespace ergcftp {

using Vertex = std::uint32_t;

// A potential edge variable. Vertices are 0-based; text output is 1-based.
// Canonical undirected form has i > j (or i == j for a loop).
struct Dyad {
  Vertex i = 0;
  Vertex j = 0;

  friend auto operator<=>(const Dyad&, const Dyad&) = default;
};

enum class DyadStatus : std::uint8_t { Free, ForcedPresent, ForcedAbsent, Invalid };

/// The support of a random graph: order, directedness, loop policy and
/// dyads fixed ex ante. Immutable; copies share the same underlying data.
class GraphSpace {
 public:
  GraphSpace(Vertex n, bool directed = false, bool loops = false,
             std::vector<Dyad> forced_present = {},
             std::vector<Dyad> forced_absent = {});

  static GraphSpace undirected(Vertex n) { return GraphSpace(n, false, false); }
  static GraphSpace directed_space(Vertex n) { return GraphSpace(n, true, false); }
  // Vertices [0, n_rows) and [n_rows, n_rows + n_cols); within-mode dyads forced absent.
  static GraphSpace bipartite(Vertex n_rows, Vertex n_cols, bool directed = false);
  // Vertex `ego` is forced adjacent to (and, if directed, from) every other vertex.
  static GraphSpace egocentric(Vertex n, Vertex ego, bool directed = false);

  Vertex n() const noexcept { return impl_->n; }
  bool directed() const noexcept { return impl_->directed; }
  bool loops() const noexcept { return impl_->loops; }

  // Total number of dyads in the unrestricted space (free + forced).
  std::size_t dyad_count() const noexcept;
  const std::vector<Dyad>& free_dyads() const noexcept { return impl_->free; }
  const std::vector<Dyad>& forced_present() const noexcept { return impl_->forced_present; }
  const std::vector<Dyad>& forced_absent() const noexcept { return impl_->forced_absent; }

  bool valid(Dyad d) const noexcept;
  // Canonical orientation; throws InvalidArgument for invalid dyads.
  Dyad canonical(Dyad d) const;
  DyadStatus status(Dyad d) const noexcept;
  // Position of a free dyad in free_dyads(), or -1.
  std::ptrdiff_t free_index(Dyad d) const noexcept;

  friend bool operator==(const GraphSpace& a, const GraphSpace& b) noexcept;

 private:
  struct Impl {
    Vertex n = 0;
    bool directed = false;
    bool loops = false;
    std::vector<Dyad> forced_present;
    std::vector<Dyad> forced_absent;
    std::vector<Dyad> free;
    std::vector<DyadStatus> status;       // n*n, canonical orientation only
    std::vector<std::int32_t> free_pos;   // n*n, canonical orientation only
  };
  std::shared_ptr<const Impl> impl_;
};

std::vector<Dyad> free_dyads(const GraphSpace& space);

/// A single graph realization. Rows hold out-neighbourhoods as bitsets; for
/// directed spaces a transposed copy holds in-neighbourhoods. Undirected
/// states store both orientations. Non-loop degrees are cached.
class AdjacencyState {
 public:
  using Word = std::uint64_t;
  static constexpr unsigned kWordBits = 64;

  // The empty graph with forced-present dyads set.
  explicit AdjacencyState(GraphSpace space);

  const GraphSpace& space() const noexcept { return space_; }
  Vertex n() const noexcept { return space_.n(); }
  std::size_t words_per_row() const noexcept { return words_; }

  bool has(Vertex i, Vertex j) const noexcept {
    return (out_[i * words_ + j / kWordBits] >> (j % kWordBits)) & 1u;
  }
  bool has(Dyad d) const noexcept { return has(d.i, d.j); }

  // Checked: throws RestrictionViolation when contradicting a forced dyad.
  void assign(Dyad d, bool present);
  // Unchecked fast path; `d` must be a canonical free dyad.
  // Returns true when the dyad changed.
  bool assign_free(Dyad d, bool present) noexcept;

  std::span<const Word> out_row(Vertex i) const noexcept {
    return {out_.data() + i * words_, words_};
  }
  std::span<const Word> in_row(Vertex i) const noexcept {
    const auto& src = space_.directed() ? in_ : out_;
    return {src.data() + i * words_, words_};
  }

  // Non-loop degrees (undirected: out == in).
  std::uint32_t out_degree(Vertex i) const noexcept { return out_deg_[i]; }
  std::uint32_t in_degree(Vertex i) const noexcept {
    return space_.directed() ? in_deg_[i] : out_deg_[i];
  }
  std::uint32_t degree(Vertex i) const noexcept { return out_deg_[i]; }
  // Present dyads, loops included.
  std::size_t edge_count() const noexcept { return edges_; }

  std::vector<Dyad> edges() const;

  friend bool operator==(const AdjacencyState& a, const AdjacencyState& b) noexcept;

 private:
  void set_bits(Vertex i, Vertex j, bool present) noexcept;

  GraphSpace space_;
  std::size_t words_;
  std::vector<Word> out_;
  std::vector<Word> in_;
  std::vector<std::uint32_t> out_deg_;
  std::vector<std::uint32_t> in_deg_;
  std::size_t edges_ = 0;
};

// y+ / y- for dyad d (copying).
AdjacencyState with_edge(const AdjacencyState& state, Dyad d, bool present);

// a ⊆ b under subgraph inclusion. Throws SpaceMismatch.
bool is_subgraph(const AdjacencyState& a, const AdjacencyState& b);

// Number of dyads on which a and b differ. Throws SpaceMismatch.
std::size_t differing_dyads(const AdjacencyState& a, const AdjacencyState& b);

// (N'_n, K'_n): free dyads all absent / all present.
std::pair<AdjacencyState, AdjacencyState> bounds_of_space(const GraphSpace& space);

// Edge-list text: "# n=<n> directed=<0|1> loops=<0|1>" then one "i j" (1-based) per edge.
void write_edge_list(std::ostream& os, const AdjacencyState& state);
AdjacencyState read_edge_list(std::istream& is, const GraphSpace& space);

}  // namespace ergcftp
