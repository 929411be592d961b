#include "ergcftp/graph.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace ergcftp {

namespace {

std::string dyad_str(Dyad d) {
  return "(" + std::to_string(d.i + 1) + "," + std::to_string(d.j + 1) + ")";
}

}  // namespace

GraphSpace::GraphSpace(Vertex n, bool directed, bool loops,
                       std::vector<Dyad> forced_present,
                       std::vector<Dyad> forced_absent) {
  if (n == 0) throw InvalidArgument("graph space needs at least one vertex");
  auto impl = std::make_shared<Impl>();
  impl->n = n;
  impl->directed = directed;
  impl->loops = loops;
  impl->status.assign(std::size_t(n) * n, DyadStatus::Invalid);
  impl->free_pos.assign(std::size_t(n) * n, -1);

  // Canonical order: row-major over (i, j); undirected keeps j < i (j == i for loops).
  for (Vertex i = 0; i < n; ++i) {
    const Vertex jmax = directed ? n : i + 1;
    for (Vertex j = 0; j < jmax; ++j) {
      if (i == j && !loops) continue;
      impl->status[std::size_t(i) * n + j] = DyadStatus::Free;
    }
  }
  impl_ = impl;  // canonical() below only needs n/directed/loops

  auto mark = [&](std::vector<Dyad>& src, DyadStatus st, const char* what) {
    for (auto& d : src) {
      if (!valid(d))
        throw InvalidArgument(std::string("invalid ") + what + " dyad " + dyad_str(d));
      d = canonical(d);
      auto& slot = impl->status[std::size_t(d.i) * n + d.j];
      if (slot != DyadStatus::Free && slot != st)
        throw InvalidArgument("dyad " + dyad_str(d) + " is both forced present and forced absent");
      slot = st;
    }
    std::sort(src.begin(), src.end());
    src.erase(std::unique(src.begin(), src.end()), src.end());
  };
  mark(forced_present, DyadStatus::ForcedPresent, "forced-present");
  mark(forced_absent, DyadStatus::ForcedAbsent, "forced-absent");
  impl->forced_present = std::move(forced_present);
  impl->forced_absent = std::move(forced_absent);

  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = 0; j < n; ++j) {
      const auto idx = std::size_t(i) * n + j;
      if (impl->status[idx] == DyadStatus::Free) {
        impl->free_pos[idx] = static_cast<std::int32_t>(impl->free.size());
        impl->free.push_back({i, j});
      }
    }
  }
  if (impl->free.empty()) throw InvalidArgument("graph space has no free dyads");
}

GraphSpace GraphSpace::bipartite(Vertex n_rows, Vertex n_cols, bool directed) {
  const Vertex n = n_rows + n_cols;
  std::vector<Dyad> absent;
  auto same_mode = [&](Vertex a, Vertex b) { return (a < n_rows) == (b < n_rows); };
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = 0; j < n; ++j)
      if (i != j && same_mode(i, j) && (directed || i > j)) absent.push_back({i, j});
  return GraphSpace(n, directed, false, {}, std::move(absent));
}

GraphSpace GraphSpace::egocentric(Vertex n, Vertex ego, bool directed) {
  if (ego >= n) throw InvalidArgument("ego vertex out of range");
  std::vector<Dyad> present;
  for (Vertex v = 0; v < n; ++v) {
    if (v == ego) continue;
    present.push_back({ego, v});
    if (directed) present.push_back({v, ego});
  }
  return GraphSpace(n, directed, false, std::move(present), {});
}

std::size_t GraphSpace::dyad_count() const noexcept {
  const std::size_t n = impl_->n;
  std::size_t c = impl_->directed ? n * (n - 1) : n * (n - 1) / 2;
  return impl_->loops ? c + n : c;
}

bool GraphSpace::valid(Dyad d) const noexcept {
  if (d.i >= impl_->n || d.j >= impl_->n) return false;
  return d.i != d.j || impl_->loops;
}

Dyad GraphSpace::canonical(Dyad d) const {
  if (!valid(d)) throw InvalidArgument("invalid dyad " + dyad_str(d));
  if (!impl_->directed && d.i < d.j) std::swap(d.i, d.j);
  return d;
}

DyadStatus GraphSpace::status(Dyad d) const noexcept {
  if (!valid(d)) return DyadStatus::Invalid;
  if (!impl_->directed && d.i < d.j) std::swap(d.i, d.j);
  return impl_->status[std::size_t(d.i) * impl_->n + d.j];
}

std::ptrdiff_t GraphSpace::free_index(Dyad d) const noexcept {
  if (!valid(d)) return -1;
  if (!impl_->directed && d.i < d.j) std::swap(d.i, d.j);
  return impl_->free_pos[std::size_t(d.i) * impl_->n + d.j];
}

bool operator==(const GraphSpace& a, const GraphSpace& b) noexcept {
  if (a.impl_ == b.impl_) return true;
  return a.impl_->n == b.impl_->n && a.impl_->directed == b.impl_->directed &&
         a.impl_->loops == b.impl_->loops && a.impl_->status == b.impl_->status;
}

std::vector<Dyad> free_dyads(const GraphSpace& space) { return space.free_dyads(); }

AdjacencyState::AdjacencyState(GraphSpace space)
    : space_(std::move(space)),
      words_((space_.n() + kWordBits - 1) / kWordBits),
      out_(space_.n() * words_, 0),
      in_(space_.directed() ? space_.n() * words_ : 0, 0),
      out_deg_(space_.n(), 0),
      in_deg_(space_.directed() ? space_.n() : 0, 0) {
  for (const auto& d : space_.forced_present()) set_bits(d.i, d.j, true);
}

void AdjacencyState::set_bits(Vertex i, Vertex j, bool present) noexcept {
  const Word mask_j = Word{1} << (j % kWordBits);
  Word& w = out_[i * words_ + j / kWordBits];
  if (bool(w & mask_j) == present) return;
  const int delta = present ? 1 : -1;
  w ^= mask_j;
  edges_ += delta;
  if (i == j) {
    if (space_.directed()) in_[j * words_ + i / kWordBits] ^= Word{1} << (i % kWordBits);
    return;
  }
  const Word mask_i = Word{1} << (i % kWordBits);
  if (space_.directed()) {
    in_[j * words_ + i / kWordBits] ^= mask_i;
    out_deg_[i] += delta;
    in_deg_[j] += delta;
  } else {
    out_[j * words_ + i / kWordBits] ^= mask_i;
    out_deg_[i] += delta;
    out_deg_[j] += delta;
  }
}

void AdjacencyState::assign(Dyad d, bool present) {
  d = space_.canonical(d);
  const auto st = space_.status(d);
  if ((st == DyadStatus::ForcedPresent && !present) || (st == DyadStatus::ForcedAbsent && present))
    throw RestrictionViolation("dyad " + dyad_str(d) + " is restricted to be " +
                               (present ? "absent" : "present"));
  set_bits(d.i, d.j, present);
}

bool AdjacencyState::assign_free(Dyad d, bool present) noexcept {
  if (has(d) == present) return false;
  set_bits(d.i, d.j, present);
  return true;
}

std::vector<Dyad> AdjacencyState::edges() const {
  std::vector<Dyad> out;
  const Vertex n = space_.n();
  for (Vertex i = 0; i < n; ++i) {
    const Vertex jmax = space_.directed() ? n : i + 1;
    for (Vertex j = 0; j < jmax; ++j)
      if (has(i, j)) out.push_back({i, j});
  }
  return out;
}

bool operator==(const AdjacencyState& a, const AdjacencyState& b) noexcept {
  return a.space_ == b.space_ && a.out_ == b.out_;
}

AdjacencyState with_edge(const AdjacencyState& state, Dyad d, bool present) {
  AdjacencyState out = state;
  out.assign(d, present);
  return out;
}

namespace {

void require_same_space(const AdjacencyState& a, const AdjacencyState& b) {
  if (!(a.space() == b.space())) throw SpaceMismatch("states belong to different graph spaces");
}

}  // namespace

bool is_subgraph(const AdjacencyState& a, const AdjacencyState& b) {
  require_same_space(a, b);
  for (Vertex i = 0; i < a.n(); ++i) {
    auto ra = a.out_row(i);
    auto rb = b.out_row(i);
    for (std::size_t w = 0; w < ra.size(); ++w)
      if (ra[w] & ~rb[w]) return false;
  }
  return true;
}

std::size_t differing_dyads(const AdjacencyState& a, const AdjacencyState& b) {
  require_same_space(a, b);
  std::size_t total = 0, diag = 0;
  for (Vertex i = 0; i < a.n(); ++i) {
    auto ra = a.out_row(i);
    auto rb = b.out_row(i);
    for (std::size_t w = 0; w < ra.size(); ++w) total += std::popcount(ra[w] ^ rb[w]);
    diag += a.has(i, i) != b.has(i, i);
  }
  if (a.space().directed()) return total;
  return (total - diag) / 2 + diag;
}

std::pair<AdjacencyState, AdjacencyState> bounds_of_space(const GraphSpace& space) {
  AdjacencyState lower(space);
  AdjacencyState upper(space);
  for (const auto& d : space.free_dyads()) upper.assign_free(d, true);
  return {std::move(lower), std::move(upper)};
}

void write_edge_list(std::ostream& os, const AdjacencyState& state) {
  const auto& s = state.space();
  os << "# n=" << s.n() << " directed=" << (s.directed() ? 1 : 0)
     << " loops=" << (s.loops() ? 1 : 0) << '\n';
  for (const auto& d : state.edges()) {
    // undirected edges printed smaller index first
    Vertex a = d.i, b = d.j;
    if (!s.directed() && a > b) std::swap(a, b);
    os << a + 1 << ' ' << b + 1 << '\n';
  }
}

AdjacencyState read_edge_list(std::istream& is, const GraphSpace& space) {
  AdjacencyState out(space);
  std::string line;
  bool saw_header = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      unsigned n = 0;
      int directed = 0, loops = 0;
      if (std::sscanf(line.c_str(), "# n=%u directed=%d loops=%d", &n, &directed, &loops) == 3) {
        if (saw_header) break;
        saw_header = true;
        if (n != space.n() || bool(directed) != space.directed() || bool(loops) != space.loops())
          throw SpaceMismatch("edge list header does not match the graph space");
      }
      continue;
    }
    std::istringstream ls(line);
    long a = 0, b = 0;
    if (!(ls >> a >> b) || a < 1 || b < 1)
      throw ParseError("malformed edge-list line: " + line);
    out.assign({Vertex(a - 1), Vertex(b - 1)}, true);
  }
  return out;
}

}  // namespace ergcftp
