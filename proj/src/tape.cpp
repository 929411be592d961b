#include "ergcftp/tape.hpp"

#include <bit>
#include <cstring>

#include "ergcftp/errors.hpp"

namespace ergcftp {

std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix_seed(mix_seed(seed) ^ mix_seed(index + 0x632be59bd9b4e019ULL));
}

double to_unit(std::uint64_t bits) noexcept { return double(bits >> 11) * 0x1.0p-53; }

std::uint64_t bounded(std::mt19937_64& eng, std::uint64_t bound) noexcept {
  unsigned __int128 m = (unsigned __int128)eng() * bound;
  auto low = std::uint64_t(m);
  if (low < bound) {
    const std::uint64_t threshold = -bound % bound;
    while (low < threshold) {
      m = (unsigned __int128)eng() * bound;
      low = std::uint64_t(m);
    }
  }
  return std::uint64_t(m >> 64);
}

RandomTape::RandomTape(std::uint64_t seed, std::size_t dyad_count)
    : seed_(seed), dyad_count_(dyad_count), engine_(seed) {
  if (dyad_count == 0) throw InvalidArgument("random tape needs at least one dyad");
}

void RandomTape::extend(std::size_t new_depth) {
  if (new_depth <= entries_.size()) return;
  entries_.reserve(new_depth);
  while (entries_.size() < new_depth) {
    TapeEntry e;
    e.u = to_unit(engine_());
    e.dyad = static_cast<std::uint32_t>(bounded(engine_, dyad_count_));
    entries_.push_back(e);
  }
}

std::uint64_t RandomTape::fingerprint(std::size_t count) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t k = 0; k < count && k < entries_.size(); ++k) {
    h = mix_seed(h ^ std::bit_cast<std::uint64_t>(entries_[k].u));
    h = mix_seed(h ^ entries_[k].dyad);
  }
  return h;
}

RandomTape extend_tape(RandomTape tape, std::size_t new_depth) {
  tape.extend(new_depth);
  return tape;
}

}  // namespace ergcftp
