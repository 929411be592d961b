#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace ergcftp {

// SplitMix64 finalizer; used to derive independent seeds.
std::uint64_t mix_seed(std::uint64_t x) noexcept;
// Seed of replication `index` under base seed `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

// 53-bit uniform deviate in [0, 1).
double to_unit(std::uint64_t bits) noexcept;
// Unbiased integer in [0, bound) (Lemire's multiply-shift with rejection).
std::uint64_t bounded(std::mt19937_64& eng, std::uint64_t bound) noexcept;

struct TapeEntry {
  double u = 0.0;
  std::uint32_t dyad = 0;  // index into GraphSpace::free_dyads()

  friend bool operator==(const TapeEntry&, const TapeEntry&) = default;
};

/// Per-time-index random inputs of a CFTP run. Entry k is the input used
/// at time -(k+1); extending the tape only appends older entries, so the
/// recent history is replayed identically after every back-off.
///
/// Generation: std::mt19937_64 seeded with `seed`; each entry draws u first
/// (to_unit) and then the dyad (bounded), in order of increasing age.
class RandomTape {
 public:
  static constexpr const char* kScheme = "mt19937_64/u53+lemire";

  RandomTape(std::uint64_t seed, std::size_t dyad_count);

  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t depth() const noexcept { return entries_.size(); }
  std::size_t dyad_count() const noexcept { return dyad_count_; }

  // Entry for time -t, t in [1, depth].
  const TapeEntry& at_time(std::size_t t) const noexcept { return entries_[t - 1]; }
  const std::vector<TapeEntry>& entries() const noexcept { return entries_; }

  // Grow to new_depth entries; existing entries are untouched.
  void extend(std::size_t new_depth);
  // Order-sensitive hash of the first `count` entries.
  std::uint64_t fingerprint(std::size_t count) const noexcept;

 private:
  std::uint64_t seed_;
  std::size_t dyad_count_;
  std::mt19937_64 engine_;
  std::vector<TapeEntry> entries_;
};

// Copying form of RandomTape::extend.
RandomTape extend_tape(RandomTape tape, std::size_t new_depth);

}  // namespace ergcftp
