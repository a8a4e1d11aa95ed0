#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace salsa {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Output block i
// of stream s under a 64-bit seed is a pure function of (seed, s, i), so
// sequences are reproducible across platforms and can be split freely.
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;

  static Block generate(Block counter, std::array<std::uint32_t, 2> key);

  Philox4x32(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint32_t next_u32();
  // Uniform in [0, 1) with 53 random bits.
  double uniform();
  // Uniform in (0, 1].
  double uniform_open_zero() { return 1.0 - uniform(); }
  // Uniform integer in [0, bound) without modulo bias.
  std::uint64_t uniform_index(std::uint64_t bound);
  // Standard normal via Box-Muller.
  double normal();

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_index_ = 0;
  Block buffer_{};
  int buffered_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

// Streams used by the experiment harness.
enum class RngStream : std::uint64_t { noise = 1, mask = 2, power_method = 3, tests = 4 };

inline Philox4x32 make_rng(std::uint64_t seed, RngStream stream) {
  return Philox4x32(seed, static_cast<std::uint64_t>(stream));
}

// Uniformly random subset of `count` distinct indices from [0, total), sorted.
std::vector<std::int64_t> sample_without_replacement(Philox4x32& rng, std::int64_t total, std::int64_t count);

}  // namespace salsa
