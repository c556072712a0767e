#pragma once

// Counter-based random streams. A Stream is identified by (seed, replication,
// experiment); its n-th output depends on nothing else, so work can be split
// across threads in any order without changing a single draw.

#include <array>
#include <cstdint>
#include <limits>

namespace bfdr::rng {

/// Philox4x32-10 block function (Salmon et al. 2011).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// UniformRandomBitGenerator over 32-bit words, usable with <random>
/// distributions. The counter is (block, experiment lo, experiment hi, replication).
class Stream {
 public:
  using result_type = std::uint32_t;

  Stream(std::uint64_t seed, std::uint32_t replication, std::uint64_t experiment);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  /// Uniform on the open interval (0, 1), 53 random bits.
  double uniform();
  double normal();
  double exponential();
  /// Gamma(shape, 1).
  double gamma(double shape);
  double cauchy();

  std::uint64_t words_drawn() const { return drawn_; }

 private:
  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> ctr_;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
  std::uint64_t drawn_ = 0;
};

}  // namespace bfdr::rng
