#include "bfdr/rng.hpp"

#include <cmath>
#include <stdexcept>

#include "bfdr/numkernel.hpp"

namespace bfdr::rng {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> c,
                                        std::array<std::uint32_t, 2> k) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, c[0], hi0, lo0);
    mulhilo(kMul1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kWeyl0;
    k[1] += kWeyl1;
  }
  return c;
}

Stream::Stream(std::uint64_t seed, std::uint32_t replication, std::uint64_t experiment)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      ctr_{0u, static_cast<std::uint32_t>(experiment), static_cast<std::uint32_t>(experiment >> 32),
           replication} {}

Stream::result_type Stream::operator()() {
  if (pos_ == 4) {
    buf_ = philox4x32(ctr_, key_);
    ++ctr_[0];
    if (ctr_[0] == 0) throw std::overflow_error("rng::Stream: counter exhausted");
    pos_ = 0;
  }
  ++drawn_;
  return buf_[static_cast<std::size_t>(pos_++)];
}

double Stream::uniform() {
  const std::uint64_t hi = (*this)() >> 6;  // 26 bits
  const std::uint64_t lo = (*this)() >> 5;  // 27 bits
  const std::uint64_t bits = (hi << 27) | lo;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

// Inversion keeps exactly one uniform per normal draw.
double Stream::normal() { return num::std_normal_quantile(uniform()); }

double Stream::exponential() { return -std::log(uniform()); }

double Stream::cauchy() { return std::tan(num::kPi * (uniform() - 0.5)); }

// Marsaglia and Tsang (2000); shape < 1 via the U^(1/shape) boost.
double Stream::gamma(double shape) {
  if (!(shape > 0.0)) throw std::invalid_argument("rng::Stream::gamma: shape must be positive");
  if (shape < 1.0) {
    const double g = gamma(shape + 1.0);
    return g * std::pow(uniform(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace bfdr::rng
