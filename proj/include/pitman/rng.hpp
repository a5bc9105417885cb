#ifndef PITMAN_RNG_HPP
#define PITMAN_RNG_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <utility>

namespace pitman {

// 64-bit avalanche finalizer (splitmix64 output stage).
constexpr std::uint64_t avalanche(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  state += 0x9e3779b97f4a7c15ULL;
  return avalanche(state);
}

/// Derive an independent stream seed from a master seed and a tuple of
/// coordinates (law id, sample size, replication index, ...). The result
/// depends only on the values, never on the order work is scheduled in.
constexpr std::uint64_t mix_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> coords) noexcept {
  std::uint64_t h = avalanche(master ^ 0x6a09e667f3bcc909ULL);
  for (std::uint64_t c : coords) {
    h = avalanche(h + 0x9e3779b97f4a7c15ULL + avalanche(c + 0x3c6ef372fe94f82bULL));
  }
  return h;
}

/**
 * xoshiro256** engine with the variate generators the samplers need.
 *
 * All generators are implemented here rather than through <random>
 * distributions so that a given seed yields the same stream on every
 * standard library.
 */
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0x853c49e6748fea9bULL) noexcept { reseed(seed); }

  void reseed(std::uint64_t seed) noexcept {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
    has_spare_ = false;
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform on the open interval (0, 1).
  double uniform() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  double exponential() noexcept { return -std::log(uniform()); }

  // Marsaglia polar method; the second variate is cached.
  double normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

  /**
   * Logarithm of a Gamma(shape, 1) variate.
   *
   * Shape >= 1 uses Marsaglia-Tsang. Shape < 1 uses the augmentation
   * Gamma(a) = Gamma(a + 1) * U^{1/a}, carried out in log space so that
   * tiny shapes do not underflow to an exact zero.
   */
  double log_gamma_variate(double shape) noexcept {
    if (shape < 1.0) {
      return log_gamma_variate(shape + 1.0) + std::log(uniform()) / shape;
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
      const double x2 = x * x;
      if (u < 1.0 - 0.0331 * x2 * x2) return std::log(d * v);
      const double lv = std::log(v);
      if (std::log(u) < 0.5 * x2 + d * (1.0 - v + lv)) return std::log(d) + lv;
    }
  }

  double gamma(double shape) noexcept { return std::exp(log_gamma_variate(shape)); }

  /// Beta(a, b) as a two-Gamma ratio. A zero shape gives the degenerate limit.
  double beta(double a, double b) noexcept {
    if (b <= 0.0) return 1.0;
    if (a <= 0.0) return 0.0;
    const double la = log_gamma_variate(a);
    const double lb = log_gamma_variate(b);
    return 1.0 / (1.0 + std::exp(lb - la));
  }

  /// Beta(a, b) together with its complement, each computed without
  /// cancellation.
  std::pair<double, double> beta_with_complement(double a, double b) noexcept {
    if (b <= 0.0) return {1.0, 0.0};
    if (a <= 0.0) return {0.0, 1.0};
    const double d = log_gamma_variate(b) - log_gamma_variate(a);
    return {1.0 / (1.0 + std::exp(d)), 1.0 / (1.0 + std::exp(-d))};
  }

  /// Positive sigma-stable variate with Laplace transform exp(-t^sigma)
  /// (Kanter's representation), returned as a logarithm.
  double log_positive_stable(double sigma) noexcept {
    const double u = std::numbers::pi * uniform();
    const double e = exponential();
    const double a = std::log(std::sin(sigma * u)) - std::log(std::sin(u)) / sigma;
    const double b = (1.0 - sigma) / sigma * (std::log(std::sin((1.0 - sigma) * u)) - std::log(e));
    return a + b;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4]{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace pitman

#endif  // PITMAN_RNG_HPP
