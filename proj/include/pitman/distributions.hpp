#ifndef PITMAN_DISTRIBUTIONS_HPP
#define PITMAN_DISTRIBUTIONS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include <boost/math/special_functions/erf.hpp>

#include "pitman/error.hpp"
#include "pitman/functional.hpp"
#include "pitman/rng.hpp"

namespace pitman {

namespace detail {

// Atoms 1..kPrefixLimit of a power law are tabulated; beyond that the tail
// sum is evaluated analytically.
inline constexpr std::size_t kPrefixLimit = 1'000'000;

/// Σ_{j>k} j^{-s} for s > 1 and k >= kPrefixLimit-ish, by Euler-Maclaurin.
/// Relative error is far below 1e-15 once k >= 1e3.
inline double zeta_tail(double s, double k) {
  const double ks = std::pow(k, -s);
  return k * ks / (s - 1.0) - 0.5 * ks + s * ks / (12.0 * k) -
         s * (s + 1.0) * (s + 2.0) * ks / (720.0 * k * k * k);
}

/// Riemann zeta by direct summation of the first kPrefixLimit terms
/// (smallest first) plus the analytic tail.
inline double zeta(double s) {
  double sum = zeta_tail(s, static_cast<double>(kPrefixLimit));
  for (std::size_t j = kPrefixLimit; j >= 1; --j) sum += std::pow(static_cast<double>(j), -s);
  return sum;
}

}  // namespace detail

/// Standard normal CDF.
inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

/// Standard normal upper tail 1 - Φ(z), accurate in the far right tail.
inline double normal_sf(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

inline double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("normal_quantile: p must lie in (0,1)");
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

/// The continuous base measure G (and continuous parts of true laws).
class GaussianLaw {
 public:
  GaussianLaw(double mean, double variance) : mean_(mean), var_(variance) {
    require(variance > 0.0 && std::isfinite(variance) && std::isfinite(mean),
            "GaussianLaw: variance must be positive and finite");
  }

  double mean() const noexcept { return mean_; }
  double variance() const noexcept { return var_; }
  double sd() const noexcept { return std::sqrt(var_); }

  double cdf(double x) const { return normal_cdf((x - mean_) / sd()); }
  // P(X > x); there are no atoms, so this also equals P(X >= x).
  double prob_greater(double x) const { return normal_sf((x - mean_) / sd()); }
  double quantile(double p) const { return mean_ + sd() * normal_quantile(p); }

  double sample(Rng& rng) const { return mean_ + sd() * rng.normal(); }

  friend bool operator==(const GaussianLaw&, const GaussianLaw&) = default;

 private:
  double mean_;
  double var_;
};

/**
 * A discrete law on the real line: either a finite table of (value, weight)
 * pairs, or the power law with weight c·j^{-α} on each positive integer j.
 *
 * Power laws tabulate the suffix sums Σ_{j>k} j^{-α} for k ≤ 10^6 once at
 * construction; the table is immutable and shared between copies, so laws
 * may be read from any number of threads.
 */
class AtomicLaw {
 public:
  enum class Kind { FiniteTable, PowerLaw };

  static AtomicLaw finite(std::vector<std::pair<double, double>> atoms) {
    require(!atoms.empty(), "finite law: at least one atom required");
    double total = 0.0;
    for (const auto& [x, w] : atoms) {
      require(std::isfinite(x), "finite law: atom values must be finite");
      require(w > 0.0 && std::isfinite(w), "finite law: weights must be strictly positive");
      total += w;
    }
    require(std::abs(total - 1.0) <= 1e-12, "finite law: weights must sum to 1");
    std::sort(atoms.begin(), atoms.end());
    for (std::size_t i = 1; i < atoms.size(); ++i) {
      require(atoms[i].first != atoms[i - 1].first, "finite law: atom values must be distinct");
    }
    AtomicLaw law(Kind::FiniteTable);
    law.values_.reserve(atoms.size());
    law.weights_.reserve(atoms.size());
    law.cumulative_.reserve(atoms.size());
    double acc = 0.0;
    for (const auto& [x, w] : atoms) {
      law.values_.push_back(x);
      law.weights_.push_back(w);
      acc += w;
      law.cumulative_.push_back(acc);
    }
    return law;
  }

  static AtomicLaw power_law(double alpha) {
    require(alpha > 1.0 && std::isfinite(alpha), "power law: exponent must exceed 1");
    AtomicLaw law(Kind::PowerLaw);
    law.alpha_ = alpha;
    auto suffix = std::make_shared<std::vector<double>>(detail::kPrefixLimit + 1);
    auto& s = *suffix;
    s[detail::kPrefixLimit] = detail::zeta_tail(alpha, static_cast<double>(detail::kPrefixLimit));
    for (std::size_t k = detail::kPrefixLimit; k >= 1; --k) {
      s[k - 1] = s[k] + std::pow(static_cast<double>(k), -alpha);
    }
    law.zeta_ = s[0];
    law.normalizer_ = 1.0 / s[0];
    law.suffix_ = std::move(suffix);
    return law;
  }

  Kind kind() const noexcept { return kind_; }
  bool is_power_law() const noexcept { return kind_ == Kind::PowerLaw; }

  double exponent() const noexcept { return alpha_; }
  /// The constant c = 1/ζ(α) of a power law (1 for finite tables).
  double normalizer() const noexcept { return normalizer_; }

  /// Atom values of a finite table, sorted increasingly.
  const std::vector<double>& values() const noexcept { return values_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  /// Mass of the atom at x.
  double mass(double x) const {
    if (kind_ == Kind::FiniteTable) {
      auto it = std::lower_bound(values_.begin(), values_.end(), x);
      return (it != values_.end() && *it == x) ? weights_[it - values_.begin()] : 0.0;
    }
    if (x < 1.0 || x != std::floor(x)) return 0.0;
    return normalizer_ * std::pow(x, -alpha_);
  }

  /// P(X > x).
  double prob_greater(double x) const {
    if (kind_ == Kind::FiniteTable) {
      auto it = std::upper_bound(values_.begin(), values_.end(), x);
      if (it == values_.begin()) return 1.0;
      // Sum the remaining weights directly: 1 - cumulative loses precision.
      double s = 0.0;
      for (auto i = static_cast<std::size_t>(it - values_.begin()); i < weights_.size(); ++i) {
        s += weights_[i];
      }
      return s;
    }
    if (x < 1.0) return 1.0;
    return survival_at(std::floor(x));
  }

  /// P(X >= x).
  double prob_at_least(double x) const {
    if (kind_ == Kind::FiniteTable) {
      auto it = std::lower_bound(values_.begin(), values_.end(), x);
      double s = 0.0;
      for (auto i = static_cast<std::size_t>(it - values_.begin()); i < weights_.size(); ++i) {
        s += weights_[i];
      }
      return s;
    }
    const double k = std::ceil(x) - 1.0;
    if (k < 1.0) return 1.0;
    return survival_at(k);
  }

  double cdf(double x) const { return 1.0 - prob_greater(x); }

  /// Smallest atom whose CDF is at least u, for u in (0,1).
  double quantile(double u) const {
    if (kind_ == Kind::FiniteTable) {
      auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
      if (it == cumulative_.end()) return values_.back();
      return values_[it - cumulative_.begin()];
    }
    return invert_survival(1.0 - u);
  }

  double sample(Rng& rng) const {
    if (kind_ == Kind::FiniteTable) return quantile(rng.uniform());
    // 1 - U is again uniform; inverting the survival function directly keeps
    // full precision deep in the tail.
    return invert_survival(rng.uniform());
  }

  /// α₀(u) = #{x : 1/P{x} ≤ u}, the number of atoms of mass at least 1/u.
  /// Masses within a relative 1e-12 of the threshold count as reaching it.
  std::uint64_t alpha0(double u) const {
    if (!(u >= 1.0)) throw DomainError("alpha0: u must be at least 1");
    constexpr double slack = 1e-12;
    if (kind_ == Kind::FiniteTable) {
      return static_cast<std::uint64_t>(std::count_if(
          weights_.begin(), weights_.end(), [&](double w) { return w * u >= 1.0 - slack; }));
    }
    double k = std::floor(std::pow(normalizer_ * u, 1.0 / alpha_));
    while (k >= 1.0 && normalizer_ * std::pow(k, -alpha_) * u < 1.0 - slack) k -= 1.0;
    while (normalizer_ * std::pow(k + 1.0, -alpha_) * u >= 1.0 - slack) k += 1.0;
    return static_cast<std::uint64_t>(k);
  }

  /// Σ x^power P{x}; throws when the moment diverges.
  double moment(int power) const {
    if (kind_ == Kind::FiniteTable) {
      double s = 0.0;
      for (std::size_t i = 0; i < values_.size(); ++i) s += weights_[i] * std::pow(values_[i], power);
      return s;
    }
    if (alpha_ - power <= 1.0) {
      throw DivergentMomentError("power law with exponent " + std::to_string(alpha_) +
                                 " has no finite moment of order " + std::to_string(power));
    }
    return normalizer_ * detail::zeta(alpha_ - power);
  }

 private:
  explicit AtomicLaw(Kind k) : kind_(k) {}

  // P(X > k) for integer k >= 1.
  double survival_at(double k) const {
    if (k <= static_cast<double>(detail::kPrefixLimit)) {
      return normalizer_ * (*suffix_)[static_cast<std::size_t>(k)];
    }
    return normalizer_ * detail::zeta_tail(alpha_, k);
  }

  // Smallest k with P(X > k) <= v.
  double invert_survival(double v) const {
    const double target = v * zeta_;
    const auto& s = *suffix_;
    if (s[detail::kPrefixLimit] <= target) {
      auto first = s.begin() + 1;
      auto it = std::partition_point(first, s.end(), [&](double t) { return t > target; });
      return static_cast<double>(it - s.begin());
    }
    double lo = static_cast<double>(detail::kPrefixLimit);
    double hi = 2.0 * lo;
    while (detail::zeta_tail(alpha_, hi) > target) {
      lo = hi;
      hi *= 2.0;
    }
    for (;;) {
      const double mid = std::floor(0.5 * (lo + hi));
      if (mid <= lo || mid >= hi) break;
      if (detail::zeta_tail(alpha_, mid) > target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return hi;
  }

  Kind kind_;
  std::vector<double> values_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
  double alpha_ = 0.0;
  double zeta_ = 1.0;
  double normalizer_ = 1.0;
  std::shared_ptr<const std::vector<double>> suffix_;
};

/// P₀ = (1-λ)·P₀^d + λ·P₀^c.
class P0Decomposition {
 public:
  P0Decomposition(double lambda, std::optional<AtomicLaw> discrete,
                  std::optional<GaussianLaw> continuous)
      : lambda_(lambda), discrete_(std::move(discrete)), continuous_(std::move(continuous)) {
    require(lambda >= 0.0 && lambda <= 1.0, "P0Decomposition: lambda must lie in [0,1]");
    require(lambda == 1.0 || discrete_.has_value(),
            "P0Decomposition: discrete part required when lambda < 1");
    require(lambda == 0.0 || continuous_.has_value(),
            "P0Decomposition: continuous part required when lambda > 0");
  }

  double lambda() const noexcept { return lambda_; }
  const std::optional<AtomicLaw>& discrete() const noexcept { return discrete_; }
  const std::optional<GaussianLaw>& continuous() const noexcept { return continuous_; }

  double sample(Rng& rng) const {
    if (lambda_ == 0.0) return discrete_->sample(rng);
    if (lambda_ == 1.0) return continuous_->sample(rng);
    return rng.uniform() < lambda_ ? continuous_->sample(rng) : discrete_->sample(rng);
  }

 private:
  double lambda_;
  std::optional<AtomicLaw> discrete_;
  std::optional<GaussianLaw> continuous_;
};

/// Any law that can generate data in the experiments.
using Law = std::variant<AtomicLaw, GaussianLaw, P0Decomposition>;

// ---------------------------------------------------------------------------
// integrals

inline double integral(const GaussianLaw& g, const Functional& f) {
  switch (f.kind()) {
    case Functional::Kind::IndicatorAbove: return g.prob_greater(f.a());
    case Functional::Kind::TwoSided: return g.prob_greater(f.a()) - g.cdf(f.a());
    case Functional::Kind::IndicatorInterval: return g.cdf(f.b()) - g.cdf(f.a());
    case Functional::Kind::Identity: return g.mean();
  }
  return 0.0;
}

inline double integral_sq(const GaussianLaw& g, const Functional& f) {
  switch (f.kind()) {
    case Functional::Kind::TwoSided: return 1.0;
    case Functional::Kind::Identity: return g.mean() * g.mean() + g.variance();
    default: return integral(g, f);
  }
}

inline double integral(const AtomicLaw& law, const Functional& f) {
  if (law.kind() == AtomicLaw::Kind::FiniteTable) {
    double s = 0.0;
    for (std::size_t i = 0; i < law.values().size(); ++i) s += law.weights()[i] * f(law.values()[i]);
    return s;
  }
  switch (f.kind()) {
    case Functional::Kind::IndicatorAbove: return law.prob_at_least(f.a());
    case Functional::Kind::TwoSided: return 2.0 * law.prob_greater(f.a()) - 1.0;
    case Functional::Kind::IndicatorInterval: return law.prob_greater(f.a()) - law.prob_greater(f.b());
    case Functional::Kind::Identity: return law.moment(1);
  }
  return 0.0;
}

inline double integral_sq(const AtomicLaw& law, const Functional& f) {
  if (law.kind() == AtomicLaw::Kind::FiniteTable) {
    double s = 0.0;
    for (std::size_t i = 0; i < law.values().size(); ++i) {
      const double v = f(law.values()[i]);
      s += law.weights()[i] * v * v;
    }
    return s;
  }
  switch (f.kind()) {
    case Functional::Kind::TwoSided: return 1.0;
    case Functional::Kind::Identity: return law.moment(2);
    default: return integral(law, f);
  }
}

inline double integral(const P0Decomposition& p0, const Functional& f) {
  double s = 0.0;
  if (p0.lambda() < 1.0) s += (1.0 - p0.lambda()) * integral(*p0.discrete(), f);
  if (p0.lambda() > 0.0) s += p0.lambda() * integral(*p0.continuous(), f);
  return s;
}

inline double integral_sq(const P0Decomposition& p0, const Functional& f) {
  double s = 0.0;
  if (p0.lambda() < 1.0) s += (1.0 - p0.lambda()) * integral_sq(*p0.discrete(), f);
  if (p0.lambda() > 0.0) s += p0.lambda() * integral_sq(*p0.continuous(), f);
  return s;
}

inline double integral(const Law& law, const Functional& f) {
  return std::visit([&](const auto& l) { return integral(l, f); }, law);
}

inline double integral_sq(const Law& law, const Functional& f) {
  return std::visit([&](const auto& l) { return integral_sq(l, f); }, law);
}

/// Var_law(f) = ∫f² - (∫f)².
template <class L>
double variance_of(const L& law, const Functional& f) {
  const double m = integral(law, f);
  return std::max(0.0, integral_sq(law, f) - m * m);
}

inline double sample(const Law& law, Rng& rng) {
  return std::visit([&](const auto& l) { return l.sample(rng); }, law);
}

inline double cdf(const Law& law, double x) {
  return std::visit(
      [&](const auto& l) -> double {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, P0Decomposition>) {
          double s = 0.0;
          if (l.lambda() < 1.0) s += (1.0 - l.lambda()) * l.discrete()->cdf(x);
          if (l.lambda() > 0.0) s += l.lambda() * l.continuous()->cdf(x);
          return s;
        } else {
          return l.cdf(x);
        }
      },
      law);
}

/// One level of a piecewise-constant functional: f = value on a set of G-mass `mass`.
struct Level {
  double value;
  double mass;
};

/// Level sets of a bounded functional under an atomless law. Identity has
/// no finite level decomposition and yields nullopt.
inline std::optional<std::vector<Level>> level_sets(const GaussianLaw& g, const Functional& f) {
  switch (f.kind()) {
    case Functional::Kind::IndicatorAbove: {
      const double up = g.prob_greater(f.a());
      return std::vector<Level>{{1.0, up}, {0.0, g.cdf(f.a())}};
    }
    case Functional::Kind::TwoSided: {
      const double up = g.prob_greater(f.a());
      return std::vector<Level>{{1.0, up}, {-1.0, g.cdf(f.a())}};
    }
    case Functional::Kind::IndicatorInterval: {
      const double lo = g.cdf(f.a());
      const double in = g.cdf(f.b()) - lo;
      return std::vector<Level>{{1.0, in}, {0.0, lo + g.prob_greater(f.b())}};
    }
    case Functional::Kind::Identity: return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace pitman

#endif  // PITMAN_DISTRIBUTIONS_HPP
