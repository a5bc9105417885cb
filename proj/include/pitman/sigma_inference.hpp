#ifndef PITMAN_SIGMA_INFERENCE_HPP
#define PITMAN_SIGMA_INFERENCE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include "pitman/error.hpp"
#include "pitman/rng.hpp"
#include "pitman/sample_stats.hpp"

namespace pitman {

/// log a^{[n]} = log(a(a+1)...(a+n-1)); a^{[0]} = 1.
inline double ascending_factorial_log(double a, std::size_t n) {
  if (n == 0) return 0.0;
  if (!(a > 0.0)) throw DomainError("ascending_factorial_log: a must be positive");
  if (n > 64) return std::lgamma(a + static_cast<double>(n)) - std::lgamma(a);
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) acc += std::log(a + static_cast<double>(k));
  return acc;
}

namespace detail {

inline void check_sigma(const PartitionSummary& s, double sigma) {
  if (!(sigma >= 0.0 && sigma <= 1.0)) throw DomainError("sigma must lie in [0,1]");
  if (sigma == 1.0 && s.z(2) > 0) {
    throw DomainError("log-EPPF diverges at sigma = 1 when some value is repeated");
  }
}

}  // namespace detail

/// Number of blocks of each multiplicity: pairs (m, #{j : Nⱼ = m}), increasing in m.
inline std::vector<std::pair<std::size_t, std::size_t>> multiplicity_histogram(const PartitionSummary& s) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  // Z_l - Z_{l+1} blocks have multiplicity exactly l
  for (std::size_t l = 1; l <= s.occupancy.size(); ++l) {
    const std::size_t next = l < s.occupancy.size() ? s.occupancy[l] : 0;
    if (s.occupancy[l - 1] > next) out.emplace_back(l, s.occupancy[l - 1] - next);
  }
  return out;
}

namespace detail {

inline double eppf_log_hist(const std::vector<std::pair<std::size_t, std::size_t>>& hist, std::size_t n,
                            std::size_t k, double sigma, double mass) {
  double acc = 0.0;
  for (std::size_t i = 1; i < k; ++i) acc += std::log(mass + static_cast<double>(i) * sigma);
  if (sigma < 1.0) {
    for (const auto& [m, count] : hist) {
      if (m > 1) acc += static_cast<double>(count) * ascending_factorial_log(1.0 - sigma, m - 1);
    }
  }
  return acc - ascending_factorial_log(mass + 1.0, n - 1);
}

}  // namespace detail

/**
 * Log of the Pitman-Yor exchangeable partition probability function
 *
 *   p(N₁..N_K) = Π_{i=1}^{K-1}(M+iσ) / (M+1)^{[n-1]} · Π_j (1-σ)^{[Nⱼ-1]}.
 *
 * Blocks of equal size share one ascending factorial, so the cost is
 * O(K + number of distinct multiplicities).
 * Returns -inf when the partition has probability zero (M = σ = 0, K ≥ 2).
 */
inline double eppf_log(const PartitionSummary& s, double sigma, double mass) {
  detail::check_sigma(s, sigma);
  if (!(mass >= 0.0)) throw DomainError("eppf_log: M must be nonnegative");
  return detail::eppf_log_hist(multiplicity_histogram(s), s.n, s.k(), sigma, mass);
}

/// Σ over all set partitions of {1..n} of exp(eppf_log); equals 1.
/// Enumerates restricted-growth strings, so n is limited to 10.
inline double eppf_total_mass(std::size_t n, double sigma, double mass) {
  require(n >= 1 && n <= 10, "eppf_total_mass: n must lie in 1..10");
  std::vector<std::size_t> rgs(n, 0);   // block label of each element
  std::vector<std::size_t> prefix_max(n, 0);
  std::vector<std::size_t> sizes;
  double total = 0.0;
  for (;;) {
    std::size_t blocks = prefix_max[n - 1] + 1;
    sizes.assign(blocks, 0);
    for (auto b : rgs) ++sizes[b];
    total += std::exp(eppf_log(summary_from_counts(sizes), sigma, mass));
    // next restricted-growth string
    std::size_t i = n - 1;
    while (i > 0 && rgs[i] == prefix_max[i - 1] + 1) --i;
    if (i == 0) break;
    ++rgs[i];
    prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      rgs[j] = 0;
      prefix_max[j] = prefix_max[j - 1];
    }
  }
  return total;
}

/**
 * Derivative of the log-EPPF in σ:
 *
 *   Λ'(σ) = Σ_{l=1}^{K-1} l/(M+lσ) - Σ_{l=1}^{n-1} Z_{l+1}/(l-σ).
 *
 * At σ = 0 with M = 0 and K ≥ 2 the first sum is +inf.
 */
inline double score(const PartitionSummary& s, double sigma, double mass) {
  if (!(sigma >= 0.0 && sigma < 1.0)) throw DomainError("score: sigma must lie in [0,1)");
  double up = 0.0;
  for (std::size_t l = 1; l < s.k(); ++l) {
    const double denom = mass + static_cast<double>(l) * sigma;
    if (denom == 0.0) return std::numeric_limits<double>::infinity();
    up += static_cast<double>(l) / denom;
  }
  double down = 0.0;
  for (std::size_t l = 1; l < s.occupancy.size(); ++l) {
    down += static_cast<double>(s.occupancy[l]) / (static_cast<double>(l) - sigma);
  }
  return up - down;
}

struct SigmaFit {
  enum class Boundary { Lower, Interior, Upper };

  double sigma_hat = 0.0;
  Boundary boundary = Boundary::Interior;
  double score_at_hat = 0.0;
  std::size_t iterations = 0;
};

inline const char* to_string(SigmaFit::Boundary b) {
  switch (b) {
    case SigmaFit::Boundary::Lower: return "lower";
    case SigmaFit::Boundary::Interior: return "interior";
    case SigmaFit::Boundary::Upper: return "upper";
  }
  return "?";
}

/**
 * Maximum-likelihood (empirical Bayes) estimate of σ for fixed M.
 *
 * The log-EPPF is strictly concave in σ, so its score is strictly
 * decreasing and the maximizer is found by bisection on the score.
 * All-distinct samples give σ̂ = 1; a nonpositive score at 0 gives σ̂ = 0.
 */
inline SigmaFit mle_sigma(const PartitionSummary& s, double mass) {
  SigmaFit fit;
  if (s.k() == s.n) {
    fit.sigma_hat = 1.0;
    fit.boundary = SigmaFit::Boundary::Upper;
    double up = 0.0;
    for (std::size_t l = 1; l < s.k(); ++l) up += static_cast<double>(l) / (mass + static_cast<double>(l));
    fit.score_at_hat = up;
    return fit;
  }
  const double at_zero = score(s, 0.0, mass);
  if (at_zero <= 0.0) {
    fit.sigma_hat = 0.0;
    fit.boundary = SigmaFit::Boundary::Lower;
    fit.score_at_hat = at_zero;
    return fit;
  }
  constexpr double delta = 1e-12;
  double lo = 0.0;
  double hi = 1.0 - delta;
  double s_lo = at_zero;
  double s_hi = score(s, hi, mass);
  if (s_hi >= 0.0) {
    fit.sigma_hat = hi;
    fit.boundary = SigmaFit::Boundary::Upper;
    fit.score_at_hat = s_hi;
    return fit;
  }
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double sm = score(s, mid, mass);
    ++fit.iterations;
    if (sm == 0.0) {
      lo = hi = mid;
      s_lo = s_hi = 0.0;
      break;
    }
    if (sm > 0.0) {
      lo = mid;
      s_lo = sm;
    } else {
      hi = mid;
      s_hi = sm;
    }
  }
  // secant step inside the final bracket
  double root = lo;
  if (hi > lo && std::isfinite(s_lo)) root = lo + s_lo * (hi - lo) / (s_lo - s_hi);
  root = std::clamp(root, lo, hi);
  fit.sigma_hat = root;
  fit.boundary = SigmaFit::Boundary::Interior;
  fit.score_at_hat = score(s, root, mass);
  return fit;
}

/**
 * Grid posterior of σ on the midpoints of a uniform partition of (0,1).
 * The density is treated as constant on each cell for quantiles and sampling.
 */
class SigmaPosterior {
 public:
  SigmaPosterior(std::vector<double> grid, std::vector<double> log_weights)
      : grid_(std::move(grid)), log_weights_(std::move(log_weights)) {
    require(grid_.size() == log_weights_.size() && !grid_.empty(),
            "SigmaPosterior: grid and weights must be aligned and nonempty");
    const double top = *std::max_element(log_weights_.begin(), log_weights_.end());
    require(std::isfinite(top), "SigmaPosterior: all grid weights vanish");
    probs_.resize(grid_.size());
    double total = 0.0;
    for (std::size_t k = 0; k < grid_.size(); ++k) {
      probs_[k] = std::exp(log_weights_[k] - top);
      total += probs_[k];
    }
    for (auto& p : probs_) p /= total;
    cumulative_.resize(probs_.size());
    std::partial_sum(probs_.begin(), probs_.end(), cumulative_.begin());
  }

  const std::vector<double>& grid() const noexcept { return grid_; }
  const std::vector<double>& log_weights() const noexcept { return log_weights_; }
  const std::vector<double>& probabilities() const noexcept { return probs_; }

  double mean() const {
    double m = 0.0;
    for (std::size_t k = 0; k < grid_.size(); ++k) m += probs_[k] * grid_[k];
    return m;
  }

  double mode() const {
    return grid_[std::max_element(probs_.begin(), probs_.end()) - probs_.begin()];
  }

  /// Posterior mass of [lo, hi], integrating the piecewise-constant density.
  double mass_between(double lo, double hi) const {
    return cdf(hi) - cdf(lo);
  }

  double cdf(double x) const {
    const double width = 1.0 / static_cast<double>(grid_.size());
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const auto cell = std::min(static_cast<std::size_t>(x / width), grid_.size() - 1);
    const double before = cell == 0 ? 0.0 : cumulative_[cell - 1];
    return before + probs_[cell] * (x - static_cast<double>(cell) * width) / width;
  }

  double quantile(double p) const {
    require(p >= 0.0 && p <= 1.0, "SigmaPosterior::quantile: p must lie in [0,1]");
    const double width = 1.0 / static_cast<double>(grid_.size());
    const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), p);
    const auto cell = std::min(static_cast<std::size_t>(it - cumulative_.begin()), grid_.size() - 1);
    const double before = cell == 0 ? 0.0 : cumulative_[cell - 1];
    const double frac = probs_[cell] > 0.0 ? std::clamp((p - before) / probs_[cell], 0.0, 1.0) : 0.5;
    return (static_cast<double>(cell) + frac) * width;
  }

  double sample(Rng& rng) const { return quantile(rng.uniform()); }

 private:
  std::vector<double> grid_;
  std::vector<double> log_weights_;
  std::vector<double> probs_;
  std::vector<double> cumulative_;
};

using SigmaPrior = std::function<double(double)>;

inline double uniform_sigma_prior(double) { return 1.0; }

inline SigmaPosterior sigma_posterior(const PartitionSummary& s, double mass,
                                      const SigmaPrior& prior = uniform_sigma_prior,
                                      std::size_t grid_size = 512) {
  require(grid_size >= 64, "sigma_posterior: grid_size must be at least 64");
  if (!(mass >= 0.0)) throw DomainError("sigma_posterior: M must be nonnegative");
  const auto hist = multiplicity_histogram(s);
  std::vector<double> grid(grid_size);
  std::vector<double> logw(grid_size);
  for (std::size_t k = 0; k < grid_size; ++k) {
    grid[k] = (static_cast<double>(k) + 0.5) / static_cast<double>(grid_size);
    const double density = prior(grid[k]);
    require(density > 0.0 && std::isfinite(density), "sigma_posterior: prior density must be positive");
    logw[k] = std::log(density) + detail::eppf_log_hist(hist, s.n, s.k(), grid[k], mass);
  }
  return SigmaPosterior(std::move(grid), std::move(logw));
}

}  // namespace pitman

#endif  // PITMAN_SIGMA_INFERENCE_HPP
