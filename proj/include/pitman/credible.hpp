#ifndef PITMAN_CREDIBLE_HPP
#define PITMAN_CREDIBLE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pitman/distributions.hpp"
#include "pitman/error.hpp"
#include "pitman/functional.hpp"
#include "pitman/posterior.hpp"
#include "pitman/sample_stats.hpp"

namespace pitman {

/// Bₙ(f) = (σKₙ/n)(Gf - P̃ₙf), the centering shift of the posterior of Pf.
inline double bias(double sigma, const PartitionSummary& s, const GaussianLaw& g,
                   const Functional& f) {
  if (sigma == 0.0) return 0.0;
  return sigma * static_cast<double>(s.k()) / static_cast<double>(s.n) *
         (integral(g, f) - ptilde(s, f));
}

/// Interpolated order statistic at probability p of an increasingly sorted
/// sample: index (N-1)p with linear interpolation between neighbours.
inline double sorted_quantile(std::span<const double> sorted, double p) {
  require(!sorted.empty(), "quantile of an empty sample");
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

inline double quantile(std::vector<double> values, double p) {
  std::sort(values.begin(), values.end());
  return sorted_quantile(values, p);
}

struct CredibleInterval {
  double lo = 0.0;
  double hi = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  bool corrected = false;
  double bias = 0.0;

  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
  double width() const noexcept { return hi - lo; }
};

inline constexpr std::size_t kMinIntervalDraws = 100;

/// [Q_α, Q_β] of the posterior draws, shifted by -bias when corrected.
inline CredibleInterval interval(std::span<const double> draws, double alpha, double beta,
                                 double bias_value, bool corrected) {
  if (draws.size() < kMinIntervalDraws) {
    throw InsufficientDrawsError("interval: at least 100 posterior draws required");
  }
  require(alpha > 0.0 && alpha < beta && beta < 1.0, "interval: need 0 < alpha < beta < 1");
  std::vector<double> sorted(draws.begin(), draws.end());
  std::sort(sorted.begin(), sorted.end());
  CredibleInterval ci;
  ci.alpha = alpha;
  ci.beta = beta;
  ci.corrected = corrected;
  ci.bias = bias_value;
  const double shift = corrected ? bias_value : 0.0;
  ci.lo = sorted_quantile(sorted, alpha) - shift;
  ci.hi = sorted_quantile(sorted, beta) - shift;
  return ci;
}

/// Both intervals from one set of draws (sorts once).
inline std::pair<CredibleInterval, CredibleInterval> intervals(std::vector<double> draws, double alpha,
                                                               double beta, double bias_value) {
  if (draws.size() < kMinIntervalDraws) {
    throw InsufficientDrawsError("interval: at least 100 posterior draws required");
  }
  require(alpha > 0.0 && alpha < beta && beta < 1.0, "interval: need 0 < alpha < beta < 1");
  std::sort(draws.begin(), draws.end());
  CredibleInterval raw{sorted_quantile(draws, alpha), sorted_quantile(draws, beta), alpha, beta, false,
                       bias_value};
  CredibleInterval shifted = raw;
  shifted.corrected = true;
  shifted.lo -= bias_value;
  shifted.hi -= bias_value;
  return {raw, shifted};
}

/// Row-major draws × grid matrix of posterior CDF values.
struct DrawMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DrawMatrix() = default;
  DrawMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
  std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

struct CredibleBand {
  std::vector<double> grid;
  std::vector<double> center;
  std::vector<double> scale;
  double xi = 0.0;
  double alpha = 0.0;
  std::size_t floored_points = 0;

  double lower(std::size_t i) const { return center[i] - xi * scale[i]; }
  double upper(std::size_t i) const { return center[i] + xi * scale[i]; }
};

inline constexpr double kScaleFloor = 1e-4;

struct BandOptions {
  std::optional<std::vector<double>> center;
  std::optional<std::vector<double>> scale;
  double scale_floor = kScaleFloor;
  bool floor_scale = true;
};

/**
 * Simultaneous band m(t) ± ξ·s(t) with ξ the (1-α)-quantile over draws of
 * sup_t |F(t) - m(t)| / s(t). By default m and s are the pointwise mean and
 * standard deviation of the draws; scales below the floor are raised to it.
 */
inline CredibleBand band(const DrawMatrix& cdf_draws, std::vector<double> grid, double alpha,
                         const BandOptions& opt = {}) {
  require(cdf_draws.cols == grid.size() && !grid.empty(), "band: grid must match draw columns");
  require(cdf_draws.rows >= 1, "band: at least one draw required");
  require(alpha > 0.0 && alpha < 1.0, "band: alpha must lie in (0,1)");
  const std::size_t m = cdf_draws.cols;
  CredibleBand out;
  out.grid = std::move(grid);
  out.alpha = alpha;
  if (opt.center && opt.scale) {
    require(opt.center->size() == m && opt.scale->size() == m, "band: override sizes must match grid");
    out.center = *opt.center;
    out.scale = *opt.scale;
  } else {
    // Welford: identical draws reproduce their value exactly as the mean
    std::vector<double> mean(m, 0.0), m2(m, 0.0);
    for (std::size_t i = 0; i < cdf_draws.rows; ++i) {
      const auto row = cdf_draws.row(i);
      const double count = static_cast<double>(i + 1);
      for (std::size_t j = 0; j < m; ++j) {
        const double delta = row[j] - mean[j];
        mean[j] += delta / count;
        m2[j] += delta * (row[j] - mean[j]);
      }
    }
    const double denom = cdf_draws.rows > 1 ? static_cast<double>(cdf_draws.rows - 1) : 1.0;
    out.center = opt.center ? *opt.center : mean;
    if (opt.scale) {
      out.scale = *opt.scale;
    } else {
      out.scale.resize(m);
      for (std::size_t j = 0; j < m; ++j) out.scale[j] = std::sqrt(m2[j] / denom);
    }
  }
  for (auto& s : out.scale) {
    if (s < opt.scale_floor) {
      if (!opt.floor_scale) throw DomainError("band: posterior scale below floor at a grid point");
      s = opt.scale_floor;
      ++out.floored_points;
    }
  }
  std::vector<double> sup(cdf_draws.rows, 0.0);
  for (std::size_t i = 0; i < cdf_draws.rows; ++i) {
    const auto row = cdf_draws.row(i);
    double worst = 0.0;
    for (std::size_t j = 0; j < m; ++j) worst = std::max(worst, std::abs(row[j] - out.center[j]) / out.scale[j]);
    sup[i] = worst;
  }
  std::sort(sup.begin(), sup.end());
  out.xi = sorted_quantile(sup, 1.0 - alpha);
  return out;
}

inline bool band_covers(const CredibleBand& b, std::span<const double> truth) {
  require(truth.size() == b.grid.size(), "band_covers: truth must be evaluated on the band grid");
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] < b.lower(i) || truth[i] > b.upper(i)) return false;
  }
  return true;
}

/// Distinct observed values plus the 1%..99% quantiles of G, sorted and deduplicated.
inline std::vector<double> default_cdf_grid(const PartitionSummary& s, const GaussianLaw& g) {
  std::vector<double> grid(s.distinct.begin(), s.distinct.end());
  for (int q = 1; q <= 99; ++q) grid.push_back(g.quantile(q / 100.0));
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

/// F(t) = P(-∞, t] of a posterior draw at each point of an increasing grid.
inline void posterior_cdf_on_grid(const PosteriorDraw& d, const PartitionSummary& s,
                                  std::span<const double> grid, std::span<double> out) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(s.k() + d.fresh.size());
  for (std::size_t j = 0; j < s.k(); ++j) pts.emplace_back(s.distinct[j], d.r * d.w[j]);
  const double rest = 1.0 - d.r;
  if (rest > 0.0) {
    for (std::size_t i = 0; i < d.fresh.size(); ++i) pts.emplace_back(d.fresh.atoms[i], rest * d.fresh.weights[i]);
  }
  std::sort(pts.begin(), pts.end());
  double acc = 0.0;
  std::size_t p = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    while (p < pts.size() && pts[p].first <= grid[i]) acc += pts[p++].second;
    out[i] = acc;
  }
}

}  // namespace pitman

#endif  // PITMAN_CREDIBLE_HPP
