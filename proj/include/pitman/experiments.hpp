#ifndef PITMAN_EXPERIMENTS_HPP
#define PITMAN_EXPERIMENTS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pitman/credible.hpp"
#include "pitman/distributions.hpp"
#include "pitman/error.hpp"
#include "pitman/functional.hpp"
#include "pitman/parallel.hpp"
#include "pitman/posterior.hpp"
#include "pitman/py_core.hpp"
#include "pitman/rng.hpp"
#include "pitman/sample_stats.hpp"
#include "pitman/sigma_inference.hpp"

namespace pitman {

inline constexpr const char* kVersion = "0.1.0";

enum class SigmaMode { Fixed, EmpiricalBayes, FullBayes };

inline const char* to_string(SigmaMode m) {
  switch (m) {
    case SigmaMode::Fixed: return "fixed";
    case SigmaMode::EmpiricalBayes: return "empirical_bayes";
    case SigmaMode::FullBayes: return "full_bayes";
  }
  return "?";
}

inline SigmaMode parse_sigma_mode(std::string_view s) {
  if (s == "fixed") return SigmaMode::Fixed;
  if (s == "empirical_bayes") return SigmaMode::EmpiricalBayes;
  if (s == "full_bayes") return SigmaMode::FullBayes;
  throw ConfigError("unknown sigma_mode '" + std::string(s) + "'");
}

/// Grid for the CDF band: observed values plus G quantiles, or observed values only.
enum class BandGrid { Default, Observed };

inline const char* to_string(BandGrid g) { return g == BandGrid::Default ? "default" : "observed"; }

inline BandGrid parse_band_grid(std::string_view s) {
  if (s == "default") return BandGrid::Default;
  if (s == "observed") return BandGrid::Observed;
  throw ConfigError("unknown band_grid '" + std::string(s) + "'");
}

struct NamedLaw {
  std::string name;
  Law law;
};

/// The three discrete laws of the coverage study.
inline NamedLaw standard_law(std::string_view name) {
  if (name == "P1") {
    return {"P1", AtomicLaw::finite({{1, 0.1}, {2, 0.1}, {3, 0.2}, {4, 0.2}, {5, 0.3}, {6, 0.1}})};
  }
  if (name == "P2") return {"P2", AtomicLaw::power_law(2.0)};
  if (name == "P3") return {"P3", AtomicLaw::power_law(1.5)};
  throw ConfigError("unknown standard law '" + std::string(name) + "'");
}

/// Stable 64-bit id of a law name (FNV-1a), used as a seed coordinate.
constexpr std::uint64_t law_id(std::string_view name) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct ExperimentConfig {
  std::vector<NamedLaw> laws;
  double sigma = 0.5;
  double mass = 1.0;
  GaussianLaw base{1.0, 1.0};
  Functional f = Functional::indicator_above(2.0);
  std::vector<std::size_t> sample_sizes{10, 100, 1000, 10000};
  std::size_t replications = 2000;
  std::size_t posterior_draws = 2000;
  double alpha = 0.025;
  double beta = 0.975;
  std::uint64_t master_seed = 20240917;
  SigmaMode sigma_mode = SigmaMode::Fixed;
  std::string output_path;
  std::size_t sigma_grid = 512;
  // truncation level is epsilon_scale / sqrt(n)
  double epsilon_scale = 0.1;
  double band_alpha = 0.025;
  BandGrid band_grid = BandGrid::Default;
  double window_lo = 0.4;
  double window_hi = 0.6;
  unsigned threads = 0;

  void validate() const {
    require(!laws.empty(), "config: at least one law required");
    require(sigma >= 0.0 && sigma < 1.0, "config: sigma must lie in [0,1)");
    require(mass >= 0.0 && std::isfinite(mass), "config: M must be nonnegative");
    require(!sample_sizes.empty(), "config: sample_sizes must be nonempty");
    for (auto n : sample_sizes) require(n >= 1, "config: sample sizes must be at least 1");
    require(replications >= 1, "config: replications must be at least 1");
    require(posterior_draws >= kMinIntervalDraws, "config: posterior_draws must be at least 100");
    require(alpha > 0.0 && alpha < beta && beta < 1.0, "config: level needs 0 < alpha < beta < 1");
    require(sigma_grid >= 64, "config: sigma grid must have at least 64 points");
    require(epsilon_scale > 0.0 && epsilon_scale < 1.0, "config: epsilon_scale must lie in (0,1)");
    require(band_alpha > 0.0 && band_alpha < 1.0, "config: band alpha must lie in (0,1)");
    require(window_lo < window_hi, "config: sigma window must be nonempty");
  }

  double epsilon(std::size_t n) const { return epsilon_scale / std::sqrt(static_cast<double>(n)); }
};

inline std::uint64_t replication_seed(const ExperimentConfig& cfg, const NamedLaw& law, std::size_t n,
                                      std::size_t r) {
  return mix_seed(cfg.master_seed, {law_id(law.name), static_cast<std::uint64_t>(n),
                                    static_cast<std::uint64_t>(r)});
}

inline std::vector<double> draw_sample(const Law& law, std::size_t n, Rng& rng) {
  std::vector<double> x(n);
  for (auto& v : x) v = sample(law, rng);
  return x;
}

// Keeps an empirical-Bayes boundary estimate usable as a prior type.
inline constexpr double kMaxPluginSigma = 1.0 - 1e-6;

namespace detail {

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t count = 0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++count;
  }
  double mean() const { return count ? sum / static_cast<double>(count) : 0.0; }
  double sd() const {
    if (count < 2) return 0.0;
    const double m = mean();
    return std::sqrt(std::max(0.0, (sum_sq - static_cast<double>(count) * m * m) /
                                       static_cast<double>(count - 1)));
  }
};

inline double binomial_se(double p, std::size_t reps) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(reps));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// coverage of credible intervals

struct CoverageRecord {
  bool covered_uncorrected = false;
  bool covered_corrected = false;
  double bias = 0.0;
  double sigma_used = 0.0;
  double width = 0.0;
  std::size_t k = 0;
};

struct CoverageRow {
  std::string law;
  std::size_t n = 0;
  std::size_t replications = 0;
  double coverage_uncorrected = 0.0;
  double coverage_corrected = 0.0;
  double mc_standard_error = 0.0;  // of the uncorrected proportion
  double mc_standard_error_corrected = 0.0;
  double mean_bias = 0.0;
  double mean_Kn = 0.0;
  double mean_sigma = 0.0;
  double mean_width = 0.0;
};

/// One replication: sample, summarize, choose σ, draw Pf, form both intervals.
inline CoverageRecord coverage_replication(const ExperimentConfig& cfg, const NamedLaw& law, std::size_t n,
                                           std::size_t r) {
  Rng rng(replication_seed(cfg, law, n, r));
  const auto data = draw_sample(law.law, n, rng);
  const auto s = summarize(data);
  const double truth = integral(law.law, cfg.f);
  const FunctionalPosterior post(cfg.mass, cfg.base, s, cfg.f);
  const double eps = cfg.epsilon(n);

  CoverageRecord rec;
  rec.k = s.k();
  std::vector<double> draws(cfg.posterior_draws);
  switch (cfg.sigma_mode) {
    case SigmaMode::Fixed:
      rec.sigma_used = cfg.sigma;
      for (auto& d : draws) d = post.draw(rec.sigma_used, eps, rng);
      break;
    case SigmaMode::EmpiricalBayes:
      rec.sigma_used = std::min(mle_sigma(s, cfg.mass).sigma_hat, kMaxPluginSigma);
      for (auto& d : draws) d = post.draw(rec.sigma_used, eps, rng);
      break;
    case SigmaMode::FullBayes: {
      const auto sp = sigma_posterior(s, cfg.mass, uniform_sigma_prior, cfg.sigma_grid);
      rec.sigma_used = sp.mean();
      for (auto& d : draws) d = post.draw(sp.sample(rng), eps, rng);
      break;
    }
  }
  rec.bias = bias(rec.sigma_used, s, cfg.base, cfg.f);
  const auto [raw, shifted] = intervals(std::move(draws), cfg.alpha, cfg.beta, rec.bias);
  rec.covered_uncorrected = raw.contains(truth);
  rec.covered_corrected = shifted.contains(truth);
  rec.width = raw.width();
  return rec;
}

inline CoverageRow summarize_coverage(const std::string& law, std::size_t n,
                                      const std::vector<CoverageRecord>& recs) {
  CoverageRow row;
  row.law = law;
  row.n = n;
  row.replications = recs.size();
  double hits_u = 0.0, hits_c = 0.0, bias_sum = 0.0, k_sum = 0.0, sig_sum = 0.0, width_sum = 0.0;
  for (const auto& r : recs) {
    hits_u += r.covered_uncorrected ? 1.0 : 0.0;
    hits_c += r.covered_corrected ? 1.0 : 0.0;
    bias_sum += r.bias;
    k_sum += static_cast<double>(r.k);
    sig_sum += r.sigma_used;
    width_sum += r.width;
  }
  const double m = static_cast<double>(recs.size());
  row.coverage_uncorrected = hits_u / m;
  row.coverage_corrected = hits_c / m;
  row.mc_standard_error = detail::binomial_se(row.coverage_uncorrected, recs.size());
  row.mc_standard_error_corrected = detail::binomial_se(row.coverage_corrected, recs.size());
  row.mean_bias = bias_sum / m;
  row.mean_Kn = k_sum / m;
  row.mean_sigma = sig_sum / m;
  row.mean_width = width_sum / m;
  return row;
}

inline std::vector<CoverageRow> run_coverage(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<CoverageRow> rows;
  for (const auto& law : cfg.laws) {
    for (auto n : cfg.sample_sizes) {
      std::vector<CoverageRecord> recs(cfg.replications);
      parallel_for(cfg.replications, cfg.threads,
                   [&](std::size_t r) { recs[r] = coverage_replication(cfg, law, n, r); });
      rows.push_back(summarize_coverage(law.name, n, recs));
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// raw posterior draws for density plots

struct DensityResult {
  std::vector<std::string> columns;  // one per (law, n)
  std::vector<double> truth;
  std::vector<double> exact_mean;
  std::vector<double> sigma_used;
  std::size_t rows = 0;
  std::vector<double> draws;  // row-major rows × columns

  double operator()(std::size_t i, std::size_t j) const { return draws[i * columns.size() + j]; }
};

/// One dataset per (law, n) (replication index 0), posterior_draws draws of Pf each.
inline DensityResult run_density(const ExperimentConfig& cfg) {
  cfg.validate();
  struct Job {
    const NamedLaw* law;
    std::size_t n;
  };
  std::vector<Job> jobs;
  for (const auto& law : cfg.laws) {
    for (auto n : cfg.sample_sizes) jobs.push_back({&law, n});
  }
  DensityResult out;
  out.rows = cfg.posterior_draws;
  const std::size_t cols = jobs.size();
  out.columns.resize(cols);
  out.truth.resize(cols);
  out.exact_mean.resize(cols);
  out.sigma_used.resize(cols);
  out.draws.assign(out.rows * cols, 0.0);
  parallel_for(cols, cfg.threads, [&](std::size_t j) {
    const auto& [law, n] = jobs[j];
    Rng rng(replication_seed(cfg, *law, n, 0));
    const auto s = summarize(draw_sample(law->law, n, rng));
    double sigma = cfg.sigma;
    if (cfg.sigma_mode != SigmaMode::Fixed) sigma = std::min(mle_sigma(s, cfg.mass).sigma_hat, kMaxPluginSigma);
    const FunctionalPosterior post(cfg.mass, cfg.base, s, cfg.f);
    for (std::size_t i = 0; i < out.rows; ++i) out.draws[i * cols + j] = post.draw(sigma, cfg.epsilon(n), rng);
    out.columns[j] = law->name + "_n" + std::to_string(n);
    out.truth[j] = integral(law->law, cfg.f);
    out.exact_mean[j] = posterior_mean_exact(PYParams(sigma, cfg.mass, cfg.base), s, cfg.f);
    out.sigma_used[j] = sigma;
  });
  return out;
}

// ---------------------------------------------------------------------------
// coverage of simultaneous CDF bands

struct BandRecord {
  bool covered = false;
  double xi = 0.0;
  std::size_t floored = 0;
  std::size_t grid_size = 0;
};

struct BandCoverageRow {
  std::string law;
  std::size_t n = 0;
  std::size_t replications = 0;
  double coverage = 0.0;
  double mc_standard_error = 0.0;
  double mean_xi = 0.0;
  double mean_floored = 0.0;
  double mean_grid = 0.0;
};

inline BandRecord band_replication(const ExperimentConfig& cfg, const NamedLaw& law, std::size_t n,
                                   std::size_t r) {
  Rng rng(replication_seed(cfg, law, n, r));
  const auto s = summarize(draw_sample(law.law, n, rng));
  const PYParams p(cfg.sigma, cfg.mass, cfg.base);
  std::vector<double> grid;
  if (cfg.band_grid == BandGrid::Default) {
    grid = default_cdf_grid(s, cfg.base);
  } else {
    grid.assign(s.distinct.begin(), s.distinct.end());
    std::sort(grid.begin(), grid.end());
  }
  DrawMatrix m(cfg.posterior_draws, grid.size());
  for (std::size_t i = 0; i < m.rows; ++i) {
    posterior_cdf_on_grid(posterior_draw(p, s, cfg.epsilon(n), rng), s, grid, m.row(i));
  }
  std::vector<double> truth(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) truth[i] = cdf(law.law, grid[i]);
  const auto b = band(m, std::move(grid), cfg.band_alpha);
  return {band_covers(b, truth), b.xi, b.floored_points, b.grid.size()};
}

inline std::vector<BandCoverageRow> run_band_coverage(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<BandCoverageRow> rows;
  for (const auto& law : cfg.laws) {
    for (auto n : cfg.sample_sizes) {
      std::vector<BandRecord> recs(cfg.replications);
      parallel_for(cfg.replications, cfg.threads,
                   [&](std::size_t r) { recs[r] = band_replication(cfg, law, n, r); });
      BandCoverageRow row;
      row.law = law.name;
      row.n = n;
      row.replications = recs.size();
      double hits = 0.0, xi = 0.0, floored = 0.0, gsize = 0.0;
      for (const auto& rec : recs) {
        hits += rec.covered ? 1.0 : 0.0;
        xi += rec.xi;
        floored += static_cast<double>(rec.floored);
        gsize += static_cast<double>(rec.grid_size);
      }
      const double m = static_cast<double>(recs.size());
      row.coverage = hits / m;
      row.mc_standard_error = detail::binomial_se(row.coverage, recs.size());
      row.mean_xi = xi / m;
      row.mean_floored = floored / m;
      row.mean_grid = gsize / m;
      rows.push_back(row);
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// occupancy counts

struct OccupancyRecord {
  std::size_t k = 0;
  double ptilde = 0.0;
  double root_n_bias = 0.0;
};

struct OccupancyRow {
  std::string law;
  std::size_t n = 0;
  std::size_t replications = 0;
  double alpha0 = 0.0;  // NaN when the law has no atoms
  double mean_Kn = 0.0;
  double sd_Kn = 0.0;
  std::size_t min_Kn = 0;
  std::size_t max_Kn = 0;
  double mean_Kn_sqrt_n = 0.0;
  double sd_Kn_sqrt_n = 0.0;
  double mean_Kn_alpha0 = 0.0;
  double sd_Kn_alpha0 = 0.0;
  double mean_ptilde = 0.0;
  double sd_ptilde = 0.0;
  double mean_root_n_bias = 0.0;
  double sd_root_n_bias = 0.0;
};

inline double law_alpha0(const Law& law, double u) {
  if (const auto* a = std::get_if<AtomicLaw>(&law)) return static_cast<double>(a->alpha0(u));
  return std::numeric_limits<double>::quiet_NaN();
}

inline OccupancyRecord occupancy_replication(const ExperimentConfig& cfg, const NamedLaw& law, std::size_t n,
                                             std::size_t r) {
  Rng rng(replication_seed(cfg, law, n, r));
  const auto s = summarize(draw_sample(law.law, n, rng));
  return {s.k(), ptilde(s, cfg.f), std::sqrt(static_cast<double>(n)) * bias(cfg.sigma, s, cfg.base, cfg.f)};
}

/// Kₙ, Kₙ/√n, Kₙ/α₀(n), P̃ₙf and √n·Bₙ(f) across replications.
inline std::pair<std::vector<OccupancyRow>, std::vector<std::vector<OccupancyRecord>>> run_occupancy_detailed(
    const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<OccupancyRow> rows;
  std::vector<std::vector<OccupancyRecord>> all;
  for (const auto& law : cfg.laws) {
    for (auto n : cfg.sample_sizes) {
      std::vector<OccupancyRecord> recs(cfg.replications);
      parallel_for(cfg.replications, cfg.threads,
                   [&](std::size_t r) { recs[r] = occupancy_replication(cfg, law, n, r); });
      OccupancyRow row;
      row.law = law.name;
      row.n = n;
      row.replications = recs.size();
      row.alpha0 = law_alpha0(law.law, static_cast<double>(n));
      const double root_n = std::sqrt(static_cast<double>(n));
      detail::Moments k, kn, ka, pt, rb;
      row.min_Kn = std::numeric_limits<std::size_t>::max();
      for (const auto& rec : recs) {
        const double kv = static_cast<double>(rec.k);
        k.add(kv);
        kn.add(kv / root_n);
        ka.add(kv / row.alpha0);
        pt.add(rec.ptilde);
        rb.add(rec.root_n_bias);
        row.min_Kn = std::min(row.min_Kn, rec.k);
        row.max_Kn = std::max(row.max_Kn, rec.k);
      }
      row.mean_Kn = k.mean();
      row.sd_Kn = k.sd();
      row.mean_Kn_sqrt_n = kn.mean();
      row.sd_Kn_sqrt_n = kn.sd();
      row.mean_Kn_alpha0 = ka.mean();
      row.sd_Kn_alpha0 = ka.sd();
      row.mean_ptilde = pt.mean();
      row.sd_ptilde = pt.sd();
      row.mean_root_n_bias = rb.mean();
      row.sd_root_n_bias = rb.sd();
      rows.push_back(row);
      all.push_back(std::move(recs));
    }
  }
  return {std::move(rows), std::move(all)};
}

inline std::vector<OccupancyRow> run_occupancy(const ExperimentConfig& cfg) {
  return run_occupancy_detailed(cfg).first;
}

// ---------------------------------------------------------------------------
// type-parameter estimation

struct SigmaRecord {
  double sigma_hat = 0.0;
  SigmaFit::Boundary boundary = SigmaFit::Boundary::Interior;
  double posterior_mean = 0.0;
  double posterior_q05 = 0.0;
  double posterior_q95 = 0.0;
  double window_mass = 0.0;
};

struct SigmaStudyRow {
  std::string law;
  std::size_t n = 0;
  std::size_t replications = 0;
  double mean_sigma_hat = 0.0;
  double sd_sigma_hat = 0.0;
  double share_upper_boundary = 0.0;
  double share_lower_boundary = 0.0;
  double mean_posterior_mean = 0.0;
  double mean_posterior_q05 = 0.0;
  double mean_posterior_q95 = 0.0;
  double mean_window_mass = 0.0;
  double share_window_mass_095 = 0.0;  // replications with window mass ≥ 0.95
};

inline SigmaRecord sigma_replication(const ExperimentConfig& cfg, const NamedLaw& law, std::size_t n,
                                     std::size_t r) {
  Rng rng(replication_seed(cfg, law, n, r));
  const auto s = summarize(draw_sample(law.law, n, rng));
  const auto fit = mle_sigma(s, cfg.mass);
  const auto sp = sigma_posterior(s, cfg.mass, uniform_sigma_prior, cfg.sigma_grid);
  return {fit.sigma_hat, fit.boundary, sp.mean(), sp.quantile(0.05), sp.quantile(0.95),
          sp.mass_between(cfg.window_lo, cfg.window_hi)};
}

inline std::pair<std::vector<SigmaStudyRow>, std::vector<std::vector<SigmaRecord>>> run_sigma_study_detailed(
    const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<SigmaStudyRow> rows;
  std::vector<std::vector<SigmaRecord>> all;
  for (const auto& law : cfg.laws) {
    for (auto n : cfg.sample_sizes) {
      std::vector<SigmaRecord> recs(cfg.replications);
      parallel_for(cfg.replications, cfg.threads,
                   [&](std::size_t r) { recs[r] = sigma_replication(cfg, law, n, r); });
      SigmaStudyRow row;
      row.law = law.name;
      row.n = n;
      row.replications = recs.size();
      detail::Moments hat, pm, q05, q95, wm;
      double upper = 0.0, lower = 0.0, wide = 0.0;
      for (const auto& rec : recs) {
        hat.add(rec.sigma_hat);
        pm.add(rec.posterior_mean);
        q05.add(rec.posterior_q05);
        q95.add(rec.posterior_q95);
        wm.add(rec.window_mass);
        upper += rec.boundary == SigmaFit::Boundary::Upper ? 1.0 : 0.0;
        lower += rec.boundary == SigmaFit::Boundary::Lower ? 1.0 : 0.0;
        wide += rec.window_mass >= 0.95 ? 1.0 : 0.0;
      }
      const double m = static_cast<double>(recs.size());
      row.mean_sigma_hat = hat.mean();
      row.sd_sigma_hat = hat.sd();
      row.share_upper_boundary = upper / m;
      row.share_lower_boundary = lower / m;
      row.mean_posterior_mean = pm.mean();
      row.mean_posterior_q05 = q05.mean();
      row.mean_posterior_q95 = q95.mean();
      row.mean_window_mass = wm.mean();
      row.share_window_mass_095 = wide / m;
      rows.push_back(row);
      all.push_back(std::move(recs));
    }
  }
  return {std::move(rows), std::move(all)};
}

inline std::vector<SigmaStudyRow> run_sigma_study(const ExperimentConfig& cfg) {
  return run_sigma_study_detailed(cfg).first;
}

// ---------------------------------------------------------------------------
// CSV output

namespace detail {

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  template <class... T>
  void row(const T&... cells) {
    bool first = true;
    ((out_ << (first ? "" : ","), write(cells), first = false), ...);
    out_ << '\n';
  }

 private:
  void write(const std::string& s) { out_ << s; }
  void write(const char* s) { out_ << s; }
  void write(double v) {
    std::ostringstream ss;
    ss << std::setprecision(12) << v;
    out_ << ss.str();
  }
  void write(std::size_t v) { out_ << v; }
  void write(bool v) { out_ << (v ? 1 : 0); }

  std::ostream& out_;
};

}  // namespace detail

inline void write_csv(std::ostream& out, const std::vector<CoverageRow>& rows) {
  detail::CsvWriter w(out);
  w.row("law", "n", "replications", "coverage_uncorrected", "coverage_corrected", "mc_standard_error",
        "mc_standard_error_corrected", "mean_bias", "mean_Kn", "mean_sigma", "mean_width");
  for (const auto& r : rows) {
    w.row(r.law, r.n, r.replications, r.coverage_uncorrected, r.coverage_corrected, r.mc_standard_error,
          r.mc_standard_error_corrected, r.mean_bias, r.mean_Kn, r.mean_sigma, r.mean_width);
  }
}

inline void write_csv(std::ostream& out, const DensityResult& d) {
  detail::CsvWriter w(out);
  std::string header = "draw";
  for (const auto& c : d.columns) header += "," + c;
  out << header << '\n';
  for (std::size_t i = 0; i < d.rows; ++i) {
    std::ostringstream line;
    line << std::setprecision(12) << i;
    for (std::size_t j = 0; j < d.columns.size(); ++j) line << ',' << d(i, j);
    out << line.str() << '\n';
  }
}

inline void write_csv(std::ostream& out, const std::vector<BandCoverageRow>& rows) {
  detail::CsvWriter w(out);
  w.row("law", "n", "replications", "coverage", "mc_standard_error", "mean_xi", "mean_floored_points",
        "mean_grid_size");
  for (const auto& r : rows) {
    w.row(r.law, r.n, r.replications, r.coverage, r.mc_standard_error, r.mean_xi, r.mean_floored, r.mean_grid);
  }
}

inline void write_csv(std::ostream& out, const std::vector<OccupancyRow>& rows) {
  detail::CsvWriter w(out);
  w.row("law", "n", "replications", "alpha0", "mean_Kn", "sd_Kn", "min_Kn", "max_Kn", "mean_Kn_sqrt_n",
        "sd_Kn_sqrt_n", "mean_Kn_alpha0", "sd_Kn_alpha0", "mean_ptilde", "sd_ptilde", "mean_root_n_bias",
        "sd_root_n_bias");
  for (const auto& r : rows) {
    w.row(r.law, r.n, r.replications, r.alpha0, r.mean_Kn, r.sd_Kn, r.min_Kn, r.max_Kn, r.mean_Kn_sqrt_n,
          r.sd_Kn_sqrt_n, r.mean_Kn_alpha0, r.sd_Kn_alpha0, r.mean_ptilde, r.sd_ptilde, r.mean_root_n_bias,
          r.sd_root_n_bias);
  }
}

inline void write_csv(std::ostream& out, const std::vector<SigmaStudyRow>& rows) {
  detail::CsvWriter w(out);
  w.row("law", "n", "replications", "mean_sigma_hat", "sd_sigma_hat", "share_upper_boundary",
        "share_lower_boundary", "mean_posterior_mean", "mean_posterior_q05", "mean_posterior_q95",
        "mean_window_mass", "share_window_mass_095");
  for (const auto& r : rows) {
    w.row(r.law, r.n, r.replications, r.mean_sigma_hat, r.sd_sigma_hat, r.share_upper_boundary,
          r.share_lower_boundary, r.mean_posterior_mean, r.mean_posterior_q05, r.mean_posterior_q95,
          r.mean_window_mass, r.share_window_mass_095);
  }
}

}  // namespace pitman

#endif  // PITMAN_EXPERIMENTS_HPP
