#ifndef PITMAN_POSTERIOR_HPP
#define PITMAN_POSTERIOR_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "pitman/distributions.hpp"
#include "pitman/error.hpp"
#include "pitman/functional.hpp"
#include "pitman/py_core.hpp"
#include "pitman/rng.hpp"
#include "pitman/sample_stats.hpp"

namespace pitman {

/**
 * One draw from the posterior PYₙ = Rₙ·Sₙ + (1-Rₙ)·Qₙ, where
 *   Rₙ ~ Beta(n - σKₙ, M + σKₙ),
 *   Sₙ = Σ W_{n,j} δ_{X̃ⱼ} with W ~ Dir(N_{n,1}-σ, ..., N_{n,K}-σ),
 *   Qₙ ~ PY(σ, M + σKₙ, G).
 */
struct PosteriorDraw {
  double r = 1.0;
  std::vector<double> w;
  WeightedAtoms fresh;
};

/// Default truncation level for a sample of size n: tail mass below 0.1/√n.
inline double default_epsilon(std::size_t n) { return 0.1 / std::sqrt(static_cast<double>(n)); }

namespace detail {

inline constexpr double kMaxFreshEps = 1.0 - 1e-9;

// The fresh component enters with weight 1-r, so truncating it at eps/(1-r)
// keeps the tail mass of the whole posterior measure below eps.
inline double fresh_epsilon(double eps, double one_minus_r) {
  if (one_minus_r <= 0.0) return kMaxFreshEps;
  return std::min(eps / one_minus_r, kMaxFreshEps);
}

inline void check_posterior_shapes(double sigma, const PartitionSummary& s) {
  const double a = static_cast<double>(s.n) - sigma * static_cast<double>(s.k());
  if (!(a > 0.0)) throw DomainError("posterior: degenerate Beta shape n - sigma*K <= 0");
}

// Normalized Gamma(shape_j) variates, computed from log-gammas.
inline void dirichlet(std::span<const double> shapes, Rng& rng, std::vector<double>& out) {
  out.resize(shapes.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < shapes.size(); ++j) {
    out[j] = rng.log_gamma_variate(shapes[j]);
    top = std::max(top, out[j]);
  }
  double total = 0.0;
  for (double& x : out) {
    x = std::exp(x - top);
    total += x;
  }
  for (double& x : out) x /= total;
}

}  // namespace detail

inline PosteriorDraw posterior_draw(const PYParams& p, const PartitionSummary& s, double eps,
                                    Rng& rng) {
  detail::check_posterior_shapes(p.sigma, s);
  const double k = static_cast<double>(s.k());
  const double n = static_cast<double>(s.n);
  PosteriorDraw d;
  const auto [r, one_minus_r] = rng.beta_with_complement(n - p.sigma * k, p.mass + p.sigma * k);
  d.r = r;
  std::vector<double> shapes(s.k());
  for (std::size_t j = 0; j < s.k(); ++j) shapes[j] = static_cast<double>(s.mult[j]) - p.sigma;
  detail::dirichlet(shapes, rng, d.w);
  const PYParams fresh(p.sigma, p.mass + p.sigma * k, p.base);
  d.fresh = sample_py(fresh, detail::fresh_epsilon(eps, one_minus_r), rng);
  return d;
}

inline double eval_draw(const PosteriorDraw& d, const PartitionSummary& s, const Functional& f) {
  double observed = 0.0;
  for (std::size_t j = 0; j < s.k(); ++j) observed += d.w[j] * f(s.distinct[j]);
  if (d.r >= 1.0) return observed;
  return d.r * observed + (1.0 - d.r) * integrate(d.fresh, f);
}

/// E[Pf | X₁..Xₙ] = Σⱼ (Nⱼ-σ)/(n+M) f(X̃ⱼ) + (M+σKₙ)/(n+M) Gf.
inline double posterior_mean_exact(const PYParams& p, const PartitionSummary& s,
                                   const Functional& f) {
  const double n = static_cast<double>(s.n);
  const double k = static_cast<double>(s.k());
  double acc = 0.0;
  for (std::size_t j = 0; j < s.k(); ++j) {
    acc += (static_cast<double>(s.mult[j]) - p.sigma) * f(s.distinct[j]);
  }
  return acc / (n + p.mass) + (p.mass + p.sigma * k) / (n + p.mass) * integral(p.base, f);
}

/**
 * Var(Pf | X₁..Xₙ) in closed form, by the law of total variance over Rₙ.
 *
 * With A = Σ(Nⱼ-σ)f(X̃ⱼ), B = Σ(Nⱼ-σ)f(X̃ⱼ)², a = n-σK, b = M+σK, N = n+M:
 *
 *   (A/a - Gf)² ab/(N²(N+1)) - A²/(aN(N+1)) + B/(N(N+1))
 *     + (1-σ) b/(N(N+1)) Var_G(f).
 *
 * The last term uses Var(Qₙf) = (1-σ)/(b+1)·Var_G(f) for Qₙ ~ PY(σ, b, G),
 * so E[(1-Rₙ)²]Var(Qₙf) = (1-σ)·b/(N(N+1))·Var_G(f).
 */
inline double posterior_variance_exact(const PYParams& p, const PartitionSummary& s,
                                       const Functional& f) {
  const double n = static_cast<double>(s.n);
  const double k = static_cast<double>(s.k());
  double sum_f = 0.0;
  double sum_f2 = 0.0;
  for (std::size_t j = 0; j < s.k(); ++j) {
    const double wj = static_cast<double>(s.mult[j]) - p.sigma;
    const double v = f(s.distinct[j]);
    sum_f += wj * v;
    sum_f2 += wj * v * v;
  }
  const double a = n - p.sigma * k;
  const double b = p.mass + p.sigma * k;
  const double big_n = n + p.mass;
  const double gf = integral(p.base, f);
  const double var_g = variance_of(p.base, f);
  const double centred = sum_f / a - gf;
  const double t1 = centred * centred * a * b / (big_n * big_n * (big_n + 1.0));
  const double t2 = -sum_f * sum_f / (a * big_n * (big_n + 1.0));
  const double t3 = sum_f2 / (big_n * (big_n + 1.0));
  const double t4 = (1.0 - p.sigma) * b / (big_n * (big_n + 1.0)) * var_g;
  return std::max(0.0, t1 + t2 + t3 + t4);
}

/// Almost-sure limit of the posterior mean under data from P₀ = (1-λ)P₀ᵈ + λP₀ᶜ.
inline double limit_mean(const P0Decomposition& p0, double sigma, const GaussianLaw& g,
                         const Functional& f) {
  const double lam = p0.lambda();
  double m = lam * sigma * integral(g, f);
  if (lam < 1.0) m += (1.0 - lam) * integral(*p0.discrete(), f);
  if (lam > 0.0) m += (1.0 - sigma) * lam * integral(*p0.continuous(), f);
  return m;
}

/// Almost-sure limit of n·Var(Pf | X₁..Xₙ), as a sum of five variance terms.
inline double limit_variance(const P0Decomposition& p0, double sigma, const GaussianLaw& g,
                             const Functional& f) {
  const double lam = p0.lambda();
  const double sl = sigma * lam;
  const double pd = lam < 1.0 ? integral(*p0.discrete(), f) : 0.0;
  const double pc = lam > 0.0 ? integral(*p0.continuous(), f) : 0.0;
  double v = 0.0;
  if (lam < 1.0) v += (1.0 - lam) * variance_of(*p0.discrete(), f);
  if (lam > 0.0) {
    v += (1.0 - sigma) * lam * variance_of(*p0.continuous(), f);
    v += (1.0 - sigma) * sl * variance_of(g, f);
  }
  if (lam > 0.0 && lam < 1.0) {
    v += (1.0 - sigma) * lam * (1.0 - lam) / (1.0 - sl) * (pd - pc) * (pd - pc);
  }
  const double centre = ((1.0 - lam) * pd + (1.0 - sigma) * lam * pc) / (1.0 - sl) - integral(g, f);
  v += (1.0 - sl) * sl * centre * centre;
  return v;
}

/// Same limit, summed term by term from the exact finite-n variance
/// (before regrouping into variances).
inline double limit_variance_termwise(const P0Decomposition& p0, double sigma,
                                      const GaussianLaw& g, const Functional& f) {
  const double lam = p0.lambda();
  const double sl = sigma * lam;
  const double pd = lam < 1.0 ? integral(*p0.discrete(), f) : 0.0;
  const double pc = lam > 0.0 ? integral(*p0.continuous(), f) : 0.0;
  const double pd2 = lam < 1.0 ? integral_sq(*p0.discrete(), f) : 0.0;
  const double pc2 = lam > 0.0 ? integral_sq(*p0.continuous(), f) : 0.0;
  const double mix = (1.0 - lam) * pd + (1.0 - sigma) * lam * pc;
  const double centre = mix / (1.0 - sl) - integral(g, f);
  return (1.0 - sl) * sl * centre * centre - mix * mix / (1.0 - sl) + (1.0 - lam) * pd2 +
         (1.0 - sigma) * lam * pc2 + (1.0 - sigma) * sl * variance_of(g, f);
}

/**
 * Draws of Pf under the posterior without materializing the measure.
 *
 * For a piecewise-constant f the Dirichlet part aggregates exactly over the
 * level sets of f. The fresh part Qₙ ~ PY(σ, θ, G), θ = M+σKₙ, is drawn as
 * Σᵢ πᵢ Pᵢ with π ~ GEM(θ) (Dirichlet-process sticks) and Pᵢ iid PY(σ, 0, G);
 * each Pᵢ restricted to the level sets is a vector of normalized σ-stable
 * variables scaled by G(level)^{1/σ}. The π sticks are truncated like the
 * stick-breaking sampler: once the remaining mass times (1-Rₙ) drops below
 * eps, that remainder is assigned to one last Pᵢ.
 *
 * Identity (unbounded, no finite level sets) falls back to posterior_draw.
 * An instance keeps scratch buffers: use one instance per thread.
 */
class FunctionalPosterior {
 public:
  FunctionalPosterior(double mass, const GaussianLaw& base, const PartitionSummary& s,
                      const Functional& f)
      : mass_(mass), base_(base), summary_(&s), f_(f), levels_(level_sets(base, f)) {
    require(mass >= 0.0, "FunctionalPosterior: M must be nonnegative");
    if (!levels_) return;
    for (std::size_t j = 0; j < s.k(); ++j) {
      const double v = f(s.distinct[j]);
      auto it = std::find_if(data_levels_.begin(), data_levels_.end(),
                             [&](const DataLevel& l) { return l.value == v; });
      if (it == data_levels_.end()) {
        data_levels_.push_back({v, 0.0, 0.0});
        it = data_levels_.end() - 1;
      }
      it->total += static_cast<double>(s.mult[j]);
      it->blocks += 1.0;
    }
    std::erase_if(*levels_, [](const Level& l) { return !(l.mass > 0.0); });
  }

  /// One draw of Pf given the type parameter.
  double draw(double sigma, double eps, Rng& rng) const {
    const PartitionSummary& s = *summary_;
    if (!levels_) {
      const PYParams p(sigma, mass_, base_);
      return eval_draw(posterior_draw(p, s, eps, rng), s, f_);
    }
    detail::check_posterior_shapes(sigma, s);
    const double k = static_cast<double>(s.k());
    const double theta = mass_ + sigma * k;
    const auto [r, one_minus_r] =
        rng.beta_with_complement(static_cast<double>(s.n) - sigma * k, theta);

    double observed = data_levels_.front().value;
    if (data_levels_.size() > 1) {
      shapes_.resize(data_levels_.size());
      for (std::size_t l = 0; l < data_levels_.size(); ++l) {
        shapes_[l] = data_levels_[l].total - sigma * data_levels_[l].blocks;
      }
      detail::dirichlet(shapes_, rng, weights_);
      observed = 0.0;
      for (std::size_t l = 0; l < data_levels_.size(); ++l) observed += weights_[l] * data_levels_[l].value;
    }
    if (one_minus_r <= 0.0) return observed;
    return r * observed + one_minus_r * fresh(sigma, theta, detail::fresh_epsilon(eps, one_minus_r), rng);
  }

  std::vector<double> draws(double sigma, double eps, std::size_t count, Rng& rng) const {
    std::vector<double> out(count);
    for (auto& x : out) x = draw(sigma, eps, rng);
    return out;
  }

 private:
  struct DataLevel {
    double value;
    double total;   // Σ N_j over distinct values at this level
    double blocks;  // number of distinct values at this level
  };

  // Qf for Q ~ PY(σ, θ, G).
  double fresh(double sigma, double theta, double eps, Rng& rng) const {
    const auto& lv = *levels_;
    if (lv.size() == 1) return lv.front().value;
    if (sigma == 0.0) {
      shapes_.resize(lv.size());
      for (std::size_t l = 0; l < lv.size(); ++l) shapes_[l] = theta * lv[l].mass;
      detail::dirichlet(shapes_, rng, weights_);
      double acc = 0.0;
      for (std::size_t l = 0; l < lv.size(); ++l) acc += weights_[l] * lv[l].value;
      return acc;
    }
    double acc = 0.0;
    double rest = 1.0;
    for (std::size_t i = 1;; ++i) {
      if (i > kStickCap) throw IterationCapError("FunctionalPosterior: stick cap reached");
      // GEM(θ) stick: 1 - V = U^{1/θ}
      const double keep = std::exp(std::log(rng.uniform()) / theta);
      acc += (1.0 - keep) * rest * stable_block(sigma, rng);
      rest *= keep;
      if (rest < eps) break;
    }
    return acc + rest * stable_block(sigma, rng);
  }

  // P f for P ~ PY(σ, 0, G): normalized stable masses over the level sets.
  double stable_block(double sigma, Rng& rng) const {
    const auto& lv = *levels_;
    weights_.resize(lv.size());
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < lv.size(); ++l) {
      weights_[l] = std::log(lv[l].mass) / sigma + rng.log_positive_stable(sigma);
      top = std::max(top, weights_[l]);
    }
    double total = 0.0;
    double acc = 0.0;
    for (std::size_t l = 0; l < lv.size(); ++l) {
      const double t = std::exp(weights_[l] - top);
      total += t;
      acc += t * lv[l].value;
    }
    return acc / total;
  }

  double mass_;
  GaussianLaw base_;
  const PartitionSummary* summary_;
  Functional f_;
  std::optional<std::vector<Level>> levels_;
  std::vector<DataLevel> data_levels_;
  mutable std::vector<double> shapes_;
  mutable std::vector<double> weights_;
};

}  // namespace pitman

#endif  // PITMAN_POSTERIOR_HPP
