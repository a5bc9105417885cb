#ifndef PITMAN_PY_CORE_HPP
#define PITMAN_PY_CORE_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "pitman/distributions.hpp"
#include "pitman/error.hpp"
#include "pitman/functional.hpp"
#include "pitman/rng.hpp"

namespace pitman {

/// Parameters of PY(σ, M, G): type 0 ≤ σ < 1, concentration M ≥ 0, base G.
struct PYParams {
  double sigma;
  double mass;
  GaussianLaw base;

  PYParams(double sigma_, double mass_, GaussianLaw base_)
      : sigma(sigma_), mass(mass_), base(base_) {
    require(sigma >= 0.0 && sigma < 1.0, "PYParams: sigma must lie in [0,1)");
    require(mass >= 0.0 && std::isfinite(mass), "PYParams: M must be nonnegative");
  }
};

/// A realized discrete probability measure Σ wᵢ δ_{atomᵢ}.
struct WeightedAtoms {
  std::vector<double> atoms;
  std::vector<double> weights;
  /// Index of the atom that carries the leftover stick mass, or
  /// atoms.size() when the sticks exhausted the unit mass exactly.
  std::size_t residual_index = 0;

  std::size_t size() const noexcept { return atoms.size(); }
};

inline constexpr std::size_t kStickCap = 10'000'000;

/**
 * Stick-breaking draw from PY(σ, M, G).
 *
 * Breaks sticks Vᵢ ~ Beta(1-σ, M+iσ) with atoms θᵢ ~ G until the unbroken
 * remainder Π(1-Vⱼ) falls below `eps`, then places that remainder on one
 * more fresh atom from G, so the result has total mass one.
 */
inline WeightedAtoms sample_py(const PYParams& p, double eps, Rng& rng,
                               std::size_t cap = kStickCap) {
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("sample_py: eps must lie in (0,1)");
  WeightedAtoms out;
  double rest = 1.0;
  for (std::size_t i = 1;; ++i) {
    if (i > cap) {
      throw IterationCapError("sample_py: " + std::to_string(cap) +
                              " sticks broken without reaching truncation level");
    }
    const auto [v, one_minus_v] =
        rng.beta_with_complement(1.0 - p.sigma, p.mass + static_cast<double>(i) * p.sigma);
    out.atoms.push_back(p.base.sample(rng));
    out.weights.push_back(v * rest);
    rest *= one_minus_v;
    if (rest < eps) break;
  }
  out.residual_index = out.atoms.size();
  if (rest > 0.0) {
    out.atoms.push_back(p.base.sample(rng));
    out.weights.push_back(rest);
  }
  return out;
}

/// ∫ f dP for a realized measure.
inline double integrate(const WeightedAtoms& m, const Functional& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) acc += m.weights[i] * f(m.atoms[i]);
  return acc;
}

}  // namespace pitman

#endif  // PITMAN_PY_CORE_HPP
