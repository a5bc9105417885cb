#ifndef PITMAN_FUNCTIONAL_HPP
#define PITMAN_FUNCTIONAL_HPP

#include <string>

#include "pitman/error.hpp"

namespace pitman {

/**
 * A real function f on the line, used to evaluate a measure as Pf = ∫ f dP.
 *
 * Boundary conventions are part of the definition:
 *   IndicatorAbove(a)      1 on [a, ∞)
 *   TwoSided(a)            1 on (a, ∞), -1 on (-∞, a]
 *   IndicatorInterval(a,b) 1 on (a, b]
 *   Identity               x
 */
class Functional {
 public:
  enum class Kind { IndicatorAbove, TwoSided, IndicatorInterval, Identity };

  static Functional indicator_above(double a) { return Functional(Kind::IndicatorAbove, a, 0.0); }
  static Functional two_sided(double a) { return Functional(Kind::TwoSided, a, 0.0); }
  static Functional interval(double a, double b) {
    require(a < b, "IndicatorInterval requires a < b");
    return Functional(Kind::IndicatorInterval, a, b);
  }
  static Functional identity() { return Functional(Kind::Identity, 0.0, 0.0); }

  Kind kind() const noexcept { return kind_; }
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  bool bounded() const noexcept { return kind_ != Kind::Identity; }

  double operator()(double x) const noexcept {
    switch (kind_) {
      case Kind::IndicatorAbove: return x >= a_ ? 1.0 : 0.0;
      case Kind::TwoSided: return x > a_ ? 1.0 : -1.0;
      case Kind::IndicatorInterval: return (x > a_ && x <= b_) ? 1.0 : 0.0;
      case Kind::Identity: return x;
    }
    return 0.0;
  }

  std::string describe() const {
    switch (kind_) {
      case Kind::IndicatorAbove: return "1[" + fmt(a_) + ",inf)";
      case Kind::TwoSided: return "1(" + fmt(a_) + ",inf)-1(-inf," + fmt(a_) + "]";
      case Kind::IndicatorInterval: return "1(" + fmt(a_) + "," + fmt(b_) + "]";
      case Kind::Identity: return "x";
    }
    return {};
  }

  friend bool operator==(const Functional&, const Functional&) = default;

 private:
  Functional(Kind k, double a, double b) : kind_(k), a_(a), b_(b) {}

  static std::string fmt(double v) {
    std::string s = std::to_string(v);
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
  }

  Kind kind_;
  double a_;
  double b_;
};

}  // namespace pitman

#endif  // PITMAN_FUNCTIONAL_HPP
