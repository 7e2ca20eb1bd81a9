#pragma once

#include <variant>
#include <vector>

#include "speclat/cone.hpp"

namespace speclat {

/// Strictly increasing bijection used as the scalar part of a canonical
/// isomorphism.
///
/// Two representations: piecewise linear through finitely many knots with
/// affine tails continuing the outer segments, and the odd power map
/// t -> scale * sign(t) |t|^exponent.  Both are closed under inversion.
class MonotoneBijection {
 public:
  struct PiecewiseLinear {
    std::vector<double> xs;
    std::vector<double> ys;
  };
  struct Power {
    double exponent = 1;
    double scale = 1;
  };

  MonotoneBijection() : rep_(PiecewiseLinear{{0.0, 1.0}, {0.0, 1.0}}) {}

  static MonotoneBijection identity() { return {}; }
  /// Knots must be strictly increasing in both coordinates, at least two.
  static MonotoneBijection piecewise_linear(std::vector<double> xs, std::vector<double> ys);
  static MonotoneBijection power(double exponent, double scale = 1);

  double operator()(double t) const;
  MonotoneBijection inverse() const;

  /// Whether f maps the scalar domain of the cone onto itself: f(0) = 0 and
  /// f(1) = 1 for effects, f(0) = 0 for the positive cone, always for the
  /// self-adjoint part.
  bool preserves(Cone cone, double tol = 1e-12) const;

  bool is_power() const { return std::holds_alternative<Power>(rep_); }
  const PiecewiseLinear& as_piecewise_linear() const { return std::get<PiecewiseLinear>(rep_); }
  const Power& as_power() const { return std::get<Power>(rep_); }

 private:
  explicit MonotoneBijection(std::variant<PiecewiseLinear, Power> rep) : rep_(std::move(rep)) {}

  std::variant<PiecewiseLinear, Power> rep_;
};

}  // namespace speclat
