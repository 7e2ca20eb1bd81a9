#include "speclat/monotone.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace speclat {

MonotoneBijection MonotoneBijection::piecewise_linear(std::vector<double> xs, std::vector<double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("piecewise-linear bijection needs at least two knots");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(ys[i]))
      throw std::invalid_argument("piecewise-linear knot is not finite");
    if (i > 0 && !(xs[i] > xs[i - 1] && ys[i] > ys[i - 1]))
      throw std::invalid_argument("piecewise-linear knots must be strictly increasing");
  }
  return MonotoneBijection(PiecewiseLinear{std::move(xs), std::move(ys)});
}

MonotoneBijection MonotoneBijection::power(double exponent, double scale) {
  if (!(exponent > 0) || !(scale > 0) || !std::isfinite(exponent) || !std::isfinite(scale))
    throw std::invalid_argument("power bijection needs a positive exponent and scale");
  return MonotoneBijection(Power{exponent, scale});
}

namespace {

double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double t) {
  const std::size_t last = xs.size() - 1;
  std::size_t i;
  if (t <= xs.front()) {
    i = 0;
  } else if (t >= xs.back()) {
    i = last - 1;
  } else {
    i = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), t) - xs.begin()) - 1;
  }
  const double slope = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
  return ys[i] + slope * (t - xs[i]);
}

}  // namespace

double MonotoneBijection::operator()(double t) const {
  if (const auto* p = std::get_if<Power>(&rep_)) {
    const double m = p->scale * std::pow(std::abs(t), p->exponent);
    return t < 0 ? -m : m;
  }
  const auto& pl = std::get<PiecewiseLinear>(rep_);
  return interpolate(pl.xs, pl.ys, t);
}

MonotoneBijection MonotoneBijection::inverse() const {
  if (const auto* p = std::get_if<Power>(&rep_))
    return power(1 / p->exponent, std::pow(p->scale, -1 / p->exponent));
  const auto& pl = std::get<PiecewiseLinear>(rep_);
  return piecewise_linear(pl.ys, pl.xs);
}

bool MonotoneBijection::preserves(Cone cone, double tol) const {
  switch (cone) {
    case Cone::self_adjoint: return true;
    case Cone::positive: return std::abs((*this)(0.0)) <= tol;
    case Cone::effect: return std::abs((*this)(0.0)) <= tol && std::abs((*this)(1.0) - 1) <= tol;
  }
  return false;
}

}  // namespace speclat
