#pragma once

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <utility>

namespace dshell::detail {

/// Midpoint of the final bracket of a bisection run to width <= tol.
/// f(lo) and f(hi) must have opposite signs (or one of them vanish).
template <class F>
double bisect_root(F&& f, double lo, double hi, double tol) {
  auto done = [tol](double a, double b) { return std::abs(b - a) <= tol; };
  const auto r = boost::math::tools::bisect(f, lo, hi, done);
  return 0.5 * (r.first + r.second);
}

/// Real roots of a x^2 + b x + c in ascending order (degenerate cases handled).
inline std::pair<int, std::pair<double, double>> real_quadratic_roots(double a, double b, double c) {
  if (a == 0.0) {
    if (b == 0.0) return {0, {0.0, 0.0}};
    const double r = -c / b;
    return {1, {r, r}};
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return {0, {0.0, 0.0}};
  const double s = std::sqrt(disc);
  const double q = -0.5 * (b + std::copysign(s, b));
  double r1 = q / a;
  double r2 = q != 0.0 ? c / q : r1;
  if (r1 > r2) std::swap(r1, r2);
  return {2, {r1, r2}};
}

}  // namespace dshell::detail
