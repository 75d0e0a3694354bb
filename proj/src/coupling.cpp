#include "dshell/coupling.hpp"

#include <cmath>

#include "dshell/errors.hpp"

namespace dshell {

RegimeClassification classify(const Coupling& c) {
  RegimeClassification r;
  r.d = c.d();
  const double a = r.d / 4.0 - 1.0;
  r.is_critical = std::abs(a * a - c.lambda * c.lambda) <= kRegimeTol;
  r.is_case_d4 = std::abs(r.d - 4.0) <= kRegimeTol;
  r.is_confining = std::abs(r.d + 4.0) <= kRegimeTol && std::abs(c.omega) <= kRegimeTol;
  r.det_condition = !r.is_confining;
  return r;
}

Mat2 interaction_matrix(const Coupling& c) {
  return {c.eta + c.tau, cplx(c.omega, -c.lambda), cplx(c.omega, c.lambda), c.eta - c.tau};
}

std::array<double, 2> gauge_factor_roots(double d, double omega) {
  const double b = 4.0 - d + omega * omega;
  if (std::abs(d) <= kRegimeTol) {
    const double x = 4.0 / b;
    return {x, x};
  }
  const double s = std::sqrt(b * b + 16.0 * d);
  // '+' root (-b + s) / (2d), evaluated without cancellation.
  const double xp = b >= 0.0 ? 8.0 / (b + s) : (s - b) / (2.0 * d);
  const double xm = -4.0 / (d * xp);
  return {xp, xm};
}

cplx gauge_phase_from_d(double d, double omega, double x) {
  const double re = 4.0 + d * x;
  return cplx(re, 2.0 * omega) / cplx(re, -2.0 * omega);
}

cplx gauge_phase_from_x(double omega, double x) {
  const double re = omega * x;
  const double im = 2.0 * (1.0 - x);
  return cplx(re, im) / cplx(re, -im);
}

GaugeReduction reduce_omega(const Coupling& c) {
  GaugeReduction g;
  g.reduced = c;
  if (c.omega == 0.0) return g;
  const double d = c.d();
  g.x_factor = gauge_factor_roots(d, c.omega)[0];
  g.phase = gauge_phase_from_d(d, c.omega, g.x_factor);
  g.phase /= std::abs(g.phase);
  g.reduced = {g.x_factor * c.eta, g.x_factor * c.tau, g.x_factor * c.lambda, 0.0, c.mass};
  return g;
}

Coupling minus_four_over_d_partner(const Coupling& c) {
  if (c.omega != 0.0)
    throw Error(ErrorCode::InvalidArgument, "partner map requires omega = 0");
  const double d = c.d();
  if (std::abs(d) <= kRegimeTol || std::abs(d + 4.0) <= kRegimeTol)
    throw Error(ErrorCode::InvalidRegime, "partner map undefined for d in {-4, 0}");
  const double f = -4.0 / d;
  return {f * c.eta, f * c.tau, f * c.lambda, 0.0, c.mass};
}

}  // namespace dshell
