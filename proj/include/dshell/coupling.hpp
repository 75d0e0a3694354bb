#pragma once

#include <array>

#include "dshell/mat2.hpp"

namespace dshell {

/// Absolute tolerance on d and on the criticality expression.
inline constexpr double kRegimeTol = 1e-12;

/// Strengths of the delta-shell interaction: electrostatic eta, Lorentz scalar tau,
/// magnetic lambda, omega coupling to s1, plus the mass m.
struct Coupling {
  double eta = 0.0;
  double tau = 0.0;
  double lambda = 0.0;
  double omega = 0.0;
  double mass = 0.0;

  /// d = eta^2 - tau^2 - lambda^2.
  double d() const { return eta * eta - tau * tau - lambda * lambda; }
};

struct RegimeClassification {
  bool is_confining = false;  // d = -4 and omega = 0
  bool is_critical = false;   // (d/4 - 1)^2 = lambda^2
  bool is_case_d4 = false;    // d = 4
  bool det_condition = true;  // det(2i s1 - M) != 0
  double d = 0.0;
};

RegimeClassification classify(const Coupling& c);

/// M = eta s0 + tau s3 + lambda s2 + omega s1.
Mat2 interaction_matrix(const Coupling& c);

struct GaugeReduction {
  double x_factor = 1.0;
  cplx phase = 1.0;
  Coupling reduced;
};

/// Removes omega by the unitary gauge map. Identity reduction for omega = 0.
GaugeReduction reduce_omega(const Coupling& c);

/// Both real roots of d X^2 + (4 - d + omega^2) X - 4 = 0, the first being the
/// one reduce_omega returns. For d = 0 the second entry repeats the first.
std::array<double, 2> gauge_factor_roots(double d, double omega);

/// The two equivalent closed forms of the gauge phase for a given root X.
cplx gauge_phase_from_d(double d, double omega, double x);
cplx gauge_phase_from_x(double omega, double x);

/// (-4/d)(eta, tau, lambda). Requires omega = 0 and d away from {-4, 0}.
Coupling minus_four_over_d_partner(const Coupling& c);

}  // namespace dshell
