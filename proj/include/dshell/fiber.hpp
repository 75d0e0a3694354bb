#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dshell/coupling.hpp"
#include "dshell/mat2.hpp"

namespace dshell {

/// One fiber H[k] = -i s1 d/dx + k s2 + m s3 plus the shell interaction.
struct FiberContext {
  Coupling coupling;
  double k = 0.0;

  /// sqrt(m^2 + k^2), the edge of the essential spectrum of the fiber.
  double gap_edge() const;
};

struct TransmissionMatrix {
  Mat2 lambda_matrix;  // psi(0+) = Lambda psi(0-)
  Mat2 m_matrix;
};

/// Lambda = (2i s1 - M)^{-1} (2i s1 + M). Throws ConfiningRegime when d = -4, omega = 0.
TransmissionMatrix transmission_matrix(const Coupling& c);

/// sqrt(m^2 + k^2 - z^2)(d - 4) - 4(eta z + lambda k + tau m). Requires omega = 0.
double char_eq_residual(const FiberContext& ctx, double z);

enum class BranchId { single_d4, plus, minus };
const char* to_string(BranchId b);

/// Closed-form branch value z(k), defined for every real k (admissible or not).
double branch_value(const Coupling& c, BranchId b, double k);
/// dz/dk of the branch.
double branch_derivative(const Coupling& c, BranchId b, double k);
/// Quantity whose sign is that of (d - 4)(eta z + lambda k + tau m) on the branch.
double admissibility_function(const Coupling& c, BranchId b, double k);
/// True when the branch value at k is a genuine fiber eigenvalue.
bool branch_admissible(const Coupling& c, BranchId b, double k);

struct OpenInterval {
  double lo;
  double hi;
  bool contains(double x) const { return lo < x && x < hi; }
};

/// A dispersion branch restricted to one or more open k-intervals where it is admissible.
struct Band {
  BranchId branch_id = BranchId::single_d4;
  Coupling coupling;
  std::vector<OpenInterval> domain;
  bool is_constant = false;
  bool is_linear = false;
  std::optional<double> slope;

  double operator()(double k) const { return branch_value(coupling, branch_id, k); }
  double derivative(double k) const { return branch_derivative(coupling, branch_id, k); }
  bool in_domain(double k) const;
};

/// All bands of the fiber family. For m = 0 and d != 4 the z+- branches split into
/// half-line pieces, each linear with its own slope.
/// Requires omega = 0; throws ConfiningRegime for d = -4.
std::vector<Band> bands(const Coupling& c);

/// Normalized eigenfunction psi(x) = left e^{mu x} for x < 0, right e^{-mu x} for x > 0.
struct BoundState {
  double energy = 0.0;
  double mu = 0.0;
  Vec2 left_spinor{};
  Vec2 right_spinor{};
  double normalization = 1.0;  // factor already divided out of both spinors

  Vec2 operator()(double x) const;
};

/// Eigenvalues of the fiber in ascending order with eigenfunctions.
/// omega != 0 is handled through the gauge reduction.
std::vector<BoundState> fiber_eigenvalues(const FiberContext& ctx);

/// Eigenvalues found by scanning the gap for zeros of the matching determinant
/// built from Lambda. Independent of the band formulas.
std::vector<double> matching_oracle(const FiberContext& ctx);

/// Same scan for an arbitrary transmission matrix of the form
/// (scalar) x (real diagonal, imaginary off-diagonal).
std::vector<double> matching_roots(const Mat2& lambda, double mass, double k);

/// Square root branch with Im > 0 off [0, inf).
cplx xi_branch(double mass, double k, cplx z);

/// Free fiber Green kernel G_z(x - y).
struct GreenKernel {
  cplx z;
  cplx xi;
  Mat2 c_matrix;  // G_z(0) with sgn(0) = 0
  double k = 0.0;
  double mass = 0.0;

  /// G_z(x); sgn(0) = 0 at x = 0.
  Mat2 at(double x) const;
  /// One-sided limit at 0; side > 0 for 0+, side < 0 for 0-.
  Mat2 limit(int side) const;
  Mat2 operator()(double x, double y) const { return at(x - y); }
};

/// Throws SpectralPoint when z lies in the spectrum of the fiber.
GreenKernel green_kernel(const FiberContext& ctx, cplx z);

/// 2-vector function sampled on the uniform grid x_j = x0 + j*step.
struct SampledField {
  double x0 = 0.0;
  double step = 1.0;
  std::vector<Vec2> values;

  double x(std::size_t j) const { return x0 + static_cast<double>(j) * step; }
  std::size_t size() const { return values.size(); }

  /// Zero field on [-L, L] with 0 as the center node; L is rounded to a multiple of step.
  static SampledField symmetric(double half_width, double step);
  template <class F>
  void fill(F&& f) {
    for (std::size_t j = 0; j < values.size(); ++j) values[j] = f(x(j));
  }
};

/// Default truncation 20 / Im xi.
double default_krein_half_width(const FiberContext& ctx, cplx z);

struct KreinResult {
  SampledField field;  // the center node holds the average of the two traces
  std::size_t center = 0;
  Vec2 trace_minus{};
  Vec2 trace_plus{};
};

/// (H_shell - z)^{-1} f on the grid of f, which must be symmetric with an odd node count.
KreinResult krein_resolvent_apply(const FiberContext& ctx, cplx z, const SampledField& f);

/// max |(H[k] - z) g - f| over nodes farther than `margin` from 0 and from the
/// grid ends, with fourth-order central differences for g'.
double resolvent_ode_residual(const FiberContext& ctx, cplx z, const SampledField& f, const SampledField& g,
                              double margin);

/// |(2i s1 - M) g(0+) - (2i s1 + M) g(0-)|.
double transmission_residual(const Coupling& c, const Vec2& minus, const Vec2& plus);

}  // namespace dshell
