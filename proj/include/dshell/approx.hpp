#pragma once

#include <cstdint>
#include <vector>

#include "dshell/coupling.hpp"
#include "dshell/fiber.hpp"
#include "dshell/mat2.hpp"

namespace dshell {

/// Rescaled strengths for which the thin-potential limit reproduces the shell.
struct RenormalizedCoupling {
  double eta_t = 0.0;
  double tau_t = 0.0;
  double lambda_t = 0.0;
  int branch_l = 0;
  double factor = 1.0;  // common scalar (eta_t, tau_t, lambda_t) = factor (eta, tau, lambda)
  Mat2 a_matrix;        // eta_t s0 + tau_t s3 + lambda_t s2
  Coupling source;
};

/// Scalar of the renormalization: (2/sqrt d)(atan(sqrt d / 2) + l pi) for d > 0,
/// 1 for d = 0, (2/sqrt(-d)) atanh(sqrt(-d)/2) for -4 < d < 0.
double renormalization_factor(double d, int l = 0);

/// Throws UnsupportedRegime for d <= -4; such couplings can first be mapped by
/// minus_four_over_d_partner into -4 < d < 0.
RenormalizedCoupling renormalize(const Coupling& c, int l = 0);

/// A = M with no rescaling, for comparing against the renormalized limit.
RenormalizedCoupling unrenormalized(const Coupling& c);

enum class Profile { unit_square };

/// H[k] + A h_eps with h_eps(x) = h(x/eps)/eps and h the unit square on (-1/2, 1/2).
struct RegularizedModel {
  RenormalizedCoupling renorm;
  double k = 0.0;
  double mass = 0.0;
  double epsilon = 1e-2;
  Profile profile = Profile::unit_square;

  double profile_integral() const { return 1.0; }
};

/// Transfer matrix across the strip, exp(eps i s1 (z - s2 k - s3 m) - i s1 A).
Mat2 epsilon_transfer_matrix(const RegularizedModel& model, cplx z);

/// Eigenvalues of the regularized fiber in the gap, ascending.
std::vector<double> epsilon_bound_states(const RegularizedModel& model);

struct SweepRow {
  double epsilon;
  double energy;  // NaN when the regularized model has no eigenvalue
  double target;
  double abs_error;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double target = 0.0;
  int branch_l = 0;
  bool monotone = false;
  bool final_below_threshold = false;
  double threshold = 5e-3;
};

/// Tracks the eigenvalue nearest to the shell eigenvalue with index target_index.
/// Throws NoBoundState when the shell fiber has no eigenvalue at k.
SweepResult convergence_sweep(const Coupling& c, double k, const std::vector<double>& eps_list, int l = 0,
                              double threshold = 5e-3, std::size_t target_index = 0);

/// Limit of the eigenvalues when A = M is used without renormalization: the
/// eigenvalues of the shell whose transmission matrix is exp(-i s1 M).
std::vector<double> naive_limit(const Coupling& c, double k);

/// Resolvent of the regularized fiber at z, applied to f on a grid that has
/// -eps/2, 0 and eps/2 as nodes (see resolvent_grid).
SampledField epsilon_resolvent_apply(const RegularizedModel& model, cplx z, const SampledField& f);

/// Shell resolvent computed with the same solver as the regularized one, by
/// a zero-width jump with matrix Lambda. Cross-check for the Krein formula.
KreinResult jump_resolvent_apply(const FiberContext& ctx, cplx z, const SampledField& f);

/// Symmetric grid on about [-half_width, half_width] whose step divides eps/2.
SampledField resolvent_grid(double half_width, double eps, double max_step);

struct NormCheckResult {
  double estimate_k = 0.0;
  double estimate_0 = 0.0;
  double ratio = 0.0;
  double bound = 0.0;  // (1 + |k|)^2 (1 + 0.1)
  bool passed = false;
};

struct NormCheckOptions {
  int probes = 32;
  std::uint64_t seed = 20240101;
  double half_width = 20.0;
  double max_step = 2e-3;
  int branch_l = 0;
};

/// Largest ||(R_eps - R_delta) f|| / ||f|| at z = i over a fixed set of Gaussian probes.
/// A lower bound for the operator norm.
double resolvent_difference_estimate(const Coupling& c, double k, double eps, const NormCheckOptions& opt = {});

/// Compares the estimate at k with the one at k = 0 against the factor (1 + |k|)^2.
NormCheckResult resolvent_norm_bound_check(const Coupling& c, double k, double eps,
                                           const NormCheckOptions& opt = {});

}  // namespace dshell
