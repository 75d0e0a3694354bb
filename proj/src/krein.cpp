#include <algorithm>
#include <cmath>

#include "dshell/errors.hpp"
#include "dshell/fiber.hpp"
#include "quadrature.hpp"

namespace dshell {

KreinResult krein_resolvent_apply(const FiberContext& ctx, cplx z, const SampledField& f) {
  if (z.imag() == 0.0) throw Error(ErrorCode::DomainError, "Krein formula needs z off the real axis");
  const std::size_t n = f.size();
  if (n < 3 || n % 2 == 0) throw Error(ErrorCode::InvalidArgument, "grid needs an odd node count");
  const std::size_t center = n / 2;
  if (std::abs(f.x(center)) > 1e-9 * f.step)
    throw Error(ErrorCode::InvalidArgument, "grid must be symmetric about 0");

  const GreenKernel g = green_kernel(ctx, z);
  const double m = ctx.coupling.mass;
  const double k = ctx.k;
  const cplx xi = g.xi;
  const cplx pref = I / (2.0 * xi);
  const Mat2 p_plus{z + m, xi - I * k, xi + I * k, z - m};
  const Mat2 p_minus{z + m, -xi - I * k, -xi + I * k, z - m};

  // Free resolvent u0 = int G(x - y) f(y) dy split at y = x.
  const auto fwd = detail::cumulative_exp_simpson(f.values, f.step, I * xi);
  const auto bwd = detail::reverse_cumulative_exp_simpson(f.values, f.step, I * xi);

  const Mat2 mm = interaction_matrix(ctx.coupling);
  const Mat2 s = Mat2::identity() + mm * g.c_matrix;
  Vec2 v = pref * (p_plus * fwd[center] + p_minus * bwd[center]);
  const Vec2 w = inverse(s) * (mm * v);

  KreinResult r;
  r.center = center;
  r.field.x0 = f.x0;
  r.field.step = f.step;
  r.field.values.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Vec2 u0 = pref * (p_plus * fwd[j] + p_minus * bwd[j]);
    if (j == center) {
      r.trace_minus = u0 - g.limit(-1) * w;
      r.trace_plus = u0 - g.limit(+1) * w;
      r.field.values[j] = 0.5 * (r.trace_minus + r.trace_plus);
    } else {
      r.field.values[j] = u0 - g.at(f.x(j)) * w;
    }
  }
  return r;
}

double resolvent_ode_residual(const FiberContext& ctx, cplx z, const SampledField& f, const SampledField& g,
                              double margin) {
  const double h = g.step;
  const double k = ctx.k;
  const double m = ctx.coupling.mass;
  const Mat2 pot = k * pauli::s2() + m * pauli::s3() - z * pauli::s0();
  const Mat2 d1 = (-I) * pauli::s1();
  double worst = 0.0;
  for (std::size_t j = 2; j + 2 < g.size(); ++j) {
    if (std::abs(g.x(j)) <= margin) continue;
    const auto& v = g.values;
    const Vec2 dg = (1.0 / (12.0 * h)) * (v[j - 2] - 8.0 * v[j - 1] + 8.0 * v[j + 1] - v[j + 2]);
    const Vec2 r = d1 * dg + pot * v[j] - f.values[j];
    worst = std::max(worst, norm(r));
  }
  return worst;
}

double transmission_residual(const Coupling& c, const Vec2& minus, const Vec2& plus) {
  const Mat2 mm = interaction_matrix(c);
  const Mat2 two_i_s1 = (2.0 * I) * pauli::s1();
  return norm((two_i_s1 - mm) * plus - (two_i_s1 + mm) * minus);
}

}  // namespace dshell
