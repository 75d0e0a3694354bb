#pragma once

// Reference computations for the tests. They only use Mat2 arithmetic and
// textbook formulas, never the solver code paths they are compared against.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "dshell/coupling.hpp"
#include "dshell/fiber.hpp"
#include "dshell/mat2.hpp"

namespace oracle {

using dshell::cplx;
using dshell::I;
using dshell::Mat2;
using dshell::Vec2;
using dshell::operator*;
using dshell::operator+;
using dshell::operator-;

/// Scaling and squaring with a degree 18 Taylor polynomial.
inline Mat2 taylor_exp(const Mat2& b) {
  const double nrm = 2.0 * b.max_abs();
  int s = 0;
  while (std::ldexp(nrm, -s) > 0.25) ++s;
  const Mat2 a = cplx(std::ldexp(1.0, -s)) * b;
  Mat2 term = Mat2::identity(), sum = Mat2::identity();
  for (int n = 1; n <= 18; ++n) {
    term = cplx(1.0 / n) * (term * a);
    sum = sum + term;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum;
}

/// M written out entrywise.
inline Mat2 m_matrix(const dshell::Coupling& c) {
  return Mat2{c.eta + c.tau, cplx(c.omega, -c.lambda), cplx(c.omega, c.lambda), c.eta - c.tau};
}

/// Lambda through the adjugate of 2i s1 - M.
inline Mat2 lambda_matrix(const dshell::Coupling& c) {
  const Mat2 m = m_matrix(c);
  const Mat2 a = Mat2{-m(0, 0), 2.0 * I - m(0, 1), 2.0 * I - m(1, 0), -m(1, 1)};
  const Mat2 b = Mat2{m(0, 0), 2.0 * I + m(0, 1), 2.0 * I + m(1, 0), m(1, 1)};
  const cplx det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  const Mat2 adj{a(1, 1), -a(0, 1), -a(1, 0), a(0, 0)};
  return cplx(1.0 / det) * (adj * b);
}

inline Vec2 null_vector(const Mat2& n) {
  const Vec2 a{-n(0, 1), n(0, 0)}, b{n(1, 1), -n(1, 0)};
  const Vec2 v = dshell::norm(a) >= dshell::norm(b) ? a : b;
  return cplx(1.0 / dshell::norm(v)) * v;
}

/// |det[Lambda v_L, w_R]| for unit decaying solutions v_L e^{mu x}, w_R e^{-mu x}.
inline double matching_modulus(const Mat2& lambda, double m, double k, double z) {
  const double mu = std::sqrt(std::max(0.0, m * m + k * k - z * z));
  const Mat2 nl{m - z, -I * mu - I * k, -I * mu + I * k, -m - z};
  const Mat2 nr{m - z, I * mu - I * k, I * mu + I * k, -m - z};
  const Vec2 v = lambda * null_vector(nl);
  const Vec2 w = null_vector(nr);
  return std::abs(v[0] * w[1] - v[1] * w[0]) / dshell::norm(v);
}

/// Golden-section search for a minimum of a unimodal f on [a, b], run to machine width.
template <class F>
std::pair<double, double> golden_minimum(F&& f, double a, double b) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && b - a > 4e-16 * std::max(1.0, std::abs(a)); ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? std::pair{c, fc} : std::pair{d, fd};
}

/// Brute force: local minima of the matching modulus on a fine grid of the gap,
/// refined by golden section and accepted when the minimum is numerically zero.
inline std::vector<double> scan_eigenvalues(const dshell::Coupling& c, double k, int grid = 20000) {
  const double m = c.mass;
  const double g = std::sqrt(m * m + k * k);
  const Mat2 lam = lambda_matrix(c);
  auto f = [&](double z) { return matching_modulus(lam, m, k, z); };
  std::vector<double> zs(grid + 1), fs(grid + 1);
  for (int i = 0; i <= grid; ++i) {
    zs[i] = -g * std::cos(M_PI * i / grid);
    fs[i] = f(zs[i]);
  }
  std::vector<double> out;
  for (int i = 1; i < grid; ++i) {
    if (!(fs[i] <= fs[i - 1] && fs[i] <= fs[i + 1])) continue;
    const auto r = golden_minimum(f, zs[i - 1], zs[i + 1]);
    if (r.second < 1e-9 && std::abs(std::abs(r.first) - g) > 1e-12 * g) {
      if (out.empty() || std::abs(out.back() - r.first) > 1e-8 * g) out.push_back(r.first);
    }
  }
  return out;
}

/// Free fiber Green kernel written out from its defining formula.
inline Mat2 free_green(double m, double k, cplx z, double x) {
  cplx xi = std::sqrt(z * z - m * m - k * k);
  if (xi.imag() < 0.0) xi = -xi;
  const double s = x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0);
  const cplx pref = I / (2.0 * xi) * std::exp(I * xi * std::abs(x));
  return pref * Mat2{z + m, xi * s - I * k, xi * s + I * k, z - m};
}

/// O(N^2) trapezoid convolution of the free Green kernel with f at every node.
inline std::vector<Vec2> free_resolvent_direct(double m, double k, cplx z, const dshell::SampledField& f) {
  const std::size_t n = f.size();
  std::vector<Mat2> g(2 * n - 1);
  for (std::size_t d = 0; d < 2 * n - 1; ++d)
    g[d] = free_green(m, k, z, (static_cast<double>(d) - static_cast<double>(n - 1)) * f.step);
  std::vector<Vec2> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec2 acc{};
    for (std::size_t j = 0; j < n; ++j) {
      const double w = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
      acc = acc + cplx(w * f.step) * (g[i + n - 1 - j] * f.values[j]);
    }
    out[i] = acc;
  }
  return out;
}

/// Residual of -i s1 psi' + (k s2 + m s3 - z) psi by central differences.
inline double eigen_ode_residual(const dshell::BoundState& s, double m, double k, double x, double h = 1e-5) {
  const Vec2 d = cplx(1.0 / (2.0 * h)) * (s(x + h) - s(x - h));
  const Vec2 p = s(x);
  const Vec2 r{-I * d[1] + (m - s.energy) * p[0] - I * k * p[1], -I * d[0] + I * k * p[0] + (-m - s.energy) * p[1]};
  return dshell::norm(r);
}

/// Composite Simpson of |psi|^2 over [-L, L] with the kink at 0 on a node.
inline double norm_squared(const dshell::BoundState& s, double L, int n_half = 20000) {
  const double h = L / n_half;
  auto side = [&](double sign) {
    double acc = 0.0;
    for (int j = 0; j <= n_half; ++j) {
      const double x = sign * (j == 0 ? 1e-300 : j * h);
      const double w = (j == 0 || j == n_half) ? 1.0 : (j % 2 ? 4.0 : 2.0);
      const double v = dshell::norm(s(x));
      acc += w * v * v;
    }
    return acc * h / 3.0;
  };
  return side(-1.0) + side(1.0);
}

inline dshell::Coupling random_coupling(std::mt19937_64& rng, double omega_scale, double d_min = -3.9) {
  std::uniform_real_distribution<double> u(-3.0, 3.0), um(-2.0, 2.0), uo(-omega_scale, omega_scale);
  for (;;) {
    dshell::Coupling c{u(rng), u(rng), u(rng), omega_scale > 0 ? uo(rng) : 0.0, um(rng)};
    if (c.d() > d_min) return c;
  }
}

}  // namespace oracle
