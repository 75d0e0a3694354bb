#include <algorithm>
#include <array>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <numbers>

#include "dshell/errors.hpp"
#include "dshell/fiber.hpp"
#include "root_scan.hpp"
#include "rootfind.hpp"

namespace dshell {

namespace detail {

namespace {

// A spinor (p, i q) is stored as the real pair (p, q).
using R2 = std::array<double, 2>;

R2 unit(R2 v) {
  const double n = std::hypot(v[0], v[1]);
  return {v[0] / n, v[1] / n};
}

// Two proportional forms of each decaying solution; the larger one is used.
R2 pick(R2 a, R2 b) {
  return std::hypot(a[0], a[1]) >= std::hypot(b[0], b[1]) ? unit(a) : unit(b);
}

R2 orient(R2 v, const R2* ref) {
  if (ref && v[0] * (*ref)[0] + v[1] * (*ref)[1] < 0.0) return {-v[0], -v[1]};
  return v;
}

struct Sample {
  double z = 0.0;
  double f = 0.0;
  R2 wp{};
  R2 wm{};
};

class Matcher {
public:
  Matcher(double mass, double k, const std::function<Mat2(double)>& transfer)
      : m_(mass), k_(k), g_(std::hypot(mass, k)), transfer_(transfer) {}

  double gap() const { return g_; }

  Sample eval(double z, const Sample* ref) const {
    const double mu = std::sqrt(std::max(0.0, (g_ - z) * (g_ + z)));
    Sample s;
    s.z = z;
    s.wp = orient(pick({z + m_, k_ + mu}, {k_ - mu, z - m_}), ref ? &ref->wp : nullptr);
    s.wm = orient(pick({z + m_, k_ - mu}, {k_ + mu, z - m_}), ref ? &ref->wm : nullptr);
    const Mat2 t = transfer_(z);
    const double n11 = t(0, 0).real(), n12 = t(0, 1).imag();
    const double n21 = t(1, 0).imag(), n22 = t(1, 1).real();
    const double tw0 = n11 * s.wm[0] - n12 * s.wm[1];
    const double tw1 = n21 * s.wm[0] + n22 * s.wm[1];
    s.f = s.wp[0] * tw1 - s.wp[1] * tw0;
    return s;
  }

private:
  double m_, k_, g_;
  const std::function<Mat2(double)>& transfer_;
};

}  // namespace

Mat2 remove_global_phase(const Mat2& m) {
  int best = 0;
  for (int i = 1; i < 4; ++i)
    if (std::abs(m.entries()[i]) > std::abs(m.entries()[best])) best = i;
  const cplx e = m.entries()[best];
  double theta = std::arg(e);
  if (best == 1 || best == 2) theta -= 0.5 * std::numbers::pi;
  return std::polar(1.0, -theta) * m;
}

std::vector<double> scan_gap_roots(double mass, double k, const std::function<Mat2(double)>& transfer,
                                   std::size_t grid) {
  const Matcher mt(mass, k, transfer);
  const double g = mt.gap();
  if (g == 0.0) throw Error(ErrorCode::DegenerateContext, "m = k = 0 is excluded");
  if (grid < 3) throw Error(ErrorCode::InvalidArgument, "scan grid too small");
  const double gp = g * (1.0 - 1e-9);
  const double tol = 1e-12 * g;

  std::vector<Sample> s(grid);
  for (std::size_t i = 0; i < grid; ++i) {
    const double z = -gp + 2.0 * gp * static_cast<double>(i) / static_cast<double>(grid - 1);
    s[i] = mt.eval(z, i ? &s[i - 1] : nullptr);
  }

  std::vector<double> roots;
  for (std::size_t i = 0; i < grid; ++i) {
    if (s[i].f == 0.0) {
      roots.push_back(s[i].z);
      continue;
    }
    if (i == 0 || s[i - 1].f == 0.0 || (s[i - 1].f > 0.0) == (s[i].f > 0.0)) continue;
    const Sample& ref = s[i - 1];
    auto f = [&](double z) { return mt.eval(z, &ref).f; };
    roots.push_back(bisect_root(f, ref.z, s[i].z, tol));
  }

  // A close pair of roots can hide inside one or two cells; look for a sign
  // change at each interior local minimum of |F|.
  for (std::size_t i = 1; i + 1 < grid; ++i) {
    const double a = s[i - 1].f, b = s[i].f, c = s[i + 1].f;
    if (a == 0.0 || b == 0.0 || c == 0.0) continue;
    if ((a > 0.0) != (b > 0.0) || (b > 0.0) != (c > 0.0)) continue;
    if (!(std::abs(b) < std::abs(a) && std::abs(b) <= std::abs(c))) continue;
    const double sg = b > 0.0 ? 1.0 : -1.0;
    const Sample& ref = s[i - 1];
    auto obj = [&](double z) { return sg * mt.eval(z, &ref).f; };
    const auto [zmin, fmin] = boost::math::tools::brent_find_minima(obj, s[i - 1].z, s[i + 1].z, 52);
    if (fmin > 0.0) continue;
    if (fmin == 0.0) {
      roots.push_back(zmin);
      continue;
    }
    roots.push_back(bisect_root(obj, s[i - 1].z, zmin, tol));
    roots.push_back(bisect_root(obj, zmin, s[i + 1].z, tol));
  }

  std::sort(roots.begin(), roots.end());
  std::vector<double> out;
  for (double r : roots)
    if (out.empty() || r - out.back() > 10.0 * tol) out.push_back(r);
  return out;
}

}  // namespace detail

std::vector<double> matching_roots(const Mat2& lambda, double mass, double k) {
  const Mat2 n = detail::remove_global_phase(lambda);
  return detail::scan_gap_roots(mass, k, [&n](double) { return n; });
}

std::vector<double> matching_oracle(const FiberContext& ctx) {
  if (ctx.coupling.mass == 0.0 && ctx.k == 0.0)
    throw Error(ErrorCode::DegenerateContext, "m = k = 0 is excluded");
  return matching_roots(transmission_matrix(ctx.coupling).lambda_matrix, ctx.coupling.mass, ctx.k);
}

}  // namespace dshell
