#include "dshell/fiber.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dshell/errors.hpp"
#include "rootfind.hpp"

namespace dshell {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shared pieces of the z+- formulas: a = d/4 - 1, b = d/4 + 1,
// P = eta^2 + a^2, L = lambda k + tau m,
// q = (tau^2 + b^2) k^2 - 2 lambda tau m k + (lambda^2 + b^2) m^2.
struct Terms {
  double a, b, p, l, q, sq;
};

Terms terms(const Coupling& c, double k) {
  Terms t{};
  const double d = c.d();
  t.a = d / 4.0 - 1.0;
  t.b = d / 4.0 + 1.0;
  t.p = c.eta * c.eta + t.a * t.a;
  t.l = c.lambda * k + c.tau * c.mass;
  t.q = (c.tau * c.tau + t.b * t.b) * k * k - 2.0 * c.lambda * c.tau * c.mass * k +
        (c.lambda * c.lambda + t.b * t.b) * c.mass * c.mass;
  t.sq = std::sqrt(std::max(0.0, t.q));
  return t;
}

double sign_of(BranchId b) { return b == BranchId::minus ? -1.0 : 1.0; }

void require_no_omega(const Coupling& c) {
  if (c.omega != 0.0)
    throw Error(ErrorCode::InvalidArgument, "operation requires omega = 0; reduce first");
}

void require_not_confining(const Coupling& c) {
  if (classify(c).is_confining)
    throw Error(ErrorCode::ConfiningRegime, "d = -4 with omega = 0 decouples the half-planes");
}

bool near_d4(const Coupling& c) { return std::abs(c.d() - 4.0) <= kRegimeTol; }

// Admissible components of a z+- branch for m != 0. The zero set of the
// admissibility function is contained in the real roots of
// [a^2 lambda^2 - eta^2 (tau^2 + b^2)] k^2 + 2 lambda tau m (a^2 + eta^2) k
//   + [a^2 tau^2 - eta^2 (lambda^2 + b^2)] m^2,
// so the sign is fixed on each gap between them.
std::vector<OpenInterval> branch_domain(const Coupling& c, BranchId br) {
  const Terms t0 = terms(c, 0.0);
  const double a2 = t0.a * t0.a;
  const double e2 = c.eta * c.eta;
  const double m = c.mass;
  const double qa = a2 * c.lambda * c.lambda - e2 * (c.tau * c.tau + t0.b * t0.b);
  const double qb = 2.0 * c.lambda * c.tau * m * (a2 + e2);
  const double qc = (a2 * c.tau * c.tau - e2 * (c.lambda * c.lambda + t0.b * t0.b)) * m * m;
  const auto [count, roots] = detail::real_quadratic_roots(qa, qb, qc);

  std::vector<double> cuts;
  if (count >= 1) cuts.push_back(roots.first);
  if (count == 2 && roots.second != roots.first) cuts.push_back(roots.second);

  // Representative point of every gap between consecutive cuts.
  std::vector<double> reps;
  if (cuts.empty()) {
    reps.push_back(0.0);
  } else {
    reps.push_back(cuts.front() - (1.0 + std::abs(cuts.front())));
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) reps.push_back(0.5 * (cuts[i] + cuts[i + 1]));
    reps.push_back(cuts.back() + (1.0 + std::abs(cuts.back())));
  }
  std::vector<bool> ok;
  for (double r : reps) ok.push_back(branch_admissible(c, br, r));

  auto h = [&](double k) { return admissibility_function(c, br, k); };
  auto polish = [&](std::size_t i) {
    // Boundary between gap i and gap i + 1 sits at cuts[i].
    const double lo = reps[i], hi = reps[i + 1];
    if (h(lo) * h(hi) >= 0.0) return cuts[i];
    return detail::bisect_root(h, lo, hi, 1e-12 * std::max(1.0, std::abs(cuts[i])));
  };

  std::vector<OpenInterval> out;
  std::size_t i = 0;
  while (i < reps.size()) {
    if (!ok[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < reps.size() && ok[j + 1]) ++j;
    const double lo = i == 0 ? -kInf : polish(i - 1);
    const double hi = j + 1 == reps.size() ? kInf : polish(j);
    out.push_back({lo, hi});
    i = j + 1;
  }
  return out;
}

BoundState make_bound_state(const Coupling& c, const Mat2& lambda, double k, double z) {
  const double m = c.mass;
  BoundState s;
  s.energy = z;
  s.mu = std::sqrt(std::max(0.0, m * m + k * k - z * z));
  if (!(s.mu > 0.0)) throw Error(ErrorCode::DomainError, "energy on the gap edge");

  Vec2 left;
  if (std::abs(z + m) < 1e-10 * std::max(1.0, std::abs(m))) {
    left = k < 0.0 ? Vec2{0.0, 1.0} : Vec2{1.0, -I * m / k};
  } else {
    // Two proportional forms of the left-decaying spinor; keep the better conditioned one.
    const Vec2 p{z + m, I * (k - s.mu)};
    const Vec2 q{k + s.mu, I * (z - m)};
    left = norm(p) >= norm(q) ? p : q;
  }
  const Vec2 right = lambda * left;
  s.normalization = std::sqrt((std::norm(left[0]) + std::norm(left[1]) + std::norm(right[0]) +
                               std::norm(right[1])) /
                              (2.0 * s.mu));
  s.left_spinor = (1.0 / s.normalization) * left;
  s.right_spinor = (1.0 / s.normalization) * right;
  return s;
}

}  // namespace

double FiberContext::gap_edge() const {
  return std::hypot(coupling.mass, k);
}

TransmissionMatrix transmission_matrix(const Coupling& c) {
  require_not_confining(c);
  const Mat2 m = interaction_matrix(c);
  const Mat2 two_i_s1 = (2.0 * I) * pauli::s1();
  return {inverse(two_i_s1 - m) * (two_i_s1 + m), m};
}

double char_eq_residual(const FiberContext& ctx, double z) {
  const Coupling& c = ctx.coupling;
  require_no_omega(c);
  const double g = ctx.gap_edge();
  if (std::abs(z) > g) throw Error(ErrorCode::DomainError, "energy outside the gap");
  const double mu = std::sqrt(std::max(0.0, (g - z) * (g + z)));
  return mu * (c.d() - 4.0) - 4.0 * (c.eta * z + c.lambda * ctx.k + c.tau * c.mass);
}

const char* to_string(BranchId b) {
  switch (b) {
    case BranchId::single_d4: return "single_d4";
    case BranchId::plus: return "plus";
    case BranchId::minus: return "minus";
  }
  return "?";
}

double branch_value(const Coupling& c, BranchId br, double k) {
  if (br == BranchId::single_d4) return -(c.lambda * k + c.tau * c.mass) / c.eta;
  const Terms t = terms(c, k);
  const double s = sign_of(br);
  // Roots of P z^2 + 2 eta L z + L^2 - a^2 (m^2 + k^2); take the one without
  // cancellation directly and the other from the product of roots.
  const double s0 = -c.eta * t.l >= 0.0 ? 1.0 : -1.0;
  const double big = -c.eta * t.l + s0 * std::abs(t.a) * t.sq;
  if (s == s0 || big == 0.0) return big / t.p;
  const double prod = t.l * t.l - t.a * t.a * (c.mass * c.mass + k * k);
  return prod / big;
}

double branch_derivative(const Coupling& c, BranchId br, double k) {
  if (br == BranchId::single_d4) return -c.lambda / c.eta;
  const Terms t = terms(c, k);
  const double dq = 2.0 * (c.tau * c.tau + t.b * t.b) * k - 2.0 * c.lambda * c.tau * c.mass;
  return (-c.eta * c.lambda + sign_of(br) * std::abs(t.a) * dq / (2.0 * t.sq)) / t.p;
}

double admissibility_function(const Coupling& c, BranchId br, double k) {
  if (br == BranchId::single_d4) return (c.mass == 0.0 && k == 0.0) ? 0.0 : 1.0;
  const Terms t = terms(c, k);
  const double sa = t.a >= 0.0 ? 1.0 : -1.0;
  return sa * (std::abs(t.a) * t.l + sign_of(br) * c.eta * t.sq);
}

bool branch_admissible(const Coupling& c, BranchId br, double k) {
  if (br == BranchId::single_d4) return !(c.mass == 0.0 && k == 0.0);
  const Terms t = terms(c, k);
  const double h = admissibility_function(c, br, k);
  return h > 1e-12 * (std::abs(t.a * t.l) + std::abs(c.eta) * t.sq);
}

bool Band::in_domain(double k) const {
  return std::any_of(domain.begin(), domain.end(), [k](const OpenInterval& iv) { return iv.contains(k); });
}

std::vector<Band> bands(const Coupling& c) {
  require_no_omega(c);
  require_not_confining(c);
  std::vector<Band> out;
  if (near_d4(c)) {
    Band b;
    b.branch_id = BranchId::single_d4;
    b.coupling = c;
    if (c.mass == 0.0)
      b.domain = {{-kInf, 0.0}, {0.0, kInf}};
    else
      b.domain = {{-kInf, kInf}};
    b.is_linear = true;
    b.slope = -c.lambda / c.eta;
    b.is_constant = std::abs(c.lambda) <= kRegimeTol;
    if (b.is_constant) b.slope = 0.0;
    out.push_back(b);
    return out;
  }
  for (BranchId br : {BranchId::plus, BranchId::minus}) {
    if (c.mass == 0.0) {
      // Homogeneous in k: the admissibility sign is constant on each half-line
      // and the branch is linear there.
      for (double side : {-1.0, 1.0}) {
        if (!branch_admissible(c, br, side)) continue;
        Band b;
        b.branch_id = br;
        b.coupling = c;
        b.domain = {side < 0.0 ? OpenInterval{-kInf, 0.0} : OpenInterval{0.0, kInf}};
        b.is_linear = true;
        const double v = branch_derivative(c, br, side);
        b.is_constant = std::abs(v) <= kRegimeTol;
        b.slope = b.is_constant ? 0.0 : v;
        out.push_back(b);
      }
      continue;
    }
    Band b;
    b.branch_id = br;
    b.coupling = c;
    b.domain = branch_domain(c, br);
    if (!b.domain.empty()) out.push_back(b);
  }
  return out;
}

Vec2 BoundState::operator()(double x) const {
  return x < 0.0 ? std::exp(mu * x) * left_spinor : std::exp(-mu * x) * right_spinor;
}

std::vector<BoundState> fiber_eigenvalues(const FiberContext& ctx) {
  const Coupling& c = ctx.coupling;
  if (c.mass == 0.0 && ctx.k == 0.0)
    throw Error(ErrorCode::DegenerateContext, "m = k = 0 is excluded");
  require_not_confining(c);
  const GaugeReduction g = reduce_omega(c);
  const Coupling& r = g.reduced;
  require_not_confining(r);
  const Mat2 lambda = transmission_matrix(r).lambda_matrix;

  std::vector<double> zs;
  if (near_d4(r)) {
    zs.push_back(branch_value(r, BranchId::single_d4, ctx.k));
  } else {
    for (BranchId br : {BranchId::plus, BranchId::minus})
      if (branch_admissible(r, br, ctx.k)) zs.push_back(branch_value(r, br, ctx.k));
  }
  std::sort(zs.begin(), zs.end());

  std::vector<BoundState> out;
  for (double z : zs) {
    BoundState s = make_bound_state(r, lambda, ctx.k, z);
    s.left_spinor = g.phase * s.left_spinor;
    out.push_back(s);
  }
  return out;
}

cplx xi_branch(double mass, double k, cplx z) {
  cplx xi = std::sqrt(z * z - cplx(k * k + mass * mass));
  if (xi.imag() < 0.0 || (xi.imag() == 0.0 && std::signbit(xi.imag()))) xi = -xi;
  return xi;
}

Mat2 GreenKernel::at(double x) const {
  const double s = x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
  const cplx pref = I / (2.0 * xi) * std::exp(I * xi * std::abs(x));
  return pref * Mat2{z + mass, xi * s - I * k, xi * s + I * k, z - mass};
}

Mat2 GreenKernel::limit(int side) const {
  const double s = side > 0 ? 1.0 : -1.0;
  const cplx pref = I / (2.0 * xi);
  return pref * Mat2{z + mass, xi * s - I * k, xi * s + I * k, z - mass};
}

GreenKernel green_kernel(const FiberContext& ctx, cplx z) {
  const double m = ctx.coupling.mass;
  const double gap = ctx.gap_edge();
  if (z.imag() == 0.0) {
    const double zr = z.real();
    if (std::abs(zr) >= gap) throw Error(ErrorCode::SpectralPoint, "energy in the essential spectrum");
    if (!classify(ctx.coupling).is_confining && gap > 0.0) {
      for (const auto& s : fiber_eigenvalues(ctx))
        if (std::abs(s.energy - zr) <= 1e-12 * std::max(1.0, gap))
          throw Error(ErrorCode::SpectralPoint, "energy is a fiber eigenvalue");
    }
  }
  GreenKernel g;
  g.z = z;
  g.xi = xi_branch(m, ctx.k, z);
  g.k = ctx.k;
  g.mass = m;
  g.c_matrix = g.at(0.0);
  return g;
}

SampledField SampledField::symmetric(double half_width, double step) {
  if (!(step > 0.0) || !(half_width > 0.0))
    throw Error(ErrorCode::InvalidArgument, "grid needs positive width and step");
  const auto n = static_cast<std::size_t>(std::llround(half_width / step));
  SampledField f;
  f.step = step;
  f.x0 = -static_cast<double>(n) * step;
  f.values.assign(2 * n + 1, Vec2{});
  return f;
}

double default_krein_half_width(const FiberContext& ctx, cplx z) {
  return 20.0 / xi_branch(ctx.coupling.mass, ctx.k, z).imag();
}

}  // namespace dshell
