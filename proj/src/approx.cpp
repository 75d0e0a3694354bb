#include "dshell/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>

#include "dshell/errors.hpp"
#include "quadrature.hpp"
#include "root_scan.hpp"

namespace dshell {

namespace {

void require_no_omega(const Coupling& c) {
  if (c.omega != 0.0)
    throw Error(ErrorCode::InvalidArgument, "approximation requires omega = 0; reduce first");
}

Mat2 a_matrix(double eta, double tau, double lambda) {
  return {eta + tau, -I * lambda, I * lambda, eta - tau};
}

// Eigenvector of B0 = i s1 (z - k s2 - m s3) = [[k, i(z+m)], [i(z-m), -k]] for eigenvalue ev.
Vec2 free_eigenvector(double m, double k, cplx z, cplx ev) {
  const Vec2 p{I * (z + m), ev - k};
  const Vec2 q{k + ev, I * (z - m)};
  const Vec2 v = norm(p) >= norm(q) ? p : q;
  return (1.0 / norm(v)) * v;
}

Mat2 columns(const Vec2& a, const Vec2& b) { return {a[0], b[0], a[1], b[1]}; }

cplx det2(const Vec2& a, const Vec2& b) { return a[0] * b[1] - a[1] * b[0]; }

// Solution of u' = B u on the line where B = B0 outside (-a, a) and B = B_in
// inside; for a = 0 the passage through 0 is the jump u(0+) = T u(0-).
// The resolvent is assembled by variation of parameters from the Jost
// solutions phi_L (decaying at -inf) and phi_R (decaying at +inf).
class JostSolver {
public:
  JostSolver(double m, double k, cplx z, double a, const Mat2& b_in, const Mat2& transfer)
      : a_(a), b_in_(b_in) {
    const cplx xi = xi_branch(m, k, z);
    mu_ = -I * xi;  // Re mu = Im xi > 0
    wm_ = free_eigenvector(m, k, z, mu_);
    wp_ = free_eigenvector(m, k, z, -mu_);
    const Vec2 tw = transfer * wm_;
    const Vec2 ab = inverse(columns(wp_, wm_)) * tw;
    alpha_ = ab[0];
    beta_ = ab[1];
    const Vec2 tinv = inverse(transfer) * wp_;
    const Vec2 gd = inverse(columns(wm_, wp_)) * tinv;
    gamma_ = gd[0];
    delta_ = gd[1];
    wronskian_left_ = delta_ * det2(wm_, wp_);
    wronskian_right_ = beta_ * det2(wm_, wp_);
  }

  // Region: -1 left of the strip, 0 inside, +1 right of it.
  Vec2 phi_left(double x, int region) const {
    if (region < 0) return std::exp(mu_ * (x + a_)) * wm_;
    if (region == 0) return exp_closed((x + a_) * b_in_) * wm_;
    return alpha_ * std::exp(-mu_ * (x - a_)) * wp_ + beta_ * std::exp(mu_ * (x - a_)) * wm_;
  }

  Vec2 phi_right(double x, int region) const {
    if (region > 0) return std::exp(-mu_ * (x - a_)) * wp_;
    if (region == 0) return exp_closed((x - a_) * b_in_) * wp_;
    return gamma_ * std::exp(mu_ * (x + a_)) * wm_ + delta_ * std::exp(-mu_ * (x + a_)) * wp_;
  }

  // det[phi_L, phi_R]; constant on each side, and across the strip when det T = 1.
  cplx wronskian(int region) const { return region > 0 ? wronskian_right_ : wronskian_left_; }

private:
  double a_;
  Mat2 b_in_;
  cplx mu_;
  Vec2 wm_, wp_;
  cplx alpha_, beta_, gamma_, delta_;
  cplx wronskian_left_, wronskian_right_;
};

struct Segment {
  std::size_t i0, i1;
  int region;
};

struct JostOutput {
  std::vector<Vec2> values;
  // Values at every break node as seen from the left and right segments.
  std::vector<std::pair<Vec2, Vec2>> break_traces;
};

JostOutput jost_apply(const JostSolver& js, const SampledField& f, const std::vector<Segment>& segs) {
  const double h = f.step;
  const std::size_t ns = segs.size();

  // Per segment: cumulative integrals of row_R s (from the left) and row_L s (to the right).
  std::vector<std::vector<cplx>> cum_r(ns), cum_l(ns);
  std::vector<cplx> tot_r(ns), tot_l(ns);
  for (std::size_t s = 0; s < ns; ++s) {
    const auto& sg = segs[s];
    const cplx w = js.wronskian(sg.region);
    std::vector<cplx> ir, il;
    for (std::size_t j = sg.i0; j <= sg.i1; ++j) {
      const double x = f.x(j);
      const Vec2 src{I * f.values[j][1], I * f.values[j][0]};  // i s1 f
      const Vec2 pl = js.phi_left(x, sg.region);
      const Vec2 pr = js.phi_right(x, sg.region);
      ir.push_back((-pl[1] * src[0] + pl[0] * src[1]) / w);
      il.push_back((pr[1] * src[0] - pr[0] * src[1]) / w);
    }
    cum_r[s] = detail::cumulative_exp_simpson(ir, h, 0.0);
    cum_l[s] = detail::reverse_cumulative_exp_simpson(il, h, 0.0);
    tot_r[s] = cum_r[s].back();
    tot_l[s] = cum_l[s].front();
  }

  JostOutput out;
  out.values.assign(f.size(), Vec2{});
  cplx before_r = 0.0;
  // Suffix sums built from the right so the last segment sees exactly 0; any
  // residue there would multiply the growing branch of phi_left.
  std::vector<cplx> suffix_l(ns, 0.0);
  for (std::size_t s = ns - 1; s > 0; --s) suffix_l[s - 1] = suffix_l[s] + tot_l[s];
  std::vector<Vec2> right_end(ns), left_end(ns);
  for (std::size_t s = 0; s < ns; ++s) {
    const auto& sg = segs[s];
    const cplx after_l = suffix_l[s];
    for (std::size_t j = sg.i0; j <= sg.i1; ++j) {
      const double x = f.x(j);
      const cplx cr = before_r + cum_r[s][j - sg.i0];
      const cplx cl = -(cum_l[s][j - sg.i0] + after_l);
      const Vec2 u = cl * js.phi_left(x, sg.region) + cr * js.phi_right(x, sg.region);
      out.values[j] = u;
      if (j == sg.i0) left_end[s] = u;
      if (j == sg.i1) right_end[s] = u;
    }
    before_r += tot_r[s];
  }
  for (std::size_t s = 0; s + 1 < ns; ++s) {
    out.break_traces.emplace_back(right_end[s], left_end[s + 1]);
    out.values[segs[s].i1] = 0.5 * (right_end[s] + left_end[s + 1]);
  }
  return out;
}

Mat2 free_generator(double m, double k, cplx z) {
  return I * pauli::s1() * (z * pauli::s0() - k * pauli::s2() - m * pauli::s3());
}

std::size_t center_index(const SampledField& f) {
  const std::size_t n = f.size();
  if (n < 3 || n % 2 == 0) throw Error(ErrorCode::InvalidArgument, "grid needs an odd node count");
  const std::size_t c = n / 2;
  if (std::abs(f.x(c)) > 1e-9 * f.step) throw Error(ErrorCode::InvalidArgument, "grid must be symmetric about 0");
  return c;
}

double l2_norm_sq(const std::vector<Vec2>& v, double h) {
  std::vector<double> a;
  a.reserve(v.size());
  for (const auto& x : v) a.push_back(std::norm(x[0]) + std::norm(x[1]));
  std::vector<cplx> ac(a.begin(), a.end());
  return detail::simpson(ac, h).real();
}

}  // namespace

double renormalization_factor(double d, int l) {
  if (std::abs(d) <= kRegimeTol) return 1.0;
  if (d > 0.0) {
    const double r = std::sqrt(d);
    return 2.0 / r * (std::atan(0.5 * r) + l * std::numbers::pi);
  }
  if (d + 4.0 <= kRegimeTol)
    throw Error(ErrorCode::UnsupportedRegime,
                "renormalization needs d > -4; map the coupling with the -4/d partner first");
  const double r = std::sqrt(-d);
  return 2.0 / r * std::atanh(0.5 * r);
}

RenormalizedCoupling renormalize(const Coupling& c, int l) {
  require_no_omega(c);
  RenormalizedCoupling rc;
  rc.source = c;
  rc.branch_l = l;
  rc.factor = renormalization_factor(c.d(), l);
  rc.eta_t = rc.factor * c.eta;
  rc.tau_t = rc.factor * c.tau;
  rc.lambda_t = rc.factor * c.lambda;
  rc.a_matrix = a_matrix(rc.eta_t, rc.tau_t, rc.lambda_t);
  const Mat2 e = exp_closed((-I) * pauli::s1() * rc.a_matrix);
  const Mat2 lam = transmission_matrix(c).lambda_matrix;
  if (max_entry_diff(e, lam) > 1e-6 * std::max(1.0, rc.a_matrix.max_abs()))
    throw std::logic_error("renormalized potential does not reproduce the transmission matrix");
  return rc;
}

RenormalizedCoupling unrenormalized(const Coupling& c) {
  require_no_omega(c);
  RenormalizedCoupling rc;
  rc.source = c;
  rc.eta_t = c.eta;
  rc.tau_t = c.tau;
  rc.lambda_t = c.lambda;
  rc.a_matrix = a_matrix(c.eta, c.tau, c.lambda);
  return rc;
}

Mat2 epsilon_transfer_matrix(const RegularizedModel& model, cplx z) {
  const Mat2 b0 = free_generator(model.mass, model.k, z);
  return exp_closed(model.epsilon * b0 - I * pauli::s1() * model.renorm.a_matrix);
}

std::vector<double> epsilon_bound_states(const RegularizedModel& model) {
  if (model.mass == 0.0 && model.k == 0.0) throw Error(ErrorCode::DegenerateContext, "m = k = 0 is excluded");
  if (!(model.epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  return detail::scan_gap_roots(model.mass, model.k,
                                [&model](double z) { return epsilon_transfer_matrix(model, z); });
}

SweepResult convergence_sweep(const Coupling& c, double k, const std::vector<double>& eps_list, int l,
                              double threshold, std::size_t target_index) {
  require_no_omega(c);
  const RenormalizedCoupling rc = renormalize(c, l);
  const auto shell = fiber_eigenvalues({c, k});
  if (shell.size() <= target_index) throw Error(ErrorCode::NoBoundState, "shell fiber has no such eigenvalue");
  SweepResult r;
  r.target = shell[target_index].energy;
  r.branch_l = l;
  r.threshold = threshold;
  for (double eps : eps_list) {
    if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
    const auto roots = epsilon_bound_states({rc, k, c.mass, eps});
    SweepRow row{eps, std::numeric_limits<double>::quiet_NaN(), r.target, std::numeric_limits<double>::infinity()};
    for (double z : roots)
      if (std::abs(z - r.target) < row.abs_error) {
        row.energy = z;
        row.abs_error = std::abs(z - r.target);
      }
    r.rows.push_back(row);
  }
  auto sorted = r.rows;
  std::sort(sorted.begin(), sorted.end(), [](const SweepRow& a, const SweepRow& b) { return a.epsilon > b.epsilon; });
  r.monotone = !sorted.empty();
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (!(sorted[i].abs_error < sorted[i - 1].abs_error)) r.monotone = false;
  r.final_below_threshold = !sorted.empty() && sorted.back().abs_error < threshold;
  return r;
}

std::vector<double> naive_limit(const Coupling& c, double k) {
  require_no_omega(c);
  const Mat2 lam = exp_closed((-I) * pauli::s1() * interaction_matrix(c));
  return matching_roots(lam, c.mass, k);
}

SampledField resolvent_grid(double half_width, double eps, double max_step) {
  if (!(eps > 0.0) || !(max_step > 0.0) || !(half_width > eps))
    throw Error(ErrorCode::InvalidArgument, "invalid resolvent grid parameters");
  const double a = 0.5 * eps;
  const double n_half = std::max(8.0, std::ceil(a / max_step));
  const double h = a / n_half;
  const double n = std::ceil(half_width / h);
  SampledField f;
  f.step = h;
  f.x0 = -n * h;
  f.values.assign(2 * static_cast<std::size_t>(n) + 1, Vec2{});
  return f;
}

SampledField epsilon_resolvent_apply(const RegularizedModel& model, cplx z, const SampledField& f) {
  if (z.imag() == 0.0) throw Error(ErrorCode::DomainError, "resolvent needs z off the real axis");
  const std::size_t c = center_index(f);
  const double a = 0.5 * model.epsilon;
  const double nh = std::round(a / f.step);
  if (nh < 1.0 || std::abs(nh * f.step - a) > 1e-9 * f.step)
    throw Error(ErrorCode::InvalidArgument, "grid step must divide epsilon / 2");
  const auto ih = static_cast<std::size_t>(nh);
  if (ih >= c) throw Error(ErrorCode::InvalidArgument, "grid narrower than the strip");
  const Mat2 b0 = free_generator(model.mass, model.k, z);
  const Mat2 b_in = b0 - (1.0 / model.epsilon) * (I * pauli::s1() * model.renorm.a_matrix);
  const JostSolver js(model.mass, model.k, z, a, b_in, epsilon_transfer_matrix(model, z));
  const std::vector<Segment> segs{{0, c - ih, -1}, {c - ih, c + ih, 0}, {c + ih, f.size() - 1, 1}};
  SampledField out = f;
  out.values = jost_apply(js, f, segs).values;
  return out;
}

KreinResult jump_resolvent_apply(const FiberContext& ctx, cplx z, const SampledField& f) {
  if (z.imag() == 0.0) throw Error(ErrorCode::DomainError, "resolvent needs z off the real axis");
  const std::size_t c = center_index(f);
  const Mat2 lam = transmission_matrix(ctx.coupling).lambda_matrix;
  const JostSolver js(ctx.coupling.mass, ctx.k, z, 0.0, Mat2{}, lam);
  const std::vector<Segment> segs{{0, c, -1}, {c, f.size() - 1, 1}};
  const JostOutput jo = jost_apply(js, f, segs);
  KreinResult r;
  r.center = c;
  r.field = f;
  r.field.values = jo.values;
  r.trace_minus = jo.break_traces[0].first;
  r.trace_plus = jo.break_traces[0].second;
  return r;
}

double resolvent_difference_estimate(const Coupling& c, double k, double eps, const NormCheckOptions& opt) {
  require_no_omega(c);
  const RenormalizedCoupling rc = renormalize(c, opt.branch_l);
  const RegularizedModel model{rc, k, c.mass, eps, Profile::unit_square};
  const FiberContext ctx{c, k};
  const cplx z = I;
  SampledField f = resolvent_grid(opt.half_width, eps, opt.max_step);
  const std::size_t ctr = f.size() / 2;
  const auto ih = static_cast<std::size_t>(std::llround(0.5 * eps / f.step));
  const double h = f.step;

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> centre(-2.0, 2.0), width(0.3, 1.5), amp(-1.0, 1.0);
  double best = 0.0;
  for (int p = 0; p < opt.probes; ++p) {
    const double x0 = centre(rng);
    const double s = width(rng);
    const Vec2 v{cplx(amp(rng), amp(rng)), cplx(amp(rng), amp(rng))};
    f.fill([&](double x) { return std::exp(-0.5 * (x - x0) * (x - x0) / (s * s)) * v; });
    const SampledField re = epsilon_resolvent_apply(model, z, f);
    const KreinResult rd = krein_resolvent_apply(ctx, z, f);

    std::vector<Vec2> diff(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) diff[j] = re.values[j] - rd.field.values[j];
    // The shell solution jumps at 0, so integrate each side of every break separately.
    auto piece = [&](std::size_t i0, std::size_t i1, std::optional<Vec2> first, std::optional<Vec2> last) {
      std::vector<Vec2> seg(diff.begin() + static_cast<long>(i0), diff.begin() + static_cast<long>(i1) + 1);
      if (first) seg.front() = *first;
      if (last) seg.back() = *last;
      return l2_norm_sq(seg, h);
    };
    const Vec2 dm = re.values[ctr] - rd.trace_minus;
    const Vec2 dp = re.values[ctr] - rd.trace_plus;
    const double dn = piece(0, ctr - ih, {}, {}) + piece(ctr - ih, ctr, {}, dm) + piece(ctr, ctr + ih, dp, {}) +
                      piece(ctr + ih, f.size() - 1, {}, {});
    const double fn = l2_norm_sq(f.values, h);
    best = std::max(best, std::sqrt(dn / fn));
  }
  return best;
}

NormCheckResult resolvent_norm_bound_check(const Coupling& c, double k, double eps, const NormCheckOptions& opt) {
  NormCheckResult r;
  r.estimate_k = resolvent_difference_estimate(c, k, eps, opt);
  r.estimate_0 = k == 0.0 ? r.estimate_k : resolvent_difference_estimate(c, 0.0, eps, opt);
  r.ratio = r.estimate_k / r.estimate_0;
  r.bound = (1.0 + std::abs(k)) * (1.0 + std::abs(k)) * 1.1;
  r.passed = r.ratio <= r.bound;
  return r;
}

}  // namespace dshell
