#include <doctest.h>

#include <limits>
#include <numbers>
#include <random>

#include "dshell/approx.hpp"
#include "dshell/errors.hpp"
#include "oracles.hpp"

using namespace dshell;

namespace {

Coupling on_cone(double d, double rho, double phi, double sign) {
  return {sign * std::sqrt(d + rho * rho), rho * std::cos(phi), rho * std::sin(phi), 0.0, 1.0};
}

}  // namespace

TEST_CASE("renormalization factor") {
  CHECK(renormalization_factor(0.0) == 1.0);
  CHECK(renormalization_factor(1.0) == doctest::Approx(2.0 * std::atan(0.5)));
  CHECK(renormalization_factor(4.0, 1) == doctest::Approx(std::atan(1.0) + std::numbers::pi));
  CHECK(renormalization_factor(-1.0) == doctest::Approx(2.0 * std::atanh(0.5)));
  CHECK(renormalization_factor(-3.0) == doctest::Approx(2.0 / std::sqrt(3.0) * std::atanh(std::sqrt(3.0) / 2.0)));
  // Continuity at d = 0 for l = 0.
  CHECK(renormalization_factor(1e-10) == doctest::Approx(1.0));
  CHECK(renormalization_factor(-1e-10) == doctest::Approx(1.0));
  try {
    renormalize({0, 3, 0, 0, 1});
    FAIL("expected UnsupportedRegime");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedRegime);
  }
}

TEST_CASE("renormalized A reproduces Lambda through the Taylor exponential") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> ud(-3.9, 10.0), ur(0.0, 2.0), ua(0.0, 6.283);
  for (int i = 0; i < 300; ++i) {
    const double d = i % 10 == 0 ? 0.0 : ud(rng);
    const double rho = ur(rng);
    if (d + rho * rho < 0.0) continue;
    const Coupling c = on_cone(d, rho, ua(rng), i % 2 ? 1.0 : -1.0);
    for (int l : {0, 1, -1}) {
      if (d <= 0.0 && l != 0) continue;
      const RenormalizedCoupling r = renormalize(c, l);
      CHECK(r.branch_l == l);
      const Mat2 ref = oracle::taylor_exp(-I * (pauli::s1() * r.a_matrix));
      CHECK(max_entry_diff(ref, oracle::lambda_matrix(c)) < 1e-10 * std::max(1.0, ref.max_abs()));
      CHECK(r.eta_t == doctest::Approx(r.factor * c.eta));
      CHECK(r.tau_t == doctest::Approx(r.factor * c.tau));
      CHECK(r.lambda_t == doctest::Approx(r.factor * c.lambda));
      CHECK(PauliDecomposition::decompose(r.a_matrix).is_hermitian());
    }
  }
}

TEST_CASE("unrenormalized coupling keeps M") {
  const Coupling c{1.0, 0.3, -0.2, 0.0, 1.0};
  const auto r = unrenormalized(c);
  CHECK(r.factor == 1.0);
  CHECK(max_entry_diff(r.a_matrix, oracle::m_matrix(c)) == 0.0);
}

TEST_CASE("strip transfer matrix") {
  const Coupling c{1.0, 0.5, 0.3, 0.0, 1.0};
  RegularizedModel model{renormalize(c), 0.4, 1.0, 0.1};
  const cplx z(0.2, 0.0);
  const Mat2 b0 = I * pauli::s1() * (z * pauli::s0() - 0.4 * pauli::s2() - 1.0 * pauli::s3());
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    model.epsilon = eps;
    const Mat2 t = epsilon_transfer_matrix(model, z);
    const Mat2 ref = oracle::taylor_exp(cplx(eps) * b0 - I * (pauli::s1() * model.renorm.a_matrix));
    CHECK(max_entry_diff(t, ref) < 1e-12 * ref.max_abs());
  }
  // Converges to Lambda linearly in eps.
  double prev = std::numeric_limits<double>::infinity();
  const Mat2 lam = oracle::lambda_matrix(c);
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
    model.epsilon = eps;
    const double e = max_entry_diff(epsilon_transfer_matrix(model, z), lam);
    CHECK(e < prev);
    CHECK(e < 5.0 * eps);
    prev = e;
  }
}

TEST_CASE("convergence sweep") {
  const std::vector<double> eps{1e-1, 1e-2, 1e-3};
  const SweepResult s = convergence_sweep({1, 0, 0, 0, 1}, 0.0, eps);
  CHECK(s.target == doctest::Approx(-0.6));
  REQUIRE(s.rows.size() == 3);
  CHECK(s.monotone);
  CHECK(s.final_below_threshold);
  for (const auto& r : s.rows) {
    CHECK(r.target == s.target);
    CHECK(r.abs_error == doctest::Approx(std::abs(r.energy - r.target)));
  }
  // Error shrinks roughly linearly in eps.
  CHECK(s.rows[2].abs_error < 0.2 * s.rows[1].abs_error);
  CHECK_THROWS_AS(convergence_sweep({1, 1, 0, 0, 1}, 0.0, eps), Error);
  CHECK_THROWS_AS(convergence_sweep({0, 3, 0, 0, 1}, 0.0, eps), Error);
}

TEST_CASE("regularized bound states lie in the gap and approach the shell eigenvalues") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> uk(-2.0, 2.0);
  int tested = 0;
  for (int i = 0; i < 40 && tested < 15; ++i) {
    const Coupling c = oracle::random_coupling(rng, 0.0, -3.5);
    const double k = uk(rng);
    std::vector<double> shell;
    for (const auto& s : fiber_eigenvalues({c, k})) shell.push_back(s.energy);
    const double g = std::hypot(c.mass, k);
    bool clear = !shell.empty();
    for (double z : shell) clear = clear && g - std::abs(z) > 0.05 * g;
    if (!clear) continue;
    ++tested;
    const auto e = epsilon_bound_states({renormalize(c), k, c.mass, 1e-4});
    for (double z : e) CHECK(std::abs(z) < g);
    for (double z : shell) {
      double best = 1e9;
      for (double v : e) best = std::min(best, std::abs(v - z));
      CHECK(best < 1e-2);
    }
  }
  CHECK(tested >= 10);
}

TEST_CASE("naive limit equals the matching roots of exp(-i s1 M)") {
  for (const Coupling& c : {Coupling{1, 0, 0, 0, 1}, Coupling{0.5, 0.3, -0.4, 0, 0.7}, Coupling{-1.2, 0.2, 0.1, 0, 1}}) {
    const double k = 0.3;
    const auto got = naive_limit(c, k);
    const auto ref = matching_roots(oracle::taylor_exp(-I * (pauli::s1() * oracle::m_matrix(c))), c.mass, k);
    REQUIRE(got.size() == ref.size());
    for (std::size_t j = 0; j < got.size(); ++j) CHECK(got[j] == doctest::Approx(ref[j]).epsilon(1e-9));
  }
  // d = 0: renormalization is the identity, so the naive limit is the shell itself.
  const Coupling c0{1, 1, 0, 0, 1};
  const auto n0 = naive_limit(c0, 0.8);
  std::vector<double> shell;
  for (const auto& s : fiber_eigenvalues({c0, 0.8})) shell.push_back(s.energy);
  REQUIRE(n0.size() == shell.size());
  for (std::size_t j = 0; j < shell.size(); ++j) CHECK(n0[j] == doctest::Approx(shell[j]).epsilon(1e-9));
}

TEST_CASE("resolvent grid has the strip edges as nodes") {
  for (double eps : {0.1, 0.03, 1e-3}) {
    const SampledField g = resolvent_grid(5.0, eps, 2e-3);
    REQUIRE(g.size() % 2 == 1);
    const std::size_t c = g.size() / 2;
    CHECK(std::abs(g.x(c)) < 1e-12);
    const double r = (eps / 2.0) / g.step;
    CHECK(std::abs(r - std::round(r)) < 1e-9);
    CHECK(g.step <= 2e-3 + 1e-15);
    CHECK(g.x(g.size() - 1) >= 5.0 - g.step);
  }
}

TEST_CASE("regularized resolvent converges to the shell resolvent") {
  const Coupling c{1.0, 0.4, -0.3, 0.0, 0.8};
  const FiberContext ctx{c, 0.5};
  const cplx z = I;
  double prev = std::numeric_limits<double>::infinity();
  for (double eps : {0.2, 0.02, 0.002}) {
    SampledField f = resolvent_grid(12.0, eps, 2e-3);
    f.fill([](double x) { return std::exp(-(x - 0.7) * (x - 0.7)) * Vec2{1.0, cplx(0.2, 0.5)}; });
    const SampledField ge = epsilon_resolvent_apply({renormalize(c), ctx.k, c.mass, eps}, z, f);
    const KreinResult gd = krein_resolvent_apply(ctx, z, f);
    double diff = 0.0, nf = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
      diff += std::pow(norm(ge.values[j] - gd.field.values[j]), 2);
      nf += std::pow(norm(f.values[j]), 2);
    }
    const double rel = std::sqrt(diff / nf);
    CHECK(rel < prev);
    prev = rel;
  }
  CHECK(prev < 5e-3);
}

TEST_CASE("resolvent difference scales within (1 + |k|)^2") {
  NormCheckOptions opt;
  opt.probes = 6;
  opt.half_width = 12.0;
  const auto r = resolvent_norm_bound_check({1.0, 0.3, 0.2, 0.0, 1.0}, 1.5, 0.05, opt);
  CHECK(r.estimate_k > 0.0);
  CHECK(r.estimate_0 > 0.0);
  CHECK(r.bound == doctest::Approx(2.5 * 2.5 * 1.1));
  CHECK(r.ratio == doctest::Approx(r.estimate_k / r.estimate_0));
  CHECK(r.passed);
}
