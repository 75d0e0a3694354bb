#include "dshell/validation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "dshell/approx.hpp"
#include "dshell/errors.hpp"
#include "dshell/fiber.hpp"
#include "dshell/spectrum.hpp"

namespace dshell {

namespace {

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

Coupling random_coupling(std::mt19937_64& rng, double omega_scale) {
  std::uniform_real_distribution<double> u(-3.0, 3.0), um(-2.0, 2.0), uo(-omega_scale, omega_scale);
  for (;;) {
    Coupling c{u(rng), u(rng), u(rng), uo(rng), um(rng)};
    if (std::abs(c.d() + 4.0) > 0.1) return c;
  }
}

Mat2 random_matrix(std::mt19937_64& rng, double r) {
  std::uniform_real_distribution<double> u(-r, r);
  return Mat2{cplx(u(rng), u(rng)), cplx(u(rng), u(rng)), cplx(u(rng), u(rng)), cplx(u(rng), u(rng))};
}

CheckResult check_exp_inverse(std::mt19937_64& rng) {
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Mat2 b = random_matrix(rng, 3.0);
    const Mat2 e = exp_closed(b), f = exp_closed(-1.0 * b);
    worst = std::max(worst, max_entry_diff(e * f, Mat2::identity()) / (e.max_abs() * f.max_abs()));
  }
  return {"mat2.exp_inverse", worst < 1e-12, "relative residual " + sci(worst)};
}

CheckResult check_pauli_roundtrip(std::mt19937_64& rng) {
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Mat2 a = random_matrix(rng, 5.0);
    worst = std::max(worst, max_entry_diff(PauliDecomposition::decompose(a).recompose(), a));
  }
  return {"mat2.pauli_roundtrip", worst < 1e-13, "max residual " + sci(worst)};
}

CheckResult check_oracle(std::mt19937_64& rng, double omega_scale, const char* name) {
  std::uniform_real_distribution<double> uk(-3.0, 3.0);
  double worst = 0.0;
  int count_mismatch = 0;
  for (int i = 0; i < 100; ++i) {
    const FiberContext ctx{random_coupling(rng, omega_scale), uk(rng)};
    const auto states = fiber_eigenvalues(ctx);
    const auto oracle = matching_oracle(ctx);
    if (states.size() != oracle.size()) {
      ++count_mismatch;
      continue;
    }
    for (std::size_t j = 0; j < states.size(); ++j)
      worst = std::max(worst, std::abs(states[j].energy - oracle[j]) / std::max(1.0, ctx.gap_edge()));
  }
  return {name, count_mismatch == 0 && worst < 1e-9,
          std::to_string(count_mismatch) + " count mismatches, max deviation " + sci(worst)};
}

CheckResult check_bound_state_transmission(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uk(-3.0, 3.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const FiberContext ctx{random_coupling(rng, 1.0), uk(rng)};
    for (const auto& s : fiber_eigenvalues(ctx)) {
      const double scale = norm(s.left_spinor) + norm(s.right_spinor);
      worst = std::max(worst, transmission_residual(ctx.coupling, s.left_spinor, s.right_spinor) / scale);
    }
  }
  return {"fiber.bound_state_transmission", worst < 1e-10, "relative residual " + sci(worst)};
}

CheckResult check_green_jump(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0), up(0.1, 3.0);
  double worst = 0.0;
  const Mat2 expected = I * pauli::s1();
  for (int i = 0; i < 100; ++i) {
    const Coupling c{0.0, 0.0, 0.0, 0.0, u(rng)};
    const GreenKernel g = green_kernel({c, u(rng)}, cplx(u(rng), up(rng)));
    worst = std::max(worst, max_entry_diff(g.limit(+1) - g.limit(-1), expected));
  }
  return {"fiber.green_jump", worst < 1e-12, "max residual " + sci(worst)};
}

CheckResult check_spectrum_contains_bands(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uk(-4.0, 4.0);
  int misses = 0, tested = 0;
  for (int i = 0; i < 40; ++i) {
    const Coupling c = random_coupling(rng, 0.0);
    const SpectrumDescription s = assemble_spectrum(c);
    for (const Band& b : bands(c)) {
      for (int j = 0; j < 20; ++j) {
        const double k = uk(rng);
        if (!b.in_domain(k)) continue;
        ++tested;
        const double z = b(k);
        const bool in_pp = std::any_of(s.pp.begin(), s.pp.end(),
                                       [&](const PointEigenvalue& p) { return std::abs(p.value - z) < 1e-9; });
        if (!in_pp && !s.ac.closure_contains(z, 1e-9 * std::max(1.0, std::abs(z)))) ++misses;
      }
    }
  }
  return {"spectrum.bands_inside", misses == 0,
          std::to_string(misses) + " of " + std::to_string(tested) + " band samples outside"};
}

CheckResult check_renormalization(std::mt19937_64& rng) {
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    Coupling c = random_coupling(rng, 0.0);
    if (c.d() <= -4.0) c = minus_four_over_d_partner(c);
    if (std::abs(c.d()) < 0.05 || c.d() <= -4.0 + 0.05) continue;
    const RenormalizedCoupling r = renormalize(c, i % 2);
    const Mat2 lhs = exp_closed(-1.0 * I * pauli::s1() * r.a_matrix);
    const TransmissionMatrix t = transmission_matrix(c);
    worst = std::max(worst, max_entry_diff(lhs, t.lambda_matrix) / std::max(1.0, t.lambda_matrix.max_abs()));
  }
  return {"approx.exp_identity", worst < 1e-10, "max residual " + sci(worst)};
}

CheckResult check_krein(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uk(-2.0, 2.0);
  double worst_ode = 0.0, worst_trans = 0.0;
  for (int i = 0; i < 4; ++i) {
    const FiberContext ctx{random_coupling(rng, 0.5), uk(rng)};
    SampledField f = SampledField::symmetric(15.0, 5e-3);
    f.fill([](double x) { return std::exp(-x * x) * Vec2{1.0, cplx(0.3, -0.2)}; });
    const cplx z(0.2, 1.0);
    const KreinResult g = krein_resolvent_apply(ctx, z, f);
    worst_ode = std::max(worst_ode, resolvent_ode_residual(ctx, z, f, g.field, 3.0 * f.step));
    worst_trans = std::max(worst_trans, transmission_residual(ctx.coupling, g.trace_minus, g.trace_plus));
  }
  return {"fiber.krein_resolvent", worst_ode < 1e-5 && worst_trans < 1e-8,
          "ode residual " + sci(worst_ode) + ", transmission residual " + sci(worst_trans)};
}

CheckResult check_family_tables() {
  double worst = 0.0;
  for (double s : {-3.0, -1.0, 0.5, 1.5, 3.0}) {
    for (double k : {-2.0, -0.5, 0.0, 0.7, 2.5}) {
      const Coupling c = family_coupling(Family::electrostatic, s, 1.0);
      if (std::abs(c.d() - 4.0) < 1e-9) continue;
      std::vector<double> ev;
      for (const auto& st : fiber_eigenvalues({c, k})) ev.push_back(st.energy);
      const auto closed = family_band_values(Family::electrostatic, s, 1.0, k);
      if (ev.size() != closed.size()) return {"spectrum.family_tables", false, "eigenvalue count mismatch"};
      for (std::size_t j = 0; j < ev.size(); ++j) worst = std::max(worst, std::abs(ev[j] - closed[j]));
    }
  }
  return {"spectrum.family_tables", worst < 1e-12, "max deviation " + sci(worst)};
}

}  // namespace

std::vector<CheckResult> run_validation_suite(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CheckResult> out;
  auto guarded = [&](const char* name, auto&& fn) {
    try {
      out.push_back(fn());
    } catch (const std::exception& e) {
      out.push_back({name, false, std::string("exception: ") + e.what()});
    }
  };
  guarded("mat2.exp_inverse", [&] { return check_exp_inverse(rng); });
  guarded("mat2.pauli_roundtrip", [&] { return check_pauli_roundtrip(rng); });
  guarded("fiber.oracle", [&] { return check_oracle(rng, 0.0, "fiber.oracle"); });
  guarded("fiber.oracle_omega", [&] { return check_oracle(rng, 1.5, "fiber.oracle_omega"); });
  guarded("fiber.bound_state_transmission", [&] { return check_bound_state_transmission(rng); });
  guarded("fiber.green_jump", [&] { return check_green_jump(rng); });
  guarded("fiber.krein_resolvent", [&] { return check_krein(rng); });
  guarded("spectrum.bands_inside", [&] { return check_spectrum_contains_bands(rng); });
  guarded("spectrum.family_tables", [] { return check_family_tables(); });
  guarded("approx.exp_identity", [&] { return check_renormalization(rng); });
  return out;
}

}  // namespace dshell
