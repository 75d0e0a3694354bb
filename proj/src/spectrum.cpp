#include "dshell/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dshell/errors.hpp"
#include "rootfind.hpp"

namespace dshell {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// Behaviour of z+- as k -> side * inf: z ~ slope k + offset, where
// slope = (-eta lambda + s |a| B) / P and offset = (-eta tau m - s |a| lambda tau m / B) / P
// with B = sqrt(tau^2 + b^2) and s = (branch sign) * side.
struct Asymptote {
  double slope;
  double offset;
  bool flat;  // slope vanishes, so the limit is finite
};

Asymptote asymptote(const Coupling& c, BranchId br, double side) {
  const double d = c.d();
  const double a = std::abs(d / 4.0 - 1.0);
  const double b = d / 4.0 + 1.0;
  const double p = c.eta * c.eta + a * a;
  const double bb = std::sqrt(c.tau * c.tau + b * b);
  const double s = (br == BranchId::minus ? -1.0 : 1.0) * side;
  const double m = c.mass;
  Asymptote out;
  out.slope = (-c.eta * c.lambda + s * a * bb) / p;
  out.offset = (-c.eta * c.tau * m - s * a * c.lambda * c.tau * m / bb) / p;
  out.flat = std::abs(out.slope) <= 1e-12 * (std::abs(c.eta * c.lambda) + a * bb) / p;
  return out;
}

// Finite point beyond which the derivative has the sign of the asymptotic slope.
double far_point(const Band& band, double side, double slope_sign, double start) {
  const double base = std::isfinite(start) ? start : 0.0;
  double r = std::max(1.0, std::abs(base));
  for (int i = 0; i < 200; ++i) {
    const double k = side > 0.0 ? std::max(base, 0.0) + r : std::min(base, 0.0) - r;
    if (sgn(band.derivative(k)) == slope_sign) return k;
    r *= 2.0;
  }
  throw Error(ErrorCode::DomainError, "band derivative does not settle at infinity");
}

}  // namespace

const char* to_string(SpectralCase c) {
  switch (c) {
    case SpectralCase::thm_i: return "thm_i";
    case SpectralCase::thm_ii: return "thm_ii";
    case SpectralCase::thm_iii: return "thm_iii";
  }
  return "?";
}

const char* to_string(Family f) {
  switch (f) {
    case Family::electrostatic: return "electrostatic";
    case Family::lorentz: return "lorentz";
    case Family::magnetic: return "magnetic";
  }
  return "?";
}

nlohmann::json SpectrumDescription::to_json() const {
  auto endpoint = [](double v) -> nlohmann::json {
    if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
    return v;
  };
  nlohmann::json ac_json = nlohmann::json::array();
  for (const auto& iv : ac.intervals())
    ac_json.push_back({endpoint(iv.lo), endpoint(iv.hi), iv.lo_closed, iv.hi_closed});
  nlohmann::json pp_json = nlohmann::json::array();
  for (const auto& p : pp)
    pp_json.push_back({{"value", p.value}, {"embedded", p.embedded}, {"multiplicity", "infinite"}});
  return {{"ac", ac_json}, {"pp", pp_json}, {"sc", nlohmann::json::array()}, {"case", to_string(case_tag)}};
}

Interval band_range(const Band& band, const OpenInterval& comp) {
  if (band.is_constant) {
    const double v = band(std::isfinite(comp.lo) ? comp.lo : (std::isfinite(comp.hi) ? comp.hi : 0.0));
    return {v, v, true, true};
  }
  if (band.is_linear) {
    const double s = *band.slope;
    const double a = std::isfinite(comp.lo) ? band(comp.lo) : -sgn(s) * kInf;
    const double b = std::isfinite(comp.hi) ? band(comp.hi) : sgn(s) * kInf;
    return {std::min(a, b), std::max(a, b), true, true};
  }

  const Coupling& c = band.coupling;
  std::vector<double> values;
  double dlo, dhi;  // derivative at the ends (limits for infinite ends)
  if (std::isfinite(comp.lo)) {
    values.push_back(band(comp.lo));
    dlo = band.derivative(comp.lo);
  } else {
    const Asymptote as = asymptote(c, band.branch_id, -1.0);
    values.push_back(as.flat ? as.offset : -sgn(as.slope) * kInf);
    dlo = as.flat ? 0.0 : as.slope;
  }
  if (std::isfinite(comp.hi)) {
    values.push_back(band(comp.hi));
    dhi = band.derivative(comp.hi);
  } else {
    const Asymptote as = asymptote(c, band.branch_id, 1.0);
    values.push_back(as.flat ? as.offset : sgn(as.slope) * kInf);
    dhi = as.flat ? 0.0 : as.slope;
  }
  // Strict convexity or concavity leaves at most one critical point.
  if (dlo * dhi < 0.0) {
    const double lo = std::isfinite(comp.lo) ? comp.lo : far_point(band, -1.0, sgn(dlo), comp.hi);
    const double hi = std::isfinite(comp.hi) ? comp.hi : far_point(band, 1.0, sgn(dhi), comp.lo);
    auto f = [&](double k) { return band.derivative(k); };
    const double kc = detail::bisect_root(f, lo, hi, 1e-15 * std::max(1.0, std::abs(lo) + std::abs(hi)));
    values.push_back(band(kc));
  }
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  return {*mn, *mx, true, true};
}

SpectrumDescription assemble_spectrum(const Coupling& c) {
  if (c.omega != 0.0) throw Error(ErrorCode::InvalidArgument, "assemble_spectrum requires omega = 0");
  const RegimeClassification cls = classify(c);
  if (cls.is_confining) throw Error(ErrorCode::ConfiningRegime, "d = -4 with omega = 0");

  SpectrumDescription out;
  out.ac = IntervalSet::free_spectrum(c.mass);
  std::optional<double> point;
  for (const Band& b : bands(c)) {
    if (b.is_constant) {
      point = b.branch_id == BranchId::single_d4 ? -c.tau * c.mass / c.eta + 0.0 : 0.0;
      continue;
    }
    for (const auto& comp : b.domain) out.ac.add(band_range(b, comp));
  }
  out.ac.normalize();
  if (point) out.pp.push_back({*point, out.ac.closure_contains(*point, 1e-12)});
  if (cls.is_case_d4)
    out.case_tag = std::abs(c.lambda) <= kRegimeTol ? SpectralCase::thm_ii : SpectralCase::thm_i;
  else
    out.case_tag = SpectralCase::thm_iii;
  return out;
}

Coupling family_coupling(Family f, double strength, double mass) {
  Coupling c;
  c.mass = mass;
  switch (f) {
    case Family::electrostatic: c.eta = strength; break;
    case Family::lorentz: c.tau = strength; break;
    case Family::magnetic: c.lambda = strength; break;
  }
  return c;
}

std::optional<Family> detect_family(const Coupling& c) {
  if (c.omega != 0.0) return std::nullopt;
  if (c.tau == 0.0 && c.lambda == 0.0) return Family::electrostatic;
  if (c.eta == 0.0 && c.lambda == 0.0) return Family::lorentz;
  if (c.eta == 0.0 && c.tau == 0.0) return Family::magnetic;
  return std::nullopt;
}

SpectrumDescription special_case_table(Family f, double s, double mass) {
  const double am = std::abs(mass);
  SpectrumDescription out;
  out.case_tag = SpectralCase::thm_iii;
  const double ratio = (s * s - 4.0) / (s * s + 4.0);
  switch (f) {
    case Family::electrostatic:
      if (std::abs(std::abs(s) - 2.0) <= kRegimeTol) {
        out.ac = IntervalSet::free_spectrum(mass);
        out.pp.push_back({0.0, am == 0.0});
        out.case_tag = SpectralCase::thm_ii;
      } else if (s < -2.0) {
        out.ac = IntervalSet({{-kInf, -ratio * am, false, true}, {am, kInf, true, false}});
      } else if (s < 0.0) {
        out.ac = IntervalSet({{-kInf, -am, false, true}, {-ratio * am, kInf, true, false}});
      } else if (s == 0.0) {
        out.ac = IntervalSet::free_spectrum(mass);
      } else if (s < 2.0) {
        out.ac = IntervalSet({{-kInf, ratio * am, false, true}, {am, kInf, true, false}});
      } else {
        out.ac = IntervalSet({{-kInf, -am, false, true}, {ratio * am, kInf, true, false}});
      }
      break;
    case Family::lorentz:
      if (s * mass >= 0.0) {
        out.ac = IntervalSet::free_spectrum(mass);
      } else {
        const double e = std::abs(ratio) * am;
        out.ac = IntervalSet({{-kInf, -e, false, true}, {e, kInf, true, false}});
      }
      break;
    case Family::magnetic:
      out.ac = IntervalSet::free_spectrum(mass);
      break;
  }
  return out;
}

std::vector<double> family_band_values(Family f, double s, double mass, double k) {
  const double ratio = (s * s - 4.0) / (s * s + 4.0);
  std::vector<double> out;
  if (mass == 0.0 && k == 0.0) return out;
  switch (f) {
    case Family::electrostatic:
      if (s != 0.0) out.push_back(sgn(s) * ratio * std::hypot(mass, k));
      break;
    case Family::lorentz:
      if (s * mass < 0.0) {
        const double z = std::hypot(ratio * mass, k);
        out = {-z, z};
      }
      break;
    case Family::magnetic:
      if (s * k < 0.0) {
        const double z = std::hypot(mass, ratio * k);
        out = {-z, z};
      }
      break;
  }
  return out;
}

double group_velocity(const Band& band) {
  if (!band.is_linear || !band.slope) throw Error(ErrorCode::NotLinear, "band is not linear");
  return *band.slope;
}

}  // namespace dshell
