#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "dshell/approx.hpp"
#include "dshell/errors.hpp"
#include "dshell/fiber.hpp"
#include "dshell/validation.hpp"

namespace dshell::cli {

namespace {

using nlohmann::json;

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::ConfiningRegime:
    case ErrorCode::UnsupportedRegime:
    case ErrorCode::SingularMatrix:
      return kExitUnsupported;
    default:
      return kExitConfig;
  }
}

json coupling_json(const Coupling& c) {
  return {{"eta", c.eta}, {"tau", c.tau}, {"lambda", c.lambda}, {"omega", c.omega}, {"mass", c.mass}};
}

json spinor_json(const Vec2& v) {
  return json::array({json::array({v[0].real(), v[0].imag()}), json::array({v[1].real(), v[1].imag()})});
}

Format format_or(const RunConfig& cfg, Format fallback, std::initializer_list<Format> allowed) {
  const Format f = cfg.format.value_or(fallback);
  if (std::find(allowed.begin(), allowed.end(), f) == allowed.end())
    throw Error(ErrorCode::InvalidArgument, "output format not supported by this command");
  return f;
}

CommandOutput cmd_bands(const RunConfig& cfg) {
  const Format f = format_or(cfg, Format::csv, {Format::csv, Format::svg});
  const BandTable t = sample_bands(cfg.coupling, cfg.kmin, cfg.kmax, cfg.samples);
  if (f == Format::csv) return {kExitOk, bands_csv(t)};
  return {kExitOk, bands_svg(t, spectrum_for(cfg.coupling))};
}

CommandOutput cmd_spectrum(const RunConfig& cfg) {
  format_or(cfg, Format::json, {Format::json});
  json j = spectrum_for(cfg.coupling).to_json();
  j["coupling"] = coupling_json(cfg.coupling);
  return {kExitOk, j.dump() + "\n"};
}

CommandOutput cmd_fiber(const RunConfig& cfg) {
  format_or(cfg, Format::json, {Format::json});
  const FiberContext ctx{cfg.coupling, cfg.k};
  const auto states = fiber_eigenvalues(ctx);
  const auto oracle = matching_oracle(ctx);
  bool agree = states.size() == oracle.size();
  json ev = json::array(), bs = json::array();
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& s = states[i];
    ev.push_back(s.energy);
    bs.push_back({{"energy", s.energy}, {"mu", s.mu}, {"left", spinor_json(s.left_spinor)},
                  {"right", spinor_json(s.right_spinor)}});
    if (agree && std::abs(s.energy - oracle[i]) > 1e-9 * std::max(1.0, ctx.gap_edge())) agree = false;
  }
  json j{{"coupling", coupling_json(cfg.coupling)}, {"k", cfg.k},           {"eigenvalues", ev},
         {"oracle", oracle},                       {"agree", agree},        {"bound_states", bs}};
  return {agree ? kExitOk : kExitValidation, j.dump() + "\n"};
}

CommandOutput cmd_approx(const RunConfig& cfg) {
  const Format f = format_or(cfg, Format::csv, {Format::csv, Format::json});
  const Coupling c = reduce_omega(cfg.coupling).reduced;
  const SweepResult r = convergence_sweep(c, cfg.k, cfg.eps, cfg.branch_l);
  const int code = r.monotone && r.final_below_threshold ? kExitOk : kExitValidation;
  if (f == Format::csv) {
    std::string s = "epsilon,energy,target,abs_error\n";
    for (const auto& row : r.rows)
      s += format_double(row.epsilon) + "," + format_double(row.energy) + "," + format_double(row.target) + "," +
           format_double(row.abs_error) + "\n";
    return {code, s};
  }
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"epsilon", row.epsilon},
                    {"energy", std::isfinite(row.energy) ? json(row.energy) : json(nullptr)},
                    {"target", row.target},
                    {"abs_error", std::isfinite(row.abs_error) ? json(row.abs_error) : json(nullptr)}});
  json j{{"coupling", coupling_json(cfg.coupling)},
         {"k", cfg.k},
         {"branch", r.branch_l},
         {"target", r.target},
         {"rows", rows},
         {"monotone", r.monotone},
         {"final_below_threshold", r.final_below_threshold},
         {"threshold", r.threshold},
         {"naive_limit", naive_limit(c, cfg.k)}};
  return {code, j.dump() + "\n"};
}

CommandOutput cmd_resolvent_check(const RunConfig& cfg) {
  format_or(cfg, Format::json, {Format::json});
  const FiberContext ctx{cfg.coupling, cfg.k};
  const cplx z = I;
  SampledField f = SampledField::symmetric(20.0, 1e-3);
  f.fill([](double x) { return std::exp(-0.5 * (x - 0.5) * (x - 0.5)) * Vec2{1.0, 0.5 * I}; });
  const KreinResult g = krein_resolvent_apply(ctx, z, f);
  const double ode = resolvent_ode_residual(ctx, z, f, g.field, 3.0 * f.step);
  const double trans = transmission_residual(cfg.coupling, g.trace_minus, g.trace_plus);
  json j{{"coupling", coupling_json(cfg.coupling)},
         {"k", cfg.k},
         {"z", json::array({z.real(), z.imag()})},
         {"ode_residual", ode},
         {"transmission_residual", trans}};
  bool ok = ode < 1e-6 && trans < 1e-8;
  const Coupling r = reduce_omega(cfg.coupling).reduced;
  if (r.d() > -4.0 + kRegimeTol) {
    NormCheckOptions opt;
    opt.branch_l = cfg.branch_l;
    const NormCheckResult n = resolvent_norm_bound_check(r, cfg.k, cfg.eps.front(), opt);
    j["norm_check"] = {{"epsilon", cfg.eps.front()}, {"estimate_k", n.estimate_k}, {"estimate_0", n.estimate_0},
                       {"ratio", n.ratio},           {"bound", n.bound},           {"passed", n.passed},
                       {"kind", "probe-set lower bound"}};
    ok = ok && n.passed;
  }
  j["passed"] = ok;
  return {ok ? kExitOk : kExitValidation, j.dump() + "\n"};
}

CommandOutput cmd_packet(const RunConfig& cfg) {
  format_or(cfg, Format::csv, {Format::csv});
  const Coupling c = reduce_omega(cfg.coupling).reduced;
  const auto bs = bands(c);
  const double lo = cfg.k0 - 6.0 * cfg.sigma_k, hi = cfg.k0 + 6.0 * cfg.sigma_k;
  const auto it = std::find_if(bs.begin(), bs.end(), [&](const Band& b) {
    return std::any_of(b.domain.begin(), b.domain.end(), [&](const OpenInterval& iv) { return iv.lo < lo && hi < iv.hi; });
  });
  if (it == bs.end()) throw Error(ErrorCode::DomainError, "no band contains the packet envelope");
  const PacketEvaluator ev(make_packet(*it, cfg.k0, cfg.sigma_k, 1.0, static_cast<std::size_t>(cfg.nodes)));
  std::string s = "x,y,t,abs_psi\n";
  for (int i = 0; i < cfg.grid; ++i) {
    const double x = -cfg.xmax + 2.0 * cfg.xmax * i / (cfg.grid - 1);
    for (int j = 0; j < cfg.grid; ++j) {
      const double y = -cfg.ymax + 2.0 * cfg.ymax * j / (cfg.grid - 1);
      s += format_double(x) + "," + format_double(y) + "," + format_double(cfg.t) + "," +
           format_double(norm(ev(x, y, cfg.t))) + "\n";
    }
  }
  return {kExitOk, s};
}

CommandOutput cmd_validate(const RunConfig& cfg) {
  std::string s;
  bool ok = true;
  for (const auto& r : run_validation_suite(cfg.seed)) {
    s += std::string(r.passed ? "PASS " : "FAIL ") + r.name + ": " + r.detail + "\n";
    ok = ok && r.passed;
  }
  return {ok ? kExitOk : kExitValidation, s};
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v == 0.0 ? 0.0 : v, std::chars_format::general, 17);
  return {buf, r.ptr};
}

void validate_config(const RunConfig& cfg) {
  if (cfg.samples < 2) throw Error(ErrorCode::InvalidArgument, "samples must be at least 2");
  if (!(cfg.kmin < cfg.kmax)) throw Error(ErrorCode::InvalidArgument, "kmin must be below kmax");
  if (cfg.eps.empty()) throw Error(ErrorCode::InvalidArgument, "epsilon list is empty");
  for (double e : cfg.eps)
    if (!(e > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon values must be positive");
  if (cfg.grid < 2) throw Error(ErrorCode::InvalidArgument, "grid must be at least 2");
  if (cfg.nodes < 256) throw Error(ErrorCode::InvalidArgument, "packet needs at least 256 nodes");
  if (!(cfg.sigma_k > 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma-k must be positive");
  for (double v : {cfg.coupling.eta, cfg.coupling.tau, cfg.coupling.lambda, cfg.coupling.omega, cfg.coupling.mass,
                   cfg.k, cfg.kmin, cfg.kmax})
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "parameters must be finite");
}

BandTable sample_bands(const Coupling& c, double kmin, double kmax, int samples) {
  BandTable t;
  t.coupling = c;
  const Coupling r = reduce_omega(c).reduced;
  const RegimeClassification cls = classify(r);
  std::optional<Family> fam;
  if (cls.is_confining) {
    fam = detect_family(r);
    if (!fam || *fam == Family::electrostatic)
      throw Error(ErrorCode::ConfiningRegime, "confining coupling outside the decoupled closed forms");
  }
  for (int i = 0; i < samples; ++i) {
    const double k = i == samples - 1 ? kmax : kmin + (kmax - kmin) * i / (samples - 1);
    std::optional<double> zp, zm;
    if (fam) {
      const double s = *fam == Family::lorentz ? r.tau : r.lambda;
      const auto v = family_band_values(*fam, s, r.mass, k);
      if (v.size() == 2) {
        zm = v[0];
        zp = v[1];
      }
    } else if (cls.is_case_d4) {
      if (branch_admissible(r, BranchId::single_d4, k)) zp = branch_value(r, BranchId::single_d4, k);
    } else {
      if (branch_admissible(r, BranchId::plus, k)) zp = branch_value(r, BranchId::plus, k);
      if (branch_admissible(r, BranchId::minus, k)) zm = branch_value(r, BranchId::minus, k);
    }
    t.k.push_back(k);
    t.z_plus.push_back(zp);
    t.z_minus.push_back(zm);
  }
  return t;
}

std::string bands_csv(const BandTable& t) {
  std::string s = "k,z_plus,z_minus,plus_admissible,minus_admissible\n";
  auto cell = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  for (std::size_t i = 0; i < t.k.size(); ++i)
    s += format_double(t.k[i]) + "," + cell(t.z_plus[i]) + "," + cell(t.z_minus[i]) + "," +
         (t.z_plus[i] ? "1" : "0") + "," + (t.z_minus[i] ? "1" : "0") + "\n";
  return s;
}

SpectrumDescription spectrum_for(const Coupling& c) {
  const Coupling r = reduce_omega(c).reduced;
  if (classify(r).is_confining) {
    const auto fam = detect_family(r);
    if (fam == Family::lorentz) return special_case_table(Family::lorentz, r.tau, r.mass);
    if (fam == Family::magnetic) return special_case_table(Family::magnetic, r.lambda, r.mass);
    throw Error(ErrorCode::ConfiningRegime, "confining coupling outside the decoupled closed forms");
  }
  return assemble_spectrum(r);
}

CommandOutput execute(const RunConfig& cfg, std::ostream& err) {
  try {
    validate_config(cfg);
    switch (cfg.command) {
      case Command::bands: return cmd_bands(cfg);
      case Command::spectrum: return cmd_spectrum(cfg);
      case Command::fiber: return cmd_fiber(cfg);
      case Command::approx: return cmd_approx(cfg);
      case Command::resolvent_check: return cmd_resolvent_check(cfg);
      case Command::packet: return cmd_packet(cfg);
      case Command::validate: return cmd_validate(cfg);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return {exit_code_for(e.code()), {}};
  }
  return {kExitConfig, {}};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Spectra of Dirac operators with delta-shell interactions on a line"};
  app.set_config("--config", "", "key = value file; command-line flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);

  std::string format;
  app.add_option("--eta", cfg.coupling.eta, "electrostatic strength");
  app.add_option("--tau", cfg.coupling.tau, "Lorentz scalar strength");
  app.add_option("--lambda", cfg.coupling.lambda, "magnetic strength");
  app.add_option("--omega", cfg.coupling.omega, "strength of the s1 term");
  app.add_option("--mass", cfg.coupling.mass, "mass m");
  app.add_option("--k", cfg.k, "transverse momentum");
  app.add_option("--kmin", cfg.kmin, "lower end of the k range");
  app.add_option("--kmax", cfg.kmax, "upper end of the k range");
  app.add_option("--samples", cfg.samples, "number of k samples");
  app.add_option("--eps", cfg.eps, "comma separated epsilon list")->delimiter(',');
  app.add_option("--out", cfg.out, "output file (default: standard output)");
  app.add_option("--format", format, "csv, json or svg")->check(CLI::IsMember({"csv", "json", "svg"}));
  app.add_option("--branch", cfg.branch_l, "renormalization branch l");
  app.add_option("--k0", cfg.k0, "packet center");
  app.add_option("--sigma-k", cfg.sigma_k, "packet width in k");
  app.add_option("--nodes", cfg.nodes, "packet quadrature nodes");
  app.add_option("--t", cfg.t, "packet time");
  app.add_option("--grid", cfg.grid, "packet grid points per axis");
  app.add_option("--xmax", cfg.xmax, "packet grid half-width in x");
  app.add_option("--ymax", cfg.ymax, "packet grid half-width in y");
  app.add_option("--seed", cfg.seed, "random seed for validate");

  struct Entry {
    const char* name;
    Command cmd;
    const char* help;
  };
  const Entry commands[] = {
      {"bands", Command::bands, "edge band table over a k range (csv or svg)"},
      {"spectrum", Command::spectrum, "ac and pp spectrum of the full operator (json)"},
      {"fiber", Command::fiber, "bound states of one fiber, checked against the matching oracle"},
      {"approx", Command::approx, "convergence of regularized potentials with renormalized strength"},
      {"resolvent-check", Command::resolvent_check, "residuals of the fiber resolvent on a test field"},
      {"packet", Command::packet, "edge wave packet |psi| on an (x, y) grid"},
      {"validate", Command::validate, "built-in self checks"}};
  for (const auto& e : commands) {
    const Command c = e.cmd;
    app.add_subcommand(e.name, e.help)->fallthrough()->callback([&cfg, c] { cfg.command = c; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }
  if (format == "csv") cfg.format = Format::csv;
  if (format == "json") cfg.format = Format::json;
  if (format == "svg") cfg.format = Format::svg;

  const CommandOutput r = execute(cfg, err);
  if (cfg.out.empty()) {
    out << r.body;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      err << "error: cannot open " << cfg.out << "\n";
      return kExitConfig;
    }
    f << r.body;
  }
  return r.exit_code;
}

}  // namespace dshell::cli
