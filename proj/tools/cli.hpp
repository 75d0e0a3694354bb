#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dshell/coupling.hpp"
#include "dshell/spectrum.hpp"

namespace dshell::cli {

enum class Command { bands, spectrum, fiber, approx, resolvent_check, packet, validate };
enum class Format { csv, json, svg };

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitUnsupported = 3;
inline constexpr int kExitValidation = 4;

struct RunConfig {
  Command command = Command::validate;
  Coupling coupling;
  double k = 0.0;
  double kmin = -3.0;
  double kmax = 3.0;
  int samples = 601;
  std::vector<double> eps{1e-1, 1e-2, 1e-3};
  std::string out;  // empty: standard output
  std::optional<Format> format;
  int branch_l = 0;
  // packet
  double k0 = 0.0;
  double sigma_k = 0.3;
  int nodes = 512;
  double t = 0.0;
  int grid = 64;
  double xmax = 5.0;
  double ymax = 10.0;
  std::uint64_t seed = 7;
};

/// Throws Error(InvalidArgument) when the ranges are inconsistent.
void validate_config(const RunConfig& cfg);

/// Parses argv (flags override an optional --config key=value file) and runs the command.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct CommandOutput {
  int exit_code = kExitOk;
  std::string body;
};

/// Runs an already parsed configuration. Errors are mapped to exit codes.
CommandOutput execute(const RunConfig& cfg, std::ostream& err);

/// General format with 17 significant digits; exact round trip.
std::string format_double(double v);

/// Band samples on a uniform k grid; columns hold admissible values only.
struct BandTable {
  Coupling coupling;
  std::vector<double> k;
  std::vector<std::optional<double>> z_plus;  // also the single band when d = 4
  std::vector<std::optional<double>> z_minus;
};

/// Throws ConfiningRegime for confining couplings outside the two decoupled families.
BandTable sample_bands(const Coupling& c, double kmin, double kmax, int samples);
std::string bands_csv(const BandTable& t);

/// Spectrum of the full operator, reducing omega first. Confining members of the
/// Lorentz and magnetic families use the closed-form tables.
SpectrumDescription spectrum_for(const Coupling& c);

/// 800x600 SVG: shaded bulk, one path per band branch, spectrum strip.
std::string bands_svg(const BandTable& t, const SpectrumDescription& spectrum);

}  // namespace dshell::cli
