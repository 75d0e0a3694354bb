#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dshell/coupling.hpp"
#include "dshell/fiber.hpp"
#include "dshell/interval_set.hpp"

namespace dshell {

enum class SpectralCase { thm_i, thm_ii, thm_iii };
const char* to_string(SpectralCase c);

/// Eigenvalue of the two-dimensional operator; always of infinite multiplicity.
struct PointEigenvalue {
  double value = 0.0;
  bool embedded = false;
};

struct SpectrumDescription {
  IntervalSet ac;
  std::vector<PointEigenvalue> pp;  // at most one entry
  SpectralCase case_tag = SpectralCase::thm_iii;
  // The singular continuous part is always empty and is not stored.

  nlohmann::json to_json() const;
};

/// Closure of the range of a non-constant band over one domain component.
Interval band_range(const Band& band, const OpenInterval& component);

/// Spectrum of the full operator from its fiber bands. Requires omega = 0.
SpectrumDescription assemble_spectrum(const Coupling& c);

enum class Family { electrostatic, lorentz, magnetic };
const char* to_string(Family f);

/// Coupling of a one-parameter family: (s,0,0), (0,s,0) or (0,0,s) with the given mass.
Coupling family_coupling(Family f, double strength, double mass);

/// Detects a pure electrostatic, Lorentz scalar or magnetic coupling with omega = 0.
std::optional<Family> detect_family(const Coupling& c);

/// Spectrum straight from the closed-form tables of the three families.
SpectrumDescription special_case_table(Family f, double strength, double mass);

/// Closed-form family bands at k: admissible eigenvalues in ascending order.
/// Also covers the confining members tau = +-2 and lambda = +-2, where the
/// interface decouples into two half-plane problems.
std::vector<double> family_band_values(Family f, double strength, double mass, double k);

/// Slope of a linear band. Throws NotLinear otherwise.
double group_velocity(const Band& band);

/// Gaussian superposition of edge states along one band.
struct WavePacket {
  Band band;
  double k0 = 0.0;
  double sigma_k = 0.3;
  double amplitude = 1.0;
  std::size_t nodes = 512;
  double k_lo = 0.0;
  double k_hi = 0.0;
};

/// Envelope truncated at k0 +- 6 sigma_k. Throws DomainError if that range leaves the band domain.
WavePacket make_packet(const Band& band, double k0, double sigma_k, double amplitude = 1.0,
                       std::size_t nodes = 512);

/// Precomputed quadrature of a packet; evaluation is reentrant.
class PacketEvaluator {
public:
  explicit PacketEvaluator(const WavePacket& p);
  /// psi(x, y, t) = int g(k) psi_k(x) e^{i(k y - z(k) t)} dk.
  Vec2 operator()(double x, double y, double t) const;

private:
  struct Node {
    double k;
    double weight;  // quadrature weight times envelope
    double energy;
    BoundState state;
  };
  std::vector<Node> nodes_;
};

Vec2 propagate_packet(const WavePacket& p, double x, double y, double t);

}  // namespace dshell
