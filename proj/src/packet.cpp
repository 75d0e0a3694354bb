#include <algorithm>
#include <cmath>
#include <limits>

#include "dshell/errors.hpp"
#include "dshell/spectrum.hpp"
#include "quadrature.hpp"

namespace dshell {

namespace {

// L2 inner product of two bound states, from the closed-form exponential integrals.
cplx overlap(const BoundState& a, const BoundState& b) {
  return (dot(a.left_spinor, b.left_spinor) + dot(a.right_spinor, b.right_spinor)) / (a.mu + b.mu);
}

}  // namespace

WavePacket make_packet(const Band& band, double k0, double sigma_k, double amplitude, std::size_t nodes) {
  if (!(sigma_k > 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma_k must be positive");
  if (nodes < 256) throw Error(ErrorCode::InvalidArgument, "packet quadrature needs at least 256 nodes");
  WavePacket p;
  p.band = band;
  p.k0 = k0;
  p.sigma_k = sigma_k;
  p.amplitude = amplitude;
  p.nodes = nodes;
  p.k_lo = k0 - 6.0 * sigma_k;
  p.k_hi = k0 + 6.0 * sigma_k;
  const bool inside = std::any_of(band.domain.begin(), band.domain.end(), [&](const OpenInterval& iv) {
    return iv.lo < p.k_lo && p.k_hi < iv.hi;
  });
  if (!inside) throw Error(ErrorCode::DomainError, "packet envelope leaves the band domain");
  return p;
}

PacketEvaluator::PacketEvaluator(const WavePacket& p) {
  const auto gl = detail::gauss_legendre(p.nodes, p.k_lo, p.k_hi);
  nodes_.reserve(p.nodes);
  for (std::size_t i = 0; i < p.nodes; ++i) {
    const double k = gl.nodes[i];
    const double z = p.band(k);
    const auto states = fiber_eigenvalues({p.band.coupling, k});
    if (states.empty()) throw Error(ErrorCode::DomainError, "no bound state at a packet node");
    const auto best = std::min_element(states.begin(), states.end(), [z](const BoundState& a, const BoundState& b) {
      return std::abs(a.energy - z) < std::abs(b.energy - z);
    });
    BoundState s = *best;
    // Parallel transport: make each state's overlap with its predecessor real and positive.
    if (!nodes_.empty()) {
      const cplx o = overlap(nodes_.back().state, s);
      if (std::abs(o) > 0.0) {
        const cplx ph = std::conj(o) / std::abs(o);
        s.left_spinor = ph * s.left_spinor;
        s.right_spinor = ph * s.right_spinor;
      }
    }
    const double env = p.amplitude * std::exp(-0.5 * std::pow((k - p.k0) / p.sigma_k, 2));
    nodes_.push_back({k, gl.weights[i] * env, s.energy, s});
  }
}

Vec2 PacketEvaluator::operator()(double x, double y, double t) const {
  Vec2 acc{};
  for (const auto& n : nodes_) {
    const cplx ph = n.weight * std::exp(I * (n.k * y - n.energy * t));
    acc = acc + ph * n.state(x);
  }
  return acc;
}

Vec2 propagate_packet(const WavePacket& p, double x, double y, double t) {
  return PacketEvaluator(p)(x, y, t);
}

}  // namespace dshell
