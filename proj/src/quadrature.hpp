#pragma once

#include <cstddef>
#include <vector>

#include "dshell/mat2.hpp"

namespace dshell::detail {

/// out[j] = int_{x_0}^{x_j} e^{kappa (x_j - y)} g(y) dy on a uniform grid of step h.
/// Even nodes use Simpson pairs; odd nodes add one cell with the three-point
/// half-cell rule (backward variant at the last node).
template <class T>
std::vector<T> cumulative_exp_simpson(const std::vector<T>& g, double h, cplx kappa) {
  const std::size_t n = g.size();
  std::vector<T> out(n, T{});
  if (n < 2) return out;
  const cplx e1 = std::exp(kappa * h);
  const cplx e2 = e1 * e1;
  const cplx einv = 1.0 / e1;
  if (n == 2) {
    out[1] = (h / 2.0) * (e1 * g[0] + g[1]);
    return out;
  }
  for (std::size_t j = 1; j < n; ++j) {
    if (j % 2 == 0) {
      out[j] = e2 * out[j - 2] + (h / 3.0) * (e2 * g[j - 2] + 4.0 * e1 * g[j - 1] + g[j]);
    } else if (j + 1 < n) {
      out[j] = e1 * out[j - 1] + (h / 12.0) * (5.0 * e1 * g[j - 1] + 8.0 * g[j] - einv * g[j + 1]);
    } else {
      out[j] = e1 * out[j - 1] + (h / 12.0) * (-e2 * g[j - 2] + 8.0 * e1 * g[j - 1] + 5.0 * g[j]);
    }
  }
  return out;
}

/// Same recursion run from the right end: out[j] = int_{x_j}^{x_{n-1}} e^{kappa (y - x_j)} g(y) dy.
template <class T>
std::vector<T> reverse_cumulative_exp_simpson(const std::vector<T>& g, double h, cplx kappa) {
  std::vector<T> rev(g.rbegin(), g.rend());
  auto out = cumulative_exp_simpson(rev, h, kappa);
  return std::vector<T>(out.rbegin(), out.rend());
}

/// Composite Simpson over the whole grid.
template <class T>
T simpson(const std::vector<T>& g, double h) {
  const auto c = cumulative_exp_simpson(g, h, cplx(0.0));
  return c.empty() ? T{} : c.back();
}

/// Gauss-Legendre nodes and weights on [a, b].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendre gauss_legendre(std::size_t n, double a, double b);

}  // namespace dshell::detail
