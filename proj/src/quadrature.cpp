#include "quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <memory>

#include "dshell/errors.hpp"

namespace dshell::detail {

GaussLegendre gauss_legendre(std::size_t n, double a, double b) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "Gauss-Legendre needs at least one node");
  std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
      gsl_integration_glfixed_table_alloc(n), &gsl_integration_glfixed_table_free);
  if (!table) throw Error(ErrorCode::InvalidArgument, "Gauss-Legendre table allocation failed");
  GaussLegendre out;
  out.nodes.resize(n);
  out.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    gsl_integration_glfixed_point(a, b, i, &out.nodes[i], &out.weights[i], table.get());
  return out;
}

}  // namespace dshell::detail
