#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "dshell/mat2.hpp"

namespace dshell::detail {

/// Zeros in the open gap (-g, g), g = sqrt(m^2 + k^2), of the matching function
/// det[w+, T(z) w-], where w- decays to the left, w+ to the right and T(z) is
/// real-structured (real diagonal, imaginary off-diagonal).
std::vector<double> scan_gap_roots(double mass, double k, const std::function<Mat2(double)>& transfer,
                                   std::size_t grid = 4096);

/// Multiplies a (scalar) x (real-structured) matrix by the unit phase that makes
/// it real-structured.
Mat2 remove_global_phase(const Mat2& m);

}  // namespace dshell::detail
