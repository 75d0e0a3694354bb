#include "dshell/mat2.hpp"

#include <algorithm>
#include <cmath>

#include "dshell/errors.hpp"

namespace dshell {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

Mat2::Mat2(cplx a11, cplx a12, cplx a21, cplx a22) : e_{a11, a12, a21, a22} {
  for (const auto& z : e_)
    if (!finite(z)) throw Error(ErrorCode::InvalidArgument, "non-finite matrix entry");
}

double Mat2::max_abs() const {
  double m = 0.0;
  for (const auto& z : e_) m = std::max(m, std::abs(z));
  return m;
}

Mat2 Mat2::adjoint() const {
  return {std::conj(e_[0]), std::conj(e_[2]), std::conj(e_[1]), std::conj(e_[3])};
}

Mat2 Mat2::transpose() const { return {e_[0], e_[2], e_[1], e_[3]}; }

Mat2 operator+(const Mat2& a, const Mat2& b) {
  return {a.e_[0] + b.e_[0], a.e_[1] + b.e_[1], a.e_[2] + b.e_[2], a.e_[3] + b.e_[3]};
}

Mat2 operator-(const Mat2& a, const Mat2& b) {
  return {a.e_[0] - b.e_[0], a.e_[1] - b.e_[1], a.e_[2] - b.e_[2], a.e_[3] - b.e_[3]};
}

Mat2 operator-(const Mat2& a) { return {-a.e_[0], -a.e_[1], -a.e_[2], -a.e_[3]}; }

Mat2 operator*(const Mat2& a, const Mat2& b) {
  const auto& x = a.e_;
  const auto& y = b.e_;
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
          x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

Mat2 operator*(cplx s, const Mat2& a) {
  return {s * a.e_[0], s * a.e_[1], s * a.e_[2], s * a.e_[3]};
}

Vec2 operator*(const Mat2& a, const Vec2& v) {
  return {a.e_[0] * v[0] + a.e_[1] * v[1], a.e_[2] * v[0] + a.e_[3] * v[1]};
}

namespace pauli {
Mat2 s0() { return Mat2::identity(); }
Mat2 s1() { return {0.0, 1.0, 1.0, 0.0}; }
Mat2 s2() { return {0.0, -I, I, 0.0}; }
Mat2 s3() { return {1.0, 0.0, 0.0, -1.0}; }
Mat2 sigma(int j) {
  switch (j) {
    case 0: return s0();
    case 1: return s1();
    case 2: return s2();
    case 3: return s3();
  }
  throw Error(ErrorCode::InvalidArgument, "Pauli index must be 0..3");
}
}  // namespace pauli

Mat2 multiply(const Mat2& a, const Mat2& b) { return a * b; }

cplx det(const Mat2& a) { return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0); }

cplx trace(const Mat2& a) { return a(0, 0) + a(1, 1); }

Mat2 inverse(const Mat2& a) {
  const cplx d = det(a);
  const double scale = a.max_abs();
  if (scale == 0.0 || std::abs(d) < 1e-14 * scale * scale)
    throw Error(ErrorCode::SingularMatrix, "matrix is numerically singular");
  return (1.0 / d) * Mat2{a(1, 1), -a(0, 1), -a(1, 0), a(0, 0)};
}

Mat2 exp_closed(const Mat2& b) {
  const cplx t = 0.5 * trace(b);
  // Traceless part n s3 + p s+ + q s-; its determinant -n^2 - pq is nu^2 without
  // the cancellation in det B - t^2.
  const cplx n = 0.5 * (b(0, 0) - b(1, 1));
  const cplx nu2 = -n * n - b(0, 1) * b(1, 0);
  cplx c, s;
  if (std::abs(nu2) < 1e-8) {
    c = 1.0 - nu2 / 2.0 + nu2 * nu2 / 24.0 - nu2 * nu2 * nu2 / 720.0;
    s = 1.0 - nu2 / 6.0 + nu2 * nu2 / 120.0 - nu2 * nu2 * nu2 / 5040.0;
  } else {
    const cplx nu = std::sqrt(nu2);
    c = std::cos(nu);
    s = std::sin(nu) / nu;
  }
  const cplx et = std::exp(t);
  return et * Mat2{c + s * n, s * b(0, 1), s * b(1, 0), c - s * n};
}

double max_entry_diff(const Mat2& a, const Mat2& b) { return (a - b).max_abs(); }

PauliDecomposition PauliDecomposition::decompose(const Mat2& a) {
  return {0.5 * (a(0, 0) + a(1, 1)), 0.5 * (a(0, 1) + a(1, 0)),
          0.5 * I * (a(0, 1) - a(1, 0)), 0.5 * (a(0, 0) - a(1, 1))};
}

Mat2 PauliDecomposition::recompose() const {
  return {c0 + c3, c1 - I * c2, c1 + I * c2, c0 - c3};
}

bool PauliDecomposition::is_hermitian(double tol) const {
  const double scale = std::max({1.0, std::abs(c0), std::abs(c1), std::abs(c2), std::abs(c3)});
  return std::abs(c0.imag()) <= tol * scale && std::abs(c1.imag()) <= tol * scale &&
         std::abs(c2.imag()) <= tol * scale && std::abs(c3.imag()) <= tol * scale;
}

double norm(const Vec2& v) { return std::sqrt(std::norm(v[0]) + std::norm(v[1])); }

cplx dot(const Vec2& a, const Vec2& b) { return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1]; }

Vec2 operator+(const Vec2& a, const Vec2& b) { return {a[0] + b[0], a[1] + b[1]}; }
Vec2 operator-(const Vec2& a, const Vec2& b) { return {a[0] - b[0], a[1] - b[1]}; }
Vec2 operator*(cplx s, const Vec2& v) { return {s * v[0], s * v[1]}; }

}  // namespace dshell
