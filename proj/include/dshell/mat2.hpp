#pragma once

#include <array>
#include <complex>

namespace dshell {

using cplx = std::complex<double>;
using Vec2 = std::array<cplx, 2>;

inline constexpr cplx I{0.0, 1.0};

/// Complex 2x2 matrix, row-major. Entries are checked finite on construction.
class Mat2 {
public:
  Mat2() = default;
  Mat2(cplx a11, cplx a12, cplx a21, cplx a22);

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2 diag(cplx a, cplx b) { return {a, 0.0, 0.0, b}; }

  cplx operator()(int row, int col) const { return e_[2 * row + col]; }
  const std::array<cplx, 4>& entries() const { return e_; }

  /// Largest entry modulus; the scale used by every relative tolerance here.
  double max_abs() const;

  Mat2 adjoint() const;
  Mat2 transpose() const;

  friend Mat2 operator+(const Mat2& a, const Mat2& b);
  friend Mat2 operator-(const Mat2& a, const Mat2& b);
  friend Mat2 operator-(const Mat2& a);
  friend Mat2 operator*(const Mat2& a, const Mat2& b);
  friend Mat2 operator*(cplx s, const Mat2& a);
  friend Mat2 operator*(const Mat2& a, cplx s) { return s * a; }
  friend Vec2 operator*(const Mat2& a, const Vec2& v);
  friend bool operator==(const Mat2& a, const Mat2& b) { return a.e_ == b.e_; }

private:
  std::array<cplx, 4> e_{};
};

namespace pauli {
Mat2 s0();
Mat2 s1();
Mat2 s2();
Mat2 s3();
/// sigma_j for j in 0..3.
Mat2 sigma(int j);
}  // namespace pauli

Mat2 multiply(const Mat2& a, const Mat2& b);
cplx det(const Mat2& a);
cplx trace(const Mat2& a);

/// Throws Error(SingularMatrix) when |det| < 1e-14 * max_abs^2.
Mat2 inverse(const Mat2& a);

/// exp(B) = e^{t}(cos(nu) s0 + sin(nu)/nu (B - t s0)), t = tr B / 2, nu^2 = det B - t^2.
/// Only even functions of nu appear, so the square-root branch is irrelevant.
Mat2 exp_closed(const Mat2& b);

/// Max entry modulus of a - b.
double max_entry_diff(const Mat2& a, const Mat2& b);

/// Coefficients in a = c0 s0 + c1 s1 + c2 s2 + c3 s3.
struct PauliDecomposition {
  cplx c0, c1, c2, c3;

  static PauliDecomposition decompose(const Mat2& a);
  Mat2 recompose() const;
  /// Hermitian iff all four coefficients are real.
  bool is_hermitian(double tol = 1e-12) const;
};

double norm(const Vec2& v);
cplx dot(const Vec2& a, const Vec2& b);  // conj(a) . b
Vec2 operator+(const Vec2& a, const Vec2& b);
Vec2 operator-(const Vec2& a, const Vec2& b);
Vec2 operator*(cplx s, const Vec2& v);

}  // namespace dshell
