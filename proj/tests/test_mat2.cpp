#include <doctest.h>

#include <random>

#include "dshell/errors.hpp"
#include "dshell/mat2.hpp"
#include "oracles.hpp"

using namespace dshell;

namespace {

Mat2 random_matrix(std::mt19937_64& rng, double r) {
  std::uniform_real_distribution<double> u(-r, r);
  return Mat2{cplx(u(rng), u(rng)), cplx(u(rng), u(rng)), cplx(u(rng), u(rng)), cplx(u(rng), u(rng))};
}

}  // namespace

TEST_CASE("Pauli matrices square to the identity and anticommute") {
  for (int j = 1; j <= 3; ++j) {
    CHECK(max_entry_diff(pauli::sigma(j) * pauli::sigma(j), Mat2::identity()) == 0.0);
    for (int l = j + 1; l <= 3; ++l)
      CHECK(max_entry_diff(pauli::sigma(j) * pauli::sigma(l) + pauli::sigma(l) * pauli::sigma(j), Mat2{}) == 0.0);
  }
  CHECK(max_entry_diff(pauli::s1() * pauli::s2(), I * pauli::s3()) == 0.0);
  CHECK_THROWS_AS(pauli::sigma(4), Error);
}

TEST_CASE("det, trace and inverse") {
  const Mat2 a{1.0, 2.0, 3.0, 4.0};
  CHECK(det(a) == cplx(-2.0));
  CHECK(trace(a) == cplx(5.0));
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const Mat2 b = random_matrix(rng, 3.0);
    CHECK(max_entry_diff(b * inverse(b), Mat2::identity()) < 1e-12 * b.max_abs() * inverse(b).max_abs());
    CHECK(max_entry_diff(multiply(b, b), b * b) == 0.0);
  }
  try {
    inverse(Mat2{1.0, 2.0, 2.0, 4.0});
    FAIL("expected SingularMatrix");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularMatrix);
  }
}

TEST_CASE("non-finite entries are rejected") {
  CHECK_THROWS_AS(Mat2(std::nan(""), 0.0, 0.0, 1.0), Error);
  CHECK_THROWS_AS(Mat2(0.0, cplx(0.0, INFINITY), 0.0, 1.0), Error);
}

TEST_CASE("exp_closed agrees with a Taylor scaling-and-squaring oracle") {
  std::mt19937_64 rng(2);
  for (double r : {1e-6, 0.1, 1.0, 3.0}) {
    for (int i = 0; i < 200; ++i) {
      const Mat2 b = random_matrix(rng, r);
      const Mat2 ref = oracle::taylor_exp(b);
      CHECK(max_entry_diff(exp_closed(b), ref) <= 1e-13 * std::max(1.0, ref.max_abs()));
    }
  }
}

TEST_CASE("exp_closed handles nilpotent and nearly degenerate exponents") {
  const Mat2 n{0.0, 1.0, 0.0, 0.0};
  CHECK(max_entry_diff(exp_closed(n), Mat2::identity() + n) < 1e-15);
  const Mat2 b{cplx(0.3, 0.1), 1.0, 1e-10, cplx(0.3, 0.1)};
  CHECK(max_entry_diff(exp_closed(b), oracle::taylor_exp(b)) < 1e-14);
  const Mat2 z{};
  CHECK(max_entry_diff(exp_closed(z), Mat2::identity()) == 0.0);
}

TEST_CASE("exp(B) exp(-B) = identity over entries in [-3, 3]") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const Mat2 b = random_matrix(rng, 3.0);
    const Mat2 e = exp_closed(b), f = exp_closed(-b);
    CHECK(max_entry_diff(e * f, Mat2::identity()) <= 1e-12 * e.max_abs() * f.max_abs());
  }
}

TEST_CASE("Pauli decomposition round trip and hermiticity") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const Mat2 a = random_matrix(rng, 5.0);
    const auto p = PauliDecomposition::decompose(a);
    CHECK(max_entry_diff(p.recompose(), a) < 1e-14);
    const Mat2 h = a + a.adjoint();
    CHECK(PauliDecomposition::decompose(h).is_hermitian());
    CHECK_FALSE(PauliDecomposition::decompose(I * h).is_hermitian());
  }
  const auto s = PauliDecomposition::decompose(2.0 * pauli::s0() - 3.0 * pauli::s2());
  CHECK(s.c0 == cplx(2.0));
  CHECK(s.c2 == cplx(-3.0));
  CHECK(s.c1 == cplx(0.0));
}
