#include <doctest.h>

#include "lt/matcore.hpp"
#include "lt/rng.hpp"

using namespace lt;

TEST_CASE("matrix units, including the out-of-range zero convention") {
  CMatrix e11 = matrix_unit(1, 1, 2, 2);
  CHECK(e11(0, 0) == Complex(1.0));
  CHECK(e11(0, 1) == Complex(0.0));
  CHECK(e11(1, 0) == Complex(0.0));
  CHECK(e11(1, 1) == Complex(0.0));

  CHECK(matrix_unit(3, 1, 2, 2).isZero(0.0));
  CHECK(matrix_unit(0, 1, 2, 2).isZero(0.0));

  CMatrix r = matrix_unit(2, 1, 2, 3);
  CHECK(r.rows() == 2);
  CHECK(r.cols() == 3);
  CHECK(r(1, 0) == Complex(1.0));
  CHECK(r.cwiseAbs().sum() == 1.0);
}

TEST_CASE("matrix unit multiplication table, exhaustive to size 4") {
  const Index n = 4;
  for (Index i = 1; i <= n; ++i)
    for (Index j = 1; j <= n; ++j)
      for (Index k = 1; k <= n; ++k)
        for (Index l = 1; l <= n; ++l) {
          CMatrix prod = matrix_unit(i, j, n) * matrix_unit(k, l, n);
          CMatrix expect = (j == k) ? matrix_unit(i, l, n) : CMatrix(CMatrix::Zero(n, n));
          CHECK(max_abs(prod - expect) == 0.0);
        }
}

TEST_CASE("kron basics") {
  CHECK(max_abs(kron(CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)) -
                CMatrix::Identity(6, 6)) == 0.0);

  // unit positions follow (i-1)*rows(b) + k
  CMatrix k = kron(matrix_unit(1, 2, 2), matrix_unit(2, 1, 2));
  CHECK(k(1, 2) == Complex(1.0));
  CHECK(k.cwiseAbs().sum() == 1.0);

  CMatrix a = CMatrix::Zero(2, 2), b = CMatrix::Zero(2, 2);
  a.diagonal() << 1.0, 2.0;
  b.diagonal() << 3.0, 4.0;
  CMatrix d = kron(a, b);
  Eigen::VectorXcd expect(4);
  expect << 3.0, 4.0, 6.0, 8.0;
  CHECK(max_abs(d - CMatrix(expect.asDiagonal())) == 0.0);
}

TEST_CASE("kron and schur are bilinear on random triples") {
  Rng rng(7);
  for (int it = 0; it < 20; ++it) {
    CMatrix a = rng.ginibre(2, 3), b = rng.ginibre(2, 3), c = rng.ginibre(3, 2);
    Complex s = rng.cnormal();
    CHECK(max_abs(kron(CMatrix(s * a + b), c) - (s * kron(a, c) + kron(b, c))) < 1e-12);
    CHECK(max_abs(kron(c, CMatrix(s * a + b)) - (s * kron(c, a) + kron(c, b))) < 1e-12);
    CMatrix d = rng.ginibre(2, 3);
    CHECK(max_abs(schur(CMatrix(s * a + b), d) - (s * schur(a, d) + schur(b, d))) < 1e-12);
  }
}

TEST_CASE("schur product rules") {
  CMatrix ones = CMatrix::Ones(2, 2);
  Rng rng(3);
  CMatrix a = rng.ginibre(2, 2);
  CHECK(max_abs(schur(ones, a) - a) == 0.0);

  CMatrix e12 = matrix_unit(1, 2, 2);
  CHECK(max_abs(schur(e12, e12) - e12) == 0.0);
  CHECK(schur(e12, matrix_unit(2, 1, 2)).isZero(0.0));

  CHECK_THROWS_AS(schur(CMatrix::Zero(2, 2), CMatrix::Zero(2, 3)), DimensionError);
}

TEST_CASE("operator norm") {
  CHECK(op_norm(CMatrix::Identity(5, 5)) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(op_norm(matrix_unit(1, 2, 2)) == doctest::Approx(1.0).epsilon(1e-13));

  Rng rng(11);
  for (int it = 0; it < 10; ++it) {
    CMatrix a = rng.ginibre(3, 3), b = rng.ginibre(2, 4);
    CHECK(op_norm(kron(a, b)) == doctest::Approx(op_norm(a) * op_norm(b)).epsilon(1e-11));
    CHECK(op_norm(CMatrix(a.adjoint())) == doctest::Approx(op_norm(a)).epsilon(1e-12));
  }
}

TEST_CASE("is_psd") {
  PsdReport id = is_psd(CMatrix::Identity(3, 3), 1e-9);
  CHECK(id.psd);
  CHECK(id.min_eig == doctest::Approx(1.0));

  CMatrix diag = CMatrix::Zero(2, 2);
  diag.diagonal() << 1.0, -1.0;
  PsdReport bad = is_psd(diag, 1e-9);
  CHECK_FALSE(bad.psd);
  CHECK(bad.min_eig == doctest::Approx(-1.0));

  CHECK_THROWS_AS(is_psd(CMatrix::Zero(2, 3)), DimensionError);

  // polar block [[|v*|, v],[v*, |v|]] is PSD; oracle via SVD here
  Rng rng(19);
  for (int it = 0; it < 10; ++it) {
    CMatrix v = rng.ginibre(3, 3);
    Eigen::JacobiSVD<CMatrix> svd(v, Eigen::ComputeFullU | Eigen::ComputeFullV);
    CMatrix avstar = svd.matrixU() * svd.singularValues().asDiagonal() * svd.matrixU().adjoint();
    CMatrix av = svd.matrixV() * svd.singularValues().asDiagonal() * svd.matrixV().adjoint();
    CMatrix block(6, 6);
    block << avstar, v, v.adjoint(), av;
    CHECK(is_psd(block, 1e-9).psd);
  }
}

TEST_CASE("near-zero criterion from two-sided psd") {
  Rng rng(23);
  CMatrix tiny = 1e-13 * rng.ginibre(3, 3);
  CMatrix h = 0.5 * (tiny + tiny.adjoint());
  CHECK(is_psd(h, 1e-9).psd);
  CHECK(is_psd(CMatrix(-h), 1e-9).psd);
  CHECK(op_norm(h) < 1e-9);
}

TEST_CASE("block assembly") {
  CHECK(max_abs(block_diag(CMatrix::Identity(1, 1), CMatrix::Identity(2, 2)) -
                CMatrix::Identity(3, 3)) == 0.0);

  CMatrix a = block_adiag(matrix_unit(1, 1, 1), CMatrix::Zero(1, 1));
  CHECK(a.rows() == 2);
  CHECK(a(0, 1) == Complex(1.0));
  CHECK(a.cwiseAbs().sum() == 1.0);

  Rng rng(5);
  CMatrix x = rng.ginibre(3, 3);
  CMatrix sym = block_adiag(x, CMatrix(x.adjoint()));
  CHECK(max_abs(sym - sym.adjoint()) == 0.0);

  const CMatrix bad[] = {CMatrix::Zero(2, 2), CMatrix::Zero(3, 3)};
  CHECK_THROWS_AS(block_assemble(BlockKind::adiag, bad), DimensionError);
}
