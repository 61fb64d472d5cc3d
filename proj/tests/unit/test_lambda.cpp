#include <doctest.h>

#include <vector>

#include "lt/axioms.hpp"
#include "lt/lambda.hpp"
#include "lt/rng.hpp"

using namespace lt;

namespace {

std::vector<CMatrix> units(int level, std::initializer_list<std::pair<int, int>> ij) {
  std::vector<CMatrix> out;
  for (auto& [i, j] : ij) out.push_back(matrix_unit(i, j, level));
  return out;
}

LambdaSequence mixed22() {
  return LambdaSequence::mixed({{{1, 2}, ProductKind::schur}, {{3, 4}, ProductKind::schur}});
}

}  // namespace

TEST_CASE("builtin eval on small examples") {
  LambdaSequence kron2 = LambdaSequence::kronecker(2);
  std::vector<CMatrix> ones(2, CMatrix::Ones(1, 1));
  CMatrix v = kron2.eval(1, ones);
  CHECK(v.rows() == 1);
  CHECK(v(0, 0) == Complex(1.0));

  LambdaSequence schur2 = LambdaSequence::schur(2);
  CHECK(max_abs(schur2.eval(2, units(2, {{1, 2}, {1, 2}})) - matrix_unit(1, 2, 2)) == 0.0);

  LambdaSequence mat2 = LambdaSequence::matprod(2);
  CHECK(max_abs(mat2.eval(2, units(2, {{1, 2}, {2, 1}})) - matrix_unit(1, 1, 2)) == 0.0);

  // kron positions: eps_{1,2} (x) eps_{2,1} sits at (2,3) 1-based
  CMatrix kv = kron2.eval(2, units(2, {{1, 2}, {2, 1}}));
  CHECK(kv(1, 2) == Complex(1.0));
  CHECK(kv.cwiseAbs().sum() == 1.0);
}

TEST_CASE("tau sizes") {
  CHECK(LambdaSequence::kronecker(3).tau(2) == 8);
  CHECK(LambdaSequence::schur(3).tau(4) == 4);
  CHECK(LambdaSequence::matprod(2).tau(5) == 5);
  CHECK(mixed22().tau(2) == 4);
  CHECK(mixed22().tau(1) == 1);
  LambdaSequence mk = LambdaSequence::mixed(
      {{{1}, ProductKind::schur}, {{2, 3}, ProductKind::kronecker}});
  CHECK(mk.tau(2) == 2 * 4);
}

TEST_CASE("mixed group validation") {
  CHECK_THROWS_AS(LambdaSequence::mixed({{{2, 1}, ProductKind::schur}}),
                  UnsupportedSequenceError);
  CHECK_THROWS_AS(LambdaSequence::mixed({{{1}, ProductKind::schur}, {{3}, ProductKind::schur}}),
                  UnsupportedSequenceError);
  CHECK_THROWS_AS(LambdaSequence::mixed({{{1}, ProductKind::mixed}}), UnsupportedSequenceError);
}

TEST_CASE("eval argument validation") {
  LambdaSequence kron2 = LambdaSequence::kronecker(2);
  std::vector<CMatrix> one = {CMatrix::Identity(2, 2)};
  CHECK_THROWS_AS(kron2.eval(2, one), ArityError);
  std::vector<CMatrix> bad = {CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)};
  CHECK_THROWS_AS(kron2.eval(2, bad), DimensionError);
}

TEST_CASE("multilinearity of eval on sampled slots") {
  Rng rng(41);
  for (const auto& lambda :
       {LambdaSequence::kronecker(2), LambdaSequence::schur(3), LambdaSequence::matprod(2),
        mixed22()}) {
    const int m = lambda.arity();
    const int k = 2;
    for (int slot = 0; slot < m; ++slot) {
      std::vector<CMatrix> args;
      for (int t = 0; t < m; ++t) args.push_back(rng.ginibre(k, k));
      CMatrix a = rng.ginibre(k, k), b = rng.ginibre(k, k);
      Complex c = rng.cnormal();
      std::vector<CMatrix> lin = args, xa = args, xb = args;
      lin[slot] = c * a + b;
      xa[slot] = a;
      xb[slot] = b;
      CHECK(max_abs(lambda.eval(k, lin) - (c * lambda.eval(k, xa) + lambda.eval(k, xb))) <
            1e-12);
    }
  }
}

TEST_CASE("tau consistency of eval output for levels up to 4") {
  Rng rng(43);
  for (const auto& lambda :
       {LambdaSequence::kronecker(2), LambdaSequence::schur(2), LambdaSequence::matprod(3),
        mixed22()}) {
    for (int k = 1; k <= 4; ++k) {
      std::vector<CMatrix> args;
      for (int t = 0; t < lambda.arity(); ++t) args.push_back(rng.ginibre(k, k));
      CMatrix out = lambda.eval(k, args);
      CHECK(out.rows() == lambda.tau(k));
      CHECK(out.cols() == lambda.tau(k));
    }
  }
}

TEST_CASE("unit_eval agrees with dense eval exhaustively") {
  for (const auto& lambda :
       {LambdaSequence::kronecker(2), LambdaSequence::schur(2), LambdaSequence::matprod(2),
        mixed22()}) {
    const int m = lambda.arity();
    const int k = 2;
    std::vector<std::pair<Index, Index>> tuple(m);
    std::vector<int> idx(m, 0);
    const int options = (k + 1) * (k + 1);  // includes out-of-range 0 index
    for (;;) {
      std::vector<CMatrix> args;
      for (int t = 0; t < m; ++t) {
        tuple[t] = {idx[t] / (k + 1), idx[t] % (k + 1)};  // 0..k, 0 out of range
        args.push_back(matrix_unit(tuple[t].first, tuple[t].second, k));
      }
      CMatrix dense = lambda.eval(k, args);
      auto pos = unit_eval(lambda, k, tuple);
      if (pos) {
        CHECK(dense(pos->row, pos->col) == Complex(1.0));
        CHECK(dense.cwiseAbs().sum() == 1.0);
      } else {
        CHECK(dense.isZero(0.0));
      }
      int t = m - 1;
      for (; t >= 0; --t) {
        if (++idx[t] < options) break;
        idx[t] = 0;
      }
      if (t < 0) break;
    }
  }
}

TEST_CASE("e2 witness: frozen kronecker selector at r = s = 1") {
  LambdaSequence kron2 = LambdaSequence::kronecker(2);
  CMatrix p = e2_witness(kron2, 1, 1);
  CMatrix expect = CMatrix::Zero(2, 4);
  expect(0, 0) = 1.0;  // grid coordinate (1,1)
  expect(1, 3) = 1.0;  // grid coordinate (2,2)
  CHECK(max_abs(p - expect) == 0.0);

  // independent exhaustive check of the block identity over all 16 tuples
  for (int i1 = 1; i1 <= 2; ++i1)
    for (int j1 = 1; j1 <= 2; ++j1)
      for (int i2 = 1; i2 <= 2; ++i2)
        for (int j2 = 1; j2 <= 2; ++j2) {
          const bool in1 = i1 == 1 && j1 == 1 && i2 == 1 && j2 == 1;
          const bool in2 = i1 == 2 && j1 == 2 && i2 == 2 && j2 == 2;
          if (!(in1 || in2)) continue;  // (E2) quantifies over the two blocks
          CMatrix big = kron(matrix_unit(i1, j1, 2), matrix_unit(i2, j2, 2));
          CMatrix lhs = p * big * p.adjoint();
          CMatrix rhs = CMatrix::Zero(2, 2);
          if (in1) rhs(0, 0) = 1.0;
          if (in2) rhs(1, 1) = 1.0;
          CHECK(max_abs(lhs - rhs) == 0.0);
        }
}

TEST_CASE("e2 witness: schur and matprod use the identity embedding") {
  CHECK(max_abs(e2_witness(LambdaSequence::schur(2), 1, 1) - CMatrix::Identity(2, 2)) == 0.0);
  CHECK(max_abs(e2_witness(LambdaSequence::schur(2), 2, 2) - CMatrix::Identity(4, 4)) == 0.0);
  CHECK(max_abs(e2_witness(LambdaSequence::matprod(2), 2, 1) - CMatrix::Identity(3, 3)) == 0.0);
}

TEST_CASE("e2 witness: kronecker m = 1 degenerate is the identity") {
  CMatrix p = e2_witness(LambdaSequence::kronecker(1), 2, 3);
  CHECK(max_abs(p - CMatrix::Identity(5, 5)) == 0.0);
}

TEST_CASE("e1 witness frozen values") {
  E1Witness ws = e1_witness(LambdaSequence::schur(2), 2);
  CHECK(ws.p == 2);
  CHECK(max_abs(ws.S - CMatrix::Identity(2, 2)) == 0.0);
  CHECK(max_abs(ws.T - CMatrix::Identity(2, 2)) == 0.0);
  REQUIRE(ws.a.size() == 2);
  CHECK(max_abs(ws.a[0] - matrix_unit(1, 1, 2)) == 0.0);
  CHECK(max_abs(ws.a[1] - matrix_unit(2, 2, 2)) == 0.0);

  // matprod: diagonal units are idempotent projections
  E1Witness wm = e1_witness(LambdaSequence::matprod(3), 2);
  CHECK(max_abs(wm.S - CMatrix::Identity(2, 2)) == 0.0);

  E1Witness wk = e1_witness(LambdaSequence::kronecker(2), 2);
  CMatrix expect = CMatrix::Zero(2, 4);
  expect(0, 0) = 1.0;
  expect(1, 3) = 1.0;
  CHECK(max_abs(wk.S - expect) == 0.0);

  // exhaustive selection identity over the 4 index tuples
  for (int j1 = 1; j1 <= 2; ++j1)
    for (int j2 = 1; j2 <= 2; ++j2) {
      CMatrix got = wk.S * kron(wk.a[j1 - 1], wk.a[j2 - 1]) * wk.T;
      CMatrix expect_sel =
          (j1 == j2) ? matrix_unit(j1, j1, 2) : CMatrix(CMatrix::Zero(2, 2));
      CHECK(max_abs(got - expect_sel) == 0.0);
    }
}

TEST_CASE("w2 witness: matprod is the identity permutation") {
  W2Witness w = w2_witness(LambdaSequence::matprod(2), 2, 2);
  CHECK(max_abs(w.S - CMatrix::Identity(4, 4)) == 0.0);
  CHECK(max_abs(w.T - CMatrix::Identity(4, 4)) == 0.0);
  CHECK(w2_residual(LambdaSequence::matprod(2), 2, 2, w.S, w.T) == 0.0);  // 256 tuples
}

TEST_CASE("w2 witness: schur embedding with S T = I on the range") {
  LambdaSequence s2 = LambdaSequence::schur(2);
  W2Witness w = w2_witness(s2, 2, 2);
  CHECK(max_abs(CMatrix(w.S * w.T) - CMatrix::Identity(4, 4)) == 0.0);
  CHECK(w2_residual(s2, 2, 2, w.S, w.T) == 0.0);
}

TEST_CASE("w2 witness: kronecker shuffle at p = q = 1 is scalar") {
  W2Witness w = w2_witness(LambdaSequence::kronecker(2), 1, 1);
  CHECK(w.S.rows() == 1);
  CHECK(w.S(0, 0) == Complex(1.0));
  CHECK(w.T(0, 0) == Complex(1.0));
}

TEST_CASE("w2 witness: kronecker shuffle regroups the factors") {
  LambdaSequence k2 = LambdaSequence::kronecker(2);
  W2Witness w = w2_witness(k2, 2, 2);
  Rng rng(17);
  std::vector<CMatrix> a = {rng.ginibre(2, 2), rng.ginibre(2, 2)};
  std::vector<CMatrix> b = {rng.ginibre(2, 2), rng.ginibre(2, 2)};
  CMatrix lhs = kron(kron(a[0], a[1]), kron(b[0], b[1]));
  CMatrix rhs = w.S * kron(kron(a[0], b[0]), kron(a[1], b[1])) * w.T;
  CHECK(max_abs(lhs - rhs) < 1e-12);
}

TEST_CASE("w1 witness verdicts") {
  W1Witness wm = w1_witness(LambdaSequence::matprod(2), 2, 1);
  CHECK(wm.satisfied);
  CHECK(max_abs(wm.P - CMatrix::Identity(2, 2)) == 0.0);

  for (int slot = 1; slot <= 2; ++slot) {
    W1Witness wk = w1_witness(LambdaSequence::kronecker(2), 3, slot);
    CHECK(wk.satisfied);
    CHECK(op_norm(wk.P) <= 1.0 + 1e-12);
    CHECK(op_norm(wk.Q) <= 1.0 + 1e-12);
  }

  // the Schur product cannot recover off-diagonal entries: honest failure
  for (int p = 2; p <= 3; ++p) {
    W1Witness ws = w1_witness(LambdaSequence::schur(2), p, 1);
    CHECK_FALSE(ws.satisfied);
    CHECK(ws.residual == doctest::Approx(1.0));
    CHECK(ws.counterexample.size() > 0);
  }
  // p = 1 is scalar and fine
  CHECK(w1_witness(LambdaSequence::schur(2), 1, 1).satisfied);
  // single-slot schur is the identity map
  CHECK(w1_witness(LambdaSequence::schur(1), 3, 1).satisfied);
}

TEST_CASE("w1 witness for mixed sequences") {
  LambdaSequence mk = LambdaSequence::mixed(
      {{{1}, ProductKind::matprod}, {{2, 3}, ProductKind::kronecker}});
  for (int slot = 1; slot <= 3; ++slot) CHECK(w1_witness(mk, 2, slot).satisfied);
  // schur groups inherit the schur failure
  CHECK_FALSE(w1_witness(mixed22(), 2, 1).satisfied);
}

TEST_CASE("custom sequences without providers have no witnesses") {
  LambdaSequence doubled = LambdaSequence::custom(
      2, [](int k) { return Index(k); },
      [](int, std::span<const CMatrix> args) {
        return CMatrix(2.0 * args[0].cwiseProduct(args[1]));
      },
      nullptr, "2*schur");
  CHECK_THROWS_AS(e2_witness(doubled, 1, 1), UnsupportedSequenceError);
  CHECK_THROWS_AS(e1_witness(doubled, 2), UnsupportedSequenceError);
  CHECK_THROWS_AS(w2_witness(doubled, 2, 2), UnsupportedSequenceError);
  CHECK_THROWS_AS(w1_witness(doubled, 2, 1), UnsupportedSequenceError);
}
