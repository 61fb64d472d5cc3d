#include <doctest.h>

#include <vector>

#include "lt/axioms.hpp"
#include "lt/io.hpp"
#include "lt/lambda.hpp"
#include "lt/tensorspace.hpp"

using namespace lt;

namespace {

LambdaSequence mixed22() {
  return LambdaSequence::mixed({{{1, 2}, ProductKind::schur}, {{3, 4}, ProductKind::schur}});
}

LambdaSequence doubled_schur() {
  return LambdaSequence::custom(
      2, [](int k) { return Index(k); },
      [](int, std::span<const CMatrix> args) {
        return CMatrix(2.0 * args[0].cwiseProduct(args[1]));
      },
      nullptr, "2*schur");
}

}  // namespace

TEST_CASE("check_E1 passes for the builtins") {
  ConditionReport r1 = check_E1(LambdaSequence::schur(2), 2);
  CHECK(r1.verdict == Verdict::pass);
  CHECK(r1.max_residual == 0.0);
  CHECK(check_E1(LambdaSequence::kronecker(2), 3).verdict == Verdict::pass);
  CHECK(check_E1(LambdaSequence::matprod(2), 2).verdict == Verdict::pass);
  CHECK(check_E1(mixed22(), 2).verdict == Verdict::pass);
}

TEST_CASE("check_E2 passes for the builtins") {
  ConditionReport rs = check_E2(LambdaSequence::schur(2), 2, 2);
  CHECK(rs.verdict == Verdict::pass);
  CHECK(max_abs(rs.witness.at("P") - CMatrix::Identity(4, 4)) == 0.0);

  CHECK(check_E2(LambdaSequence::kronecker(2), 1, 1).verdict == Verdict::pass);
  // 25 tuples at (r,s) = (2,1)
  ConditionReport rm = check_E2(LambdaSequence::matprod(2), 2, 1);
  CHECK(rm.verdict == Verdict::pass);
  CHECK(rm.params.at("tuples") == 25);
  CHECK(check_E2(mixed22(), 2, 1).verdict == Verdict::pass);
}

TEST_CASE("check_E2 respects the enumeration cap") {
  ConditionReport r = check_E2(LambdaSequence::kronecker(2), 3, 3, 1e-10, /*enum_cap=*/10);
  CHECK(r.verdict == Verdict::unknown);
  CHECK(r.note.find("cap") != std::string::npos);
}

TEST_CASE("check_E3_N verdicts") {
  auto reps = check_E3_N(LambdaSequence::kronecker(2), 2, 40, /*seed=*/1);
  REQUIRE(reps.size() == 3);
  CHECK(reps[0].condition == "E3");
  CHECK(reps[0].verdict == Verdict::pass);
  CHECK(reps[1].condition == "N1");
  CHECK(reps[1].verdict == Verdict::pass);
  CHECK(reps[2].condition == "N2");
  CHECK(reps[2].verdict == Verdict::pass);

  auto schur3 = check_E3_N(LambdaSequence::schur(3), 2, 200, /*seed=*/2);
  for (const auto& r : schur3) CHECK(r.verdict == Verdict::pass);

  // a scaled sequence violates (N2) already at k = 1
  auto bad = check_E3_N(doubled_schur(), 2, 40, /*seed=*/3);
  CHECK(bad[2].verdict == Verdict::fail);
  CHECK(bad[2].max_residual >= 1.0 - 1e-9);  // sampled bound >= 2
  REQUIRE(bad[2].counterexample.has_value());
  CHECK_FALSE(bad[2].counterexample->samples.empty());
}

TEST_CASE("check_W1 verdicts") {
  for (int slot = 1; slot <= 2; ++slot) {
    ConditionReport r = check_W1(LambdaSequence::matprod(2), 2, slot);
    CHECK(r.verdict == Verdict::pass);
    CHECK(max_abs(r.witness.at("P") - CMatrix::Identity(2, 2)) == 0.0);
  }
  CHECK(check_W1(LambdaSequence::kronecker(2), 3, 2).verdict == Verdict::pass);

  ConditionReport s = check_W1(LambdaSequence::schur(2), 2, 1);
  CHECK(s.verdict == Verdict::fail);
  CHECK(s.note.find("no witness exists") != std::string::npos);
}

TEST_CASE("check_W2 passes for the builtins") {
  ConditionReport k = check_W2(LambdaSequence::kronecker(2), 2, 2);
  CHECK(k.verdict == Verdict::pass);
  CHECK(k.params.at("tuples") == 256);
  CHECK(check_W2(LambdaSequence::schur(2), 2, 2).verdict == Verdict::pass);
  CHECK(check_W2(LambdaSequence::matprod(2), 2, 2).verdict == Verdict::pass);
  CHECK(check_W2(mixed22(), 2, 2).verdict == Verdict::pass);
}

TEST_CASE("check_O1: kronecker and schur pass, matprod fails with the swap tuple") {
  CHECK(check_O1(LambdaSequence::kronecker(2), 2).verdict == Verdict::pass);
  CHECK(check_O1(LambdaSequence::schur(2), 3).verdict == Verdict::pass);

  ConditionReport r = check_O1(LambdaSequence::matprod(2), 2);
  CHECK(r.verdict == Verdict::fail);
  CHECK(r.max_residual == 1.0);
  REQUIRE(r.counterexample.has_value());
  const UnitTuple& t = r.counterexample->units;
  REQUIRE(t.size() == 2);
  CHECK(t[0] == std::pair<int, int>(1, 2));
  CHECK(t[1] == std::pair<int, int>(2, 1));

  // soundness: the recorded counterexample replays above the tolerance
  LambdaSequence mp = LambdaSequence::matprod(2);
  std::vector<CMatrix> fwd, swp;
  for (auto& [i, j] : t) {
    fwd.push_back(matrix_unit(i, j, 2));
    swp.push_back(matrix_unit(j, i, 2));
  }
  CHECK(max_abs(mp.eval(2, fwd) - mp.eval(2, swp).adjoint()) > 1e-10);
  // the difference eps_{1,1} - eps_{2,2} has Frobenius norm sqrt(2)
  CHECK((mp.eval(2, fwd) - mp.eval(2, swp).adjoint()).norm() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("check_O2 verdicts") {
  ConditionReport s = check_O2(LambdaSequence::schur(2), 2);
  CHECK(s.verdict == Verdict::pass);
  CHECK(max_abs(s.witness.at("P") - CMatrix::Identity(4, 4)) == 0.0);
  CHECK(check_O2(LambdaSequence::kronecker(2), 1).verdict == Verdict::pass);

  ConditionReport m = check_O2(LambdaSequence::matprod(2), 1);
  CHECK(m.verdict == Verdict::fail);
  REQUIRE(m.counterexample.has_value());
}

TEST_CASE("check_O3 verdicts and counterexample replay") {
  const Index dims22[] = {2, 2};
  CHECK(check_O3(LambdaSequence::kronecker(2), 2, dims22, 20, 5).verdict == Verdict::pass);
  CHECK(check_O3(LambdaSequence::schur(2), 2, dims22, 20, 5).verdict == Verdict::pass);

  const Index dims11[] = {1, 1};
  ConditionReport bad = check_O3(LambdaSequence::matprod(2), 2, dims11, 20, 5);
  CHECK(bad.verdict == Verdict::fail);
  REQUIRE(bad.counterexample.has_value());
  REQUIRE(bad.counterexample->samples.size() == 2);
  CMatrix image =
      tensorize(LambdaSequence::matprod(2), 2, bad.counterexample->samples, dims11);
  CHECK_FALSE(is_psd(image, 1e-9).psd);
}

TEST_CASE("check_all: kronecker clean, matprod fails exactly the order conditions") {
  CheckBudget budget;
  budget.max_level = 2;
  budget.trials = 20;
  budget.seed = 7;

  AxiomReport good = check_all(LambdaSequence::kronecker(2), budget);
  CHECK_FALSE(good.any_fail());

  AxiomReport bad = check_all(LambdaSequence::matprod(2), budget);
  CHECK(bad.any_fail());
  for (const auto& c : bad.checks) {
    if (c.condition == "O1" || c.condition == "O2" || c.condition == "O3") {
      if (c.params.count("r") && c.params.at("r") >= 2)
        CHECK(c.verdict == Verdict::fail);
    } else {
      CHECK(c.verdict == Verdict::pass);
    }
  }
}

TEST_CASE("check_all on the paper's mixed example: paper-claimed conditions pass") {
  CheckBudget budget;
  budget.max_level = 2;
  budget.trials = 10;
  budget.seed = 11;
  AxiomReport rep = check_all(mixed22(), budget);
  for (const auto& c : rep.checks) {
    if (c.condition == "W1") continue;  // recorded per the search contract
    CHECK(c.verdict == Verdict::pass);
  }
}

TEST_CASE("reports are deterministic for a fixed seed") {
  CheckBudget budget;
  budget.max_level = 2;
  budget.trials = 15;
  budget.seed = 99;
  AxiomReport a = check_all(LambdaSequence::kronecker(2), budget);
  AxiomReport b = check_all(LambdaSequence::kronecker(2), budget);
  CHECK(io::to_json(a).dump() == io::to_json(b).dump());
}
