#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lt/lambda.hpp"
#include "lt/matcore.hpp"

namespace lt {

enum class Verdict { pass, fail, unknown };

std::string to_string(Verdict v);

/// One (i_t, j_t) pair per slot, 1-based.
using UnitTuple = std::vector<std::pair<int, int>>;

struct Counterexample {
  UnitTuple units;               // for identity conditions
  std::vector<CMatrix> samples;  // for O3 / N2 sampled failures
  double residual = 0.0;
};

struct ConditionReport {
  std::string condition;  // "E1", "E2", "E3", "N1", "N2", "W1", "W2", "O1", "O2", "O3"
  Verdict verdict = Verdict::unknown;
  std::map<std::string, long long> params;  // tested range: levels, slot, tuple counts
  double max_residual = 0.0;
  std::map<std::string, CMatrix> witness;   // served witness matrices on pass
  std::optional<Counterexample> counterexample;
  std::string note;

  bool failed() const { return verdict == Verdict::fail; }
};

struct AxiomReport {
  std::string lambda_name;
  int arity = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::vector<ConditionReport> checks;

  bool any_fail() const;
  const ConditionReport* find(const std::string& condition) const;
};

struct CheckBudget {
  int max_level = 2;                 // bounds r, s, p, q and k
  long long enum_cap = 1'000'000;    // tuple enumeration cap
  int trials = 200;                  // randomized O3 / norm sampling
  long long elementary_cap = 10'000; // O3 exact-tier tuple cap
  std::vector<Index> o3_dims;        // per-slot p_i; defaults to all 2
  double tol = 1e-10;                // exact identities
  double psd_tol = 1e-9;             // PSD checks
  std::uint64_t seed = 0;
};

// Residual helpers (max entrywise error over the full tuple range).  These
// take the witness as input so witness construction can self-verify without
// recursing through the check functions.
double e1_residual(const LambdaSequence& lambda, int k, const E1Witness& w,
                   UnitTuple* worst = nullptr);
double e2_residual(const LambdaSequence& lambda, int r, int s, const CMatrix& P,
                   UnitTuple* worst = nullptr);
double w1_residual(const LambdaSequence& lambda, int p, int slot, const CMatrix& P,
                   const CMatrix& Q, CMatrix* worst_basis = nullptr);
double w2_residual(const LambdaSequence& lambda, int p, int q, const CMatrix& S,
                   const CMatrix& T, UnitTuple* worst = nullptr);

ConditionReport check_E1(const LambdaSequence& lambda, int k, double tol = 1e-10);
ConditionReport check_E2(const LambdaSequence& lambda, int r, int s, double tol = 1e-10,
                         long long enum_cap = 1'000'000);
/// (E3), (N1), (N2) in one pass; returns three reports in that order.
std::vector<ConditionReport> check_E3_N(const LambdaSequence& lambda, int k_max, int samples,
                                        std::uint64_t seed, double tol = 1e-9);
ConditionReport check_W1(const LambdaSequence& lambda, int p, int slot, double tol = 1e-10);
ConditionReport check_W2(const LambdaSequence& lambda, int p, int q, double tol = 1e-10,
                         long long enum_cap = 1'000'000);
ConditionReport check_O1(const LambdaSequence& lambda, int r, double tol = 1e-10,
                         long long enum_cap = 1'000'000);
ConditionReport check_O2(const LambdaSequence& lambda, int r, double tol = 1e-10,
                         long long enum_cap = 1'000'000);
ConditionReport check_O3(const LambdaSequence& lambda, int r, std::span<const Index> dims,
                         int trials, std::uint64_t seed, double psd_tol = 1e-9,
                         long long elementary_cap = 10'000);

AxiomReport check_all(const LambdaSequence& lambda, const CheckBudget& budget);

}  // namespace lt
