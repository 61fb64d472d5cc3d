#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lt/matcore.hpp"

namespace lt {

enum class ProductKind { kronecker, schur, matprod, mixed, custom };

std::string to_string(ProductKind kind);

/// One contiguous group of argument slots sharing a base product; groups are
/// combined with the Kronecker product.
struct MixedGroup {
  std::vector<int> slots;  // 1-based, contiguous, ascending
  ProductKind product;     // kronecker | schur | matprod
};

struct E1Witness {
  int p = 0;
  CMatrix S, T;
  std::vector<CMatrix> a;
};

struct W1Witness {
  CMatrix P, Q;
  bool satisfied = false;
  double residual = 0.0;
  CMatrix counterexample;  // basis element with the worst residual, when unsatisfied
};

struct W2Witness {
  CMatrix S, T;
};

/// Witness supplier for custom sequences.  Every witness served through the
/// free functions below is re-verified before being returned.
class WitnessProvider {
 public:
  virtual ~WitnessProvider() = default;
  virtual std::optional<CMatrix> e2(int /*r*/, int /*s*/) const { return std::nullopt; }
  virtual std::optional<E1Witness> e1(int /*k*/) const { return std::nullopt; }
  virtual std::optional<W1Witness> w1(int /*p*/, int /*slot*/) const { return std::nullopt; }
  virtual std::optional<W2Witness> w2(int /*p*/, int /*q*/) const { return std::nullopt; }
};

/// A family of m-linear matrix maps level -> (M_k)^m -> M_tau(k).
/// Immutable after construction; evaluation and witness generation are pure.
class LambdaSequence {
 public:
  static LambdaSequence kronecker(int arity);
  static LambdaSequence schur(int arity);
  static LambdaSequence matprod(int arity);
  static LambdaSequence mixed(std::vector<MixedGroup> groups);
  static LambdaSequence custom(int arity, std::function<Index(int)> tau,
                               std::function<CMatrix(int, std::span<const CMatrix>)> eval,
                               std::shared_ptr<const WitnessProvider> witnesses = nullptr,
                               std::string name = "custom");

  int arity() const { return arity_; }
  ProductKind kind() const { return kind_; }
  bool is_builtin() const { return kind_ != ProductKind::custom; }
  const std::vector<MixedGroup>& groups() const { return groups_; }
  const std::string& name() const { return name_; }
  const WitnessProvider* witness_provider() const { return witnesses_.get(); }

  /// Output size of level k.
  Index tau(int level) const;

  CMatrix eval(int level, std::span<const CMatrix> args) const;

 private:
  LambdaSequence() = default;

  int arity_ = 0;
  ProductKind kind_ = ProductKind::custom;
  std::vector<MixedGroup> groups_;
  std::function<Index(int)> custom_tau_;
  std::function<CMatrix(int, std::span<const CMatrix>)> custom_eval_;
  std::shared_ptr<const WitnessProvider> witnesses_;
  std::string name_;
};

CMatrix eval_lambda(const LambdaSequence& lambda, int level, std::span<const CMatrix> args);

/// Position of the single nonzero entry (always exactly 1) of
/// lambda_level(eps_{i_1,j_1}, ..., eps_{i_m,j_m}) for builtin kinds;
/// nullopt when the value is the zero matrix.  Indices are 1-based and may
/// lie out of range (then the value is zero).
struct UnitPos {
  Index row = 0, col = 0;  // 0-based
};
std::optional<UnitPos> unit_eval(const LambdaSequence& lambda, int level,
                                 std::span<const std::pair<Index, Index>> units);

/// (E2) selector: P in M_{tau(r)+tau(s), tau(r+s)} with ||P|| <= 1 turning
/// lambda_{r+s} on in-block unit tuples into diag(lambda_r, lambda_s).
/// Verified before being returned.
CMatrix e2_witness(const LambdaSequence& lambda, int r, int s);

/// (E1) selection witness with p = k and a_j the diagonal matrix units.
E1Witness e1_witness(const LambdaSequence& lambda, int k);

/// (W2) factorization lambda_p (x) lambda_q = S lambda_{pq} T on unit tuples.
W2Witness w2_witness(const LambdaSequence& lambda, int p, int q);

/// (W1) slot-recovery witness.  The returned pair is the best structured
/// candidate; `satisfied` records the verdict of the basis verification
/// (the Schur product legitimately fails for p >= 2, arity >= 2).
W1Witness w1_witness(const LambdaSequence& lambda, int p, int slot);

}  // namespace lt
