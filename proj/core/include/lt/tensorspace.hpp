#pragma once

#include <span>
#include <vector>

#include "lt/lambda.hpp"
#include "lt/matcore.hpp"

namespace lt {

/// M_n(M_{d_1} (x) ... (x) M_{d_m}) with the canonical flattening order:
/// n outermost, then d_1, ..., d_m, row-major.
struct SpaceSpec {
  Index n = 1;
  std::vector<Index> dims;

  Index inner_dim() const {
    Index d = 1;
    for (Index x : dims) d *= x;
    return d;
  }
  Index flat_dim() const { return n * inner_dim(); }

  bool operator==(const SpaceSpec&) const = default;
};

/// One representation alpha (x)_{lambda_level} (v_1, ..., v_m) beta.
/// Factor v_t lives in M_level(M_{d_t}), stored as the (level*d_t) square
/// matrix with the level index outermost.
struct Decomposition {
  int level = 1;
  CMatrix alpha;                 // n x tau(level)
  std::vector<CMatrix> factors;  // (level*d_t) x (level*d_t)
  CMatrix beta;                  // tau(level) x n
};

struct TensorElement {
  SpaceSpec spec;
  CMatrix flat;
};

/// The tensorized multilinear map: sum over matrix-unit tuples of
/// lambda_level(units) (x) v_1[i_1,j_1] (x) ... (x) v_m[i_m,j_m].
/// Output size tau(level) * prod(dims).
CMatrix tensorize(const LambdaSequence& lambda, int level, std::span<const CMatrix> factors,
                  std::span<const Index> dims);

/// Canonical flattening of the decomposition.
TensorElement realize(const LambdaSequence& lambda, const SpaceSpec& spec,
                      const Decomposition& dec);

/// ||alpha|| * prod ||v_t|| * ||beta||; an upper bound for the lambda-norm
/// of the realized element.
double decomposition_value(const Decomposition& dec);

/// (beta*, v_1*, ..., v_m*, alpha*).  Requires (O1) at the decomposition
/// level; throws InvolutionUnsupportedError otherwise.
Decomposition star(const LambdaSequence& lambda, const Decomposition& dec);

/// Direct-sum combination through the (E2) selector: realizes the sum of the
/// two inputs exactly; the level adds.
Decomposition dec_add(const LambdaSequence& lambda, const Decomposition& a,
                      const Decomposition& b);

/// Self-adjoint representation with beta = alpha* and self-adjoint factors,
/// built from the off-diagonal block trick at level 2j.  The balancing
/// exponent mu = sqrt(||alpha||/||beta||) keeps the output value within
/// delta of the input value.  Requires (O1), (O2) at the level and a
/// self-adjoint realization.
Decomposition symmetrize(const LambdaSequence& lambda, const SpaceSpec& spec,
                         const Decomposition& dec, double delta = 1e-12);

/// Operator norm of the flattening: the injective-norm lower bound.
double min_norm(const TensorElement& element);

struct NormBound {
  double value = 0.0;
  Decomposition best;
};

/// Certified upper bound: the least candidate value after factor
/// normalization and alpha/beta balancing.  Every candidate must realize the
/// element (relative tolerance 1e-9).
NormBound lambda_norm_ub(const LambdaSequence& lambda, const TensorElement& element,
                         std::span<const Decomposition> candidates);

}  // namespace lt
