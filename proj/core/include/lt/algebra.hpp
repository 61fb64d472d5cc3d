#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "lt/lambda.hpp"
#include "lt/tensorspace.hpp"

namespace lt {

/// Element of the tensor algebra over matrix-algebra factors: a level-1
/// (n = 1) decomposition together with its exact flattening.
struct AlgebraElement {
  SpaceSpec spec;  // n == 1
  Decomposition dec;
  CMatrix flat;  // prod(dims) square
};

/// Validates the space and caches the flattening.
AlgebraElement make_algebra_element(const LambdaSequence& lambda, const SpaceSpec& spec,
                                    const Decomposition& dec);

/// Product through the (W2) factorization: level r*s decomposition whose
/// flattening equals flat(x) * flat(y) exactly; the decomposition value is
/// submultiplicative.
AlgebraElement multiply(const LambdaSequence& lambda, const AlgebraElement& x,
                        const AlgebraElement& y);

/// Adjoint via the starred decomposition; requires (O1).
AlgebraElement involution(const LambdaSequence& lambda, const AlgebraElement& x);

struct SubmultRow {
  double value_x = 0.0, value_y = 0.0, value_xy = 0.0;
  double oracle_residual = 0.0;  // ||flat(xy) - flat(x) flat(y)||
  bool ok = false;
};

struct SubmultReport {
  std::vector<SubmultRow> rows;
  bool all_ok = true;
  double max_oracle_residual = 0.0;
  double max_excess = 0.0;  // max of value_xy - value_x * value_y
};

SubmultReport submult_report(const LambdaSequence& lambda,
                             std::span<const std::pair<AlgebraElement, AlgebraElement>> pairs,
                             double tol = 1e-9);

/// Samples `count` seeded pairs on the given space and reports on them.
SubmultReport submult_report(const LambdaSequence& lambda, const SpaceSpec& spec, int count,
                             std::uint64_t seed, double tol = 1e-9);

/// Seeded random algebra element with levels up to max_level.
AlgebraElement random_algebra_element(const LambdaSequence& lambda, const SpaceSpec& spec,
                                      int max_level, std::uint64_t seed);

}  // namespace lt
