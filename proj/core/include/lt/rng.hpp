#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "lt/matcore.hpp"

namespace lt {

/// Deterministic random source.  Normals use an explicit Box-Muller
/// transform on raw engine bits so streams depend only on the seed, not on
/// the standard library's distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t bits() { return gen_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform in {lo, ..., hi}.
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  Complex cnormal() {
    double re = normal();
    double im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
  }

  /// Matrix of i.i.d. standard complex gaussians.
  CMatrix ginibre(Index rows, Index cols) {
    CMatrix g(rows, cols);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j) g(i, j) = cnormal();
    return g;
  }

  /// G G* for a gaussian G with the given inner rank; PSD by construction.
  CMatrix wishart(Index n, Index rank) {
    CMatrix g = ginibre(n, rank);
    return g * g.adjoint();
  }

  /// Random matrix scaled into the closed unit ball of the operator norm.
  CMatrix unit_ball(Index rows, Index cols) {
    CMatrix g = ginibre(rows, cols);
    double nrm = op_norm(g);
    if (nrm > 0.0) g /= nrm;
    return g;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace lt
