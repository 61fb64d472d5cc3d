#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "lt/errors.hpp"

namespace lt {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

/// k x l matrix with a single 1 at the 1-based coordinate (i, j); the zero
/// matrix when (i, j) lies outside {1..k} x {1..l}.
CMatrix matrix_unit(Index i, Index j, Index k, Index l);

inline CMatrix matrix_unit(Index i, Index j, Index k) { return matrix_unit(i, j, k, k); }

/// Kronecker product, row index of a outermost.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Entrywise (Schur) product; shapes must match.
CMatrix schur(const CMatrix& a, const CMatrix& b);

/// Largest singular value.
double op_norm(const CMatrix& a);

double max_abs(const CMatrix& a);

bool all_finite(const CMatrix& a);

struct PsdReport {
  bool psd = false;
  double min_eig = 0.0;  // smallest eigenvalue of the hermitian part
  double asym = 0.0;     // ||a - a*||
};

/// PSD test at relative tolerance: a is accepted when ||a - a*|| stays below
/// tol * (1 + ||a||) and the hermitian part (a + a*)/2 has min eigenvalue
/// >= -tol * (1 + ||a||).  The asymmetry is measured before symmetrizing.
PsdReport is_psd(const CMatrix& a, double tol = 1e-9);

enum class BlockKind { diag, adiag };

/// Blocks placed along the main diagonal, zero elsewhere.
CMatrix block_diag(std::span<const CMatrix> blocks);
CMatrix block_diag(const CMatrix& x, const CMatrix& y);

/// [[0, x], [y, 0]] for two square blocks of equal size.
CMatrix block_adiag(const CMatrix& x, const CMatrix& y);

CMatrix block_assemble(BlockKind kind, std::span<const CMatrix> blocks);

}  // namespace lt
