#include "lt/matcore.hpp"

#include <cmath>

namespace lt {

CMatrix matrix_unit(Index i, Index j, Index k, Index l) {
  CMatrix m = CMatrix::Zero(k, l);
  if (i >= 1 && i <= k && j >= 1 && j <= l) m(i - 1, j - 1) = 1.0;
  return m;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix schur(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("schur: shape mismatch");
  return a.cwiseProduct(b);
}

double op_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  // sqrt of the top eigenvalue of the smaller Gram matrix; deterministic
  // for a fixed input.
  CMatrix g = (a.rows() <= a.cols()) ? CMatrix(a * a.adjoint()) : CMatrix(a.adjoint() * a);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(g, Eigen::EigenvaluesOnly);
  double top = es.eigenvalues().maxCoeff();
  return top > 0.0 ? std::sqrt(top) : 0.0;
}

double max_abs(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

bool all_finite(const CMatrix& a) { return a.allFinite(); }

PsdReport is_psd(const CMatrix& a, double tol) {
  if (a.rows() != a.cols()) throw DimensionError("is_psd: matrix not square");
  PsdReport rep;
  if (a.size() == 0) {
    rep.psd = true;
    return rep;
  }
  double scale = 1.0 + op_norm(a);
  rep.asym = op_norm(a - a.adjoint());
  CMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  rep.min_eig = es.eigenvalues().minCoeff();
  rep.psd = rep.asym <= tol * scale && rep.min_eig >= -tol * scale;
  return rep;
}

CMatrix block_diag(std::span<const CMatrix> blocks) {
  Index rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  CMatrix out = CMatrix::Zero(rows, cols);
  Index r = 0, c = 0;
  for (const auto& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

CMatrix block_diag(const CMatrix& x, const CMatrix& y) {
  const CMatrix blocks[] = {x, y};
  return block_diag(std::span<const CMatrix>(blocks, 2));
}

CMatrix block_adiag(const CMatrix& x, const CMatrix& y) {
  if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows())
    throw DimensionError("block_adiag: needs two square blocks of equal size");
  Index n = x.rows();
  CMatrix out = CMatrix::Zero(2 * n, 2 * n);
  out.block(0, n, n, n) = x;
  out.block(n, 0, n, n) = y;
  return out;
}

CMatrix block_assemble(BlockKind kind, std::span<const CMatrix> blocks) {
  if (kind == BlockKind::diag) return block_diag(blocks);
  if (blocks.size() != 2)
    throw DimensionError("block_assemble: adiag takes exactly two blocks");
  return block_adiag(blocks[0], blocks[1]);
}

}  // namespace lt
