#include "lt/tensorspace.hpp"

#include <cmath>

#include "lt/axioms.hpp"
#include "lt/errors.hpp"

namespace lt {

namespace {

struct BlockEntry {
  Index i, j;  // 1-based level coordinates
  CMatrix block;
};

std::vector<std::vector<BlockEntry>> nonzero_blocks(std::span<const CMatrix> factors, int level,
                                                    std::span<const Index> dims) {
  std::vector<std::vector<BlockEntry>> out(factors.size());
  for (std::size_t t = 0; t < factors.size(); ++t) {
    const Index d = dims[t];
    for (Index i = 1; i <= level; ++i)
      for (Index j = 1; j <= level; ++j) {
        CMatrix b = factors[t].block((i - 1) * d, (j - 1) * d, d, d);
        if (!b.isZero(0.0)) out[t].push_back({i, j, std::move(b)});
      }
  }
  return out;
}

void validate_factors(const LambdaSequence& lambda, int level, std::span<const CMatrix> factors,
                      std::span<const Index> dims) {
  if (static_cast<int>(factors.size()) != lambda.arity() || factors.size() != dims.size())
    throw ArityError("expected one factor and one dimension per slot");
  for (std::size_t t = 0; t < factors.size(); ++t) {
    const Index side = level * dims[t];
    if (factors[t].rows() != side || factors[t].cols() != side)
      throw DimensionError("factor " + std::to_string(t + 1) +
                           " must be (level*d) x (level*d)");
  }
}

void validate_dec(const LambdaSequence& lambda, const SpaceSpec& spec, const Decomposition& dec) {
  if (static_cast<int>(spec.dims.size()) != lambda.arity())
    throw ArityError("space has a different slot count than the sequence");
  validate_factors(lambda, dec.level, dec.factors, spec.dims);
  const Index t = lambda.tau(dec.level);
  if (dec.alpha.rows() != spec.n || dec.alpha.cols() != t)
    throw DimensionError("alpha must be n x tau(level)");
  if (dec.beta.rows() != t || dec.beta.cols() != spec.n)
    throw DimensionError("beta must be tau(level) x n");
}

/// Iterates the nonzero unit tuples of the expansion; emit(row, col, value,
/// block_kron) receives the sparse lambda value and the Kronecker product of
/// the chosen factor blocks.
template <typename Emit>
void expand(const LambdaSequence& lambda, int level, std::span<const CMatrix> factors,
            std::span<const Index> dims, Emit&& emit) {
  const int m = lambda.arity();
  const auto blocks = nonzero_blocks(factors, level, dims);
  for (const auto& list : blocks)
    if (list.empty()) return;
  std::vector<std::size_t> idx(m, 0);
  std::vector<std::pair<Index, Index>> tuple(m);
  for (;;) {
    CMatrix bk;
    for (int t = 0; t < m; ++t) {
      const BlockEntry& e = blocks[t][idx[t]];
      tuple[t] = {e.i, e.j};
      bk = (t == 0) ? e.block : CMatrix(kron(bk, e.block));
    }
    if (lambda.is_builtin()) {
      if (auto pos = unit_eval(lambda, level, tuple)) emit(pos->row, pos->col, Complex(1.0), bk);
    } else {
      std::vector<CMatrix> units;
      units.reserve(m);
      for (const auto& [i, j] : tuple) units.push_back(matrix_unit(i, j, level));
      CMatrix val = lambda.eval(level, units);
      for (Index c = 0; c < val.cols(); ++c)
        for (Index r = 0; r < val.rows(); ++r)
          if (val(r, c) != 0.0) emit(r, c, val(r, c), bk);
    }
    int t = m - 1;
    for (; t >= 0; --t) {
      if (++idx[t] < blocks[t].size()) break;
      idx[t] = 0;
    }
    if (t < 0) break;
  }
}

void require_condition(const LambdaSequence& lambda, int level, const char* cond,
                       bool need_o2 = false) {
  ConditionReport o1 = check_O1(lambda, level);
  if (o1.verdict != Verdict::pass)
    throw InvolutionUnsupportedError(std::string(cond) + ": sequence does not satisfy (O1) at level " +
                                     std::to_string(level));
  if (need_o2) {
    ConditionReport o2 = check_O2(lambda, level);
    if (o2.verdict != Verdict::pass)
      throw PreconditionError(std::string(cond) + ": sequence does not satisfy (O2) at level " +
                              std::to_string(level));
  }
}

Decomposition normalized_candidate(const Decomposition& dec) {
  Decomposition out = dec;
  Complex carry = 1.0;
  for (auto& v : out.factors) {
    const double n = op_norm(v);
    if (n > 0.0) {
      v /= n;
      carry *= n;
    }
  }
  out.alpha *= carry;
  const double na = op_norm(out.alpha), nb = op_norm(out.beta);
  if (na > 0.0 && nb > 0.0) {
    const double bal = std::sqrt(nb / na);
    out.alpha *= bal;
    out.beta /= bal;
  }
  return out;
}

}  // namespace

CMatrix tensorize(const LambdaSequence& lambda, int level, std::span<const CMatrix> factors,
                  std::span<const Index> dims) {
  validate_factors(lambda, level, factors, dims);
  Index d = 1;
  for (Index x : dims) d *= x;
  CMatrix out = CMatrix::Zero(lambda.tau(level) * d, lambda.tau(level) * d);
  expand(lambda, level, factors, dims,
         [&](Index r, Index c, Complex v, const CMatrix& bk) {
           out.block(r * d, c * d, d, d) += v * bk;
         });
  return out;
}

TensorElement realize(const LambdaSequence& lambda, const SpaceSpec& spec,
                      const Decomposition& dec) {
  validate_dec(lambda, spec, dec);
  const Index d = spec.inner_dim();
  CMatrix flat = CMatrix::Zero(spec.flat_dim(), spec.flat_dim());
  expand(lambda, dec.level, dec.factors, spec.dims,
         [&](Index r, Index c, Complex v, const CMatrix& bk) {
           const CMatrix outer = v * (dec.alpha.col(r) * dec.beta.row(c));
           for (Index i = 0; i < spec.n; ++i)
             for (Index j = 0; j < spec.n; ++j)
               if (outer(i, j) != 0.0) flat.block(i * d, j * d, d, d) += outer(i, j) * bk;
         });
  return {spec, std::move(flat)};
}

double decomposition_value(const Decomposition& dec) {
  double v = op_norm(dec.alpha) * op_norm(dec.beta);
  for (const auto& f : dec.factors) v *= op_norm(f);
  return v;
}

Decomposition star(const LambdaSequence& lambda, const Decomposition& dec) {
  require_condition(lambda, dec.level, "star");
  Decomposition out;
  out.level = dec.level;
  out.alpha = dec.beta.adjoint();
  out.factors.reserve(dec.factors.size());
  for (const auto& f : dec.factors) out.factors.push_back(f.adjoint());
  out.beta = dec.alpha.adjoint();
  return out;
}

Decomposition dec_add(const LambdaSequence& lambda, const Decomposition& a,
                      const Decomposition& b) {
  if (a.factors.size() != b.factors.size())
    throw ArityError("dec_add: factor counts differ");
  if (a.alpha.rows() != b.alpha.rows() || a.beta.cols() != b.beta.cols())
    throw DimensionError("dec_add: matrix levels differ");
  const int level = a.level + b.level;
  CMatrix P = e2_witness(lambda, a.level, b.level);
  Decomposition out;
  out.level = level;
  CMatrix joined(a.alpha.rows(), a.alpha.cols() + b.alpha.cols());
  joined << a.alpha, b.alpha;
  out.alpha = joined * P;
  CMatrix stacked(a.beta.rows() + b.beta.rows(), a.beta.cols());
  stacked << a.beta, b.beta;
  out.beta = P.adjoint() * stacked;
  out.factors.reserve(a.factors.size());
  for (std::size_t t = 0; t < a.factors.size(); ++t) {
    const Index da = a.factors[t].rows() / a.level;
    const Index db = b.factors[t].rows() / b.level;
    if (da != db) throw DimensionError("dec_add: factor dimensions differ");
    out.factors.push_back(block_diag(a.factors[t], b.factors[t]));
  }
  return out;
}

Decomposition symmetrize(const LambdaSequence& lambda, const SpaceSpec& spec,
                         const Decomposition& dec, double delta) {
  validate_dec(lambda, spec, dec);
  TensorElement u = realize(lambda, spec, dec);
  const double scale = 1.0 + op_norm(u.flat);
  if (op_norm(u.flat - u.flat.adjoint()) > 1e-9 * scale)
    throw PreconditionError("symmetrize: the realized element is not self-adjoint");
  require_condition(lambda, dec.level, "symmetrize", /*need_o2=*/true);

  const double na = op_norm(dec.alpha), nb = op_norm(dec.beta);
  const double mu = (na > 0.0 && nb > 0.0) ? std::sqrt(na / nb) : 1.0;
  const double isq2 = 1.0 / std::sqrt(2.0);

  CMatrix P = e2_witness(lambda, dec.level, dec.level);
  CMatrix bar(spec.n, dec.alpha.cols() + dec.beta.rows());
  bar << (isq2 / mu) * dec.beta.adjoint(), (isq2 * mu) * dec.alpha;

  Decomposition out;
  out.level = 2 * dec.level;
  out.alpha = bar * P;
  out.beta = out.alpha.adjoint();
  out.factors.reserve(dec.factors.size());
  for (const auto& v : dec.factors) out.factors.push_back(block_adiag(v.adjoint(), v));

  if (decomposition_value(out) > decomposition_value(dec) + delta)
    throw Error("internal: symmetrize exceeded the balanced value bound");
  return out;
}

double min_norm(const TensorElement& element) { return op_norm(element.flat); }

NormBound lambda_norm_ub(const LambdaSequence& lambda, const TensorElement& element,
                         std::span<const Decomposition> candidates) {
  const double scale = 1.0 + op_norm(element.flat);
  if (element.flat.isZero(0.0)) {
    // the zero element always has the trivial zero decomposition
    NormBound nb;
    nb.value = 0.0;
    nb.best.level = 1;
    nb.best.alpha = CMatrix::Zero(element.spec.n, lambda.tau(1));
    for (Index d : element.spec.dims) nb.best.factors.push_back(CMatrix::Identity(d, d));
    nb.best.beta = CMatrix::Zero(lambda.tau(1), element.spec.n);
    return nb;
  }
  if (candidates.empty()) throw Error("lambda_norm_ub: empty candidate list");
  NormBound best;
  bool have = false;
  for (const auto& cand : candidates) {
    TensorElement r = realize(lambda, element.spec, cand);
    if (op_norm(r.flat - element.flat) > 1e-9 * scale)
      throw Error("lambda_norm_ub: candidate realizes a different element");
    Decomposition norm = normalized_candidate(cand);
    const double value = decomposition_value(norm);
    if (!have || value < best.value) {
      best.value = value;
      best.best = std::move(norm);
      have = true;
    }
  }
  return best;
}

}  // namespace lt
