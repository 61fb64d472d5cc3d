#include "lt/order.hpp"

#include <cmath>

#include "lt/axioms.hpp"
#include "lt/errors.hpp"

namespace lt {

namespace {

constexpr double kExact = 1e-12;

void gate_o1_o2(const LambdaSequence& lambda, int level, const char* what) {
  if (check_O1(lambda, level).verdict != Verdict::pass)
    throw PreconditionError(std::string(what) + ": sequence fails (O1) at level " +
                            std::to_string(level));
  if (check_O2(lambda, level).verdict != Verdict::pass)
    throw PreconditionError(std::string(what) + ": sequence fails (O2) at level " +
                            std::to_string(level));
}

void gate_o3(const LambdaSequence& lambda, std::span<const Index> dims, int trials,
             const char* what) {
  ConditionReport o3 = check_O3(lambda, 2, dims, trials, /*seed=*/0, 1e-9,
                                /*elementary_cap=*/2048);
  if (o3.verdict != Verdict::pass)
    throw PreconditionError(std::string(what) + ": sequence fails the (O3) spot check");
}

/// Clips eigenvalues in [-tol*scale, 0) to zero; genuinely negative spectra
/// are rejected.  Matrices that are already PSD pass through untouched.
CMatrix clip_psd(const CMatrix& m, double tol, double* slack) {
  PsdReport rep = is_psd(m, tol);
  if (slack) *slack = rep.min_eig;
  if (!rep.psd) throw PreconditionError("factor is not positive semidefinite");
  if (rep.min_eig >= 0.0) return m;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()));
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix pad_top_left(const CMatrix& m, Index rows, Index cols) {
  CMatrix out = CMatrix::Zero(rows, cols);
  out.block(0, 0, m.rows(), m.cols()) = m;
  return out;
}

ProductKind effective_kind_two_slots(const LambdaSequence& lambda) {
  if (lambda.kind() != ProductKind::mixed) return lambda.kind();
  const auto& gs = lambda.groups();
  if (gs.size() == 1) return gs[0].product;
  return ProductKind::kronecker;  // two single-slot groups combine by kron
}

/// Elementary certificate of (pp*) (x) (qq*) in M_{kl}(M_{d1 d2}).
ConeCertificate rank_one_embed(const LambdaSequence& lambda, const Eigen::VectorXcd& p, Index k,
                               Index d1, const Eigen::VectorXcd& q, Index l, Index d2) {
  const ProductKind kind = effective_kind_two_slots(lambda);
  ConeCertificate cert;
  if (kind == ProductKind::kronecker) {
    const Index j0 = std::max(k, l);
    cert.level = static_cast<int>(j0);
    CMatrix alpha = CMatrix::Zero(k * l, lambda.tau(cert.level));
    for (Index a = 0; a < k; ++a)
      for (Index b = 0; b < l; ++b) alpha(a * l + b, a * j0 + b) = 1.0;
    cert.alpha = std::move(alpha);
    cert.factors.push_back(pad_top_left(CMatrix(p * p.adjoint()), j0 * d1, j0 * d1));
    cert.factors.push_back(pad_top_left(CMatrix(q * q.adjoint()), j0 * d2, j0 * d2));
  } else if (kind == ProductKind::schur) {
    // stretch each factor over the kl grid so the diagonal pairing of the
    // Schur expansion reproduces every block pair
    const Index lev = k * l;
    cert.level = static_cast<int>(lev);
    cert.alpha = CMatrix::Identity(lev, lambda.tau(cert.level));
    CMatrix pp = p * p.adjoint(), qq = q * q.adjoint();
    CMatrix v1 = CMatrix::Zero(lev * d1, lev * d1), v2 = CMatrix::Zero(lev * d2, lev * d2);
    for (Index a = 0; a < k; ++a)
      for (Index b = 0; b < l; ++b)
        for (Index a2 = 0; a2 < k; ++a2)
          for (Index b2 = 0; b2 < l; ++b2) {
            v1.block((a * l + b) * d1, (a2 * l + b2) * d1, d1, d1) =
                pp.block(a * d1, a2 * d1, d1, d1);
            v2.block((a * l + b) * d2, (a2 * l + b2) * d2, d2, d2) =
                qq.block(b * d2, b2 * d2, d2, d2);
          }
    cert.factors.push_back(std::move(v1));
    cert.factors.push_back(std::move(v2));
  } else {
    throw UnsupportedSequenceError("t2_embed: no elementary embedding for this sequence");
  }
  for (const auto& f : cert.factors) cert.psd_slack.push_back(is_psd(f).min_eig);
  return cert;
}

}  // namespace

SpaceSpec ConeCertificate::space() const {
  SpaceSpec spec;
  spec.n = alpha.rows();
  for (const auto& f : factors) spec.dims.push_back(f.rows() / level);
  return spec;
}

Decomposition ConeCertificate::dec() const {
  return {level, alpha, factors, alpha.adjoint()};
}

CertificateCheck verify_certificate(const LambdaSequence& lambda, const ConeCertificate& cert,
                                    const TensorElement* claimed, double tol) {
  CertificateCheck check;
  check.ok = true;
  for (const auto& f : cert.factors) {
    PsdReport rep = is_psd(f, tol);
    check.factor_min_eigs.push_back(rep.min_eig);
    if (!rep.psd) check.ok = false;
  }
  if (claimed) {
    TensorElement r = realize(lambda, cert.space(), cert.dec());
    check.realization_residual = op_norm(r.flat - claimed->flat);
    if (check.realization_residual > tol * (1.0 + op_norm(claimed->flat))) check.ok = false;
  }
  return check;
}

ConeCertificate scale_certificate(const ConeCertificate& cert, double t) {
  if (t < 0.0) throw PreconditionError("scale_certificate: scale must be nonnegative");
  ConeCertificate out = cert;
  out.alpha *= std::sqrt(t);
  return out;
}

ConeCertificate cone_add(const LambdaSequence& lambda, const ConeCertificate& a,
                         const ConeCertificate& b) {
  if (a.factors.size() != b.factors.size()) throw ArityError("cone_add: factor counts differ");
  if (a.n() != b.n()) throw DimensionError("cone_add: matrix levels differ");
  CMatrix P = e2_witness(lambda, a.level, b.level);
  ConeCertificate out;
  out.level = a.level + b.level;
  CMatrix joined(a.n(), a.alpha.cols() + b.alpha.cols());
  joined << a.alpha, b.alpha;
  out.alpha = joined * P;
  for (std::size_t t = 0; t < a.factors.size(); ++t) {
    if (a.factors[t].rows() / a.level != b.factors[t].rows() / b.level)
      throw DimensionError("cone_add: factor dimensions differ");
    out.factors.push_back(block_diag(a.factors[t], b.factors[t]));
    const double sa = t < a.psd_slack.size() ? a.psd_slack[t] : 0.0;
    const double sb = t < b.psd_slack.size() ? b.psd_slack[t] : 0.0;
    out.psd_slack.push_back(std::min(sa, sb));
  }
  return out;
}

ConeCertificate compress(const ConeCertificate& cert, const CMatrix& gamma) {
  if (gamma.rows() != cert.n())
    throw DimensionError("compress: gamma must have one row per certificate level index");
  ConeCertificate out = cert;
  out.alpha = gamma.adjoint() * cert.alpha;
  return out;
}

FalsifierResult psd_falsifier(const LambdaSequence& lambda, const TensorElement& element,
                              double tol, int o3_trials) {
  gate_o3(lambda, element.spec.dims, o3_trials, "psd_falsifier");
  PsdReport rep = is_psd(element.flat, tol);
  FalsifierResult res;
  res.min_eig = rep.min_eig;
  res.asym = rep.asym;
  res.verdict = rep.psd ? ConeVerdict::inconclusive : ConeVerdict::not_in_cone;
  return res;
}

std::pair<CMatrix, CMatrix> polar_split(const CMatrix& v) {
  if (v.rows() != v.cols()) throw DimensionError("polar_split: matrix must be square");
  Eigen::JacobiSVD<CMatrix> svd(v, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sig = svd.singularValues();
  CMatrix left = svd.matrixU() * sig.asDiagonal() * svd.matrixU().adjoint();   // |v*|
  CMatrix right = svd.matrixV() * sig.asDiagonal() * svd.matrixV().adjoint();  // |v|
  return {left, right};
}

BlockCertificate lambda_capital_ub(const LambdaSequence& lambda, const SpaceSpec& spec,
                                   const Decomposition& z_dec) {
  gate_o1_o2(lambda, z_dec.level, "lambda_capital_ub");
  CMatrix P = e2_witness(lambda, z_dec.level, z_dec.level);

  BlockCertificate out;
  out.z = realize(lambda, spec, z_dec);
  const CMatrix beta_row = z_dec.beta.adjoint();  // n x tau(j)

  ConeCertificate corner_u, corner_up;
  corner_u.level = corner_up.level = z_dec.level;
  corner_u.alpha = z_dec.alpha;
  corner_up.alpha = beta_row;

  ConeCertificate block;
  block.level = 2 * z_dec.level;
  block.alpha = block_diag(z_dec.alpha, beta_row) * P;
  for (const auto& v : z_dec.factors) {
    auto [v1, v2] = polar_split(v);
    const Index s = v.rows();
    CMatrix x = CMatrix::Zero(2 * s, 2 * s);
    x.block(0, 0, s, s) = v1;
    x.block(0, s, s, s) = v;
    x.block(s, 0, s, s) = v.adjoint();
    x.block(s, s, s, s) = v2;
    double slack = 0.0;
    block.factors.push_back(clip_psd(x, 1e-9, &slack));
    block.psd_slack.push_back(slack);
    corner_u.factors.push_back(v1);
    corner_u.psd_slack.push_back(is_psd(v1).min_eig);
    corner_up.factors.push_back(v2);
    corner_up.psd_slack.push_back(is_psd(v2).min_eig);
  }
  out.u = realize(lambda, spec, corner_u.dec());
  out.u_prime = realize(lambda, spec, corner_up.dec());
  out.value = std::max(decomposition_value(corner_u.dec()), decomposition_value(corner_up.dec()));
  out.corner_u = std::move(corner_u);
  out.corner_u_prime = std::move(corner_up);
  out.cert = std::move(block);
  return out;
}

ConeCertificate scalar_certificate(const LambdaSequence& lambda, const CMatrix& gamma,
                                   const SpaceSpec& spec, double tol) {
  if (gamma.rows() != spec.n || gamma.cols() != spec.n)
    throw DimensionError("scalar_certificate: gamma must be n x n");
  if (lambda.tau(1) != 1)
    throw UnsupportedSequenceError("scalar_certificate: needs tau(1) == 1");
  PsdReport rep = is_psd(gamma, tol);
  if (!rep.psd) throw PreconditionError("scalar_certificate: gamma is not PSD");

  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (gamma + gamma.adjoint()));
  std::optional<ConeCertificate> acc;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double ev = es.eigenvalues()(i);
    if (ev <= 0.0) continue;
    ConeCertificate term;
    term.level = 1;
    term.alpha = std::sqrt(ev) * es.eigenvectors().col(i);
    for (Index d : spec.dims) {
      term.factors.push_back(CMatrix::Identity(d, d));
      term.psd_slack.push_back(1.0);
    }
    acc = acc ? cone_add(lambda, *acc, term) : term;
  }
  if (!acc) {
    ConeCertificate zero;
    zero.level = 1;
    zero.alpha = CMatrix::Zero(spec.n, 1);
    for (Index d : spec.dims) {
      zero.factors.push_back(CMatrix::Identity(d, d));
      zero.psd_slack.push_back(1.0);
    }
    return zero;
  }
  return *acc;
}

OrderUnitBound order_unit_bound(const LambdaSequence& lambda, const SpaceSpec& spec,
                                const Decomposition& u_dec) {
  if (lambda.arity() != 2 || spec.dims.size() != 2)
    throw PreconditionError("order_unit_bound: two-slot systems only");
  Decomposition sym = symmetrize(lambda, spec, u_dec);
  const int j = sym.level;

  // the construction folds lambda_j(I,...,I) into the unit; builtins give
  // the identity exactly
  std::vector<CMatrix> ids(2, CMatrix::Identity(j, j));
  if (max_abs(lambda.eval(j, ids) - CMatrix::Identity(lambda.tau(j), lambda.tau(j))) > 1e-12)
    throw UnsupportedSequenceError("order_unit_bound: lambda_j(I,...,I) != I");

  const CMatrix& s = sym.factors[0];
  const CMatrix& t = sym.factors[1];
  const double K = std::max(op_norm(s), op_norm(t));
  const double na = op_norm(sym.alpha);
  const double bound = K * K * na * na;

  auto corner = [&](double e1, double e2) {
    ConeCertificate c;
    c.level = j;
    c.alpha = sym.alpha;
    CMatrix f1 = K * CMatrix::Identity(s.rows(), s.cols()) + e1 * s;
    CMatrix f2 = K * CMatrix::Identity(t.rows(), t.cols()) + e2 * t;
    double sl = 0.0;
    c.factors.push_back(clip_psd(f1, 1e-9, &sl));
    c.psd_slack.push_back(sl);
    c.factors.push_back(clip_psd(f2, 1e-9, &sl));
    c.psd_slack.push_back(sl);
    return c;
  };

  const CMatrix aa = sym.alpha * sym.alpha.adjoint();
  const CMatrix remainder = bound * CMatrix::Identity(spec.n, spec.n) - K * K * aa;
  ConeCertificate rem_cert = scalar_certificate(lambda, remainder, spec);

  OrderUnitBound out;
  out.k_factor = K;
  out.bound = bound;
  out.plus = cone_add(lambda, rem_cert,
                      scale_certificate(cone_add(lambda, corner(1, 1), corner(-1, -1)), 0.5));
  out.minus = cone_add(lambda, rem_cert,
                       scale_certificate(cone_add(lambda, corner(1, -1), corner(-1, 1)), 0.5));
  return out;
}

CMatrix choi_apply_blocks(const CMatrix& choi, const CMatrix& v, Index din, int level) {
  const Index dout = choi.rows() / din;
  CMatrix out = CMatrix::Zero(level * dout, level * dout);
  for (Index bi = 0; bi < level; ++bi)
    for (Index bj = 0; bj < level; ++bj) {
      CMatrix blk = v.block(bi * din, bj * din, din, din);
      CMatrix img = CMatrix::Zero(dout, dout);
      for (Index a = 0; a < din; ++a)
        for (Index b = 0; b < din; ++b)
          if (blk(a, b) != 0.0) img += blk(a, b) * choi.block(a * dout, b * dout, dout, dout);
      out.block(bi * dout, bj * dout, dout, dout) = img;
    }
  return out;
}

ConeCertificate ucp_apply(const LambdaSequence& lambda, const ConeCertificate& cert,
                          std::span<const CMatrix> choi, double tol) {
  if (choi.size() != cert.factors.size())
    throw ArityError("ucp_apply: one Choi matrix per slot required");
  const SpaceSpec spec = cert.space();
  ConeCertificate out;
  out.level = cert.level;
  out.alpha = cert.alpha;
  for (std::size_t t = 0; t < choi.size(); ++t) {
    const Index din = spec.dims[t];
    if (choi[t].rows() != choi[t].cols() || choi[t].rows() % din != 0)
      throw DimensionError("ucp_apply: Choi matrix size must be a multiple of the slot dimension");
    if (!is_psd(choi[t], tol).psd)
      throw NotCpError("ucp_apply: Choi matrix is not PSD, map is not completely positive");
    CMatrix mapped = choi_apply_blocks(choi[t], cert.factors[t], din, cert.level);
    double slack = 0.0;
    out.factors.push_back(clip_psd(mapped, tol, &slack));
    out.psd_slack.push_back(slack);
  }
  return out;
}

CMatrix t2_target(const CMatrix& P, Index k, Index d1, const CMatrix& Q, Index l, Index d2) {
  const Index n = k * l, d = d1 * d2;
  CMatrix out(n * d, n * d);
  for (Index a = 0; a < k; ++a)
    for (Index b = 0; b < l; ++b)
      for (Index a2 = 0; a2 < k; ++a2)
        for (Index b2 = 0; b2 < l; ++b2)
          out.block((a * l + b) * d, (a2 * l + b2) * d, d, d) =
              kron(CMatrix(P.block(a * d1, a2 * d1, d1, d1)),
                   CMatrix(Q.block(b * d2, b2 * d2, d2, d2)));
  return out;
}

T2Embedding t2_embed(const LambdaSequence& lambda, const CMatrix& P, Index k, Index d1,
                     const CMatrix& Q, Index l, Index d2) {
  if (lambda.arity() != 2) throw PreconditionError("t2_embed: two-slot systems only");
  if (P.rows() != k * d1 || P.cols() != k * d1 || Q.rows() != l * d2 || Q.cols() != l * d2)
    throw DimensionError("t2_embed: P must be (k*d1)^2 and Q (l*d2)^2");
  if (!is_psd(P).psd || !is_psd(Q).psd)
    throw PreconditionError("t2_embed: P and Q must be PSD");
  gate_o1_o2(lambda, 2, "t2_embed");
  const Index dims[] = {d1, d2};
  gate_o3(lambda, dims, 8, "t2_embed");

  const SpaceSpec spec{k * l, {d1, d2}};
  const CMatrix target = t2_target(P, k, d1, Q, l, d2);
  const double scale = 1.0 + op_norm(target);

  T2Embedding result;
  // literal block-identity witness: alpha = (I_{k+l}, 0, ..., 0) with the
  // factors embedded at level k+l
  const Index lev = k + l;
  const Index t_lev = lambda.tau(static_cast<int>(lev));
  if (k * l >= lev && t_lev >= lev) {
    ConeCertificate lit;
    lit.level = static_cast<int>(lev);
    lit.alpha = pad_top_left(CMatrix(CMatrix::Identity(lev, lev)), k * l, t_lev);
    lit.factors.push_back(pad_top_left(P, lev * d1, lev * d1));
    CMatrix q_emb = CMatrix::Zero(lev * d2, lev * d2);
    q_emb.block(k * d2, k * d2, l * d2, l * d2) = Q;
    lit.factors.push_back(std::move(q_emb));
    for (const auto& f : lit.factors) lit.psd_slack.push_back(is_psd(f).min_eig);
    TensorElement r = realize(lambda, spec, lit.dec());
    if (op_norm(r.flat - target) <= 1e-12 * scale) {
      result.cert = std::move(lit);
      result.paper_witness_used = true;
      result.note = "block-identity witness realized the product";
      return result;
    }
    result.note = "block-identity witness mismatch; rank-one fallback used";
  } else {
    result.note = "block-identity witness not constructible at these sizes; rank-one fallback used";
  }

  Eigen::SelfAdjointEigenSolver<CMatrix> ep(0.5 * (P + P.adjoint()));
  Eigen::SelfAdjointEigenSolver<CMatrix> eq(0.5 * (Q + Q.adjoint()));
  std::optional<ConeCertificate> acc;
  for (Index i = 0; i < ep.eigenvalues().size(); ++i) {
    if (ep.eigenvalues()(i) <= 0.0) continue;
    Eigen::VectorXcd p = std::sqrt(ep.eigenvalues()(i)) * ep.eigenvectors().col(i);
    for (Index h = 0; h < eq.eigenvalues().size(); ++h) {
      if (eq.eigenvalues()(h) <= 0.0) continue;
      Eigen::VectorXcd q = std::sqrt(eq.eigenvalues()(h)) * eq.eigenvectors().col(h);
      ConeCertificate term = rank_one_embed(lambda, p, k, d1, q, l, d2);
      acc = acc ? cone_add(lambda, *acc, term) : term;
    }
  }
  if (!acc) {
    ConeCertificate zero;
    zero.level = 1;
    zero.alpha = CMatrix::Zero(k * l, lambda.tau(1));
    zero.factors.push_back(CMatrix::Identity(d1, d1));
    zero.factors.push_back(CMatrix::Identity(d2, d2));
    zero.psd_slack = {1.0, 1.0};
    acc = std::move(zero);
  }
  TensorElement r = realize(lambda, spec, acc->dec());
  if (op_norm(r.flat - target) > 1e-12 * scale)
    throw Error("internal: t2_embed fallback failed to realize the product");
  result.cert = std::move(*acc);
  return result;
}

}  // namespace lt
