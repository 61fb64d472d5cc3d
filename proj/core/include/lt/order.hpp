#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lt/lambda.hpp"
#include "lt/matcore.hpp"
#include "lt/tensorspace.hpp"

namespace lt {

/// Membership witness for the cone C_n: a decomposition with beta = alpha*
/// and every factor positive semidefinite.  beta is implied, never stored.
struct ConeCertificate {
  int level = 1;
  CMatrix alpha;                  // n x tau(level)
  std::vector<CMatrix> factors;   // PSD, (level*d_t) square
  std::vector<double> psd_slack;  // min eigenvalue per factor at emission

  Index n() const { return alpha.rows(); }
  SpaceSpec space() const;
  Decomposition dec() const;
};

struct CertificateCheck {
  bool ok = false;
  std::vector<double> factor_min_eigs;
  double realization_residual = 0.0;  // vs the claimed element, when given
};

/// Checks the PSD of every factor and, when a claimed element is attached,
/// the realization match.
CertificateCheck verify_certificate(const LambdaSequence& lambda, const ConeCertificate& cert,
                                    const TensorElement* claimed = nullptr, double tol = 1e-9);

ConeCertificate scale_certificate(const ConeCertificate& cert, double t);  // t >= 0

/// Direct-sum addition through the (E2) selector; realizations add exactly.
ConeCertificate cone_add(const LambdaSequence& lambda, const ConeCertificate& a,
                         const ConeCertificate& b);

/// gamma* alpha (x) (v) (gamma* alpha)* for gamma of shape n(cert) x k;
/// realization is conjugated by gamma on the level index.
ConeCertificate compress(const ConeCertificate& cert, const CMatrix& gamma);

enum class ConeVerdict { not_in_cone, inconclusive };

struct FalsifierResult {
  ConeVerdict verdict = ConeVerdict::inconclusive;
  double min_eig = 0.0;
  double asym = 0.0;
};

/// Necessary-condition test: a non-PSD flattening rules cone membership out;
/// a PSD flattening proves nothing.  Refused unless the sequence passes a
/// (O3) spot check for the element's dimensions.
FalsifierResult psd_falsifier(const LambdaSequence& lambda, const TensorElement& element,
                              double tol = 1e-9, int o3_trials = 24);

/// (v1, v2) with [[v1, v],[v*, v2]] PSD and ||v1|| = ||v2|| = ||v||;
/// v1 = |v*|, v2 = |v|.
std::pair<CMatrix, CMatrix> polar_split(const CMatrix& v);

struct BlockCertificate {
  TensorElement z, u, u_prime;
  ConeCertificate corner_u, corner_u_prime;  // level-n certificates of the corners
  ConeCertificate cert;                      // the 2n-level block certificate
  double value = 0.0;                        // max of the corner value bounds
};

/// Capital-Lambda upper bound: completes z into a certified 2n block
/// [[u, z],[z*, u']] by polar-splitting every factor; value bounds the
/// Lambda-norm from above.  Requires (O1), (O2) and the (E2) witness.
BlockCertificate lambda_capital_ub(const LambdaSequence& lambda, const SpaceSpec& spec,
                                   const Decomposition& z_dec);

/// Certificate of gamma (x) 1 (x) ... (x) 1 for PSD gamma, assembled from
/// rank-one columns at level 1.
ConeCertificate scalar_certificate(const LambdaSequence& lambda, const CMatrix& gamma,
                                   const SpaceSpec& spec, double tol = 1e-9);

struct OrderUnitBound {
  double k_factor = 0.0;  // K with K*1 +- factor PSD per slot
  double bound = 0.0;     // K' = K^2 ||alpha alpha*||: K'*1 +- u is certified
  ConeCertificate plus;   // certificate of bound*1 + u
  ConeCertificate minus;  // certificate of bound*1 - u
};

/// Order-unit certificates for a self-adjoint element of a two-slot system.
OrderUnitBound order_unit_bound(const LambdaSequence& lambda, const SpaceSpec& spec,
                                const Decomposition& u_dec);

/// Applies completely positive maps (Choi matrices, input index outermost)
/// slotwise to the certificate factors.
ConeCertificate ucp_apply(const LambdaSequence& lambda, const ConeCertificate& cert,
                          std::span<const CMatrix> choi, double tol = 1e-9);

/// Applies the Choi map to every level-block of v in M_level(M_din).
CMatrix choi_apply_blocks(const CMatrix& choi, const CMatrix& v, Index din, int level);

struct T2Embedding {
  ConeCertificate cert;
  bool paper_witness_used = false;
  std::string note;
};

/// Certificate for P (x) Q with P in M_k(M_{d1})^+, Q in M_l(M_{d2})^+,
/// flattened into M_{kl}(M_{d1 d2}).  The block-identity witness is tried
/// first; on shape or realization mismatch the rank-one eigendecomposition
/// fallback is summed with cone_add.
T2Embedding t2_embed(const LambdaSequence& lambda, const CMatrix& P, Index k, Index d1,
                     const CMatrix& Q, Index l, Index d2);

/// Flattening of P (x) Q into the canonical order (k,l) outer, (d1,d2) inner.
CMatrix t2_target(const CMatrix& P, Index k, Index d1, const CMatrix& Q, Index l, Index d2);

}  // namespace lt
