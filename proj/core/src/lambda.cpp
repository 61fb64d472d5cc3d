#include "lt/lambda.hpp"

#include <numeric>
#include <sstream>

#include "lt/axioms.hpp"
#include "lt/errors.hpp"

namespace lt {

namespace {

Index ipow(Index base, int e) {
  Index r = 1;
  while (e-- > 0) r *= base;
  return r;
}

/// Row-major position of 0-based digits.
Index flatten(std::span<const Index> digits, std::span<const Index> radices) {
  Index pos = 0;
  for (std::size_t t = 0; t < digits.size(); ++t) pos = pos * radices[t] + digits[t];
  return pos;
}

Index group_tau(const MixedGroup& g, int level) {
  switch (g.product) {
    case ProductKind::kronecker:
      return ipow(level, static_cast<int>(g.slots.size()));
    case ProductKind::schur:
    case ProductKind::matprod:
      return level;
    default:
      throw UnsupportedSequenceError("mixed group product must be kronecker, schur or matprod");
  }
}

std::optional<UnitPos> base_unit_eval(ProductKind product, int level,
                                      std::span<const std::pair<Index, Index>> units) {
  for (const auto& [i, j] : units)
    if (i < 1 || i > level || j < 1 || j > level) return std::nullopt;
  switch (product) {
    case ProductKind::kronecker: {
      Index row = 0, col = 0;
      for (const auto& [i, j] : units) {
        row = row * level + (i - 1);
        col = col * level + (j - 1);
      }
      return UnitPos{row, col};
    }
    case ProductKind::schur: {
      for (std::size_t t = 1; t < units.size(); ++t)
        if (units[t] != units[0]) return std::nullopt;
      return UnitPos{units[0].first - 1, units[0].second - 1};
    }
    case ProductKind::matprod: {
      for (std::size_t t = 0; t + 1 < units.size(); ++t)
        if (units[t].second != units[t + 1].first) return std::nullopt;
      return UnitPos{units.front().first - 1, units.back().second - 1};
    }
    default:
      return std::nullopt;
  }
}

CMatrix fold_base(ProductKind product, std::span<const CMatrix> args) {
  CMatrix acc = args[0];
  for (std::size_t t = 1; t < args.size(); ++t) {
    switch (product) {
      case ProductKind::kronecker:
        acc = kron(acc, args[t]);
        break;
      case ProductKind::schur:
        acc = acc.cwiseProduct(args[t]);
        break;
      case ProductKind::matprod:
        acc = acc * args[t];
        break;
      default:
        throw UnsupportedSequenceError("unsupported base product");
    }
  }
  return acc;
}

/// Permutation S with (⊗_g A_g) ⊗ (⊗_g B_g) = S (⊗_g (A_g ⊗ B_g)) S^T for
/// square A_g, B_g of sizes adims[g], bdims[g].
CMatrix grouping_permutation(std::span<const Index> adims, std::span<const Index> bdims) {
  const std::size_t G = adims.size();
  Index total = 1;
  for (Index a : adims) total *= a;
  for (Index b : bdims) total *= b;
  std::vector<Index> inter_radix(2 * G);
  for (std::size_t g = 0; g < G; ++g) {
    inter_radix[2 * g] = adims[g];
    inter_radix[2 * g + 1] = bdims[g];
  }
  CMatrix s = CMatrix::Zero(total, total);
  std::vector<Index> digits(2 * G, 0);  // grouped order: a_1..a_G, b_1..b_G
  std::vector<Index> grouped_radix(2 * G);
  for (std::size_t g = 0; g < G; ++g) {
    grouped_radix[g] = adims[g];
    grouped_radix[G + g] = bdims[g];
  }
  for (Index u = 0; u < total; ++u) {
    std::vector<Index> inter(2 * G);
    for (std::size_t g = 0; g < G; ++g) {
      inter[2 * g] = digits[g];
      inter[2 * g + 1] = digits[G + g];
    }
    s(u, flatten(inter, inter_radix)) = 1.0;
    for (int t = static_cast<int>(2 * G) - 1; t >= 0; --t) {
      if (++digits[t] < grouped_radix[t]) break;
      digits[t] = 0;
    }
  }
  return s;
}

CMatrix base_e2_selector(ProductKind product, int arity, int r, int s) {
  if (product == ProductKind::schur || product == ProductKind::matprod)
    return CMatrix::Identity(r + s, r + s);
  // kronecker: pick the all-low and all-high multi-indices of the (r+s)^m grid
  const Index rm = ipow(r, arity), sm = ipow(s, arity);
  const Index big = ipow(r + s, arity);
  const std::vector<Index> big_radix(arity, r + s);
  CMatrix p = CMatrix::Zero(rm + sm, big);
  std::vector<Index> d(arity, 0);
  for (Index u = 0; u < rm; ++u) {
    p(u, flatten(d, big_radix)) = 1.0;
    for (int t = arity - 1; t >= 0; --t) {
      if (++d[t] < r) break;
      d[t] = 0;
    }
  }
  std::fill(d.begin(), d.end(), 0);
  for (Index u = 0; u < sm; ++u) {
    std::vector<Index> shifted(d.begin(), d.end());
    for (auto& x : shifted) x += r;
    p(rm + u, flatten(shifted, big_radix)) = 1.0;
    for (int t = arity - 1; t >= 0; --t) {
      if (++d[t] < s) break;
      d[t] = 0;
    }
  }
  return p;
}

CMatrix base_w2_S(ProductKind product, int arity, int p, int q) {
  if (product == ProductKind::schur || product == ProductKind::matprod)
    return CMatrix::Identity(static_cast<Index>(p) * q, static_cast<Index>(p) * q);
  const std::vector<Index> adims(arity, p), bdims(arity, q);
  return grouping_permutation(adims, bdims);
}

struct BaseW1 {
  CMatrix P, Q;
};

BaseW1 base_w1(ProductKind product, int arity, int p, int slot_in_group) {
  if (product == ProductKind::matprod || arity == 1)
    return {CMatrix::Identity(p, p), CMatrix::Identity(p, p)};
  if (product == ProductKind::kronecker) {
    // slice onto the block where every other factor sits at entry (1,1)
    const std::vector<Index> radix(arity, p);
    CMatrix P = CMatrix::Zero(p, ipow(p, arity));
    for (Index a = 0; a < p; ++a) {
      std::vector<Index> d(arity, 0);
      d[slot_in_group - 1] = a;
      P(a, flatten(d, radix)) = 1.0;
    }
    return {P, P.adjoint()};
  }
  // schur: lambda_p(I,..,g,..,I) only retains diag(g); the identity pair is
  // the exact diagonal extraction and the best structured candidate.
  return {CMatrix::Identity(p, p), CMatrix::Identity(p, p)};
}

void require_builtin_ok(double residual, double tol, const char* what) {
  if (residual > tol) {
    std::ostringstream os;
    os << "internal: builtin " << what << " witness failed verification, residual " << residual;
    throw Error(os.str());
  }
}

constexpr double kWitnessTol = 1e-10;
constexpr double kNormSlack = 1e-12;

}  // namespace

std::string to_string(ProductKind kind) {
  switch (kind) {
    case ProductKind::kronecker:
      return "kronecker";
    case ProductKind::schur:
      return "schur";
    case ProductKind::matprod:
      return "matprod";
    case ProductKind::mixed:
      return "mixed";
    default:
      return "custom";
  }
}

LambdaSequence LambdaSequence::kronecker(int arity) {
  if (arity < 1) throw ArityError("lambda sequence needs arity >= 1");
  LambdaSequence s;
  s.arity_ = arity;
  s.kind_ = ProductKind::kronecker;
  s.name_ = "kronecker";
  return s;
}

LambdaSequence LambdaSequence::schur(int arity) {
  if (arity < 1) throw ArityError("lambda sequence needs arity >= 1");
  LambdaSequence s;
  s.arity_ = arity;
  s.kind_ = ProductKind::schur;
  s.name_ = "schur";
  return s;
}

LambdaSequence LambdaSequence::matprod(int arity) {
  if (arity < 1) throw ArityError("lambda sequence needs arity >= 1");
  LambdaSequence s;
  s.arity_ = arity;
  s.kind_ = ProductKind::matprod;
  s.name_ = "matprod";
  return s;
}

LambdaSequence LambdaSequence::mixed(std::vector<MixedGroup> groups) {
  if (groups.empty()) throw ArityError("mixed sequence needs at least one group");
  int next = 1;
  std::ostringstream name;
  name << "mixed(";
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& grp = groups[g];
    if (grp.slots.empty()) throw ArityError("mixed group must own at least one slot");
    if (grp.product != ProductKind::kronecker && grp.product != ProductKind::schur &&
        grp.product != ProductKind::matprod)
      throw UnsupportedSequenceError("mixed group product must be kronecker, schur or matprod");
    for (int s : grp.slots) {
      if (s != next)
        throw UnsupportedSequenceError(
            "mixed groups must partition the slots contiguously in order");
      ++next;
    }
    if (g) name << ",";
    name << to_string(grp.product) << "[" << grp.slots.front() << ".." << grp.slots.back() << "]";
  }
  name << ")";
  LambdaSequence s;
  s.arity_ = next - 1;
  s.kind_ = ProductKind::mixed;
  s.groups_ = std::move(groups);
  s.name_ = name.str();
  return s;
}

LambdaSequence LambdaSequence::custom(int arity, std::function<Index(int)> tau,
                                      std::function<CMatrix(int, std::span<const CMatrix>)> eval,
                                      std::shared_ptr<const WitnessProvider> witnesses,
                                      std::string name) {
  if (arity < 1) throw ArityError("lambda sequence needs arity >= 1");
  if (!tau || !eval) throw UnsupportedSequenceError("custom sequence needs tau and eval");
  LambdaSequence s;
  s.arity_ = arity;
  s.kind_ = ProductKind::custom;
  s.custom_tau_ = std::move(tau);
  s.custom_eval_ = std::move(eval);
  s.witnesses_ = std::move(witnesses);
  s.name_ = std::move(name);
  return s;
}

Index LambdaSequence::tau(int level) const {
  if (level < 1) throw DimensionError("tau: level must be >= 1");
  switch (kind_) {
    case ProductKind::kronecker:
      return ipow(level, arity_);
    case ProductKind::schur:
    case ProductKind::matprod:
      return level;
    case ProductKind::mixed: {
      Index t = 1;
      for (const auto& g : groups_) t *= group_tau(g, level);
      return t;
    }
    default:
      return custom_tau_(level);
  }
}

CMatrix LambdaSequence::eval(int level, std::span<const CMatrix> args) const {
  if (static_cast<int>(args.size()) != arity_)
    throw ArityError("eval: expected " + std::to_string(arity_) + " arguments, got " +
                     std::to_string(args.size()));
  for (const auto& a : args)
    if (a.rows() != level || a.cols() != level)
      throw DimensionError("eval: every argument must be level x level");
  switch (kind_) {
    case ProductKind::kronecker:
    case ProductKind::schur:
    case ProductKind::matprod:
      return fold_base(kind_, args);
    case ProductKind::mixed: {
      CMatrix acc;
      bool first = true;
      for (const auto& g : groups_) {
        std::vector<CMatrix> sub;
        sub.reserve(g.slots.size());
        for (int s : g.slots) sub.push_back(args[s - 1]);
        CMatrix part = fold_base(g.product, sub);
        acc = first ? part : kron(acc, part);
        first = false;
      }
      return acc;
    }
    default: {
      CMatrix out = custom_eval_(level, args);
      const Index t = tau(level);
      if (out.rows() != t || out.cols() != t)
        throw DimensionError("custom eval produced a matrix of the wrong size");
      return out;
    }
  }
}

CMatrix eval_lambda(const LambdaSequence& lambda, int level, std::span<const CMatrix> args) {
  return lambda.eval(level, args);
}

std::optional<UnitPos> unit_eval(const LambdaSequence& lambda, int level,
                                 std::span<const std::pair<Index, Index>> units) {
  if (static_cast<int>(units.size()) != lambda.arity())
    throw ArityError("unit_eval: wrong tuple length");
  if (!lambda.is_builtin())
    throw UnsupportedSequenceError("unit_eval: only builtin kinds have the sparse unit form");
  if (lambda.kind() != ProductKind::mixed) return base_unit_eval(lambda.kind(), level, units);
  Index row = 0, col = 0;
  for (const auto& g : lambda.groups()) {
    std::vector<std::pair<Index, Index>> sub;
    sub.reserve(g.slots.size());
    for (int s : g.slots) sub.push_back(units[s - 1]);
    auto pos = base_unit_eval(g.product, level, sub);
    if (!pos) return std::nullopt;
    const Index gt = group_tau(g, level);
    row = row * gt + pos->row;
    col = col * gt + pos->col;
  }
  return UnitPos{row, col};
}

CMatrix e2_witness(const LambdaSequence& lambda, int r, int s) {
  if (r < 1 || s < 1) throw DimensionError("e2_witness: levels must be >= 1");
  CMatrix p;
  if (lambda.is_builtin()) {
    if (lambda.kind() != ProductKind::mixed) {
      p = base_e2_selector(lambda.kind(), lambda.arity(), r, s);
    } else {
      // Per-group selectors combined over the Kronecker grid, then the rows
      // with every group coordinate in the same half are kept.
      CMatrix big;
      std::vector<Index> low_dims, high_dims, both_dims;
      bool first = true;
      for (const auto& g : lambda.groups()) {
        CMatrix pg =
            base_e2_selector(g.product, static_cast<int>(g.slots.size()), r, s);
        big = first ? pg : kron(big, pg);
        first = false;
        low_dims.push_back(group_tau(g, r));
        high_dims.push_back(group_tau(g, s));
        both_dims.push_back(group_tau(g, r) + group_tau(g, s));
      }
      const Index tr = lambda.tau(r), ts = lambda.tau(s);
      CMatrix sel = CMatrix::Zero(tr + ts, big.rows());
      std::vector<Index> d(low_dims.size(), 0);
      for (Index u = 0; u < tr; ++u) {
        sel(u, flatten(d, both_dims)) = 1.0;
        for (int t = static_cast<int>(d.size()) - 1; t >= 0; --t) {
          if (++d[t] < low_dims[t]) break;
          d[t] = 0;
        }
      }
      std::fill(d.begin(), d.end(), 0);
      for (Index u = 0; u < ts; ++u) {
        std::vector<Index> shifted(d);
        for (std::size_t g = 0; g < shifted.size(); ++g) shifted[g] += low_dims[g];
        sel(tr + u, flatten(shifted, both_dims)) = 1.0;
        for (int t = static_cast<int>(d.size()) - 1; t >= 0; --t) {
          if (++d[t] < high_dims[t]) break;
          d[t] = 0;
        }
      }
      p = sel * big;
    }
    require_builtin_ok(e2_residual(lambda, r, s, p), kWitnessTol, "(E2)");
    require_builtin_ok(op_norm(p) - 1.0, kNormSlack, "(E2) contractivity");
    return p;
  }
  const auto* provider = lambda.witness_provider();
  if (provider) {
    if (auto w = provider->e2(r, s)) {
      if (e2_residual(lambda, r, s, *w) <= kWitnessTol && op_norm(*w) <= 1.0 + kNormSlack)
        return *w;
      throw UnsupportedSequenceError("provider (E2) witness failed verification");
    }
  }
  throw UnsupportedSequenceError("no (E2) witness available for " + lambda.name());
}

E1Witness e1_witness(const LambdaSequence& lambda, int k) {
  if (k < 1) throw DimensionError("e1_witness: level must be >= 1");
  if (lambda.is_builtin()) {
    E1Witness w;
    w.p = k;
    w.a.reserve(k);
    for (int j = 1; j <= k; ++j) w.a.push_back(matrix_unit(j, j, k));
    if (lambda.kind() == ProductKind::schur || lambda.kind() == ProductKind::matprod) {
      w.S = CMatrix::Identity(k, k);
      w.T = CMatrix::Identity(k, k);
    } else {
      // select the constant multi-indices of the grid
      std::vector<Index> dims;
      if (lambda.kind() == ProductKind::kronecker) {
        dims.assign(lambda.arity(), k);
      } else {
        for (const auto& g : lambda.groups()) dims.push_back(group_tau(g, k));
      }
      Index total = 1;
      for (Index dgt : dims) total *= dgt;
      CMatrix sel = CMatrix::Zero(k, total);
      for (Index j = 0; j < k; ++j) {
        std::vector<Index> d;
        if (lambda.kind() == ProductKind::kronecker) {
          d.assign(lambda.arity(), j);
        } else {
          // within each group the constant tuple lands on its own diagonal
          // multi-index: position j for schur/matprod groups, (j,...,j) for
          // kronecker groups
          for (const auto& g : lambda.groups()) {
            if (g.product == ProductKind::kronecker) {
              Index pos = 0;
              for (std::size_t t = 0; t < g.slots.size(); ++t) pos = pos * k + j;
              d.push_back(pos);
            } else {
              d.push_back(j);
            }
          }
        }
        sel(j, flatten(d, dims)) = 1.0;
      }
      w.S = sel;
      w.T = sel.adjoint();
    }
    require_builtin_ok(e1_residual(lambda, k, w), kWitnessTol, "(E1)");
    return w;
  }
  const auto* provider = lambda.witness_provider();
  if (provider) {
    if (auto w = provider->e1(k)) {
      if (e1_residual(lambda, k, *w) <= kWitnessTol) return *w;
      throw UnsupportedSequenceError("provider (E1) witness failed verification");
    }
  }
  throw UnsupportedSequenceError("no (E1) witness available for " + lambda.name());
}

W2Witness w2_witness(const LambdaSequence& lambda, int p, int q) {
  if (p < 1 || q < 1) throw DimensionError("w2_witness: levels must be >= 1");
  if (lambda.is_builtin()) {
    W2Witness w;
    if (lambda.kind() != ProductKind::mixed) {
      w.S = base_w2_S(lambda.kind(), lambda.arity(), p, q);
      w.T = w.S.transpose();
    } else {
      CMatrix inner;
      std::vector<Index> adims, bdims;
      bool first = true;
      for (const auto& g : lambda.groups()) {
        CMatrix sg = base_w2_S(g.product, static_cast<int>(g.slots.size()), p, q);
        inner = first ? sg : kron(inner, sg);
        first = false;
        adims.push_back(group_tau(g, p));
        bdims.push_back(group_tau(g, q));
      }
      CMatrix shuffle = grouping_permutation(adims, bdims);
      w.S = shuffle * inner;
      w.T = w.S.transpose();
    }
    require_builtin_ok(w2_residual(lambda, p, q, w.S, w.T), kWitnessTol, "(W2)");
    require_builtin_ok(std::max(op_norm(w.S), op_norm(w.T)) - 1.0, kNormSlack,
                       "(W2) contractivity");
    return w;
  }
  const auto* provider = lambda.witness_provider();
  if (provider) {
    if (auto w = provider->w2(p, q)) {
      if (w2_residual(lambda, p, q, w->S, w->T) <= kWitnessTol &&
          op_norm(w->S) <= 1.0 + kNormSlack && op_norm(w->T) <= 1.0 + kNormSlack)
        return *w;
      throw UnsupportedSequenceError("provider (W2) witness failed verification");
    }
  }
  throw UnsupportedSequenceError("no (W2) witness available for " + lambda.name());
}

W1Witness w1_witness(const LambdaSequence& lambda, int p, int slot) {
  if (p < 1) throw DimensionError("w1_witness: level must be >= 1");
  if (slot < 1 || slot > lambda.arity()) throw ArityError("w1_witness: slot out of range");
  if (lambda.is_builtin()) {
    W1Witness w;
    if (lambda.kind() != ProductKind::mixed) {
      auto [P, Q] = base_w1(lambda.kind(), lambda.arity(), p, slot);
      w.P = std::move(P);
      w.Q = std::move(Q);
    } else {
      CMatrix P, Q;
      bool first = true;
      for (const auto& g : lambda.groups()) {
        const bool owns =
            g.slots.front() <= slot && slot <= g.slots.back();
        CMatrix pg, qg;
        if (owns) {
          const int in_group = slot - g.slots.front() + 1;
          auto [bp, bq] = base_w1(g.product, static_cast<int>(g.slots.size()), p, in_group);
          pg = std::move(bp);
          qg = std::move(bq);
        } else {
          // every other group evaluates to the identity; contract on (1,1)
          pg = CMatrix::Zero(1, group_tau(g, p));
          pg(0, 0) = 1.0;
          qg = pg.adjoint();
        }
        P = first ? pg : kron(P, pg);
        Q = first ? qg : kron(Q, qg);
        first = false;
      }
      w.P = std::move(P);
      w.Q = std::move(Q);
    }
    CMatrix worst;
    w.residual = w1_residual(lambda, p, slot, w.P, w.Q, &worst);
    w.satisfied = w.residual <= kWitnessTol &&
                  op_norm(w.P) <= 1.0 + kNormSlack && op_norm(w.Q) <= 1.0 + kNormSlack;
    if (!w.satisfied) w.counterexample = std::move(worst);
    return w;
  }
  const auto* provider = lambda.witness_provider();
  if (provider) {
    if (auto w = provider->w1(p, slot)) {
      CMatrix worst;
      w->residual = w1_residual(lambda, p, slot, w->P, w->Q, &worst);
      w->satisfied = w->residual <= kWitnessTol && op_norm(w->P) <= 1.0 + kNormSlack &&
                     op_norm(w->Q) <= 1.0 + kNormSlack;
      if (!w->satisfied) w->counterexample = std::move(worst);
      return *w;
    }
  }
  throw UnsupportedSequenceError("no (W1) witness available for " + lambda.name());
}

}  // namespace lt
