#include "lt/algebra.hpp"

#include "lt/errors.hpp"
#include "lt/rng.hpp"

namespace lt {

namespace {

void require_algebra_space(const SpaceSpec& spec) {
  if (spec.n != 1) throw DimensionError("algebra elements live at matrix level n = 1");
}

}  // namespace

AlgebraElement make_algebra_element(const LambdaSequence& lambda, const SpaceSpec& spec,
                                    const Decomposition& dec) {
  require_algebra_space(spec);
  AlgebraElement el;
  el.spec = spec;
  el.dec = dec;
  el.flat = realize(lambda, spec, dec).flat;
  return el;
}

AlgebraElement multiply(const LambdaSequence& lambda, const AlgebraElement& x,
                        const AlgebraElement& y) {
  if (!(x.spec == y.spec)) throw DimensionError("multiply: elements live on different spaces");
  const int r = x.dec.level, s = y.dec.level;
  W2Witness w = w2_witness(lambda, r, s);

  Decomposition prod;
  prod.level = r * s;
  prod.alpha = kron(x.dec.alpha, y.dec.alpha) * w.S;
  prod.beta = w.T * kron(x.dec.beta, y.dec.beta);
  for (std::size_t t = 0; t < x.dec.factors.size(); ++t) {
    const Index d = x.spec.dims[t];
    const CMatrix& u = x.dec.factors[t];
    const CMatrix& v = y.dec.factors[t];
    // block ((i-1)s+k, (j-1)s+l) = u[i,j] * v[k,l], ordinary product in M_d
    CMatrix z = CMatrix::Zero(static_cast<Index>(r) * s * d, static_cast<Index>(r) * s * d);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < r; ++j) {
        CMatrix ub = u.block(i * d, j * d, d, d);
        if (ub.isZero(0.0)) continue;
        for (Index k = 0; k < s; ++k)
          for (Index l = 0; l < s; ++l)
            z.block((i * s + k) * d, (j * s + l) * d, d, d) =
                ub * v.block(k * d, l * d, d, d);
      }
    prod.factors.push_back(std::move(z));
  }

  AlgebraElement out = make_algebra_element(lambda, x.spec, prod);
  const double scale = 1.0 + op_norm(x.flat) * op_norm(y.flat);
  if (op_norm(out.flat - x.flat * y.flat) > 1e-9 * scale)
    throw Error("internal: product decomposition disagrees with the flattening oracle");
  return out;
}

AlgebraElement involution(const LambdaSequence& lambda, const AlgebraElement& x) {
  AlgebraElement out;
  out.spec = x.spec;
  out.dec = star(lambda, x.dec);  // throws InvolutionUnsupportedError without (O1)
  out.flat = realize(lambda, x.spec, out.dec).flat;
  return out;
}

SubmultReport submult_report(const LambdaSequence& lambda,
                             std::span<const std::pair<AlgebraElement, AlgebraElement>> pairs,
                             double tol) {
  SubmultReport report;
  for (const auto& [x, y] : pairs) {
    AlgebraElement xy = multiply(lambda, x, y);
    SubmultRow row;
    row.value_x = decomposition_value(x.dec);
    row.value_y = decomposition_value(y.dec);
    row.value_xy = decomposition_value(xy.dec);
    row.oracle_residual = op_norm(xy.flat - x.flat * y.flat);
    const double scale = 1.0 + row.value_x * row.value_y;
    row.ok = row.value_xy <= row.value_x * row.value_y + tol * scale &&
             row.oracle_residual <= tol * scale;
    report.rows.push_back(row);
    report.all_ok = report.all_ok && row.ok;
    report.max_oracle_residual = std::max(report.max_oracle_residual, row.oracle_residual);
    report.max_excess =
        std::max(report.max_excess, row.value_xy - row.value_x * row.value_y);
  }
  return report;
}

AlgebraElement random_algebra_element(const LambdaSequence& lambda, const SpaceSpec& spec,
                                      int max_level, std::uint64_t seed) {
  require_algebra_space(spec);
  Rng rng(seed);
  Decomposition dec;
  dec.level = rng.uniform_int(1, max_level);
  const Index t = lambda.tau(dec.level);
  dec.alpha = rng.ginibre(1, t);
  dec.beta = rng.ginibre(t, 1);
  for (Index d : spec.dims) dec.factors.push_back(rng.ginibre(dec.level * d, dec.level * d));
  return make_algebra_element(lambda, spec, dec);
}

SubmultReport submult_report(const LambdaSequence& lambda, const SpaceSpec& spec, int count,
                             std::uint64_t seed, double tol) {
  std::vector<std::pair<AlgebraElement, AlgebraElement>> pairs;
  pairs.reserve(count);
  for (int i = 0; i < count; ++i) {
    pairs.emplace_back(random_algebra_element(lambda, spec, 2, seed + 2 * i),
                       random_algebra_element(lambda, spec, 2, seed + 2 * i + 1));
  }
  return submult_report(lambda, pairs, tol);
}

}  // namespace lt
