#include "lt/io.hpp"

#include <cstdio>
#include <fstream>

#include "lt/errors.hpp"

namespace lt::io {

namespace {

json complex_to_json(const Complex& c) { return json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("complex entries must be [re, im] number pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

const json& field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + name + "\"");
  return *it;
}

}  // namespace

json to_json(const CMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("matrix must be an array of rows");
  const Index rows = static_cast<Index>(j.size());
  if (rows == 0) return CMatrix(0, 0);
  if (!j[0].is_array()) throw ParseError("matrix rows must be arrays");
  const Index cols = static_cast<Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<Index>(j[i].size()) != cols)
      throw ParseError("matrix rows must all have the same length");
    for (Index c = 0; c < cols; ++c) m(i, c) = complex_from_json(j[i][c]);
  }
  if (!m.allFinite()) throw ParseError("matrix entries must be finite");
  return m;
}

json to_json(const SpaceSpec& spec) {
  return json{{"n", spec.n}, {"dims", spec.dims}};
}

SpaceSpec space_from_json(const json& j) {
  SpaceSpec spec;
  spec.n = field(j, "n").get<Index>();
  spec.dims = field(j, "dims").get<std::vector<Index>>();
  if (spec.n < 1) throw ParseError("space: n must be >= 1");
  for (Index d : spec.dims)
    if (d < 1) throw ParseError("space: every dimension must be >= 1");
  return spec;
}

json to_json(const TensorElement& el) {
  return json{{"spec", to_json(el.spec)}, {"flat", to_json(el.flat)}};
}

TensorElement element_from_json(const json& j) {
  TensorElement el;
  el.spec = space_from_json(field(j, "spec"));
  el.flat = matrix_from_json(field(j, "flat"));
  if (el.flat.rows() != el.spec.flat_dim() || el.flat.cols() != el.spec.flat_dim())
    throw ParseError("element: flat size does not match the space");
  return el;
}

json to_json(const Decomposition& dec) {
  json factors = json::array();
  for (const auto& f : dec.factors) factors.push_back(to_json(f));
  return json{{"level", dec.level},
              {"alpha", to_json(dec.alpha)},
              {"factors", std::move(factors)},
              {"beta", to_json(dec.beta)}};
}

Decomposition decomposition_from_json(const json& j) {
  Decomposition dec;
  dec.level = field(j, "level").get<int>();
  if (dec.level < 1) throw ParseError("decomposition: level must be >= 1");
  dec.alpha = matrix_from_json(field(j, "alpha"));
  dec.beta = matrix_from_json(field(j, "beta"));
  for (const auto& f : field(j, "factors")) dec.factors.push_back(matrix_from_json(f));
  return dec;
}

json to_json(const ConeCertificate& cert) {
  json factors = json::array();
  for (const auto& f : cert.factors) factors.push_back(to_json(f));
  return json{{"level", cert.level},
              {"alpha", to_json(cert.alpha)},
              {"factors", std::move(factors)},
              {"psd_slack", cert.psd_slack}};
}

ConeCertificate certificate_from_json(const json& j) {
  ConeCertificate cert;
  cert.level = field(j, "level").get<int>();
  if (cert.level < 1) throw ParseError("certificate: level must be >= 1");
  cert.alpha = matrix_from_json(field(j, "alpha"));
  for (const auto& f : field(j, "factors")) cert.factors.push_back(matrix_from_json(f));
  if (j.contains("psd_slack")) cert.psd_slack = j["psd_slack"].get<std::vector<double>>();
  for (const auto& f : cert.factors)
    if (f.rows() != f.cols() || f.rows() % cert.level != 0)
      throw ParseError("certificate: factors must be square multiples of the level");
  return cert;
}

json to_json(const LambdaSequence& lambda) {
  switch (lambda.kind()) {
    case ProductKind::kronecker:
    case ProductKind::schur:
    case ProductKind::matprod:
      return json{{"kind", to_string(lambda.kind())}, {"arity", lambda.arity()}};
    case ProductKind::mixed: {
      json groups = json::array();
      for (const auto& g : lambda.groups())
        groups.push_back(json{{"slots", g.slots}, {"product", to_string(g.product)}});
      return json{{"kind", "mixed"}, {"groups", std::move(groups)}};
    }
    default:
      throw ParseError("custom sequences have no JSON form");
  }
}

LambdaSequence lambda_from_json(const json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "kronecker") return LambdaSequence::kronecker(field(j, "arity").get<int>());
  if (kind == "schur") return LambdaSequence::schur(field(j, "arity").get<int>());
  if (kind == "matprod") return LambdaSequence::matprod(field(j, "arity").get<int>());
  if (kind == "mixed") {
    std::vector<MixedGroup> groups;
    for (const auto& g : field(j, "groups")) {
      MixedGroup grp;
      grp.slots = field(g, "slots").get<std::vector<int>>();
      const std::string prod = field(g, "product").get<std::string>();
      if (prod == "kronecker")
        grp.product = ProductKind::kronecker;
      else if (prod == "schur")
        grp.product = ProductKind::schur;
      else if (prod == "matprod")
        grp.product = ProductKind::matprod;
      else
        throw ParseError("mixed group product must be kronecker, schur or matprod");
      groups.push_back(std::move(grp));
    }
    try {
      return LambdaSequence::mixed(std::move(groups));
    } catch (const Error& e) {
      throw ParseError(e.what());
    }
  }
  throw ParseError("unknown sequence kind \"" + kind + "\"");
}

json to_json(const Counterexample& ce) {
  json units = json::array();
  for (const auto& [i, j] : ce.units) units.push_back(json::array({i, j}));
  json samples = json::array();
  for (const auto& s : ce.samples) samples.push_back(to_json(s));
  return json{{"units", std::move(units)},
              {"samples", std::move(samples)},
              {"residual", ce.residual}};
}

json to_json(const ConditionReport& rep) {
  json witness = json::object();
  for (const auto& [name, m] : rep.witness) witness[name] = to_json(m);
  json out{{"condition", rep.condition},
           {"verdict", to_string(rep.verdict)},
           {"params", rep.params},
           {"max_residual", rep.max_residual},
           {"witness", std::move(witness)}};
  if (rep.counterexample) out["counterexample"] = to_json(*rep.counterexample);
  if (!rep.note.empty()) out["note"] = rep.note;
  return out;
}

json to_json(const AxiomReport& rep) {
  json checks = json::array();
  for (const auto& c : rep.checks) checks.push_back(to_json(c));
  return json{{"lambda", rep.lambda_name},
              {"arity", rep.arity},
              {"seed", rep.seed},
              {"tol", rep.tol},
              {"checks", std::move(checks)},
              {"verdict", rep.any_fail() ? "fail" : "pass"}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp);
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw Error("cannot replace " + path);
}

}  // namespace lt::io
