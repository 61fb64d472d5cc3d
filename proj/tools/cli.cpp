#include "cli.hpp"

#include <cstdlib>
#include <iostream>

#include "lt/algebra.hpp"
#include "lt/axioms.hpp"
#include "lt/errors.hpp"
#include "lt/io.hpp"
#include "lt/order.hpp"
#include "lt/tensorspace.hpp"
#include "lt/version.hpp"

namespace lt::cli {

namespace {

using io::json;

int thread_cap() {
  const char* env = std::getenv("LT_THREADS");
  if (!env) return 1;
  const int v = std::atoi(env);
  return v >= 1 ? v : 1;
}

json run_axioms(const RunConfig& config, const LambdaSequence& lambda, bool& failed) {
  CheckBudget budget;
  budget.max_level = config.levels;
  budget.enum_cap = config.budget;
  budget.trials = config.trials;
  budget.psd_tol = config.tol;
  budget.seed = config.seed;
  AxiomReport rep = check_all(lambda, budget);
  failed = rep.any_fail();
  return io::to_json(rep);
}

json run_norm(const RunConfig& config, const LambdaSequence& lambda, bool& failed) {
  json element_json, candidates_json;
  if (!config.input_path.empty()) {
    json in = io::load_json_file(config.input_path);
    element_json = in.at("element");
    candidates_json = in.at("candidates");
  } else {
    if (config.element_path.empty() || config.candidates_path.empty())
      throw ParseError("norm needs --input or both --element and --candidates");
    element_json = io::load_json_file(config.element_path);
    json c = io::load_json_file(config.candidates_path);
    candidates_json = c.is_array() ? c : c.at("candidates");
  }
  TensorElement element = io::element_from_json(element_json);
  std::vector<Decomposition> candidates;
  for (const auto& c : candidates_json) candidates.push_back(io::decomposition_from_json(c));

  const double lower = min_norm(element);
  NormBound ub = lambda_norm_ub(lambda, element, candidates);
  const bool sandwich_ok = lower <= ub.value + config.tol * (1.0 + lower);
  failed = !sandwich_ok;
  return json{{"min_norm", lower},
              {"upper_bound", ub.value},
              {"best_candidate", io::to_json(ub.best)},
              {"candidates", candidates.size()},
              {"sandwich_ok", sandwich_ok}};
}

json run_cone(const RunConfig& config, const LambdaSequence& lambda, bool& failed) {
  if (config.input_path.empty()) throw ParseError("cone needs --input");
  json in = io::load_json_file(config.input_path);
  ConeCertificate cert = io::certificate_from_json(in.at("certificate"));
  std::optional<TensorElement> claimed;
  if (in.contains("element")) claimed = io::element_from_json(in["element"]);
  CertificateCheck check =
      verify_certificate(lambda, cert, claimed ? &*claimed : nullptr, config.tol);
  failed = !check.ok;
  json out{{"certificate_ok", check.ok},
           {"factor_min_eigs", check.factor_min_eigs},
           {"realization_residual", check.realization_residual}};
  if (in.contains("falsify")) {
    TensorElement probe = io::element_from_json(in["falsify"]);
    FalsifierResult fr = psd_falsifier(lambda, probe, config.tol);
    out["falsifier"] = json{
        {"verdict", fr.verdict == ConeVerdict::not_in_cone ? "not-in-cone" : "inconclusive"},
        {"min_eig", fr.min_eig},
        {"asym", fr.asym}};
  }
  return out;
}

json run_ossys(const RunConfig& config, const LambdaSequence& lambda, bool& failed) {
  if (config.input_path.empty()) throw ParseError("ossys needs --input");
  json in = io::load_json_file(config.input_path);
  SpaceSpec spec = io::space_from_json(in.at("spec"));
  Decomposition dec = io::decomposition_from_json(in.at("decomposition"));
  OrderUnitBound bound = order_unit_bound(lambda, spec, dec);

  TensorElement u = realize(lambda, spec, dec);
  const CMatrix unit = bound.bound * CMatrix::Identity(spec.flat_dim(), spec.flat_dim());
  TensorElement plus{spec, unit + 0.5 * (u.flat + u.flat.adjoint())};
  TensorElement minus{spec, unit - 0.5 * (u.flat + u.flat.adjoint())};
  CertificateCheck cp = verify_certificate(lambda, bound.plus, &plus, config.tol);
  CertificateCheck cm = verify_certificate(lambda, bound.minus, &minus, config.tol);
  failed = !(cp.ok && cm.ok);
  return json{{"K", bound.k_factor},
              {"bound", bound.bound},
              {"plus_ok", cp.ok},
              {"minus_ok", cm.ok},
              {"plus_residual", cp.realization_residual},
              {"minus_residual", cm.realization_residual},
              {"plus_certificate", io::to_json(bound.plus)},
              {"minus_certificate", io::to_json(bound.minus)}};
}

json run_algebra(const RunConfig& config, const LambdaSequence& lambda, bool& failed) {
  if (config.input_path.empty()) throw ParseError("algebra needs --input");
  json in = io::load_json_file(config.input_path);
  SpaceSpec spec = io::space_from_json(in.at("spec"));
  SubmultReport rep;
  if (in.contains("pairs")) {
    std::vector<std::pair<AlgebraElement, AlgebraElement>> pairs;
    for (const auto& p : in["pairs"]) {
      if (!p.is_array() || p.size() != 2) throw ParseError("pairs must be [dec, dec] arrays");
      pairs.emplace_back(
          make_algebra_element(lambda, spec, io::decomposition_from_json(p[0])),
          make_algebra_element(lambda, spec, io::decomposition_from_json(p[1])));
    }
    rep = submult_report(lambda, pairs, config.tol);
  } else {
    rep = submult_report(lambda, spec, config.trials, config.seed, config.tol);
  }
  failed = !rep.all_ok;
  json rows = json::array();
  for (const auto& r : rep.rows)
    rows.push_back(json{{"value_x", r.value_x},
                        {"value_y", r.value_y},
                        {"value_xy", r.value_xy},
                        {"oracle_residual", r.oracle_residual},
                        {"ok", r.ok}});
  return json{{"all_ok", rep.all_ok},
              {"max_oracle_residual", rep.max_oracle_residual},
              {"max_excess", rep.max_excess},
              {"rows", std::move(rows)}};
}

}  // namespace

int run(const RunConfig& config) {
  try {
    if (config.lambda_path.empty()) throw ParseError("--lambda is required");
    LambdaSequence lambda = io::lambda_from_json(io::load_json_file(config.lambda_path));

    bool failed = false;
    json body;
    if (config.command == "axioms")
      body = run_axioms(config, lambda, failed);
    else if (config.command == "norm")
      body = run_norm(config, lambda, failed);
    else if (config.command == "cone")
      body = run_cone(config, lambda, failed);
    else if (config.command == "ossys")
      body = run_ossys(config, lambda, failed);
    else if (config.command == "algebra")
      body = run_algebra(config, lambda, failed);
    else
      throw ParseError("unknown command \"" + config.command + "\"");

    json report{{"schema", kReportSchema},
                {"version", kVersion},
                {"command", config.command},
                {"lambda", io::to_json(lambda)},
                {"seed", config.seed},
                {"tol", config.tol},
                {"budget", json{{"enum_cap", config.budget}, {"trials", config.trials}}},
                {"threads", thread_cap()},
                {"result", std::move(body)},
                {"verdict", failed ? "fail" : "pass"}};
    const std::string text = report.dump(2) + "\n";
    if (config.out_path.empty())
      std::cout << text;
    else
      io::write_atomic(config.out_path, text);
    return failed ? 1 : 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const io::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace lt::cli
