#include <CLI11.hpp>

#include "cli.hpp"
#include "lt/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"lambda tensor toolkit"};
  app.set_version_flag("--version", lt::kVersion);
  app.require_subcommand(1);

  lt::cli::RunConfig config;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--lambda", config.lambda_path, "lambda specification JSON")->required();
    cmd->add_option("--tol", config.tol, "tolerance for checked properties");
    cmd->add_option("--seed", config.seed, "seed for randomized checks");
    cmd->add_option("--budget", config.budget, "tuple enumeration cap");
    cmd->add_option("--trials", config.trials, "randomized trial count");
    cmd->add_option("--out", config.out_path, "report path (stdout when omitted)");
  };

  CLI::App* axioms = app.add_subcommand("axioms", "verify the sequence conditions");
  add_common(axioms);
  axioms->add_option("--levels", config.levels, "max level for r, s, p, q");

  CLI::App* norm = app.add_subcommand("norm", "norm bracketing for an element");
  add_common(norm);
  norm->add_option("--input", config.input_path, "JSON with element and candidates");
  norm->add_option("--element", config.element_path, "element JSON");
  norm->add_option("--candidates", config.candidates_path, "candidate decompositions JSON");

  CLI::App* cone = app.add_subcommand("cone", "verify cone certificates");
  add_common(cone);
  cone->add_option("--input", config.input_path, "JSON with certificate and optional element");

  CLI::App* ossys = app.add_subcommand("ossys", "order-unit certificates");
  add_common(ossys);
  ossys->add_option("--input", config.input_path, "JSON with spec and decomposition");

  CLI::App* algebra = app.add_subcommand("algebra", "tensor-algebra product checks");
  add_common(algebra);
  algebra->add_option("--input", config.input_path, "JSON with spec and optional pairs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  config.command = app.get_subcommands().front()->get_name();
  return lt::cli::run(config);
}
