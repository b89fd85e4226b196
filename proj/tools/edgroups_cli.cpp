#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "edgroups/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Euclidean distance degrees of matrix groups"};
  app.require_subcommand(1);

  edg::GlobalOptions options;
  app.add_option("--seed", options.seed, "Seed for random draws")->capture_default_str();
  app.add_option("--tol", options.tol, "Residual tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--starts", options.starts, "Multistart Newton starts")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_flag("--timing", options.timing, "Report elapsed_ms");

  std::string group, input, suite, weights;
  std::optional<std::string> component;

  auto* nearest = app.add_subcommand("nearest", "Closest group element to a matrix");
  nearest->add_option("group", group, "orthogonal, special-orthogonal, unitary, sl, sl-pm")->required();
  nearest->add_option("input", input, "Matrix JSON file")->required();
  nearest->add_option("--component", component, "SL component: plus or pm");

  auto* critical = app.add_subcommand("critical", "All real critical points");
  critical->add_option("group", group, "Group name, symplectic included")->required();
  critical->add_option("input", input, "Matrix JSON file")->required();

  auto* verify = app.add_subcommand("verify", "Reproduce the critical point counts");
  verify->add_option("suite", suite, "orthogonal, special-orthogonal, unitary, sl, torus, symplectic, all")
      ->required();

  auto* bkk = app.add_subcommand("bkk", "Normalized volume bound for a torus weight set");
  bkk->add_option("weightset", weights, "WeightSet JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  edg::CommandResult result;
  if (*nearest) {
    result = edg::cmd_nearest(group, input, component, options);
  } else if (*critical) {
    result = edg::cmd_critical(group, input, options);
  } else if (*verify) {
    result = edg::cmd_verify(suite, options);
  } else {
    result = edg::cmd_bkk(weights, options);
  }
  std::cout << result.out;
  std::cerr << result.err;
  return result.exit_code;
}
