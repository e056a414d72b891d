// pkl: complete Pick kernel toolkit.
//
//   pkl <command> [--input FILE] [--tol R] [--seed N] [--format json|text]
//   pkl prove ... [--shuffles K]
//   pkl extend ... [--grid-check RES]
//
// Exit status: 0 affirmative verdict, 1 negative verdict, 2 usage/input error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "cli.hpp"

int main(int argc, char** argv) {
  using namespace pkl::cli;

  CLI::App app{"Numerical toolkit for complete Pick kernels on finite point sets"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "json";
  double tol = 0.0;
  double grid = 0.0;

  for (const auto& [name, help] : {
           std::pair{"gram", "assemble a kernel Gram matrix"},
           std::pair{"psd", "certify a Hermitian matrix as PSD"},
           std::pair{"fz", "criterion kernel F_z Gram on a sample"},
           std::pair{"kz", "Schur-complement kernel k^z Gram"},
           std::pair{"cpp", "finite-sample complete Pick test"},
           std::pair{"irreducible", "irreducibility diagnostics"},
           std::pair{"defect", "multiplier defect Gram"},
           std::pair{"multnorm", "multiplier norm by bisection"},
           std::pair{"pick", "Pick interpolation feasibility"},
           std::pair{"extend", "one-point extension disk"},
           std::pair{"prove", "necessity certificate"},
       }) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--input", cfg.input_path, "input JSON file (default stdin)");
    sub->add_option("--tol", tol, "tolerance (> 0)");
    sub->add_option("--seed", cfg.seed, "seed for all randomness");
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    if (std::string_view(name) == "prove") {
      sub->add_option("--shuffles", cfg.shuffles,
                      "extra seeded orderings to certify");
    }
    if (std::string_view(name) == "extend") {
      sub->add_option("--grid-check", grid,
                      "brute-force grid resolution for cross-checking");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << error_line("UsageError", e.what()) << '\n';
    return kUsageError;
  }

  auto* sub = app.get_subcommands().front();
  cfg.command = *parse_command(sub->get_name());
  cfg.output_format = format == "text" ? Format::text : Format::json;
  if (sub->count("--tol") > 0) cfg.tolerance = tol;
  if (sub->get_name() == "extend" && sub->count("--grid-check") > 0) {
    if (!(grid > 0.0 && grid <= 1.0)) {
      std::cerr << error_line("UsageError", "--grid-check must be in (0, 1]")
                << '\n';
      return kUsageError;
    }
    cfg.grid_check = grid;
  }

  std::string input;
  if (cfg.input_path.empty() || cfg.input_path == "-") {
    input.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream file(cfg.input_path);
    if (!file) {
      std::cerr << error_line("InvalidInput", "cannot open " + cfg.input_path)
                << '\n';
      return kUsageError;
    }
    std::ostringstream ss;
    ss << file.rdbuf();
    input = ss.str();
  }
  return run(cfg, input, std::cout, std::cerr);
}
