#include <iostream>

#include <CLI11.hpp>

#include "fscrit/cli.hpp"

namespace {

void add_common(CLI::App* sub, fscrit::cli::RunConfig& c, std::string& format) {
  sub->add_option("--n", c.n, "complex dimension of CP^n");
  sub->add_option("--m", c.m, "degree of the section");
  sub->add_option("--seed", c.seed, "base seed; trial i uses a seed split from it");
  sub->add_option("--trials", c.trials, "number of Monte Carlo trials");
  sub->add_option("--jobs", c.jobs, "worker threads");
  sub->add_option("--residual-tol", c.residual_tol, "accept critical points with residual below this");
  sub->add_option("--dedup-tol", c.dedup_tol, "merge critical points closer than this FS distance");
  sub->add_option("--degen-tol", c.degen_tol, "margins below degen-tol * m are degenerate");
  sub->add_option("--max-starts", c.max_starts, "total Newton start budget (0 = unlimited)");
  sub->add_option("--out", c.out, "output file (default stdout)");
  sub->add_option("--format", format, "structured (JSON) or tabular (CSV)")
      ->check(CLI::IsMember({"structured", "tabular"}));
  sub->add_option("--input", c.input, "section file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Critical points of |s|^2 for holomorphic sections over CP^n"};
  app.set_version_flag("--version", fscrit::cli::kVersion);
  app.require_subcommand(1);

  fscrit::cli::RunConfig config;
  std::string format = "structured";
  const std::pair<const char*, const char*> commands[] = {
      {"sample", "draw random sections from the Gaussian ensemble"},
      {"solve", "find and classify critical points"},
      {"quadric", "canonical form and critical set of a quadric"},
      {"gauss-lucas", "spherical Gauss-Lucas certificates on CP^1"},
      {"morse", "Morse inequality for the quadric pipeline"},
      {"density", "Monte Carlo statistics of critical points"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, config, format);
    if (std::string(name) == "quadric") {
      sub->add_option("--diag", config.diag, "diagonal coefficients a_0,a_1,...")->delimiter(',');
      sub->add_option("--matrix", config.matrix, "symmetric coefficient matrix file");
      sub->add_flag("--verify", config.verify, "cross-check against the numeric solver");
    }
    sub->callback([&config, name = std::string(name)] { config.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fscrit::cli::kExitInputError;
  }
  config.format = format == "tabular" ? fscrit::cli::OutputFormat::Tabular : fscrit::cli::OutputFormat::Structured;
  return fscrit::cli::run(config, std::cout, std::cerr);
}
