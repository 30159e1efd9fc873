#pragma once

// Command implementations behind the `fscrit` executable. Each command writes
// one document to the given stream and returns the process exit code.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "fscrit/critical.hpp"

namespace fscrit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitSolverIncomplete = 2;
inline constexpr int kExitViolation = 3;

inline constexpr const char* kVersion = "1.0.0";

enum class OutputFormat { Structured, Tabular };

struct RunConfig {
  std::string command;
  int n = 1;
  int m = 2;
  std::uint64_t seed = 1;
  int trials = 1;
  int jobs = 1;
  double residual_tol = 1e-10;
  double dedup_tol = 1e-7;
  double degen_tol = 1e-6;
  long max_starts = 0;
  std::string out;    ///< empty writes to the provided stream
  OutputFormat format = OutputFormat::Structured;
  bool verify = false;
  std::string input;  ///< section file
  std::string matrix; ///< quadric coefficient matrix file
  std::vector<double> diag;
};

/// Throws std::invalid_argument describing the first violated constraint.
void validate(const RunConfig& config);

SolveOptions solve_options(const RunConfig& config);

/// Seed of trial `index` derived from the base seed (splitmix64 of base + index).
std::uint64_t trial_seed(std::uint64_t base, std::uint64_t index);

/// Runs fn(i) for i in [0, count) on up to `jobs` threads.
void parallel_for(int count, int jobs, const std::function<void(int)>& fn);

int cmd_sample(const RunConfig& config, std::ostream& out);
int cmd_solve(const RunConfig& config, std::ostream& out);
int cmd_quadric(const RunConfig& config, std::ostream& out);
int cmd_gauss_lucas(const RunConfig& config, std::ostream& out);
int cmd_morse(const RunConfig& config, std::ostream& out);
int cmd_density(const RunConfig& config, std::ostream& out);

/// Validates, opens --out if given, dispatches on config.command and maps
/// input errors to kExitInputError with a message on `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Reads a square complex matrix: first line the size d, then d lines of
/// d "re im" pairs. Throws std::invalid_argument.
CMatrix read_matrix(std::istream& is);

}  // namespace fscrit::cli
