#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rkgl/rkgl_solver.hpp"

namespace rkgl::cli {

enum ExitCode : int { kOk = 0, kNumericalFailure = 1, kUsage = 2, kMissingPrerequisite = 3 };

enum class Format { CSV, JSON };

struct RunConfig {
  std::optional<std::string> problem;       // registry name
  std::optional<std::string> problem_file;  // JSON config path
  std::vector<std::size_t> Ns;              // one entry for solve/decompose
  Method method = Method::RKGL;
  std::string out;
  Format format = Format::CSV;
};

int run_solve(const RunConfig& cfg, std::ostream& log, std::ostream& err);
int run_convergence(const RunConfig& cfg, std::ostream& log, std::ostream& err);
int run_decompose(const RunConfig& cfg, std::ostream& log, std::ostream& err);

/// Full command line entry point (argv[0] is the program name).
int main(int argc, const char* const* argv, std::ostream& log, std::ostream& err);

}  // namespace rkgl::cli
