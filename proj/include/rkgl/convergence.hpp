#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rkgl/error_analysis.hpp"
#include "rkgl/ode_problem.hpp"
#include "rkgl/rkgl_solver.hpp"

namespace rkgl {

enum class Execution { Serial, Parallel };

struct ConvergenceRow {
  std::size_t N = 0;
  double h = 0.0;  // average node spacing (b - a) / (3N)
  double E = 0.0;  // |Delta| at b
  std::optional<double> observed_order;
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  OrderEstimate estimate;
};

/// Ns must be >= 1 and double from one entry to the next.
void validate_n_list(std::span<const std::size_t> Ns);

/// For Method::RK3 each N maps to 3N uniform steps so that both methods
/// share the same average spacing h. Requires an exact solution.
ConvergenceStudy convergence_study(const ODEProblem& p, Method method,
                                   std::span<const std::size_t> Ns,
                                   Execution exec = Execution::Parallel);

/// One decomposition report per N (RK3GL2 only), in N order.
std::vector<DecompositionReport> decomposition_study(const ODEProblem& p,
                                                     std::span<const std::size_t> Ns,
                                                     Execution exec = Execution::Parallel);

}  // namespace rkgl
