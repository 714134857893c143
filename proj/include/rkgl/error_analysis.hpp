#pragma once

// Local/global error bookkeeping for RK3GL2 and the exact reconstruction of
// the endpoint error from the propagation recurrences.
//
// Notation (node indices are global, 0 .. 3N):
//   eps_i      local error: one step/update from exact inputs minus y_i
//   Delta_i    global error w_i - y_i
//   alpha_k    1 + h_k * dF/dy at the mean-value point of step k -> k+1
//   gamma_j    weight of an RK-node local error inside the GL sum
//   A_m        gamma-weighted RK local errors of subinterval m
//   B_m        factor carrying Delta at the left end of subinterval m
//
// Per subinterval m (nodes 3m .. 3m+3, quadrature spacing h):
//   Delta_{3m+3} = Delta_{3m} + eps_{3m+3} + A_m h + B_m Delta_{3m} h
//
// Mean-value slopes are exact secant quotients, so every relation above is an
// identity up to rounding.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "rkgl/ode_problem.hpp"
#include "rkgl/rkgl_solver.hpp"

namespace rkgl {

struct ErrorSeries {
  std::vector<double> local;   // eps_0 = 0
  std::vector<double> global;  // Delta_0 = w_0 - y_0
  std::vector<NodeRole> roles;
};

/// Entries that do not apply to a node are NaN.
struct PropagationCoefficients {
  std::vector<double> slopes_f;  // f_y at zeta_j, RK nodes
  std::vector<double> slopes_F;  // F_y at xi_k, for the RK step leaving node k
  std::vector<double> alpha;     // per RK step, indexed by its start node
  std::vector<double> gamma;     // RK nodes of RK3GL2 meshes
  std::vector<double> A_sums;    // per subinterval
  std::vector<double> B;         // per subinterval; B[0] multiplies Delta_0
};

struct DecompositionReport {
  double delta_end = 0.0;
  double eps_gl_sum = 0.0;
  double A_part = 0.0;
  double B_part = 0.0;
  double reconstruction = 0.0;
  double residual = 0.0;  // |reconstruction - delta_end|
  std::vector<double> subinterval_deltas;  // reconstructed Delta_{3m}, m = 1..N
  std::vector<double> g_weights;           // G_1 .. G_{3N}
  double g_reconstruction = 0.0;
};

struct OrderEstimate {
  std::vector<std::pair<double, double>> pairs;  // (h, E), decreasing h
  std::vector<double> fitted_orders;
  double mean_order = 0.0;
};

/// Degenerate-Delta threshold below which slopes fall back to derivatives.
inline constexpr double kSlopeThreshold = 1e-300;

/// Requires an exact solution (from the trajectory or the problem); throws
/// MissingExactSolution otherwise.
ErrorSeries local_errors(const ODEProblem& p, const Trajectory& t);

/// Fills slopes_f and slopes_F only.
PropagationCoefficients mean_value_slopes(const ODEProblem& p, const Trajectory& t,
                                          const ErrorSeries& eps);

/// Completes alpha, and for RK3GL2 meshes gamma, A_sums and B.
PropagationCoefficients propagation_coefficients(const Trajectory& t,
                                                 PropagationCoefficients slopes,
                                                 const ErrorSeries& eps);

/// Weights G_1 .. G_{3N} with Delta_{3N} = sum G_i eps_i (element i-1 is G_i).
std::vector<double> g_weights(const PropagationCoefficients& coeffs, const Mesh& mesh);

DecompositionReport reconstruct_global_error(const ErrorSeries& eps,
                                             const PropagationCoefficients& coeffs,
                                             const Mesh& mesh);

/// Pairwise log2 error ratios; h must halve between consecutive entries.
OrderEstimate observed_order(const std::vector<std::pair<double, double>>& pairs);

struct Analysis {
  Trajectory trajectory;
  ErrorSeries errors;
  PropagationCoefficients coeffs;
  DecompositionReport report;
};

/// solve_rkgl followed by the full error pipeline.
Analysis analyze_rkgl(const ODEProblem& p, std::size_t N);

/// JSON object with 17-significant-digit numbers.
std::string to_json(const DecompositionReport& r);

}  // namespace rkgl
