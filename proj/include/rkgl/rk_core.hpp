#pragma once

#include <cstddef>
#include <vector>

#include "rkgl/ode_problem.hpp"

namespace rkgl {

/// Explicit Runge-Kutta method (c, A, b). A is stored as full rows; entries on
/// or above the diagonal must be zero.
struct ButcherTableau {
  std::vector<double> c;
  std::vector<std::vector<double>> A;
  std::vector<double> b;

  std::size_t stages() const { return b.size(); }
};

/// Checks the explicit / consistency / row-sum conditions; throws InvariantViolation.
void validate(const ButcherTableau& t);

/// The third-order tableau used by RK3GL2:
///   c = (0, 1/2, 3/4), A21 = 1/2, A32 = 3/4, b = (2/9, 3/9, 4/9).
const ButcherTableau& rk3_tableau();

/// Increment function F with y + h F(x, y) being one step:
/// F = (sum_i b_i k_i) / h,  k_i = h f(x + c_i h, y + sum_j A_ij k_j).
double increment_F(const ButcherTableau& t, const Rhs& f, double x, double y, double h);

double rk_step(const ButcherTableau& t, const Rhs& f, double x, double w, double h);

/// dF/dy for rk3_tableau() in closed form (chain rule through k1, k2, k3).
double F_y_analytic(const Rhs& f, const Rhs& f_y, double x, double y, double h);

/// Central difference [F(x, y+delta) - F(x, y-delta)] / (2 delta).
double F_y_numeric(const ButcherTableau& t, const Rhs& f, double x, double y, double h,
                   double delta);

}  // namespace rkgl
