#include "rkgl/rk_core.hpp"

#include <cmath>
#include <numeric>

#include "rkgl/errors.hpp"

namespace rkgl {

void validate(const ButcherTableau& t) {
  const std::size_t s = t.stages();
  if (s == 0 || t.c.size() != s || t.A.size() != s)
    throw InvariantViolation("tableau: inconsistent stage counts");
  for (std::size_t i = 0; i < s; ++i) {
    if (t.A[i].size() != s) throw InvariantViolation("tableau: A must be square");
    for (std::size_t j = i; j < s; ++j)
      if (t.A[i][j] != 0.0) throw InvariantViolation("tableau: A must be strictly lower triangular");
    const double row = std::accumulate(t.A[i].begin(), t.A[i].end(), 0.0);
    if (std::fabs(row - t.c[i]) > 1e-15) throw InvariantViolation("tableau: row-sum condition fails");
  }
  const double sum_b = std::accumulate(t.b.begin(), t.b.end(), 0.0);
  if (std::fabs(sum_b - 1.0) > 1e-15) throw InvariantViolation("tableau: weights must sum to 1");
}

const ButcherTableau& rk3_tableau() {
  static const ButcherTableau tableau{
      {0.0, 1.0 / 2.0, 3.0 / 4.0},
      {{0.0, 0.0, 0.0},
       {1.0 / 2.0, 0.0, 0.0},
       {0.0, 3.0 / 4.0, 0.0}},
      {2.0 / 9.0, 3.0 / 9.0, 4.0 / 9.0}};
  return tableau;
}

double increment_F(const ButcherTableau& t, const Rhs& f, double x, double y, double h) {
  const std::size_t s = t.stages();
  // Stage counts are tiny; a fixed buffer avoids allocating per step.
  double k_small[8];
  std::vector<double> k_large;
  double* k = k_small;
  if (s > 8) {
    k_large.resize(s);
    k = k_large.data();
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < s; ++i) {
    double yi = y;
    for (std::size_t j = 0; j < i; ++j) yi += t.A[i][j] * k[j];
    k[i] = h * f(x + t.c[i] * h, yi);
    sum += t.b[i] * k[i];
  }
  return sum / h;
}

double rk_step(const ButcherTableau& t, const Rhs& f, double x, double w, double h) {
  return w + h * increment_F(t, f, x, w, h);
}

double F_y_analytic(const Rhs& f, const Rhs& f_y, double x, double y, double h) {
  const double k1 = h * f(x, y);
  const double k2 = h * f(x + h / 2, y + k1 / 2);

  const double dk1 = h * f_y(x, y);
  const double dk2 = h * f_y(x + h / 2, y + k1 / 2) * (1 + dk1 / 2);
  const double dk3 = h * f_y(x + 3 * h / 4, y + 3 * k2 / 4) * (1 + 3 * dk2 / 4);

  return (2 * dk1 + 3 * dk2 + 4 * dk3) / (9 * h);
}

double F_y_numeric(const ButcherTableau& t, const Rhs& f, double x, double y, double h,
                   double delta) {
  if (!(delta > 0)) throw InvalidArgument("F_y_numeric: delta must be positive");
  return (increment_F(t, f, x, y + delta, h) - increment_F(t, f, x, y - delta, h)) / (2 * delta);
}

}  // namespace rkgl
