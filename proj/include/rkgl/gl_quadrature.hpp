#pragma once

#include <array>
#include <cmath>

#include "rkgl/ode_problem.hpp"

namespace rkgl {

inline constexpr double kGL2Root = 0.57735026918962576451;  // sqrt(3)/3
inline constexpr double kGL2Weight = 1.5;

/// Two-point Gauss-Legendre rule on [u, v], written as
///   integral ~= h (C1 f(x1) + C2 f(x2)),  h = (v - u) / 3,
/// where h is the average node separation and C1 = C2 = 3/2.
struct GLRule {
  std::array<double, 2> canonical_roots{-kGL2Root, kGL2Root};
  std::array<double, 2> weights{kGL2Weight, kGL2Weight};
  double u = -1.0;
  double v = 1.0;
  std::array<double, 2> mapped_nodes{-kGL2Root, kGL2Root};
  double h = 2.0 / 3.0;
};

/// Maps the canonical roots to [u, v] via x = ((v - u) t + u + v) / 2.
/// Throws InvalidArgument unless u < v.
GLRule gl2_rule(double u, double v);

/// w_base + h (C1 f(x1, w1) + C2 f(x2, w2)).
double gl2_update(double w_base, const Rhs& f, const GLRule& rule,
                  const std::array<double, 2>& w_at_nodes);

}  // namespace rkgl
