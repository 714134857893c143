#pragma once

// Test-only reference computations, independent of the library code paths
// they are used to check.

#include <cmath>
#include <cstdio>
#include <random>
#include <string>

namespace oracle {

/// Random expression text over x, y built from singularity-free pieces on
/// [-1, 1]^2 (log/sqrt/division arguments are kept positive).
inline std::string random_expression(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 11);
  std::uniform_real_distribution<double> coeff(-3.0, 3.0);
  auto sub = [&] { return random_expression(rng, depth - 1); };
  switch (pick(rng)) {
    case 0: return "x";
    case 1: return "y";
    case 2: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6g", std::fabs(coeff(rng)));
      return buf;
    }
    case 3: return "(" + sub() + " + " + sub() + ")";
    case 4: return "(" + sub() + " - " + sub() + ")";
    case 5: return "(" + sub() + " * " + sub() + ")";
    case 6: return "(" + sub() + ") / (2 + cos(" + sub() + "))";
    case 7: return "sin(" + sub() + ")";
    case 8: return "cos(" + sub() + ")";
    case 9: return "exp(sin(" + sub() + "))";
    case 10: return "log(2 + sin(" + sub() + ")) + sqrt(1 + (" + sub() + ")^2)";
    default: return "-(" + sub() + ")^" + std::to_string(2 + static_cast<int>(rng() % 2));
  }
}

/// Third-order Taylor map of the tableau (2/9, 3/9, 4/9) applied to y' = y,
/// expanded by hand: k1 = h, k2 = h(1 + h/2), k3 = h(1 + 3h/4 + 3h^2/8).
inline double rk3_increment_linear(double h) { return 1.0 + h / 2 + h * h / 6; }

/// Integral of c0 + c1 x + c2 x^2 + c3 x^3 over [u, v].
inline double cubic_integral(const double (&c)[4], double u, double v) {
  auto prim = [&](double x) {
    return x * (c[0] + x * (c[1] / 2 + x * (c[2] / 3 + x * c[3] / 4)));
  };
  return prim(v) - prim(u);
}

/// Mean of log2 ratios of consecutive positive samples.
template <class Container>
double mean_log2_ratio(const Container& e) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < e.size(); ++i) s += std::log2(std::fabs(e[i] / e[i + 1]));
  return s / static_cast<double>(e.size() - 1);
}

}  // namespace oracle
