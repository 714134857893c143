#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "rkgl/errors.hpp"
#include "rkgl/ode_problem.hpp"
#include "rkgl/rk_core.hpp"

using namespace rkgl;

TEST_CASE("rk3 tableau entries") {
  const ButcherTableau& t = rk3_tableau();
  REQUIRE(t.stages() == 3);
  CHECK(t.c == std::vector<double>{0.0, 0.5, 0.75});
  CHECK(t.b == std::vector<double>{2.0 / 9, 3.0 / 9, 4.0 / 9});
  CHECK(t.A[1][0] == 0.5);
  CHECK(t.A[2][0] == 0.0);
  CHECK(t.A[2][1] == 0.75);
  CHECK(t.b[0] + t.b[1] + t.b[2] == doctest::Approx(1.0).epsilon(1e-16));
  CHECK_NOTHROW(validate(t));
}

TEST_CASE("tableau validation rejects implicit or inconsistent methods") {
  ButcherTableau t = rk3_tableau();
  t.A[0][0] = 0.1;
  CHECK_THROWS_AS(validate(t), InvariantViolation);
  t = rk3_tableau();
  t.b[2] = 0.5;
  CHECK_THROWS_AS(validate(t), InvariantViolation);
  t = rk3_tableau();
  t.c[2] = 0.5;
  CHECK_THROWS_AS(validate(t), InvariantViolation);
}

TEST_CASE("increment_F examples") {
  const auto& t = rk3_tableau();
  const Rhs five = [](double, double) { return 5.0; };
  const Rhs lin = [](double, double y) { return y; };
  const Rhs xonly = [](double x, double) { return x; };
  for (double h : {0.3, 0.1, 1e-3}) {
    CHECK(increment_F(t, five, 0.4, -2.0, h) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(increment_F(t, lin, 0.0, 1.0, h) == doctest::Approx(oracle::rk3_increment_linear(h)).epsilon(1e-15));
    CHECK(increment_F(t, xonly, 1.5, 0.0, h) == doctest::Approx(1.5 + h / 2).epsilon(1e-15));
  }
}

TEST_CASE("rk_step examples") {
  const auto& t = rk3_tableau();
  const Rhs zero = [](double, double) { return 0.0; };
  const Rhs one = [](double, double) { return 1.0; };
  const Rhs lin = [](double, double y) { return y; };
  CHECK(rk_step(t, zero, 0.2, 3.5, 0.1) == 3.5);
  CHECK(rk_step(t, one, 0.2, 3.5, 0.25) == 3.75);
  const double h = 0.1;
  CHECK(rk_step(t, lin, 0.0, 1.0, h) == doctest::Approx(1 + h + h * h / 2 + h * h * h / 6).epsilon(1e-15));
}

TEST_CASE("F_y_analytic examples") {
  const Rhs c = [](double, double) { return 2.0; };
  const Rhs zero = [](double, double) { return 0.0; };
  CHECK(F_y_analytic(c, zero, 0.1, 0.2, 0.3) == 0.0);

  const Rhs lin = [](double, double y) { return y; };
  const Rhs one = [](double, double) { return 1.0; };
  for (double h : {0.5, 0.1, 0.01})
    CHECK(F_y_analytic(lin, one, 0.0, 1.0, h) == doctest::Approx(1 + h / 2 + h * h / 6).epsilon(1e-15));

  const Rhs xy = [](double x, double y) { return x * y; };
  const Rhs xy_y = [](double x, double) { return x; };
  const double an = F_y_analytic(xy, xy_y, 1.0, 1.0, 0.1);
  const double nu = F_y_numeric(rk3_tableau(), xy, 1.0, 1.0, 0.1, 1e-5);
  CHECK(std::fabs(an - nu) <= 1e-10);
}

TEST_CASE("F_y_numeric converges at second order in delta") {
  const auto& t = rk3_tableau();
  const Rhs f = [](double, double y) { return std::sin(y); };
  const Rhs fy = [](double, double y) { return std::cos(y); };
  const Rhs zero = [](double, double) { return 0.0; };
  CHECK(F_y_numeric(t, zero, 0.0, 1.0, 0.2, 1e-4) == 0.0);
  CHECK_THROWS_AS(F_y_numeric(t, f, 0.0, 1.0, 0.2, 0.0), InvalidArgument);

  const double x = 0.3, y = 0.8, h = 0.5;
  const double exact = F_y_analytic(f, fy, x, y, h);
  const double g1 = std::fabs(F_y_numeric(t, f, x, y, h, 1e-2) - exact);
  const double g2 = std::fabs(F_y_numeric(t, f, x, y, h, 5e-3) - exact);
  const double g3 = std::fabs(F_y_numeric(t, f, x, y, h, 2.5e-3) - exact);
  CHECK(g1 / g2 == doctest::Approx(4.0).epsilon(0.02));
  CHECK(g2 / g3 == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("closed-form F_y agrees with central differences on registry problems") {
  const auto& t = rk3_tableau();
  for (const auto& name : builtin_names()) {
    const ODEProblem p = builtin(name);
    for (double h : {0.1, 0.01}) {
      for (int i = 0; i < 9; ++i) {
        const double x = p.a + (p.b - p.a) * i / 8.0;
        const double y = (*p.exact)(x);
        CAPTURE(name);
        CAPTURE(x);
        const double gap = std::fabs(F_y_analytic(p.f, *p.f_y, x, y, h) - F_y_numeric(t, p.f, x, y, h, 1e-5));
        CHECK(gap <= 1e-8);
      }
    }
  }
}

TEST_CASE("property: RK3 local error is fourth order") {
  const auto& t = rk3_tableau();
  for (const auto& name : builtin_names()) {
    const ODEProblem p = builtin(name);
    const auto& y = *p.exact;
    const double x0 = 0.5 * (p.a + p.b);
    std::vector<double> eps;
    for (double h : {0.1, 0.05, 0.025, 0.0125}) eps.push_back(rk_step(t, p.f, x0, y(x0), h) - y(x0 + h));
    CAPTURE(name);
    CHECK(oracle::mean_log2_ratio(eps) == doctest::Approx(4.0).epsilon(0.05));
  }
}
