#include <doctest.h>

#include <cmath>
#include <string>

#include "rkgl/errors.hpp"
#include "rkgl/ode_problem.hpp"

using namespace rkgl;

TEST_CASE("registry examples") {
  CHECK(builtin("expgrow").exact.value()(1.0) == doctest::Approx(2.718281828459045).epsilon(1e-15));
  CHECK(builtin("riccati").f(1.0, 0.5) == -0.5);
  const ODEProblem lg = builtin("logistic");
  CHECK(lg.y0 == 0.5);
  CHECK(lg.b == 4.0);
}

TEST_CASE("unknown registry name lists the available keys") {
  try {
    builtin("nope");
    FAIL("expected UnknownProblem");
  } catch (const UnknownProblem& e) {
    const std::string msg = e.what();
    for (const auto& key : builtin_names()) CHECK(msg.find(key) != std::string::npos);
  }
}

TEST_CASE("every registry problem satisfies the problem invariants") {
  for (const auto& name : builtin_names()) {
    CAPTURE(name);
    const ODEProblem p = builtin(name);
    CHECK(p.has_exact());
    CHECK(p.f_y.has_value());
    CHECK_NOTHROW(validate(p));
    CHECK((*p.exact)(p.a) == p.y0);
  }
}

TEST_CASE("from_expressions examples") {
  const ODEProblem ok = from_expressions("y", "exp(x)", 0, 1, 1);
  CHECK(ok.has_exact());
  CHECK(ok.f(0.3, 2.0) == 2.0);
  CHECK((*ok.f_y)(0.3, 2.0) == 1.0);

  try {
    from_expressions("y", "exp(2*x)", 0, 1, 1);
    FAIL("expected InvariantViolation");
  } catch (const InvariantViolation& e) {
    CHECK(std::string(e.what()).find("does not satisfy the ODE") != std::string::npos);
  }

  const ODEProblem no_exact = from_expressions("-2*x*y^2", std::nullopt, 0, 2, 1);
  CHECK_FALSE(no_exact.has_exact());
  CHECK(no_exact.f(1.0, 0.5) == -0.5);
}

TEST_CASE("from_expressions rejects bad input") {
  CHECK_THROWS_AS(from_expressions("y +", std::nullopt, 0, 1, 1), ParseError);
  CHECK_THROWS_AS(from_expressions("y", std::nullopt, 1, 1, 1), InvariantViolation);
  // exact(a) differs from y0
  CHECK_THROWS_AS(from_expressions("y", "exp(x)", 0, 1, 2), InvariantViolation);
  CHECK_THROWS_AS(from_expressions("y", "exp(x)*y", 0, 1, 1), InvariantViolation);
}

TEST_CASE("symbolic f_y agrees with central differences") {
  const ODEProblem p = from_expressions("sin(x*y) - y^3/(1+x^2)", std::nullopt, 0, 2, 0.4);
  for (double x : {0.0, 0.5, 1.3, 2.0}) {
    for (double y : {-1.0, 0.2, 0.9}) {
      const double d = 1e-5;
      const double cd = (p.f(x, y + d) - p.f(x, y - d)) / (2 * d);
      CHECK((*p.f_y)(x, y) == doctest::Approx(cd).epsilon(1e-8));
    }
  }
}

TEST_CASE("validate catches a wrong analytic f_y") {
  ODEProblem p = builtin("riccati");
  p.f_y = [](double x, double y) { return -2.0 * x * y; };
  CHECK_THROWS_AS(validate(p), InvariantViolation);
}

TEST_CASE("JSON problem config") {
  const ODEProblem p = problem_from_json_text(
      R"json({"f": "-2*x*y^2", "exact": "1/(1+x^2)", "a": 0, "b": 2, "y0": 1, "name": "ric"})json");
  CHECK(p.name == "ric");
  CHECK(p.has_exact());
  CHECK(p.b == 2.0);

  const ODEProblem q = problem_from_json_text(R"({"f": "y", "a": 0, "b": 1, "y0": 1})");
  CHECK(q.name == "custom");
  CHECK_FALSE(q.has_exact());

  CHECK_THROWS_AS(problem_from_json_text(R"({"a": 0, "b": 1, "y0": 1})"), InvalidArgument);
  CHECK_THROWS_AS(problem_from_json_text(R"({"f": "y", "a": "0", "b": 1, "y0": 1})"), InvalidArgument);
  CHECK_THROWS_AS(problem_from_json_text("{not json"), InvalidArgument);
  CHECK_THROWS_AS(load_problem_file("/nonexistent/problem.json"), InvalidArgument);
}
