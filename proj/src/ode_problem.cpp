#include "rkgl/ode_problem.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rkgl/errors.hpp"
#include "rkgl/expression.hpp"

namespace rkgl {

namespace {

constexpr double kResidualTol = 1e-8;
constexpr double kResidualStep = 1e-6;
constexpr double kFyStep = 1e-5;
constexpr double kFyTol = 1e-6;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

void validate(const ODEProblem& p) {
  const std::string who = "problem '" + p.name + "': ";
  if (!p.f) throw InvariantViolation(who + "missing right-hand side f");
  if (!(p.a < p.b)) throw InvariantViolation(who + "interval requires a < b");
  if (!std::isfinite(p.y0)) throw InvariantViolation(who + "y0 must be finite");

  if (p.exact) {
    const auto& y = *p.exact;
    const double y_a = y(p.a);
    if (!(std::fabs(y_a - p.y0) <= 1e-14 * std::max(1.0, std::fabs(p.y0))))
      throw InvariantViolation(who + "exact solution does not match the initial value (exact(a) = " +
                               fmt(y_a) + ", y0 = " + fmt(p.y0) + ")");
    for (int i = 0; i <= 10; ++i) {
      const double x = p.a + (p.b - p.a) * i / 10.0;
      const double dy = (y(x + kResidualStep) - y(x - kResidualStep)) / (2 * kResidualStep);
      const double residual = std::fabs(dy - p.f(x, y(x)));
      if (!(residual <= kResidualTol))
        throw InvariantViolation(who + "exact solution does not satisfy the ODE (residual " +
                                 fmt(residual) + " at x = " + fmt(x) + ")");
    }
  }

  if (p.f_y) {
    for (int i = 0; i <= 4; ++i) {
      const double x = p.a + (p.b - p.a) * i / 4.0;
      const double centre = p.exact ? (*p.exact)(x) : p.y0;
      for (double offset : {-0.25, 0.0, 0.25}) {
        const double y = centre + offset;
        const double fd = (p.f(x, y + kFyStep) - p.f(x, y - kFyStep)) / (2 * kFyStep);
        const double an = (*p.f_y)(x, y);
        if (!std::isfinite(fd) || !std::isfinite(an)) continue;
        if (std::fabs(fd - an) > kFyTol * std::max(1.0, std::fabs(an)))
          throw InvariantViolation(who + "f_y disagrees with central difference of f at (" +
                                   fmt(x) + ", " + fmt(y) + ")");
      }
    }
  }
}

std::vector<std::string> builtin_names() { return {"expgrow", "riccati", "logistic", "forced"}; }

ODEProblem builtin(std::string_view name) {
  ODEProblem p;
  p.name = std::string(name);
  if (name == "expgrow") {
    p.f = [](double, double y) { return y; };
    p.f_y = [](double, double) { return 1.0; };
    p.exact = [](double x) { return std::exp(x); };
    p.a = 0.0, p.b = 2.0, p.y0 = 1.0;
  } else if (name == "riccati") {
    p.f = [](double x, double y) { return -2.0 * x * y * y; };
    p.f_y = [](double x, double y) { return -4.0 * x * y; };
    p.exact = [](double x) { return 1.0 / (1.0 + x * x); };
    p.a = 0.0, p.b = 2.0, p.y0 = 1.0;
  } else if (name == "logistic") {
    p.f = [](double, double y) { return y * (1.0 - y); };
    p.f_y = [](double, double y) { return 1.0 - 2.0 * y; };
    p.exact = [](double x) { return 1.0 / (1.0 + std::exp(-x)); };
    p.a = 0.0, p.b = 4.0, p.y0 = 0.5;
  } else if (name == "forced") {
    p.f = [](double x, double y) { return -5.0 * (y - std::sin(x)) + std::cos(x); };
    p.f_y = [](double, double) { return -5.0; };
    p.exact = [](double x) { return std::sin(x) + std::exp(-5.0 * x); };
    p.a = 0.0, p.b = 3.0, p.y0 = 1.0;
  } else {
    std::string keys;
    for (const auto& k : builtin_names()) keys += (keys.empty() ? "" : ", ") + k;
    throw UnknownProblem("unknown problem '" + std::string(name) + "'; available: " + keys);
  }
  return p;
}

ODEProblem from_expressions(std::string_view f_src, std::optional<std::string_view> exact_src,
                            double a, double b, double y0, std::string name) {
  const Expr f = parse(f_src);
  ODEProblem p;
  p.name = std::move(name);
  p.f = [f](double x, double y) { return eval(f, x, y); };
  const Expr f_y = diff_y(f);
  p.f_y = [f_y](double x, double y) { return eval(f_y, x, y); };
  if (exact_src) {
    const Expr exact = parse(*exact_src);
    if (exact.depends_on_y()) throw InvariantViolation("exact solution must be a function of x only");
    p.exact = [exact](double x) { return eval(exact, x, 0.0); };
  }
  p.a = a, p.b = b, p.y0 = y0;
  validate(p);
  return p;
}

ODEProblem problem_from_json_text(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("problem file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidArgument("problem file must contain a JSON object");
  auto number = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_number())
      throw InvalidArgument(std::string("problem file: '") + key + "' must be a number");
    return j[key].get<double>();
  };
  if (!j.contains("f") || !j["f"].is_string())
    throw InvalidArgument("problem file: 'f' must be a string");
  std::optional<std::string> exact;
  if (j.contains("exact")) {
    if (!j["exact"].is_string()) throw InvalidArgument("problem file: 'exact' must be a string");
    exact = j["exact"].get<std::string>();
  }
  std::string name = "custom";
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw InvalidArgument("problem file: 'name' must be a string");
    name = j["name"].get<std::string>();
  }
  const auto f = j["f"].get<std::string>();
  return from_expressions(f, exact ? std::optional<std::string_view>(*exact) : std::nullopt,
                          number("a"), number("b"), number("y0"), std::move(name));
}

ODEProblem load_problem_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open problem file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return problem_from_json_text(buf.str());
}

}  // namespace rkgl
