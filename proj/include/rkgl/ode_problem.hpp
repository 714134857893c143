#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rkgl {

using Rhs = std::function<double(double x, double y)>;
using Solution = std::function<double(double x)>;

/// Scalar initial value problem y' = f(x, y), y(a) = y0 on [a, b].
struct ODEProblem {
  std::string name;
  Rhs f;
  std::optional<Rhs> f_y;
  std::optional<Solution> exact;
  double a = 0.0;
  double b = 1.0;
  double y0 = 0.0;

  bool has_exact() const { return exact.has_value(); }
};

/// Throws InvariantViolation naming the first failed check.
void validate(const ODEProblem& p);

std::vector<std::string> builtin_names();

/// Registry lookup; throws UnknownProblem listing the available keys.
ODEProblem builtin(std::string_view name);

/// Builds a problem from expression text. f_y is the symbolic derivative of f.
ODEProblem from_expressions(std::string_view f_src, std::optional<std::string_view> exact_src,
                            double a, double b, double y0, std::string name = "custom");

/// Reads a JSON problem file: {"f": str, "exact"?: str, "a": num, "b": num,
/// "y0": num, "name"?: str}.
ODEProblem load_problem_file(const std::string& path);
ODEProblem problem_from_json_text(std::string_view text);

}  // namespace rkgl
