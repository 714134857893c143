#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rkgl/gl_quadrature.hpp"
#include "rkgl/ode_problem.hpp"
#include "rkgl/rk_core.hpp"

namespace rkgl {

enum class NodeRole { Initial, RK, GL };

const char* to_string(NodeRole role);

enum class Method { RKGL, RK3 };

const char* to_string(Method method);

/// Node layout for a solve. For RK3GL2 meshes, subinterval k (0-based)
/// covers nodes 3k .. 3k+3: two RK nodes at the mapped GL2 abscissae and the
/// GL node at its right end. Plain RK3 meshes are uniform with all-RK roles.
struct Mesh {
  double a = 0.0;
  double b = 1.0;
  std::size_t N = 0;  // subintervals (RKGL) or steps (RK3)
  Method method = Method::RKGL;
  std::vector<double> nodes;
  std::vector<NodeRole> roles;
  std::vector<double> step_sizes;  // x[i+1] - x[i]
  std::vector<double> gl_h;        // per-subinterval (v - u) / 3; RKGL only

  std::size_t size() const { return nodes.size(); }

  /// GL2 rule of subinterval k; RKGL meshes only.
  GLRule rule(std::size_t k) const;
};

Mesh build_mesh(double a, double b, std::size_t N);
Mesh build_uniform_mesh(double a, double b, std::size_t n_steps);

struct Trajectory {
  Mesh mesh;
  std::vector<double> w;
  std::optional<std::vector<double>> y;
  std::string problem_name;
};

/// RK3GL2: RK3 steps to the two GL nodes of each subinterval, then the GL2
/// update from the subinterval's left end closes it.
Trajectory solve_rkgl(const ODEProblem& p, std::size_t N);

Trajectory solve_rk3(const ODEProblem& p, std::size_t n_steps);

/// CSV with header `index,x,role,w,y,global_error`; 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& t);

/// 17 significant digits, locale independent.
std::string format_double(double v);

}  // namespace rkgl
