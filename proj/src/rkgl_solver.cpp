#include "rkgl/rkgl_solver.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "rkgl/errors.hpp"

namespace rkgl {

const char* to_string(NodeRole role) {
  switch (role) {
    case NodeRole::Initial: return "INITIAL";
    case NodeRole::RK: return "RK";
    case NodeRole::GL: return "GL";
  }
  return "?";
}

const char* to_string(Method method) { return method == Method::RKGL ? "rkgl" : "rk3"; }

GLRule Mesh::rule(std::size_t k) const {
  if (method != Method::RKGL || k >= N) throw InvalidArgument("Mesh::rule: no such subinterval");
  return gl2_rule(nodes[3 * k], nodes[3 * k + 3]);
}

namespace {

void fill_steps(Mesh& m) {
  m.step_sizes.resize(m.nodes.size() - 1);
  for (std::size_t i = 0; i + 1 < m.nodes.size(); ++i)
    m.step_sizes[i] = m.nodes[i + 1] - m.nodes[i];
}

double boundary(double a, double b, std::size_t k, std::size_t n) {
  return k == n ? b : a + (b - a) * static_cast<double>(k) / static_cast<double>(n);
}

void fill_exact(const ODEProblem& p, Trajectory& t) {
  if (!p.exact) return;
  std::vector<double> y(t.mesh.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = (*p.exact)(t.mesh.nodes[i]);
  t.y = std::move(y);
}

void check_finite(const Trajectory& t, std::size_t i) {
  if (!std::isfinite(t.w[i])) throw NonFiniteSolution(i, t.mesh.nodes[i]);
}

}  // namespace

Mesh build_mesh(double a, double b, std::size_t N) {
  if (!(a < b) || N < 1) throw InvalidArgument("build_mesh: requires a < b and N >= 1");
  Mesh m;
  m.a = a, m.b = b, m.N = N, m.method = Method::RKGL;
  m.nodes.reserve(3 * N + 1);
  m.roles.reserve(3 * N + 1);
  m.nodes.push_back(a);
  m.roles.push_back(NodeRole::Initial);
  for (std::size_t k = 0; k < N; ++k) {
    const GLRule r = gl2_rule(boundary(a, b, k, N), boundary(a, b, k + 1, N));
    m.nodes.insert(m.nodes.end(), {r.mapped_nodes[0], r.mapped_nodes[1], r.v});
    m.roles.insert(m.roles.end(), {NodeRole::RK, NodeRole::RK, NodeRole::GL});
    m.gl_h.push_back(r.h);
  }
  fill_steps(m);
  return m;
}

Mesh build_uniform_mesh(double a, double b, std::size_t n_steps) {
  if (!(a < b) || n_steps < 1) throw InvalidArgument("build_uniform_mesh: requires a < b and n >= 1");
  Mesh m;
  m.a = a, m.b = b, m.N = n_steps, m.method = Method::RK3;
  for (std::size_t i = 0; i <= n_steps; ++i) {
    m.nodes.push_back(boundary(a, b, i, n_steps));
    m.roles.push_back(i == 0 ? NodeRole::Initial : NodeRole::RK);
  }
  fill_steps(m);
  return m;
}

Trajectory solve_rkgl(const ODEProblem& p, std::size_t N) {
  Trajectory t{build_mesh(p.a, p.b, N), {}, std::nullopt, p.name};
  const auto& x = t.mesh.nodes;
  const auto& tab = rk3_tableau();
  t.w.assign(x.size(), 0.0);
  t.w[0] = p.y0;
  check_finite(t, 0);
  for (std::size_t k = 0; k < N; ++k) {
    const std::size_t i = 3 * k;
    t.w[i + 1] = rk_step(tab, p.f, x[i], t.w[i], x[i + 1] - x[i]);
    check_finite(t, i + 1);
    t.w[i + 2] = rk_step(tab, p.f, x[i + 1], t.w[i + 1], x[i + 2] - x[i + 1]);
    check_finite(t, i + 2);
    // The quadrature update starts from the subinterval's left end, w[3k].
    t.w[i + 3] = gl2_update(t.w[i], p.f, t.mesh.rule(k), {t.w[i + 1], t.w[i + 2]});
    check_finite(t, i + 3);
  }
  fill_exact(p, t);
  return t;
}

Trajectory solve_rk3(const ODEProblem& p, std::size_t n_steps) {
  Trajectory t{build_uniform_mesh(p.a, p.b, n_steps), {}, std::nullopt, p.name};
  const auto& x = t.mesh.nodes;
  const auto& tab = rk3_tableau();
  t.w.assign(x.size(), 0.0);
  t.w[0] = p.y0;
  check_finite(t, 0);
  for (std::size_t i = 0; i < n_steps; ++i) {
    t.w[i + 1] = rk_step(tab, p.f, x[i], t.w[i], x[i + 1] - x[i]);
    check_finite(t, i + 1);
  }
  fill_exact(p, t);
  return t;
}

std::string format_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& t) {
  out << "index,x,role,w,y,global_error\n";
  for (std::size_t i = 0; i < t.mesh.size(); ++i) {
    out << i << ',' << format_double(t.mesh.nodes[i]) << ',' << to_string(t.mesh.roles[i]) << ','
        << format_double(t.w[i]) << ',';
    if (t.y) out << format_double((*t.y)[i]) << ',' << format_double(t.w[i] - (*t.y)[i]);
    else out << ',';
    out << '\n';
  }
}

}  // namespace rkgl
