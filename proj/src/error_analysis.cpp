#include "rkgl/error_analysis.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "rkgl/errors.hpp"
#include "rkgl/gl_quadrature.hpp"
#include "rkgl/rk_core.hpp"

namespace rkgl {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> exact_values(const ODEProblem& p, const Trajectory& t) {
  if (t.y) return *t.y;
  if (!p.exact) throw MissingExactSolution("problem '" + p.name + "' has no exact solution");
  std::vector<double> y(t.mesh.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = (*p.exact)(t.mesh.nodes[i]);
  return y;
}

bool is_rk_step(const Mesh& m, std::size_t k) {
  return k + 1 < m.size() && m.roles[k + 1] == NodeRole::RK;
}

void require_rkgl(const Mesh& m, const char* who) {
  if (m.method != Method::RKGL || m.size() != 3 * m.N + 1)
    throw InvalidArgument(std::string(who) + ": requires an RK3GL2 mesh");
}

}  // namespace

ErrorSeries local_errors(const ODEProblem& p, const Trajectory& t) {
  const std::vector<double> y = exact_values(p, t);
  const Mesh& m = t.mesh;
  if (t.w.size() != m.size()) throw InvalidArgument("local_errors: trajectory length mismatch");
  const auto& tab = rk3_tableau();

  ErrorSeries s;
  s.roles = m.roles;
  s.local.assign(m.size(), 0.0);
  s.global.resize(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) s.global[i] = t.w[i] - y[i];

  for (std::size_t i = 1; i < m.size(); ++i) {
    if (m.roles[i] == NodeRole::RK) {
      s.local[i] = rk_step(tab, p.f, m.nodes[i - 1], y[i - 1], m.step_sizes[i - 1]) - y[i];
    } else if (m.roles[i] == NodeRole::GL) {
      const GLRule rule = m.rule((i - 3) / 3);
      s.local[i] = gl2_update(y[i - 3], p.f, rule, {y[i - 2], y[i - 1]}) - y[i];
    }
  }
  return s;
}

PropagationCoefficients mean_value_slopes(const ODEProblem& p, const Trajectory& t,
                                          const ErrorSeries& eps) {
  const std::vector<double> y = exact_values(p, t);
  const Mesh& m = t.mesh;
  if (eps.global.size() != m.size()) throw InvalidArgument("mean_value_slopes: length mismatch");
  const auto& tab = rk3_tableau();

  auto f_y_at = [&](double x, double yv) {
    if (p.f_y) return (*p.f_y)(x, yv);
    const double d = 1e-6 * std::max(1.0, std::fabs(yv));
    return (p.f(x, yv + d) - p.f(x, yv - d)) / (2 * d);
  };

  PropagationCoefficients c;
  c.slopes_f.assign(m.size(), kNaN);
  c.slopes_F.assign(m.size(), kNaN);
  for (std::size_t j = 0; j < m.size(); ++j) {
    const double x = m.nodes[j];
    const double delta = eps.global[j];
    const bool degenerate = !(std::fabs(delta) > kSlopeThreshold);
    if (m.roles[j] == NodeRole::RK) {
      c.slopes_f[j] = degenerate ? f_y_at(x, y[j]) : (p.f(x, t.w[j]) - p.f(x, y[j])) / delta;
    }
    if (is_rk_step(m, j)) {
      const double h = m.step_sizes[j];
      if (degenerate) {
        c.slopes_F[j] = p.f_y ? F_y_analytic(p.f, *p.f_y, x, y[j], h)
                              : F_y_numeric(tab, p.f, x, y[j], h, 1e-6 * std::max(1.0, std::fabs(y[j])));
      } else {
        c.slopes_F[j] = (increment_F(tab, p.f, x, t.w[j], h) - increment_F(tab, p.f, x, y[j], h)) / delta;
      }
    }
  }
  return c;
}

PropagationCoefficients propagation_coefficients(const Trajectory& t,
                                                 PropagationCoefficients c,
                                                 const ErrorSeries& eps) {
  const Mesh& m = t.mesh;
  if (c.slopes_F.size() != m.size() || c.slopes_f.size() != m.size() ||
      eps.local.size() != m.size())
    throw InvalidArgument("propagation_coefficients: length mismatch");

  c.alpha.assign(m.size(), kNaN);
  for (std::size_t k = 0; k < m.size(); ++k)
    if (is_rk_step(m, k)) c.alpha[k] = 1.0 + m.step_sizes[k] * c.slopes_F[k];

  c.gamma.assign(m.size(), kNaN);
  c.A_sums.clear();
  c.B.clear();
  if (m.method != Method::RKGL) return c;
  require_rkgl(m, "propagation_coefficients");

  for (std::size_t k = 0; k < m.N; ++k) {
    const std::size_t base = 3 * k, r1 = base + 1, r2 = base + 2;
    const GLRule rule = m.rule(k);
    const double c1 = rule.weights[0], c2 = rule.weights[1];
    // Delta_{r2} = eps_{r2} + alpha_{r1} (eps_{r1} + alpha_{base} Delta_{base}).
    c.gamma[r1] = c1 * c.slopes_f[r1] + c.alpha[r1] * c2 * c.slopes_f[r2];
    c.gamma[r2] = c2 * c.slopes_f[r2];
    c.A_sums.push_back(c.gamma[r1] * eps.local[r1] + c.gamma[r2] * eps.local[r2]);
    c.B.push_back(c1 * c.slopes_f[r1] * c.alpha[base] +
                  c2 * c.slopes_f[r2] * c.alpha[base] * c.alpha[r1]);
  }
  return c;
}

std::vector<double> g_weights(const PropagationCoefficients& c, const Mesh& m) {
  require_rkgl(m, "g_weights");
  if (c.B.size() != m.N || c.gamma.size() != m.size() || m.gl_h.size() != m.N)
    throw InvalidArgument("g_weights: coefficients do not match the mesh");

  std::vector<double> G(3 * m.N);
  // carry = product over later subintervals l of (1 + B_l h_l).
  double carry = 1.0;
  for (std::size_t k = m.N; k-- > 0;) {
    const double h = m.gl_h[k];
    G[3 * k + 2] = carry;  // GL node 3k+3
    G[3 * k + 1] = c.gamma[3 * k + 2] * h * carry;
    G[3 * k] = c.gamma[3 * k + 1] * h * carry;
    carry *= 1.0 + c.B[k] * h;
  }
  return G;
}

DecompositionReport reconstruct_global_error(const ErrorSeries& eps,
                                             const PropagationCoefficients& c,
                                             const Mesh& m) {
  require_rkgl(m, "reconstruct_global_error");
  if (eps.local.size() != m.size() || eps.global.size() != m.size() ||
      c.A_sums.size() != m.N || c.B.size() != m.N || m.gl_h.size() != m.N)
    throw InvalidArgument("reconstruct_global_error: mismatched lengths");

  DecompositionReport r;
  r.delta_end = eps.global.back();
  // Delta_0 is zero whenever y0 is the exact initial value; it is carried
  // explicitly so the identity also holds otherwise.
  const double delta0 = eps.global.front();
  double delta = delta0;
  for (std::size_t k = 0; k < m.N; ++k) {
    const double h = m.gl_h[k];
    const double eps_gl = eps.local[3 * k + 3];
    const double a_term = c.A_sums[k] * h;
    const double b_term = c.B[k] * delta * h;
    r.eps_gl_sum += eps_gl;
    r.A_part += a_term;
    r.B_part += b_term;
    delta = delta + eps_gl + a_term + b_term;
    r.subinterval_deltas.push_back(delta);
  }
  r.reconstruction = delta0 + r.eps_gl_sum + r.A_part + r.B_part;
  r.residual = std::fabs(r.reconstruction - r.delta_end);

  r.g_weights = g_weights(c, m);
  double initial_weight = 1.0;
  for (std::size_t k = 0; k < m.N; ++k) initial_weight *= 1.0 + c.B[k] * m.gl_h[k];
  r.g_reconstruction = initial_weight * delta0;
  for (std::size_t i = 1; i < m.size(); ++i) r.g_reconstruction += r.g_weights[i - 1] * eps.local[i];
  return r;
}

OrderEstimate observed_order(const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.size() < 2) throw InsufficientData("observed_order: need at least two (h, E) pairs");
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    const auto [h, e] = pairs[j];
    if (!(h > 0) || !std::isfinite(e)) throw InvalidArgument("observed_order: invalid sample");
    if (!(e > 0))
      throw NonPositiveError("observed_order: zero error at h = " + format_double(h) +
                             " (exact integration, no fit)");
    if (j > 0 && std::fabs(pairs[j - 1].first / h - 2.0) > 1e-9)
      throw InvalidArgument("observed_order: h must halve between consecutive samples");
  }
  OrderEstimate est;
  est.pairs = pairs;
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < pairs.size(); ++j) {
    est.fitted_orders.push_back(std::log2(pairs[j].second / pairs[j + 1].second));
    sum += est.fitted_orders.back();
  }
  est.mean_order = sum / static_cast<double>(est.fitted_orders.size());
  return est;
}

Analysis analyze_rkgl(const ODEProblem& p, std::size_t N) {
  Analysis a{solve_rkgl(p, N), {}, {}, {}};
  a.errors = local_errors(p, a.trajectory);
  a.coeffs = propagation_coefficients(a.trajectory, mean_value_slopes(p, a.trajectory, a.errors),
                                      a.errors);
  a.report = reconstruct_global_error(a.errors, a.coeffs, a.trajectory.mesh);
  return a;
}

std::string to_json(const DecompositionReport& r) {
  std::ostringstream os;
  os << "{\n"
     << "  \"delta_end\": " << format_double(r.delta_end) << ",\n"
     << "  \"eps_gl_sum\": " << format_double(r.eps_gl_sum) << ",\n"
     << "  \"A_part\": " << format_double(r.A_part) << ",\n"
     << "  \"B_part\": " << format_double(r.B_part) << ",\n"
     << "  \"reconstruction\": " << format_double(r.reconstruction) << ",\n"
     << "  \"residual\": " << format_double(r.residual) << ",\n"
     << "  \"g_weights\": [";
  for (std::size_t i = 0; i < r.g_weights.size(); ++i)
    os << (i ? ", " : "") << format_double(r.g_weights[i]);
  os << "],\n"
     << "  \"g_reconstruction\": " << format_double(r.g_reconstruction) << "\n"
     << "}\n";
  return os.str();
}

}  // namespace rkgl
