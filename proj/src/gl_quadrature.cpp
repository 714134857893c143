#include "rkgl/gl_quadrature.hpp"

#include "rkgl/errors.hpp"

namespace rkgl {

GLRule gl2_rule(double u, double v) {
  if (!(u < v)) throw InvalidArgument("gl2_rule: interval requires u < v");
  GLRule r;
  r.u = u;
  r.v = v;
  for (int i = 0; i < 2; ++i) r.mapped_nodes[i] = 0.5 * ((v - u) * r.canonical_roots[i] + u + v);
  r.h = (v - u) / 3.0;
  return r;
}

double gl2_update(double w_base, const Rhs& f, const GLRule& rule,
                  const std::array<double, 2>& w_at_nodes) {
  const double sum = rule.weights[0] * f(rule.mapped_nodes[0], w_at_nodes[0]) +
                     rule.weights[1] * f(rule.mapped_nodes[1], w_at_nodes[1]);
  return w_base + rule.h * sum;
}

}  // namespace rkgl
