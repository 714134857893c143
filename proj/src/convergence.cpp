#include "rkgl/convergence.hpp"

#include <cmath>
#include <exception>

#include "rkgl/errors.hpp"

namespace rkgl {

namespace {

// Runs body(i) for i in [0, n). Parallel iterations write disjoint slots, so
// the result is identical to the serial loop. The first exception (by index)
// is rethrown after the loop.
template <class Body>
void for_each_index(std::size_t n, Execution exec, Body&& body) {
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long>(n);
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) {
      try {
        body(static_cast<std::size_t>(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  } else {
    for (long i = 0; i < count; ++i) {
      try {
        body(static_cast<std::size_t>(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

void validate_n_list(std::span<const std::size_t> Ns) {
  if (Ns.size() < 2) throw InvalidArgument("N-list needs at least two entries");
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    if (Ns[i] < 1) throw InvalidArgument("N-list entries must be >= 1");
    if (i > 0 && Ns[i] != 2 * Ns[i - 1])
      throw InvalidArgument("N-list must be a doubling sequence");
  }
}

ConvergenceStudy convergence_study(const ODEProblem& p, Method method,
                                   std::span<const std::size_t> Ns, Execution exec) {
  validate_n_list(Ns);
  if (!p.exact) throw MissingExactSolution("problem '" + p.name + "' has no exact solution");

  ConvergenceStudy study;
  study.rows.resize(Ns.size());
  for_each_index(Ns.size(), exec, [&](std::size_t i) {
    const std::size_t N = Ns[i];
    const Trajectory t = method == Method::RKGL ? solve_rkgl(p, N) : solve_rk3(p, 3 * N);
    auto& row = study.rows[i];
    row.N = N;
    row.h = (p.b - p.a) / static_cast<double>(3 * N);
    row.E = std::fabs(t.w.back() - t.y->back());
  });

  std::vector<std::pair<double, double>> pairs;
  for (const auto& row : study.rows) pairs.emplace_back(row.h, row.E);
  study.estimate = observed_order(pairs);
  for (std::size_t i = 1; i < study.rows.size(); ++i)
    study.rows[i].observed_order = study.estimate.fitted_orders[i - 1];
  return study;
}

std::vector<DecompositionReport> decomposition_study(const ODEProblem& p,
                                                     std::span<const std::size_t> Ns,
                                                     Execution exec) {
  if (!p.exact) throw MissingExactSolution("problem '" + p.name + "' has no exact solution");
  std::vector<DecompositionReport> reports(Ns.size());
  for_each_index(Ns.size(), exec,
                 [&](std::size_t i) { reports[i] = analyze_rkgl(p, Ns[i]).report; });
  return reports;
}

}  // namespace rkgl
