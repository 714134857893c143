#include "rkgl/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rkgl/convergence.hpp"
#include "rkgl/error_analysis.hpp"
#include "rkgl/errors.hpp"
#include "rkgl/ode_problem.hpp"

namespace rkgl::cli {

namespace {

struct ConfigError : Error {
  using Error::Error;
};

ODEProblem load_problem(const RunConfig& cfg) {
  if (cfg.problem.has_value() == cfg.problem_file.has_value())
    throw ConfigError("exactly one of --problem or --problem-file is required");
  try {
    return cfg.problem ? builtin(*cfg.problem) : load_problem_file(*cfg.problem_file);
  } catch (const UnknownProblem& e) {
    throw ConfigError(e.what());
  } catch (const ParseError& e) {
    throw ConfigError(std::string("invalid expression: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  } catch (const InvariantViolation& e) {
    throw ConfigError(e.what());
  } catch (const UnsupportedDerivative& e) {
    throw ConfigError(e.what());
  }
}

std::size_t single_n(const RunConfig& cfg) {
  if (cfg.Ns.size() != 1 || cfg.Ns[0] < 1) throw ConfigError("--N must be a single integer >= 1");
  return cfg.Ns[0];
}

void write_file(const std::string& path, const std::string& content) {
  if (path.empty()) throw ConfigError("--out is required");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  out << content;
  if (!out) throw ConfigError("failed writing '" + path + "'");
}

std::string trajectory_json(const Trajectory& t) {
  std::ostringstream os;
  os << "{\n  \"problem\": \"" << t.problem_name << "\",\n  \"nodes\": [\n";
  for (std::size_t i = 0; i < t.mesh.size(); ++i) {
    os << "    {\"index\": " << i << ", \"x\": " << format_double(t.mesh.nodes[i])
       << ", \"role\": \"" << to_string(t.mesh.roles[i]) << "\", \"w\": " << format_double(t.w[i]);
    if (t.y)
      os << ", \"y\": " << format_double((*t.y)[i])
         << ", \"global_error\": " << format_double(t.w[i] - (*t.y)[i]);
    os << '}' << (i + 1 < t.mesh.size() ? ",\n" : "\n");
  }
  os << "  ]\n}\n";
  return os.str();
}

// Maps library exceptions onto exit codes.
template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const MissingExactSolution& e) {
    err << "error: " << e.what() << '\n';
    return kMissingPrerequisite;
  } catch (const NonFiniteSolution& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const NonPositiveError& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

}  // namespace

int run_solve(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    const ODEProblem p = load_problem(cfg);
    const std::size_t N = single_n(cfg);
    if (cfg.out.empty()) throw ConfigError("--out is required");
    const Trajectory t = cfg.method == Method::RKGL ? solve_rkgl(p, N) : solve_rk3(p, 3 * N);
    std::string content;
    if (cfg.format == Format::CSV) {
      std::ostringstream os;
      write_trajectory_csv(os, t);
      content = os.str();
    } else {
      content = trajectory_json(t);
    }
    write_file(cfg.out, content);
    log << "solve: problem=" << p.name << " method=" << to_string(cfg.method) << " N=" << N
        << " nodes=" << t.mesh.size() << " w(b)=" << format_double(t.w.back());
    if (t.y) log << " error(b)=" << format_double(t.w.back() - t.y->back());
    log << '\n';
    return static_cast<int>(kOk);
  });
}

int run_convergence(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    const ODEProblem p = load_problem(cfg);
    try {
      validate_n_list(cfg.Ns);
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
    if (cfg.out.empty()) throw ConfigError("--out is required");
    const ConvergenceStudy study = convergence_study(p, cfg.method, cfg.Ns);

    std::ostringstream os;
    if (cfg.format == Format::CSV) {
      os << "problem,method,N,h,E,observed_order\n";
      for (const auto& row : study.rows) {
        os << p.name << ',' << to_string(cfg.method) << ',' << row.N << ',' << format_double(row.h)
           << ',' << format_double(row.E) << ',';
        if (row.observed_order) os << format_double(*row.observed_order);
        os << '\n';
      }
    } else {
      os << "{\n  \"problem\": \"" << p.name << "\",\n  \"method\": \"" << to_string(cfg.method)
         << "\",\n  \"rows\": [\n";
      for (std::size_t i = 0; i < study.rows.size(); ++i) {
        const auto& row = study.rows[i];
        os << "    {\"N\": " << row.N << ", \"h\": " << format_double(row.h)
           << ", \"E\": " << format_double(row.E) << ", \"observed_order\": "
           << (row.observed_order ? format_double(*row.observed_order) : "null") << '}'
           << (i + 1 < study.rows.size() ? ",\n" : "\n");
      }
      os << "  ],\n  \"mean_order\": " << format_double(study.estimate.mean_order) << "\n}\n";
    }
    write_file(cfg.out, os.str());
    for (const auto& row : study.rows) {
      log << "N=" << row.N << " h=" << format_double(row.h) << " E=" << format_double(row.E);
      if (row.observed_order) log << " order=" << format_double(*row.observed_order);
      log << '\n';
    }
    log << "mean observed order: " << format_double(study.estimate.mean_order) << '\n';
    return static_cast<int>(kOk);
  });
}

int run_decompose(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    const ODEProblem p = load_problem(cfg);
    const std::size_t N = single_n(cfg);
    if (cfg.method != Method::RKGL) throw ConfigError("decompose requires --method rkgl");
    if (cfg.out.empty()) throw ConfigError("--out is required");
    if (!p.exact) throw MissingExactSolution("problem '" + p.name + "' has no exact solution");
    const Analysis a = analyze_rkgl(p, N);
    const DecompositionReport& r = a.report;

    std::string content;
    if (cfg.format == Format::JSON) {
      content = to_json(r);
    } else {
      std::ostringstream os;
      os << "key,value\n"
         << "delta_end," << format_double(r.delta_end) << '\n'
         << "eps_gl_sum," << format_double(r.eps_gl_sum) << '\n'
         << "A_part," << format_double(r.A_part) << '\n'
         << "B_part," << format_double(r.B_part) << '\n'
         << "reconstruction," << format_double(r.reconstruction) << '\n'
         << "residual," << format_double(r.residual) << '\n'
         << "g_reconstruction," << format_double(r.g_reconstruction) << '\n';
      for (std::size_t i = 0; i < r.g_weights.size(); ++i)
        os << "G" << i + 1 << ',' << format_double(r.g_weights[i]) << '\n';
      content = os.str();
    }
    write_file(cfg.out, content);

    const bool pass = r.residual <= 1e-12 * std::max(1.0, std::fabs(r.delta_end));
    log << "decompose: problem=" << p.name << " N=" << N << '\n'
        << "delta_end=" << format_double(r.delta_end) << " eps_gl_sum=" << format_double(r.eps_gl_sum)
        << " A_part=" << format_double(r.A_part) << " B_part=" << format_double(r.B_part) << '\n'
        << "residual = " << format_double(r.residual) << ' ' << (pass ? "PASS" : "FAIL") << '\n';
    return static_cast<int>(kOk);
  });
}

int main(int argc, const char* const* argv, std::ostream& log, std::ostream& err) {
  CLI::App app{"RK3GL2 solver and error-propagation analysis"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string problem, problem_file, method = "rkgl", format;
  std::size_t n = 0;
  std::vector<std::size_t> n_list;

  auto add_common = [&](CLI::App* sub) {
    auto* p = sub->add_option("--problem", problem, "built-in problem name");
    auto* pf = sub->add_option("--problem-file", problem_file, "JSON problem file");
    p->excludes(pf);
    sub->add_option("--method", method, "rkgl or rk3")->check(CLI::IsMember({"rkgl", "rk3"}));
    sub->add_option("--out", cfg.out, "output file")->required();
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };

  auto* solve = app.add_subcommand("solve", "solve a problem and write the trajectory");
  add_common(solve);
  solve->add_option("--N", n, "subintervals (rk3: 3N steps)")->required();

  auto* conv = app.add_subcommand("convergence", "observed-order study over a doubling N-list");
  add_common(conv);
  conv->add_option("--N-list", n_list, "comma-separated doubling sequence")
      ->required()
      ->delimiter(',');

  auto* dec = app.add_subcommand("decompose", "global-error decomposition report");
  add_common(dec);
  dec->add_option("--N", n, "subintervals")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    log << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  if (!problem.empty()) cfg.problem = problem;
  if (!problem_file.empty()) cfg.problem_file = problem_file;
  cfg.method = method == "rk3" ? Method::RK3 : Method::RKGL;

  if (*solve) {
    cfg.Ns = {n};
    cfg.format = format == "json" ? Format::JSON : Format::CSV;
    return run_solve(cfg, log, err);
  }
  if (*conv) {
    cfg.Ns = n_list;
    cfg.format = format == "json" ? Format::JSON : Format::CSV;
    return run_convergence(cfg, log, err);
  }
  cfg.Ns = {n};
  cfg.format = format == "csv" ? Format::CSV : Format::JSON;
  return run_decompose(cfg, log, err);
}

}  // namespace rkgl::cli
