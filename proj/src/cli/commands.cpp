#include "relmirror/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string_view>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "relmirror/certify.hpp"
#include "relmirror/cli/config.hpp"
#include "relmirror/cli/output.hpp"
#include "relmirror/error.hpp"
#include "relmirror/problems/generate.hpp"
#include "relmirror/rng.hpp"
#include "relmirror/subproblem.hpp"

namespace relmirror::cli {

using nlohmann::json;

namespace {

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> format;
};

std::size_t worker_threads() {
  const char* env = std::getenv("RELMIRROR_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  std::size_t n = 0;
  const std::string_view s(env);
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec != std::errc() || end != s.data() + s.size() || n == 0)
    throw InvalidInput("RELMIRROR_THREADS must be a positive integer");
  return n;
}

RunConfig load_config(const CommonOptions& opts, bool solve_mode) {
  RunConfig cfg = load_run_config(opts.config, solve_mode);
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.out) cfg.out_dir = *opts.out;
  if (opts.format) cfg.format = *opts.format;
  return cfg;
}

Vector resolve_x0(const RunConfig& cfg, Index dim) {
  if (!cfg.x0) return Vector::Zero(dim);
  require_dimension(*cfg.x0, dim);
  return *cfg.x0;
}

std::string join(const Vector& v) {
  std::string out;
  for (Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ',';
    out += format_double(v[i]);
  }
  return out;
}

json reference_to_json(const PolyNormReference& ref) {
  return {{"coeffs", ref.growth_coeffs()}, {"M", ref.rel_cont_constant()}};
}

struct Budget {
  std::size_t iterations = 0;
  std::optional<double> d0;
  std::optional<double> m;
};

// Without a reference override and with M = 1, an x_star estimate goes through
// the instance's closed-form budget; otherwise through the generic formula.
Budget resolve_budget(const RunConfig& cfg, const Instance& inst, const PolyNormReference& ref,
                      const Vector& x0) {
  if (cfg.iterations) return {*cfg.iterations, std::nullopt, std::nullopt};
  const EpsilonMode& e = *cfg.epsilon;
  Budget b;
  b.m = e.m;
  if (e.d0) {
    b.d0 = *e.d0;
    b.iterations = iteration_budget(e.m, *e.d0, e.eps);
    return b;
  }
  require_dimension(*e.x_star, x0.size());
  b.d0 = bregman(ref, *e.x_star, x0);
  if (!cfg.reference_coeffs && e.m == 1.0) {
    b.iterations = std::visit(
        [&](const auto& problem) -> std::size_t {
          if constexpr (std::is_same_v<std::decay_t<decltype(problem)>, SvmInstance>)
            return svm_iteration_budget(problem, *e.x_star, x0, e.eps);
          else
            return iep_iteration_budget(problem, *e.x_star, x0, e.eps);
        },
        inst);
  } else {
    b.iterations = iteration_budget(e.m, *b.d0, e.eps);
  }
  return b;
}

json result_to_json(const Trace& trace, const Problem& problem, const Budget& budget) {
  json doc{{"iterations", trace.iterations},
           {"f_bar", trace.f_bar},
           {"f_hat", trace.f_hat ? json(*trace.f_hat) : json(nullptr)},
           {"f_best", trace.f_best},
           {"f_final", problem.objective(trace.final_iterate)},
           {"x_bar", vector_to_json(trace.x_bar)},
           {"x_hat", trace.x_hat.size() > 0 ? vector_to_json(trace.x_hat) : json(nullptr)},
           {"final_iterate", vector_to_json(trace.final_iterate)},
           {"sum_steps", trace.sum_steps},
           {"sum_steps_sq", trace.sum_steps_sq}};
  if (budget.m && budget.d0) {
    doc["gap_bound"] = (budget.m.value() * budget.m.value() / 2.0 * trace.sum_steps_sq + *budget.d0) /
                       trace.sum_steps;
  }
  return doc;
}

int cmd_solve(const CommonOptions& opts, std::ostream& out) {
  const RunConfig cfg = load_config(opts, true);
  const Instance inst = resolve_problem(cfg.problem, cfg.seed);
  const Problem& problem = as_problem(inst);
  const PolyNormReference ref = resolve_reference(cfg, inst);
  const Vector x0 = resolve_x0(cfg, problem.dimension());
  const Budget budget = resolve_budget(cfg, inst, ref, x0);

  SolverConfig sc;
  sc.policy = *cfg.step;
  sc.iterations = budget.iterations;
  sc.seed = cfg.seed;
  sc.replications = cfg.replications;
  sc.record_trace = true;

  const auto start = std::chrono::steady_clock::now();
  std::vector<Trace> traces;
  if (cfg.stochastic) {
    const auto* svm = std::get_if<SvmInstance>(&inst);
    if (svm == nullptr) throw InvalidInput("stochastic runs need an SVM problem");
    if (cfg.replications == 1)
      traces.push_back(stochastic_mirror_descent(*svm, ref, x0, sc));
    else
      traces = stochastic_mirror_descent_replicated(*svm, ref, x0, sc, worker_threads());
  } else {
    traces.push_back(mirror_descent(problem, ref, x0, sc));
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::string ext = cfg.format == "csv" ? ".csv" : ".json";
  std::vector<std::pair<std::filesystem::path, std::string>> files;
  for (std::size_t r = 0; r < traces.size(); ++r) {
    const std::string name =
        traces.size() == 1 ? cfg.prefix + "_trace" + ext : cfg.prefix + "_trace_r" + std::to_string(r) + ext;
    files.emplace_back(cfg.out_dir / name, cfg.format == "csv" ? trace_to_csv(traces[r])
                                                               : trace_to_json(traces[r]).dump(1) + "\n");
  }

  json summary{{"command", "solve"},
               {"config", config_to_json(cfg)},
               {"seed", cfg.seed},
               {"reference", reference_to_json(ref)},
               {"x0", vector_to_json(x0)},
               {"iterations", budget.iterations},
               {"wall_time_seconds", wall}};
  if (budget.d0) summary["D0"] = *budget.d0;
  if (traces.size() == 1) {
    summary["trace_file"] = files[0].first.filename().string();
    summary["result"] = result_to_json(traces[0], problem, budget);
  } else {
    json reps = json::array();
    double sum = 0.0;
    double lo = traces[0].f_bar;
    double hi = traces[0].f_bar;
    for (std::size_t r = 0; r < traces.size(); ++r) {
      json rep = result_to_json(traces[r], problem, budget);
      rep["replication"] = r;
      rep["seed"] = mix_seed(cfg.seed, r);
      rep["trace_file"] = files[r].first.filename().string();
      reps.push_back(std::move(rep));
      sum += traces[r].f_bar;
      lo = std::min(lo, traces[r].f_bar);
      hi = std::max(hi, traces[r].f_bar);
    }
    const double n = static_cast<double>(traces.size());
    const double mean = sum / n;
    double ss = 0.0;
    for (const Trace& t : traces) ss += (t.f_bar - mean) * (t.f_bar - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    summary["replications"] = reps;
    summary["aggregate"] = {{"count", traces.size()},
                            {"mean_f_bar", mean},
                            {"std_f_bar", sd},
                            {"std_error_f_bar", sd / std::sqrt(n)},
                            {"min_f_bar", lo},
                            {"max_f_bar", hi}};
  }

  std::filesystem::create_directories(cfg.out_dir);
  for (const auto& [path, content] : files) write_file_atomic(path, content);
  const auto summary_path = cfg.out_dir / (cfg.prefix + "_summary.json");
  write_file_atomic(summary_path, summary.dump(2) + "\n");
  out << "iterations " << budget.iterations << '\n';
  if (traces.size() == 1) out << "f_bar " << format_double(traces[0].f_bar) << '\n';
  out << "summary " << summary_path.string() << '\n';
  return kExitOk;
}

std::vector<std::string> default_checks(const Instance& inst) {
  if (std::holds_alternative<SvmInstance>(inst))
    return {"relative_continuity", "stochastic_boundedness", "unbiasedness"};
  return {"relative_continuity", "key_property"};
}

int cmd_certify(const CommonOptions& opts, std::ostream& out) {
  const RunConfig cfg = load_config(opts, false);
  const Instance inst = resolve_problem(cfg.problem, cfg.seed);
  const Problem& problem = as_problem(inst);
  const PolyNormReference ref = resolve_reference(cfg, inst);
  const CertifySettings& s = cfg.certify;
  const std::vector<std::string> checks = s.checks.empty() ? default_checks(inst) : s.checks;
  const double m = s.m.value_or(ref.rel_cont_constant());
  const double g = s.g.value_or(ref.rel_cont_constant());
  const auto* svm = std::get_if<SvmInstance>(&inst);
  for (const auto& name : checks) {
    if ((name == "stochastic_boundedness" || name == "unbiasedness") && svm == nullptr)
      throw InvalidInput(name + " needs a stochastic (SVM) problem");
  }

  json reports = json::array();
  bool all_pass = true;
  for (const auto& name : checks) {
    std::optional<CertificationReport> report;
    if (name == "relative_continuity") {
      report = check_relative_continuity(problem, ref, m, s.region, s.samples, cfg.seed);
    } else if (name == "key_property") {
      report = check_key_property(problem, ref, m, s.t_values, s.region, s.samples, cfg.seed);
    } else if (name == "stochastic_boundedness") {
      report = check_stochastic_boundedness(*svm, ref, g, s.region, s.samples, cfg.seed);
    } else if (name == "unbiasedness") {
      report = check_unbiasedness(*svm, s.region, s.samples, cfg.seed);
    } else if (name == "bregman_upper_cubic") {
      report = check_bregman_upper_bounds(BregmanBoundKind::Cubic, problem.dimension(), s.region,
                                          s.samples, cfg.seed);
    } else if (name == "bregman_upper_quartic") {
      report = check_bregman_upper_bounds(BregmanBoundKind::Quartic, problem.dimension(), s.region,
                                          s.samples, cfg.seed);
    } else if (name == "bregman_lower") {
      report = check_bregman_lower_bound(ref, problem.dimension(), s.region, s.samples, cfg.seed);
    } else {
      const double mu =
          estimate_relative_strong_convexity(problem, ref, s.region, s.samples, cfg.seed);
      reports.push_back({{"check", "strong_convexity"},
                         {"region", s.region.to_json()},
                         {"seed", cfg.seed},
                         {"samples", s.samples},
                         {"estimate", mu},
                         {"pass", true}});
      out << "strong_convexity estimate=" << format_double(mu) << '\n';
      continue;
    }
    all_pass = all_pass && report->pass;
    reports.push_back(report->to_json());
    out << name << ' ' << (report->pass ? "PASS" : "FAIL")
        << " worst_ratio=" << format_double(report->worst_ratio)
        << " bound=" << format_double(report->claimed_bound) << '\n';
  }

  const json doc{{"command", "certify"},
                 {"config", config_to_json(cfg)},
                 {"reference", reference_to_json(ref)},
                 {"M", m},
                 {"G", g},
                 {"pass", all_pass},
                 {"reports", reports}};
  std::filesystem::create_directories(cfg.out_dir);
  write_file_atomic(cfg.out_dir / (cfg.prefix + "_certify.json"), doc.dump(2) + "\n");
  return all_pass ? kExitOk : kExitCheckFailed;
}

struct BudgetOptions {
  std::string config;
  std::optional<double> m;
  std::optional<double> d0;
  std::optional<double> eps;
  std::optional<double> sigma;
  std::optional<double> rho;
  std::optional<double> gamma;
  std::vector<double> x0;
  std::vector<double> x_star;
};

int cmd_budget(const BudgetOptions& b, std::ostream& out) {
  std::size_t k = 0;
  if (!b.config.empty()) {
    const RunConfig cfg = load_run_config(b.config, false);
    if (!cfg.epsilon) throw InvalidInput("budget needs an epsilon section in the config");
    const Instance inst = resolve_problem(cfg.problem, cfg.seed);
    const PolyNormReference ref = resolve_reference(cfg, inst);
    k = resolve_budget(cfg, inst, ref, resolve_x0(cfg, instance_dimension(inst))).iterations;
  } else if (b.sigma || b.rho || b.gamma) {
    if (!b.eps || b.x_star.empty()) throw InvalidInput("IEP budget needs --eps and --x-star");
    const IepConstants c{b.sigma.value_or(0.0), b.rho.value_or(0.0), b.gamma.value_or(0.0)};
    const Vector x_star = to_vector(b.x_star);
    const Vector x0 = b.x0.empty() ? Vector(Vector::Zero(x_star.size())) : to_vector(b.x0);
    k = iep_iteration_budget(c, x_star, x0, *b.eps);
  } else {
    if (!b.m || !b.d0 || !b.eps) throw InvalidInput("budget needs --M, --D0 and --eps");
    k = iteration_budget(*b.m, *b.d0, *b.eps);
  }
  out << k << '\n';
  return kExitOk;
}

int cmd_subproblem(const std::vector<double>& coeffs, const std::vector<double>& c,
                   const std::string& format, std::ostream& out) {
  const PolyNormReference ref(coeffs);
  const LsSolution sol = solve_ls(to_vector(c), ref);
  if (format == "json") {
    out << json{{"theta", sol.theta}, {"x_new", vector_to_json(sol.x_new)}, {"residual", sol.residual}}
               .dump(2)
        << '\n';
  } else {
    out << "theta " << format_double(sol.theta) << '\n'
        << "x_new " << join(sol.x_new) << '\n'
        << "residual " << format_double(sol.residual) << '\n';
  }
  return kExitOk;
}

struct GenOptions {
  std::string kind;
  std::uint64_t seed = 0;
  std::optional<std::string> out;
  std::string name = "instance";
  SvmGenParams svm;
  IepGenParams iep;
  std::vector<double> feasible_point;
};

int cmd_gen(GenOptions g, std::ostream& out) {
  json doc;
  if (g.kind == "svm") {
    doc = instance_to_json(generate_svm(g.svm, g.seed));
  } else {
    if (!g.feasible_point.empty()) g.iep.feasible_point = to_vector(g.feasible_point);
    doc = instance_to_json(generate_iep(g.iep, g.seed));
  }
  if (!g.out) {
    out << doc.dump(2) << '\n';
    return kExitOk;
  }
  std::filesystem::create_directories(*g.out);
  const auto path = std::filesystem::path(*g.out) / (g.name + ".json");
  write_file_atomic(path, doc.dump(2) + "\n");
  out << path.string() << '\n';
  return kExitOk;
}

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config, "Run configuration (JSON)")->required();
  cmd->add_option("--seed", opts.seed, "Override the configured seed");
  cmd->add_option("--out", opts.out, "Output directory");
  cmd->add_option("--format", opts.format, "Trace format")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mirror descent under relative continuity", "relmirror"};
  app.require_subcommand(1);

  CommonOptions solve_opts;
  auto* solve = app.add_subcommand("solve", "Run (stochastic) mirror descent and write traces");
  add_common(solve, solve_opts);

  CommonOptions certify_opts;
  auto* certify = app.add_subcommand("certify", "Sample-check continuity certificates");
  add_common(certify, certify_opts);

  BudgetOptions budget_opts;
  auto* budget = app.add_subcommand("budget", "Print the iteration budget for a target accuracy");
  budget->add_option("--config", budget_opts.config, "Configuration with an epsilon section");
  budget->add_option("--M,--G", budget_opts.m, "Relative continuity constant");
  budget->add_option("--D0", budget_opts.d0, "Bregman distance estimate D_h(x*, x0)");
  budget->add_option("--eps", budget_opts.eps, "Target accuracy");
  budget->add_option("--sigma", budget_opts.sigma, "IEP constant sigma");
  budget->add_option("--rho", budget_opts.rho, "IEP constant rho");
  budget->add_option("--gamma", budget_opts.gamma, "IEP constant gamma");
  budget->add_option("--x0", budget_opts.x0, "Starting point")->delimiter(',');
  budget->add_option("--x-star", budget_opts.x_star, "Minimizer estimate")->delimiter(',');

  std::vector<double> sub_coeffs;
  std::vector<double> sub_c;
  std::string sub_format = "text";
  auto* sub = app.add_subcommand("subproblem", "Solve min <c, x> + h(x)");
  sub->add_option("--coeffs", sub_coeffs, "Growth coefficients a_0..a_r")->delimiter(',')->required();
  sub->add_option("--c", sub_c, "Linear term")->delimiter(',')->required();
  sub->add_option("--format", sub_format, "Output format")->check(CLI::IsMember({"text", "json"}));

  GenOptions gen_opts;
  auto* gen = app.add_subcommand("gen", "Generate a problem instance");
  gen->add_option("--kind", gen_opts.kind, "svm or iep")->required()->check(CLI::IsMember({"svm", "iep"}));
  gen->add_option("--seed", gen_opts.seed, "Generator seed");
  gen->add_option("--out", gen_opts.out, "Output directory (stdout when omitted)");
  gen->add_option("--name", gen_opts.name, "Output file stem");
  gen->add_option("--n", [&](const CLI::results_t& r) {
    gen_opts.svm.n = gen_opts.iep.n = std::stoull(r[0]);
    return true;
  }, "Samples (svm) or pieces (iep)");
  gen->add_option("--m", [&](const CLI::results_t& r) {
    gen_opts.svm.m = gen_opts.iep.m = std::stoull(r[0]);
    return true;
  }, "Dimension");
  gen->add_option("--lambda", gen_opts.svm.lambda, "Regularization weight");
  gen->add_option("--feature-scale", gen_opts.svm.feature_scale, "Feature standard deviation");
  gen->add_option("--label-noise", gen_opts.svm.label_noise, "Label flip probability");
  gen->add_option("--eig-min", gen_opts.iep.eig_min, "Smallest eigenvalue of A_i");
  gen->add_option("--eig-max", gen_opts.iep.eig_max, "Largest eigenvalue of A_i");
  gen->add_option("--b-scale", gen_opts.iep.b_scale, "Scale of b_i");
  gen->add_option("--c-scale", gen_opts.iep.c_scale, "Scale of c_i");
  gen->add_option("--feasible-point", gen_opts.feasible_point, "Point made feasible")->delimiter(',');
  gen->add_option("--slack-max", gen_opts.iep.slack_max, "Largest feasibility slack");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }

  try {
    if (*solve) return cmd_solve(solve_opts, out);
    if (*certify) return cmd_certify(certify_opts, out);
    if (*budget) return cmd_budget(budget_opts, out);
    if (*sub) return cmd_subproblem(sub_coeffs, sub_c, sub_format, out);
    return cmd_gen(gen_opts, out);
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumericalFailure;
  } catch (const ReferenceDegeneracy& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumericalFailure;
  } catch (const InvalidInput& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const nlohmann::json::exception& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumericalFailure;
  }
}

}  // namespace relmirror::cli
