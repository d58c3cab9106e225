// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "relmirror/certify.hpp"
#include "relmirror/geometry.hpp"
#include "relmirror/problems/combinators.hpp"
#include "relmirror/problems/generate.hpp"
#include "relmirror/problems/iep.hpp"
#include "relmirror/problems/svm.hpp"
#include "relmirror/solvers.hpp"
#include "relmirror/subproblem.hpp"
#include "test_support.hpp"

using namespace relmirror;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit;
  std::function<Outcome()> body;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// Shared by criteria 5 and 8.
struct SvmReference {
  std::unique_ptr<SvmInstance> inst;
  Vector x_star;
  double f_star = 0.0;
  double certified_gap = 0.0;
};

const SvmReference& svm_reference_run() {
  static const SvmReference ref = [] {
    SvmReference r;
    r.inst = std::make_unique<SvmInstance>(generate_svm({.n = 20, .m = 5, .lambda = 1.0}, 2024));
    const PolyNormReference h = svm_reference(*r.inst);
    SolverConfig cfg;
    cfg.policy = ConstantStep{1e-3};
    cfg.iterations = 1000000;
    const Trace trace = mirror_descent(*r.inst, h, Vector::Zero(5), cfg);
    r.x_star = trace.x_bar;
    r.f_star = trace.f_bar;
    // D_h(x*, 0) = h(x*) - h(0) is increasing in ||x*||; the radius bound caps it.
    Vector edge = Vector::Zero(5);
    edge[0] = svm_radius_bound(*r.inst);
    const std::vector<double> steps(cfg.iterations + 1, 1e-3);
    r.certified_gap = gap_bound(1.0, steps, h_eval(h, edge) - h_eval(h, Vector::Zero(5)));
    return r;
  }();
  return ref;
}

Outcome subproblem_exactness() {
  Rng rng(101);
  int bad_residual = 0;
  int bad_theta = 0;
  double worst_res = 0.0;
  double worst_theta = 0.0;
  for (int s = 0; s < 10000; ++s) {
    const auto a = relmirror::testing::random_coeffs(6, rng);
    const Index dim = 1 + static_cast<Index>(rng.index(50));
    const Vector c = relmirror::testing::random_vector(dim, std::pow(10.0, rng.uniform(-2.0, 2.0)), rng);
    const PolyNormReference ref(a);
    const LsSolution sol = solve_ls(c, ref);
    const double res = (c + ref.growth(sol.x_new.norm()) * sol.x_new).norm() / (1.0 + c.norm());
    const double oracle = relmirror::testing::bisection_theta(a, c.norm());
    const double dtheta = std::abs(sol.theta - oracle) / std::max(1.0, oracle);
    worst_res = std::max(worst_res, res);
    worst_theta = std::max(worst_theta, dtheta);
    bad_residual += res > 1e-8;
    bad_theta += dtheta > 1e-9;
  }
  return {bad_residual == 0 && bad_theta == 0,
          fmt("10000 inputs, worst residual/(1+|c|)=%.2e, worst theta error=%.2e", worst_res, worst_theta)};
}

Outcome three_point() {
  Rng rng(202);
  int violations = 0;
  double worst = -1e300;
  for (int s = 0; s < 1000; ++s) {
    const PolyNormReference ref(relmirror::testing::random_coeffs(6, rng));
    const Index dim = 1 + static_cast<Index>(rng.index(10));
    const Vector z = relmirror::testing::random_in_ball(dim, 3.0, rng);
    const Vector g = relmirror::testing::random_vector(dim, 2.0, rng);
    const double t = std::pow(10.0, rng.uniform(-2.0, 1.0));
    const Vector zp = mirror_update(z, g, t, ref);
    const double at_zp = t * g.dot(zp) + bregman(ref, zp, z);
    for (int p = 0; p < 100; ++p) {
      const Vector x = relmirror::testing::random_in_ball(dim, 3.0, rng);
      const double shortfall = at_zp + bregman(ref, x, zp) - (t * g.dot(x) + bregman(ref, x, z));
      worst = std::max(worst, shortfall);
      violations += shortfall > 1e-9;
    }
  }
  return {violations == 0, fmt("100000 probes, largest shortfall %.2e, violations %d", worst, violations)};
}

Outcome deterministic_bound() {
  const IepInstance inst = generate_iep({.n = 1, .m = 5}, 303);
  const Quadratic& q = inst.quadratics().front();
  const Vector x_star = q.a.llt().solve(-q.b);
  const double f_star = inst.objective(x_star);
  const PolyNormReference ref = iep_reference(inst);
  const Vector x0 = Vector::Zero(5);
  const double eps = 0.05;
  const double d0 = bregman(ref, x_star, x0);

  SolverConfig cfg;
  cfg.policy = EpsOverMSquaredStep{eps, 1.0};
  cfg.iterations = iep_iteration_budget(inst, x_star, x0, eps);
  cfg.record_trace = true;
  const Trace trace = mirror_descent(inst, ref, x0, cfg);

  std::vector<double> steps;
  int over_bound = 0;
  double min_slack = 1e300;
  for (const TraceRow& row : trace.rows) {
    steps.push_back(row.step);
    const double slack = gap_bound(1.0, steps, d0) + 1e-9 - (row.f_bar - f_star);
    min_slack = std::min(min_slack, slack);
    over_bound += slack < 0.0;
  }
  const double final_gap = trace.f_bar - f_star;
  return {final_gap <= eps && over_bound == 0,
          fmt("k=%zu, f(x_bar)-f*=%.3e <= %.2f, min bound slack %.3e over %zu iterates", cfg.iterations,
              final_gap, eps, min_slack, trace.rows.size())};
}

Outcome feasibility() {
  Rng rng(404);
  const Vector p = relmirror::testing::random_in_ball(3, 1.0, rng);
  IepGenParams params{.n = 5, .m = 3};
  params.feasible_point = p;
  const IepInstance inst = generate_iep(params, 405);
  const Vector x0 = Vector::Zero(3);
  const double eps = 0.05;
  SolverConfig cfg;
  cfg.policy = EpsOverMSquaredStep{eps, 1.0};
  cfg.iterations = iep_iteration_budget(inst, p, x0, eps);
  const Trace trace = mirror_descent(inst, iep_reference(inst), x0, cfg);
  return {inst.objective(p) <= 0.0 && trace.f_best <= eps,
          fmt("f(feasible point)=%.3f, budget k=%zu, min f(x^i)=%.3e, f(x_bar)=%.3e", inst.objective(p),
              cfg.iterations, trace.f_best, trace.f_bar)};
}

Outcome stochastic_bound() {
  const SvmReference& r = svm_reference_run();
  const double eps = 0.1;
  const Vector x0 = Vector::Zero(5);
  SolverConfig cfg;
  cfg.policy = EpsOverMSquaredStep{eps, 1.0};
  cfg.iterations = svm_iteration_budget(*r.inst, r.x_star, x0, eps);
  cfg.seed = 5;
  cfg.replications = 50;
  const auto traces = stochastic_mirror_descent_replicated(*r.inst, svm_reference(*r.inst), x0, cfg);
  double sum = 0.0;
  for (const Trace& t : traces) sum += t.f_bar;
  const double mean = sum / 50.0;
  double ss = 0.0;
  for (const Trace& t : traces) ss += (t.f_bar - mean) * (t.f_bar - mean);
  const double se = std::sqrt(ss / 49.0) / std::sqrt(50.0);
  const double gap = mean - r.f_star;
  // Also against the certified lower estimate of f*.
  const double gap_lo = mean - (r.f_star - r.certified_gap);
  return {gap <= eps + 3.0 * se && gap_lo <= eps + 3.0 * se,
          fmt("f*=%.6f (certified gap %.2e), k=%zu, mean gap %.4e, SE %.2e, vs certified f* %.4e", r.f_star,
              r.certified_gap, cfg.iterations, gap, se, gap_lo)};
}

Outcome strong_rate() {
  const FunctionProblem f(
      5, [](const Vector& x) { return 0.5 * x.squaredNorm(); }, [](const Vector& x) { return x; });
  Rng rng(606);
  Vector x0 = relmirror::testing::random_vector(5, 1.0, rng);
  x0 /= x0.norm();
  SolverConfig cfg;
  cfg.policy = RelativeStrongStep{1.0};
  cfg.iterations = 1000;
  cfg.record_trace = true;
  const Trace trace = mirror_descent(f, PolyNormReference({1.0}), x0, cfg);
  int violations = 0;
  double m_hat = trace.iterates[0].norm();
  double min_slack = 1e300;
  for (std::size_t k = 1; k < trace.rows.size(); ++k) {
    m_hat = std::max(m_hat, trace.iterates[k].norm());
    const double slack = 2.0 * m_hat * m_hat / static_cast<double>(k + 1) - *trace.rows[k].f_hat;
    min_slack = std::min(min_slack, slack);
    violations += slack < 0.0;
  }
  return {violations == 0 && trace.rows.size() == 1001,
          fmt("k=1..1000, violations %d, min slack %.3e", violations, min_slack)};
}

Outcome certification() {
  const SampleRegion ball = SampleRegion::ball(10.0);
  const IepInstance iep = generate_iep({.n = 5, .m = 3}, 707);
  const SvmReference& r = svm_reference_run();
  std::vector<CertificationReport> reports{
      check_relative_continuity(iep, iep_reference(iep), 1.0, ball, 10000, 71),
      check_stochastic_boundedness(*r.inst, svm_reference(*r.inst), 1.0, ball, 10000, 72),
      check_bregman_upper_bounds(BregmanBoundKind::Cubic, 5, ball, 10000, 73),
      check_bregman_upper_bounds(BregmanBoundKind::Quartic, 5, ball, 10000, 74),
      check_bregman_upper_bounds(BregmanBoundKind::Cubic, 1, ball, 10000, 75),
      check_bregman_upper_bounds(BregmanBoundKind::Quartic, 1, ball, 10000, 76),
      check_bregman_lower_bound(iep_reference(iep), 3, ball, 10000, 77),
      check_bregman_lower_bound(svm_reference(*r.inst), 5, ball, 10000, 78)};
  bool pass = true;
  std::string detail;
  for (const auto& rep : reports) {
    pass = pass && rep.pass;
    detail += fmt("%s %.3g/%.3g; ", rep.check.c_str(), rep.worst_ratio, rep.claimed_bound);
  }
  const Vector one = relmirror::testing::vec({1.0});
  const Vector two = relmirror::testing::vec({2.0});
  const Vector zero = relmirror::testing::vec({0.0});
  const double d_cubic = bregman(bregman_bound_reference(BregmanBoundKind::Cubic), two, one);
  const double b_cubic = bregman_upper_bound(BregmanBoundKind::Cubic, two, one);
  const double d_quartic = bregman(bregman_bound_reference(BregmanBoundKind::Quartic), one, zero);
  const double b_quartic = bregman_upper_bound(BregmanBoundKind::Quartic, one, zero);
  const bool equality = std::abs(d_cubic - 4.0 / 3.0) <= 1e-12 && std::abs(b_cubic - 4.0 / 3.0) <= 1e-12 &&
                        std::abs(d_quartic - 0.25) <= 1e-12 && std::abs(b_quartic - 0.25) <= 1e-12 &&
                        d_cubic <= b_cubic * (1.0 + kBoundTolerance) &&
                        d_quartic <= b_quartic * (1.0 + kBoundTolerance);
  detail += fmt("equality cases D=%.17g vs %.17g, D=%.17g vs %.17g", d_cubic, b_cubic, d_quartic, b_quartic);
  return {pass && equality, detail};
}

Outcome radius_bound() {
  const SvmReference& r = svm_reference_run();
  const double bound = svm_radius_bound(*r.inst);
  int f0_mismatch = r.inst->objective(Vector::Zero(5)) == 1.0 ? 0 : 1;
  Rng rng(808);
  for (int s = 0; s < 200; ++s) {
    SvmGenParams p{.n = 1 + rng.index(40),
                   .m = 1 + rng.index(10),
                   .lambda = std::pow(10.0, rng.uniform(-3.0, 2.0)),
                   .feature_scale = std::pow(10.0, rng.uniform(-1.0, 1.0)),
                   .label_noise = rng.uniform(0.0, 0.5)};
    const SvmInstance inst = generate_svm(p, 900 + s);
    f0_mismatch += inst.objective(Vector::Zero(static_cast<Index>(p.m))) != 1.0;
  }
  return {r.x_star.norm() <= bound + 1e-6 && f0_mismatch == 0,
          fmt("|x*|=%.6f <= %.6f + 1e-6, f(0)!=1 on %d of 201 instances", r.x_star.norm(), bound, f0_mismatch)};
}

Outcome combinators() {
  const SampleRegion ball = SampleRegion::ball(10.0);
  auto f1 = std::make_shared<IepInstance>(generate_iep({.n = 4, .m = 3}, 909));
  auto f2 = std::make_shared<IepInstance>(generate_iep({.n = 3, .m = 3, .eig_max = 3.0}, 910));
  const std::vector<PolyNormReference> refs{iep_reference(*f1), iep_reference(*f2)};
  const bool base = check_relative_continuity(*f1, refs[0], 1.0, ball, 10000, 91).pass &&
                    check_relative_continuity(*f2, refs[1], 1.0, ball, 10000, 92).pass;

  const SumProblem sum({f1, f2});
  const PolyNormReference summed = sum_references(refs);
  const auto sum_rep = check_relative_continuity(sum, summed, std::sqrt(2.0), ball, 10000, 93);

  const PolyNormReference same_f = scale_reference(refs[0], 2.0, false);
  const auto mode1 = check_relative_continuity(*f1, same_f, 0.5, ball, 10000, 94);
  const ScaledProblem doubled(f1, 2.0);
  const PolyNormReference scaled_f = scale_reference(refs[0], 2.0, true);
  const auto mode2 = check_relative_continuity(doubled, scaled_f, 1.0, ball, 10000, 95);

  const bool constants = summed.rel_cont_constant() == std::sqrt(2.0) && same_f.rel_cont_constant() == 0.5 &&
                         scaled_f.rel_cont_constant() == 1.0;
  return {base && sum_rep.pass && mode1.pass && mode2.pass && constants,
          fmt("sum M=sqrt2 worst %.3g/2, scale(h) M=1/2 worst %.3g/0.25, scale(f,h) M=1 worst %.3g/1",
              sum_rep.worst_ratio, mode1.worst_ratio, mode2.worst_ratio)};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Outcome reproducibility() {
  const fs::path dir = fs::temp_directory_path() / "relmirror_acceptance_repro";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const nlohmann::json stochastic{
      {"problem", {{"generate", {{"kind", "svm"}, {"n", 20}, {"m", 5}}}}},
      {"stochastic", true},
      {"replications", 4},
      {"seed", 11},
      {"epsilon", {{"eps", 0.1}, {"M", 1.0}, {"D0", 5.0}}}};
  const nlohmann::json deterministic{
      {"problem", {{"generate", {{"kind", "iep"}, {"n", 5}, {"m", 3}}}}},
      {"seed", 12},
      {"step", {{"rule", "relative_strong"}, {"mu", 0.5}}},
      {"iterations", 2000}};
  std::ofstream(dir / "stochastic.json") << stochastic.dump();
  std::ofstream(dir / "deterministic.json") << deterministic.dump();

  int status = 0;
  for (const char* run : {"a", "b"}) {
    for (const char* cfg : {"stochastic", "deterministic"}) {
      const std::string cmd = std::string(RELMIRROR_TOOL_PATH) + " solve --config " +
                              (dir / (std::string(cfg) + ".json")).string() + " --out " +
                              (dir / run / cfg).string() + " > /dev/null";
      status |= std::system(cmd.c_str());
    }
  }
  std::vector<std::string> names{"deterministic/run_trace.csv"};
  for (int r = 0; r < 4; ++r) names.push_back("stochastic/run_trace_r" + std::to_string(r) + ".csv");
  int identical = 0;
  std::size_t bytes = 0;
  for (const auto& name : names) {
    const std::string a = slurp(dir / "a" / name);
    const std::string b = slurp(dir / "b" / name);
    identical += !a.empty() && a == b;
    bytes += a.size();
  }
  fs::remove_all(dir);
  return {status == 0 && identical == static_cast<int>(names.size()),
          fmt("%d of %zu trace files byte-identical (%zu bytes)", identical, names.size(), bytes)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "subproblem exactness", 5.0, subproblem_exactness},
      {2, "three-point property", 10.0, three_point},
      {3, "deterministic bound reproduction", 30.0, deterministic_bound},
      {4, "multi-ellipsoid feasibility", 60.0, feasibility},
      {5, "stochastic bound in expectation", 300.0, stochastic_bound},
      {6, "relative strong convexity rate", 5.0, strong_rate},
      {7, "definition and lemma certification", 30.0, certification},
      {8, "SVM radius bound", 300.0, radius_bound},
      {9, "combinator correctness", 60.0, combinators},
      {10, "reproducibility", 60.0, reproducibility},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.body();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.time_limit;
    const bool pass = outcome.pass && in_time;
    failures += !pass;
    std::printf("%s %2d %s: %s [%.2fs, limit %.0fs]\n", pass ? "PASS" : "FAIL", c.id, c.name,
                outcome.detail.c_str(), secs, c.time_limit);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
