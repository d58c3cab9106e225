#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "relmirror/certify.hpp"
#include "relmirror/problems/instance_io.hpp"
#include "relmirror/solvers.hpp"

namespace relmirror::cli {

// Problem source. Exactly one of the four forms:
//   {"instance": {...}}                          inline instance document
//   {"file": "path.json"}                        instance document on disk
//   {"libsvm": "path", "lambda": 0.5}            LIBSVM data, SVM objective
//   {"generate": {"kind": "iep", ...}, "seed": 3}  generated instance
struct ProblemSpec {
  enum class Source { Inline, File, Libsvm, Generate };

  Source source = Source::Inline;
  nlohmann::json instance;
  std::filesystem::path path;
  double lambda = 1.0;
  std::string generate_kind;
  nlohmann::json generate_params = nlohmann::json::object();
  std::optional<std::uint64_t> generate_seed;
};

// Iteration count derived from iteration_budget(M, D0, eps). D0 is given
// directly or as D_h(x_star, x0).
struct EpsilonMode {
  double eps = 0.0;
  double m = 1.0;
  std::optional<double> d0;
  std::optional<Vector> x_star;
};

struct CertifySettings {
  // Empty selects the defaults for the problem kind.
  std::vector<std::string> checks;
  std::optional<double> m;
  std::optional<double> g;
  std::vector<double> t_values{0.01, 1.0, 100.0};
  std::size_t samples = 10000;
  SampleRegion region = SampleRegion::ball(10.0);
};

struct RunConfig {
  ProblemSpec problem;
  std::optional<std::vector<double>> reference_coeffs;
  double reference_m = 1.0;
  std::optional<Vector> x0;
  std::optional<StepPolicy> step;
  std::optional<std::size_t> iterations;
  std::optional<EpsilonMode> epsilon;
  std::uint64_t seed = 0;
  std::size_t replications = 1;
  bool stochastic = false;
  std::filesystem::path out_dir = ".";
  std::string prefix = "run";
  std::string format = "csv";
  CertifySettings certify;
};

inline const std::vector<std::string> kCheckNames{
    "relative_continuity", "key_property",         "stochastic_boundedness", "unbiasedness",
    "strong_convexity",    "bregman_upper_cubic", "bregman_upper_quartic",  "bregman_lower"};

// Throws InvalidInput on unknown keys, wrong types, or violated invariants.
// solve_mode requires exactly one of iterations / epsilon.
RunConfig parse_run_config(const nlohmann::json& doc, bool solve_mode);
RunConfig load_run_config(const std::filesystem::path& path, bool solve_mode);

// Every field with its effective value.
nlohmann::json config_to_json(const RunConfig& config);

Instance resolve_problem(const ProblemSpec& spec, std::uint64_t fallback_seed);

// Explicit override when present, otherwise the reference constructed for the instance.
PolyNormReference resolve_reference(const RunConfig& config, const Instance& instance);

const Problem& as_problem(const Instance& instance);
Index instance_dimension(const Instance& instance);

}  // namespace relmirror::cli
