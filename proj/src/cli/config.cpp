#include "relmirror/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <string_view>
#include <variant>

#include "relmirror/error.hpp"
#include "relmirror/problems/generate.hpp"
#include "relmirror/problems/libsvm.hpp"

namespace relmirror::cli {

using nlohmann::json;

namespace {

void require_object(const json& doc, std::string_view where) {
  if (!doc.is_object()) throw InvalidInput(std::string(where) + " must be an object");
}

void check_keys(const json& doc, std::initializer_list<std::string_view> allowed,
                std::string_view where) {
  require_object(doc, where);
  for (const auto& [key, value] : doc.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw InvalidInput("unknown key '" + key + "' in " + std::string(where));
  }
}

double get_number(const json& doc, const char* key, std::string_view where) {
  if (!doc.contains(key)) throw InvalidInput(std::string(where) + "." + key + " is required");
  const json& v = doc.at(key);
  if (!v.is_number()) throw InvalidInput(std::string(where) + "." + key + " must be a number");
  return v.get<double>();
}

double get_positive(const json& doc, const char* key, std::string_view where) {
  const double v = get_number(doc, key, where);
  if (!(v > 0.0) || !std::isfinite(v))
    throw InvalidInput(std::string(where) + "." + key + " must be finite and positive");
  return v;
}

std::uint64_t get_count(const json& doc, const char* key, std::string_view where) {
  const json& v = doc.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    throw InvalidInput(std::string(where) + "." + key + " must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

std::string get_string(const json& doc, const char* key, std::string_view where) {
  const json& v = doc.at(key);
  if (!v.is_string()) throw InvalidInput(std::string(where) + "." + key + " must be a string");
  return v.get<std::string>();
}

std::vector<double> get_number_list(const json& doc, std::string_view where) {
  if (!doc.is_array()) throw InvalidInput(std::string(where) + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : doc) {
    if (!v.is_number()) throw InvalidInput(std::string(where) + " must be an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

SvmGenParams svm_params_from_json(const json& doc) {
  check_keys(doc, {"kind", "n", "m", "lambda", "feature_scale", "label_noise"}, "problem.generate");
  SvmGenParams p;
  if (doc.contains("n")) p.n = get_count(doc, "n", "problem.generate");
  if (doc.contains("m")) p.m = get_count(doc, "m", "problem.generate");
  if (doc.contains("lambda")) p.lambda = get_number(doc, "lambda", "problem.generate");
  if (doc.contains("feature_scale"))
    p.feature_scale = get_number(doc, "feature_scale", "problem.generate");
  if (doc.contains("label_noise")) p.label_noise = get_number(doc, "label_noise", "problem.generate");
  return p;
}

IepGenParams iep_params_from_json(const json& doc) {
  check_keys(doc,
             {"kind", "n", "m", "eig_min", "eig_max", "b_scale", "c_scale", "feasible_point",
              "slack_max"},
             "problem.generate");
  IepGenParams p;
  if (doc.contains("n")) p.n = get_count(doc, "n", "problem.generate");
  if (doc.contains("m")) p.m = get_count(doc, "m", "problem.generate");
  if (doc.contains("eig_min")) p.eig_min = get_number(doc, "eig_min", "problem.generate");
  if (doc.contains("eig_max")) p.eig_max = get_number(doc, "eig_max", "problem.generate");
  if (doc.contains("b_scale")) p.b_scale = get_number(doc, "b_scale", "problem.generate");
  if (doc.contains("c_scale")) p.c_scale = get_number(doc, "c_scale", "problem.generate");
  if (doc.contains("feasible_point") && !doc.at("feasible_point").is_null())
    p.feasible_point = vector_from_json(doc.at("feasible_point"));
  if (doc.contains("slack_max")) p.slack_max = get_number(doc, "slack_max", "problem.generate");
  return p;
}

json svm_params_to_json(const SvmGenParams& p) {
  return {{"kind", "svm"},          {"n", p.n},
          {"m", p.m},               {"lambda", p.lambda},
          {"feature_scale", p.feature_scale}, {"label_noise", p.label_noise}};
}

json iep_params_to_json(const IepGenParams& p) {
  json doc = {{"kind", "iep"},         {"n", p.n},
              {"m", p.m},              {"eig_min", p.eig_min},
              {"eig_max", p.eig_max},  {"b_scale", p.b_scale},
              {"c_scale", p.c_scale},  {"slack_max", p.slack_max}};
  doc["feasible_point"] = p.feasible_point ? vector_to_json(*p.feasible_point) : json(nullptr);
  return doc;
}

ProblemSpec parse_problem(const json& doc) {
  check_keys(doc, {"instance", "file", "libsvm", "lambda", "generate", "seed"}, "problem");
  const int forms = static_cast<int>(doc.contains("instance")) + static_cast<int>(doc.contains("file")) +
                    static_cast<int>(doc.contains("libsvm")) + static_cast<int>(doc.contains("generate"));
  if (forms != 1)
    throw InvalidInput("problem needs exactly one of instance, file, libsvm, generate");
  if (doc.contains("lambda") && !doc.contains("libsvm"))
    throw InvalidInput("problem.lambda only applies to libsvm input");
  if (doc.contains("seed") && !doc.contains("generate"))
    throw InvalidInput("problem.seed only applies to generated instances");

  ProblemSpec spec;
  if (doc.contains("instance")) {
    spec.source = ProblemSpec::Source::Inline;
    spec.instance = doc.at("instance");
    instance_from_json(spec.instance);
  } else if (doc.contains("file")) {
    spec.source = ProblemSpec::Source::File;
    spec.path = get_string(doc, "file", "problem");
  } else if (doc.contains("libsvm")) {
    spec.source = ProblemSpec::Source::Libsvm;
    spec.path = get_string(doc, "libsvm", "problem");
    spec.lambda = get_positive(doc, "lambda", "problem");
  } else {
    spec.source = ProblemSpec::Source::Generate;
    const json& gen = doc.at("generate");
    require_object(gen, "problem.generate");
    if (!gen.contains("kind")) throw InvalidInput("problem.generate.kind is required");
    spec.generate_kind = get_string(gen, "kind", "problem.generate");
    if (spec.generate_kind == "svm")
      spec.generate_params = svm_params_to_json(svm_params_from_json(gen));
    else if (spec.generate_kind == "iep")
      spec.generate_params = iep_params_to_json(iep_params_from_json(gen));
    else
      throw InvalidInput("problem.generate.kind must be svm or iep");
    if (doc.contains("seed")) spec.generate_seed = get_count(doc, "seed", "problem");
  }
  return spec;
}

StepPolicy parse_step(const json& doc) {
  require_object(doc, "step");
  if (!doc.contains("rule")) throw InvalidInput("step.rule is required");
  const std::string rule = get_string(doc, "rule", "step");
  if (rule == "constant") {
    check_keys(doc, {"rule", "t"}, "step");
    return ConstantStep{get_number(doc, "t", "step")};
  }
  if (rule == "eps_over_m2") {
    check_keys(doc, {"rule", "eps", "M"}, "step");
    return EpsOverMSquaredStep{get_number(doc, "eps", "step"), get_number(doc, "M", "step")};
  }
  if (rule == "relative_strong") {
    check_keys(doc, {"rule", "mu"}, "step");
    return RelativeStrongStep{get_number(doc, "mu", "step")};
  }
  throw InvalidInput("step.rule must be constant, eps_over_m2 or relative_strong");
}

json step_to_json(const StepPolicy& policy) {
  return std::visit(
      [](const auto& r) -> json {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, ConstantStep>)
          return {{"rule", "constant"}, {"t", r.t}};
        else if constexpr (std::is_same_v<R, EpsOverMSquaredStep>)
          return {{"rule", "eps_over_m2"}, {"eps", r.eps}, {"M", r.m}};
        else
          return {{"rule", "relative_strong"}, {"mu", r.mu}};
      },
      policy.rule());
}

EpsilonMode parse_epsilon(const json& doc) {
  check_keys(doc, {"eps", "M", "D0", "x_star"}, "epsilon");
  EpsilonMode mode;
  mode.eps = get_positive(doc, "eps", "epsilon");
  mode.m = get_positive(doc, "M", "epsilon");
  if (doc.contains("D0") == doc.contains("x_star"))
    throw InvalidInput("epsilon needs exactly one of D0, x_star");
  if (doc.contains("D0")) {
    mode.d0 = get_number(doc, "D0", "epsilon");
    if (!(*mode.d0 >= 0.0) || !std::isfinite(*mode.d0))
      throw InvalidInput("epsilon.D0 must be finite and nonnegative");
  } else {
    mode.x_star = vector_from_json(doc.at("x_star"));
  }
  return mode;
}

SampleRegion parse_region(const json& doc) {
  require_object(doc, "certify.region");
  const std::string type = doc.contains("type") ? get_string(doc, "type", "certify.region") : "ball";
  if (type == "ball") {
    check_keys(doc, {"type", "radius"}, "certify.region");
    return SampleRegion::ball(doc.contains("radius") ? get_number(doc, "radius", "certify.region") : 10.0);
  }
  if (type == "box") {
    check_keys(doc, {"type", "lo", "hi"}, "certify.region");
    return SampleRegion::box(get_number(doc, "lo", "certify.region"),
                             get_number(doc, "hi", "certify.region"));
  }
  throw InvalidInput("certify.region.type must be ball or box");
}

CertifySettings parse_certify(const json& doc) {
  check_keys(doc, {"checks", "M", "G", "t_values", "samples", "region"}, "certify");
  CertifySettings s;
  if (doc.contains("checks")) {
    const json& checks = doc.at("checks");
    if (!checks.is_array()) throw InvalidInput("certify.checks must be an array of names");
    for (const auto& c : checks) {
      if (!c.is_string()) throw InvalidInput("certify.checks must be an array of names");
      const auto name = c.get<std::string>();
      if (std::find(kCheckNames.begin(), kCheckNames.end(), name) == kCheckNames.end())
        throw InvalidInput("unknown check '" + name + "'");
      s.checks.push_back(name);
    }
  }
  if (doc.contains("M")) s.m = get_positive(doc, "M", "certify");
  if (doc.contains("G")) s.g = get_positive(doc, "G", "certify");
  if (doc.contains("t_values")) {
    s.t_values = get_number_list(doc.at("t_values"), "certify.t_values");
    if (s.t_values.empty()) throw InvalidInput("certify.t_values must not be empty");
    for (double t : s.t_values)
      if (!(t > 0.0) || !std::isfinite(t)) throw InvalidInput("certify.t_values must be positive");
  }
  if (doc.contains("samples")) {
    s.samples = get_count(doc, "samples", "certify");
    if (s.samples == 0) throw InvalidInput("certify.samples must be positive");
  }
  if (doc.contains("region")) s.region = parse_region(doc.at("region"));
  return s;
}

}  // namespace

RunConfig parse_run_config(const json& doc, bool solve_mode) {
  check_keys(doc,
             {"problem", "reference", "x0", "step", "iterations", "epsilon", "seed", "replications",
              "stochastic", "output", "certify"},
             "config");
  if (!doc.contains("problem")) throw InvalidInput("config.problem is required");

  RunConfig cfg;
  cfg.problem = parse_problem(doc.at("problem"));

  if (doc.contains("reference")) {
    const json& ref = doc.at("reference");
    if (ref.is_array()) {
      cfg.reference_coeffs = get_number_list(ref, "reference");
    } else {
      check_keys(ref, {"coeffs", "M"}, "reference");
      if (!ref.contains("coeffs")) throw InvalidInput("reference.coeffs is required");
      cfg.reference_coeffs = get_number_list(ref.at("coeffs"), "reference.coeffs");
      if (ref.contains("M")) cfg.reference_m = get_positive(ref, "M", "reference");
    }
    PolyNormReference(*cfg.reference_coeffs, cfg.reference_m);
  }
  if (doc.contains("x0")) cfg.x0 = vector_from_json(doc.at("x0"));
  if (doc.contains("seed")) cfg.seed = get_count(doc, "seed", "config");
  if (doc.contains("iterations")) cfg.iterations = get_count(doc, "iterations", "config");
  if (doc.contains("epsilon")) cfg.epsilon = parse_epsilon(doc.at("epsilon"));
  if (cfg.iterations && cfg.epsilon)
    throw InvalidInput("iterations and epsilon are mutually exclusive");
  if (solve_mode && !cfg.iterations && !cfg.epsilon)
    throw InvalidInput("one of iterations or epsilon is required");

  if (doc.contains("step")) {
    cfg.step = parse_step(doc.at("step"));
  } else if (cfg.epsilon) {
    cfg.step = StepPolicy(EpsOverMSquaredStep{cfg.epsilon->eps, cfg.epsilon->m});
  } else if (solve_mode) {
    throw InvalidInput("config.step is required without epsilon");
  }

  if (doc.contains("replications")) {
    cfg.replications = get_count(doc, "replications", "config");
    if (cfg.replications == 0) throw InvalidInput("config.replications must be positive");
  }
  if (doc.contains("stochastic")) {
    if (!doc.at("stochastic").is_boolean()) throw InvalidInput("config.stochastic must be a boolean");
    cfg.stochastic = doc.at("stochastic").get<bool>();
  }
  if (cfg.replications > 1 && !cfg.stochastic)
    throw InvalidInput("replications > 1 requires stochastic: true");

  if (doc.contains("output")) {
    const json& out = doc.at("output");
    check_keys(out, {"dir", "prefix", "format"}, "output");
    if (out.contains("dir")) cfg.out_dir = get_string(out, "dir", "output");
    if (out.contains("prefix")) cfg.prefix = get_string(out, "prefix", "output");
    if (out.contains("format")) cfg.format = get_string(out, "format", "output");
  }
  if (cfg.prefix.empty() || cfg.prefix.find('/') != std::string::npos)
    throw InvalidInput("output.prefix must be a nonempty file name");
  if (cfg.format != "csv" && cfg.format != "json")
    throw InvalidInput("output.format must be csv or json");

  if (doc.contains("certify")) cfg.certify = parse_certify(doc.at("certify"));
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path, bool solve_mode) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
  return parse_run_config(doc, solve_mode);
}

json config_to_json(const RunConfig& c) {
  json problem;
  switch (c.problem.source) {
    case ProblemSpec::Source::Inline:
      problem["instance"] = c.problem.instance;
      break;
    case ProblemSpec::Source::File:
      problem["file"] = c.problem.path.string();
      break;
    case ProblemSpec::Source::Libsvm:
      problem["libsvm"] = c.problem.path.string();
      problem["lambda"] = c.problem.lambda;
      break;
    case ProblemSpec::Source::Generate:
      problem["generate"] = c.problem.generate_params;
      problem["seed"] = c.problem.generate_seed.value_or(c.seed);
      break;
  }

  json doc;
  doc["problem"] = problem;
  doc["reference"] = c.reference_coeffs
                         ? json{{"coeffs", *c.reference_coeffs}, {"M", c.reference_m}}
                         : json("instance_default");
  doc["x0"] = c.x0 ? vector_to_json(*c.x0) : json("zeros");
  doc["step"] = c.step ? step_to_json(*c.step) : json(nullptr);
  doc["iterations"] = c.iterations ? json(*c.iterations) : json(nullptr);
  if (c.epsilon) {
    json eps{{"eps", c.epsilon->eps}, {"M", c.epsilon->m}};
    if (c.epsilon->d0) eps["D0"] = *c.epsilon->d0;
    if (c.epsilon->x_star) eps["x_star"] = vector_to_json(*c.epsilon->x_star);
    doc["epsilon"] = eps;
  } else {
    doc["epsilon"] = nullptr;
  }
  doc["seed"] = c.seed;
  doc["replications"] = c.replications;
  doc["stochastic"] = c.stochastic;
  doc["output"] = {{"dir", c.out_dir.string()}, {"prefix", c.prefix}, {"format", c.format}};
  doc["certify"] = {{"checks", c.certify.checks},
                    {"M", c.certify.m ? json(*c.certify.m) : json("reference")},
                    {"G", c.certify.g ? json(*c.certify.g) : json("reference")},
                    {"t_values", c.certify.t_values},
                    {"samples", c.certify.samples},
                    {"region", c.certify.region.to_json()}};
  return doc;
}

Instance resolve_problem(const ProblemSpec& spec, std::uint64_t fallback_seed) {
  switch (spec.source) {
    case ProblemSpec::Source::Inline:
      return instance_from_json(spec.instance);
    case ProblemSpec::Source::File:
      return load_instance(spec.path);
    case ProblemSpec::Source::Libsvm: {
      LabeledData data = read_libsvm_file(spec.path);
      return SvmInstance(std::move(data.features), std::move(data.labels), spec.lambda);
    }
    case ProblemSpec::Source::Generate: {
      const std::uint64_t seed = spec.generate_seed.value_or(fallback_seed);
      if (spec.generate_kind == "svm") return generate_svm(svm_params_from_json(spec.generate_params), seed);
      return generate_iep(iep_params_from_json(spec.generate_params), seed);
    }
  }
  throw InvalidInput("unknown problem source");
}

PolyNormReference resolve_reference(const RunConfig& config, const Instance& instance) {
  if (config.reference_coeffs) return PolyNormReference(*config.reference_coeffs, config.reference_m);
  return std::visit(
      [](const auto& inst) -> PolyNormReference {
        if constexpr (std::is_same_v<std::decay_t<decltype(inst)>, SvmInstance>)
          return svm_reference(inst);
        else
          return iep_reference(inst);
      },
      instance);
}

const Problem& as_problem(const Instance& instance) {
  return std::visit([](const auto& inst) -> const Problem& { return inst; }, instance);
}

Index instance_dimension(const Instance& instance) { return as_problem(instance).dimension(); }

}  // namespace relmirror::cli
