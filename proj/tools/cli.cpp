#include "cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <variant>

#include "CLI11.hpp"
#include "mincorr/batch.hpp"
#include "mincorr/betagen.hpp"
#include "mincorr/bounds.hpp"
#include "mincorr/errors.hpp"
#include "mincorr/multigen.hpp"
#include "mincorr/pairgen.hpp"
#include "mincorr/stats.hpp"

namespace mincorr::cli {

using nlohmann::json;

namespace {

std::string join_lines(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += "\n";
    out += s;
  }
  return out;
}

struct ParamSpec {
  const char* name;
  bool integer;
  std::optional<double> fallback;  // nullopt: required
};

const std::vector<ParamSpec>* params_for(const std::string& family) {
  static const std::vector<ParamSpec> none{};
  static const std::vector<ParamSpec> exponential{{"lambda", false, 1.0}};
  static const std::vector<ParamSpec> weibull{{"k", false, std::nullopt}};
  static const std::vector<ParamSpec> erlang{{"n", true, std::nullopt}, {"lambda", false, 1.0}};
  static const std::vector<ParamSpec> beta_pow{{"a", false, std::nullopt}};
  static const std::vector<ParamSpec> beta_int{{"nu1", true, std::nullopt},
                                               {"nu2", true, std::nullopt}};
  static const std::vector<ParamSpec> gaussian{{"mu", false, 0.0}, {"sigma", false, 1.0}};
  if (family == "uniform" || family == "arcsine") return &none;
  if (family == "exponential") return &exponential;
  if (family == "weibull") return &weibull;
  if (family == "erlang") return &erlang;
  if (family == "beta_pow") return &beta_pow;
  if (family == "beta_int") return &beta_int;
  if (family == "gaussian") return &gaussian;
  return nullptr;
}

Marginal build_marginal(const std::string& family, const json& p) {
  if (family == "uniform") return Marginal::uniform01();
  if (family == "arcsine") return Marginal::arcsine();
  if (family == "exponential") return Marginal::exponential(p["lambda"].get<double>());
  if (family == "weibull") return Marginal::weibull(p["k"].get<double>());
  if (family == "erlang") {
    return Marginal::erlang(p["n"].get<int>(), p["lambda"].get<double>());
  }
  if (family == "beta_pow") return Marginal::beta_pow(p["a"].get<double>());
  if (family == "beta_int") return Marginal::beta_int(p["nu1"].get<int>(), p["nu2"].get<int>());
  return Marginal::gaussian(p["mu"].get<double>(), p["sigma"].get<double>());
}

std::optional<std::uint64_t> as_u64(const json& v) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  return std::nullopt;
}

json range_json(const CorrRange& r) {
  return {{"rho_min", r.rho_min},
          {"rho_max", r.rho_max},
          {"method", to_string(r.method)},
          {"abs_error_bound", r.abs_error_bound}};
}

json factors_json(const FactorVector& f) {
  json out = {{"values", f.factors},
              {"n_negative", f.n_negative},
              {"sign_choice", to_string(f.sign_choice)}};
  out["shared_source"] = f.shared_source ? json(*f.shared_source) : json(nullptr);
  return out;
}

bool is_beta_vector(const RunConfig& cfg) {
  return cfg.shape == CorrShape::matrix && cfg.marginal.family() == Family::beta_int &&
         cfg.matrix->dim() == 3;
}

using AnySampler =
    std::variant<PairSampler, EquicorrelatedSampler, FactorSampler, BetaTrivariateSampler>;

struct Plan {
  AnySampler sampler;
  std::string generator;
  json info = json::object();
  std::vector<std::string> warnings;
  std::vector<std::vector<double>> targets;
};

std::string feasibility_reason(const FeasibilityReport& r) {
  std::ostringstream msg;
  if (r.first_failure == "psd") {
    msg << "matrix not positive semi-definite (min eigenvalue " << r.min_eigenvalue << ")";
  } else if (r.first_failure == "factorization") {
    msg << r.factorization_error;
  } else {
    const auto& v = r.violations.front();
    msg << v.kind << " " << v.value << " outside attainable range (bound " << v.bound << ")";
  }
  return msg.str();
}

Plan make_plan(const RunConfig& cfg) {
  const Marginal& f = cfg.marginal;
  switch (cfg.shape) {
    case CorrShape::pair: {
      PairSampler s(f, f, cfg.rho);
      Plan plan{s, "pair", json::object(), {}, {}};
      plan.info["range"] = range_json(s.range());
      plan.info["accept_prob"] = s.accept_prob();
      plan.info["construction"] = s.sum_construction() ? "sum_of_exponentials" : "quantile";
      plan.targets = {{1.0, cfg.rho}, {cfg.rho, 1.0}};
      return plan;
    }
    case CorrShape::equicorrelated: {
      EquicorrelatedSampler s(f, cfg.rho, cfg.dim);
      Plan plan{s, "equicorrelated", json::object(), {}, {}};
      plan.info["pairwise_corr"] = s.pairwise_corr();
      plan.targets.assign(cfg.dim, std::vector<double>(cfg.dim, s.pairwise_corr()));
      for (std::size_t i = 0; i < cfg.dim; ++i) plan.targets[i][i] = 1.0;
      return plan;
    }
    case CorrShape::matrix:
      break;
  }
  const CorrMatrix& m = *cfg.matrix;
  if (is_beta_vector(cfg)) {
    BetaTrivariateSampler s(f.shape_n(), f.shape_n2(), m);
    Plan plan{s, "beta_vector", json::object(), {}, {}};
    plan.info["factors"] = factors_json(s.factors());
    plan.info["accept_probs"] = s.accept_probs();
    plan.info["c_estimates"] = json::array({{{"coupling", "antithetic"},
                                             {"estimate", s.c_estimate().estimate},
                                             {"std_error", s.c_estimate().std_error},
                                             {"draws", s.c_estimate().draws}}});
    if (s.warning()) plan.warnings.push_back(*s.warning());
    plan.targets = m.rows();
    return plan;
  }
  const FeasibilityReport report = feasibility_check(f, m);
  if (!report.feasible) throw FeasibilityError("stop: " + feasibility_reason(report));
  FactorSampler s(f, *report.factors, report.range);
  Plan plan{s, "factor", json::object(), {}, {}};
  plan.info["range"] = range_json(report.range);
  plan.info["factors"] = factors_json(*report.factors);
  plan.info["accept_probs"] = s.accept_probs();
  plan.warnings = report.warnings;
  plan.targets = m.rows();
  return plan;
}

SampleBatch generate(const Plan& plan, std::size_t n, std::uint64_t seed, unsigned threads) {
  return std::visit(
      [&](const auto& s) { return generate_batch(s, n, seed, threads); }, plan.sampler);
}

void append_double(std::string& line, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  line.append(buf, res.ptr);
}

void write_batch(const SampleBatch& batch, const std::string& path, const std::string& format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError({"cannot open output file '" + path + "'"});
  std::string line;
  if (format == "csv") {
    for (std::size_t j = 0; j < batch.dim; ++j) {
      if (j) line += ',';
      line += "x" + std::to_string(j + 1);
    }
    line += '\n';
    out << line;
  }
  for (std::size_t i = 0; i < batch.rows; ++i) {
    line.clear();
    const auto row = batch.row(i);
    if (format == "csv") {
      for (std::size_t j = 0; j < batch.dim; ++j) {
        if (j) line += ',';
        append_double(line, row[j]);
      }
    } else {
      line += '{';
      for (std::size_t j = 0; j < batch.dim; ++j) {
        if (j) line += ',';
        line += "\"x" + std::to_string(j + 1) + "\":";
        append_double(line, row[j]);
      }
      line += '}';
    }
    line += '\n';
    out << line;
  }
  if (!out) throw ConfigError({"failed writing output file '" + path + "'"});
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({"cannot read config file '" + path + "'"});
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    for (const auto& d : e.diagnostics()) err << "config error: " << d << "\n";
    return kConfigError;
  } catch (const FeasibilityError& e) {
    err << e.what() << "\n";
    return kFeasibilityStop;
  } catch (const RangeError& e) {
    err << "stop: " << e.what() << "\n";
    return kFeasibilityStop;
  } catch (const NumericalAccuracyError& e) {
    err << "numerical accuracy failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const ParameterError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  }
}

unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

}  // namespace

ConfigError::ConfigError(std::vector<std::string> diagnostics)
    : std::runtime_error(join_lines(diagnostics)), diagnostics_(std::move(diagnostics)) {}

json RunConfig::to_json() const {
  json out;
  out["marginal"] = marginal_spec;
  switch (shape) {
    case CorrShape::pair:
      out["corr"] = rho;
      break;
    case CorrShape::equicorrelated:
      out["corr"] = {{"dim", dim}, {"rho", rho}};
      break;
    case CorrShape::matrix:
      out["corr"] = {{"matrix", matrix->rows()}};
      break;
  }
  out["n"] = n;
  if (seed) out["seed"] = *seed;
  if (output) out["output"] = *output;
  out["format"] = format;
  return out;
}

std::optional<Marginal> parse_marginal(const json& spec, std::vector<std::string>& diags) {
  const std::size_t before = diags.size();
  if (!spec.is_object()) {
    diags.emplace_back("marginal must be an object with a \"family\" key");
    return std::nullopt;
  }
  if (!spec.contains("family") || !spec["family"].is_string()) {
    diags.emplace_back("marginal.family must be a string");
    return std::nullopt;
  }
  const std::string family = spec["family"].get<std::string>();
  const auto* params = params_for(family);
  if (!params) {
    diags.emplace_back("unknown family '" + family +
                       "' (expected uniform, arcsine, exponential, weibull, erlang, "
                       "beta_pow, beta_int or gaussian)");
    return std::nullopt;
  }
  for (const auto& [key, value] : spec.items()) {
    if (key == "family") continue;
    bool known = false;
    for (const auto& p : *params) known = known || key == p.name;
    if (!known) diags.push_back("marginal." + key + " is not a parameter of " + family);
  }
  json values = json::object();
  for (const auto& p : *params) {
    const std::string where = "marginal." + std::string(p.name);
    if (!spec.contains(p.name)) {
      if (p.fallback) {
        values[p.name] = *p.fallback;
      } else {
        diags.push_back(where + " is required for " + family);
      }
      continue;
    }
    const json& v = spec[p.name];
    if (!v.is_number()) {
      diags.push_back(where + " must be a number");
      continue;
    }
    const double x = v.get<double>();
    if (p.integer) {
      if (!(std::isfinite(x) && x == std::floor(x) && std::abs(x) < 1e9)) {
        diags.push_back(where + " must be an integer");
        continue;
      }
      values[p.name] = static_cast<int>(x);
    } else {
      values[p.name] = x;
    }
  }
  if (diags.size() != before) return std::nullopt;
  try {
    return build_marginal(family, values);
  } catch (const ParameterError& e) {
    diags.push_back(std::string("marginal parameter out of domain: ") + e.what());
    return std::nullopt;
  }
}

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("config is not valid JSON: ") + e.what()});
  }
  if (!doc.is_object()) throw ConfigError({"config must be a JSON object"});

  std::vector<std::string> diags;
  RunConfig cfg;
  static const std::vector<std::string> keys{"marginal", "corr", "n", "seed", "output", "format"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      diags.push_back("unknown key '" + key + "'");
    }
  }

  if (!doc.contains("marginal")) {
    diags.emplace_back("marginal is required");
  } else if (auto m = parse_marginal(doc["marginal"], diags)) {
    cfg.marginal = *m;
    cfg.marginal_spec = {{"family", to_string(m->family())}};
    for (const auto& [key, value] : doc["marginal"].items()) cfg.marginal_spec[key] = value;
    // fill defaults so the echo is self-contained
    for (const auto& p : *params_for(cfg.marginal_spec["family"].get<std::string>())) {
      if (!cfg.marginal_spec.contains(p.name) && p.fallback) cfg.marginal_spec[p.name] = *p.fallback;
    }
  }

  if (!doc.contains("corr")) {
    diags.emplace_back("corr is required");
  } else {
    const json& c = doc["corr"];
    if (c.is_number()) {
      cfg.shape = CorrShape::pair;
      cfg.rho = c.get<double>();
      if (!std::isfinite(cfg.rho) || std::abs(cfg.rho) > 1.0) {
        diags.emplace_back("corr must lie in [-1, 1]");
      }
    } else if (c.is_object() && c.contains("matrix")) {
      cfg.shape = CorrShape::matrix;
      if (c.size() != 1) diags.emplace_back("corr.matrix cannot be combined with other corr keys");
      std::vector<std::vector<double>> rows;
      bool numeric = c["matrix"].is_array();
      if (numeric) {
        for (const auto& r : c["matrix"]) {
          if (!r.is_array()) {
            numeric = false;
            break;
          }
          std::vector<double> row;
          for (const auto& v : r) {
            if (!v.is_number()) numeric = false;
            row.push_back(v.is_number() ? v.get<double>() : 0.0);
          }
          rows.push_back(std::move(row));
        }
      }
      if (!numeric) {
        diags.emplace_back("corr.matrix must be an array of numeric rows");
      } else {
        auto issues = corr_matrix_diagnostics(rows);
        if (issues.empty()) {
          cfg.matrix = CorrMatrix(rows);
          cfg.dim = rows.size();
        }
        for (auto& s : issues) diags.push_back("corr.matrix: " + s);
      }
    } else if (c.is_object() && c.contains("dim") && c.contains("rho")) {
      cfg.shape = CorrShape::equicorrelated;
      if (c.size() != 2) diags.emplace_back("corr accepts only \"dim\" and \"rho\" together");
      const auto dim = as_u64(c["dim"]);
      if (!dim || *dim < 2) {
        diags.emplace_back("corr.dim must be an integer >= 2");
      } else {
        cfg.dim = static_cast<std::size_t>(*dim);
      }
      if (!c["rho"].is_number() || std::abs(c["rho"].get<double>()) > 1.0) {
        diags.emplace_back("corr.rho must be a number in [-1, 1]");
      } else {
        cfg.rho = c["rho"].get<double>();
      }
    } else {
      diags.emplace_back(
          "corr must be a number, {\"dim\": k, \"rho\": r} or {\"matrix\": [[...]]}");
    }
  }

  if (!doc.contains("n")) {
    diags.emplace_back("n is required");
  } else {
    const auto n = as_u64(doc["n"]);
    if (!n || *n < 1) {
      diags.emplace_back("n must be an integer >= 1");
    } else {
      cfg.n = static_cast<std::size_t>(*n);
    }
  }
  if (doc.contains("seed")) {
    cfg.seed = as_u64(doc["seed"]);
    if (!cfg.seed) diags.emplace_back("seed must be a non-negative 64-bit integer");
  }
  if (doc.contains("output")) {
    if (doc["output"].is_string()) {
      cfg.output = doc["output"].get<std::string>();
    } else {
      diags.emplace_back("output must be a string");
    }
  }
  if (doc.contains("format")) {
    if (doc["format"] == "csv" || doc["format"] == "jsonl") {
      cfg.format = doc["format"].get<std::string>();
    } else {
      diags.emplace_back("format must be \"csv\" or \"jsonl\"");
    }
  }
  if (!diags.empty()) throw ConfigError(std::move(diags));
  return cfg;
}

int run_bounds(const json& marginal_spec, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::vector<std::string> diags;
    const auto m = parse_marginal(marginal_spec, diags);
    if (!m) throw ConfigError(diags);
    const CorrRange r = corr_range(*m, *m);
    json doc = range_json(r);
    doc["marginal"] = m->describe();
    out << doc.dump() << "\n";
    return static_cast<int>(kOk);
  });
}

int run_sample(const RunConfig& cfg, const std::optional<std::string>& out_path,
               unsigned threads, std::ostream& log) {
  return guarded(log, [&] {
    std::vector<std::string> diags;
    if (!cfg.seed) diags.emplace_back("seed is required for sample runs");
    const std::optional<std::string> path = out_path ? out_path : cfg.output;
    if (!path) diags.emplace_back("no output path (use --out or the \"output\" key)");
    if (!diags.empty()) throw ConfigError(diags);

    const auto start = std::chrono::steady_clock::now();
    const Plan plan = make_plan(cfg);
    const SampleBatch batch = generate(plan, cfg.n, *cfg.seed, threads);
    write_batch(batch, *path, cfg.format);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    RunConfig echo = cfg;
    echo.output = *path;
    json manifest = {{"version", kVersion},
                     {"config", echo.to_json()},
                     {"generator", plan.generator},
                     {"dim", batch.dim},
                     {"rows", batch.rows},
                     {"block_draws", kBlockDraws},
                     {"details", plan.info},
                     {"warnings", plan.warnings},
                     {"wall_time_s", wall}};
    std::ofstream mf(*path + ".manifest.json", std::ios::trunc);
    mf << manifest.dump(2) << "\n";
    for (const auto& w : plan.warnings) log << "warning: " << w << "\n";
    return static_cast<int>(kOk);
  });
}

int run_validate(const RunConfig& cfg, std::ostream& out) {
  return guarded(std::cerr, [&] {
    json doc;
    bool feasible = true;
    if (cfg.shape == CorrShape::matrix && !is_beta_vector(cfg)) {
      const FeasibilityReport r = feasibility_check(cfg.marginal, *cfg.matrix);
      doc = {{"generator", "factor"},
             {"psd", r.psd},
             {"min_eigenvalue", r.min_eigenvalue},
             {"leading_minors", r.leading_minors},
             {"factorized", r.factorized},
             {"range", range_json(r.range)},
             {"warnings", r.warnings}};
      if (!r.factorization_error.empty()) doc["factorization_error"] = r.factorization_error;
      if (r.factors) doc["factors"] = factors_json(*r.factors);
      doc["violations"] = json::array();
      for (const auto& v : r.violations) {
        doc["violations"].push_back(
            {{"kind", v.kind}, {"i", v.i}, {"j", v.j}, {"value", v.value}, {"bound", v.bound}});
      }
      if (r.region) doc["region"] = to_string(*r.region);
      feasible = r.feasible;
      if (!feasible) {
        doc["first_failure"] = r.first_failure;
        doc["stop"] = feasibility_reason(r);
      }
    } else {
      try {
        const Plan plan = make_plan(cfg);
        doc = plan.info;
        doc["generator"] = plan.generator;
        doc["warnings"] = plan.warnings;
      } catch (const FeasibilityError& e) {
        feasible = false;
        doc["stop"] = e.what();
      } catch (const RangeError& e) {
        feasible = false;
        doc["stop"] = e.what();
        if (cfg.shape == CorrShape::pair) {
          doc["range"] = range_json(corr_range(cfg.marginal, cfg.marginal));
        }
      }
    }
    doc["feasible"] = feasible;
    out << doc.dump(2) << "\n";
    return static_cast<int>(feasible ? kOk : kFeasibilityStop);
  });
}

int run_verify(const RunConfig& cfg, std::size_t draws, unsigned threads, std::ostream& out) {
  return guarded(std::cerr, [&] {
    if (!cfg.seed) throw ConfigError({"seed is required for verify runs"});
    if (draws < 50) throw ConfigError({"--draws must be at least 50"});
    const Plan plan = make_plan(cfg);
    const SampleBatch batch = generate(plan, draws, *cfg.seed, threads);
    json gof = json::array();
    bool pass = true;
    std::vector<std::vector<double>> cols;
    for (std::size_t j = 0; j < batch.dim; ++j) {
      cols.push_back(batch.column(j));
      const GofReport r = ks_test(cols.back(), cfg.marginal, 0.01);
      pass = pass && r.pass;
      gof.push_back({{"coordinate", j + 1},
                     {"statistic", r.statistic},
                     {"n", r.n},
                     {"threshold", r.threshold},
                     {"pass", r.pass}});
    }
    json corr = json::array();
    for (std::size_t i = 0; i < batch.dim; ++i) {
      for (std::size_t j = i + 1; j < batch.dim; ++j) {
        const double emp = pearson_corr(cols[i], cols[j]);
        corr.push_back({{"i", i + 1},
                        {"j", j + 1},
                        {"target", plan.targets[i][j]},
                        {"empirical", emp},
                        {"abs_diff", std::abs(emp - plan.targets[i][j])}});
      }
    }
    json doc = {{"generator", plan.generator},
                {"draws", draws},
                {"seed", *cfg.seed},
                {"alpha", 0.01},
                {"gof", gof},
                {"correlations", corr},
                {"warnings", plan.warnings},
                {"pass", pass}};
    out << doc.dump(2) << "\n";
    return static_cast<int>(pass ? kOk : kVerifyFailed);
  });
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Correlated random variates with prescribed marginals, including extreme "
               "negative correlations"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string family;
  std::optional<double> lambda, k, a, mu, sigma;
  std::optional<int> n_shape, nu1, nu2;
  auto* bounds = app.add_subcommand("bounds", "Attainable correlation range of a marginal pair");
  bounds->add_option("--family", family, "uniform, arcsine, exponential, weibull, erlang, "
                                         "beta_pow, beta_int or gaussian")
      ->required();
  bounds->add_option("--lambda", lambda, "exponential / erlang scale");
  bounds->add_option("--k", k, "weibull shape");
  bounds->add_option("--n", n_shape, "erlang shape");
  bounds->add_option("--a", a, "beta_pow shape");
  bounds->add_option("--nu1", nu1, "beta_int first shape");
  bounds->add_option("--nu2", nu2, "beta_int second shape");
  bounds->add_option("--mu", mu, "gaussian mean");
  bounds->add_option("--sigma", sigma, "gaussian standard deviation");

  std::string config_path;
  std::optional<std::string> out_path;
  std::string manifest_path;
  unsigned threads = default_threads();
  auto* sample = app.add_subcommand("sample", "Generate a batch and write it with a manifest");
  auto* sample_config = sample->add_option("--config", config_path, "JSON run config");
  auto* sample_manifest =
      sample->add_option("--manifest", manifest_path, "replay the config recorded in a manifest");
  sample_config->excludes(sample_manifest);
  sample->add_option("--out", out_path, "output file (overrides \"output\")");
  sample->add_option("--threads", threads, "worker threads; output does not depend on it")
      ->check(CLI::PositiveNumber);

  auto* validate = app.add_subcommand("validate", "Feasibility report for a config");
  validate->add_option("--config", config_path, "JSON run config")->required();

  std::optional<std::size_t> draws;
  auto* verify = app.add_subcommand("verify", "KS and correlation checks on a fresh batch");
  verify->add_option("--config", config_path, "JSON run config")->required();
  verify->add_option("--draws", draws, "number of draws (default: n from config)");
  verify->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kConfigError;
  }

  if (bounds->parsed()) {
    json bounds_spec = json::object();
    bounds_spec["family"] = family;
    if (lambda) bounds_spec["lambda"] = *lambda;
    if (k) bounds_spec["k"] = *k;
    if (n_shape) bounds_spec["n"] = *n_shape;
    if (a) bounds_spec["a"] = *a;
    if (nu1) bounds_spec["nu1"] = *nu1;
    if (nu2) bounds_spec["nu2"] = *nu2;
    if (mu) bounds_spec["mu"] = *mu;
    if (sigma) bounds_spec["sigma"] = *sigma;
    return run_bounds(bounds_spec, std::cout, std::cerr);
  }

  std::string config_text;
  const int loaded = guarded(std::cerr, [&] {
    if (sample->parsed() && !manifest_path.empty()) {
      json manifest;
      try {
        manifest = json::parse(read_file(manifest_path));
      } catch (const json::parse_error& e) {
        throw ConfigError({std::string("manifest is not valid JSON: ") + e.what()});
      }
      if (!manifest.contains("config")) throw ConfigError({"manifest has no \"config\""});
      config_text = manifest["config"].dump();
    } else if (config_path.empty()) {
      throw ConfigError({"--config or --manifest is required"});
    } else {
      config_text = read_file(config_path);
    }
    return 0;
  });
  if (loaded != 0) return loaded;

  RunConfig cfg;
  const int parsed = guarded(std::cerr, [&] {
    cfg = parse_config(config_text);
    return 0;
  });
  if (parsed != 0) return parsed;

  if (sample->parsed()) return run_sample(cfg, out_path, threads, std::cerr);
  if (validate->parsed()) return run_validate(cfg, std::cout);
  return run_verify(cfg, draws.value_or(cfg.n), threads, std::cout);
}

}  // namespace mincorr::cli
