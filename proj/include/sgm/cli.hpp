#ifndef SGM_CLI_HPP
#define SGM_CLI_HPP

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sgm/matrix_file.hpp"
#include "sgm/suite.hpp"

// Command implementations behind the sgm tool. Each returns the process exit
// code: 0 when every expectation is met, 1 on a mathematical violation, 2 on
// bad input.
namespace sgm::cli {

inline constexpr int kOk = 0;
inline constexpr int kViolation = 1;
inline constexpr int kInputError = 2;

// ---------------------------------------------------------------------------
// Config parsing

inline SValue parse_s_value(const std::string& text) {
  if (text == "bound") return {true, 0.0};
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return {false, v};
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::ParseError, "s value '" + text + "' is neither a number nor 'bound'");
  }
}

/// "4" or "2-6".
inline std::pair<int, int> parse_dims(const std::string& text) {
  try {
    const auto dash = text.find('-');
    std::size_t used = 0;
    if (dash == std::string::npos) {
      const int d = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {d, d};
    }
    const std::string lo = text.substr(0, dash);
    const std::string hi = text.substr(dash + 1);
    std::size_t used_hi = 0;
    const int a = std::stoi(lo, &used);
    const int b = std::stoi(hi, &used_hi);
    if (used != lo.size() || used_hi != hi.size()) throw std::invalid_argument(text);
    return {a, b};
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::ParseError, "dims '" + text + "' must look like 4 or 2-6");
  }
}

inline json s_value_to_json(const SValue& s) {
  return s.bound ? json("bound") : json(s.value);
}

inline json config_to_json(const SuiteConfig& c) {
  json s = json::array();
  for (const auto& v : c.s_grid) s.push_back(s_value_to_json(v));
  return json{{"seed", c.seed},
              {"trials", c.trials},
              {"dims", {c.dim_min, c.dim_max}},
              {"t", c.t_grid},
              {"r", c.r_grid},
              {"s", s},
              {"p_min_exp", c.p_min_exponent},
              {"limit_trials", c.limit_trials},
              {"pair_trials", c.pair_trials},
              {"spread", c.spread},
              {"slack", c.slack},
              {"limit_threshold", c.limit_threshold},
              {"limit_floor", c.limit_floor},
              {"force_out_of_range", c.force_out_of_range}};
}

/// Overlays the keys present in `j` onto `c`. Unknown keys are rejected.
inline void apply_config_json(SuiteConfig& c, const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "config must be a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "trials") c.trials = v.get<int>();
      else if (key == "dims") {
        if (v.is_string()) {
          std::tie(c.dim_min, c.dim_max) = parse_dims(v.get<std::string>());
        } else if (v.is_number_integer()) {
          c.dim_min = c.dim_max = v.get<int>();
        } else {
          const auto d = v.get<std::vector<int>>();
          if (d.size() != 2) throw Error(ErrorKind::ParseError, "dims must have two entries");
          c.dim_min = d[0];
          c.dim_max = d[1];
        }
      } else if (key == "t") c.t_grid = v.get<std::vector<double>>();
      else if (key == "r") c.r_grid = v.get<std::vector<double>>();
      else if (key == "s") {
        c.s_grid.clear();
        for (const auto& e : v) {
          c.s_grid.push_back(e.is_string() ? parse_s_value(e.get<std::string>())
                                           : SValue{false, e.get<double>()});
        }
      } else if (key == "p_min_exp") c.p_min_exponent = v.get<int>();
      else if (key == "limit_trials") c.limit_trials = v.get<int>();
      else if (key == "pair_trials") c.pair_trials = v.get<int>();
      else if (key == "spread") c.spread = v.get<double>();
      else if (key == "slack") c.slack = v.get<double>();
      else if (key == "limit_threshold") c.limit_threshold = v.get<double>();
      else if (key == "limit_floor") c.limit_floor = v.get<double>();
      else if (key == "force_out_of_range") c.force_out_of_range = v.get<bool>();
      else throw Error(ErrorKind::ParseError, "unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("config: ") + e.what());
  }
}

inline SuiteConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  SuiteConfig c;
  try {
    apply_config_json(c, json::parse(in));
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
  return c;
}

// ---------------------------------------------------------------------------
// Reports

inline json matrices_to_json(const CheckCase& c) {
  json m = json::object();
  for (const auto& nm : c.matrices) m[nm.name] = matrix_to_json(nm.value);
  return m;
}

inline json outcome_to_json(const CheckOutcome& o) {
  json sub = json::array();
  for (const auto& s : o.detail) {
    sub.push_back({{"name", s.name},
                   {"margin", s.margin},
                   {"tolerance", s.tolerance},
                   {"role", s.role == SubRole::claim ? "claim" : "reproduction"},
                   {"passed", s.passed()}});
  }
  json out{{"check_id", o.check_id},
           {"trial", o.trial},
           {"seed", o.seed},
           {"dim", o.dim},
           {"expectation", std::string(to_string(o.expectation))},
           {"verdict", o.verdict},
           {"worst_margin", std::isfinite(o.worst_margin) ? json(o.worst_margin) : json(nullptr)},
           {"sub_checks", std::move(sub)}};
  if (!o.error.empty()) out["error"] = o.error;
  if (o.witness) {
    out["witness"] = {{"matrices", matrices_to_json(*o.witness)}, {"params", o.witness->params}};
  }
  return out;
}

inline json summary_to_json(const SuiteConfig& cfg, const std::vector<CheckOutcome>& outcomes,
                            std::size_t max_failures = 200) {
  const auto s = summarize(outcomes);
  json families = json::object();
  for (const auto& [name, f] : s.families) {
    families[name] = {{"runs", f.runs},
                      {"violations", f.violations},
                      {"hard_violations", f.hard_violations},
                      {"worst_margin", std::isfinite(f.worst_margin) ? json(f.worst_margin)
                                                                     : json(nullptr)}};
  }
  json failures = json::array();
  for (const auto& o : outcomes) {
    if (o.meets_expectation()) continue;
    if (failures.size() >= max_failures) break;
    failures.push_back(outcome_to_json(o));
  }
  json fixed = json::array();
  for (const auto& o : outcomes) {
    if (o.trial < 0) fixed.push_back({{"check_id", o.check_id},
                                      {"expectation", std::string(to_string(o.expectation))},
                                      {"verdict", o.verdict},
                                      {"reproduced", o.reproduced()},
                                      {"meets_expectation", o.meets_expectation()}});
  }
  return json{{"config", config_to_json(cfg)},
              {"status", s.ok() ? "ok" : "violations"},
              {"checks", s.checks},
              {"violations", s.violations},
              {"hard_violations", s.hard_violations},
              {"oracle", {{"comparisons", s.oracle_comparisons},
                          {"disagreements", s.oracle_disagreements}}},
              {"families", std::move(families)},
              {"fixed", std::move(fixed)},
              {"failures", std::move(failures)}};
}

/// --out if given, else $SGM_OUTPUT_DIR, else the working directory.
inline std::filesystem::path output_dir(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return *flag;
  if (const char* env = std::getenv("SGM_OUTPUT_DIR"); env && *env) return env;
  return ".";
}

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    err << "error [" << to_string(e.kind()) << "]: " << e.what() << '\n';
  } catch (const json::exception& e) {
    err << "error [ParseError]: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kInputError;
}

inline void emit_matrix(const Matrix& m, const std::optional<std::string>& path, std::ostream& out) {
  if (path && !path->empty()) {
    write_matrix_file(*path, m);
  } else {
    out << matrix_to_json(m).dump(2) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Commands

struct MeanOptions {
  std::string kind = "spectral";  // spectral | metric
  std::string a_path;
  std::string b_path;
  double t = 0.5;
  std::optional<std::string> out_path;
};

inline int cmd_mean(const MeanOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Weight t(o.t);
    const auto a = read_pd_file(o.a_path);
    const auto b = read_pd_file(o.b_path);
    Matrix m;
    if (o.kind == "spectral") m = spectral_mean(a, b, t).matrix();
    else if (o.kind == "metric") m = metric_mean(a, b, t).matrix();
    else throw Error(ErrorKind::InvalidArgument, "unknown mean kind '" + o.kind + "'");
    emit_matrix(m, o.out_path, out);
    return kOk;
  });
}

struct VerifyOptions {
  SuiteConfig config;
  std::optional<std::string> out_dir;
};

/// Runs the suite and writes report.csv and summary.json.
inline int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  std::vector<CheckOutcome> outcomes;
  std::filesystem::path dir;
  const int rc = guarded(err, [&] {
    o.config.validate();
    dir = output_dir(o.out_dir);
    std::filesystem::create_directories(dir);
    return kOk;
  });
  if (rc != kOk) return rc;
  return guarded(err, [&] {
    outcomes = run_suite(o.config);
    {
      std::ofstream csv(dir / "report.csv");
      if (!csv) throw Error(ErrorKind::InvalidArgument, "cannot write report.csv");
      write_report_csv(csv, outcomes);
    }
    {
      std::ofstream js(dir / "summary.json");
      if (!js) throw Error(ErrorKind::InvalidArgument, "cannot write summary.json");
      js << summary_to_json(o.config, outcomes).dump(2) << '\n';
    }
    const auto s = summarize(outcomes);
    for (const auto& [name, f] : s.families) {
      out << name << ": " << f.runs << " runs, " << f.violations << " violations, worst margin "
          << format_double(f.worst_margin) << '\n';
    }
    out << "checks " << s.checks << ", violations " << s.violations << ", oracle disagreements "
        << s.oracle_disagreements << '\n';
    return s.ok() ? kOk : kViolation;
  });
}

struct LimitOptions {
  std::string a_path;
  std::string b_path;
  double t = 0.5;
  int p_min_exponent = 10;
  std::optional<std::string> out_path;
};

/// CSV profile along p = 1, 1/2, ..., 2^-k. Exit 1 when the descent or the
/// final threshold fails.
inline int cmd_limit(const LimitOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Weight t(o.t);
    if (o.p_min_exponent < 0 || o.p_min_exponent > 30) {
      throw Error(ErrorKind::InvalidArgument, "p exponent must lie in [0, 30]");
    }
    const HermitianMatrix a(read_matrix_file(o.a_path));
    const HermitianMatrix b(read_matrix_file(o.b_path));
    const auto grid = dyadic_grid(o.p_min_exponent);
    const auto rows = limit_profile(a, b, t, grid);
    std::ofstream file;
    if (o.out_path && !o.out_path->empty()) {
      file.open(*o.out_path);
      if (!file) throw Error(ErrorKind::InvalidArgument, "cannot write " + *o.out_path);
    }
    std::ostream& csv = file.is_open() ? static_cast<std::ostream&>(file) : out;
    csv << "p,err_spectral_mean,err_sandwich,trace_spectral,trace_target\n";
    for (const auto& r : rows) {
      csv << format_double(r.p) << ',' << format_double(r.err_spectral_mean) << ','
          << format_double(r.err_sandwich) << ',' << format_double(r.trace_spectral) << ','
          << format_double(r.trace_target) << '\n';
    }
    const auto spectral = check_limit_spectral(a, b, t, grid);
    const auto sandwich = check_limit_sandwich(a, b, t, grid);
    bool ok = true;
    for (const auto* c : {&spectral, &sandwich}) {
      if (c->meets_expectation()) continue;
      ok = false;
      for (const auto& s : c->detail) {
        if (!s.passed()) err << c->check_id << ' ' << s.name << " margin " << s.margin << '\n';
      }
    }
    return ok ? kOk : kViolation;
  });
}

inline const std::vector<std::string>& counterexample_names() {
  static const std::vector<std::string> names{"remark37", "natlog-bound", "loewner"};
  return names;
}

/// Prints the reproduction of a published counterexample; exit 0 when the
/// printed values are matched and the claim fails as published.
inline int cmd_counterexample(const std::string& name, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    CheckOutcome o;
    if (name == "remark37" || name == "natlog-bound") o = check_natlog_counterexample();
    else if (name == "loewner") o = check_spectral_not_monotone();
    else throw Error(ErrorKind::InvalidArgument, "unknown counterexample '" + name +
                                                     "' (known: remark37 or natlog-bound, loewner)");
    json j = outcome_to_json(o);
    j["reproduced"] = o.reproduced();
    j["claim_refuted"] = !o.verdict;
    out << j.dump(2) << '\n';
    return o.meets_expectation() ? kOk : kViolation;
  });
}

struct SampleOptions {
  Index n = 3;
  std::uint64_t seed = 1;
  double spread = 100.0;
  std::optional<std::string> out_path;
};

inline int cmd_sample(const SampleOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    emit_matrix(sample_pd(o.n, o.seed, o.spread).matrix(), o.out_path, out);
    return kOk;
  });
}

}  // namespace sgm::cli

#endif  // SGM_CLI_HPP
