#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sgm/cli.hpp"

namespace {

std::optional<std::string> optional_path(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace sgm::cli;
  CLI::App app{"Spectral and metric geometric means of positive definite matrices"};
  app.require_subcommand(1);

  MeanOptions mean;
  std::string mean_out;
  auto* mean_cmd = app.add_subcommand("mean", "Compute A nat_t B (spectral) or A #_t B (metric)");
  mean_cmd->add_option("--kind", mean.kind, "spectral or metric")
      ->check(CLI::IsMember({"spectral", "metric"}));
  mean_cmd->add_option("--a", mean.a_path, "matrix file for A")->required();
  mean_cmd->add_option("--b", mean.b_path, "matrix file for B")->required();
  mean_cmd->add_option("--t", mean.t, "weight in [0, 1]");
  mean_cmd->add_option("--out", mean_out, "output matrix file (stdout if omitted)");

  std::string config_path;
  std::uint64_t seed = 0;
  int trials = 0;
  std::string dims;
  std::vector<double> t_grid;
  std::vector<double> r_grid;
  std::vector<std::string> s_grid;
  int p_min_exp = 0;
  int limit_trials = 0;
  double spread = 0.0;
  bool force = false;
  std::string verify_out;
  auto* verify_cmd = app.add_subcommand("verify", "Run the randomized verification suite");
  verify_cmd->add_option("--config", config_path, "JSON config file; flags override it");
  auto* seed_opt = verify_cmd->add_option("--seed", seed, "base seed");
  auto* trials_opt = verify_cmd->add_option("--trials", trials, "number of random trials");
  auto* dims_opt = verify_cmd->add_option("--dims", dims, "dimension or range, e.g. 2-6");
  auto* t_opt = verify_cmd->add_option("--t", t_grid, "t grid")->delimiter(',');
  auto* r_opt = verify_cmd->add_option("--r", r_grid, "r grid")->delimiter(',');
  auto* s_opt = verify_cmd->add_option("--s", s_grid, "s grid (numbers or 'bound')")->delimiter(',');
  auto* p_opt = verify_cmd->add_option("--p-min-exp", p_min_exp, "smallest p is 2^-k");
  auto* lt_opt = verify_cmd->add_option("--limit-trials", limit_trials, "trials running limits");
  auto* spread_opt = verify_cmd->add_option("--spread", spread, "eigenvalue spread");
  verify_cmd->add_flag("--force-out-of-range", force, "evaluate s beyond min(1/t, 2)");
  verify_cmd->add_option("--out", verify_out, "output directory (default $SGM_OUTPUT_DIR or .)");

  LimitOptions limit;
  std::string limit_out;
  auto* limit_cmd = app.add_subcommand("limit", "Profile the p -> 0 limits for Hermitian A, B");
  limit_cmd->add_option("--a", limit.a_path, "matrix file for A")->required();
  limit_cmd->add_option("--b", limit.b_path, "matrix file for B")->required();
  limit_cmd->add_option("--t", limit.t, "weight in [0, 1]");
  limit_cmd->add_option("--p-min-exp", limit.p_min_exponent, "smallest p is 2^-k");
  limit_cmd->add_option("--out", limit_out, "output CSV (stdout if omitted)");

  std::string ce_name;
  auto* ce_cmd = app.add_subcommand("counterexample", "Reproduce a published counterexample");
  ce_cmd->add_option("name", ce_name, "remark37 (alias natlog-bound) or loewner")->required();

  SampleOptions sample;
  std::string sample_out;
  auto* sample_cmd = app.add_subcommand("sample", "Draw a random positive definite matrix");
  sample_cmd->add_option("--n", sample.n, "dimension");
  sample_cmd->add_option("--seed", sample.seed, "seed");
  sample_cmd->add_option("--spread", sample.spread, "eigenvalues lie in [1/spread, spread]");
  sample_cmd->add_option("--out", sample_out, "output matrix file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  if (*mean_cmd) {
    mean.out_path = optional_path(mean_out);
    return cmd_mean(mean, std::cout, std::cerr);
  }
  if (*verify_cmd) {
    VerifyOptions opts;
    const int rc = guarded(std::cerr, [&] {
      if (!config_path.empty()) opts.config = load_config_file(config_path);
      auto& c = opts.config;
      if (*seed_opt) c.seed = seed;
      if (*trials_opt) c.trials = trials;
      if (*dims_opt) std::tie(c.dim_min, c.dim_max) = parse_dims(dims);
      if (*t_opt) c.t_grid = t_grid;
      if (*r_opt) c.r_grid = r_grid;
      if (*s_opt) {
        c.s_grid.clear();
        for (const auto& s : s_grid) c.s_grid.push_back(parse_s_value(s));
      }
      if (*p_opt) c.p_min_exponent = p_min_exp;
      if (*lt_opt) c.limit_trials = limit_trials;
      if (*spread_opt) c.spread = spread;
      if (force) c.force_out_of_range = true;
      return kOk;
    });
    if (rc != kOk) return rc;
    opts.out_dir = optional_path(verify_out);
    return cmd_verify(opts, std::cout, std::cerr);
  }
  if (*limit_cmd) {
    limit.out_path = optional_path(limit_out);
    return cmd_limit(limit, std::cout, std::cerr);
  }
  if (*ce_cmd) return cmd_counterexample(ce_name, std::cout, std::cerr);
  sample.out_path = optional_path(sample_out);
  return cmd_sample(sample, std::cout, std::cerr);
}
