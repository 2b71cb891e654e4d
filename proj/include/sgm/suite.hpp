#ifndef SGM_SUITE_HPP
#define SGM_SUITE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "sgm/checks.hpp"

namespace sgm {

/// An s-grid entry: either a fixed value or the per-t bound min(1/t, 2).
struct SValue {
  bool bound = false;
  double value = 0.0;

  double resolve(double t) const { return bound ? natlog_s_bound(t) : value; }
  friend bool operator==(const SValue&, const SValue&) = default;
};

struct SuiteConfig {
  std::uint64_t seed = 1;
  int trials = 500;
  int dim_min = 2;
  int dim_max = 6;
  std::vector<double> t_grid{0.0, 0.25, 1.0 / 3.0, 0.5, 0.75, 1.0};
  std::vector<double> r_grid{0.3, 1.0, 2.0, 3.0};
  std::vector<SValue> s_grid{{false, 0.5}, {false, 1.0}, {true, 0.0}};
  int p_min_exponent = 10;
  int limit_trials = 50;  // trials that also run the p -> 0 studies
  int pair_trials = 200;  // trials that also run Fiedler-Ptak and det/homogeneity
  double spread = 100.0;
  double slack = default_slack;
  double limit_threshold = 1e-2;
  double limit_floor = 1e-8;
  bool force_out_of_range = false;

  void validate() const {
    auto fail = [](const std::string& m) { throw Error(ErrorKind::InvalidArgument, m); };
    if (trials < 0) fail("trials must be >= 0");
    if (limit_trials < 0 || pair_trials < 0) fail("trial counts must be >= 0");
    if (dim_min < 1 || dim_max < dim_min || dim_max > 64) fail("dims must satisfy 1 <= min <= max <= 64");
    if (t_grid.empty()) fail("t grid is empty");
    for (double t : t_grid) {
      if (!(t >= 0.0 && t <= 1.0)) fail("t grid entries must lie in [0, 1]");
    }
    for (double r : r_grid) {
      if (!(r > 0.0) || !std::isfinite(r)) fail("r grid entries must be positive");
    }
    for (const auto& s : s_grid) {
      if (s.bound) continue;
      if (!(s.value > 0.0) || !std::isfinite(s.value)) fail("s grid entries must be positive");
      for (double t : t_grid) {
        if (s.value > natlog_s_bound(t) * (1.0 + 1e-12) && !force_out_of_range) {
          fail("s = " + format_param(s.value) + " exceeds min(1/t, 2) at t = " + format_param(t) +
               " (use --force-out-of-range)");
        }
      }
    }
    if (p_min_exponent < 0 || p_min_exponent > 30) fail("p exponent must lie in [0, 30]");
    if (!(spread >= 1.0) || !std::isfinite(spread)) fail("spread must be >= 1");
    if (!(slack > 0.0)) fail("slack must be positive");
  }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
  std::uint64_t h = splitmix64(base);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  return splitmix64(h ^ c);
}

/// Spread used when a check raises its sampled inputs to exponents up to e:
/// every matrix the check forms keeps its condition number within spread^2.
inline double conditioned_spread(double spread, double exponent) {
  return std::pow(spread, 1.0 / std::max(1.0, exponent));
}

/// Exponents in (0, 1] drawn from the r and fixed-s grids.
inline std::vector<double> unit_exponents(const SuiteConfig& cfg) {
  std::vector<double> out;
  auto add = [&](double v) {
    if (v > 0.0 && v <= 1.0 && std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };
  for (double r : cfg.r_grid) add(r);
  for (const auto& s : cfg.s_grid) {
    if (!s.bound) add(s.value);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Salts that keep each check family on its own random stream.
enum Salt : std::uint64_t {
  kDim = 1,
  kBase,
  kPower,
  kNatlog,
  kLoewner,
  kHeinz,
  kLambda1,
  kLimit,
  kInterp,
};

}  // namespace detail

/// Runs one check, turning library errors into a failed outcome.
inline CheckOutcome guarded_check(const std::string& id, long trial, std::uint64_t seed,
                                  const std::function<CheckOutcome()>& fn) {
  CheckOutcome out;
  try {
    out = fn();
  } catch (const std::exception& e) {
    out = CheckOutcome{};
    out.check_id = id;
    out.error = e.what();
    out.verdict = false;
    out.worst_margin = -std::numeric_limits<double>::infinity();
  }
  out.trial = trial;
  out.seed = seed;
  return out;
}

/// Fixed-input checks: the published counterexamples and a few exact cases.
inline std::vector<CheckOutcome> fixed_checks(const SuiteConfig& cfg) {
  std::vector<CheckOutcome> out;
  auto run = [&](const std::string& id, const std::function<CheckOutcome()>& fn) {
    auto o = guarded_check(id, -1, 0, fn);
    if (o.error.empty()) o.check_id = id;
    out.push_back(std::move(o));
  };
  run("counterexample.natlog_bound", [] { return check_natlog_counterexample(); });
  run("counterexample.spectral_not_monotone", [] { return check_spectral_not_monotone(); });

  Matrix da = Matrix::Zero(3, 3);
  da.diagonal() << 1.0, 4.0, 9.0;
  Matrix db = Matrix::Zero(3, 3);
  db.diagonal() << 8.0, 2.0, 0.5;
  const PositiveDefiniteMatrix a(da);
  const PositiveDefiniteMatrix b(db);
  const double slack = cfg.slack;
  run("fixed.chain.equal_inputs", [&] { return check_chain(a, a, Weight(0.4), slack); });
  run("fixed.chain.commuting", [&] { return check_chain(a, b, Weight(0.4), slack); });
  run("fixed.natlog.commuting", [&] { return check_natlog(a, b, Weight(0.3), 1.0, false, slack); });
  run("fixed.spectral_power.commuting",
      [&] { return check_spectral_power(a, b, Weight(0.5), 2.0, 1.0, 2.0, slack); });
  run("fixed.similarity.equal_inputs", [&] { return check_similarity(a, a, Weight(0.3), slack); });
  const HermitianMatrix h(Matrix(da.cwiseSqrt() / 3.0));
  run("fixed.limit_spectral.equal_inputs", [&] {
    return check_limit_spectral(h, h, Weight(0.5), dyadic_grid(cfg.p_min_exponent),
                                {cfg.limit_threshold, cfg.limit_floor}, slack);
  });
  return out;
}

/// Executes every check over the fixed inputs and the randomized ensemble.
/// Deterministic in `cfg`; outcomes are sorted by (check_id, trial).
inline std::vector<CheckOutcome> run_suite(const SuiteConfig& cfg) {
  using namespace detail;
  cfg.validate();
  std::vector<CheckOutcome> out = fixed_checks(cfg);
  const auto grid = dyadic_grid(cfg.p_min_exponent);
  const auto unit_exps = unit_exponents(cfg);
  const double slack = cfg.slack;
  const LimitSettings limits{cfg.limit_threshold, cfg.limit_floor};

  for (int trial = 0; trial < cfg.trials; ++trial) {
    const auto tr = static_cast<std::uint64_t>(trial);
    const std::uint64_t trial_seed = derive_seed(cfg.seed, tr);
    const Index n = cfg.dim_min + static_cast<Index>(derive_seed(cfg.seed, tr, kDim) %
                                                     static_cast<std::uint64_t>(cfg.dim_max - cfg.dim_min + 1));
    auto pd = [&](double spread, std::uint64_t salt, std::uint64_t k) {
      return sample_pd(n, derive_seed(trial_seed, salt, k), spread);
    };
    auto run = [&](const std::string& id, const std::function<CheckOutcome()>& fn) {
      out.push_back(guarded_check(id, trial, trial_seed, fn));
    };

    const auto a = pd(cfg.spread, kBase, 0);
    const auto b = pd(cfg.spread, kBase, 1);
    std::mt19937_64 interp(derive_seed(trial_seed, kInterp));
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    if (trial < cfg.pair_trials) {
      run("fiedler_ptak", [&] { return check_fiedler_ptak(a, b); });
    }

    for (std::size_t ti = 0; ti < cfg.t_grid.size(); ++ti) {
      const double tv = cfg.t_grid[ti];
      const Weight t(tv);
      const double r_mix = unit(interp);
      const double s_mix = unit(interp);
      run(make_check_id("identities", {{"t", tv}}),
          [&] { return check_identities(a, b, t, Weight(r_mix), Weight(s_mix), slack); });
      run(make_check_id("similarity", {{"t", tv}}), [&] { return check_similarity(a, b, t, slack); });
      run(make_check_id("chain", {{"t", tv}}), [&] { return check_chain(a, b, t, slack); });
      if (trial < cfg.pair_trials) {
        run(make_check_id("det_homogeneity", {{"t", tv}}),
            [&] { return check_det_homogeneity(a, b, t); });
      }

      for (std::size_t ri = 0; ri < cfg.r_grid.size(); ++ri) {
        const double r = cfg.r_grid[ri];
        const double q = r < 1.0 ? r : (r > 1.0 ? 1.0 : 0.5);
        const double p = r < 1.0 ? 1.0 : r;
        const double spread = conditioned_spread(cfg.spread, std::max(r, p));
        const auto ar = pd(spread, kPower, 4 * (ti * 64 + ri));
        const auto br = pd(spread, kPower, 4 * (ti * 64 + ri) + 1);
        run(make_check_id("geometric_power", {{"t", tv}, {"r", r}}),
            [&] { return check_geometric_power(ar, br, t, r, q, p, slack); });
        run(make_check_id("spectral_power", {{"t", tv}, {"r", r}}),
            [&] { return check_spectral_power(ar, br, t, r, q, p, slack); });
      }

      for (std::size_t si = 0; si < cfg.s_grid.size(); ++si) {
        const double s = cfg.s_grid[si].resolve(tv);
        const double exponent = std::max({1.0, tv * s, (1.0 - tv) * s});
        const double spread = conditioned_spread(cfg.spread, exponent);
        const auto as = pd(spread, kNatlog, 2 * (ti * 64 + si));
        const auto bs = pd(spread, kNatlog, 2 * (ti * 64 + si) + 1);
        run(make_check_id("natlog", {{"t", tv}, {"s", s}}),
            [&] { return check_natlog(as, bs, t, s, cfg.force_out_of_range, slack); });
      }

      {
        const auto c = pd(cfg.spread, kLoewner, 4 * ti);
        const auto d = pd(cfg.spread, kLoewner, 4 * ti + 1);
        const auto bump_c = pd(cfg.spread, kLoewner, 4 * ti + 2);
        const auto bump_d = pd(cfg.spread, kLoewner, 4 * ti + 3);
        const PositiveDefiniteMatrix big_a(HermitianMatrix(c.matrix() + 0.1 * bump_c.matrix()));
        const PositiveDefiniteMatrix big_b(HermitianMatrix(d.matrix() + 0.1 * bump_d.matrix()));
        run(make_check_id("loewner_geometric", {{"t", tv}}),
            [&] { return check_loewner_monotone_geometric(big_a, big_b, c, d, t, slack); });
      }

      if (trial < cfg.limit_trials) {
        const auto ha = sample_hermitian(n, derive_seed(trial_seed, kLimit, 2 * ti), cfg.spread);
        const auto hb = sample_hermitian(n, derive_seed(trial_seed, kLimit, 2 * ti + 1), cfg.spread);
        run(make_check_id("limit_spectral", {{"t", tv}}),
            [&] { return check_limit_spectral(ha, hb, t, grid, limits, slack); });
        run(make_check_id("limit_sandwich", {{"t", tv}}),
            [&] { return check_limit_sandwich(ha, hb, t, grid, limits, slack); });
        run(make_check_id("trace", {{"t", tv}}),
            [&] { return check_trace_bound(ha, hb, t, grid, slack); });
      }
    }

    for (std::size_t ei = 0; ei < unit_exps.size(); ++ei) {
      const double e = unit_exps[ei];
      {
        const auto low = pd(cfg.spread, kHeinz, 2 * ei);
        const auto bump = pd(cfg.spread, kHeinz, 2 * ei + 1);
        const PositiveDefiniteMatrix high(HermitianMatrix(low.matrix() + 0.1 * bump.matrix()));
        run(make_check_id("loewner_heinz", {{"r", e}}),
            [&] { return check_loewner_heinz(high, low, e, slack); });
      }
      {
        const auto la = pd(cfg.spread, kLambda1, 2 * ei);
        const auto lb = pd(cfg.spread, kLambda1, 2 * ei + 1);
        run(make_check_id("lambda1", {{"s", e}}), [&] { return check_lambda1(la, lb, e, slack); });
      }
    }
  }

  std::stable_sort(out.begin(), out.end(), [](const CheckOutcome& x, const CheckOutcome& y) {
    if (x.check_id != y.check_id) return x.check_id < y.check_id;
    return x.trial < y.trial;
  });
  return out;
}

/// Family name: the check id up to its parameter list.
inline std::string check_family(const std::string& id) { return id.substr(0, id.find('[')); }

struct FamilyStats {
  long runs = 0;
  long violations = 0;
  long hard_violations = 0;  // margin below -1e-6
  double worst_margin = std::numeric_limits<double>::infinity();
};

struct SuiteSummary {
  long checks = 0;
  long violations = 0;
  long hard_violations = 0;
  long oracle_comparisons = 0;
  long oracle_disagreements = 0;
  std::map<std::string, FamilyStats> families;

  bool ok() const { return violations == 0; }
};

inline SuiteSummary summarize(const std::vector<CheckOutcome>& outcomes) {
  SuiteSummary s;
  for (const auto& o : outcomes) {
    auto& f = s.families[check_family(o.check_id)];
    ++s.checks;
    ++f.runs;
    f.worst_margin = std::min(f.worst_margin, o.worst_margin);
    s.oracle_comparisons += o.oracle_comparisons;
    s.oracle_disagreements += o.oracle_disagreements;
    if (!o.meets_expectation()) {
      ++s.violations;
      ++f.violations;
      if (o.expectation != Expectation::holds || o.worst_margin < -1e-6 || !o.error.empty()) {
        ++s.hard_violations;
        ++f.hard_violations;
      }
    }
  }
  return s;
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// One row per outcome: check_id,trial,verdict,worst_margin,seed.
inline void write_report_csv(std::ostream& os, const std::vector<CheckOutcome>& outcomes) {
  os << "check_id,trial,verdict,worst_margin,seed\n";
  for (const auto& o : outcomes) {
    os << o.check_id << ',' << o.trial << ',' << (o.verdict ? "true" : "false") << ','
       << format_double(o.worst_margin) << ',' << o.seed << '\n';
  }
}

}  // namespace sgm

#endif  // SGM_SUITE_HPP
