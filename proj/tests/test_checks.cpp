#include <sstream>

#include <gtest/gtest.h>

#include "sgm/checks.hpp"
#include "sgm/suite.hpp"

namespace {

using namespace sgm;

void expect_holds(const CheckOutcome& o) {
  EXPECT_TRUE(o.error.empty()) << o.check_id << ": " << o.error;
  EXPECT_TRUE(o.meets_expectation()) << o.check_id << " worst margin " << o.worst_margin;
  for (const auto& s : o.detail) {
    EXPECT_TRUE(s.passed()) << o.check_id << " " << s.name << " margin " << s.margin;
  }
}

struct Pair {
  PositiveDefiniteMatrix a;
  PositiveDefiniteMatrix b;
};

Pair pair(Index n, std::uint64_t seed, double spread = 100.0) {
  return {sample_pd(n, 2 * seed, spread), sample_pd(n, 2 * seed + 1, spread)};
}

TEST(CheckIds, Format) {
  EXPECT_EQ(make_check_id("natlog", {{"t", 1.0 / 3.0}, {"s", 2.0}}), "natlog[t=0.333333,s=2]");
  EXPECT_EQ(make_check_id("fiedler_ptak", {}), "fiedler_ptak");
  EXPECT_EQ(check_family("natlog[t=0.25,s=2]"), "natlog");
}

TEST(Checks, IdentitiesAndSimilarityHold) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto [a, b] = pair(3 + static_cast<Index>(seed % 3), seed);
    for (double t : {0.0, 0.25, 0.5, 1.0}) {
      expect_holds(check_identities(a, b, Weight(t), Weight(0.2), Weight(0.9)));
      expect_holds(check_similarity(a, b, Weight(t)));
      expect_holds(check_chain(a, b, Weight(t)));
      expect_holds(check_det_homogeneity(a, b, Weight(t)));
    }
    expect_holds(check_fiedler_ptak(a, b));
  }
}

TEST(Checks, PowerOrdersHold) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto [a, b] = pair(4, 50 + seed, 10.0);
    for (double t : {0.25, 0.75}) {
      expect_holds(check_geometric_power(a, b, Weight(t), 0.3, 0.3, 1.0));
      expect_holds(check_geometric_power(a, b, Weight(t), 2.0, 1.0, 2.0));
      expect_holds(check_spectral_power(a, b, Weight(t), 0.3, 0.3, 1.0));
      expect_holds(check_spectral_power(a, b, Weight(t), 2.0, 1.0, 2.0));
    }
  }
}

TEST(Checks, PowerCheckRejectsBadPair) {
  const auto [a, b] = pair(2, 1);
  EXPECT_THROW(check_spectral_power(a, b, Weight(0.5), 1.0, 2.0, 1.0), Error);
  EXPECT_THROW(check_geometric_power(a, b, Weight(0.5), -1.0, 0.5, 1.0), Error);
}

TEST(Checks, NatlogInsideRange) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto [a, b] = pair(3, 80 + seed, 10.0);
    for (double t : {0.0, 0.5, 0.75, 1.0}) {
      expect_holds(check_natlog(a, b, Weight(t), natlog_s_bound(t)));
    }
    expect_holds(check_natlog(a, b, Weight(0.25), 1.0));
  }
}

TEST(Checks, NatlogOutOfRangeNeedsForce) {
  const auto [a, b] = pair(2, 3);
  try {
    check_natlog(a, b, Weight(1.0 / 3.0), 2.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SOutOfRange);
  }
  const auto forced = check_natlog(a, b, Weight(1.0 / 3.0), 2.1, true);
  EXPECT_EQ(forced.expectation, Expectation::none);
  EXPECT_TRUE(forced.meets_expectation());
}

// The bound s <= min(1/t, 2) is not sufficient at s = 2 for t = 1/3: random
// 2x2 pairs violate the log-majorization by far more than roundoff. This
// records the observed behaviour; t = 1/3 with s = 1.6 holds on the same pairs.
TEST(Checks, NatlogAtSTwoHasCounterexamplesForTThird) {
  const Weight t(1.0 / 3.0);
  double worst = 0.0;
  int violations = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const auto [a, b] = pair(2, 1000 + seed, 10.0);
    const auto o = check_natlog(a, b, t, 2.0);
    worst = std::min(worst, o.worst_margin);
    violations += o.verdict ? 0 : 1;
    expect_holds(check_natlog(a, b, t, 1.6));
  }
  EXPECT_GT(violations, 0);
  EXPECT_LT(worst, -1e-4);
}

TEST(Checks, LimitsAndTrace) {
  const auto grid = dyadic_grid(10);
  ASSERT_EQ(grid.size(), 11u);
  EXPECT_EQ(grid.front(), 1.0);
  EXPECT_EQ(grid.back(), std::ldexp(1.0, -10));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto a = sample_hermitian(3, 2 * seed, 100.0);
    const auto b = sample_hermitian(3, 2 * seed + 1, 100.0);
    for (double t : {0.0, 0.4, 1.0}) {
      expect_holds(check_limit_spectral(a, b, Weight(t), grid));
      expect_holds(check_limit_sandwich(a, b, Weight(t), grid));
      expect_holds(check_trace_bound(a, b, Weight(t), grid));
    }
  }
}

TEST(Checks, LimitProfileConverges) {
  const auto a = sample_hermitian(4, 5, 100.0);
  const auto b = sample_hermitian(4, 6, 100.0);
  const auto rows = limit_profile(a, b, Weight(0.3), dyadic_grid(10));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_LE(rows[i].err_spectral_mean, rows[i - 1].err_spectral_mean);
    EXPECT_LE(rows[i].err_sandwich, rows[i - 1].err_sandwich);
    EXPECT_GE(rows[i].trace_spectral, rows[i].trace_target * (1 - 1e-12));
  }
  EXPECT_LT(rows.back().err_spectral_mean, 1e-2);
  EXPECT_LT(rows.back().err_sandwich, 1e-2);
}

TEST(Checks, LimitRejectsBadGrid) {
  const auto a = sample_hermitian(2, 1, 10.0);
  EXPECT_THROW(check_limit_spectral(a, a, Weight(0.5), {0.5, 1.0}), Error);
  EXPECT_THROW(check_limit_spectral(a, a, Weight(0.5), {}), Error);
}

TEST(Checks, LoewnerOrders) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto c = sample_pd(3, 4 * seed, 50.0);
    const auto d = sample_pd(3, 4 * seed + 1, 50.0);
    const PositiveDefiniteMatrix a(HermitianMatrix(c.matrix() + 0.1 * sample_pd(3, 4 * seed + 2, 50.0).matrix()));
    const PositiveDefiniteMatrix b(HermitianMatrix(d.matrix() + 0.1 * sample_pd(3, 4 * seed + 3, 50.0).matrix()));
    expect_holds(check_loewner_monotone_geometric(a, b, c, d, Weight(0.3)));
    expect_holds(check_loewner_heinz(a, c, 0.5));
    expect_holds(check_lambda1(a, b, 0.5));
  }
}

TEST(Checks, LoewnerPreconditions) {
  const auto [a, b] = pair(3, 9);
  try {
    check_loewner_heinz(a, b, 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PreconditionNotMet);
  }
  EXPECT_THROW(check_loewner_monotone_geometric(a, b, b, a, Weight(0.5)), Error);
  EXPECT_THROW(check_lambda1(a, b, 1.5), Error);
}

TEST(Counterexamples, ReproduceAndRefute) {
  const auto natlog = check_natlog_counterexample();
  EXPECT_EQ(natlog.expectation, Expectation::refuted);
  EXPECT_FALSE(natlog.verdict);
  EXPECT_TRUE(natlog.reproduced());
  EXPECT_TRUE(natlog.meets_expectation());
  ASSERT_TRUE(natlog.witness.has_value());

  const auto monotone = check_spectral_not_monotone();
  EXPECT_FALSE(monotone.verdict);
  EXPECT_TRUE(monotone.reproduced());
  EXPECT_TRUE(monotone.meets_expectation());
}

TEST(Suite, ZeroTrialsRunsFixedCasesOnly) {
  SuiteConfig cfg;
  cfg.trials = 0;
  const auto out = run_suite(cfg);
  ASSERT_FALSE(out.empty());
  for (const auto& o : out) {
    EXPECT_EQ(o.trial, -1);
    EXPECT_TRUE(o.meets_expectation()) << o.check_id;
  }
  const auto has = [&](const std::string& id) {
    return std::any_of(out.begin(), out.end(), [&](const CheckOutcome& o) { return o.check_id == id; });
  };
  EXPECT_TRUE(has("counterexample.natlog_bound"));
  EXPECT_TRUE(has("counterexample.spectral_not_monotone"));
}

TEST(Suite, SmallRunIsDeterministicAndSorted) {
  SuiteConfig cfg;
  cfg.trials = 4;
  cfg.limit_trials = 1;
  cfg.t_grid = {0.5};
  const auto first = run_suite(cfg);
  const auto second = run_suite(cfg);
  std::ostringstream a;
  std::ostringstream b;
  write_report_csv(a, first);
  write_report_csv(b, second);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().substr(0, a.str().find('\n')), "check_id,trial,verdict,worst_margin,seed");
  for (std::size_t i = 1; i < first.size(); ++i) {
    const auto& p = first[i - 1];
    const auto& q = first[i];
    EXPECT_TRUE(p.check_id < q.check_id || (p.check_id == q.check_id && p.trial < q.trial));
  }
  for (const auto& o : first) EXPECT_TRUE(o.meets_expectation()) << o.check_id << " " << o.trial;
  cfg.seed = 2;
  std::ostringstream c;
  write_report_csv(c, run_suite(cfg));
  EXPECT_NE(a.str(), c.str());
}

TEST(Suite, ConfigValidation) {
  SuiteConfig cfg;
  cfg.s_grid = {{false, 2.1}};
  EXPECT_THROW(cfg.validate(), Error);
  cfg.force_out_of_range = true;
  EXPECT_NO_THROW(cfg.validate());
  SuiteConfig bad;
  bad.t_grid = {1.2};
  EXPECT_THROW(bad.validate(), Error);
  bad = SuiteConfig{};
  bad.dim_min = 5;
  bad.dim_max = 3;
  EXPECT_THROW(bad.validate(), Error);
}

TEST(Suite, ForcedOutOfRangeRunsWithoutExpectation) {
  SuiteConfig cfg;
  cfg.trials = 3;
  cfg.t_grid = {1.0 / 3.0};
  cfg.s_grid = {{false, 2.1}};
  cfg.force_out_of_range = true;
  cfg.limit_trials = 0;
  const auto out = run_suite(cfg);
  int natlog = 0;
  for (const auto& o : out) {
    if (check_family(o.check_id) != "natlog") continue;
    ++natlog;
    EXPECT_EQ(o.expectation, Expectation::none);
  }
  EXPECT_EQ(natlog, 3);
}

}  // namespace
