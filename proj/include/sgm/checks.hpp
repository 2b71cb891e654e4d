#ifndef SGM_CHECKS_HPP
#define SGM_CHECKS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sgm/majorization.hpp"
#include "sgm/means.hpp"
#include "sgm/reference_data.hpp"

namespace sgm {

/// Slack tolerated on every inequality margin inside a theorem check.
inline constexpr double default_slack = 1e-8;

enum class Expectation {
  holds,    // a theorem: every claim must pass
  refuted,  // a counterexample: the claim must fail, reproductions must pass
  none,     // exploratory (e.g. forced outside a theorem's range)
};

inline std::string_view to_string(Expectation e) {
  switch (e) {
    case Expectation::holds: return "holds";
    case Expectation::refuted: return "refuted";
    case Expectation::none: return "none";
  }
  return "unknown";
}

enum class SubRole { claim, reproduction };

/// One inequality or identity inside a check; passes iff margin >= -tolerance.
struct SubCheck {
  std::string name;
  double margin = 0.0;
  double tolerance = 0.0;
  SubRole role = SubRole::claim;

  bool passed() const { return margin >= -tolerance; }
};

struct NamedMatrix {
  std::string name;
  Matrix value;
};

/// Inputs of a check, kept as the reproducible witness of a failure.
struct CheckCase {
  std::vector<NamedMatrix> matrices;
  std::map<std::string, double> params;
  std::uint64_t seed = 0;
};

struct CheckOutcome {
  std::string check_id;
  long trial = -1;  // -1 for fixed inputs
  std::uint64_t seed = 0;
  Index dim = 0;
  Expectation expectation = Expectation::holds;
  bool verdict = false;
  double worst_margin = 0.0;
  std::vector<SubCheck> detail;
  std::optional<CheckCase> witness;
  int oracle_comparisons = 0;
  int oracle_disagreements = 0;
  std::string error;

  bool reproduced() const {
    return std::all_of(detail.begin(), detail.end(), [](const SubCheck& s) {
      return s.role != SubRole::reproduction || s.passed();
    });
  }

  bool meets_expectation() const {
    if (!error.empty()) return false;
    switch (expectation) {
      case Expectation::holds: return verdict;
      case Expectation::refuted: return !verdict && reproduced();
      case Expectation::none: return true;
    }
    return false;
  }
};

inline std::string format_param(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::string make_check_id(std::string_view family,
                                 std::initializer_list<std::pair<const char*, double>> params) {
  std::string id(family);
  if (params.size() == 0) return id;
  id += '[';
  bool first = true;
  for (const auto& [k, v] : params) {
    if (!first) id += ',';
    first = false;
    id += k;
    id += '=';
    id += format_param(v);
  }
  id += ']';
  return id;
}

namespace detail {

inline double rel_diff(const Matrix& x, const Matrix& y) {
  const double scale = std::max(x.norm(), y.norm());
  return scale > 0.0 ? (x - y).norm() / scale : 0.0;
}

/// Accumulates sub-checks for one outcome.
class Recorder {
 public:
  Recorder(std::string id, Index dim, double slack, CheckCase inputs,
           Expectation expectation = Expectation::holds)
      : slack_(slack), inputs_(std::move(inputs)) {
    out_.check_id = std::move(id);
    out_.dim = dim;
    out_.seed = inputs_.seed;
    out_.expectation = expectation;
  }

  double slack() const { return slack_; }

  void add(std::string name, double margin, double tolerance, SubRole role = SubRole::claim) {
    out_.detail.push_back({std::move(name), margin, tolerance, role});
  }

  /// x log-majorized by y, with the compound oracle alongside for n <= 4.
  void log_majorized(std::string name, const PositiveDefiniteMatrix& x,
                     const PositiveDefiniteMatrix& y) {
    const auto report = log_majorizes(eigenvalues(y), eigenvalues(x), slack_);
    if (x.dim() <= 4) {
      ++out_.oracle_comparisons;
      if (compound_cross_check(x, y, slack_) != report.verdict) ++out_.oracle_disagreements;
    }
    add(std::move(name), report.worst_margin(), slack_);
  }

  /// lhs <= rhs, margin relative to `scale`.
  void at_most(std::string name, double lhs, double rhs, double scale) {
    add(std::move(name), (rhs - lhs) / scale, slack_);
  }

  /// Relative residual of an identity; passes iff residual <= tolerance.
  void identity(std::string name, double residual, double tolerance) {
    add(std::move(name), -residual, tolerance);
  }

  /// lambda_min(diff) / scale against the PSD floor.
  void psd(std::string name, const HermitianMatrix& diff, double scale,
           SubRole role = SubRole::claim) {
    add(std::move(name), eigenvalues(diff).smallest() / scale, tol::psd, role);
  }

  void reproduce(std::string name, double computed, double expected, double tolerance) {
    add(std::move(name), -std::abs(computed - expected), tolerance, SubRole::reproduction);
  }

  void reproduce(std::string name, const Matrix& computed, const Matrix& expected,
                 double tolerance) {
    add(std::move(name), -max_abs(computed - expected), tolerance, SubRole::reproduction);
  }

  CheckOutcome finish() && {
    double worst = std::numeric_limits<double>::infinity();
    bool verdict = true;
    for (const auto& s : out_.detail) {
      if (s.role != SubRole::claim) continue;
      worst = std::min(worst, s.margin);
      verdict = verdict && s.passed();
    }
    out_.verdict = verdict;
    out_.worst_margin = std::isinf(worst) ? 0.0 : worst;
    // Counterexamples always carry their inputs.
    if (!out_.meets_expectation() || out_.expectation == Expectation::refuted) {
      out_.witness = std::move(inputs_);
    }
    return std::move(out_);
  }

 private:
  double slack_;
  CheckCase inputs_;
  CheckOutcome out_;
};

inline CheckCase make_case(std::initializer_list<NamedMatrix> matrices,
                           std::map<std::string, double> params, std::uint64_t seed = 0) {
  return CheckCase{std::vector<NamedMatrix>(matrices), std::move(params), seed};
}

inline void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " must be positive");
  }
}

inline void require_p_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw Error(ErrorKind::InvalidArgument, "p grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    require_positive(grid[i], "p grid entry");
    if (i > 0 && !(grid[i] < grid[i - 1])) {
      throw Error(ErrorKind::InvalidArgument, "p grid must be strictly decreasing");
    }
  }
}

inline void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "operands differ in size");
}

}  // namespace detail

/// Largest s for which the sandwich power is claimed to sit below A nat_t B.
inline double natlog_s_bound(double t) { return t == 0.0 ? 2.0 : std::min(1.0 / t, 2.0); }

/// Dyadic grid 2^0, 2^-1, ..., 2^-min_exponent.
inline std::vector<double> dyadic_grid(int min_exponent) {
  if (min_exponent < 0) throw Error(ErrorKind::InvalidArgument, "p exponent must be >= 0");
  std::vector<double> grid;
  for (int k = 0; k <= min_exponent; ++k) grid.push_back(std::ldexp(1.0, -k));
  return grid;
}

// ---------------------------------------------------------------------------
// Algebraic identities and similarity

/// Inversion, reversal, the two G_t expressions, the backward sandwich and
/// interpolation (A nat_r B) nat_t (A nat_s B) = A nat_{(1-t)r+ts} B.
inline CheckOutcome check_identities(const PositiveDefiniteMatrix& a,
                                     const PositiveDefiniteMatrix& b, Weight t, Weight r,
                                     Weight s, double slack = default_slack) {
  require_same_dim(a, b);
  detail::Recorder rec(make_check_id("identities", {{"t", t.value()}}), a.dim(), slack,
                       detail::make_case({{"A", a.matrix()}, {"B", b.matrix()}},
                                         {{"t", t.value()}, {"r", r.value()}, {"s", s.value()}}));
  const auto mean = spectral_mean(a, b, t);
  const auto inv_a = mat_inverse(a);
  const auto inv_b = mat_inverse(b);
  rec.identity("inverse", detail::rel_diff(mat_inverse(mean).matrix(),
                                           spectral_mean(inv_a, inv_b, t).matrix()),
               slack);
  const auto back = spectral_mean(b, a, t);
  rec.identity("reversal", detail::rel_diff(mean.matrix(),
                                            spectral_mean(b, a, t.complement()).matrix()),
               slack);
  const auto g = g_factor(a, b, t);
  rec.identity("g_factor_forward",
               detail::rel_diff(geometric_mean(inv_a, mean).matrix(), g.matrix()), slack);
  rec.identity("g_factor_backward",
               detail::rel_diff(geometric_mean(mat_inverse(back), b).matrix(), g.matrix()), slack);
  rec.identity("backward_sandwich",
               detail::rel_diff(sandwich(mat_inverse(g), b).matrix(), back.matrix()), slack);
  const double mixed = (1.0 - t.value()) * r.value() + t.value() * s.value();
  const auto lhs = spectral_mean(spectral_mean(a, b, r), spectral_mean(a, b, s), t);
  rec.identity("interpolation",
               detail::rel_diff(lhs.matrix(), spectral_mean(a, b, Weight(mixed)).matrix()), slack);
  return std::move(rec).finish();
}

/// Witness residuals plus equality of the two similar matrices' spectra.
inline CheckOutcome check_similarity(const PositiveDefiniteMatrix& a,
                                     const PositiveDefiniteMatrix& b, Weight t,
                                     double slack = default_slack) {
  require_same_dim(a, b);
  detail::Recorder rec(make_check_id("similarity", {{"t", t.value()}}), a.dim(), slack,
                       detail::make_case({{"A", a.matrix()}, {"B", b.matrix()}},
                                         {{"t", t.value()}}));
  const auto w = similarity_witness(a, b, t);
  rec.identity("conjugacy", w.conjugacy_residual(), tol::similarity);
  rec.identity("unitary", w.unitarity_defect(), tol::unitary);
  const Spectrum lhs = eigenvalues(w.geometric.hermitian());
  const Spectrum rhs = real_spectrum(w.target);
  double worst = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    worst = std::max(worst, std::abs(lhs[i] - rhs[i]) / lhs.largest());
  }
  rec.identity("spectra", worst, tol::similarity);
  return std::move(rec).finish();
}

/// Sorted spectrum of A nat B against square roots of the spectrum of AB.
inline CheckOutcome check_fiedler_ptak(const PositiveDefiniteMatrix& a,
                                       const PositiveDefiniteMatrix& b, double tolerance = 1e-9) {
  require_same_dim(a, b);
  detail::Recorder rec("fiedler_ptak", a.dim(), tolerance,
                       detail::make_case({{"A", a.matrix()}, {"B", b.matrix()}}, {}));
  const Spectrum mean = eigenvalues(spectral_mean(a, b, Weight(0.5)).hermitian());
  const Spectrum prod = product_spectrum(a, b);
  double worst = 0.0;
  for (std::size_t i = 0; i < mean.size(); ++i) {
    const double root = std::sqrt(prod[i]);
    worst = std::max(worst, std::abs(mean[i] - root) / root);
  }
  rec.identity("sqrt_spectrum", worst, tolerance);
  return std::move(rec).finish();
}

/// det(A nat_t B) = det(A)^{1-t} det(B)^t and
/// (alpha A) nat_t (beta B) = alpha^{1-t} beta^t (A nat_t B).
inline CheckOutcome check_det_homogeneity(const PositiveDefiniteMatrix& a,
                                          const PositiveDefiniteMatrix& b, Weight t,
                                          double tolerance = 1e-9) {
  require_same_dim(a, b);
  detail::Recorder rec(make_check_id("det_homogeneity", {{"t", t.value()}}), a.dim(), tolerance,
                       detail::make_case({{"A", a.matrix()}, {"B", b.matrix()}},
                                         {{"t", t.value()}}));
  const auto mean = spectral_mean(a, b, t);
  auto log_det = [](const HermitianMatrix& h) {
    const Spectrum spec = eigenvalues(h);
    double acc = 0.0;
    for (double v : spec.values()) acc += std::log(v);
    return acc;
  };
  const double expected = (1.0 - t.value()) * log_det(a) + t.value() * log_det(b);
  rec.identity("determinant", std::abs(log_det(mean) - expected), tolerance);
  for (double alpha : {0.5, 2.0, 10.0}) {
    for (double beta : {0.5, 2.0, 10.0}) {
      const auto scaled = spectral_mean(PositiveDefiniteMatrix(HermitianMatrix(alpha * a.matrix())),
                                        PositiveDefiniteMatrix(HermitianMatrix(beta * b.matrix())),
                                        t);
      const double factor = std::pow(alpha, 1.0 - t.value()) * std::pow(beta, t.value());
      rec.identity("homogeneity[" + format_param(alpha) + "," + format_param(beta) + "]",
                   detail::rel_diff(scaled.matrix(), factor * mean.matrix()), tolerance);
    }
  }
  return std::move(rec).finish();
}

// ---------------------------------------------------------------------------
// Log-majorization theorems

/// A^r #_t B^r vs (A #_t B)^r (direction flips at r = 1), plus the monotone
/// family (A^p #_t B^p)^{1/p} below (A^q #_t B^q)^{1/q} for 0 < q <= p.
inline CheckOutcome check_geometric_power(const PositiveDefiniteMatrix& a,
                                          const PositiveDefiniteMatrix& b, Weight t, double r,
                                          double q, double p, double slack = default_slack) {
  require_same_dim(a, b);
  detail::require_positive(r, "r");
  detail::require_positive(q, "q");
  if (!(q <= p)) throw Error(ErrorKind::InvalidArgument, "monotone pair needs q <= p");
  detail::Recorder rec(
      make_check_id("geometric_power", {{"t", t.value()}, {"r", r}}), a.dim(), slack,
      detail::make_case({{"A", a.matrix()}, {"B", b.matrix()}},
                        {{"t", t.value()}, {"r", r}, {"q", q}, {"p", p}}));
  const auto powered_mean = metric_mean(mat_power(a, r), mat_power(b, r), t);
  const auto mean_powered = mat_power(metric_mean(a, b, t), r);
  if (r >= 1.0) rec.log_majorized("power_ge_1", powered_mean, mean_powered);
  if (r <= 1.0) rec.log_majorized("power_le_1", mean_powered, powered_mean);
  auto family = [&](double e) {
    return mat_power(metric_mean(mat_power(a, e), mat_power(b, e), t), 1.0 / e);
  };
  rec.log_majorized("monotone", family(p), family(q));
  return std::move(rec).finish();
}

/// (A nat_t B)^r vs A^r nat_t B^r, the reverse of the metric-mean order, plus
/// (A^q nat_t B^q)^{1/q} below (A^p nat_t B^p)^{1/p} for 0 < q <= p.
inline CheckOutcome check_spectral_power(const PositiveDefiniteMatrix& a,
                                         const PositiveDefiniteMatrix& b, Weight t, double r,
                                         double q, double p, double slack = default_slack) {
  require_same_dim(a, b);
  detail::require_positive(r, "r");
  detail::require_positive(q, "q");
  if (!(q <= p)) throw Error(ErrorKind::InvalidArgument, "monotone pair needs q <= p");
  detail::Recorder rec(
      make_check_id("spectral_power", {{"t", t.value()}, {"r", r}}), a.dim(), slack,
      detail::make_case({{"A", a.matrix()}, {"B", b.matrix()}},
                        {{"t", t.value()}, {"r", r}, {"q", q}, {"p", p}}));
  const auto powered_mean = spectral_mean(mat_power(a, r), mat_power(b, r), t);
  const auto mean_powered = mat_power(spectral_mean(a, b, t), r);
  if (r >= 1.0) rec.log_majorized("power_ge_1", mean_powered, powered_mean);
  if (r <= 1.0) rec.log_majorized("power_le_1", powered_mean, mean_powered);
  auto family = [&](double e) {
    return mat_power(spectral_mean(mat_power(a, e), mat_power(b, e), t), 1.0 / e);
  };
  rec.log_majorized("monotone", family(q), family(p));
  return std::move(rec).finish();
}

/// (B^{ts/2} A^{(1-t)s} B^{ts/2})^{1/s}.
inline PositiveDefiniteMatrix sandwich_power(const PositiveDefiniteMatrix& a,
                                             const PositiveDefiniteMatrix& b, Weight t,
                                             double s) {
  detail::require_positive(s, "s");
  const double tv = t.value();
  return mat_power(sandwich(mat_power(b, tv * s / 2.0), mat_power(a, (1.0 - tv) * s)), 1.0 / s);
}

/// Sandwich power log-majorized by A nat_t B for 0 < s <= min(1/t, 2).
/// With `force`, s beyond the bound is evaluated without an expectation.
inline CheckOutcome check_natlog(const PositiveDefiniteMatrix& a,
                                 const PositiveDefiniteMatrix& b, Weight t, double s,
                                 bool force = false, double slack = default_slack) {
  require_same_dim(a, b);
  detail::require_positive(s, "s");
  const double bound = natlog_s_bound(t.value());
  const bool in_range = s <= bound * (1.0 + 1e-12);
  if (!in_range && !force) {
    throw Error(ErrorKind::SOutOfRange, "s = " + format_param(s) + " exceeds " +
                                            format_param(bound));
  }
  detail::Recorder rec(make_check_id("natlog", {{"t", t.value()}, {"s", s}}), a.dim(), slack,
                       detail::make_case({{"A", a.matrix()}, {"B", b.matrix()}},
                                         {{"t", t.value()}, {"s", s}}),
                       in_range ? Expectation::holds : Expectation::none);
  rec.log_majorized("sandwich_below_spectral", sandwich_power(a, b, t, s),
                    spectral_mean(a, b, t));
  return std::move(rec).finish();
}

/// A #_t B <_log exp((1-t) log A + t log B) <_log B^{t/2} A^{1-t} B^{t/2}
/// <_log A nat_t B, and the direct A #_t B <_log A nat_t B.
inline CheckOutcome check_chain(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b,
                                Weight t, double slack = default_slack) {
  require_same_dim(a, b);
  detail::Recorder rec(make_check_id("chain", {{"t", t.value()}}), a.dim(), slack,
                       detail::make_case({{"A", a.matrix()}, {"B", b.matrix()}},
                                         {{"t", t.value()}}));
  const double tv = t.value();
  const auto geo = metric_mean(a, b, t);
  const auto log_euclid = mat_exp(HermitianMatrix((1.0 - tv) * mat_log(a).matrix() +
                                                  tv * mat_log(b).matrix()));
  const auto araki = sandwich_power(a, b, t, 1.0);
  const auto spec = spectral_mean(a, b, t);
  rec.log_majorized("geometric_below_log_euclidean", geo, log_euclid);
  rec.log_majorized("log_euclidean_below_sandwich", log_euclid, araki);
  rec.log_majorized("sandwich_below_spectral", araki, spec);
  rec.log_majorized("geometric_below_spectral", geo, spec);
  return std::move(rec).finish();
}

// ---------------------------------------------------------------------------
// Limits along p -> 0

/// (e^{pA} nat_t e^{pB})^{1/p}
inline PositiveDefiniteMatrix exp_spectral_power(const HermitianMatrix& a, const HermitianMatrix& b,
                                                 Weight t, double p) {
  return mat_power(spectral_mean(mat_exp(HermitianMatrix(p * a.matrix())),
                                 mat_exp(HermitianMatrix(p * b.matrix())), t),
                   1.0 / p);
}

/// (e^{ptB/2} e^{p(1-t)A} e^{ptB/2})^{1/p}
inline PositiveDefiniteMatrix exp_sandwich_power(const HermitianMatrix& a, const HermitianMatrix& b,
                                                 Weight t, double p) {
  const double tv = t.value();
  return mat_power(sandwich(mat_exp(HermitianMatrix(p * tv / 2.0 * b.matrix())),
                            mat_exp(HermitianMatrix(p * (1.0 - tv) * a.matrix()))),
                   1.0 / p);
}

/// e^{(1-t)A + tB}
inline PositiveDefiniteMatrix exp_target(const HermitianMatrix& a, const HermitianMatrix& b,
                                         Weight t) {
  const double tv = t.value();
  return mat_exp(HermitianMatrix((1.0 - tv) * a.matrix() + tv * b.matrix()));
}

struct LimitRow {
  double p = 0.0;
  double err_spectral_mean = 0.0;
  double err_sandwich = 0.0;
  double trace_spectral = 0.0;
  double trace_target = 0.0;
};

/// Spectral-norm distances of both p-families to e^{(1-t)A+tB} along the grid.
inline std::vector<LimitRow> limit_profile(const HermitianMatrix& a, const HermitianMatrix& b,
                                           Weight t, const std::vector<double>& p_grid) {
  detail::require_same_dim(a, b);
  detail::require_p_grid(p_grid);
  const auto target = exp_target(a, b, t);
  const double target_trace = trace(target);
  std::vector<LimitRow> rows;
  for (double p : p_grid) {
    const auto spec = exp_spectral_power(a, b, t, p);
    const auto sand = exp_sandwich_power(a, b, t, p);
    rows.push_back({p, spectral_norm(spec.matrix() - target.matrix()),
                    spectral_norm(sand.matrix() - target.matrix()), trace(spec), target_trace});
  }
  return rows;
}

/// Parameters shared by the two limit checks.
struct LimitSettings {
  double threshold = 1e-2;  // err at the smallest p
  double floor = 1e-8;      // descent enforced only while err exceeds this
};

namespace detail {

template <typename Family>
void record_limit_family(Recorder& rec, const HermitianMatrix& a, const HermitianMatrix& b,
                         Weight t, const std::vector<double>& grid, const LimitSettings& cfg,
                         Family&& family) {
  const auto target = exp_target(a, b, t);
  const double target_norm = spectral_norm(target.matrix());
  const Index n = a.dim();
  std::vector<PositiveDefiniteMatrix> values;
  std::vector<double> errs;
  for (double p : grid) {
    values.push_back(family(p));
    errs.push_back(spectral_norm(values.back().matrix() - target.matrix()));
  }
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const std::string at = "[p=" + format_param(grid[i]) + "]";
    if (errs[i] > cfg.floor) rec.at_most("err_descent" + at, errs[i + 1], errs[i], target_norm);
    rec.log_majorized("log_descent" + at, values[i + 1], values[i]);
    for (Index k = 1; k <= n; ++k) {
      const double hi = ky_fan_norm(values[i].matrix(), k);
      rec.at_most("ky_fan_descent" + at + "[k=" + std::to_string(k) + "]",
                  ky_fan_norm(values[i + 1].matrix(), k), hi, hi);
    }
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    rec.log_majorized("target_below[p=" + format_param(grid[i]) + "]", target, values[i]);
  }
  rec.add("err_final", cfg.threshold - errs.back(), 0.0);
}

}  // namespace detail

/// (e^{pA} nat_t e^{pB})^{1/p} -> e^{(1-t)A+tB}, decreasing in log majorization.
inline CheckOutcome check_limit_spectral(const HermitianMatrix& a, const HermitianMatrix& b,
                                         Weight t, const std::vector<double>& p_grid,
                                         LimitSettings cfg = {},
                                         double slack = default_slack) {
  detail::require_same_dim(a, b);
  detail::require_p_grid(p_grid);
  detail::Recorder rec(make_check_id("limit_spectral", {{"t", t.value()}}), a.dim(), slack,
                       detail::make_case({{"A", a.matrix()}, {"B", b.matrix()}},
                                         {{"t", t.value()}, {"p_min", p_grid.back()}}));
  detail::record_limit_family(rec, a, b, t, p_grid, cfg,
                              [&](double p) { return exp_spectral_power(a, b, t, p); });
  return std::move(rec).finish();
}

/// (e^{ptB/2} e^{p(1-t)A} e^{ptB/2})^{1/p} -> e^{(1-t)A+tB}; each member
/// with p <= min(1/t, 2) also sits below e^A nat_t e^B.
inline CheckOutcome check_limit_sandwich(const HermitianMatrix& a, const HermitianMatrix& b,
                                         Weight t, const std::vector<double>& p_grid,
                                         LimitSettings cfg = {},
                                         double slack = default_slack) {
  detail::require_same_dim(a, b);
  detail::require_p_grid(p_grid);
  detail::Recorder rec(make_check_id("limit_sandwich", {{"t", t.value()}}), a.dim(), slack,
                       detail::make_case({{"A", a.matrix()}, {"B", b.matrix()}},
                                         {{"t", t.value()}, {"p_min", p_grid.back()}}));
  detail::record_limit_family(rec, a, b, t, p_grid, cfg,
                              [&](double p) { return exp_sandwich_power(a, b, t, p); });
  const auto upper = spectral_mean(mat_exp(a), mat_exp(b), t);
  for (double p : p_grid) {
    if (p > natlog_s_bound(t.value())) continue;
    rec.log_majorized("below_spectral[p=" + format_param(p) + "]",
                      exp_sandwich_power(a, b, t, p), upper);
  }
  return std::move(rec).finish();
}

/// tr e^{(1-t)A+tB} <= tr (e^{pA} nat_t e^{pB})^{1/p}, traces nonincreasing
/// as p decreases.
inline CheckOutcome check_trace_bound(const HermitianMatrix& a, const HermitianMatrix& b,
                                          Weight t, const std::vector<double>& p_grid,
                                          double slack = default_slack) {
  detail::require_same_dim(a, b);
  detail::require_p_grid(p_grid);
  detail::Recorder rec(make_check_id("trace", {{"t", t.value()}}), a.dim(), slack,
                       detail::make_case({{"A", a.matrix()}, {"B", b.matrix()}},
                                         {{"t", t.value()}, {"p_min", p_grid.back()}}));
  const double target = trace(exp_target(a, b, t));
  double previous = std::numeric_limits<double>::infinity();
  for (double p : p_grid) {
    const double tr = trace(exp_spectral_power(a, b, t, p));
    const std::string at = "[p=" + format_param(p) + "]";
    rec.at_most("bound" + at, target, tr, target);
    if (std::isfinite(previous)) rec.at_most("descent" + at, tr, previous, previous);
    previous = tr;
  }
  return std::move(rec).finish();
}

// ---------------------------------------------------------------------------
// Loewner order

inline bool loewner_geq(const PositiveDefiniteMatrix& x, const PositiveDefiniteMatrix& y) {
  const double scale = std::max(eigenvalues(x.hermitian()).largest(),
                                eigenvalues(y.hermitian()).largest());
  const auto diff = HermitianMatrix(x.matrix() - y.matrix());
  return eigenvalues(diff).smallest() >= -tol::psd * scale;
}

/// A >= C and B >= D imply A #_t B >= C #_t D.
inline CheckOutcome check_loewner_monotone_geometric(const PositiveDefiniteMatrix& a,
                                                     const PositiveDefiniteMatrix& b,
                                                     const PositiveDefiniteMatrix& c,
                                                     const PositiveDefiniteMatrix& d, Weight t,
                                                     double slack = default_slack) {
  require_same_dim(a, b);
  require_same_dim(a, c);
  require_same_dim(a, d);
  if (!loewner_geq(a, c) || !loewner_geq(b, d)) {
    throw Error(ErrorKind::PreconditionNotMet, "inputs are not Loewner-ordered");
  }
  detail::Recorder rec(make_check_id("loewner_geometric", {{"t", t.value()}}), a.dim(), slack,
                       detail::make_case({{"A", a.matrix()},
                                          {"B", b.matrix()},
                                          {"C", c.matrix()},
                                          {"D", d.matrix()}},
                                         {{"t", t.value()}}));
  const auto upper = metric_mean(a, b, t);
  const auto lower = metric_mean(c, d, t);
  rec.psd("difference_psd", HermitianMatrix(upper.matrix() - lower.matrix()),
          eigenvalues(upper.hermitian()).largest());
  return std::move(rec).finish();
}

/// A >= B > 0 implies A^r >= B^r for 0 <= r <= 1.
inline CheckOutcome check_loewner_heinz(const PositiveDefiniteMatrix& a,
                                        const PositiveDefiniteMatrix& b, double r,
                                        double slack = default_slack) {
  require_same_dim(a, b);
  if (!(r >= 0.0 && r <= 1.0)) throw Error(ErrorKind::InvalidArgument, "r must lie in [0, 1]");
  if (!loewner_geq(a, b)) throw Error(ErrorKind::PreconditionNotMet, "A >= B does not hold");
  detail::Recorder rec(make_check_id("loewner_heinz", {{"r", r}}), a.dim(), slack,
                       detail::make_case({{"A", a.matrix()}, {"B", b.matrix()}}, {{"r", r}}));
  const auto ar = mat_power(a, r);
  rec.psd("power_difference_psd", HermitianMatrix(ar.matrix() - mat_power(b, r).matrix()),
          eigenvalues(ar.hermitian()).largest());
  return std::move(rec).finish();
}

/// lambda_1(A^{s/2} B^s A^{s/2}) <= lambda_1(A^{1/2} B A^{1/2})^s and the
/// full A^{s/2} B^s A^{s/2} <_log (A^{1/2} B A^{1/2})^s, 0 <= s <= 1.
inline CheckOutcome check_lambda1(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b,
                                  double s, double slack = default_slack) {
  require_same_dim(a, b);
  if (!(s >= 0.0 && s <= 1.0)) throw Error(ErrorKind::InvalidArgument, "s must lie in [0, 1]");
  detail::Recorder rec(make_check_id("lambda1", {{"s", s}}), a.dim(), slack,
                       detail::make_case({{"A", a.matrix()}, {"B", b.matrix()}}, {{"s", s}}));
  const auto lhs = sandwich(mat_power(a, s / 2.0), mat_power(b, s));
  const auto base = sandwich(mat_sqrt(a), b);
  const auto rhs = mat_power(base, s);
  const double l1 = eigenvalues(lhs.hermitian()).largest();
  const double r1 = std::pow(eigenvalues(base.hermitian()).largest(), s);
  rec.at_most("largest", l1, r1, r1);
  rec.log_majorized("log_majorization", lhs, rhs);
  return std::move(rec).finish();
}

// ---------------------------------------------------------------------------
// Published counterexamples

/// Reproduces the 2x2 counterexample beyond the s-bound. Its claim
/// (sandwich power below the spectral mean) must fail.
inline CheckOutcome check_natlog_counterexample(double slack = tol::majorization) {
  using Ref = reference::NatlogBoundCounterexample;
  const PositiveDefiniteMatrix a(Ref::a());
  const PositiveDefiniteMatrix b(Ref::b());
  const Weight t(Ref::t);
  detail::Recorder rec("counterexample.natlog_bound", 2, slack,
                       detail::make_case({{"A", Ref::a()}, {"B", Ref::b()}},
                                         {{"t", Ref::t}, {"s", Ref::s}}),
                       Expectation::refuted);
  const auto left = sandwich_power(a, b, t, Ref::s);
  const auto right = spectral_mean(a, b, t);
  const Spectrum ls = eigenvalues(left.hermitian());
  const Spectrum rs = eigenvalues(right.hermitian());
  for (std::size_t i = 0; i < 2; ++i) {
    rec.reproduce("sandwich_spectrum[" + std::to_string(i) + "]", ls[i],
                  Ref::sandwich_power_spectrum[i], Ref::spectrum_tolerance);
    rec.reproduce("spectral_spectrum[" + std::to_string(i) + "]", rs[i],
                  Ref::spectral_mean_spectrum[i], Ref::spectrum_tolerance);
  }
  rec.reproduce("sandwich_matrix", left.matrix(), Ref::sandwich_power(), Ref::entry_tolerance);
  rec.reproduce("spectral_matrix", right.matrix(), Ref::spectral_mean(), Ref::entry_tolerance);
  rec.log_majorized("sandwich_below_spectral", left, right);
  return std::move(rec).finish();
}

/// Reproduces B1 >= B2 with A nat_t B1 - A nat_t B2 indefinite. Its claim
/// (the difference is PSD) must fail.
inline CheckOutcome check_spectral_not_monotone() {
  using Ref = reference::SpectralNotMonotoneCounterexample;
  const PositiveDefiniteMatrix a(Ref::a());
  const PositiveDefiniteMatrix b1(Ref::b1());
  const PositiveDefiniteMatrix b2(Ref::b2());
  const Weight t(Ref::t);
  detail::Recorder rec("counterexample.spectral_not_monotone", 2, tol::psd,
                       detail::make_case({{"A", Ref::a()}, {"B1", Ref::b1()}, {"B2", Ref::b2()}},
                                         {{"t", Ref::t}}),
                       Expectation::refuted);
  rec.psd("b1_geq_b2", HermitianMatrix(Ref::b1() - Ref::b2()),
          eigenvalues(b1.hermitian()).largest(), SubRole::reproduction);
  const auto m1 = spectral_mean(a, b1, t);
  const auto m2 = spectral_mean(a, b2, t);
  rec.reproduce("mean_b1", m1.matrix(), Ref::mean_b1(), Ref::entry_tolerance);
  rec.reproduce("mean_b2", m2.matrix(), Ref::mean_b2(), Ref::entry_tolerance);
  const HermitianMatrix diff(m1.matrix() - m2.matrix());
  const Spectrum ds = eigenvalues(diff);
  rec.reproduce("difference_eigenvalue[min]", ds[1], Ref::difference_eigenvalues[0],
                Ref::eigenvalue_tolerance);
  rec.reproduce("difference_eigenvalue[max]", ds[0], Ref::difference_eigenvalues[1],
                Ref::eigenvalue_tolerance);
  rec.psd("difference_psd", diff, eigenvalues(m1.hermitian()).largest());
  return std::move(rec).finish();
}

}  // namespace sgm

#endif  // SGM_CHECKS_HPP
