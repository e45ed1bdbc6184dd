#include "elroc/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "elroc/error.hpp"
#include "elroc/parallel.hpp"
#include "elroc/pivots.hpp"

namespace elroc {

namespace {

std::vector<double> draw_with_replacement(const ClassSample& s, Rng& rng) {
  const auto values = s.values();
  std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
  std::vector<double> out(values.size());
  for (double& v : out) v = values[pick(rng)];
  return out;
}

double mean_of(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

void check_options(const BootstrapOptions& options) {
  if (options.B < 2) throw Error(ErrorCategory::validation, "bootstrap needs B >= 2");
}

void check_open_unit(double p, const char* name) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorCategory::validation, std::string(name) + " must lie in (0, 1)");
  }
}

// Runs `pivot` on B ordered resamples, one independent stream per replicate.
template <typename Pivot>
ScaleEstimate run_bootstrap(const ThreeClassSample& x, const BootstrapOptions& options,
                            OrderingFilter filter, ScaleRatio ratio, Pivot pivot) {
  check_options(options);
  const Resampler draw = options.resampler ? options.resampler : Resampler(resample_ordered);
  std::vector<double> values(options.B);
  std::vector<std::size_t> rejected(options.B, 0);
  parallel_for(options.B, options.threads, [&](std::size_t b) {
    Rng rng = make_rng(derive_seed(options.seed, {b}));
    const ThreeClassSample xb = draw(x, rng, &rejected[b], filter);
    values[b] = pivot(xb);
  });
  std::size_t total_rejected = 0;
  for (std::size_t r : rejected) total_rejected += r;
  return scale_from_bootstrap_values(values, ratio, total_rejected);
}

}  // namespace

ThreeClassSample resample_ordered(const ThreeClassSample& x, Rng& rng, std::size_t* rejected,
                                  OrderingFilter filter) {
  for (std::size_t attempt = 0; attempt < kMaxOrderingRejections; ++attempt) {
    std::vector<double> y1 = draw_with_replacement(x.class1, rng);
    std::vector<double> y2 = draw_with_replacement(x.class2, rng);
    const double m1 = mean_of(y1);
    const double m2 = mean_of(y2);
    if (filter == OrderingFilter::first_two_only) {
      if (m1 < m2) {
        return {ClassSample(std::move(y1)), ClassSample(std::move(y2)), x.class3};
      }
    } else {
      std::vector<double> y3 = draw_with_replacement(x.class3, rng);
      if (m1 < m2 && m2 < mean_of(y3)) {
        return {ClassSample(std::move(y1)), ClassSample(std::move(y2)),
                ClassSample(std::move(y3))};
      }
    }
    if (rejected) ++*rejected;
  }
  throw Error(ErrorCategory::ordering_infeasible,
              "no resample with ordered class means in " +
                  std::to_string(kMaxOrderingRejections) + " consecutive draws");
}

double bootstrap_median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

ScaleEstimate scale_from_bootstrap_values(std::span<const double> values, ScaleRatio ratio,
                                          std::size_t rejected_ordering) {
  const double median = bootstrap_median({values.begin(), values.end()});
  if (!(median > 0.0) || !std::isfinite(median)) {
    throw Error(ErrorCategory::degenerate_scale,
                "bootstrap median of the pivot is " + std::to_string(median),
                "B=" + std::to_string(values.size()));
  }
  ScaleEstimate out;
  out.median_value = median;
  out.w_hat = ratio == ScaleRatio::target_over_median ? kChi2MedianApprox / median
                                                      : median / kChi2MedianApprox;
  out.B_requested = values.size();
  out.B_accepted = values.size();
  out.rejected_ordering = rejected_ordering;
  return out;
}

ScaleEstimate estimate_w_tcf2(const ThreeClassSample& x, double theta1, double theta3,
                              const BootstrapOptions& options) {
  check_open_unit(theta1, "theta1");
  check_open_unit(theta3, "theta3");
  const auto t = plug_in_thresholds(x, theta1, theta3);
  if (!(t.t1_hat < t.t2_hat)) {
    throw Error(ErrorCategory::domain, "estimated thresholds are not ordered (t1 >= t2)");
  }
  const double theta2_hat = p_hat(x.class2, {t.t1_hat, t.t2_hat});
  return run_bootstrap(x, options, OrderingFilter::all_classes, ScaleRatio::target_over_median,
                       [&](const ThreeClassSample& xb) {
                         return ell_star_tcf2(xb, theta1, theta2_hat, theta3,
                                              EcdfKind::smoothed)
                             .value;
                       });
}

ScaleEstimate estimate_w_vus(const ThreeClassSample& x, bool ties,
                             const BootstrapOptions& options) {
  const double gamma_hat = ties ? vus_estimate_ties(x) : vus_estimate(x);
  if (gamma_hat <= 0.0 || gamma_hat >= 1.0) {
    throw Error(ErrorCategory::boundary_estimate,
                "VUS estimate is " + std::to_string(gamma_hat) +
                    "; use the ties estimator or more data");
  }
  const std::size_t n = x.total_size();
  return run_bootstrap(x, options, OrderingFilter::all_classes, ScaleRatio::target_over_median,
                       [&](const ThreeClassSample& xb) {
                         const double gb = ties ? vus_estimate_ties(xb) : vus_estimate(xb);
                         return ell_vus(gb, n, gamma_hat).value;
                       });
}

ScaleEstimate estimate_w_pair(const ThreeClassSample& x, double theta1, double t2,
                              const BootstrapOptions& options) {
  check_open_unit(theta1, "theta1");
  const double t1_hat = empirical_quantile(x.class1, theta1);
  if (!(t1_hat < t2)) {
    throw Error(ErrorCategory::domain, "estimated t1 is not below t2");
  }
  const double theta2_hat = p_hat(x.class2, {t1_hat, t2});
  const std::size_t n2 = x.class2.size();
  return run_bootstrap(x, options, OrderingFilter::first_two_only,
                       ScaleRatio::median_over_target, [&](const ThreeClassSample& xb) {
                         const double t1b = empirical_quantile_smoothed(xb.class1, theta1);
                         if (!(t1b < t2)) return std::numeric_limits<double>::infinity();
                         return binomial_deviance(n2, p_hat_smoothed(xb.class2, {t1b, t2}),
                                                  theta2_hat);
                       });
}

double mc_quantile_mixture(double w_hat, double alpha, std::size_t M, RngSeed seed) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCategory::validation, "alpha must lie in (0, 1)");
  }
  if (!(w_hat >= 0.0) || !std::isfinite(w_hat)) {
    throw Error(ErrorCategory::validation, "mixture weight must be finite and >= 0");
  }
  if (M < 100) throw Error(ErrorCategory::validation, "need at least 100 Monte Carlo draws");
  Rng rng = make_rng(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<double> draws(M);
  for (double& d : draws) {
    const double u1 = z(rng);
    const double u2 = z(rng);
    d = w_hat * u1 * u1 + u2 * u2;
  }
  std::sort(draws.begin(), draws.end());
  const double h = (static_cast<double>(M) - 1.0) * (1.0 - alpha);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, M - 1);
  return draws[lo] + (h - static_cast<double>(lo)) * (draws[hi] - draws[lo]);
}

}  // namespace elroc
