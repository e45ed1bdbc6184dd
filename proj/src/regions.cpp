#include "elroc/regions.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <string>

#include "elroc/error.hpp"
#include "elroc/roots.hpp"

namespace elroc {

namespace {

constexpr double kEdge = 1e-9;

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCategory::validation,
                "alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
}

void check_open_unit(double p, const char* name) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorCategory::validation, std::string(name) + " must lie in (0, 1)");
  }
}

void check_grid(std::size_t grid_n) {
  if (grid_n < 11) throw Error(ErrorCategory::validation, "grid_n must be at least 11");
}

void check_scale(double w_hat) {
  if (!(w_hat > 0.0) || !std::isfinite(w_hat)) {
    throw Error(ErrorCategory::validation, "scale w must be positive and finite");
  }
}

PivotValue add(PivotValue a, PivotValue b) {
  if (!a.is_finite()) return a;
  if (!b.is_finite()) return b;
  return {a.value + b.value, PivotDiagnostic::none};
}

// Endpoints of {v : w * (c0 + dev(v)) <= q} around an interior estimate,
// where dev is convex with minimum 0 at `estimate`.
template <typename Deviance>
std::pair<double, double> solve_endpoints(Deviance dev, double estimate, double c0,
                                          double w_hat, double q) {
  auto excess = [&](double v) { return w_hat * (c0 + dev(v)) - q; };
  double lower = kEdge;
  double upper = 1.0 - kEdge;
  if (estimate > kEdge && excess(kEdge) > 0.0) {
    lower = bisect(excess, kEdge, estimate, kBisectionTolerance);
  }
  if (estimate < 1.0 - kEdge && excess(1.0 - kEdge) > 0.0) {
    upper = bisect(excess, estimate, 1.0 - kEdge, kBisectionTolerance);
  }
  return {std::min(lower, estimate), std::max(upper, estimate)};
}

std::string domain_message(PivotDiagnostic d) {
  switch (d) {
    case PivotDiagnostic::class1_bracket:
      return "t1 must lie in [min, max) of class 1";
    case PivotDiagnostic::class2_bracket:
      return "t1 or t2 must lie in [min, max) of class 2";
    case PivotDiagnostic::class3_bracket:
      return "t2 must lie in [min, max) of class 3";
    case PivotDiagnostic::crossed_thresholds:
      return "estimated t1 is not below t2";
    default:
      return std::string(to_string(d));
  }
}

}  // namespace

double chi2_quantile(unsigned df, double p) {
  if (df == 0) throw Error(ErrorCategory::validation, "chi-squared needs df >= 1");
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorCategory::validation, "chi-squared quantile level must lie in (0, 1)");
  }
  return 2.0 * boost::math::gamma_p_inv(0.5 * df, p);
}

std::vector<double> interior_grid(std::size_t grid_n) {
  std::vector<double> grid(grid_n);
  for (std::size_t i = 0; i < grid_n; ++i) {
    grid[i] = static_cast<double>(i + 1) / static_cast<double>(grid_n + 1);
  }
  return grid;
}

std::size_t Region3D::member_count() const {
  std::size_t n = 0;
  for (auto m : membership) n += m;
  return n;
}

std::size_t Region2D::member_count() const {
  std::size_t n = 0;
  for (auto m : membership) n += m;
  return n;
}

namespace {

Region3D region3d_frame(const ThreeClassSample& x, ThresholdPair t, double alpha,
                        std::size_t grid_n, EcdfKind kind) {
  check_alpha(alpha);
  check_grid(grid_n);
  if (!(t.t1 < t.t2)) throw Error(ErrorCategory::validation, "thresholds must satisfy t1 < t2");
  if (auto d = check_tcf_domain(x, t); d != PivotDiagnostic::none) {
    throw Error(ErrorCategory::domain, domain_message(d), std::string(to_string(d)));
  }
  Region3D r;
  r.grid = interior_grid(grid_n);
  r.threshold_used = chi2_quantile(3, 1.0 - alpha);
  r.level = 1.0 - alpha;
  r.thresholds = t;
  if (kind == EcdfKind::smoothed) {
    r.point_estimate = {ecdf_eval_smoothed(x.class1, t.t1), p_hat_smoothed(x.class2, t),
                        1.0 - ecdf_eval_smoothed(x.class3, t.t2)};
  } else {
    r.point_estimate = {ecdf_eval(x.class1, t.t1), p_hat(x.class2, t),
                        1.0 - ecdf_eval(x.class3, t.t2)};
  }
  r.membership.assign(grid_n * grid_n * grid_n, 0);
  return r;
}

}  // namespace

Region3D region3d_tcf(const ThreeClassSample& x, ThresholdPair t, double alpha,
                      std::size_t grid_n, EcdfKind kind) {
  Region3D r = region3d_frame(x, t, alpha, grid_n, kind);
  const auto& g = r.grid;
  std::vector<PivotValue> d1(grid_n), d2(grid_n), d3(grid_n);
  for (std::size_t i = 0; i < grid_n; ++i) {
    d1[i] = tcf_term1(x, t.t1, g[i], kind);
    d2[i] = tcf_term2(x, t, g[i], kind);
    d3[i] = tcf_term3(x, t.t2, g[i], kind);
  }
  for (std::size_t i = 0; i < grid_n; ++i) {
    for (std::size_t j = 0; j < grid_n; ++j) {
      const PivotValue partial = add(d1[i], d2[j]);
      // The pivot only grows with the third term, so whole rows can be skipped.
      if (!partial.is_finite() || partial.value > r.threshold_used) continue;
      for (std::size_t k = 0; k < grid_n; ++k) {
        r.membership[(i * grid_n + j) * grid_n + k] =
            add(partial, d3[k]).value <= r.threshold_used;
      }
    }
  }
  return r;
}

Region3D region3d_tcf_pointwise(const ThreeClassSample& x, ThresholdPair t, double alpha,
                                std::size_t grid_n, EcdfKind kind) {
  Region3D r = region3d_frame(x, t, alpha, grid_n, kind);
  const auto& g = r.grid;
  for (std::size_t i = 0; i < grid_n; ++i) {
    for (std::size_t j = 0; j < grid_n; ++j) {
      for (std::size_t k = 0; k < grid_n; ++k) {
        r.membership[(i * grid_n + j) * grid_n + k] =
            ell_tcf_triple(x, t, {g[i], g[j], g[k]}, kind).value <= r.threshold_used;
      }
    }
  }
  return r;
}

ConfidenceInterval interval_tcf2_with_scale(const ThreeClassSample& x, double theta1,
                                            double theta3, double alpha, double w_hat) {
  check_alpha(alpha);
  check_open_unit(theta1, "theta1");
  check_open_unit(theta3, "theta3");
  check_scale(w_hat);
  const auto [t1, t2] = plug_in_thresholds(x, theta1, theta3);
  if (!(t1 < t2)) {
    throw Error(ErrorCategory::domain, domain_message(PivotDiagnostic::crossed_thresholds),
                "crossed_thresholds");
  }
  ConfidenceInterval ci;
  ci.level = 1.0 - alpha;
  ci.method_tag = "ELQB-TCF2";
  ci.w_hat = w_hat;
  ci.cutoff = chi2_quantile(1, 1.0 - alpha);
  ci.point_estimate = p_hat(x.class2, {t1, t2});

  auto mark_empty = [&](std::string why) {
    ci.status = IntervalStatus::empty;
    ci.diagnostic = std::move(why);
    ci.lower = ci.upper = ci.point_estimate;
    return ci;
  };

  // ell_star at its minimiser; nonzero when theta1 or theta3 is not an ECDF atom.
  const PivotValue at_estimate = ell_star_tcf2(x, theta1, ci.point_estimate, theta3);
  if (!at_estimate.is_finite()) return mark_empty(std::string(to_string(at_estimate.diagnostic)));
  const PivotValue c0 = add(tcf_term1(x, t1, theta1, EcdfKind::step),
                            tcf_term3(x, t2, theta3, EcdfKind::step));
  if (w_hat * c0.value > ci.cutoff) {
    return mark_empty("fixed theta1/theta3 incompatible with the data: w*c0 = " +
                      std::to_string(w_hat * c0.value) + " exceeds the cutoff");
  }
  const double p = ci.point_estimate;
  if (p <= 0.0 || p >= 1.0) {
    ci.status = IntervalStatus::point;
    ci.diagnostic = "empirical TCF2 on the boundary";
    ci.lower = ci.upper = p;
    return ci;
  }
  const std::size_t n2 = x.class2.size();
  std::tie(ci.lower, ci.upper) = solve_endpoints(
      [&](double v) { return binomial_deviance(n2, p, v); }, p, c0.value, w_hat, ci.cutoff);
  return ci;
}

ConfidenceInterval interval_tcf2(const ThreeClassSample& x, double theta1, double theta3,
                                 double alpha, const BootstrapOptions& options) {
  check_alpha(alpha);
  const ScaleEstimate scale = estimate_w_tcf2(x, theta1, theta3, options);
  ConfidenceInterval ci = interval_tcf2_with_scale(x, theta1, theta3, alpha, scale.w_hat);
  ci.scale = scale;
  return ci;
}

ConfidenceInterval interval_vus_with_scale(const ThreeClassSample& x, double alpha,
                                           double w_hat, bool ties) {
  check_alpha(alpha);
  check_scale(w_hat);
  const double gamma_hat = ties ? vus_estimate_ties(x) : vus_estimate(x);
  if (gamma_hat <= 0.0 || gamma_hat >= 1.0) {
    throw Error(ErrorCategory::boundary_estimate,
                "VUS estimate is " + std::to_string(gamma_hat) +
                    "; the pivot is undefined (try the ties estimator or more data)");
  }
  ConfidenceInterval ci;
  ci.level = 1.0 - alpha;
  ci.method_tag = ties ? "ELQB-VUS-ties" : "ELQB-VUS";
  ci.w_hat = w_hat;
  ci.cutoff = chi2_quantile(1, 1.0 - alpha);
  ci.point_estimate = gamma_hat;
  const std::size_t n = x.total_size();
  std::tie(ci.lower, ci.upper) = solve_endpoints(
      [&](double g) { return binomial_deviance(n, gamma_hat, g); }, gamma_hat, 0.0, w_hat,
      ci.cutoff);
  return ci;
}

ConfidenceInterval interval_vus(const ThreeClassSample& x, double alpha,
                                const BootstrapOptions& options, bool ties) {
  check_alpha(alpha);
  const ScaleEstimate scale = estimate_w_vus(x, ties, options);
  ConfidenceInterval ci = interval_vus_with_scale(x, alpha, scale.w_hat, ties);
  ci.scale = scale;
  return ci;
}

Region2D region2d_pair_with_scale(const ThreeClassSample& x, double theta1, double t2,
                                  double alpha, double w_hat, std::size_t grid_n,
                                  RngSeed mc_seed, std::size_t mc_draws) {
  check_alpha(alpha);
  check_open_unit(theta1, "theta1");
  check_grid(grid_n);
  if (!(w_hat >= 0.0) || !std::isfinite(w_hat)) {
    throw Error(ErrorCategory::validation, "scale w must be finite and >= 0");
  }
  Region2D r;
  r.t1_hat = empirical_quantile(x.class1, theta1);
  // Probe the domain with the empirical values; only the brackets matter here.
  const PivotValue probe = ell_star2_pair(x, theta1, 0.5, 0.5, t2);
  if (!probe.is_finite() && probe.diagnostic != PivotDiagnostic::infeasible_constraint) {
    throw Error(ErrorCategory::domain, domain_message(probe.diagnostic),
                std::string(to_string(probe.diagnostic)));
  }
  r.grid = interior_grid(grid_n);
  r.level = 1.0 - alpha;
  r.w_hat = w_hat;
  r.theta1_fixed = theta1;
  r.t2_fixed = t2;
  r.theta2_hat = p_hat(x.class2, {r.t1_hat, t2});
  r.theta3_hat = 1.0 - ecdf_eval(x.class3, t2);
  r.c_alpha_hat = mc_quantile_mixture(w_hat, alpha, mc_draws, mc_seed);
  r.membership.assign(grid_n * grid_n, 0);

  const PivotValue d1 = tcf_term1(x, r.t1_hat, theta1, EcdfKind::step);
  std::vector<PivotValue> d2(grid_n), d3(grid_n);
  for (std::size_t i = 0; i < grid_n; ++i) {
    d2[i] = tcf_term2(x, {r.t1_hat, t2}, r.grid[i], EcdfKind::step);
    d3[i] = tcf_term3(x, t2, r.grid[i], EcdfKind::step);
  }
  for (std::size_t i = 0; i < grid_n; ++i) {
    const PivotValue partial = add(d1, d2[i]);
    for (std::size_t k = 0; k < grid_n; ++k) {
      r.membership[i * grid_n + k] = add(partial, d3[k]).value <= r.c_alpha_hat;
    }
  }
  return r;
}

RngSeed mixture_seed(RngSeed seed) { return derive_seed(seed, {0x6d6978ULL}); }

Region2D region2d_pair(const ThreeClassSample& x, double theta1, double t2, double alpha,
                       const BootstrapOptions& options, std::size_t grid_n,
                       std::size_t mc_draws) {
  check_alpha(alpha);
  const ScaleEstimate scale = estimate_w_pair(x, theta1, t2, options);
  Region2D r = region2d_pair_with_scale(x, theta1, t2, alpha, scale.w_hat, grid_n,
                                        mixture_seed(options.seed), mc_draws);
  r.scale = scale;
  return r;
}

}  // namespace elroc
