#include "elroc/pivots.hpp"

#include <cmath>

#include "elroc/error.hpp"

namespace elroc {

std::string_view to_string(PivotDiagnostic d) {
  switch (d) {
    case PivotDiagnostic::none: return "none";
    case PivotDiagnostic::class1_bracket: return "class1_bracket";
    case PivotDiagnostic::class2_bracket: return "class2_bracket";
    case PivotDiagnostic::class3_bracket: return "class3_bracket";
    case PivotDiagnostic::crossed_thresholds: return "crossed_thresholds";
    case PivotDiagnostic::infeasible_constraint: return "infeasible_constraint";
  }
  return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// p log(p / q), with 0 log 0 = 0.
double xlogx_ratio(double p, double q) {
  if (p == 0.0) return 0.0;
  return p * std::log(p / q);
}

bool in_bracket(const ClassSample& s, double t) { return s.min() <= t && t < s.max(); }

double cdf(const ClassSample& s, double t, EcdfKind kind) {
  return kind == EcdfKind::step ? ecdf_eval(s, t) : ecdf_eval_smoothed(s, t);
}

PivotValue add(PivotValue a, PivotValue b) {
  if (!a.is_finite()) return a;
  if (!b.is_finite()) return b;
  return {a.value + b.value, PivotDiagnostic::none};
}

// Three-deviance form at thresholds (t1, t2), no bracket checks.
PivotValue three_terms(const ThreeClassSample& x, ThresholdPair t, TcfTriple theta,
                       EcdfKind kind) {
  PivotValue sum = tcf_term1(x, t.t1, theta.theta1, kind);
  sum = add(sum, tcf_term2(x, t, theta.theta2, kind));
  return add(sum, tcf_term3(x, t.t2, theta.theta3, kind));
}

}  // namespace

double binomial_deviance(std::size_t n, double phat, double theta) {
  if (theta <= 0.0 || theta >= 1.0) {
    return phat == theta ? 0.0 : kInf;
  }
  const double value = 2.0 * static_cast<double>(n) *
                       (xlogx_ratio(phat, theta) + xlogx_ratio(1.0 - phat, 1.0 - theta));
  return value < 0.0 ? 0.0 : value;
}

PivotValue el_binomial(std::size_t n, double phat, double theta) {
  if ((phat <= 0.0 || phat >= 1.0) && phat != theta) {
    return PivotValue::infinite(PivotDiagnostic::infeasible_constraint);
  }
  const double d = binomial_deviance(n, phat, theta);
  if (d == kInf) return PivotValue::infinite(PivotDiagnostic::infeasible_constraint);
  return {d, PivotDiagnostic::none};
}

PivotDiagnostic check_tcf_domain(const ThreeClassSample& x, ThresholdPair t) {
  if (!in_bracket(x.class1, t.t1)) return PivotDiagnostic::class1_bracket;
  if (!in_bracket(x.class2, t.t1) && !in_bracket(x.class2, t.t2)) {
    return PivotDiagnostic::class2_bracket;
  }
  if (!in_bracket(x.class3, t.t2)) return PivotDiagnostic::class3_bracket;
  return PivotDiagnostic::none;
}

PivotValue tcf_term1(const ThreeClassSample& x, double t1, double theta1, EcdfKind kind) {
  return el_binomial(x.class1.size(), cdf(x.class1, t1, kind), theta1);
}

PivotValue tcf_term2(const ThreeClassSample& x, ThresholdPair t, double theta2,
                     EcdfKind kind) {
  const double p = kind == EcdfKind::step ? p_hat(x.class2, t) : p_hat_smoothed(x.class2, t);
  return el_binomial(x.class2.size(), p, theta2);
}

PivotValue tcf_term3(const ThreeClassSample& x, double t2, double theta3, EcdfKind kind) {
  // The class-3 constraint is on F3(t2) = 1 - theta3.
  return el_binomial(x.class3.size(), cdf(x.class3, t2, kind), 1.0 - theta3);
}

PivotValue ell_tcf_triple(const ThreeClassSample& x, ThresholdPair t, TcfTriple theta,
                          EcdfKind kind) {
  if (!(t.t1 < t.t2)) {
    throw Error(ErrorCategory::validation, "thresholds must satisfy t1 < t2");
  }
  if (auto d = check_tcf_domain(x, t); d != PivotDiagnostic::none) {
    return PivotValue::infinite(d);
  }
  return three_terms(x, t, theta, kind);
}

PlugInThresholds plug_in_thresholds(const ThreeClassSample& x, double theta1, double theta3,
                                    EcdfKind kind) {
  if (kind == EcdfKind::smoothed) {
    return {empirical_quantile_smoothed(x.class1, theta1),
            empirical_quantile_smoothed(x.class3, 1.0 - theta3)};
  }
  return {empirical_quantile(x.class1, theta1), empirical_quantile(x.class3, 1.0 - theta3)};
}

PivotValue ell_star_tcf2(const ThreeClassSample& x, double theta1, double theta2,
                         double theta3, EcdfKind kind) {
  if (!(theta1 > 0.0 && theta1 < 1.0 && theta3 > 0.0 && theta3 < 1.0)) {
    throw Error(ErrorCategory::validation, "theta1 and theta3 must lie in (0, 1)");
  }
  if (!(theta2 >= 0.0 && theta2 <= 1.0)) {
    throw Error(ErrorCategory::validation, "theta2 must lie in [0, 1]");
  }
  const auto [t1, t2] = plug_in_thresholds(x, theta1, theta3, kind);
  if (!(t1 < t2)) return PivotValue::infinite(PivotDiagnostic::crossed_thresholds);
  if (!in_bracket(x.class2, t1) && !in_bracket(x.class2, t2)) {
    return PivotValue::infinite(PivotDiagnostic::class2_bracket);
  }
  return three_terms(x, {t1, t2}, {theta1, theta2, theta3}, kind);
}

PivotValue ell_vus(double gamma_hat, std::size_t n, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw Error(ErrorCategory::validation, "hypothesised VUS must lie in (0, 1)");
  }
  if (n < 3) throw Error(ErrorCategory::validation, "VUS pivot needs n >= 3");
  return el_binomial(n, gamma_hat, gamma);
}

PivotValue ell_star2_pair(const ThreeClassSample& x, double theta1, double theta2,
                          double theta3, double t2, EcdfKind kind) {
  if (!(theta1 > 0.0 && theta1 < 1.0)) {
    throw Error(ErrorCategory::validation, "theta1 must lie in (0, 1)");
  }
  const double t1 = empirical_quantile(x.class1, theta1);
  if (!(t1 < t2)) return PivotValue::infinite(PivotDiagnostic::crossed_thresholds);
  if (!in_bracket(x.class2, t1) && !in_bracket(x.class2, t2)) {
    return PivotValue::infinite(PivotDiagnostic::class2_bracket);
  }
  if (!in_bracket(x.class3, t2)) return PivotValue::infinite(PivotDiagnostic::class3_bracket);
  return three_terms(x, {t1, t2}, {theta1, theta2, theta3}, kind);
}

PivotValue ell_plus_symmetric(const ThreeClassSample& x, double theta, ThresholdPair t) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw Error(ErrorCategory::validation, "common TCF must lie in (0, 1)");
  }
  return ell_tcf_triple(x, t, {theta, theta, theta});
}

}  // namespace elroc
