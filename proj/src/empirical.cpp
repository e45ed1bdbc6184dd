#include "elroc/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "elroc/error.hpp"

namespace elroc {

ClassSample::ClassSample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw Error(ErrorCategory::validation, "class sample must be nonempty");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCategory::validation, "class sample contains a non-finite value");
    }
  }
  std::sort(values_.begin(), values_.end());
  mean_ = std::accumulate(values_.begin(), values_.end(), 0.0) /
          static_cast<double>(values_.size());
}

std::size_t ClassSample::count_at_most(double t) const {
  return static_cast<std::size_t>(
      std::upper_bound(values_.begin(), values_.end(), t) - values_.begin());
}

std::size_t ClassSample::count_below(double t) const {
  return static_cast<std::size_t>(
      std::lower_bound(values_.begin(), values_.end(), t) - values_.begin());
}

bool ThreeClassSample::means_ordered() const {
  return class1.mean() < class2.mean() && class2.mean() < class3.mean();
}

double ecdf_eval(const ClassSample& s, double t) {
  return static_cast<double>(s.count_at_most(t)) / static_cast<double>(s.size());
}

double ecdf_eval_smoothed(const ClassSample& s, double t) {
  const std::size_t n = s.size();
  const std::size_t c = s.count_at_most(t);
  if (c == 0) return 0.0;
  if (c == n) return 1.0;
  const auto v = s.values();
  // t lies in [v[c-1], v[c]); v[c] is the next distinct knot.
  const double lo = v[c - 1];
  const double hi = v[c];
  const double f_lo = static_cast<double>(c) / static_cast<double>(n);
  const double f_hi = static_cast<double>(s.count_at_most(hi)) / static_cast<double>(n);
  if (t == lo) return f_lo;
  return f_lo + (f_hi - f_lo) * (t - lo) / (hi - lo);
}

double empirical_quantile(const ClassSample& s, double p) {
  if (!(p > 0.0) || p > 1.0) {
    throw Error(ErrorCategory::validation,
                "quantile level must lie in (0, 1], got " + std::to_string(p));
  }
  const double n = static_cast<double>(s.size());
  // The slack absorbs representation error in products such as 0.7 * 10.
  auto k = static_cast<std::size_t>(std::ceil(n * p - 1e-9));
  k = std::clamp<std::size_t>(k, 1, s.size());
  return s.values()[k - 1];
}

double empirical_quantile_smoothed(const ClassSample& s, double p) {
  const double hi = empirical_quantile(s, p);
  const auto v = s.values();
  const std::size_t j = s.count_below(hi);
  if (j == 0) return hi;
  const double n = static_cast<double>(s.size());
  const double f_lo = static_cast<double>(j) / n;
  const double f_hi = static_cast<double>(s.count_at_most(hi)) / n;
  const double lo = v[j - 1];
  const double frac = std::clamp((p - f_lo) / (f_hi - f_lo), 0.0, 1.0);
  return lo + frac * (hi - lo);
}

double p_hat(const ClassSample& s2, ThresholdPair t) {
  return ecdf_eval(s2, t.t2) - ecdf_eval(s2, t.t1);
}

double p_hat_smoothed(const ClassSample& s2, ThresholdPair t) {
  return ecdf_eval_smoothed(s2, t.t2) - ecdf_eval_smoothed(s2, t.t1);
}

namespace {

__extension__ using Wide = unsigned __int128;

double ratio(Wide numerator, Wide denominator) {
  return static_cast<double>(static_cast<long double>(numerator) /
                             static_cast<long double>(denominator));
}

}  // namespace

double vus_estimate(const ThreeClassSample& x) {
  const auto& c1 = x.class1;
  const auto& c3 = x.class3;
  Wide count = 0;
  for (double y : x.class2.values()) {
    const Wide below = c1.count_below(y);
    const Wide above = c3.size() - c3.count_at_most(y);
    count += below * above;
  }
  const Wide denom = Wide(c1.size()) * x.class2.size() * c3.size();
  return ratio(count, denom);
}

double vus_estimate_ties(const ThreeClassSample& x) {
  const auto& c1 = x.class1;
  const auto& c3 = x.class3;
  // Accumulated in units of 1/6 so the sum stays an integer.
  Wide sixths = 0;
  for (double y : x.class2.values()) {
    const Wide below = c1.count_below(y);
    const Wide equal1 = c1.count_at_most(y) - c1.count_below(y);
    const Wide above = c3.size() - c3.count_at_most(y);
    const Wide equal3 = c3.count_at_most(y) - c3.count_below(y);
    sixths += 6 * below * above + 3 * equal1 * above + 3 * below * equal3 +
              equal1 * equal3;
  }
  const Wide denom = Wide(6) * c1.size() * x.class2.size() * c3.size();
  return ratio(sixths, denom);
}

double hum_estimate(std::span<const ClassSample> samples) {
  if (samples.size() < 2) {
    throw Error(ErrorCategory::validation, "HUM needs at least two classes");
  }
  // chains[i]: number of strictly increasing tuples ending at the i-th value
  // of the current class.
  std::vector<long double> chains(samples[0].size(), 1.0L);
  for (std::size_t c = 1; c < samples.size(); ++c) {
    const auto prev = samples[c - 1].values();
    std::vector<long double> prefix(prev.size() + 1, 0.0L);
    for (std::size_t i = 0; i < prev.size(); ++i) prefix[i + 1] = prefix[i] + chains[i];
    const auto cur = samples[c].values();
    std::vector<long double> next(cur.size());
    for (std::size_t j = 0; j < cur.size(); ++j) {
      const auto below = std::lower_bound(prev.begin(), prev.end(), cur[j]) - prev.begin();
      next[j] = prefix[static_cast<std::size_t>(below)];
    }
    chains = std::move(next);
  }
  long double total = 0.0L;
  for (long double v : chains) total += v;
  long double denom = 1.0L;
  for (const auto& s : samples) denom *= static_cast<long double>(s.size());
  return static_cast<double>(total / denom);
}

}  // namespace elroc
