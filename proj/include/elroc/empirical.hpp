#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace elroc {

// Test results observed in one class, kept sorted ascending.
class ClassSample {
 public:
  // Throws Error(validation) when `values` is empty or holds a non-finite
  // entry.
  explicit ClassSample(std::vector<double> values);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }
  double mean() const { return mean_; }

  // Number of observations <= t.
  std::size_t count_at_most(double t) const;
  // Number of observations < t.
  std::size_t count_below(double t) const;

 private:
  std::vector<double> values_;
  double mean_ = 0.0;
};

struct ThreeClassSample {
  ClassSample class1;
  ClassSample class2;
  ClassSample class3;

  std::size_t total_size() const {
    return class1.size() + class2.size() + class3.size();
  }
  // mean(class1) < mean(class2) < mean(class3)
  bool means_ordered() const;
};

struct TcfTriple {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double theta3 = 0.0;
};

struct ThresholdPair {
  double t1 = 0.0;
  double t2 = 0.0;
};

// Right-continuous step ECDF, #{y <= t} / n.
double ecdf_eval(const ClassSample& s, double t);

// Piecewise-linear ECDF through the knots (y_(i), i/n), one knot per distinct
// value (at the largest i). Zero below the minimum, one from the maximum on;
// agrees with ecdf_eval at every observed value.
double ecdf_eval_smoothed(const ClassSample& s, double t);

// Type-1 inverse of the step ECDF: the smallest order statistic y_(i) with
// i/n >= p. Requires 0 < p <= 1.
double empirical_quantile(const ClassSample& s, double p);

// Inverse of the smoothed ECDF: the smallest t with ecdf_eval_smoothed(s, t)
// >= p. Equals p exactly at the result unless p falls inside the jump at the
// minimum. Requires 0 < p <= 1.
double empirical_quantile_smoothed(const ClassSample& s, double p);

// Proportion of class-2 values in (t1, t2]. Requires t1 < t2.
double p_hat(const ClassSample& s2, ThresholdPair t);
double p_hat_smoothed(const ClassSample& s2, ThresholdPair t);

// Fraction of triples with y1 < y2 < y3. O(n log n); equals the triple sum
// exactly.
double vus_estimate(const ThreeClassSample& x);

// Tie-corrected estimator: weight 1/2 for y1 = y2 < y3 and y1 < y2 = y3,
// weight 1/6 for y1 = y2 = y3.
double vus_estimate_ties(const ThreeClassSample& x);

// Hypervolume under the ROC manifold: fraction of M-tuples in strictly
// increasing order. Requires at least two samples.
double hum_estimate(std::span<const ClassSample> samples);

}  // namespace elroc
