#pragma once

#include <cstdint>

#include "tsbitlab/rational.hpp"

namespace tsbitlab {

/// Integer parameters of a Beta(a, b) distribution: a = ones seen + 1, b = zeros seen + 1.
struct BetaParams {
  std::int64_t a = 1;
  std::int64_t b = 1;

  BetaParams() = default;
  BetaParams(std::int64_t a_, std::int64_t b_);

  /// Trials of the binomial that shares this CDF: a + b - 1.
  std::int64_t trials() const { return a + b - 1; }
};

/// Both tails of a Beta CDF at one point. `cdf + sf == 1` up to rounding, and
/// whichever of the two is below 1/2 carries full relative precision.
struct BetaTails {
  double cdf = 0.0;
  double sf = 1.0;
};

/// F_{Beta(a,b)}(x) = 1 - F_{Bin(a+b-1, x)}(a-1), summed from the smaller binomial tail.
/// Throws DomainError when x is outside [0,1].
double beta_cdf(BetaParams params, double x);

/// Both tails at once. `x_complement` must equal 1 - x; passing it separately keeps
/// 1 - x exact when x comes from a rational.
BetaTails beta_tails(BetaParams params, double x, double x_complement);
BetaTails beta_tails(BetaParams params, double x);

/// Exact F_{Beta(a,b)}(x) for rational x in [0,1]:
/// sum_{j=a}^{a+b-1} C(a+b-1, j) x^j (1-x)^{a+b-1-j}.
Rational beta_cdf_rational(BetaParams params, const Rational& x);

/// Exact 1 / B(a, b) = (a+b-1)! / ((a-1)! (b-1)!).
BigInt inverse_beta_function(BetaParams params);

/// log Pr[Bin(n, p) = k], with 1 - p supplied as `p_complement`.
/// Uses the saddle-point expansion, so it stays accurate for large n.
double log_binom_pmf(std::int64_t k, std::int64_t n, double p, double p_complement);

/// Running value of F_{Beta(a,b)}(x) for fixed x, advanced one parameter at a time.
///
/// The step from (a,b) to (a+1,b) subtracts K/a and the step to (a,b+1) adds K/b,
/// where K = x^a (1-x)^b / B(a,b). K is updated multiplicatively and moves to log
/// space once it drops below 1e-300. The smaller of cdf / sf is the tracked quantity;
/// when repeated subtraction has eaten more than six bits of it since the last
/// anchor, it is re-evaluated directly from the binomial tail (a short sum in that
/// regime), which keeps the relative error bounded on arbitrarily long walks.
class IncrementalBetaCdf {
 public:
  /// Starts at Beta(1,1), where F(x) = x.
  explicit IncrementalBetaCdf(double x);
  IncrementalBetaCdf(double x, double x_complement);
  /// Starts at arbitrary parameters, evaluated directly once.
  IncrementalBetaCdf(BetaParams start, double x, double x_complement);

  IncrementalBetaCdf& inc_a();
  IncrementalBetaCdf& inc_b();

  BetaParams params() const { return {a_, b_}; }
  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }
  double x() const { return x_; }

  double cdf() const { return small_is_cdf_ ? small_ : 1.0 - small_; }
  double sf() const { return small_is_cdf_ ? 1.0 - small_ : small_; }

  /// K = x^a (1-x)^b / B(a,b); 0 when it underflows a double.
  double kernel() const;
  double log_kernel() const;
  bool kernel_in_log_space() const { return kernel_in_log_; }

  /// Number of direct re-evaluations triggered so far.
  std::int64_t refreshes() const { return refreshes_; }

 private:
  void apply(double delta_cdf);
  void multiply_kernel(double log_factor, double factor);
  void refresh();
  void set_from(const BetaTails& tails);

  std::int64_t a_ = 1;
  std::int64_t b_ = 1;
  double x_;
  double xc_;
  double log_x_;
  double log_xc_;

  double small_ = 0.0;
  bool small_is_cdf_ = true;
  double anchor_ = 0.0;

  double kernel_ = 0.0;
  double log_kernel_ = 0.0;
  bool kernel_in_log_ = false;

  std::int64_t refreshes_ = 0;
};

/// Truncated sum_{i >= s} F_{Beta(i+1, n+1)}(p) with s = floor(p n / (1-p)) + 1.
struct TailSumQuery {
  std::int64_t n = 1;
  double p = 0.5;
  /// Upper limit on the number of summands.
  std::int64_t terms = 1'000'000;
};

struct TailSumResult {
  double value = 0.0;
  /// Bound on the omitted remainder: last term times the geometric factor 1/(1-r),
  /// r being the ratio of the last two terms. Infinite if the terms were not yet decreasing.
  double truncation_bound = 0.0;
  std::int64_t first_index = 0;
  std::int64_t terms_used = 0;
};

/// Summands below 1e-15 stop the sum early.
TailSumResult tail_sum(const TailSumQuery& query);

/// sum_{i >= n+1} exp(-(i-(n+1))^2 / (2(i+n+1))), summed until terms drop below 1e-15.
double exp_sum(std::int64_t n);

/// Closed-form bracket of exp_sum(n): [sqrt(pi (n+1)), 1 + sqrt(2 pi (n+1)) + 1/(1 - e^{-1/4})].
struct ExpSumBounds {
  double lower;
  double upper;
};
ExpSumBounds exp_sum_bounds(std::int64_t n);

/// Pr[X = n] for X ~ Bin(floor(n/p), p), with the Stirling approximation of the same mass.
struct PointMass {
  std::int64_t trials = 0;       ///< floor(n / p)
  double pmf = 0.0;              ///< from log-factorials
  double stirling = 0.0;         ///< C(m,n) replaced by its Stirling form
  double ratio = 0.0;            ///< pmf / stirling
};

/// Requires n >= 2p/(1-p); throws DomainError otherwise.
PointMass binom_point_mass(std::int64_t n, double p);

/// C(m, n) divided by sqrt(m / (2 pi n (m-n))) (m/n)^n (m/(m-n))^(m-n), for 0 < n < m.
double stirling_binomial_ratio(std::int64_t m, std::int64_t n);

}  // namespace tsbitlab
