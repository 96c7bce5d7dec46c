#include "tsbitlab/beta_math.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "tsbitlab/errors.hpp"

namespace tsbitlab {

namespace {

constexpr double kLn2Pi = 1.8378770664093454835606594728112;
constexpr double kKernelFloor = 1e-300;
constexpr double kLogKernelCeil = -644.7238260383328;  // log(1e-280)
// Tracked tail value may shrink by this factor through subtraction before
// it is re-evaluated directly.
constexpr double kCancellationFactor = 64.0;
constexpr double kSumRelTol = 1e-17;

// Stirling-series remainder: log(n!) - [(n + 1/2) log n - n + log(sqrt(2 pi))].
double stirlerr(double n) {
  constexpr double S0 = 1.0 / 12;
  constexpr double S1 = 1.0 / 360;
  constexpr double S2 = 1.0 / 1260;
  constexpr double S3 = 1.0 / 1680;
  constexpr double S4 = 1.0 / 1188;
  if (n <= 15.0) return std::lgamma(n + 1.0) - (n + 0.5) * std::log(n) + n - 0.5 * kLn2Pi;
  const double nn = n * n;
  if (n > 500) return (S0 - S1 / nn) / n;
  if (n > 80) return (S0 - (S1 - S2 / nn) / nn) / n;
  if (n > 35) return (S0 - (S1 - (S2 - S3 / nn) / nn) / nn) / n;
  return (S0 - (S1 - (S2 - (S3 - S4 / nn) / nn) / nn) / nn) / n;
}

// Deviance term x log(x/np) + np - x, computed without cancellation when x ~ np.
double bd0(double x, double np) {
  if (std::abs(x - np) < 0.1 * (x + np)) {
    double v = (x - np) / (x + np);
    double s = (x - np) * v;
    double ej = 2 * x * v;
    v *= v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v;
      const double s1 = s + ej / (2 * j + 1);
      if (s1 == s) return s1;
      s = s1;
    }
    return s;
  }
  return x * std::log(x / np) + np - x;
}

void check_unit_interval(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError(std::string(what) + " must lie in [0,1], got " + std::to_string(x));
  }
}

// Floor of a real that is frequently an integer up to rounding.
std::int64_t robust_floor(double v) {
  const double r = std::round(v);
  if (std::abs(v - r) <= 1e-9 * std::max(1.0, std::abs(v))) return static_cast<std::int64_t>(r);
  return static_cast<std::int64_t>(std::floor(v));
}

// Sums pmf terms of Bin(n, x) from `start` away from the mode (upward when `upward`).
// `log_first` is log pmf(start).
double tail_series(double log_first, std::int64_t start, std::int64_t n, double x, double xc, bool upward) {
  const double first = std::exp(log_first);
  if (first == 0.0) return 0.0;
  const double odds = x / xc;
  double term = 1.0;
  double sum = 1.0;
  if (upward) {
    for (std::int64_t j = start; j < n; ++j) {
      term *= static_cast<double>(n - j) / static_cast<double>(j + 1) * odds;
      sum += term;
      if (term < kSumRelTol * sum) break;
    }
  } else {
    for (std::int64_t j = start; j > 0; --j) {
      term *= static_cast<double>(j) / static_cast<double>(n - j + 1) / odds;
      sum += term;
      if (term < kSumRelTol * sum) break;
    }
  }
  return first * sum;
}

// Sum the lower tail Pr[X <= a-1] when a-1 sits below the binomial mean.
bool sum_lower_tail(BetaParams params, double x) {
  return static_cast<double>(params.a - 1) < static_cast<double>(params.trials()) * x;
}

}  // namespace

BetaParams::BetaParams(std::int64_t a_, std::int64_t b_) : a(a_), b(b_) {
  if (a < 1 || b < 1) {
    throw DomainError("Beta parameters must be positive integers, got (" + std::to_string(a) + ", " +
                      std::to_string(b) + ")");
  }
}

double log_binom_pmf(std::int64_t k, std::int64_t n, double p, double p_complement) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  const double q = p_complement;
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  if (p == 0.0) return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (q == 0.0) return k == n ? 0.0 : -std::numeric_limits<double>::infinity();
  if (k == 0) {
    if (n == 0) return 0.0;
    return p < 0.1 ? -bd0(nd, nd * q) - nd * p : nd * std::log(q);
  }
  if (k == n) return q < 0.1 ? -bd0(nd, nd * p) - nd * q : nd * std::log(p);
  const double lc = stirlerr(nd) - stirlerr(kd) - stirlerr(nd - kd) - bd0(kd, nd * p) - bd0(nd - kd, nd * q);
  const double lf = kLn2Pi + std::log(kd) + std::log1p(-kd / nd);
  return lc - 0.5 * lf;
}

BetaTails beta_tails(BetaParams params, double x, double x_complement) {
  check_unit_interval(x, "x");
  check_unit_interval(x_complement, "1 - x");
  if (x == 0.0) return {0.0, 1.0};
  if (x_complement == 0.0) return {1.0, 0.0};
  const std::int64_t n = params.trials();
  if (sum_lower_tail(params, x)) {
    const double lower =
        tail_series(log_binom_pmf(params.a - 1, n, x, x_complement), params.a - 1, n, x, x_complement, false);
    return {1.0 - lower, lower};
  }
  const double upper = tail_series(log_binom_pmf(params.a, n, x, x_complement), params.a, n, x, x_complement, true);
  return {upper, 1.0 - upper};
}

BetaTails beta_tails(BetaParams params, double x) { return beta_tails(params, x, 1.0 - x); }

double beta_cdf(BetaParams params, double x) { return beta_tails(params, x).cdf; }

Rational beta_cdf_rational(BetaParams params, const Rational& x) {
  if (x < 0 || x > 1) throw DomainError("x must lie in [0,1], got " + x.get_str());
  const std::int64_t n = params.trials();
  const BigInt u = x.get_num();
  const BigInt v = x.get_den();
  const BigInt w = v - u;
  const auto un = static_cast<unsigned long>(n);
  const auto ua = static_cast<unsigned long>(params.a);

  // w^(n-j) for j = n down to a.
  std::vector<BigInt> w_pow(un - ua + 1);
  w_pow[0] = 1;
  for (std::size_t i = 1; i < w_pow.size(); ++i) w_pow[i] = w_pow[i - 1] * w;

  BigInt u_pow;
  mpz_pow_ui(u_pow.get_mpz_t(), u.get_mpz_t(), ua);
  BigInt binom;
  mpz_bin_uiui(binom.get_mpz_t(), un, ua);

  BigInt numer = 0;
  for (unsigned long j = ua; j <= un; ++j) {
    numer += binom * u_pow * w_pow[un - j];
    u_pow *= u;
    // C(n, j+1) = C(n, j) (n - j) / (j + 1), exact at every step.
    binom *= (un - j);
    mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), j + 1);
  }
  BigInt denom;
  mpz_pow_ui(denom.get_mpz_t(), v.get_mpz_t(), un);
  Rational out(numer, denom);
  out.canonicalize();
  return out;
}

BigInt inverse_beta_function(BetaParams params) {
  BigInt c;
  mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(params.trials()), static_cast<unsigned long>(params.a));
  return c * params.a;
}

// ---------------------------------------------------------------------------
// IncrementalBetaCdf

IncrementalBetaCdf::IncrementalBetaCdf(double x) : IncrementalBetaCdf(x, 1.0 - x) {}

IncrementalBetaCdf::IncrementalBetaCdf(double x, double x_complement) : x_(x), xc_(x_complement) {
  check_unit_interval(x, "x");
  check_unit_interval(x_complement, "1 - x");
  log_x_ = std::log(x_);
  log_xc_ = std::log(xc_);
  // F_{Beta(1,1)}(x) = x.
  if (x_ <= xc_) {
    small_ = x_;
    small_is_cdf_ = true;
  } else {
    small_ = xc_;
    small_is_cdf_ = false;
  }
  anchor_ = small_;
  kernel_ = x_ * xc_;
}

IncrementalBetaCdf::IncrementalBetaCdf(BetaParams start, double x, double x_complement)
    : a_(start.a), b_(start.b), x_(x), xc_(x_complement) {
  set_from(beta_tails(start, x, x_complement));
  log_x_ = std::log(x_);
  log_xc_ = std::log(xc_);
  if (x_ == 0.0 || xc_ == 0.0) {
    kernel_ = 0.0;
    return;
  }
  const double ad = static_cast<double>(a_);
  const double bd = static_cast<double>(b_);
  const double log_inv_beta = std::lgamma(ad + bd) - std::lgamma(ad) - std::lgamma(bd);
  const double lk = ad * log_x_ + bd * log_xc_ + log_inv_beta;
  if (lk > std::log(kKernelFloor)) {
    kernel_ = std::exp(lk);
  } else {
    kernel_in_log_ = true;
    log_kernel_ = lk;
  }
}

double IncrementalBetaCdf::kernel() const { return kernel_in_log_ ? std::exp(log_kernel_) : kernel_; }

double IncrementalBetaCdf::log_kernel() const { return kernel_in_log_ ? log_kernel_ : std::log(kernel_); }

void IncrementalBetaCdf::multiply_kernel(double log_factor, double factor) {
  if (kernel_in_log_) {
    log_kernel_ += log_factor;
    if (log_kernel_ > kLogKernelCeil) {
      kernel_in_log_ = false;
      kernel_ = std::exp(log_kernel_);
    }
    return;
  }
  if (kernel_ == 0.0) return;  // x in {0, 1}
  const double next = kernel_ * factor;
  if (next < kKernelFloor) {
    kernel_in_log_ = true;
    log_kernel_ = std::log(kernel_) + log_factor;
  } else {
    kernel_ = next;
  }
}

IncrementalBetaCdf& IncrementalBetaCdf::inc_a() {
  const double ad = static_cast<double>(a_);
  const double sum = static_cast<double>(a_ + b_);
  const double delta = kernel_in_log_ ? std::exp(log_kernel_ - std::log(ad)) : kernel_ / ad;
  const double factor = x_ * sum / ad;
  multiply_kernel(log_x_ + std::log(sum) - std::log(ad), factor);
  ++a_;
  apply(-delta);
  return *this;
}

IncrementalBetaCdf& IncrementalBetaCdf::inc_b() {
  const double bd = static_cast<double>(b_);
  const double sum = static_cast<double>(a_ + b_);
  const double delta = kernel_in_log_ ? std::exp(log_kernel_ - std::log(bd)) : kernel_ / bd;
  const double factor = xc_ * sum / bd;
  multiply_kernel(log_xc_ + std::log(sum) - std::log(bd), factor);
  ++b_;
  apply(delta);
  return *this;
}

void IncrementalBetaCdf::apply(double delta_cdf) {
  const double delta = small_is_cdf_ ? delta_cdf : -delta_cdf;
  if (delta >= 0.0) {
    small_ += delta;
    anchor_ = std::max(anchor_, small_);
    if (small_ > 0.5) {
      small_ = 1.0 - small_;
      small_is_cdf_ = !small_is_cdf_;
      anchor_ = small_;
    }
    return;
  }
  small_ += delta;
  if (small_ <= 0.0 || small_ * kCancellationFactor < anchor_) refresh();
}

void IncrementalBetaCdf::refresh() {
  ++refreshes_;
  if (x_ == 0.0 || xc_ == 0.0) {
    set_from(beta_tails({a_, b_}, x_, xc_));
    return;
  }
  // The boundary pmf terms follow from the kernel: pmf(a) = K / (a (1-x)), pmf(a-1) = K / (b x).
  const BetaParams params{a_, b_};
  const std::int64_t n = params.trials();
  const double lk = log_kernel();
  if (sum_lower_tail(params, x_)) {
    const double lower = tail_series(lk - std::log(static_cast<double>(b_)) - log_x_, a_ - 1, n, x_, xc_, false);
    set_from({1.0 - lower, lower});
  } else {
    const double upper = tail_series(lk - std::log(static_cast<double>(a_)) - log_xc_, a_, n, x_, xc_, true);
    set_from({upper, 1.0 - upper});
  }
}

void IncrementalBetaCdf::set_from(const BetaTails& tails) {
  if (tails.cdf <= tails.sf) {
    small_ = tails.cdf;
    small_is_cdf_ = true;
  } else {
    small_ = tails.sf;
    small_is_cdf_ = false;
  }
  anchor_ = small_;
}

// ---------------------------------------------------------------------------
// Tail sums and bounds

TailSumResult tail_sum(const TailSumQuery& query) {
  if (query.n < 1) throw DomainError("tail_sum requires n >= 1");
  if (!(query.p > 0.0 && query.p < 1.0)) throw DomainError("tail_sum requires p in (0,1)");
  if (query.terms < 1) throw DomainError("tail_sum requires terms >= 1");

  const double p = query.p;
  const double pc = 1.0 - p;
  TailSumResult out;
  out.first_index = robust_floor(p / pc * static_cast<double>(query.n)) + 1;

  IncrementalBetaCdf walk({out.first_index + 1, query.n + 1}, p, pc);
  double prev = 0.0;
  double last = 0.0;
  for (std::int64_t used = 0; used < query.terms; ++used) {
    prev = last;
    last = walk.cdf();
    out.value += last;
    ++out.terms_used;
    if (last < 1e-15) break;
    walk.inc_a();
  }
  if (out.terms_used >= 2 && prev > 0.0 && last < prev) {
    const double r = last / prev;
    out.truncation_bound = last * r / (1.0 - r);
  } else if (last > 0.0) {
    out.truncation_bound = std::numeric_limits<double>::infinity();
  }
  return out;
}

double exp_sum(std::int64_t n) {
  if (n < 1) throw DomainError("exp_sum requires n >= 1");
  const double shift = 2.0 * static_cast<double>(n + 1);
  double sum = 0.0;
  for (std::int64_t j = 0;; ++j) {
    const double jd = static_cast<double>(j);
    const double term = std::exp(-jd * jd / (2.0 * (jd + shift)));
    sum += term;
    if (term < 1e-15) break;
  }
  return sum;
}

ExpSumBounds exp_sum_bounds(std::int64_t n) {
  const double n1 = static_cast<double>(n + 1);
  const double pi = std::numbers::pi;
  return {std::sqrt(pi * n1), 1.0 + std::sqrt(2.0 * pi * n1) + 1.0 / (1.0 - std::exp(-0.25))};
}

namespace {

double log_choose(std::int64_t m, std::int64_t n) {
  return std::lgamma(static_cast<double>(m) + 1) - std::lgamma(static_cast<double>(n) + 1) -
         std::lgamma(static_cast<double>(m - n) + 1);
}

double log_stirling_choose(std::int64_t m, std::int64_t n) {
  const double md = static_cast<double>(m);
  const double nd = static_cast<double>(n);
  const double rd = md - nd;
  return 0.5 * (std::log(md) - kLn2Pi - std::log(nd) - std::log(rd)) + nd * std::log(md / nd) +
         rd * std::log(md / rd);
}

}  // namespace

double stirling_binomial_ratio(std::int64_t m, std::int64_t n) {
  if (n <= 0 || n >= m) throw DomainError("Stirling form of C(m,n) needs 0 < n < m");
  return std::exp(log_choose(m, n) - log_stirling_choose(m, n));
}

PointMass binom_point_mass(std::int64_t n, double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("binom_point_mass requires p in (0,1)");
  if (static_cast<double>(n) * (1.0 - p) < 2.0 * p * (1.0 - 1e-12)) {
    throw DomainError("binom_point_mass requires n >= 2p/(1-p)");
  }
  PointMass out;
  out.trials = robust_floor(static_cast<double>(n) / p);
  const std::int64_t m = out.trials;
  const double weights = static_cast<double>(n) * std::log(p) + static_cast<double>(m - n) * std::log1p(-p);
  const double log_exact = log_choose(m, n) + weights;
  const double log_stirling = log_stirling_choose(m, n) + weights;
  out.pmf = std::exp(log_exact);
  out.stirling = std::exp(log_stirling);
  out.ratio = std::exp(log_exact - log_stirling);
  return out;
}

}  // namespace tsbitlab
