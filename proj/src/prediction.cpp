#include "tsbitlab/prediction.hpp"

#include <algorithm>
#include <cmath>
#include <compare>

#include "tsbitlab/errors.hpp"

namespace tsbitlab {

namespace {

void check_bit(int bit) {
  if (bit != 0 && bit != 1) throw DomainError("bit must be 0 or 1");
}

void check_counts(std::int64_t ones, std::int64_t zeros) {
  if (ones < 0 || zeros < 0) throw DomainError("prefix counts must be nonnegative");
}

}  // namespace

double step_error_prob(std::int64_t ones, std::int64_t zeros, int bit, const Tradeoff& q) {
  check_bit(bit);
  check_counts(ones, zeros);
  const auto tails = beta_tails({ones + 1, zeros + 1}, q.real(), q.complement_real());
  return bit ? tails.cdf : tails.sf;
}

Rational step_error_prob_exact(std::int64_t ones, std::int64_t zeros, int bit, const Tradeoff& q) {
  check_bit(bit);
  check_counts(ones, zeros);
  Rational f = beta_cdf_rational({ones + 1, zeros + 1}, q.rational());
  if (bit) return f;
  return Rational(1 - f);
}

double static_benchmark(const BitSequence& seq, const Tradeoff& q) {
  return std::min(q.real() * static_cast<double>(seq.zeros_total()),
                  q.complement_real() * static_cast<double>(seq.ones_total()));
}

Rational static_benchmark_exact(const BitSequence& seq, const Tradeoff& q) {
  const Rational all_ones = Rational(q.num(), q.den()) * seq.zeros_total();
  const Rational all_zeros = Rational(q.complement_num(), q.den()) * seq.ones_total();
  return std::min(all_ones, all_zeros);
}

RegretBreakdown regret(const BitSequence& seq, const Tradeoff& q) {
  if (seq.empty()) throw DomainError("regret needs a nonempty sequence");
  RegretBreakdown out{EvalMode::Float, {}, 0.0, 0.0, 0.0};
  out.per_step_error_prob.reserve(seq.size());
  IncrementalBetaCdf posterior(q.real(), q.complement_real());
  // Kahan summation: the scans run to T ~ 10^5 with a regret many orders below the loss.
  double sum = 0.0;
  double carry = 0.0;
  for (std::size_t t = 1; t <= seq.size(); ++t) {
    const int bit = seq.bit(t);
    const double err = bit ? posterior.cdf() : posterior.sf();
    out.per_step_error_prob.push_back(err);
    const double y = q.weight(bit) * err - carry;
    const double s = sum + y;
    carry = (s - sum) - y;
    sum = s;
    if (bit) {
      posterior.inc_a();
    } else {
      posterior.inc_b();
    }
  }
  out.expected_loss = sum;
  out.static_benchmark = static_benchmark(seq, q);
  out.regret = out.expected_loss - out.static_benchmark;
  return out;
}

ExactRegretBreakdown regret_exact(const BitSequence& seq, const Tradeoff& q) {
  if (seq.empty()) throw DomainError("regret needs a nonempty sequence");
  ExactRegretBreakdown out{EvalMode::Exact, {}, 0, 0, 0};
  out.per_step_error_prob.reserve(seq.size());
  for (std::size_t t = 1; t <= seq.size(); ++t) {
    const int bit = seq.bit(t);
    Rational err = step_error_prob_exact(seq.ones(t - 1), seq.zeros(t - 1), bit, q);
    out.expected_loss += q.weight_exact(bit) * err;
    out.per_step_error_prob.push_back(std::move(err));
  }
  out.static_benchmark = static_benchmark_exact(seq, q);
  out.regret = out.expected_loss - out.static_benchmark;
  return out;
}

ExactCdfTable::ExactCdfTable(const Tradeoff& q, std::size_t max_len) : q_(q), max_len_(max_len) {
  values_.reserve(max_len * (max_len + 1) / 2);
  const Rational x = q.rational();
  for (std::size_t n = 0; n < max_len; ++n) {
    for (std::size_t ones = 0; ones <= n; ++ones) {
      const auto o = static_cast<std::int64_t>(ones);
      const auto z = static_cast<std::int64_t>(n - ones);
      values_.push_back(beta_cdf_rational({o + 1, z + 1}, x));
    }
  }
}

const Rational& ExactCdfTable::cdf(std::int64_t ones, std::int64_t zeros) const {
  const auto n = static_cast<std::size_t>(ones + zeros);
  if (ones < 0 || zeros < 0 || n >= max_len_) throw IndexError("prefix counts outside the CDF table");
  return values_[n * (n + 1) / 2 + static_cast<std::size_t>(ones)];
}

ExactRegretBreakdown regret_exact(const BitSequence& seq, const ExactCdfTable& table) {
  if (seq.empty()) throw DomainError("regret needs a nonempty sequence");
  if (seq.size() > table.max_len()) throw IndexError("sequence longer than the CDF table");
  const auto& q = table.tradeoff();
  ExactRegretBreakdown out{EvalMode::Exact, {}, 0, 0, 0};
  out.per_step_error_prob.reserve(seq.size());
  for (std::size_t t = 1; t <= seq.size(); ++t) {
    const int bit = seq.bit(t);
    const Rational& f = table.cdf(seq.ones(t - 1), seq.zeros(t - 1));
    Rational err = bit ? f : Rational(1 - f);
    out.expected_loss += q.weight_exact(bit) * err;
    out.per_step_error_prob.push_back(std::move(err));
  }
  out.static_benchmark = static_benchmark_exact(seq, q);
  out.regret = out.expected_loss - out.static_benchmark;
  return out;
}

double swap_delta_closed_form(std::int64_t ones, std::int64_t zeros, const Tradeoff& q, int first_bit) {
  check_bit(first_bit);
  check_counts(ones, zeros);
  const double o1 = static_cast<double>(ones + 1);
  const double z1 = static_cast<double>(zeros + 1);
  const double bracket = q.complement_real() / z1 - q.real() / o1;
  if (q.is_degenerate()) return 0.0;
  const double log_inv_beta = std::lgamma(o1 + z1) - std::lgamma(o1) - std::lgamma(z1);
  const double scale = std::exp(o1 * std::log(q.real()) + z1 * std::log(q.complement_real()) + log_inv_beta);
  const double delta = scale * bracket;
  return first_bit == 0 ? delta : -delta;
}

Rational swap_delta_closed_form_exact(std::int64_t ones, std::int64_t zeros, const Tradeoff& q, int first_bit) {
  check_bit(first_bit);
  check_counts(ones, zeros);
  const auto o1 = static_cast<unsigned long>(ones + 1);
  const auto z1 = static_cast<unsigned long>(zeros + 1);
  BigInt num_pow;
  BigInt comp_pow;
  BigInt den_pow;
  mpz_ui_pow_ui(num_pow.get_mpz_t(), static_cast<unsigned long>(q.num()), o1);
  mpz_ui_pow_ui(comp_pow.get_mpz_t(), static_cast<unsigned long>(q.complement_num()), z1);
  mpz_ui_pow_ui(den_pow.get_mpz_t(), static_cast<unsigned long>(q.den()), o1 + z1);
  Rational scale(num_pow * comp_pow * inverse_beta_function({ones + 1, zeros + 1}), den_pow);
  scale.canonicalize();
  const Rational bracket = Rational(q.complement_num(), q.den() * (zeros + 1)) - Rational(q.num(), q.den() * (ones + 1));
  Rational delta = scale * bracket;
  if (first_bit == 1) delta = -delta;
  return delta;
}

SwapEffect swap_comparison(std::int64_t ones, std::int64_t zeros, const Tradeoff& q, int first_bit) {
  check_bit(first_bit);
  check_counts(ones, zeros);
  // (O+1)/(Z+1) against q/(1-q).
  const auto order = q.odds_order(ones, zeros);
  if (order == std::strong_ordering::equal) return SwapEffect::Unchanged;
  const bool odds_below_q = order == std::strong_ordering::less;
  // 0 then 1: moving the 1 forward raises the regret iff q/(1-q) > (O+1)/(Z+1).
  if (first_bit == 0) return odds_below_q ? SwapEffect::Increases : SwapEffect::Decreases;
  return odds_below_q ? SwapEffect::Decreases : SwapEffect::Increases;
}

const char* to_string(SwapEffect effect) {
  switch (effect) {
    case SwapEffect::Increases:
      return "increases";
    case SwapEffect::Decreases:
      return "decreases";
    case SwapEffect::Unchanged:
      return "equal";
  }
  return "?";
}

}  // namespace tsbitlab
