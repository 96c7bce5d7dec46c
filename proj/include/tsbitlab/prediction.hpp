#pragma once

#include <cstdint>
#include <vector>

#include "tsbitlab/beta_math.hpp"
#include "tsbitlab/bit_sequence.hpp"
#include "tsbitlab/rational.hpp"
#include "tsbitlab/tradeoff.hpp"

namespace tsbitlab {

enum class EvalMode { Float, Exact };

/// Expected loss and regret of TS(q) on one sequence.
///
/// expected_loss = sum_t w(bit_t) * per_step_error_prob[t], with w(0) = q and
/// w(1) = 1 - q; regret = expected_loss - static_benchmark.
template <class Value>
struct BasicRegretBreakdown {
  EvalMode mode;
  std::vector<Value> per_step_error_prob;
  Value expected_loss;
  Value static_benchmark;
  Value regret;
};

using RegretBreakdown = BasicRegretBreakdown<double>;
using ExactRegretBreakdown = BasicRegretBreakdown<Rational>;

/// Probability that TS(q) mispredicts a step whose true bit is `bit`, after
/// observing `ones` ones and `zeros` zeros: F_{Beta(O+1,Z+1)}(q) for a 1, 1 - F for a 0.
double step_error_prob(std::int64_t ones, std::int64_t zeros, int bit, const Tradeoff& q);
Rational step_error_prob_exact(std::int64_t ones, std::int64_t zeros, int bit, const Tradeoff& q);

/// min{q Z_T, (1-q) O_T}.
double static_benchmark(const BitSequence& seq, const Tradeoff& q);
Rational static_benchmark_exact(const BitSequence& seq, const Tradeoff& q);

/// O(T) walk of one IncrementalBetaCdf.
RegretBreakdown regret(const BitSequence& seq, const Tradeoff& q);
/// Exact rational regret; every step's CDF is an independent binomial sum.
ExactRegretBreakdown regret_exact(const BitSequence& seq, const Tradeoff& q);

/// Memo of exact F_{Beta(O+1,Z+1)}(q) for O + Z < max_len, shared across many sequences.
class ExactCdfTable {
 public:
  ExactCdfTable(const Tradeoff& q, std::size_t max_len);

  const Tradeoff& tradeoff() const { return q_; }
  std::size_t max_len() const { return max_len_; }
  const Rational& cdf(std::int64_t ones, std::int64_t zeros) const;

 private:
  Tradeoff q_;
  std::size_t max_len_;
  std::vector<Rational> values_;  // triangular, indexed by (O+Z)(O+Z+1)/2 + O
};

ExactRegretBreakdown regret_exact(const BitSequence& seq, const ExactCdfTable& table);

/// Regret(seq) - Regret(Swap(seq, t)) from the closed form
///   q^{O+1} (1-q)^{Z+1} / B(O+1, Z+1) * ((1-q)/(Z+1) - q/(O+1))
/// for bits (0,1) at (t, t+1), negated for (1,0). O, Z count the bits before t.
double swap_delta_closed_form(std::int64_t ones, std::int64_t zeros, const Tradeoff& q, int first_bit);
Rational swap_delta_closed_form_exact(std::int64_t ones, std::int64_t zeros, const Tradeoff& q, int first_bit);

enum class SwapEffect { Increases, Decreases, Unchanged };

/// Effect of swapping unequal bits at (t, t+1) on the regret, decided by comparing
/// q/(1-q) with (O+1)/(Z+1) in integers.
SwapEffect swap_comparison(std::int64_t ones, std::int64_t zeros, const Tradeoff& q, int first_bit);

const char* to_string(SwapEffect effect);

}  // namespace tsbitlab
