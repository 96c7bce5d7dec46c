#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tsbitlab/bit_sequence.hpp"
#include "tsbitlab/rational.hpp"
#include "tsbitlab/tradeoff.hpp"

namespace tsbitlab {

/// Exhaustive extremal regrets over all sequences of length T with k zeros.
struct ExtremalReport {
  std::int64_t length = 0;
  std::int64_t zeros = 0;
  Tradeoff q{1, 2};
  std::vector<BitSequence> argmax_set;  ///< sorted lexicographically
  std::vector<BitSequence> argmin_set;  ///< sorted lexicographically
  Rational max_regret;
  Rational min_regret;
  std::uint64_t sequences_scanned = 0;
};

struct OracleLimits {
  std::int64_t max_length = 20;
  std::uint64_t max_sequences = 2'000'000;
};

/// Exact regret of every sequence with `zeros` zeros; extremes found by exact comparison.
/// Throws BudgetError beyond the limits, DomainError on a bad shape.
ExtremalReport enumerate_extremal(std::int64_t length, std::int64_t zeros, const Tradeoff& q,
                                  const OracleLimits& limits = {});

struct Counterexample {
  BitSequence sequence;
  std::optional<std::size_t> position;  ///< swap position, when the failure is about a swap
  Rational regret;                      ///< exact regret of `sequence`
  Rational other_regret;                ///< the regret it was compared against
  std::string reason;
};

struct VerificationResult {
  bool ok = true;
  std::optional<Counterexample> counterexample;  ///< first failure in enumeration order
  std::uint64_t cases_checked = 0;
};

/// Checks that the maximal-regret sequences with k zeros are exactly the sequences
/// whose tail after the H^q head is constant, and that they share one exact regret.
VerificationResult verify_worst_characterization(std::int64_t length, std::int64_t zeros, const Tradeoff& q,
                                                 const OracleLimits& limits = {});

/// For every sequence of length T and every t with bit_t != bit_{t+1}: the exact sign of
/// Regret(seq) - Regret(Swap(seq, t)) matches swap_comparison(), and, with
/// `check_closed_form`, equals swap_delta_closed_form_exact() as a rational. T <= 12.
VerificationResult verify_swap_lemma(std::int64_t length, const Tradeoff& q, bool check_closed_form = true);

}  // namespace tsbitlab
