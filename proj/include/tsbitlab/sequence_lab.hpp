#pragma once

#include <cstdint>
#include <optional>

#include "tsbitlab/bit_sequence.hpp"
#include "tsbitlab/tradeoff.hpp"

namespace tsbitlab {

/// The set H^q of next bits that no single swap can improve on, given a prefix.
struct HqVerdict {
  bool allows_zero = false;
  bool allows_one = false;

  bool allows(int bit) const { return bit ? allows_one : allows_zero; }
  bool is_tie() const { return allows_zero && allows_one; }
  friend bool operator==(const HqVerdict&, const HqVerdict&) = default;
};

/// {0} if (O+1)/(Z+1) > q/(1-q), {1} if below, {0,1} on equality.
/// q = 1 is rejected (the ratio q/(1-q) is undefined); q = 0 always yields {0}.
HqVerdict hq(std::int64_t ones, std::int64_t zeros, const Tradeoff& q);

/// Head/tail split of a sequence under H^q.
struct SequenceDecomposition {
  /// p(seq): the longest prefix whose every bit lies in H^q of what precedes it.
  std::size_t head_len = 0;
  /// First bit after the head; empty when the head covers the whole sequence.
  std::optional<int> tail_bit;
  /// All bits after the head are equal.
  bool is_worst_case = false;
};

SequenceDecomposition decompose(const BitSequence& seq, const Tradeoff& q);

/// Bit that fills the tail of a worst-case sequence with `zeros` zeros:
/// 1 iff zeros <= (1-q) T - q.
int tail_fill_bit(std::int64_t length, std::int64_t zeros, const Tradeoff& q);

/// Canonical worst-case sequence with exactly `zeros` zeros.
///
/// Follows H^q from the empty prefix, taking `tie_choice` whenever H^q = {0,1}, until
/// the count of the bit opposite to tail_fill_bit() is used up, then pads with the
/// tail bit. tie_choice = 0 gives W_T^k; at q = 1/2 and zeros <= T/2 the result is
/// {01}^k 1^{T-2k}. Throws DomainError for q in {0, 1} or zeros > length, and
/// InfeasibleError if the head would overrun the length or the tail budget.
BitSequence gen_worst(std::int64_t length, std::int64_t zeros, const Tradeoff& q, int tie_choice = 0);

/// 1^{T-k} 0^k when q k <= (1-q)(T-k), otherwise 0^k 1^{T-k}.
BitSequence gen_best(std::int64_t length, std::int64_t zeros, const Tradeoff& q);

}  // namespace tsbitlab
