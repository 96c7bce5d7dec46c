#include "tsbitlab/sequence_lab.hpp"

#include <compare>
#include <string>
#include <vector>

#include "tsbitlab/errors.hpp"

namespace tsbitlab {

namespace {

void check_shape(std::int64_t length, std::int64_t zeros) {
  if (length < 0 || zeros < 0 || zeros > length) {
    throw DomainError("need 0 <= k <= T, got T=" + std::to_string(length) + ", k=" + std::to_string(zeros));
  }
}

}  // namespace

HqVerdict hq(std::int64_t ones, std::int64_t zeros, const Tradeoff& q) {
  if (q.num() == q.den()) throw DomainError("H^q is undefined for q = 1");
  const auto order = q.odds_order(ones, zeros);
  if (order == std::strong_ordering::greater) return {true, false};
  if (order == std::strong_ordering::less) return {false, true};
  return {true, true};
}

SequenceDecomposition decompose(const BitSequence& seq, const Tradeoff& q) {
  SequenceDecomposition out;
  const std::size_t length = seq.size();
  std::size_t t = 0;
  while (t < length && hq(seq.ones(t), seq.zeros(t), q).allows(seq.bit(t + 1))) ++t;
  out.head_len = t;
  out.is_worst_case = true;
  if (t < length) {
    const int first = seq.bit(t + 1);
    out.tail_bit = first;
    for (std::size_t i = t + 2; i <= length; ++i) {
      if (seq.bit(i) != first) {
        out.is_worst_case = false;
        break;
      }
    }
  }
  return out;
}

int tail_fill_bit(std::int64_t length, std::int64_t zeros, const Tradeoff& q) {
  check_shape(length, zeros);
  // zeros <= (1-q) T - q   <=>   den * zeros <= (den - num) T - num
  const __int128 lhs = static_cast<__int128>(q.den()) * zeros;
  const __int128 rhs = static_cast<__int128>(q.complement_num()) * length - q.num();
  return lhs <= rhs ? 1 : 0;
}

BitSequence gen_worst(std::int64_t length, std::int64_t zeros, const Tradeoff& q, int tie_choice) {
  check_shape(length, zeros);
  if (q.is_degenerate()) throw DomainError("worst-case sequences are undefined for q in {0, 1}");
  if (tie_choice != 0 && tie_choice != 1) throw DomainError("tie_choice must be 0 or 1");

  const int tail = tail_fill_bit(length, zeros, q);
  const std::int64_t ones_total = length - zeros;
  const std::int64_t head_budget = tail ? zeros : ones_total;  // count of the non-tail bit
  const std::int64_t tail_budget = tail ? ones_total : zeros;

  std::vector<std::uint8_t> bits;
  bits.reserve(static_cast<std::size_t>(length));
  std::int64_t ones = 0;
  std::int64_t zs = 0;
  auto used = [&](int bit) { return bit ? ones : zs; };
  while (used(1 - tail) < head_budget) {
    if (static_cast<std::int64_t>(bits.size()) == length) {
      throw InfeasibleError("no worst-case head reaches the budget within T");
    }
    const auto verdict = hq(ones, zs, q);
    const int bit = verdict.is_tie() ? tie_choice : (verdict.allows_one ? 1 : 0);
    if (bit == tail && used(tail) == tail_budget) {
      throw InfeasibleError("worst-case head for T=" + std::to_string(length) + ", k=" + std::to_string(zeros) +
                            ", q=" + q.str() + " exhausts the tail bit before the head budget");
    }
    bits.push_back(static_cast<std::uint8_t>(bit));
    (bit ? ones : zs) += 1;
  }
  bits.resize(static_cast<std::size_t>(length), static_cast<std::uint8_t>(tail));
  return BitSequence(std::move(bits));
}

BitSequence gen_best(std::int64_t length, std::int64_t zeros, const Tradeoff& q) {
  check_shape(length, zeros);
  const std::int64_t ones = length - zeros;
  const __int128 fp_cost = static_cast<__int128>(q.num()) * zeros;
  const __int128 fn_cost = static_cast<__int128>(q.complement_num()) * ones;
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(length));
  const bool ones_first = fp_cost <= fn_cost;
  for (std::int64_t i = 0; i < length; ++i) {
    const bool in_first_block = i < (ones_first ? ones : zeros);
    bits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(in_first_block == ones_first ? 1 : 0);
  }
  return BitSequence(std::move(bits));
}

}  // namespace tsbitlab
