#include "tsbitlab/oracle.hpp"

#include <algorithm>
#include <functional>

#include "tsbitlab/beta_math.hpp"
#include "tsbitlab/errors.hpp"
#include "tsbitlab/prediction.hpp"
#include "tsbitlab/sequence_lab.hpp"

namespace tsbitlab {

namespace {

// Exact per-step losses of TS(q) for sequences of one length T, all multiplied by
// den^(T+1) so that every regret is an integer and sums need no gcd work.
class ScaledLosses {
 public:
  ScaledLosses(const Tradeoff& q, std::int64_t length) : q_(q), length_(length) {
    mpz_ui_pow_ui(unit_.get_mpz_t(), static_cast<unsigned long>(q.den()), static_cast<unsigned long>(length));
    mpz_ui_pow_ui(scale_.get_mpz_t(), static_cast<unsigned long>(q.den()), static_cast<unsigned long>(length + 1));
    const ExactCdfTable table(q, static_cast<std::size_t>(length));
    const auto n_max = static_cast<std::size_t>(length);
    loss_.resize(n_max * (n_max + 1));
    for (std::size_t n = 0; n < n_max; ++n) {
      for (std::size_t o = 0; o <= n; ++o) {
        const Rational scaled = table.cdf(static_cast<std::int64_t>(o), static_cast<std::int64_t>(n - o)) * unit_;
        const BigInt cdf_units = scaled.get_num();  // integral: den^(O+Z+1) divides den^T
        const std::size_t idx = 2 * (n * (n + 1) / 2 + o);
        loss_[idx] = (unit_ - cdf_units) * q.num();                // bit 0: false positive, weight q
        loss_[idx + 1] = cdf_units * q.complement_num();           // bit 1: false negative, weight 1-q
      }
    }
  }

  const BigInt& loss(std::int64_t ones, std::int64_t zeros, int bit) const {
    const auto n = static_cast<std::size_t>(ones + zeros);
    return loss_[2 * (n * (n + 1) / 2 + static_cast<std::size_t>(ones)) + static_cast<std::size_t>(bit)];
  }

  BigInt benchmark(std::int64_t ones, std::int64_t zeros) const {
    const BigInt all_ones = BigInt(q_.num()) * zeros;
    const BigInt all_zeros = BigInt(q_.complement_num()) * ones;
    return (all_ones < all_zeros ? all_ones : all_zeros) * unit_;
  }

  Rational unscale(const BigInt& value) const {
    Rational r(value, scale_);
    r.canonicalize();
    return r;
  }

  const BigInt& scale() const { return scale_; }
  std::int64_t length() const { return length_; }

 private:
  Tradeoff q_;
  std::int64_t length_;
  BigInt unit_;   // den^T
  BigInt scale_;  // den^(T+1)
  std::vector<BigInt> loss_;
};

std::uint64_t choose_capped(std::int64_t n, std::int64_t k, std::uint64_t cap) {
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    c = c * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (c > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(c);
}

// Depth-first walk over all sequences with `zeros` zeros in lexicographic order,
// handing each leaf its scaled regret.
void for_each_with_zeros(const ScaledLosses& losses, std::int64_t zeros,
                         const std::function<void(const std::vector<std::uint8_t>&, const BigInt&)>& visit) {
  const std::int64_t length = losses.length();
  const std::int64_t ones_total = length - zeros;
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(length));
  std::vector<BigInt> partial(static_cast<std::size_t>(length) + 1);
  partial[0] = 0;
  const BigInt benchmark = losses.benchmark(ones_total, zeros);
  BigInt regret;

  std::function<void(std::int64_t, std::int64_t, std::int64_t)> descend = [&](std::int64_t t, std::int64_t o,
                                                                              std::int64_t z) {
    if (t == length) {
      regret = partial[static_cast<std::size_t>(t)] - benchmark;
      visit(bits, regret);
      return;
    }
    for (int bit = 0; bit <= 1; ++bit) {
      if (bit == 0 && z == zeros) continue;
      if (bit == 1 && o == ones_total) continue;
      bits[static_cast<std::size_t>(t)] = static_cast<std::uint8_t>(bit);
      partial[static_cast<std::size_t>(t) + 1] = partial[static_cast<std::size_t>(t)] + losses.loss(o, z, bit);
      descend(t + 1, o + bit, z + 1 - bit);
    }
  };
  descend(0, 0, 0);
}

void check_enumeration(std::int64_t length, std::int64_t zeros, const OracleLimits& limits) {
  if (length < 1 || zeros < 0 || zeros > length) {
    throw DomainError("need T >= 1 and 0 <= k <= T");
  }
  if (length > limits.max_length) {
    throw BudgetError("exhaustive enumeration limited to T <= " + std::to_string(limits.max_length));
  }
  if (choose_capped(length, zeros, limits.max_sequences) > limits.max_sequences) {
    throw BudgetError("C(" + std::to_string(length) + ", " + std::to_string(zeros) + ") exceeds the guard of " +
                      std::to_string(limits.max_sequences) + " sequences");
  }
}

}  // namespace

ExtremalReport enumerate_extremal(std::int64_t length, std::int64_t zeros, const Tradeoff& q,
                                  const OracleLimits& limits) {
  check_enumeration(length, zeros, limits);
  const ScaledLosses losses(q, length);

  ExtremalReport report;
  report.length = length;
  report.zeros = zeros;
  report.q = q;
  BigInt best;
  BigInt worst;
  std::vector<std::vector<std::uint8_t>> argmax;
  std::vector<std::vector<std::uint8_t>> argmin;
  for_each_with_zeros(losses, zeros, [&](const std::vector<std::uint8_t>& bits, const BigInt& regret) {
    if (report.sequences_scanned++ == 0) {
      best = regret;
      worst = regret;
      argmax.push_back(bits);
      argmin.push_back(bits);
      return;
    }
    if (const int c = cmp(regret, best); c > 0) {
      best = regret;
      argmax.assign(1, bits);
    } else if (c == 0) {
      argmax.push_back(bits);
    }
    if (const int c = cmp(regret, worst); c < 0) {
      worst = regret;
      argmin.assign(1, bits);
    } else if (c == 0) {
      argmin.push_back(bits);
    }
  });
  for (auto& b : argmax) report.argmax_set.emplace_back(std::move(b));
  for (auto& b : argmin) report.argmin_set.emplace_back(std::move(b));
  std::sort(report.argmax_set.begin(), report.argmax_set.end());
  std::sort(report.argmin_set.begin(), report.argmin_set.end());
  report.max_regret = losses.unscale(best);
  report.min_regret = losses.unscale(worst);
  return report;
}

VerificationResult verify_worst_characterization(std::int64_t length, std::int64_t zeros, const Tradeoff& q,
                                                 const OracleLimits& limits) {
  if (q.is_degenerate()) throw DomainError("worst-case sequences are undefined for q in {0, 1}");
  const auto report = enumerate_extremal(length, zeros, q, limits);

  std::vector<BitSequence> predicted;
  const ScaledLosses losses(q, length);
  for_each_with_zeros(losses, zeros, [&](const std::vector<std::uint8_t>& bits, const BigInt&) {
    BitSequence seq(bits);
    if (decompose(seq, q).is_worst_case) predicted.push_back(std::move(seq));
  });
  std::sort(predicted.begin(), predicted.end());

  VerificationResult result;
  result.cases_checked = report.sequences_scanned;
  if (predicted == report.argmax_set) return result;

  result.ok = false;
  std::vector<BitSequence> only_predicted;
  std::vector<BitSequence> only_argmax;
  std::set_difference(predicted.begin(), predicted.end(), report.argmax_set.begin(), report.argmax_set.end(),
                      std::back_inserter(only_predicted));
  std::set_difference(report.argmax_set.begin(), report.argmax_set.end(), predicted.begin(), predicted.end(),
                      std::back_inserter(only_argmax));
  Counterexample cex;
  if (!only_predicted.empty()) {
    cex.sequence = only_predicted.front();
    cex.reason = "worst-case predicate holds but the regret is below the maximum";
  } else {
    cex.sequence = only_argmax.front();
    cex.reason = "attains the maximum regret but is not a worst-case sequence";
  }
  cex.regret = regret_exact(cex.sequence, q).regret;
  cex.other_regret = report.max_regret;
  result.counterexample = std::move(cex);
  return result;
}

VerificationResult verify_swap_lemma(std::int64_t length, const Tradeoff& q, bool check_closed_form) {
  if (length < 2 || length > 12) throw BudgetError("swap verification supports 2 <= T <= 12");
  const ScaledLosses losses(q, length);
  const auto count = std::size_t{1} << length;

  // Scaled regret of every sequence, keyed by the bitmask with bit t-1 holding position t.
  std::vector<BigInt> regrets(count);
  for (std::int64_t zeros = 0; zeros <= length; ++zeros) {
    for_each_with_zeros(losses, zeros, [&](const std::vector<std::uint8_t>& bits, const BigInt& regret) {
      std::size_t mask = 0;
      for (std::size_t i = 0; i < bits.size(); ++i) mask |= static_cast<std::size_t>(bits[i]) << i;
      regrets[mask] = regret;
    });
  }

  VerificationResult result;
  const auto fail = [&](std::size_t mask, std::size_t t, std::size_t swapped, std::string reason) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(length));
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = static_cast<std::uint8_t>((mask >> i) & 1U);
    result.ok = false;
    result.counterexample =
        Counterexample{BitSequence(std::move(bits)), t, losses.unscale(regrets[mask]), losses.unscale(regrets[swapped]),
                       std::move(reason)};
  };

  for (std::size_t mask = 0; mask < count; ++mask) {
    std::int64_t ones = 0;
    for (std::size_t t = 1; t < static_cast<std::size_t>(length); ++t) {
      const int first = static_cast<int>((mask >> (t - 1)) & 1U);
      const int second = static_cast<int>((mask >> t) & 1U);
      if (first != second) {
        const std::int64_t zeros = static_cast<std::int64_t>(t - 1) - ones;
        const std::size_t swapped = mask ^ (std::size_t{3} << (t - 1));
        const BigInt diff = regrets[mask] - regrets[swapped];
        const int sign = sgn(diff);
        const auto effect = swap_comparison(ones, zeros, q, first);
        const int expected = effect == SwapEffect::Increases ? -1 : (effect == SwapEffect::Decreases ? 1 : 0);
        ++result.cases_checked;
        if (sign != expected) {
          fail(mask, t, swapped, std::string("ratio rule predicts the swap ") + to_string(effect) + " the regret");
          return result;
        }
        if (check_closed_form) {
          const Rational closed = swap_delta_closed_form_exact(ones, zeros, q, first) * losses.scale();
          if (closed != Rational(diff)) {
            fail(mask, t, swapped, "closed-form swap delta " + to_string(closed / losses.scale()) +
                                       " differs from the recomputed difference");
            return result;
          }
        }
      }
      ones += first;
    }
  }
  return result;
}

}  // namespace tsbitlab
