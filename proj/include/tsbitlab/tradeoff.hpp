#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "tsbitlab/rational.hpp"

namespace tsbitlab {

/// The false-positive weight q in [0,1], held as a reduced fraction.
///
/// A false positive (predict 1, observe 0) costs q and a false negative costs 1 - q.
/// The same q is the prediction threshold of TS(q). Every tie-sensitive comparison
/// against q/(1-q) goes through odds_order(), which cross-multiplies integers.
class Tradeoff {
 public:
  Tradeoff(std::int64_t num, std::int64_t den);

  /// Accepts "n/d", an integer literal, or a decimal literal ("0.3" -> 3/10).
  static Tradeoff parse(std::string_view text);

  static Tradeoff half() { return {1, 2}; }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  /// Numerator of 1 - q over the same denominator.
  std::int64_t complement_num() const { return den_ - num_; }

  double real() const { return real_; }
  /// 1 - q computed from the integer complement, not as 1.0 - real().
  double complement_real() const { return complement_real_; }

  Rational rational() const { return Rational(num_, den_); }
  Tradeoff complement() const { return {den_ - num_, den_}; }

  bool is_degenerate() const { return num_ == 0 || num_ == den_; }

  /// Weight charged when the learner errs on a step whose true bit is `bit`:
  /// q for a 0 (false positive), 1 - q for a 1 (false negative).
  Rational weight_exact(int bit) const;
  double weight(int bit) const { return bit ? complement_real_ : real_; }

  /// Orders (ones + 1)/(zeros + 1) against q/(1-q) without division.
  /// `less` means the posterior odds sit below q/(1-q).
  std::strong_ordering odds_order(std::int64_t ones, std::int64_t zeros) const;

  std::string str() const;

  friend bool operator==(const Tradeoff&, const Tradeoff&) = default;

 private:
  std::int64_t num_;
  std::int64_t den_;
  double real_;
  double complement_real_;
};

}  // namespace tsbitlab
