#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tsbitlab {

/// An adversarial bit sequence with cached prefix counts.
///
/// Positions are 1-based in the accessors that mirror the prediction game
/// (bit(t), ones(t), zeros(t), swapped(t)); ones(0) == zeros(0) == 0.
class BitSequence {
 public:
  BitSequence() : ones_prefix_{0} {}
  explicit BitSequence(std::vector<std::uint8_t> bits);
  BitSequence(std::initializer_list<int> bits);

  /// Parses a string of '0'/'1' characters; spaces and underscores are ignored.
  static BitSequence parse(std::string_view text);

  /// Repeats `pattern` `count` times.
  static BitSequence repeat(std::string_view pattern, std::size_t count);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }

  /// Bit at 1-based position t.
  int bit(std::size_t t) const { return bits_[t - 1]; }
  std::span<const std::uint8_t> bits() const { return bits_; }

  /// Number of ones among the first t bits.
  std::int64_t ones(std::size_t t) const { return ones_prefix_[t]; }
  std::int64_t zeros(std::size_t t) const {
    return static_cast<std::int64_t>(t) - ones_prefix_[t];
  }
  std::int64_t ones_total() const { return ones_prefix_.back(); }
  std::int64_t zeros_total() const { return zeros(size()); }

  /// Exchanges bits t and t+1 (1 <= t <= T-1).
  BitSequence swapped(std::size_t t) const;
  /// Bitwise complement.
  BitSequence flipped() const;
  BitSequence concat(const BitSequence& tail) const;

  std::string str() const;

  friend bool operator==(const BitSequence& a, const BitSequence& b) { return a.bits_ == b.bits_; }
  friend auto operator<=>(const BitSequence& a, const BitSequence& b) { return a.bits_ <=> b.bits_; }

 private:
  void rebuild_prefix();

  std::vector<std::uint8_t> bits_;
  std::vector<std::int64_t> ones_prefix_;
};

BitSequence flip(const BitSequence& seq);
BitSequence swap(const BitSequence& seq, std::size_t t);

}  // namespace tsbitlab
