#include "tsbitlab/bit_sequence.hpp"

#include <utility>

#include "tsbitlab/errors.hpp"

namespace tsbitlab {

BitSequence::BitSequence(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw DomainError("bit sequence entries must be 0 or 1");
  }
  rebuild_prefix();
}

BitSequence::BitSequence(std::initializer_list<int> bits) {
  bits_.reserve(bits.size());
  for (int b : bits) {
    if (b != 0 && b != 1) throw DomainError("bit sequence entries must be 0 or 1");
    bits_.push_back(static_cast<std::uint8_t>(b));
  }
  rebuild_prefix();
}

BitSequence BitSequence::parse(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c == '0' || c == '1') {
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    } else if (c != ' ' && c != '_') {
      throw DomainError("invalid character '" + std::string(1, c) + "' in bit sequence");
    }
  }
  return BitSequence(std::move(bits));
}

BitSequence BitSequence::repeat(std::string_view pattern, std::size_t count) {
  const auto unit = parse(pattern);
  std::vector<std::uint8_t> bits;
  bits.reserve(unit.size() * count);
  for (std::size_t i = 0; i < count; ++i) bits.insert(bits.end(), unit.bits_.begin(), unit.bits_.end());
  return BitSequence(std::move(bits));
}

void BitSequence::rebuild_prefix() {
  ones_prefix_.assign(bits_.size() + 1, 0);
  for (std::size_t i = 0; i < bits_.size(); ++i) ones_prefix_[i + 1] = ones_prefix_[i] + bits_[i];
}

BitSequence BitSequence::swapped(std::size_t t) const {
  if (t < 1 || t + 1 > bits_.size()) {
    throw IndexError("swap position " + std::to_string(t) + " outside [1, " +
                     std::to_string(bits_.size() > 0 ? bits_.size() - 1 : 0) + "]");
  }
  auto out = *this;
  if (out.bits_[t - 1] != out.bits_[t]) {
    std::swap(out.bits_[t - 1], out.bits_[t]);
    out.ones_prefix_[t] = out.ones_prefix_[t - 1] + out.bits_[t - 1];
  }
  return out;
}

BitSequence BitSequence::flipped() const {
  auto bits = bits_;
  for (auto& b : bits) b ^= 1;
  return BitSequence(std::move(bits));
}

BitSequence BitSequence::concat(const BitSequence& tail) const {
  auto bits = bits_;
  bits.insert(bits.end(), tail.bits_.begin(), tail.bits_.end());
  return BitSequence(std::move(bits));
}

std::string BitSequence::str() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = static_cast<char>('0' + bits_[i]);
  return s;
}

BitSequence flip(const BitSequence& seq) { return seq.flipped(); }
BitSequence swap(const BitSequence& seq, std::size_t t) { return seq.swapped(t); }

}  // namespace tsbitlab
