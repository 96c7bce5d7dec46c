#include "tsbitlab/tradeoff.hpp"

#include <charconv>
#include <numeric>

#include "tsbitlab/errors.hpp"

namespace tsbitlab {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || text.empty()) {
    throw DomainError("malformed trade-off parameter '" + std::string(whole) + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Tradeoff::Tradeoff(std::int64_t num, std::int64_t den) {
  if (den <= 0 || num < 0 || num > den) {
    throw DomainError("trade-off parameter must satisfy 0 <= " + std::to_string(num) + "/" +
                      std::to_string(den) + " <= 1");
  }
  const auto g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
  real_ = static_cast<double>(num_) / static_cast<double>(den_);
  complement_real_ = static_cast<double>(den_ - num_) / static_cast<double>(den_);
}

Tradeoff Tradeoff::parse(std::string_view text) {
  const auto s = trim(text);
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    return {parse_int(trim(s.substr(0, slash)), text), parse_int(trim(s.substr(slash + 1)), text)};
  }
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const auto int_part = s.substr(0, dot);
    const auto frac_part = s.substr(dot + 1);
    if (frac_part.size() > 17 || (int_part.empty() && frac_part.empty()) ||
        (!int_part.empty() && int_part.front() == '-')) {
      throw DomainError("malformed trade-off parameter '" + std::string(text) + "'");
    }
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
    const std::int64_t whole = int_part.empty() ? 0 : parse_int(int_part, text);
    const std::int64_t frac = frac_part.empty() ? 0 : parse_int(frac_part, text);
    if (whole < 0 || frac < 0 || whole > 1) {
      throw DomainError("trade-off parameter out of [0,1]: '" + std::string(text) + "'");
    }
    return {whole * den + frac, den};
  }
  return {parse_int(s, text), 1};
}

Rational Tradeoff::weight_exact(int bit) const {
  return bit ? Rational(den_ - num_, den_) : Rational(num_, den_);
}

std::strong_ordering Tradeoff::odds_order(std::int64_t ones, std::int64_t zeros) const {
  const __int128 lhs = static_cast<__int128>(ones + 1) * (den_ - num_);
  const __int128 rhs = static_cast<__int128>(num_) * (zeros + 1);
  return lhs <=> rhs;
}

std::string Tradeoff::str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

}  // namespace tsbitlab
