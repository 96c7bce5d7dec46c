#pragma once

#include <gmpxx.h>

#include <string>

namespace tsbitlab {

using BigInt = mpz_class;
using Rational = mpq_class;

inline std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_str();
}

inline std::string to_string(const BigInt& z) { return z.get_str(); }

}  // namespace tsbitlab
