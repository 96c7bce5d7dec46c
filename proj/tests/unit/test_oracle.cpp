#include <doctest.h>

#include "tsbitlab/errors.hpp"
#include "tsbitlab/oracle.hpp"
#include "tsbitlab/prediction.hpp"
#include "tsbitlab/sequence_lab.hpp"

using namespace tsbitlab;

namespace {

std::vector<std::string> strs(const std::vector<BitSequence>& v) {
  std::vector<std::string> out;
  for (const auto& s : v) out.push_back(s.str());
  return out;
}

}  // namespace

TEST_CASE("extremal sets for small instances") {
  const auto r = enumerate_extremal(4, 2, Tradeoff::half());
  CHECK(strs(r.argmax_set) == std::vector<std::string>{"0101", "0110", "1001", "1010"});
  CHECK(strs(r.argmin_set) == std::vector<std::string>{"0011", "1100"});
  CHECK(r.sequences_scanned == 6);
  CHECK(r.max_regret == Rational(7, 32));

  const auto r7 = enumerate_extremal(7, 2, Tradeoff::half());
  CHECK(strs(r7.argmax_set) == std::vector<std::string>{"0101111", "0110111", "1001111", "1010111"});
  CHECK(strs(r7.argmin_set) == std::vector<std::string>{"1111100"});
}

TEST_CASE("members of the argmax set share the maximum") {
  const Tradeoff q(1, 3);
  const auto r = enumerate_extremal(9, 3, q);
  for (const auto& s : r.argmax_set) CHECK(regret_exact(s, q).regret == r.max_regret);
  for (const auto& s : r.argmin_set) CHECK(regret_exact(s, q).regret == r.min_regret);
  CHECK_FALSE(r.argmax_set.empty());
}

TEST_CASE("worst characterization examples") {
  CHECK(verify_worst_characterization(10, 3, Tradeoff::half()).ok);
  CHECK(verify_worst_characterization(9, 3, Tradeoff(1, 3)).ok);
  CHECK(verify_worst_characterization(6, 2, Tradeoff(2, 5)).ok);
}

TEST_CASE("swap verification examples") {
  CHECK(verify_swap_lemma(8, Tradeoff::half()).ok);
  CHECK(verify_swap_lemma(8, Tradeoff(1, 3)).ok);
  const auto two = verify_swap_lemma(2, Tradeoff::half());
  CHECK(two.ok);
  CHECK(two.cases_checked == 2);
  CHECK(swap_comparison(0, 0, Tradeoff::half(), 0) == SwapEffect::Unchanged);
}

TEST_CASE("oracle agrees with the canonical generator at q = 1/2") {
  const auto h = Tradeoff::half();
  for (std::int64_t length = 1; length <= 12; ++length) {
    for (std::int64_t k = 0; 2 * k <= length; ++k) {
      CHECK(enumerate_extremal(length, k, h).max_regret == regret_exact(gen_worst(length, k, h, 0), h).regret);
    }
  }
}

TEST_CASE("unique minimizer for k < T/2 at q = 1/2") {
  const auto h = Tradeoff::half();
  for (std::int64_t length = 1; length <= 12; ++length) {
    for (std::int64_t k = 0; 2 * k < length; ++k) {
      const auto r = enumerate_extremal(length, k, h);
      REQUIRE(r.argmin_set.size() == 1);
      CHECK(r.argmin_set.front() == gen_best(length, k, h));
    }
  }
}

TEST_CASE("flip duality of the maximum") {
  for (const auto& q : {Tradeoff(1, 3), Tradeoff(2, 5), Tradeoff(3, 4)}) {
    for (std::int64_t length = 1; length <= 9; ++length) {
      for (std::int64_t k = 0; k <= length; ++k) {
        CHECK(enumerate_extremal(length, k, q).max_regret ==
              enumerate_extremal(length, length - k, q.complement()).max_regret);
      }
    }
  }
}

TEST_CASE("guards") {
  CHECK_THROWS_AS(enumerate_extremal(21, 3, Tradeoff::half()), BudgetError);
  CHECK_THROWS_AS(enumerate_extremal(20, 10, Tradeoff::half(), {20, 1000}), BudgetError);
  CHECK_THROWS_AS(enumerate_extremal(4, 5, Tradeoff::half()), DomainError);
  CHECK_THROWS_AS(verify_swap_lemma(13, Tradeoff::half()), BudgetError);
  CHECK_THROWS_AS(enumerate_extremal(0, 0, Tradeoff::half()), DomainError);
}
