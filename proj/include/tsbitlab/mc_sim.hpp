#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tsbitlab/bit_sequence.hpp"
#include "tsbitlab/tradeoff.hpp"

namespace tsbitlab {

using Engine = std::mt19937_64;

/// SplitMix64 finalizer; derives the seed of episode `index` from a base seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// One draw from Beta(a, b), a, b >= 1, as G_a / (G_a + G_b) with independent gammas.
double sample_beta_int(std::int64_t a, std::int64_t b, Engine& rng);

/// One replay of TS(q): draw x_t ~ Beta(O+1, Z+1), predict 1 iff x_t > q, pay the
/// weighted loss, observe the bit.
struct EpisodeResult {
  double realized_loss = 0.0;
  std::vector<std::size_t> error_positions;  ///< 1-based
  std::uint64_t seed = 0;

  friend bool operator==(const EpisodeResult&, const EpisodeResult&) = default;
};

EpisodeResult run_episode(const BitSequence& seq, const Tradeoff& q, std::uint64_t seed);

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
};

/// Mean and standard error of the realized loss over `trials` episodes; episode i
/// uses derive_seed(seed, i). Trials are split into fixed chunks merged in chunk
/// order, so the result does not depend on `threads`.
MonteCarloEstimate monte_carlo(const BitSequence& seq, const Tradeoff& q, std::uint64_t trials, std::uint64_t seed,
                               unsigned threads = 1);

}  // namespace tsbitlab
