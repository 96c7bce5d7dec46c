#include "tsbitlab/mc_sim.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "tsbitlab/errors.hpp"

namespace tsbitlab {

namespace {

constexpr std::uint64_t kChunk = 4096;

// Welford accumulator; merge() is Chan's parallel update.
struct Moments {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }

  void merge(const Moments& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double total = static_cast<double>(n + o.n);
    const double d = o.mean - mean;
    mean += d * static_cast<double>(o.n) / total;
    m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) / total;
    n += o.n;
  }
};

// Replays TS(q) once, calling on_error(t, weight) for each mispredicted step.
template <class OnError>
void replay(const BitSequence& seq, const Tradeoff& q, std::uint64_t seed, OnError&& on_error) {
  Engine rng(seed);
  std::int64_t ones = 0;
  std::int64_t zeros = 0;
  for (std::size_t t = 1; t <= seq.size(); ++t) {
    const double x = sample_beta_int(ones + 1, zeros + 1, rng);
    const int predicted = x > q.real() ? 1 : 0;
    const int bit = seq.bit(t);
    if (predicted != bit) on_error(t, q.weight(bit));
    (bit ? ones : zeros) += 1;
  }
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double sample_beta_int(std::int64_t a, std::int64_t b, Engine& rng) {
  if (a < 1 || b < 1) throw DomainError("Beta sampler needs a, b >= 1");
  std::gamma_distribution<double> ga(static_cast<double>(a), 1.0);
  std::gamma_distribution<double> gb(static_cast<double>(b), 1.0);
  for (;;) {
    const double x = ga(rng);
    const double y = gb(rng);
    const double s = x + y;
    if (s > 0.0) {
      const double v = x / s;
      if (v > 0.0 && v < 1.0) return v;
    }
  }
}

EpisodeResult run_episode(const BitSequence& seq, const Tradeoff& q, std::uint64_t seed) {
  EpisodeResult out;
  out.seed = seed;
  replay(seq, q, seed, [&](std::size_t t, double weight) {
    out.realized_loss += weight;
    out.error_positions.push_back(t);
  });
  return out;
}

MonteCarloEstimate monte_carlo(const BitSequence& seq, const Tradeoff& q, std::uint64_t trials, std::uint64_t seed,
                               unsigned threads) {
  if (trials < 2) throw DomainError("monte_carlo needs at least 2 trials");
  const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
  std::vector<Moments> partial(chunks);
  auto run_chunk = [&](std::uint64_t c) {
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(trials, begin + kChunk);
    for (std::uint64_t i = begin; i < end; ++i) {
      double loss = 0.0;
      replay(seq, q, derive_seed(seed, i), [&](std::size_t, double weight) { loss += weight; });
      partial[c].add(loss);
    }
  };

  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(chunks)));
  if (threads == 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t c = w; c < chunks; c += threads) run_chunk(c);
      });
    }
  }

  Moments total;
  for (const auto& m : partial) total.merge(m);
  MonteCarloEstimate out;
  out.trials = total.n;
  out.mean = total.mean;
  out.std_error = std::sqrt(total.m2 / static_cast<double>(total.n - 1) / static_cast<double>(total.n));
  return out;
}

}  // namespace tsbitlab
