#include "tsbitlab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <tuple>

#include "tsbitlab/errors.hpp"
#include "tsbitlab/sequence_lab.hpp"

namespace tsbitlab {

namespace {

template <class Generate>
ScanResult scan(const Tradeoff& q, std::span<const std::int64_t> ks, const ScanOptions& options, Generate&& generate) {
  ScanResult out;
  for (const std::int64_t k : ks) {
    const std::int64_t length = options.length.value_or(2 * k + options.pad);
    const auto start = std::chrono::steady_clock::now();
    BitSequence seq;
    try {
      seq = generate(length, k);
    } catch (const InfeasibleError&) {
      out.infeasible_k.push_back(k);
      continue;
    }
    ScalingRow row;
    row.k = k;
    row.length = length;
    row.q = q;
    row.mode = EvalMode::Float;
    row.regret = seq.empty() ? 0.0 : regret(seq, q).regret;
    const int tail = q.is_degenerate() ? 1 : tail_fill_bit(length, k, q);
    const auto scale = static_cast<double>(tail ? k : length - k);
    row.regret_over_sqrt = scale > 0 ? row.regret / std::sqrt(scale) : std::numeric_limits<double>::quiet_NaN();
    if (options.timing) {
      row.wall_time_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    out.rows.push_back(row);
  }
  std::sort(out.rows.begin(), out.rows.end(),
            [](const ScalingRow& a, const ScalingRow& b) { return std::tie(a.k, a.length) < std::tie(b.k, b.length); });
  return out;
}

}  // namespace

ScanResult scan_worst(const Tradeoff& q, std::span<const std::int64_t> ks, const ScanOptions& options) {
  return scan(q, ks, options,
              [&](std::int64_t length, std::int64_t k) { return gen_worst(length, k, q, options.tie_choice); });
}

ScanResult scan_best(const Tradeoff& q, std::span<const std::int64_t> ks, const ScanOptions& options) {
  return scan(q, ks, options, [&](std::int64_t length, std::int64_t k) { return gen_best(length, k, q); });
}

std::vector<ScalingRow> best_case_violations(std::span<const ScalingRow> rows) {
  std::vector<ScalingRow> out;
  for (const auto& row : rows) {
    if (!(row.regret <= 1.0)) out.push_back(row);
  }
  return out;
}

std::vector<std::int64_t> k_grid(std::int64_t kmin, std::int64_t kmax, std::int64_t steps) {
  if (kmin < 0 || kmax < kmin || steps < 1) throw DomainError("k range must satisfy 0 <= kmin <= kmax, steps >= 1");
  std::vector<std::int64_t> ks;
  if (steps == 1 || kmin == kmax) return {kmin};
  const auto n = static_cast<double>(steps - 1);
  for (std::int64_t i = 0; i < steps; ++i) {
    const double f = static_cast<double>(i) / n;
    double v;
    if (kmin == 0) {
      v = static_cast<double>(kmax) * f;
    } else {
      v = std::exp(std::log(static_cast<double>(kmin)) * (1 - f) + std::log(static_cast<double>(kmax)) * f);
    }
    ks.push_back(std::clamp(static_cast<std::int64_t>(std::llround(v)), kmin, kmax));
  }
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return ks;
}

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_scaling_csv(std::ostream& out, std::span<const ScalingRow> rows) {
  out << "k,T,q,regret,regret_over_sqrt,engine_mode,wall_time_ms\n";
  for (const auto& r : rows) {
    out << r.k << ',' << r.length << ',' << r.q.str() << ',' << format_real(r.regret) << ','
        << format_real(r.regret_over_sqrt) << ',' << to_string(r.mode) << ',' << format_real(r.wall_time_ms) << '\n';
  }
}

const char* to_string(EvalMode mode) { return mode == EvalMode::Float ? "float" : "rational"; }

}  // namespace tsbitlab
