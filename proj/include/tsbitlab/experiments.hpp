#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsbitlab/prediction.hpp"
#include "tsbitlab/tradeoff.hpp"

namespace tsbitlab {

/// One point of a regret scan.
///
/// regret_over_sqrt divides by sqrt(k) when the worst-case tail is ones and by
/// sqrt(T - k) when it is zeros (NaN when that count is 0).
struct ScalingRow {
  std::int64_t k = 0;
  std::int64_t length = 0;
  Tradeoff q{1, 2};
  double regret = 0.0;
  double regret_over_sqrt = 0.0;
  EvalMode mode = EvalMode::Float;
  double wall_time_ms = 0.0;
};

struct ScanOptions {
  /// Sequence length; when unset each row uses T = 2k + pad.
  std::optional<std::int64_t> length;
  std::int64_t pad = 0;
  int tie_choice = 0;
  /// Record wall-clock time per row. Off by default so CSV output is reproducible.
  bool timing = false;
};

struct ScanResult {
  std::vector<ScalingRow> rows;  ///< sorted by (k, T)
  std::vector<std::int64_t> infeasible_k;
};

/// Float-engine regret of gen_worst(T, k, q) for every k.
ScanResult scan_worst(const Tradeoff& q, std::span<const std::int64_t> ks, const ScanOptions& options = {});

/// Float-engine regret of gen_best(T, k, q) for every k.
ScanResult scan_best(const Tradeoff& q, std::span<const std::int64_t> ks, const ScanOptions& options = {});

/// Rows of a best-case scan whose regret exceeds 1.
std::vector<ScalingRow> best_case_violations(std::span<const ScalingRow> rows);

/// `steps` points from kmin to kmax spaced geometrically (linearly when kmin is 0),
/// rounded to integers and deduplicated.
std::vector<std::int64_t> k_grid(std::int64_t kmin, std::int64_t kmax, std::int64_t steps);

/// %.17g; "nan" / "inf" spelled lowercase.
std::string format_real(double value);

/// Header row plus one row per point; LF line endings.
void write_scaling_csv(std::ostream& out, std::span<const ScalingRow> rows);

const char* to_string(EvalMode mode);

}  // namespace tsbitlab
