#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tsbitlab/beta_math.hpp"
#include "tsbitlab/errors.hpp"
#include "tsbitlab/experiments.hpp"
#include "tsbitlab/mc_sim.hpp"
#include "tsbitlab/oracle.hpp"
#include "tsbitlab/prediction.hpp"
#include "tsbitlab/sequence_lab.hpp"

namespace tsbitlab::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 20200101;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string seq;
  std::string q = "1/2";
  std::string mode = "float";
  std::int64_t length = 0;
  std::int64_t zeros = 0;
  int tie = 0;
  std::string csv;
  std::uint64_t trials = 100000;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::int64_t kmin = 1;
  std::int64_t kmax = 1024;
  std::int64_t steps = 11;
  std::string out_path;
  std::string kind = "worst";
  std::optional<std::int64_t> scan_length;
  std::int64_t pad = 0;
  bool timing = false;
  std::int64_t n = 1;
  std::string p = "1/2";
  std::int64_t terms = 1'000'000;
};

std::string join(const std::vector<BitSequence>& seqs) {
  std::string s = "{";
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    if (i) s += ", ";
    s += seqs[i].str();
  }
  return s + "}";
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open '" + path + "' for writing");
  return f;
}

double parse_real(const std::string& text) {
  if (text.find('/') != std::string::npos) return Tradeoff::parse(text).real();
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("malformed number '" + text + "'");
  }
  if (used != text.size()) throw UsageError("malformed number '" + text + "'");
  return v;
}

std::uint64_t resolve_seed(const Config& cfg) {
  if (cfg.seed) return *cfg.seed;
  if (const char* env = std::getenv("TSBITLAB_SEED"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("TSBITLAB_SEED is not an unsigned integer: '") + env + "'");
  }
  return kDefaultSeed;
}

bool exact_mode(const Config& cfg) {
  if (cfg.mode == "rational" || cfg.mode == "exact") return true;
  if (cfg.mode == "float") return false;
  throw UsageError("--mode must be 'float' or 'rational'");
}

void print_regret(std::ostream& out, const BitSequence& seq, const Tradeoff& q, bool exact) {
  if (exact) {
    const auto r = regret_exact(seq, q);
    out << "expected loss = " << to_string(r.expected_loss) << "\n";
    out << "static benchmark = " << to_string(r.static_benchmark) << "\n";
    out << "regret = " << to_string(r.regret) << "\n";
  } else {
    const auto r = regret(seq, q);
    out << "expected loss = " << format_real(r.expected_loss) << "\n";
    out << "static benchmark = " << format_real(r.static_benchmark) << "\n";
    out << "regret = " << format_real(r.regret) << "\n";
  }
}

int cmd_regret(const Config& cfg, std::ostream& out) {
  const auto seq = BitSequence::parse(cfg.seq);
  const auto q = Tradeoff::parse(cfg.q);
  const bool exact = exact_mode(cfg);
  print_regret(out, seq, q, exact);
  if (!cfg.csv.empty()) {
    auto f = open_csv(cfg.csv);
    f << "t,bit,error_prob,expected_loss\n";
    if (exact) {
      const auto r = regret_exact(seq, q);
      for (std::size_t t = 1; t <= seq.size(); ++t) {
        const auto& e = r.per_step_error_prob[t - 1];
        f << t << ',' << seq.bit(t) << ',' << to_string(e) << ',' << to_string(q.weight_exact(seq.bit(t)) * e) << '\n';
      }
    } else {
      const auto r = regret(seq, q);
      for (std::size_t t = 1; t <= seq.size(); ++t) {
        const double e = r.per_step_error_prob[t - 1];
        f << t << ',' << seq.bit(t) << ',' << format_real(e) << ',' << format_real(q.weight(seq.bit(t)) * e) << '\n';
      }
    }
  }
  return kExitOk;
}

int cmd_worst(const Config& cfg, std::ostream& out) {
  const auto q = Tradeoff::parse(cfg.q);
  const auto seq = gen_worst(cfg.length, cfg.zeros, q, cfg.tie);
  out << seq.str() << "\n";
  print_regret(out, seq, q, exact_mode(cfg));
  return kExitOk;
}

int cmd_best(const Config& cfg, std::ostream& out) {
  const auto q = Tradeoff::parse(cfg.q);
  const auto seq = gen_best(cfg.length, cfg.zeros, q);
  out << seq.str() << "\n";
  print_regret(out, seq, q, exact_mode(cfg));
  return kExitOk;
}

int cmd_brute(const Config& cfg, std::ostream& out) {
  const auto q = Tradeoff::parse(cfg.q);
  const auto report = enumerate_extremal(cfg.length, cfg.zeros, q);
  out << "sequences scanned = " << report.sequences_scanned << "\n";
  out << "argmax = " << join(report.argmax_set) << "\n";
  out << "max regret = " << to_string(report.max_regret) << "\n";
  out << "argmin = " << join(report.argmin_set) << "\n";
  out << "min regret = " << to_string(report.min_regret) << "\n";
  if (!cfg.csv.empty()) {
    auto f = open_csv(cfg.csv);
    f << "set,sequence,regret\n";
    for (const auto& s : report.argmax_set) f << "argmax," << s.str() << ',' << to_string(report.max_regret) << '\n';
    for (const auto& s : report.argmin_set) f << "argmin," << s.str() << ',' << to_string(report.min_regret) << '\n';
  }
  if (q.is_degenerate()) return kExitOk;
  const auto check = verify_worst_characterization(cfg.length, cfg.zeros, q);
  if (check.ok) {
    out << "worst-case characterization: ok\n";
    return kExitOk;
  }
  const auto& cex = *check.counterexample;
  out << "worst-case characterization: FAILED\n";
  out << "counterexample = " << cex.sequence.str() << " (" << cex.reason << ")\n";
  out << "regret = " << to_string(cex.regret) << ", max regret = " << to_string(cex.other_regret) << "\n";
  return kExitVerificationFailed;
}

int cmd_check_swap(const Config& cfg, std::ostream& out) {
  const auto q = Tradeoff::parse(cfg.q);
  const auto check = verify_swap_lemma(cfg.length, q, true);
  if (check.ok) {
    out << "swap rule and closed-form delta hold on " << check.cases_checked << " swaps\n";
    return kExitOk;
  }
  const auto& cex = *check.counterexample;
  out << "swap check FAILED at t = " << *cex.position << ": " << cex.reason << "\n";
  out << "sequence = " << cex.sequence.str() << ", regret = " << to_string(cex.regret) << "\n";
  out << "swapped = " << cex.sequence.swapped(*cex.position).str() << ", regret = " << to_string(cex.other_regret)
      << "\n";
  return kExitVerificationFailed;
}

int cmd_simulate(const Config& cfg, std::ostream& out) {
  const auto seq = BitSequence::parse(cfg.seq);
  const auto q = Tradeoff::parse(cfg.q);
  const auto seed = resolve_seed(cfg);
  const auto est = monte_carlo(seq, q, cfg.trials, seed, cfg.threads);
  const double exact = regret(seq, q).expected_loss;
  const double z = est.std_error > 0 ? (est.mean - exact) / est.std_error : 0.0;
  out << "seed = " << seed << "\n";
  out << "trials = " << est.trials << "\n";
  out << "mean loss = " << format_real(est.mean) << " +/- " << format_real(est.std_error) << "\n";
  out << "exact expected loss = " << format_real(exact) << "\n";
  out << "z = " << format_real(z) << "\n";
  if (!cfg.csv.empty()) {
    auto f = open_csv(cfg.csv);
    f << "trials,seed,mean,stderr,exact_expected_loss\n";
    f << est.trials << ',' << seed << ',' << format_real(est.mean) << ',' << format_real(est.std_error) << ','
      << format_real(exact) << '\n';
  }
  return kExitOk;
}

int cmd_scan(const Config& cfg, std::ostream& out) {
  const auto q = Tradeoff::parse(cfg.q);
  const auto ks = k_grid(cfg.kmin, cfg.kmax, cfg.steps);
  ScanOptions options;
  options.length = cfg.scan_length;
  options.pad = cfg.pad;
  options.tie_choice = cfg.tie;
  options.timing = cfg.timing;
  if (options.length) {
    for (const auto k : ks) {
      if (k > *options.length) throw UsageError("k = " + std::to_string(k) + " exceeds --T");
    }
  }
  ScanResult result;
  if (cfg.kind == "worst") {
    result = scan_worst(q, ks, options);
  } else if (cfg.kind == "best") {
    result = scan_best(q, ks, options);
  } else {
    throw UsageError("--kind must be 'worst' or 'best'");
  }

  if (cfg.out_path.empty()) {
    write_scaling_csv(out, result.rows);
  } else {
    auto f = open_csv(cfg.out_path);
    write_scaling_csv(f, result.rows);
    out << "wrote " << result.rows.size() << " rows to " << cfg.out_path << "\n";
  }
  for (const auto k : result.infeasible_k) out << "skipped infeasible k = " << k << "\n";
  if (cfg.kind == "best") {
    const auto bad = best_case_violations(result.rows);
    for (const auto& row : bad) {
      out << "best-case bound violated: T = " << row.length << ", k = " << row.k
          << ", regret = " << format_real(row.regret) << "\n";
    }
    if (!bad.empty()) return kExitVerificationFailed;
  }
  return kExitOk;
}

int cmd_tailsum(const Config& cfg, std::ostream& out) {
  const double p = parse_real(cfg.p);
  const auto r = tail_sum({cfg.n, p, cfg.terms});
  out << "first index = " << r.first_index << "\n";
  out << "terms used = " << r.terms_used << "\n";
  out << "sum = " << format_real(r.value) << "\n";
  out << "truncation bound = " << format_real(r.truncation_bound) << "\n";
  out << "sum / sqrt(n) = " << format_real(r.value / std::sqrt(static_cast<double>(cfg.n))) << "\n";
  if (!cfg.csv.empty()) {
    auto f = open_csv(cfg.csv);
    f << "n,p,first_index,terms_used,sum,truncation_bound\n";
    f << cfg.n << ',' << format_real(p) << ',' << r.first_index << ',' << r.terms_used << ',' << format_real(r.value)
      << ',' << format_real(r.truncation_bound) << '\n';
  }
  return kExitOk;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Exact and simulated regret of Thompson sampling for adversarial bit prediction", "tsbitlab"};
  app.require_subcommand(1);

  auto add_q = [&](CLI::App* sub) { sub->add_option("--q", cfg.q, "trade-off parameter, n/d or decimal")->required(); };
  auto add_shape = [&](CLI::App* sub) {
    sub->add_option("--T", cfg.length, "sequence length")->required();
    sub->add_option("--k", cfg.zeros, "number of zeros")->required();
  };
  auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", cfg.mode, "float or rational")->check(CLI::IsMember({"float", "rational", "exact"}));
  };

  auto* regret_cmd = app.add_subcommand("regret", "expected loss and regret of TS(q) on a sequence");
  regret_cmd->add_option("--seq", cfg.seq, "bit string")->required();
  add_q(regret_cmd);
  add_mode(regret_cmd);
  regret_cmd->add_option("--csv", cfg.csv, "per-step CSV output");

  auto* worst_cmd = app.add_subcommand("worst", "canonical worst-case sequence");
  add_shape(worst_cmd);
  add_q(worst_cmd);
  worst_cmd->add_option("--tie", cfg.tie, "bit taken when H^q allows both")->check(CLI::Range(0, 1));
  add_mode(worst_cmd);

  auto* best_cmd = app.add_subcommand("best", "best-case sequence");
  add_shape(best_cmd);
  add_q(best_cmd);
  add_mode(best_cmd);

  auto* brute_cmd = app.add_subcommand("brute", "exhaustive exact argmax/argmin over sequences with k zeros");
  add_shape(brute_cmd);
  add_q(brute_cmd);
  brute_cmd->add_option("--csv", cfg.csv, "CSV of the extremal sets");

  auto* swap_cmd = app.add_subcommand("check-swap", "exhaustive check of the swap rule and its closed form");
  swap_cmd->add_option("--T", cfg.length, "sequence length (2..12)")->required();
  add_q(swap_cmd);

  auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo replay of TS(q)");
  sim_cmd->add_option("--seq", cfg.seq, "bit string")->required();
  add_q(sim_cmd);
  sim_cmd->add_option("--trials", cfg.trials, "number of episodes")->check(CLI::Range(std::uint64_t{2}, UINT64_MAX));
  sim_cmd->add_option("--seed", cfg.seed, "base seed (default: $TSBITLAB_SEED, then a fixed constant)");
  sim_cmd->add_option("--threads", cfg.threads, "worker threads")->check(CLI::Range(1U, 256U));
  sim_cmd->add_option("--csv", cfg.csv, "CSV summary output");

  auto* scan_cmd = app.add_subcommand("scan", "regret scaling sweep over k");
  add_q(scan_cmd);
  scan_cmd->add_option("--kmin", cfg.kmin, "smallest k")->required();
  scan_cmd->add_option("--kmax", cfg.kmax, "largest k")->required();
  scan_cmd->add_option("--steps", cfg.steps, "grid points (geometric unless kmin = 0)")->required();
  scan_cmd->add_option("--out", cfg.out_path, "CSV path (stdout when omitted)");
  scan_cmd->add_option("--kind", cfg.kind, "worst or best")->check(CLI::IsMember({"worst", "best"}));
  scan_cmd->add_option("--T", cfg.scan_length, "fixed sequence length (default 2k + pad)");
  scan_cmd->add_option("--pad", cfg.pad, "T = 2k + pad when --T is absent");
  scan_cmd->add_option("--tie", cfg.tie, "tie bit for worst-case sequences")->check(CLI::Range(0, 1));
  scan_cmd->add_flag("--timing", cfg.timing, "record wall_time_ms (output no longer reproducible)");

  auto* tail_cmd = app.add_subcommand("tailsum", "truncated sum of Beta CDFs over the first parameter");
  tail_cmd->add_option("--n", cfg.n, "second Beta parameter minus one")->required()->check(CLI::PositiveNumber);
  tail_cmd->add_option("--p", cfg.p, "evaluation point in (0,1)")->required();
  tail_cmd->add_option("--terms", cfg.terms, "maximum number of summands")->check(CLI::PositiveNumber);
  tail_cmd->add_option("--csv", cfg.csv, "CSV output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (regret_cmd->parsed()) return cmd_regret(cfg, out);
    if (worst_cmd->parsed()) return cmd_worst(cfg, out);
    if (best_cmd->parsed()) return cmd_best(cfg, out);
    if (brute_cmd->parsed()) return cmd_brute(cfg, out);
    if (swap_cmd->parsed()) return cmd_check_swap(cfg, out);
    if (sim_cmd->parsed()) return cmd_simulate(cfg, out);
    if (scan_cmd->parsed()) return cmd_scan(cfg, out);
    if (tail_cmd->parsed()) return cmd_tailsum(cfg, out);
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitVerificationFailed;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IndexError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BudgetError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace tsbitlab::cli
