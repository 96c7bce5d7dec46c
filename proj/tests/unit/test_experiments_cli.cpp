#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "tsbitlab/experiments.hpp"

using namespace tsbitlab;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "tsbitlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("tsbitlab_test_" + name);
}

}  // namespace

TEST_CASE("regret subcommand") {
  const auto r = run({"regret", "--seq", "01", "--q", "1/2", "--mode", "rational"});
  CHECK(r.code == 0);
  CHECK(r.out.find("regret = 1/8\n") != std::string::npos);
  const auto f = run({"regret", "--seq", "110", "--q", "0.5"});
  CHECK(f.code == 0);
  CHECK(f.out.find("regret = 0.3125\n") != std::string::npos);
}

TEST_CASE("worst, best and brute subcommands") {
  const auto w = run({"worst", "--T", "7", "--k", "2", "--q", "1/2"});
  CHECK(w.code == 0);
  CHECK(w.out.rfind("0101111\n", 0) == 0);
  const auto b = run({"best", "--T", "7", "--k", "2", "--q", "1/2"});
  CHECK(b.out.rfind("1111100\n", 0) == 0);
  const auto br = run({"brute", "--T", "4", "--k", "2", "--q", "1/2"});
  CHECK(br.code == 0);
  CHECK(br.out.find("argmax = {0101, 0110, 1001, 1010}") != std::string::npos);
  CHECK(br.out.find("argmin = {0011, 1100}") != std::string::npos);
  const auto sw = run({"check-swap", "--T", "6", "--q", "2/5"});
  CHECK(sw.code == 0);
}

TEST_CASE("exit codes for bad arguments") {
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run({"regret", "--seq", "01"}).code == cli::kExitUsage);
  CHECK(run({"regret", "--seq", "01", "--q", "3/2"}).code == cli::kExitUsage);
  CHECK(run({"regret", "--seq", "0a1", "--q", "1/2"}).code == cli::kExitUsage);
  CHECK(run({"worst", "--T", "3", "--k", "5", "--q", "1/2"}).code == cli::kExitUsage);
  CHECK(run({"brute", "--T", "25", "--k", "3", "--q", "1/2"}).code == cli::kExitUsage);
  CHECK(run({"check-swap", "--T", "13", "--q", "1/2"}).code == cli::kExitUsage);
  CHECK(run({"simulate", "--seq", "01", "--q", "1/2", "--trials", "1"}).code == cli::kExitUsage);
  CHECK(run({"scan", "--q", "1/2", "--kmin", "5", "--kmax", "2", "--steps", "3"}).code == cli::kExitUsage);
  CHECK(run({"--help"}).code == cli::kExitOk);
}

TEST_CASE("simulate honours the seed flag and the environment") {
  const auto a = run({"simulate", "--seq", "0110", "--q", "1/3", "--trials", "5000", "--seed", "9"});
  const auto b = run({"simulate", "--seq", "0110", "--q", "1/3", "--trials", "5000", "--seed", "9"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("seed = 9\n", 0) == 0);

  ::setenv("TSBITLAB_SEED", "9", 1);
  const auto env = run({"simulate", "--seq", "0110", "--q", "1/3", "--trials", "5000"});
  ::setenv("TSBITLAB_SEED", "not-a-number", 1);
  const auto bad = run({"simulate", "--seq", "0110", "--q", "1/3", "--trials", "5000"});
  ::unsetenv("TSBITLAB_SEED");
  CHECK(env.out == a.out);
  CHECK(bad.code == cli::kExitUsage);
}

TEST_CASE("scan csv is byte-identical across runs") {
  const auto p1 = temp_file("scan1.csv");
  const auto p2 = temp_file("scan2.csv");
  CHECK(run({"scan", "--q", "1/3", "--kmin", "1", "--kmax", "500", "--steps", "7", "--out", p1.string()}).code == 0);
  CHECK(run({"scan", "--q", "1/3", "--kmin", "1", "--kmax", "500", "--steps", "7", "--out", p2.string()}).code == 0);
  const auto text = slurp(p1);
  CHECK(text == slurp(p2));
  CHECK(text.rfind("k,T,q,regret,regret_over_sqrt,engine_mode,wall_time_ms\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  std::filesystem::remove(p1);
  std::filesystem::remove(p2);
}

TEST_CASE("best scan passes and reports rows") {
  const auto r = run({"scan", "--kind", "best", "--q", "1/2", "--kmin", "0", "--kmax", "5000", "--steps", "6", "--T",
                      "10000"});
  CHECK(r.code == 0);
  CHECK(r.out.find("violated") == std::string::npos);
}

TEST_CASE("tailsum subcommand") {
  const auto r = run({"tailsum", "--n", "1", "--p", "1/2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("first index = 2\n") != std::string::npos);
}

TEST_CASE("scan rows") {
  const std::vector<std::int64_t> ks{0, 1, 10, 100};
  const auto res = scan_worst(Tradeoff::half(), ks);
  REQUIRE(res.rows.size() == 4);
  CHECK(res.rows[0].length == 0);
  CHECK(std::isnan(res.rows[0].regret_over_sqrt));
  CHECK(res.rows[1].regret == doctest::Approx(0.125));
  CHECK(res.rows[3].regret_over_sqrt == doctest::Approx(res.rows[3].regret / 10.0));
  for (const auto& row : res.rows) CHECK(row.wall_time_ms == 0.0);

  ScanOptions fixed;
  fixed.length = 40;
  const std::vector<std::int64_t> zero{0};
  const auto ones = scan_worst(Tradeoff::half(), zero, fixed);
  CHECK(ones.rows[0].regret <= 0.5);

  const std::vector<std::int64_t> one{1};
  CHECK(scan_best(Tradeoff::half(), one, ScanOptions{3}).rows[0].regret == doctest::Approx(5.0 / 16));
}

TEST_CASE("best case at q = 1/4 with qm <= (1-q)n") {
  ScanOptions opt;
  opt.length = 133;
  const std::vector<std::int64_t> k{33};
  const auto r = scan_best(Tradeoff(1, 4), k, opt);
  CHECK(r.rows[0].regret <= 1.0);
}

TEST_CASE("k grid") {
  CHECK(k_grid(64, 16384, 9) == std::vector<std::int64_t>{64, 128, 256, 512, 1024, 2048, 4096, 8192, 16384});
  CHECK(k_grid(0, 10, 3) == std::vector<std::int64_t>{0, 5, 10});
  CHECK(k_grid(1, 3, 10) == std::vector<std::int64_t>{1, 2, 3});
  CHECK(k_grid(7, 7, 4) == std::vector<std::int64_t>{7});
  CHECK(format_real(0.1) == "0.10000000000000001");
}
