#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "tsbitlab/beta_math.hpp"
#include "tsbitlab/errors.hpp"
#include "tsbitlab/mc_sim.hpp"
#include "tsbitlab/oracle.hpp"
#include "tsbitlab/prediction.hpp"
#include "tsbitlab/sequence_lab.hpp"

namespace py = pybind11;
using namespace tsbitlab;

namespace {

py::object fraction(const Rational& r) {
  static const py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(to_string(r));
}

py::list strings(const std::vector<BitSequence>& seqs) {
  py::list out;
  for (const auto& s : seqs) out.append(s.str());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = R"pbdoc(
        Exact and simulated regret of Thompson sampling on adversarial bit sequences.

        Sequences are strings of '0'/'1'. The trade-off q is a string "n/d" or a
        decimal literal; it is converted to an exact rational.
    )pbdoc";

  py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);
  py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);

  m.def(
      "regret",
      [](const std::string& seq, const std::string& q) {
        const auto r = regret(BitSequence::parse(seq), Tradeoff::parse(q));
        py::dict d;
        d["per_step_error_prob"] = r.per_step_error_prob;
        d["expected_loss"] = r.expected_loss;
        d["static_benchmark"] = r.static_benchmark;
        d["regret"] = r.regret;
        return d;
      },
      R"pbdoc(Float-engine regret breakdown as a dict.)pbdoc", py::arg("seq"), py::arg("q"));

  m.def(
      "regret_exact",
      [](const std::string& seq, const std::string& q) {
        const auto r = regret_exact(BitSequence::parse(seq), Tradeoff::parse(q));
        py::list steps;
        for (const auto& p : r.per_step_error_prob) steps.append(fraction(p));
        py::dict d;
        d["per_step_error_prob"] = steps;
        d["expected_loss"] = fraction(r.expected_loss);
        d["static_benchmark"] = fraction(r.static_benchmark);
        d["regret"] = fraction(r.regret);
        return d;
      },
      R"pbdoc(Exact regret breakdown; every value is a fractions.Fraction.)pbdoc", py::arg("seq"), py::arg("q"));

  m.def(
      "gen_worst",
      [](std::int64_t length, std::int64_t zeros, const std::string& q, int tie) {
        return gen_worst(length, zeros, Tradeoff::parse(q), tie).str();
      },
      R"pbdoc(Canonical worst-case sequence with `k` zeros. Raises InfeasibleError when none is built.)pbdoc",
      py::arg("T"), py::arg("k"), py::arg("q"), py::arg("tie") = 0);

  m.def(
      "gen_best",
      [](std::int64_t length, std::int64_t zeros, const std::string& q) {
        return gen_best(length, zeros, Tradeoff::parse(q)).str();
      },
      py::arg("T"), py::arg("k"), py::arg("q"));

  m.def(
      "hq",
      [](std::int64_t ones, std::int64_t zeros, const std::string& q) {
        const auto v = hq(ones, zeros, Tradeoff::parse(q));
        py::set s;
        if (v.allows_zero) s.add(0);
        if (v.allows_one) s.add(1);
        return py::frozenset(s);
      },
      R"pbdoc(Bits allowed next after `ones` ones and `zeros` zeros.)pbdoc", py::arg("ones"), py::arg("zeros"),
      py::arg("q"));

  m.def(
      "decompose",
      [](const std::string& seq, const std::string& q) {
        const auto d = decompose(BitSequence::parse(seq), Tradeoff::parse(q));
        py::dict out;
        out["head_len"] = d.head_len;
        out["tail_bit"] = d.tail_bit ? py::object(py::int_(*d.tail_bit)) : py::object(py::none());
        out["is_worst_case"] = d.is_worst_case;
        return out;
      },
      py::arg("seq"), py::arg("q"));

  m.def(
      "beta_cdf", [](std::int64_t a, std::int64_t b, double x) { return beta_cdf({a, b}, x); },
      R"pbdoc(CDF of Beta(a, b) at x for integer a, b >= 1.)pbdoc", py::arg("a"), py::arg("b"), py::arg("x"));

  m.def(
      "enumerate_extremal",
      [](std::int64_t length, std::int64_t zeros, const std::string& q) {
        const auto r = enumerate_extremal(length, zeros, Tradeoff::parse(q));
        py::dict d;
        d["argmax"] = strings(r.argmax_set);
        d["argmin"] = strings(r.argmin_set);
        d["max_regret"] = fraction(r.max_regret);
        d["min_regret"] = fraction(r.min_regret);
        d["sequences_scanned"] = r.sequences_scanned;
        return d;
      },
      R"pbdoc(Exhaustive exact argmax/argmin of regret over sequences of length T with k zeros.)pbdoc",
      py::arg("T"), py::arg("k"), py::arg("q"));

  m.def(
      "monte_carlo",
      [](const std::string& seq, const std::string& q, std::uint64_t trials, std::uint64_t seed) {
        const BitSequence s = BitSequence::parse(seq);
        const Tradeoff t = Tradeoff::parse(q);
        MonteCarloEstimate e;
        {
          py::gil_scoped_release release;
          e = monte_carlo(s, t, trials, seed);
        }
        return py::make_tuple(e.mean, e.std_error);
      },
      R"pbdoc(Mean realized loss and its standard error over `trials` seeded episodes.)pbdoc", py::arg("seq"),
      py::arg("q"), py::arg("trials"), py::arg("seed"));

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "dev";
#endif
}
