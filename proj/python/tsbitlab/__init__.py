"""Exact and simulated regret of Thompson sampling on adversarial bit sequences."""

from fractions import Fraction

from . import _core
from ._core import BudgetError, InfeasibleError, __version__, beta_cdf

__all__ = [
    "BudgetError",
    "InfeasibleError",
    "beta_cdf",
    "decompose",
    "enumerate_extremal",
    "gen_best",
    "gen_worst",
    "hq",
    "monte_carlo",
    "regret",
    "regret_exact",
]


def _q(q):
    # Floats go through their decimal repr so 0.3 means 3/10, not the binary double.
    if isinstance(q, str):
        return q
    if isinstance(q, (int, Fraction)):
        q = Fraction(q)
        return f"{q.numerator}/{q.denominator}"
    if isinstance(q, float):
        return repr(q)
    raise TypeError(f"q must be str, int, float or Fraction, not {type(q).__name__}")


def regret(seq, q):
    return _core.regret(seq, _q(q))


def regret_exact(seq, q):
    return _core.regret_exact(seq, _q(q))


def gen_worst(T, k, q, tie=0):
    return _core.gen_worst(T, k, _q(q), tie)


def gen_best(T, k, q):
    return _core.gen_best(T, k, _q(q))


def hq(ones, zeros, q):
    return _core.hq(ones, zeros, _q(q))


def decompose(seq, q):
    return _core.decompose(seq, _q(q))


def enumerate_extremal(T, k, q):
    return _core.enumerate_extremal(T, k, _q(q))


def monte_carlo(seq, q, trials, seed=20200101):
    return _core.monte_carlo(seq, _q(q), trials, seed)
