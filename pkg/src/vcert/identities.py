"""Exact identity suites comparing the engine against closed forms.

Each suite returns a list of :class:`Check` records, one per instance, so the
command line and the tests can report failures individually.

* ``associativity`` -- ``(L_{-m}L_{-n}1)_(-1) u`` computed directly against the
  expansion with the coefficients ``alpha_{m-1,n-1;i}``, for every basis vector
  ``u`` up to a weight bound.
* ``four-mode`` -- ``(L_{-m}L_{-n}1)_(-1) L_{-p}L_{-q}1`` against the
  seven-term closed form (reading selectable).
* ``commutator`` -- ``[a_(m), b_(n)] u`` against ``sum_i binom(m,i) (a_(i)b)_(m+n-i) u``
  for small states ``a, b, u``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .formulas import READINGS, associativity_rhs, commutator_sides, four_mode_product
from .virasoro import OMEGA, State, basis, normal_order, nth_product

__all__ = ["Check", "SUITES", "associativity_suite", "four_mode_suite", "commutator_suite", "run_suite"]


@dataclass(frozen=True)
class Check:
    suite: str
    params: dict
    passed: bool


def _states(max_weight: int) -> list:
    return [(u, State({u: 1})) for w in range(max_weight + 1) for u in basis(w)]


def associativity_suite(m_range: Iterable[int] = range(2, 6), max_weight: int = 6) -> list:
    ms = list(m_range)
    if min(ms, default=2) < 2:
        raise ValueError("mode indices must be >= 2")
    out = []
    for m in ms:
        for n in ms:
            lhs_state = normal_order([-m, -n])
            for u, U in _states(max_weight):
                lhs = nth_product(lhs_state, -1, U)
                rhs = associativity_rhs(OMEGA, m - 1, OMEGA, n - 1, U)
                out.append(Check("associativity", {"m": m, "n": n, "u": u}, lhs == rhs))
    return out


def four_mode_suite(m_range: Iterable[int] = range(3, 6), p_range: Iterable[int] = range(2, 4),
                    reading: str = "corrected") -> list:
    if reading not in READINGS:
        raise ValueError(f"unknown reading {reading!r}")
    ms, ps = list(m_range), list(p_range)
    if min(ms, default=2) < 2 or min(ps, default=2) < 2:
        raise ValueError("mode indices must be >= 2")
    out = []
    for m in ms:
        for n in ms:
            a = normal_order([-m, -n])
            for p in ps:
                for q in ps:
                    lhs = nth_product(a, -1, normal_order([-p, -q]))
                    rhs = four_mode_product(m, n, p, q, reading)
                    out.append(Check("four-mode", {"m": m, "n": n, "p": p, "q": q,
                                                   "reading": reading}, lhs == rhs))
    return out


_SMALL = ((2,), (3,), (2, 2), (4,))


def commutator_suite(m_range: Iterable[int] = range(-3, 4), max_weight: int = 4) -> list:
    ms = list(m_range)
    out = []
    for a in _SMALL:
        for b in _SMALL:
            A, B = State({a: 1}), State({b: 1})
            for u, U in _states(max_weight):
                for m in ms:
                    for n in ms:
                        lhs, rhs = commutator_sides(A, m, B, n, U)
                        out.append(Check("commutator", {"a": a, "b": b, "m": m, "n": n, "u": u},
                                         lhs == rhs))
    return out


SUITES: dict[str, Callable[..., list]] = {
    "associativity": associativity_suite,
    "four-mode": four_mode_suite,
    "commutator": commutator_suite,
}


def run_suite(name: str, **kwargs) -> list:
    if name not in SUITES:
        raise KeyError(f"unknown identity {name!r}; known: {', '.join(sorted(SUITES))}")
    return SUITES[name](**kwargs)
