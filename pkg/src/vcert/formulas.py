"""Closed-form right-hand sides that the engine is checked against.

* :func:`associativity_rhs` -- the expansion of ``(a_(-m) b_(-n) 1)_(-1) u``
  as a finite sum of iterated modes, with the coefficients ``alpha_coeff``.
* :func:`four_mode_product` -- the seven-term closed form of
  ``(L_{-m}L_{-n}1)_(-1) L_{-p}L_{-q}1``.  Two readings are provided: the
  printed one attaches ``binom(q+1,3)`` to the ``L_{-m-n-p}L_{-q}`` central term
  and ``binom(p+1,3)`` to ``L_{-m-n-q}L_{-p}``; the corrected one swaps them,
  which is what the commutator ``[L_p, L_{-p}]`` actually produces.
* :func:`commutator_sides` -- both sides of the commutator formula
  ``[a_(m), b_(n)] u = sum_i binom(m,i) (a_(i) b)_(m+n-i) u``.
"""

from __future__ import annotations

from fractions import Fraction

from .exact import CPoly, binom
from .virasoro import State, alpha_coeff, apply_mode, c_coeff, normal_order, nth_product

__all__ = [
    "READINGS",
    "associativity_rhs",
    "four_mode_product",
    "commutator_sides",
]

READINGS = ("corrected", "printed")

_HALF_C = CPoly((0, Fraction(1, 2)))


def _max_weight(s: State) -> int:
    return max(s.weights(), default=0)


def associativity_rhs(a: State, m: int, b: State, n: int, u: State) -> State:
    """``a_(-m) b_(-n) u + sum_i (alpha_{m,n;i} a_(-m-n-i) b_(i) u + alpha_{n,m;i} b_(-m-n-i) a_(i) u)``."""
    if m < 1 or n < 1:
        raise ValueError("associativity_rhs needs m, n >= 1")
    out = nth_product(a, -m, nth_product(b, -n, u))
    top = max(_max_weight(a), _max_weight(b)) + _max_weight(u)
    for i in range(0, top + 1):
        bu = nth_product(b, i, u)
        if bu:
            out = out + nth_product(a, -m - n - i, bu) * alpha_coeff(m, n, i)
        au = nth_product(a, i, u)
        if au:
            out = out + nth_product(b, -m - n - i, au) * alpha_coeff(n, m, i)
    return out


def four_mode_product(m: int, n: int, p: int, q: int, reading: str = "corrected") -> State:
    """Closed form of ``(L_{-m}L_{-n}1)_(-1) L_{-p}L_{-q}1`` for ``m, n, p, q >= 2``."""
    if min(m, n, p, q) < 2:
        raise ValueError("four_mode_product needs m, n, p, q >= 2")
    if reading not in READINGS:
        raise ValueError(f"unknown reading {reading!r}")

    def cc(i: int) -> Fraction:
        return c_coeff(m - 1, n - 1, i)

    out = normal_order([-m, -n, -p, -q])
    for i in range(0, p):
        out = out + normal_order([-m - n + 1 - i, -q, i - p - 1]) * (cc(i) * (p + i - 1))
    for i in range(0, q):
        out = out + normal_order([-m - n + 1 - i, -p, i - q - 1]) * (cc(i) * (q + i - 1))
    for i in range(0, p + q):
        out = out + normal_order([-m - n + 1 - i, i - p - q - 1]) * (
            cc(i) * (p + i - 1) * (q + i - p - 1))
    if reading == "printed":
        bp, bq = binom(q + 1, 3), binom(p + 1, 3)
    else:
        bp, bq = binom(p + 1, 3), binom(q + 1, 3)
    out = out + normal_order([-m - n - p, -q]) * (_HALF_C * (cc(p + 1) * bp))
    out = out + normal_order([-m - n - q, -p]) * (_HALF_C * (cc(q + 1) * bq))
    out = out + normal_order([-m - n - p - q]) * (
        _HALF_C * (cc(p + q + 1) * (2 * p + q) * binom(q + 1, 3)))
    return out


def commutator_sides(a: State, m: int, b: State, n: int, u: State) -> tuple[State, State]:
    """``([a_(m), b_(n)] u, sum_i binom(m,i) (a_(i) b)_(m+n-i) u)``."""
    lhs = nth_product(a, m, nth_product(b, n, u)) - nth_product(b, n, nth_product(a, m, u))
    rhs = State()
    for i in range(0, _max_weight(a) + _max_weight(b) + 1):
        ab = nth_product(a, i, b)
        coef = binom(m, i)
        if ab and coef:
            rhs = rhs + nth_product(ab, m + n - i, u) * coef
    return lhs, rhs
