"""The universal Virasoro vacuum vertex algebra at formal central charge.

A basis vector ``L_{-k1} ... L_{-kr} 1`` with ``k1 >= ... >= kr >= 2`` is
stored as the tuple ``(k1, ..., kr)``; the empty tuple is the vacuum.  Mode
labels inside a monomial are the *positive* numbers ``k`` of ``L_{-k}``,
while ``apply_mode`` and ``normal_order`` take the actual operator index
``n`` of ``L_n``.

Coefficients are :class:`~vcert.exact.CPoly` (polynomials in ``c``).
Monomial-level products are memoized; states are immutable.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator, Mapping, Sequence

from .exact import CPoly, Scalar, binom

Monomial = tuple

__all__ = [
    "Monomial",
    "State",
    "monomial",
    "weight",
    "partitions_min2",
    "basis",
    "normal_order",
    "apply_mode",
    "translate",
    "nth_product",
    "alpha_coeff",
    "c_coeff",
    "d_coeff",
    "VACUUM",
    "OMEGA",
]

_ZERO = CPoly()
_ONE = CPoly.const(1)
_HALF_C = CPoly((0, Fraction(1, 2)))


def monomial(*ks: int) -> Monomial:
    """Validated monomial ``L_{-k1}...L_{-kr} 1``."""
    ks = tuple(int(k) for k in ks)
    if any(k < 2 for k in ks) or any(a < b for a, b in zip(ks, ks[1:])):
        raise ValueError(f"{ks} is not a nonincreasing sequence of modes >= 2")
    return ks


def weight(mono: Monomial) -> int:
    return sum(mono)


@lru_cache(maxsize=None)
def partitions_min2(d: int, largest: int | None = None) -> tuple:
    """Partitions of ``d`` into parts >= 2, each as a nonincreasing tuple."""
    if largest is None:
        largest = d
    if d == 0:
        return ((),)
    out = []
    for k in range(min(d, largest), 1, -1):
        for rest in partitions_min2(d - k, k):
            out.append((k,) + rest)
    return tuple(out)


def basis(d: int) -> tuple:
    """Monomial basis of the weight ``d`` subspace, in a fixed order."""
    return partitions_min2(d)


# ---------------------------------------------------------------------------
# dict-level helpers; dicts returned from cached functions are never mutated

def _acc(out: dict, terms: Mapping, scale) -> None:
    for mono, x in terms.items():
        y = x * scale
        if not y:
            continue
        prev = out.get(mono)
        if prev is None:
            out[mono] = y
        else:
            s = prev + y
            if s:
                out[mono] = s
            else:
                del out[mono]


@lru_cache(maxsize=None)
def _apply(n: int, mono: Monomial) -> dict:
    """``L_n`` applied to a basis monomial, normal ordered."""
    if not mono:
        return {} if n >= -1 else {(-n,): _ONE}
    k1 = mono[0]
    if -n >= k1:
        return {(-n,) + mono: _ONE}
    rest = mono[1:]
    out: dict = {}
    # L_n L_{-k1} R = L_{-k1} L_n R + (n + k1) L_{n-k1} R + central
    for m2, x in _apply(n, rest).items():
        _acc(out, _apply(-k1, m2), x)
    if n + k1:
        _acc(out, _apply(n - k1, rest), CPoly.const(n + k1))
    if n == k1:
        central = binom(n + 1, 3)
        if central:
            out_c = {rest: _HALF_C * central}
            _acc(out, out_c, _ONE)
    return out


def _apply_terms(n: int, terms: Mapping) -> dict:
    out: dict = {}
    for mono, x in terms.items():
        _acc(out, _apply(n, mono), x)
    return out


@lru_cache(maxsize=None)
def _nth(a: Monomial, n: int, b: Monomial) -> dict:
    """``a_(n) b`` for basis monomials via the associativity recursion."""
    if not a:
        return {b: _ONE} if n == -1 else {}
    wa, wb = weight(a), weight(b)
    if n >= wa + wb:
        return {}
    k1 = a[0]
    a2 = a[1:]
    wa2 = wa - k1
    m = 1 - k1  # a = omega_(m) a2
    out: dict = {}
    sign_m = -1 if m % 2 else 1
    # sum_i binom(m,i) (-1)^i omega_(m-i) a2_(n+i) b
    i = 0
    while n + i < wa2 + wb:
        coef = binom(m, i) * (-1 if i % 2 else 1)
        inner = _nth(a2, n + i, b)
        if inner and coef:
            _acc(out, _apply_terms(m - i - 1, inner), coef)
        i += 1
    # - sum_i binom(m,i) (-1)^(i+m) a2_(m+n-i) omega_(i) b
    for i in range(0, wb + 2):
        coef = binom(m, i) * (-1 if i % 2 else 1) * sign_m
        if not coef:
            continue
        lb = _apply(i - 1, b)
        for mono, x in lb.items():
            _acc(out, _nth(a2, m + n - i, mono), -coef * x)
    return out


class State:
    """Finite linear combination of monomials with ``CPoly`` coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        clean: dict = {}
        if terms:
            for mono, x in terms.items():
                if not isinstance(x, CPoly):
                    x = CPoly.const(x) if not hasattr(x, "to_cpoly") else x.to_cpoly()
                if x:
                    clean[tuple(mono)] = x
        self.terms = clean

    @classmethod
    def _wrap(cls, terms: dict) -> "State":
        obj = cls.__new__(cls)
        obj.terms = dict(terms)
        return obj

    @classmethod
    def basis_vector(cls, mono: Sequence[int], coeff: Scalar | CPoly = 1) -> "State":
        return cls({monomial(*mono): coeff})

    def __iter__(self) -> Iterator:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, State):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "State") -> "State":
        out = dict(self.terms)
        _acc(out, other.terms, _ONE)
        return State._wrap(out)

    def __sub__(self, other: "State") -> "State":
        out = dict(self.terms)
        _acc(out, other.terms, CPoly.const(-1))
        return State._wrap(out)

    def __neg__(self) -> "State":
        return State._wrap({k: -v for k, v in self.terms.items()})

    def __mul__(self, scalar) -> "State":
        if not isinstance(scalar, CPoly):
            scalar = CPoly.const(scalar) if not hasattr(scalar, "to_cpoly") else scalar.to_cpoly()
        out: dict = {}
        _acc(out, self.terms, scalar)
        return State._wrap(out)

    __rmul__ = __mul__

    def coeff(self, mono: Sequence[int]) -> CPoly:
        return self.terms.get(tuple(mono), _ZERO)

    def weights(self) -> set:
        return {weight(m) for m in self.terms}

    def by_weight(self) -> dict:
        out: dict = {}
        for mono, x in self.terms.items():
            out.setdefault(weight(mono), {})[mono] = x
        return {w: State._wrap(t) for w, t in sorted(out.items())}

    def is_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    def specialize(self, c: Scalar) -> dict:
        """Coefficients evaluated at a concrete central charge (reporting only)."""
        out = {}
        for mono, x in self.terms.items():
            v = x(c)
            if v:
                out[mono] = v
        return out

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, x in sorted(self.terms.items(), key=lambda t: (weight(t[0]), t[0])):
            word = "".join(f"L_{{-{k}}}" for k in mono) + "1"
            parts.append(f"({x!r})*{word}")
        return " + ".join(parts)


VACUUM = State({(): 1})
OMEGA = State({(2,): 1})


def normal_order(word: Iterable[int]) -> State:
    """``L_{n1} ... L_{ns} 1`` written in the monomial basis."""
    terms: dict = {(): _ONE}
    for n in reversed(list(word)):
        terms = _apply_terms(int(n), terms)
        if not terms:
            break
    return State._wrap(terms)


def apply_mode(n: int, s: State) -> State:
    """``L_n s``."""
    return State._wrap(_apply_terms(int(n), s.terms))


def translate(s: State) -> State:
    """The translation operator ``L_{-1}``."""
    return apply_mode(-1, s)


def nth_product(a: State, n: int, b: State) -> State:
    """The vertex algebra product ``a_(n) b``."""
    out: dict = {}
    for ma, xa in a.terms.items():
        for mb, xb in b.terms.items():
            _acc(out, _nth(ma, int(n), mb), xa * xb)
    return State._wrap(out)


def alpha_coeff(m: int, n: int, i: int) -> Fraction:
    """Coefficient of ``a_(-m-n-i) b_(i) u`` in ``(a_(-m) b_(-n) 1)_(-1) u``."""
    if m < 1 or n < 1 or i < 0:
        raise ValueError("alpha_coeff needs m, n >= 1 and i >= 0")
    pre = Fraction(factorial(m + n - 1), factorial(m - 1) * factorial(n - 1))
    sign = -1 if (n - 1) % 2 else 1
    return pre * binom(m + n - 1 + i, i) * sign / (n + i)


def c_coeff(m: int, n: int, i: int) -> Fraction:
    return alpha_coeff(m, n, i) + alpha_coeff(n, m, i)


def d_coeff(m: int, n: int) -> Fraction:
    return (m + n) * c_coeff(m, n, 0) - 2 * c_coeff(m, n, 1)


def clear_caches() -> None:
    _apply.cache_clear()
    _nth.cache_clear()
