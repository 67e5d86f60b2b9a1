"""Reduction of states to canonical vectors in the image of eta-bar.

Keys of an :class:`EtaVec` are plain tuples so they hash and sort cheaply:

* ``UNIT``              the unit ``1 (x) 1`` of the quotient algebra
* ``("B1", b)``         eta-bar(L_{-b} L_{-2} 1), ``b`` even
* ``("B2", a)``         eta-bar(L_{-a} L_{-2} L_{-2} 1), ``a`` even
* ``("opaque", mono)``  eta-bar of a monomial outside every rule domain
* ``("prod", keys)``    formal commutative product of at least two keys

Rule domains on normal-ordered monomials, longest pattern first:

* length 3, all parts >= 3          ->  -f(m,n,l) B1(m+n+l-2)
* length 3, shape (m, n, 2), n >= 3 ->  half of binom-term B2 plus g(m,n) B1
* length 3, shape (a, 2, 2)         ->  B2(a)
* length 2                          ->  (-1)^n binom(m+n-4, n-2) B1(m+n-2)
* length 1, mode >= 3               ->  0
* vacuum                            ->  2 UNIT

B1 and B2 keys of odd label vanish.  For B1 this is the parity clause of the
length-2 rule; for B2 it follows from the length-2 parity clause together with
``eta(L_{-a} w) . eta(w) = eta(L_{-a}L_{-2} w) - d_{a-1,1} eta(L_{-a-2} w)``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .exact import CLin, CPoly, Scalar, binom
from .virasoro import (
    State,
    alpha_coeff,
    apply_mode,
    d_coeff,
    normal_order,
    nth_product,
    weight,
    OMEGA,
)

UNIT = ("unit",)

__all__ = [
    "UNIT",
    "B1",
    "B2",
    "opaque",
    "product_key",
    "key_weight",
    "key_preimage_factors",
    "EtaVec",
    "f_coeff",
    "g_coeff",
    "reduce_monomial",
    "eta_reduce",
    "eta_product",
    "product_expand",
]


def B1(b: int) -> tuple:
    return ("B1", int(b))


def B2(a: int) -> tuple:
    return ("B2", int(a))


def opaque(mono: tuple) -> tuple:
    return ("opaque", tuple(mono))


def product_key(keys: Iterable[tuple]) -> tuple:
    """Formal product of keys; flattens nested products and drops units."""
    flat: list = []
    for k in keys:
        if k == UNIT:
            continue
        if k[0] == "prod":
            flat.extend(k[1])
        else:
            flat.append(k)
    if not flat:
        return UNIT
    if len(flat) == 1:
        return flat[0]
    return ("prod", tuple(sorted(flat, key=_key_sort)))


def key_weight(key: tuple) -> int:
    kind = key[0]
    if kind == "unit":
        return 0
    if kind == "B1":
        return key[1] + 2
    if kind == "B2":
        return key[1] + 4
    if kind == "opaque":
        return weight(key[1])
    return sum(key_weight(k) for k in key[1])


def _key_sort(key: tuple):
    return (key_weight(key), repr(key))


def key_preimage_factors(key: tuple) -> list:
    """Monomials whose eta-images multiply to ``key`` (empty list for the unit)."""
    kind = key[0]
    if kind == "unit":
        return []
    if kind == "B1":
        return [(key[1], 2)]
    if kind == "B2":
        return [(key[1], 2, 2)]
    if kind == "opaque":
        return [key[1]]
    out = []
    for k in key[1]:
        out.extend(key_preimage_factors(k))
    return out


def _to_cpoly(x) -> CPoly:
    if isinstance(x, CPoly):
        return x
    if isinstance(x, CLin):
        return x.to_cpoly()
    return CPoly.const(x)


class EtaVec:
    """Linear combination of eta-bar keys; coefficients are polynomials in ``c``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        for k, x in (terms or {}).items():
            x = _to_cpoly(x)
            if x:
                clean[k] = x
        self.terms = clean

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, EtaVec):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def _combine(self, other: "EtaVec", sign: int) -> "EtaVec":
        out = dict(self.terms)
        for k, x in other.terms.items():
            y = out.get(k, CPoly()) + (x if sign > 0 else -x)
            if y:
                out[k] = y
            else:
                out.pop(k, None)
        return EtaVec(out)

    def __add__(self, other: "EtaVec") -> "EtaVec":
        return self._combine(other, 1)

    def __sub__(self, other: "EtaVec") -> "EtaVec":
        return self._combine(other, -1)

    def __neg__(self) -> "EtaVec":
        return EtaVec({k: -x for k, x in self.terms.items()})

    def __mul__(self, scalar) -> "EtaVec":
        s = _to_cpoly(scalar)
        return EtaVec({k: x * s for k, x in self.terms.items()})

    __rmul__ = __mul__

    def coeff(self, key: tuple) -> CPoly:
        return self.terms.get(key, CPoly())

    def clin(self, key: tuple) -> CLin:
        """Coefficient of ``key`` under the linear-in-``c`` contract."""
        return CLin.from_cpoly(self.coeff(key))

    def keys(self) -> list:
        return sorted(self.terms, key=_key_sort)

    def weights(self) -> set:
        return {key_weight(k) for k in self.terms}

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({self.terms[k]!r})*{k}" for k in self.keys())


def f_coeff(m: int, n: int, l: int) -> Fraction:
    if min(m, n, l) < 3:
        raise ValueError("f_coeff needs m, n, l >= 3")
    t = m + n + l - 4
    sl = -1 if l % 2 else 1
    sml = -1 if (m + l) % 2 else 1
    sm = -1 if m % 2 else 1
    return Fraction(1, 2) * (
        (m - n) * binom(t, l - 2) * sl
        + (m - l) * binom(t, n - 2) * sml
        + (n - l) * binom(t, m - 2) * sm
    )


def g_coeff(m: int, n: int) -> Fraction:
    if min(m, n) < 3:
        raise ValueError("g_coeff needs m, n >= 3")
    sn = -1 if n % 2 else 1
    return -binom(m + n - 4, n - 2) * sn * d_coeff(m + n - 3, 1) - m + n + d_coeff(m - 1, n - 1)


def _b1(b: int, x: Fraction, out: dict) -> None:
    if b % 2 == 0 and x:
        out[B1(b)] = out.get(B1(b), 0) + x


def _b2(a: int, x: Fraction, out: dict) -> None:
    if a % 2 == 0 and x:
        out[B2(a)] = out.get(B2(a), 0) + x


@lru_cache(maxsize=None)
def reduce_monomial(mono: tuple) -> tuple:
    """Rational combination of keys equal to eta-bar of a normal-ordered monomial."""
    r = len(mono)
    out: dict = {}
    if r == 0:
        out[UNIT] = Fraction(2)
    elif r == 1:
        if mono[0] == 2:
            out[opaque(mono)] = Fraction(1)
    elif r == 2:
        m, n = mono
        sn = -1 if n % 2 else 1
        _b1(m + n - 2, sn * binom(m + n - 4, n - 2), out)
    elif r == 3:
        m, n, l = mono
        if l >= 3:
            _b1(m + n + l - 2, -f_coeff(m, n, l), out)
        elif n >= 3:
            sn = -1 if n % 2 else 1
            _b2(m + n - 2, Fraction(sn) * binom(m + n - 4, n - 2) / 2, out)
            _b1(m + n, g_coeff(m, n) / 2, out)
        else:
            _b2(m, Fraction(1), out)
    else:
        out[opaque(mono)] = Fraction(1)
    return tuple((k, x) for k, x in out.items() if x)


def eta_reduce(s) -> EtaVec:
    """Canonical eta-bar image of a state (or an :class:`EtaVec`, returned as is)."""
    if isinstance(s, EtaVec):
        return s
    out: dict = {}
    for mono, x in s.terms.items():
        for key, q in reduce_monomial(mono):
            y = out.get(key, CPoly()) + x * q
            if y:
                out[key] = y
            else:
                out.pop(key, None)
    return EtaVec(out)


def eta_product(u: EtaVec, v: EtaVec) -> EtaVec:
    """Formal product in the commutative quotient algebra."""
    out: dict = {}
    for k1, x1 in u.terms.items():
        for k2, x2 in v.terms.items():
            k = product_key([k1, k2])
            y = out.get(k, CPoly()) + x1 * x2
            if y:
                out[k] = y
            else:
                out.pop(k, None)
    return EtaVec(out)


READINGS = ("corrected", "printed")


def product_expand_state(m: int, n: int, u: State, reading: str = "corrected") -> State:
    """State whose eta-bar equals eta-bar(L_{-m}L_{-n}1) . eta-bar(u).

    ``reading`` selects the coefficient of the second associativity sum:
    ``"corrected"`` uses alpha_{n',m';i} as the associativity expansion gives,
    ``"printed"`` repeats alpha_{m',n';i}.
    """
    if m < 3 or n < 3:
        raise ValueError("product_expand needs m, n >= 3")
    if reading not in READINGS:
        raise ValueError(f"unknown reading {reading!r}")
    mp, np_ = m - 1, n - 1
    out = 2 * apply_mode(-m, apply_mode(-n, u))
    for i in (0, 1, 2, 3):
        wi = nth_product(OMEGA, i, OMEGA)
        coef = binom(-np_, i)
        if wi and coef:
            out = out + nth_product(wi, -mp - np_ - i, u) * coef
    wu = max(u.weights(), default=0)
    for i in range(0, wu + 2):
        a1 = alpha_coeff(mp, np_, i)
        a2 = alpha_coeff(np_, mp, i) if reading == "corrected" else a1
        inner = apply_mode(i - 1, u)
        if inner:
            out = out + apply_mode(-mp - np_ - i - 1, inner) * (a1 + a2)
    return out


def product_expand(m: int, n: int, u: State, reading: str = "corrected") -> EtaVec:
    return eta_reduce(product_expand_state(m, n, u, reading))
