"""Brute-force membership in C_2 of the swap orbifold of V (x) V.

Elements of ``V (x) V`` are dicts ``(x, y) -> CPoly`` over ordered pairs of
monomials.  The orbifold ``Vt`` is the swap-invariant part; a graded piece
``Vt_d`` has the basis ``u (x) v + v (x) u`` over unordered pairs, and the
coordinate of a symmetric tensor on that basis vector is its ``u (x) v``
coefficient.

``C_2(Vt)_d`` is spanned by ``x_(-2) y`` with ``x``, ``y`` running over basis
vectors of weights adding up to ``d - 1``.  Membership is decided exactly over
the rational function field ``Q(c)``: rows are selected by rank at a random
modular specialization, reduced fraction-free over ``Q[c]``, and every answer
is backed by a certificate that is re-checked against the full generator list:

* membership: ``den * v = sum lambda_i g_i`` with ``den != 0``;
* non-membership: a functional ``w`` killing every generator with ``w(v) != 0``.

A wrong modular guess can only trigger a retry, never a wrong answer.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping

from .exact import CPoly, Scalar, cpoly_gcd
from .virasoro import State, VACUUM, _nth, basis, weight

__all__ = [
    "DEFAULT_MAX_DEGREE",
    "DegreeCapError",
    "tilde_basis",
    "tensor",
    "phi",
    "eta",
    "tensor_nth",
    "tensor_add",
    "tensor_scale",
    "coordinates",
    "c2_generators",
    "LinSystem",
    "Membership",
    "c2_system",
    "member_mod_c2",
    "member_at",
]

DEFAULT_MAX_DEGREE = 12

_ONE = CPoly.const(1)
_PRIME = (1 << 61) - 1


class DegreeCapError(ValueError):
    """A membership question above the configured degree cap."""


def check_degree(d: int, max_degree: int) -> None:
    if d > max_degree:
        raise DegreeCapError(f"degree {d} exceeds the oracle cap {max_degree}")
    if d > DEFAULT_MAX_DEGREE:
        warnings.warn(f"oracle degree {d} is above {DEFAULT_MAX_DEGREE}; expect long runtimes",
                      stacklevel=3)


def _pair_key(u: tuple, v: tuple) -> tuple:
    return (weight(u), u, v)


def _canon(u: tuple, v: tuple) -> tuple:
    return (u, v) if (weight(u), u) <= (weight(v), v) else (v, u)


@lru_cache(maxsize=None)
def tilde_basis(d: int) -> tuple:
    """Unordered pairs ``(u, v)`` spanning ``Vt_d``, sorted by ``(wt u, u, v)``."""
    out = set()
    for w in range(0, d + 1):
        for u in basis(w):
            for v in basis(d - w):
                out.add(_canon(u, v))
    return tuple(sorted(out, key=lambda p: _pair_key(*p)))


@lru_cache(maxsize=None)
def _index(d: int) -> dict:
    return {p: i for i, p in enumerate(tilde_basis(d))}


# ---------------------------------------------------------------------------
# tensors

def _acc(out: dict, key, x: CPoly) -> None:
    y = out.get(key)
    y = x if y is None else y + x
    if y:
        out[key] = y
    else:
        out.pop(key, None)


def tensor(a: State, b: State) -> dict:
    out: dict = {}
    for x, cx in a.terms.items():
        for y, cy in b.terms.items():
            _acc(out, (x, y), cx * cy)
    return out


def tensor_add(*ts: Mapping) -> dict:
    out: dict = {}
    for t in ts:
        for k, x in t.items():
            _acc(out, k, x)
    return out


def tensor_scale(t: Mapping, s) -> dict:
    s = s if isinstance(s, CPoly) else CPoly.const(s)
    out: dict = {}
    for k, x in t.items():
        _acc(out, k, x * s)
    return out


def phi(a: State, b: State) -> dict:
    """``a (x) b + b (x) a``."""
    return tensor_add(tensor(a, b), tensor(b, a))


def eta(a: State) -> dict:
    """``a (x) 1 + 1 (x) a``."""
    return phi(a, VACUUM)


@lru_cache(maxsize=None)
def _pair_nth(a: tuple, b: tuple, n: int, u: tuple, v: tuple) -> tuple:
    """``(a (x) b)_(n) (u (x) v) = sum_i (a_(i) u) (x) (b_(n-1-i) v)``."""
    out: dict = {}
    lo = n - weight(b) - weight(v)
    hi = weight(a) + weight(u) - 1
    for i in range(lo, hi + 1):
        left = _nth(a, i, u)
        if not left:
            continue
        right = _nth(b, n - 1 - i, v)
        for x, cx in left.items():
            for y, cy in right.items():
                _acc(out, (x, y), cx * cy)
    return tuple(out.items())


def tensor_nth(s: Mapping, n: int, t: Mapping) -> dict:
    """The ``n``-th product of the tensor product vertex algebra."""
    out: dict = {}
    for (a, b), x in s.items():
        for (u, v), y in t.items():
            xy = x * y
            for key, z in _pair_nth(a, b, n, u, v):
                _acc(out, key, z * xy)
    return out


def coordinates(t: Mapping, d: int | None = None) -> tuple[int, dict]:
    """Degree and sparse coordinates of a swap-invariant homogeneous tensor."""
    degs = {weight(x) + weight(y) for (x, y) in t}
    if len(degs) > 1:
        raise ValueError(f"tensor is not homogeneous (weights {sorted(degs)})")
    if d is None:
        d = degs.pop() if degs else 0
    elif degs and degs != {d}:
        raise ValueError(f"tensor has weight {degs.pop()}, expected {d}")
    idx = _index(d)
    out: dict = {}
    for (x, y), val in t.items():
        if t.get((y, x), CPoly()) != val:
            raise ValueError("tensor is not swap invariant")
        key = _canon(x, y)
        if key == (x, y):
            out[idx[key]] = val
    return d, out


def _basis_tensor(pair: tuple) -> dict:
    u, v = pair
    return phi(State({u: 1}), State({v: 1}))


def _generator_rows(d: int, modes: tuple) -> list:
    rows = []
    for n in modes:
        for d1 in range(1, d + n + 2):
            d2 = d - d1 + n + 1
            if d2 < 0:
                continue
            for x in tilde_basis(d1):
                tx = _basis_tensor(x)
                for y in tilde_basis(d2):
                    g = tensor_nth(tx, n, _basis_tensor(y))
                    if g:
                        rows.append(coordinates(g, d)[1])
    return rows


@lru_cache(maxsize=None)
def c2_generators(d: int, deep: bool = False) -> tuple:
    """Coordinate rows of ``x_(-2) y`` (and ``x_(-n) y``, ``n >= 3``, if ``deep``)."""
    modes = (-2,) + (tuple(range(-3, -d - 2, -1)) if deep else ())
    return tuple(_generator_rows(d, modes))


# ---------------------------------------------------------------------------
# exact linear algebra over Q(c)

def _clear(row: Mapping) -> dict:
    """Scale a row to integer coefficients with trivial content."""
    from math import gcd, lcm

    den, num = 1, 0
    for p in row.values():
        for x in p.cs:
            den = lcm(den, x.denominator)
    for p in row.values():
        for x in p.cs:
            num = gcd(num, (x * den).numerator)
    s = Fraction(den, num or 1)
    return {k: p * s for k, p in row.items()}


def _rat_content(vals: Iterable[CPoly]) -> Fraction:
    from math import gcd, lcm

    num, den = 0, 1
    for p in vals:
        for x in p.cs:
            num = gcd(num, x.numerator)
            den = lcm(den, x.denominator)
    return Fraction(num, den) if num else Fraction(1)


def _content(vals: Iterable[CPoly]) -> CPoly:
    """Greatest common divisor over ``Q[c]`` scaled to leave integer, coprime coefficients."""
    vals = list(vals)
    g = CPoly()
    for p in vals:
        g = cpoly_gcd(g, p)
        if g.degree == 0:
            break
    if not g:
        return CPoly.const(1)
    return g * _rat_content(x.divexact(g) for x in vals)


def _mod_eval(p: CPoly, c0: int) -> int:
    acc = 0
    for x in reversed(p.cs):
        acc = (acc * c0 + x.numerator * pow(x.denominator, -1, _PRIME)) % _PRIME
    return acc


def _select_independent(rows: list, c0: int) -> list:
    """Indices of rows independent modulo the prime at ``c = c0``."""
    pivots: dict = {}
    chosen = []
    for i, row in enumerate(rows):
        vec = {k: _mod_eval(p, c0) for k, p in row.items()}
        vec = {k: x for k, x in vec.items() if x}
        while vec:
            j = min(vec)
            if j not in pivots:
                inv = pow(vec[j], -1, _PRIME)
                pivots[j] = {k: x * inv % _PRIME for k, x in vec.items()}
                chosen.append(i)
                break
            f = vec[j]
            for k, x in pivots[j].items():
                y = (vec.get(k, 0) - f * x) % _PRIME
                if y:
                    vec[k] = y
                else:
                    vec.pop(k, None)
    return chosen


@dataclass
class _Row:
    """Invariant: ``scale * vals = sum track[i] * rows[i]`` (``i == "v"`` is the target)."""

    vals: dict
    track: dict
    scale: CPoly


def _lin(x: dict, sx: CPoly, y: dict, sy: CPoly) -> dict:
    out: dict = {}
    for k, p in x.items():
        _acc(out, k, p * sx)
    for k, p in y.items():
        _acc(out, k, -(p * sy))
    return out


def _combine(a: _Row, sa: CPoly, b: _Row, sb: CPoly) -> _Row:
    """``sa * a - sb * b``, made primitive; the transcript keeps its own scale."""
    vals = _lin(a.vals, sa, b.vals, sb)
    track = _lin(a.track, sa * b.scale, b.track, sb * a.scale)
    scale = a.scale * b.scale
    if vals:
        g = _content(vals.values())
        vals = {k: x.divexact(g) for k, x in vals.items()}
        scale = scale * g
    q = _rat_content(track.values())
    h = cpoly_gcd(_content(track.values()) * (1 / q), scale) * q if track else CPoly.const(1)
    track = {k: x.divexact(h) for k, x in track.items()}
    return _Row(vals, track, scale.divexact(h))


def _pick_pivot(vals: dict) -> int:
    return min(vals, key=lambda k: (vals[k].degree, k))


@dataclass
class Membership:
    """Outcome of a membership question, with its exact certificate."""

    member: bool
    degree: int
    den: CPoly | None = None               # membership: den * v = sum lam_i g_i
    combination: dict = field(default_factory=dict)
    functional: dict = field(default_factory=dict)   # non-membership: w(g) = 0, w(v) != 0

    def __bool__(self) -> bool:
        return self.member


class LinSystem:
    """Fraction-free Gauss--Jordan reduction of a generator list over ``Q[c]``."""

    def __init__(self, rows: Iterable[Mapping], degree: int, seed: int = 0):
        self.degree = degree
        self.rows = [_clear(r) for r in rows if r]
        self.seed = seed
        self._specialized: dict = {}
        self._build(all_rows=False)

    def _build(self, all_rows: bool) -> None:
        rng = random.Random(self.seed)
        c0 = rng.randrange(2, _PRIME - 1)
        order = range(len(self.rows)) if all_rows else _select_independent(self.rows, c0)
        self.pivots: list = []   # (column, _Row)
        for i in order:
            row = self._reduce(_Row(dict(self.rows[i]), {i: _ONE}, _ONE))
            if not row.vals:
                continue
            j = _pick_pivot(row.vals)
            p = row.vals[j]
            for n, (jk, other) in enumerate(self.pivots):
                x = other.vals.get(j)
                if x:
                    self.pivots[n] = (jk, _combine(other, p, row, x))
            self.pivots.append((j, row))
        self.rank = len(self.pivots)

    def _reduce(self, row: _Row) -> _Row:
        for j, piv in self.pivots:
            x = row.vals.get(j)
            if x:
                row = _combine(row, piv.vals[j], piv, x)
        return row

    def _functional(self, residual: dict) -> dict:
        j = _pick_pivot(residual)
        den = _ONE
        for jk, piv in self.pivots:
            if piv.vals.get(j):
                p = piv.vals[jk]
                den = den * p.divexact(cpoly_gcd(den, p))
        w = {j: den}
        for jk, piv in self.pivots:
            x = piv.vals.get(j)
            if x:
                w[jk] = -(x * den).divexact(piv.vals[jk])
        return w

    def _kills_all(self, w: Mapping) -> bool:
        for row in self.rows:
            acc = CPoly()
            for k, x in w.items():
                y = row.get(k)
                if y:
                    acc = acc + x * y
            if acc:
                return False
        return True

    def member(self, vec: Mapping) -> Membership:
        vec = {k: x for k, x in vec.items() if x}
        for attempt in range(3):
            row = self._reduce(_Row(dict(vec), {"v": _ONE}, _ONE))
            if not row.vals:
                den = row.track.pop("v")
                lam = {i: -x for i, x in row.track.items()}
                self._check_combination(vec, den, lam)
                return Membership(True, self.degree, den=den, combination=lam)
            w = self._functional(row.vals)
            if self._kills_all(w) and _dot(w, vec):
                return Membership(False, self.degree, functional=w)
            # unlucky modular selection: fall back to the full generator list
            self._build(all_rows=True)
        raise ArithmeticError("membership certificate could not be verified")

    def _check_combination(self, vec: Mapping, den: CPoly, lam: Mapping) -> None:
        total: dict = {}
        for i, x in lam.items():
            for k, y in self.rows[i].items():
                _acc(total, k, x * y)
        for k, y in vec.items():
            _acc(total, k, -(y * den))
        if total or not den:
            raise ArithmeticError("membership witness failed exact verification")

    def member_at(self, vec: Mapping, c: Scalar) -> bool:
        """Membership after specializing ``c`` (plain rational elimination)."""
        c = Fraction(c)
        pivots = self._specialized.get(c)
        if pivots is None:
            pivots = {}
            for row in self.rows:
                _insert({k: p(c) for k, p in row.items()}, pivots)
            self._specialized[c] = pivots
        residual = _reduce_num({k: p(c) for k, p in vec.items()}, pivots)
        return not residual


def _dot(w: Mapping, vec: Mapping) -> CPoly:
    acc = CPoly()
    for k, x in w.items():
        y = vec.get(k)
        if y:
            acc = acc + x * y
    return acc


def _reduce_num(vec: dict, pivots: dict) -> dict:
    vec = {k: x for k, x in vec.items() if x}
    while vec:
        j = min(vec)
        if j not in pivots:
            return vec
        f = vec[j]
        for k, x in pivots[j].items():
            y = vec.get(k, 0) - f * x
            if y:
                vec[k] = y
            else:
                vec.pop(k, None)
    return vec


def _insert(vec: dict, pivots: dict) -> None:
    vec = _reduce_num(vec, pivots)
    if vec:
        j = min(vec)
        inv = 1 / vec[j]
        pivots[j] = {k: x * inv for k, x in vec.items()}


# ---------------------------------------------------------------------------
# cached systems

@lru_cache(maxsize=None)
def _system(d: int, extra_key: tuple, deep: bool) -> LinSystem:
    rows = list(c2_generators(d, deep))
    for kind in extra_key:
        if kind == "eta":
            for mono in basis(d):
                rows.append(coordinates(eta(State({mono: 1})), d)[1])
    return LinSystem(rows, d)


def c2_system(d: int, with_eta_image: bool = False, deep: bool = False,
              max_degree: int = DEFAULT_MAX_DEGREE) -> LinSystem:
    """The (cached) system spanning ``C_2(Vt)_d`` (plus ``eta(V_d)`` if asked)."""
    check_degree(d, max_degree)
    return _system(d, ("eta",) if with_eta_image else (), deep)


def member_mod_c2(t: Mapping, d: int | None = None, with_eta_image: bool = False,
                  max_degree: int = DEFAULT_MAX_DEGREE) -> Membership:
    """Decide ``t in C_2(Vt)`` (optionally ``+ eta(V)``) over ``Q(c)``."""
    d, vec = coordinates(t, d)
    if not vec:
        return Membership(True, d, den=_ONE)
    return c2_system(d, with_eta_image, max_degree=max_degree).member(vec)


def member_at(t: Mapping, c: Scalar, d: int | None = None, with_eta_image: bool = False,
              max_degree: int = DEFAULT_MAX_DEGREE) -> bool:
    d, vec = coordinates(t, d)
    if not vec:
        return True
    return c2_system(d, with_eta_image, max_degree=max_degree).member_at(vec, c)
