"""Oracle checks of the eta-bar rewriting rules and the identities behind them.

Each rule family yields instances; an instance is a tensor in the swap
orbifold that must lie in ``C_2`` (or in ``C_2 + eta(V)`` for absorption).
For a rewrite rule the tensor is ``eta(input) - preimage(output)``, where the
preimage of an :class:`~vcert.eta.EtaVec` sends ``B1(b)``, ``B2(a)`` and opaque
keys to ``eta`` of the monomial they name, the unit to ``1 (x) 1`` and formal
products to ``(-1)``-products.

Two families carry a ``reading`` parameter: ``product`` (the coefficient of
the second sum in the product expansion) and ``four-mode`` (the central terms
of the closed form of ``(L_{-m}L_{-n}1)_(-1) L_{-p}L_{-q}1``).  For these the
oracle decides which reading is right; the wrong reading is expected to fail
on every instance where the two differ.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from .eta import EtaVec, UNIT, eta_reduce, key_preimage_factors, product_expand_state
from .exact import fmt_rat
from .formulas import READINGS, four_mode_product
from .oracle import (
    DEFAULT_MAX_DEGREE,
    check_degree,
    coordinates,
    eta,
    member_at,
    member_mod_c2,
    phi,
    tensor,
    tensor_add,
    tensor_nth,
    tensor_scale,
)
from .virasoro import State, VACUUM, apply_mode, basis, normal_order, nth_product, weight

__all__ = [
    "RuleInstance",
    "RuleReport",
    "RULES",
    "SPECIAL_CHARGES",
    "special_charges",
    "preimage",
    "instances",
    "verify_instance",
    "verify_rule",
    "resolve_reading",
]


def minimal_charge(p: int, q: int) -> Fraction:
    return 1 - Fraction(6 * (p - q) ** 2, p * q)


SPECIAL_CHARGES = (minimal_charge(2, 3), minimal_charge(2, 5))   # 0 and -22/5


def special_charges(seed: int = 2024, count: int = 5) -> tuple:
    """Five seeded random rationals followed by the two minimal charges."""
    rng = random.Random(seed)
    rand = tuple(Fraction(rng.randint(-999, 999), rng.randint(1, 97)) for _ in range(count))
    return rand + SPECIAL_CHARGES


@dataclass
class RuleInstance:
    rule: str
    params: dict
    vector: dict
    with_eta_image: bool = False
    expect_member: bool = True


@dataclass
class RuleReport:
    rule: str
    params: dict
    degree: int
    member: bool
    passed: bool
    specializations: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "params": {k: _jsonable(v) for k, v in self.params.items()},
            "degree": self.degree,
            "member": self.member,
            "passed": self.passed,
            "specializations": {fmt_rat(c): ok for c, ok in self.specializations.items()},
        }


def _jsonable(v):
    if isinstance(v, tuple):
        return list(v)
    return v


def _mono(m: tuple) -> State:
    return State({m: 1})


def _eta_mono(m: tuple) -> dict:
    return eta(_mono(m))


def preimage_key(key: tuple) -> dict:
    if key == UNIT:
        return tensor(VACUUM, VACUUM)
    factors = [_eta_mono(m) for m in key_preimage_factors(key)]
    out = factors[0]
    for f in factors[1:]:
        out = tensor_nth(out, -1, f)
    return out


def preimage(vec: EtaVec) -> dict:
    """A tensor whose class is the given eta-bar combination."""
    parts = [tensor_scale(preimage_key(k), x) for k, x in vec.terms.items()]
    return tensor_add(*parts)


def _rewrite(mono: tuple) -> dict:
    return tensor_add(_eta_mono(mono), tensor_scale(preimage(eta_reduce(_mono(mono))), -1))


# ---------------------------------------------------------------------------
# instance generators; each takes the maximal total weight

def _vacuum(w: int) -> Iterator[RuleInstance]:
    yield RuleInstance("vacuum", {"mono": ()}, _rewrite(()))


def _single(w: int) -> Iterator[RuleInstance]:
    for k in range(3, w + 1):
        yield RuleInstance("single", {"mono": (k,)}, _rewrite((k,)))


def _monos(w: int, length: int, test: Callable[[tuple], bool]) -> Iterator[tuple]:
    for d in range(0, w + 1):
        for mono in basis(d):
            if len(mono) == length and test(mono):
                yield mono


def _length2(w: int) -> Iterator[RuleInstance]:
    for mono in _monos(w, 2, lambda m: True):
        yield RuleInstance("length2", {"mono": mono}, _rewrite(mono))


def _length3(w: int) -> Iterator[RuleInstance]:
    for mono in _monos(w, 3, lambda m: m[2] >= 3):
        yield RuleInstance("length3", {"mono": mono}, _rewrite(mono))


def _length3_g(w: int) -> Iterator[RuleInstance]:
    for mono in _monos(w, 3, lambda m: m[1] >= 3 and m[2] == 2):
        yield RuleInstance("length3-g", {"mono": mono}, _rewrite(mono))


def _length3_b2(w: int) -> Iterator[RuleInstance]:
    for mono in _monos(w, 3, lambda m: m[1] == 2):
        yield RuleInstance("length3-b2", {"mono": mono}, _rewrite(mono))


def _parity(w: int) -> Iterator[RuleInstance]:
    for d in range(1, w + 1, 2):
        for mono in basis(d):
            if len(mono) <= 3:
                yield RuleInstance("parity", {"mono": mono}, _eta_mono(mono))


def _translation(w: int) -> Iterator[RuleInstance]:
    for d in range(0, w):
        for mono in basis(d):
            yield RuleInstance("translation", {"mono": mono}, eta(apply_mode(-1, _mono(mono))))


_SMALL = ((2,), (3,), (2, 2), (4,))


def _small_monos(limit: int) -> list:
    return [m for d in range(0, limit + 1) for m in basis(d)]


def _swap(w: int) -> Iterator[RuleInstance]:
    for a in _SMALL:
        for n in (2, 3):
            rest = w - weight(a) - n + 1
            for u in _small_monos(rest):
                for b in _small_monos(rest - weight(u)):
                    if b < u and weight(b) == weight(u):
                        continue
                    A, U, B = _mono(a), _mono(u), _mono(b)
                    vec = tensor_add(phi(nth_product(A, -n, U), B), phi(U, nth_product(A, -n, B)))
                    yield RuleInstance("swap", {"a": a, "n": n, "u": u, "b": b}, vec)


def _phi_shift(a: tuple, b: tuple, m: int, n: int) -> State:
    from math import factorial

    return nth_product(_mono(a), -m, nth_product(_mono(b), -n, VACUUM)) * (
        factorial(m - 1) * factorial(n - 1))


def _shift(w: int) -> Iterator[RuleInstance]:
    for a, b in (((2,), (2,)), ((2,), (3,)), ((3,), (2,))):
        for m in range(1, w):
            for n in range(1, w):
                if weight(a) + weight(b) + m + n - 2 > w:
                    continue
                for l in range(-m + 1, n):
                    if l == 0:
                        continue
                    sign = -1 if l % 2 else 1
                    vec = tensor_add(eta(_phi_shift(a, b, m, n)),
                                     tensor_scale(eta(_phi_shift(a, b, m + l, n - l)), -sign))
                    yield RuleInstance("shift", {"a": a, "b": b, "m": m, "n": n, "l": l}, vec)


def _two_sided(w: int) -> Iterator[RuleInstance]:
    for a in ((2,), (3,)):
        for b in ((2,), (3,)):
            if b < a:
                continue
            for n in (2, 3):
                for u in _small_monos(w - weight(a) - weight(b) - n + 1):
                    A, B, U = _mono(a), _mono(b), _mono(u)
                    lhs = tensor_add(phi(A, nth_product(B, -n, U)), phi(B, nth_product(A, -n, U)))
                    rhs = State()
                    top = weight(a) + weight(b) + weight(u) + n
                    for i in range(0, top + 1):
                        rhs = rhs + nth_product(A, -i - 2, nth_product(B, -n + 1 + i, U))
                        rhs = rhs + nth_product(B, -i - 2, nth_product(A, -n + 1 + i, U))
                    vec = tensor_add(lhs, tensor_scale(eta(rhs), -1))
                    yield RuleInstance("two-sided", {"a": a, "b": b, "n": n, "u": u}, vec)


def _absorption(w: int) -> Iterator[RuleInstance]:
    for b in ((2,), (3,)):
        for n in (3, 4):
            rest = w - weight(b) - n + 1
            for u in _small_monos(rest):
                for a in _small_monos(rest - weight(u)):
                    if not a:
                        continue
                    vec = phi(_mono(a), nth_product(_mono(b), -n, _mono(u)))
                    yield RuleInstance("absorption", {"a": a, "b": b, "n": n, "u": u}, vec,
                                       with_eta_image=True)


def _product(w: int, readings=READINGS) -> Iterator[RuleInstance]:
    for m in range(3, w):
        for n in range(3, w):
            for u in _small_monos(w - m - n):
                U = _mono(u)
                lhs = tensor_nth(eta(normal_order([-m, -n])), -1, eta(U))
                for reading in readings:
                    rhs = eta(product_expand_state(m, n, U, reading))
                    vec = tensor_add(lhs, tensor_scale(rhs, -1))
                    yield RuleInstance("product", {"m": m, "n": n, "u": u, "reading": reading}, vec)


def _four_mode(w: int, readings=READINGS) -> Iterator[RuleInstance]:
    for m in range(3, w):
        for n in range(3, w):
            for p in range(2, w):
                for q in range(2, w):
                    if m + n + p + q > w:
                        continue
                    a, b = normal_order([-m, -n]), normal_order([-p, -q])
                    lhs = tensor_nth(eta(a), -1, eta(b))
                    swap_term = eta(apply_mode(-n, apply_mode(-m, b)))
                    for reading in readings:
                        prod = four_mode_product(m, n, p, q, reading)
                        vec = tensor_add(lhs, tensor_scale(eta(prod), -1), tensor_scale(swap_term, -1))
                        yield RuleInstance("four-mode",
                                           {"m": m, "n": n, "p": p, "q": q, "reading": reading}, vec)


def _route(w: int, readings=READINGS) -> Iterator[RuleInstance]:
    from .certificate import route_a, route_b

    mode = {"corrected": "engine", "printed": "closed-form"}
    for m in range(3, w):
        for n in range(3, w):
            for p in range(2, w):
                for q in range(2, w):
                    if m + n + p + q > w:
                        continue
                    lhs = tensor_scale(eta(normal_order([-m, -n, -p, -q])), 2)
                    routes = {"A": route_a} if p < 3 else {"A": route_a, "B": route_b}
                    for name, route in routes.items():
                        for reading in readings:
                            out = route(m, n, p, q, mode[reading], require_zero_product=False)
                            vec = tensor_add(lhs, tensor_scale(preimage(out), -1))
                            yield RuleInstance("route", {"m": m, "n": n, "p": p, "q": q,
                                                         "route": name, "reading": reading}, vec)


RULES: dict = {
    "vacuum": _vacuum,
    "single": _single,
    "length2": _length2,
    "length3": _length3,
    "length3-g": _length3_g,
    "length3-b2": _length3_b2,
    "parity": _parity,
    "translation": _translation,
    "swap": _swap,
    "shift": _shift,
    "two-sided": _two_sided,
    "absorption": _absorption,
    "product": _product,
    "four-mode": _four_mode,
    "route": _route,
}


def instances(rule: str, max_weight: int) -> list:
    if rule not in RULES:
        raise KeyError(f"unknown rule {rule!r}; known: {', '.join(sorted(RULES))}")
    return list(RULES[rule](max_weight))


def verify_instance(inst: RuleInstance, charges=(), max_degree: int = DEFAULT_MAX_DEGREE) -> RuleReport:
    d, vec = coordinates(inst.vector)
    check_degree(d, max_degree)
    res = member_mod_c2(inst.vector, d, inst.with_eta_image, max_degree)
    specs = {}
    if res.member:
        for c in charges:
            specs[c] = member_at(inst.vector, c, d, inst.with_eta_image, max_degree)
    passed = res.member == inst.expect_member and all(specs.values())
    return RuleReport(inst.rule, inst.params, d, res.member, passed, specs)


def verify_rule(rule: str, max_weight: int = DEFAULT_MAX_DEGREE, charges=(),
                max_degree: int = DEFAULT_MAX_DEGREE) -> list:
    """Reports for every instance of a rule family up to ``max_weight``."""
    check_degree(max_weight, max_degree)
    return [verify_instance(i, charges, max_degree) for i in instances(rule, max_weight)]


def resolve_reading(reports: list) -> dict:
    """For a reading-dependent family: which readings pass on every instance.

    Returns ``{reading: (passed, failed)}`` counts.
    """
    out: dict = {}
    for r in reports:
        reading = r.params.get("reading")
        ok, bad = out.get(reading, (0, 0))
        out[reading] = (ok + 1, bad) if r.passed else (ok, bad + 1)
    return out
