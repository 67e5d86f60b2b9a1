from fractions import Fraction

import pytest

from vcert.eta import eta_reduce
from vcert.oracle import DegreeCapError, eta, member_mod_c2, tensor_add, tensor_scale
from vcert.rules import (
    RULES,
    SPECIAL_CHARGES,
    instances,
    preimage,
    resolve_reading,
    special_charges,
    verify_instance,
    verify_rule,
)
from vcert.virasoro import State

READING_RULES = {"product", "four-mode", "route"}


def test_special_charges_are_seeded_and_include_minimal_ones():
    assert special_charges() == special_charges()
    assert special_charges()[-2:] == SPECIAL_CHARGES
    assert SPECIAL_CHARGES == (Fraction(0), Fraction(-22, 5))


@pytest.mark.parametrize("rule", sorted(set(RULES) - READING_RULES))
def test_rule_family_up_to_weight_10(rule):
    reports = verify_rule(rule, 10, special_charges())
    assert reports, rule
    failed = [r.params for r in reports if not r.passed]
    assert not failed


@pytest.mark.parametrize("rule", sorted(READING_RULES))
def test_reading_families_up_to_weight_10(rule):
    reports = verify_rule(rule, 10)
    counts = resolve_reading(reports)
    assert counts["corrected"][1] == 0
    plain = [r for r in reports if "reading" not in r.params]
    assert all(r.passed for r in plain)


def test_product_reading_example():
    reports = [verify_instance(i) for i in instances("product", 10)]
    table: dict = {}
    for r in reports:
        key = (r.params["m"], r.params["n"], r.params["u"])
        table.setdefault(key, {})[r.params["reading"]] = r.passed
    # the readings coincide for m = n (alpha_{m,n;i} is then symmetric)
    assert table[(3, 3, (2,))] == {"corrected": True, "printed": True}
    # and some m != n instance separates them
    assert any(v == {"corrected": True, "printed": False}
               for (m, n, _), v in table.items() if m != n)


def test_length3_value_at_weight_12():
    # -f(5,4,3) B1(10): checked against the oracle at the top weight
    mono = (5, 4, 3)
    vec = tensor_add(eta(State({mono: 1})), tensor_scale(preimage(eta_reduce(State({mono: 1}))), -1))
    assert member_mod_c2(vec).member


def test_cap_is_enforced():
    with pytest.raises(DegreeCapError):
        verify_rule("swap", 40)


def test_unknown_rule():
    with pytest.raises(KeyError):
        instances("bogus", 8)
