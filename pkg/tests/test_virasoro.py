from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from vcert.exact import CPoly
from vcert.formulas import associativity_rhs, commutator_sides, four_mode_product
from vcert.virasoro import (
    OMEGA,
    VACUUM,
    State,
    alpha_coeff,
    apply_mode,
    basis,
    c_coeff,
    d_coeff,
    normal_order,
    nth_product,
    partitions_min2,
    translate,
)

C = CPoly.c()
HALF_C = CPoly((0, Fraction(1, 2)))


def mono(*ks):
    return State({tuple(ks): 1})


def test_alpha_examples():
    assert alpha_coeff(1, 1, 0) == 1
    assert alpha_coeff(1, 2, 0) == -1
    assert alpha_coeff(2, 1, 0) == 2
    assert c_coeff(1, 1, 0) == 2
    assert d_coeff(1, 1) == 2 * c_coeff(1, 1, 0) - 2 * c_coeff(1, 1, 1)


def test_normal_order_examples():
    assert normal_order([-2, -3]) == mono(3, 2) + mono(5)
    assert normal_order([0, -2]) == mono(2) * 2
    assert normal_order([2, -2]) == VACUUM * HALF_C
    assert normal_order([-1]) == 0


def test_apply_mode_examples():
    assert apply_mode(-1, VACUUM) == 0
    assert apply_mode(0, OMEGA) == OMEGA * 2
    # L_1 L_{-3} L_{-2} 1 = [L_1, L_{-3}] L_{-2} 1 + L_{-3} [L_1, L_{-2}] 1 = 4 L_{-2} L_{-2} 1
    assert apply_mode(1, mono(3, 2)) == mono(2, 2) * 4


def test_translate_examples():
    assert translate(VACUUM) == 0
    assert translate(OMEGA) == mono(3)
    # [L_{-1}, L_{-k}] = (k-1) L_{-k-1}: the L_{-3} slot contributes with weight 2
    assert translate(mono(3, 2)) == mono(4, 2) * 2 + mono(3, 3)


def test_nth_product_examples():
    assert nth_product(VACUUM, -1, mono(4, 2)) == mono(4, 2)
    assert nth_product(OMEGA, 3, OMEGA) == VACUUM * HALF_C
    assert nth_product(mono(2, 2), -1, OMEGA) == associativity_rhs(OMEGA, 1, OMEGA, 1, OMEGA)


def test_basis_dimensions():
    # number of partitions into parts >= 2
    assert [len(basis(d)) for d in range(11)] == [1, 0, 1, 1, 2, 2, 4, 4, 7, 8, 12]
    assert all(len(basis(d)) == len(partitions_min2(d)) for d in range(15))


@pytest.mark.parametrize("m,n", [(m, n) for m in range(-3, 4) for n in range(-3, 4)])
def test_virasoro_relations_on_vacuum(m, n):
    lhs = normal_order([m, n]) - normal_order([n, m])
    central = VACUUM * (HALF_C * ((m ** 3 - m) // 6)) if m + n == 0 else State()
    assert lhs == normal_order([m + n]) * (m - n) + central


words = st.lists(st.integers(-5, 3), max_size=4)


@settings(max_examples=60, deadline=None)
@given(words, st.integers(-4, 4), st.integers(-4, 4))
def test_commutator_inside_words(word, m, n):
    lhs = apply_mode(m, apply_mode(n, normal_order(word))) - apply_mode(n, apply_mode(m, normal_order(word)))
    rhs = apply_mode(m + n, normal_order(word)) * (m - n)
    if m + n == 0:
        rhs = rhs + normal_order(word) * (HALF_C * ((m ** 3 - m) // 6))
    assert lhs == rhs


def test_translation_derivative_property():
    # (L_{-1} a)_(n) = -n a_(n-1)
    for a in (OMEGA, mono(3, 2), mono(4)):
        for n in range(-3, 4):
            for u in (VACUUM, OMEGA, mono(3)):
                assert nth_product(translate(a), n, u) == nth_product(a, n - 1, u) * (-n)


def test_grading_vanishing():
    for a in (OMEGA, mono(3, 2)):
        for b in (OMEGA, mono(4)):
            wa, wb = max(a.weights()), max(b.weights())
            assert nth_product(a, wa + wb, b) == 0
            out = nth_product(a, 0, b)
            assert out.weights() <= {wa + wb - 1}


def test_associativity_lemma_small():
    for m in (2, 3):
        for n in (2, 4):
            for d in range(5):
                for u in basis(d):
                    U = State({u: 1})
                    assert nth_product(normal_order([-m, -n]), -1, U) == \
                        associativity_rhs(OMEGA, m - 1, OMEGA, n - 1, U)


def test_four_mode_corrected_matches_engine():
    for m, n, p, q in [(3, 3, 2, 2), (3, 4, 3, 2), (5, 3, 2, 3), (4, 4, 3, 3)]:
        direct = nth_product(normal_order([-m, -n]), -1, normal_order([-p, -q]))
        assert direct == four_mode_product(m, n, p, q, "corrected")


def test_four_mode_readings_differ_only_for_p_ne_q():
    assert four_mode_product(3, 3, 2, 2, "printed") == four_mode_product(3, 3, 2, 2, "corrected")
    assert four_mode_product(3, 4, 3, 2, "printed") != four_mode_product(3, 4, 3, 2, "corrected")


def test_commutator_formula_samples():
    for m in (-2, 0, 2):
        for n in (-1, 1):
            lhs, rhs = commutator_sides(OMEGA, m, mono(3), n, mono(2, 2))
            assert lhs == rhs
