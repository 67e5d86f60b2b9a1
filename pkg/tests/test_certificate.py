import json
from fractions import Fraction

import pytest

from vcert.appendix import F_COEFFS, relation
from vcert.certificate import (
    FIT_NODES,
    HOLDOUT_NODES,
    CoeffQuad,
    InstanceSpec,
    PipelineError,
    compare_with_printed,
    determinant_resultants,
    dumps,
    emit_certificate,
    factor_trial,
    instance_coefficients,
    reconstruct_polynomials,
    route_a,
    route_b,
    stress_charges,
    thread_count,
    verify_f,
    verify_residual,
    xi_zeta,
)
from vcert.eta import B1, B2
from vcert.exact import CLin, PolyM


@pytest.mark.parametrize("k,m", [(3, 14), (0, 12), (1, 15), (-1, 20)])
def test_instance_spec_validation(k, m):
    with pytest.raises(ValueError):
        InstanceSpec(k, m)


def test_instance_spec_derived_fields():
    spec = InstanceSpec(1, 20)
    assert (spec.n, spec.p, spec.q, spec.s) == (11, 5, 2, 38)
    assert spec.m + spec.n + spec.p + spec.q == spec.s


@pytest.mark.parametrize("mode", ["engine", "closed-form"])
def test_quad_structure(mode):
    for k in range(3):
        quad = instance_coefficients(InstanceSpec(k, 20), mode)
        assert not quad.alpha.a1 and not quad.gammaP.a1
        assert quad.xi == quad.alpha - quad.gammaP
        assert quad.zeta == quad.beta - quad.deltaP


def test_routes_differ_by_the_xi_zeta_relation():
    # both routes compute 2 eta-bar of the same monomial; their difference is xi B2 + zeta B1
    spec = InstanceSpec(0, 16)
    a = route_a(spec.m, spec.n, spec.p, spec.q)
    b = route_b(spec.m, spec.n, spec.p, spec.q)
    xi, zeta = xi_zeta(0, 16)
    diff = a - b
    assert diff.clin(B2(spec.s - 4)) == xi and diff.clin(B1(spec.s - 2)) == zeta
    assert set(diff.terms) <= {B2(spec.s - 4), B1(spec.s - 2)}


def test_route_a_rejects_small_modes():
    with pytest.raises(ValueError):
        route_a(2, 3, 3, 2)


def test_xi_examples_against_printed_forms():
    # computed values are the negatives of the printed closed forms (see notes)
    assert relation("xi0", xi_zeta(0, 14)[0], 14) == "negated"
    assert relation("xi1", xi_zeta(1, 16)[0], 16) == "negated-swapped"
    assert relation("zeta2", xi_zeta(2, 20, "closed-form")[1], 20) == "negated"
    assert xi_zeta(0, 14)[0] == CLin(Fraction(2284800 * 21474180, 15 * 25 * 27))


def test_reconstruction_is_node_independent(pipelines):
    res = pipelines["engine"]
    series = res.series
    nodes = FIT_NODES + HOLDOUT_NODES
    for k in range(3):
        shifted = reconstruct_polynomials(k, series, fit=nodes[2:27], holdout=nodes[27:] + nodes[:2])
        assert shifted == (res.xi[k], res.zeta[k])
        assert res.xi[k].degree == 14
        assert res.zeta[k].p0.degree <= 16 and res.zeta[k].p1.degree <= 16


def test_reconstruction_detects_corruption(pipelines):
    series = dict(pipelines["engine"].series)
    q = series[(0, 70)]
    series[(0, 70)] = CoeffQuad(q.alpha + 1, q.beta, q.gammaP, q.deltaP)
    with pytest.raises(PipelineError):
        reconstruct_polynomials(0, series)


def test_closed_form_convention_recovers_printed_f(pipelines):
    res = pipelines["closed-form"].resultants
    assert res["f"] == PolyM(F_COEFFS)
    for fa in res["factors"]:
        assert fa["constant"] != 0 and fa["degree_ok"]
        g = pipelines["closed-form"].g[fa["k"]]
        assert g.degree - sum(fa["exponents"].values()) == 10
    checks = verify_f(res["f"])
    assert checks["f_match"] and checks["shift_positive"] and checks["scan_nonzero"]


def test_engine_convention_residual(pipelines):
    f = pipelines["engine"].resultants["f"]
    m = PolyM.m()
    h = PolyM([4290, -23759, -8620, -882, -10, 1])
    assert f == (m - 4) * h
    checks = verify_residual(f)
    assert checks["shift_positive"] and checks["scan_nonzero"]
    assert verify_residual(f, scan=range(14, 32))["scan_nonzero"]


def test_factor_trial_exact():
    m = PolyM.m()
    poly = (m + 2) ** 3 * (m - 1) * (m * m + 7)
    exps, rest = factor_trial(poly)
    assert exps[2] == 3 and exps[-1] == 1 and rest == m * m + 7


def test_stress_charges_include_minimal_models():
    cs = stress_charges()
    assert Fraction(0) in cs and Fraction(-22, 5) in cs and Fraction(1, 2) in cs


def test_every_determinant_pair_has_a_nonzero(pipelines):
    for mode in ("closed-form", "engine"):
        p, q = pipelines[mode].p, pipelines[mode].q
        for m in range(14, 120, 2):
            for c in stress_charges():
                assert any(p[k](m) + q[k](m) * c for k in range(3))


def test_certificate_minimal_and_deterministic(pipelines):
    cert = emit_certificate(32, results=pipelines)
    assert len(cert["checks"]["witnesses"]) == 1
    assert cert["theorem"]["holds"]
    assert dumps(cert) == dumps(emit_certificate(32, results=pipelines))
    again = json.loads(dumps(cert))
    assert again["f"] == [f"{x}/1" for x in F_COEFFS]
    with pytest.raises(ValueError):
        emit_certificate(30, results=pipelines)


def test_compare_with_printed(pipelines):
    closed = compare_with_printed(pipelines["closed-form"])
    assert closed["f_match"] and not closed["exact"]
    assert closed["polynomial"]["xi0"] == "negated"
    assert {closed["polynomial"][f"zeta{k}"] for k in range(3)} == {"negated"}
    assert {closed["polynomial"]["xi1"], closed["polynomial"]["xi2"]} == {"negated-swapped"}


def test_thread_count(monkeypatch):
    monkeypatch.setenv("VCERT_THREADS", "3")
    assert thread_count() == 3
    monkeypatch.setenv("VCERT_THREADS", "zero")
    with pytest.raises(ValueError):
        thread_count()
