#!/usr/bin/env python3
"""
Tests for dg-algebras: builders, axiom reports, centrality and the
Calabi-Yau pairing
"""

import pytest
from sympy.polys.domains import GF, QQ

from ptwists.config.parameters import params
from ptwists.config.presets import ACCEPTANCE_ALGEBRAS
from ptwists.model.algebra import (
    build_orthogonal_algebra,
    build_pnk_algebra,
    build_two_object_algebra,
    check_cy_pairing,
    check_dg_axioms,
    is_central,
)
from ptwists.model.errors import ConfigurationError, PreconditionError, StructuralError
from ptwists.model.spherify import build_spherification_algebra
from ptwists.utils.serialize import parse_algebra_spec


# Test 1: truncated polynomial algebras

@pytest.mark.parametrize("n, k, dims", [
    (1, 2, {0: 1, 2: 1}),
    (2, 2, {0: 1, 2: 1, 4: 1}),
    (3, 2, {0: 1, 2: 1, 4: 1, 6: 1}),
    (2, 4, {0: 1, 4: 1, 8: 1}),
])
def test_pnk_dimensions(n, k, dims):
    A = build_pnk_algebra(n, k)
    assert A.degree_dims() == dims
    assert check_dg_axioms(A).passed


def test_pnk_truncation(p22):
    t = p22.marked_element("t1")
    t2 = p22.multiply(t, t)
    assert p22.format_element(t2) == "t^2"
    assert p22.multiply(t2, t) == {}


def test_pnk_rejects_bad_parameters():
    with pytest.raises(ConfigurationError):
        build_pnk_algebra(0, 2)


def test_builders_follow_session_field():
    params.field = "GF(101)"
    assert build_pnk_algebra(2, 2).K == GF(101)
    assert build_pnk_algebra(2, 2, K=QQ).K == QQ


# Test 2: two-object algebras

def test_two_object_dimensions(pair):
    assert pair.dim == 8
    assert pair.degree_dims() == {0: 2, 2: 4, 4: 2}
    assert check_dg_axioms(pair).passed


def test_two_object_pieces(pair):
    # e2 A e1 holds the a_i, e1 A e2 the b_i
    assert [pair.labels[b] for b in pair.piece(1, 0)] == ["a1"]
    assert [pair.labels[b] for b in pair.piece(0, 1)] == ["b1"]


def test_two_object_products(pair):
    a, b = pair.basis_element("a1"), pair.basis_element("b1")
    assert pair.multiply(b, a) == pair.basis_element("t1^2")
    assert pair.multiply(a, b) == pair.basis_element("t2^2")
    assert pair.multiply(pair.basis_element("t1"), b) == {}


def test_h_is_central(pair):
    assert is_central(pair, pair.marked_element("h"))
    assert not is_central(pair, pair.basis_element("e1"))


def test_two_object_refuses_odd_k():
    with pytest.raises(ConfigurationError):
        build_two_object_algebra(2, 3, 1)


def test_orthogonal_builder_allows_odd_k():
    A = build_orthogonal_algebra(1, 1)
    assert A.params == {"n": 1, "k": 1, "m": 0}
    assert check_dg_axioms(A).passed


# Test 3: axiom reports

def test_broken_product_is_reported(p22):
    broken = p22.with_product("t", "t", p22.basis_element("t"))
    report = check_dg_axioms(broken)
    assert not report.passed
    assert report.failures()["degree_additivity"] == ("t", "t")


def test_axiom_report_as_dict(p22):
    report = check_dg_axioms(p22).as_dict()
    assert set(report) == {"degree_additivity", "associativity", "unit", "idempotents",
                           "differential_degree", "d_squared", "leibniz"}
    assert all(entry["passed"] for entry in report.values())


def test_injected_differential_is_reported(p22):
    # d(t) = 1 has degree 1 - 2 and breaks Leibniz on t.t = t^2
    report = check_dg_axioms(p22.with_differential("t", p22.unit))
    assert not report.passed
    assert report.failures() == {"differential_degree": ("t",), "leibniz": ("t", "t")}


@pytest.mark.parametrize("spec", [(1, 2), (2, 2), (3, 2), (2, 4)])
def test_spherification_passes_axioms(spec):
    S = build_spherification_algebra(build_pnk_algebra(*spec))
    assert S.report.passed


@pytest.mark.parametrize("m", [1, 2])
def test_two_object_spherification_passes_axioms(m):
    S = build_spherification_algebra(build_two_object_algebra(2, 2, m))
    assert S.report.passed
    assert S.extended.dim == 2 * (6 + 2 * m)


# Test 4: elements

def test_degree_of_inhomogeneous_element_raises(p22):
    with pytest.raises(StructuralError):
        p22.degree_of(p22.add(p22.unit, p22.basis_element("t")))


def test_missing_marked_element(p22):
    with pytest.raises(ConfigurationError):
        p22.marked_element("t2")


# Test 5: Calabi-Yau pairing

@pytest.mark.parametrize("n, k", [(1, 2), (2, 2), (3, 2)])
def test_cy_pairing_pnk(n, k):
    assert check_cy_pairing(build_pnk_algebra(n, k), n * k)


def test_cy_pairing_two_object(pair):
    assert check_cy_pairing(pair, 4)
    assert not check_cy_pairing(pair, 2)


def test_cy_pairing_needs_formal_algebra(p22):
    B = build_spherification_algebra(p22).extended
    with pytest.raises(PreconditionError):
        check_cy_pairing(B, 5)


def test_cy_pairing_detects_degenerate_product(pair):
    assert not check_cy_pairing(pair.with_product("a1", "b1", {}), 4)


def test_two_object_with_odd_middle_degree():
    A = build_two_object_algebra(1, 2, 1)
    assert A.degree_dims() == {0: 2, 1: 2, 2: 2}
    assert check_dg_axioms(A).passed
    assert check_cy_pairing(A, 2)


# Test 6: acceptance algebras

@pytest.mark.parametrize("spec", ACCEPTANCE_ALGEBRAS)
def test_acceptance_algebras(spec):
    A = parse_algebra_spec(spec)
    assert check_dg_axioms(A).passed
    assert check_cy_pairing(A, A.params["n"] * A.params["k"])
    assert build_spherification_algebra(A).report.passed
