#!/usr/bin/env python3
"""
Tests for the spherification algebra B = A[eps]/eps^2 and the functors
F, R and L between modules over A and over B
"""

import pytest

from ptwists.model.algebra import build_pnk_algebra, build_two_object_algebra
from ptwists.model.errors import ConfigurationError, PreconditionError, StructuralError
from ptwists.model.linalg import GradedDimVector
from ptwists.model.modules import (
    ModuleMorphism,
    cone,
    free_algebra_module,
    free_module,
    hom_dims,
    is_quasi_isomorphic,
    shift,
)
from ptwists.model.spherify import (
    apply_F,
    apply_L,
    apply_R,
    build_spherification_algebra,
    check_adjunction,
    check_left_adjoint,
    check_spherical,
    check_weak_spherification,
    cotwist_object,
    hom_growth,
)
from ptwists.model.twists import p_twist, p_untwist, spherical_twist, spherical_untwist


def dims(mapping):
    return GradedDimVector.from_mapping(mapping)


# Test 1: building B

def test_extended_algebra_dimensions(p22):
    S = build_spherification_algebra(p22)
    assert S.k == 2
    assert S.extended.degree_dims() == {0: 1, 1: 1, 2: 1, 3: 1, 4: 1, 5: 1}
    assert S.extended.params["spherified"]


def test_d_eps_is_h(p22):
    S = build_spherification_algebra(p22)
    B = S.extended
    assert B.differential(B.marked_element("eps")) == S.embed(S.h)
    assert B.differential(B.unit) == {}


def test_odd_degree_h_is_refused():
    with pytest.raises(PreconditionError):
        build_spherification_algebra(build_pnk_algebra(1, 1))


def test_non_central_h_is_refused(pair):
    # e1 commutes with neither a1 nor b1
    with pytest.raises(PreconditionError):
        build_spherification_algebra(pair.with_marked("h", pair.basis_element("e1")))


def test_missing_h_is_a_configuration_error(p22):
    with pytest.raises(ConfigurationError):
        build_spherification_algebra(p22, h_name="z")


def test_n_equal_one_warns(sphere_algebra, caplog):
    with caplog.at_level("WARNING"):
        build_spherification_algebra(sphere_algebra)
    assert any("n = 1" in r.getMessage() for r in caplog.records)


# Test 2: functors

def test_F_keeps_generators(pair_spherification, pair):
    P1 = free_module(pair, 0)
    FP1 = apply_F(pair_spherification, P1)
    assert FP1.algebra is pair_spherification.extended
    assert FP1.generators == P1.generators


def test_functors_check_the_algebra(pair_spherification, pair):
    with pytest.raises(StructuralError):
        apply_R(pair_spherification, free_module(pair, 0))
    with pytest.raises(StructuralError):
        apply_F(pair_spherification, free_module(pair_spherification.extended, 0))


def test_R_F_P_is_cone_of_h(p22):
    S = build_spherification_algebra(p22)
    P = free_module(p22, 0)
    RFP = apply_R(S, apply_F(S, P))
    RFP.check()
    t = p22.t_element(0)
    expected = cone(ModuleMorphism(shift(P, -2), P, 0, {(0, 0): t}))
    assert [g.degree for g in RFP.generators] == [0, 1]
    assert is_quasi_isomorphic(RFP, expected)


def test_L_is_R_shifted(p22):
    S = build_spherification_algebra(p22)
    N = apply_F(S, free_module(p22, 0))
    assert [g.degree for g in apply_L(S, N).generators] == [-1, 0]


@pytest.mark.parametrize("first, second", [(0, 0), (0, 1), (1, 0)])
def test_adjunction_dimensions(pair_spherification, pair, first, second):
    M = free_module(pair, first)
    N = apply_F(pair_spherification, free_module(pair, second))
    assert check_adjunction(pair_spherification, M, N)
    assert check_left_adjoint(pair_spherification, N, M)


def test_adjunction_against_the_algebra(pair_spherification, pair):
    A = free_algebra_module(pair)
    assert check_adjunction(pair_spherification, A, apply_F(pair_spherification, A))


# Test 3: spherical objects and cotwists

@pytest.mark.parametrize("n, k", [(1, 2), (2, 2), (3, 2), (2, 4)])
def test_F_of_p_object_is_spherical(n, k):
    A = build_pnk_algebra(n, k)
    S = build_spherification_algebra(A)
    FP = apply_F(S, free_module(A, 0))
    assert hom_dims(FP, FP) == dims({0: 1, n * k + k - 1: 1})
    assert check_spherical(S, FP)


def test_explicit_sphere_dimension(p22):
    S = build_spherification_algebra(p22)
    FP = apply_F(S, free_module(p22, 0))
    assert check_spherical(S, FP, 5)
    assert not check_spherical(S, FP, 3)


def test_cotwist_of_p_object_is_a_shift(p22):
    S = build_spherification_algebra(p22)
    P = free_module(p22, 0)
    result = cotwist_object(S, P)
    assert result.verdict
    assert result.alpha_nonzero
    assert [g.degree for g in result.module.generators] == [2]


def test_weak_spherification_on_the_pair(pair_spherification, pair):
    for position in (0, 1):
        verdict = check_weak_spherification(pair_spherification, free_module(pair, position))
        assert verdict.passed
        assert verdict.status == "witnessed"
        assert verdict.label == f"P{position + 1}"


# Test 4: hom growth

def test_hom_growth_on_the_pair(pair_spherification):
    growth = hom_growth(pair_spherification)
    assert growth.base == dims({2: 1})
    assert growth.spherified == dims({2: 1, 3: 1})
    assert growth.bound_holds


@pytest.mark.parametrize("m", [2, 3])
def test_hom_growth_scales_with_m(m):
    S = build_spherification_algebra(build_two_object_algebra(2, 2, m))
    growth = hom_growth(S)
    assert growth.base == dims({2: m})
    assert growth.spherified == dims({2: m, 3: m})


def test_hom_growth_orthogonal(orthogonal_pair):
    growth = hom_growth(build_spherification_algebra(orthogonal_pair))
    assert growth.base.total == 0
    assert growth.spherified.total == 0
    assert growth.bound_holds


# Test 5: F intertwines P-twists with spherical twists

def test_F_commutes_with_twists_on_p1(pair_spherification, pair):
    S = pair_spherification
    P1 = free_module(pair, 0)
    FP1 = apply_F(S, P1)
    twisted = apply_F(S, p_twist(P1, pair.t_element(0), P1))
    assert is_quasi_isomorphic(twisted, spherical_twist(FP1, FP1))


@pytest.mark.slow
@pytest.mark.parametrize("make", [lambda A: free_module(A, 1), free_algebra_module])
def test_F_commutes_with_twists(pair_spherification, pair, make):
    S = pair_spherification
    P1 = free_module(pair, 0)
    X = make(pair)
    twisted = apply_F(S, p_twist(P1, pair.t_element(0), X))
    assert is_quasi_isomorphic(twisted, spherical_twist(apply_F(S, P1), apply_F(S, X)))


def test_F_commutes_with_untwists_on_p1(pair_spherification, pair):
    S = pair_spherification
    P1 = free_module(pair, 0)
    FP1 = apply_F(S, P1)
    untwisted = apply_F(S, p_untwist(P1, pair.t_element(0), P1))
    assert is_quasi_isomorphic(untwisted, spherical_untwist(FP1, FP1))


@pytest.mark.slow
@pytest.mark.parametrize("make", [lambda A: free_module(A, 1), free_algebra_module])
def test_F_commutes_with_untwists(pair_spherification, pair, make):
    S = pair_spherification
    P1 = free_module(pair, 0)
    X = make(pair)
    untwisted = apply_F(S, p_untwist(P1, pair.t_element(0), X))
    assert is_quasi_isomorphic(untwisted, spherical_untwist(apply_F(S, P1), apply_F(S, X)))
