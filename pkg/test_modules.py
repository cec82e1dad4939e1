#!/usr/bin/env python3
"""
Tests for semi-free modules: Hom complexes, cones, shifts, minimal models
and quasi-isomorphism witnesses
"""

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from ptwists.model.algebra import build_pnk_algebra, build_two_object_algebra
from ptwists.model.errors import AxiomError, ContractViolation, StructuralError
from ptwists.model.linalg import GradedDimVector
from ptwists.model.modules import (
    DISTINCT,
    WITNESSED,
    Generator,
    HomComplex,
    ModuleMorphism,
    SemiFreeModule,
    cone,
    direct_sum,
    free_algebra_module,
    free_module,
    hom_dims,
    is_acyclic,
    is_quasi_isomorphic,
    minimize,
    shift,
    verify_witness,
    zero_module,
)
from ptwists.model.twists import hom_profile
from ptwists.utils.sampling import random_module


def dims(mapping):
    return GradedDimVector.from_mapping(mapping)


def t_cone(A, position=0):
    """cone(t: P[-k] -> P)."""
    P = free_module(A, position)
    t = A.t_element(position)
    k = A.degree_of(t)
    return cone(ModuleMorphism(shift(P, -k), P, 0, {(0, 0): t}))


# Test 1: Hom complexes

def test_end_of_free_module(p22):
    P = free_module(p22, 0)
    assert hom_dims(P, P) == dims({0: 1, 2: 1, 4: 1})


def test_hom_between_two_objects(pair):
    P1, P2 = free_module(pair, 0), free_module(pair, 1)
    assert hom_dims(P1, P1) == dims({0: 1, 2: 1, 4: 1})
    assert hom_dims(P1, P2) == dims({2: 1})
    assert hom_dims(P2, P1) == dims({2: 1})


def test_orthogonal_objects_have_no_homs(orthogonal_pair):
    P1, P2 = free_module(orthogonal_pair, 0), free_module(orthogonal_pair, 1)
    assert hom_dims(P1, P2).total == 0


def test_hom_across_algebras_is_refused(p22, pair):
    with pytest.raises(StructuralError):
        HomComplex(free_module(p22, 0), free_module(pair, 0))


def test_shift_moves_hom_degrees(p22):
    P = free_module(p22, 0)
    assert hom_dims(P, shift(P, -4)) == dims({4: 1, 6: 1, 8: 1})
    assert hom_dims(shift(P, 3), shift(P, 3)) == hom_dims(P, P)


# Test 2: cones

def test_cone_of_t_has_generators_in_degree_zero_and_k_minus_one(p22):
    C = t_cone(p22)
    assert [g.degree for g in C.generators] == [0, 1]
    assert C.maurer_cartan_defect() == {}
    # coker t in degree 0, ker t = t^2 lands in degree nk + k - 1
    assert hom_dims(free_module(p22, 0), C) == dims({0: 1, 5: 1})


def test_cone_of_identity_is_acyclic(pair):
    P = free_module(pair, 1)
    C = cone(ModuleMorphism.identity(P))
    assert is_acyclic(C)
    assert minimize(C).is_zero


def test_cone_of_non_closed_map_is_a_contract_violation(p22):
    N = SemiFreeModule(p22, [Generator("x", 0, 0), Generator("y", 0, 1)], {(0, 1): p22.t_element(0)})
    P = free_module(p22, 0, degree=1)
    f = ModuleMorphism(P, N, 0, {(1, 0): p22.unit})
    assert not f.closed
    with pytest.raises(ContractViolation) as info:
        cone(f)
    assert info.value.residual == {(0, 0): p22.t_element(0)}


def test_maurer_cartan_violation_is_reported(p22):
    t = p22.t_element(0)
    gens = [Generator("x", 0, 0), Generator("y", 0, 1), Generator("z", 0, 2)]
    # delta_xy delta_yz = t^2 != 0
    bad = SemiFreeModule(p22, gens, {(0, 1): t, (1, 2): t})
    with pytest.raises(AxiomError):
        bad.check()
    good = SemiFreeModule(p22, gens[:2], {(0, 1): t})
    assert good.check() is good


def test_delta_entries_are_degree_checked(p22):
    with pytest.raises(StructuralError):
        SemiFreeModule(p22, [Generator("x", 0, 0), Generator("y", 0, 0)], {(0, 1): p22.t_element(0)})


def test_direct_sum_adds_homs(pair):
    A = free_algebra_module(pair)
    S = direct_sum(free_module(pair, 0), free_module(pair, 1))
    assert hom_dims(S, S) == hom_dims(A, A)
    assert hom_dims(A, A) == dims({0: 2, 2: 4, 4: 2})


@pytest.mark.parametrize("source, target, degree", [(0, 0, 2), (0, 0, 4), (1, 0, 2), (0, 1, 2)])
def test_euler_characteristic_is_additive_over_cones(pair, source, target, degree):
    b = next(b for b in pair.piece(target, source) if pair.degrees[b] == degree)
    M, N = free_module(pair, source, degree=degree), free_module(pair, target)
    C = cone(ModuleMorphism(M, N, 0, {(0, 0): {b: pair.K.one}}))
    for G in (free_module(pair, 0), free_module(pair, 1), free_algebra_module(pair)):
        expected = hom_dims(G, N).euler_characteristic() - hom_dims(G, M).euler_characteristic()
        assert hom_dims(G, C).euler_characteristic() == expected


# Test 3: minimal models

def test_minimize_keeps_minimal_modules(p22):
    C = t_cone(p22)
    assert minimize(C).degree_multiset() == C.degree_multiset()


def test_minimize_cancels_contractible_pairs(pair):
    P1 = free_module(pair, 0)
    contractible = cone(ModuleMorphism(free_module(pair, 1), free_module(pair, 1), 0,
                                       {(0, 0): pair.scale(pair.K(3), pair.idempotent(1))}))
    M = direct_sum(P1, contractible)
    assert M.rank == 3
    assert minimize(M).degree_multiset() == ((0, 0),)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(["pnk", "pair"]))
def test_minimize_preserves_hom_profiles(seed, family):
    A = build_pnk_algebra(2, 2) if family == "pnk" else build_two_object_algebra(2, 2, 1)
    test_set = [free_module(A, i) for i in range(A.num_idempotents)]
    M = random_module(A, seed)
    M.check()
    assert hom_profile(minimize(M), test_set) == hom_profile(M, test_set)


# Test 4: quasi-isomorphisms

def test_identical_modules_are_witnessed(p22):
    C = t_cone(p22)
    result = is_quasi_isomorphic(C, C)
    assert result.status == WITNESSED
    assert verify_witness(result.witness)


def test_shifted_module_is_distinct(p22):
    P = free_module(p22, 0)
    result = is_quasi_isomorphic(P, shift(P, 2))
    assert result.status == DISTINCT
    assert not result


def test_rescaled_cone_is_isomorphic(p22):
    P = free_module(p22, 0)
    t = p22.t_element(0)
    C1 = t_cone(p22)
    C2 = cone(ModuleMorphism(shift(P, -2), P, 0, {(0, 0): p22.scale(p22.K(5), t)}))
    result = is_quasi_isomorphic(C1, C2)
    assert result.status == WITNESSED
    assert result.determinant
    assert verify_witness(result.witness)


def test_witnesses_are_verified_before_they_are_returned(p22, monkeypatch):
    import ptwists.model.modules as modules

    calls = []
    monkeypatch.setattr(modules, "verify_witness", lambda f: calls.append(f) or False)
    with pytest.raises(ContractViolation):
        is_quasi_isomorphic(t_cone(p22), t_cone(p22))
    assert len(calls) == 1


def test_contractible_summand_does_not_change_the_class(pair):
    P1 = free_module(pair, 0)
    M = direct_sum(P1, cone(ModuleMorphism.identity(free_module(pair, 1))))
    assert is_quasi_isomorphic(M, P1)


def test_verify_witness_rejects_non_isomorphisms(p22):
    P = free_module(p22, 0)
    zero = ModuleMorphism.zero(P, P)
    assert not verify_witness(zero)


def test_shift_round_trip(p22):
    C = t_cone(p22)
    back = shift(shift(C, 1), -1)
    assert back.generators == C.generators
    assert back.delta == C.delta
    assert shift(C, 0) is C


def test_hom_profile_of_shift(pair):
    test_set = [free_module(pair, 0), free_module(pair, 1)]
    P1 = free_module(pair, 0)
    assert hom_profile(shift(P1, 1), test_set) == hom_profile(P1, test_set).shift(1)


def test_cone_of_zero_map_is_the_sum(pair):
    M, N = free_module(pair, 0), free_module(pair, 1)
    result = is_quasi_isomorphic(cone(ModuleMorphism.zero(M, N)), direct_sum(N, shift(M, 1)))
    assert result.status == WITNESSED


def test_algebra_and_its_shift_are_distinct(pair):
    A = free_algebra_module(pair)
    assert is_quasi_isomorphic(A, shift(A, 1)).status == DISTINCT
    assert hom_dims(A, zero_module(pair)).total == 0
