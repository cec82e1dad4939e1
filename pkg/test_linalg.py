#!/usr/bin/env python3
"""
Tests for exact graded linear algebra (ranks, kernels, cohomology, scalars)
"""

import numpy as np
import pytest
from hypothesis import given
import hypothesis.strategies as st
from sympy.polys.domains import GF, QQ

from ptwists.model.errors import AxiomError, ConfigurationError, StructuralError
from ptwists.model.linalg import (
    GradedDimVector,
    GradedMap,
    GradedVectorSpace,
    apply_matrix,
    cohomology_dims,
    compose_graded,
    determinant,
    field_name,
    format_scalar,
    make_field,
    matrix_rank,
    nullspace,
    parse_scalar,
    rank_of_graded_map,
    solve,
    solve_linear,
    sparse_matrix,
)


# ---------------------------------------------------------------------------
# Scalars
# ---------------------------------------------------------------------------

def test_make_field():
    assert make_field("QQ") == QQ
    assert make_field("GF(7)") == GF(7)
    assert make_field("GF", prime=32003) == GF(32003)
    assert field_name(make_field("GF(32003)")) == "GF(32003)"


def test_make_field_rejects_composite_and_garbage():
    with pytest.raises(ConfigurationError):
        make_field("GF(12)")
    with pytest.raises(ConfigurationError):
        make_field("GF(x)")
    with pytest.raises(ConfigurationError):
        make_field("RR")


def test_scalar_strings_are_exact():
    assert format_scalar(QQ, QQ(3, 7)) == "3/7"
    assert parse_scalar(QQ, "3/7") == QQ(3, 7)
    K = GF(32003)
    assert format_scalar(K, K(-1)) == "32002 mod 32003"
    assert parse_scalar(K, "12 mod 32003") == K(12)
    assert parse_scalar(K, "1/2") * K(2) == K.one


def test_parse_scalar_refuses_wrong_modulus():
    with pytest.raises(StructuralError):
        parse_scalar(GF(7), "3 mod 5")
    with pytest.raises(StructuralError):
        parse_scalar(QQ, "3 mod 5")


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------

def test_rank_over_rationals_and_prime_field():
    entries = {(0, 0): 1, (0, 1): 2, (1, 0): 2, (1, 1): 4}
    over_q = sparse_matrix({key: QQ(v) for key, v in entries.items()}, (2, 2), QQ)
    assert matrix_rank(over_q) == 1
    # det = 1 - 6 vanishes mod 5
    K = GF(5)
    m = sparse_matrix({(0, 0): K(1), (0, 1): K(2), (1, 0): K(3), (1, 1): K(1)}, (2, 2), K)
    assert matrix_rank(m) == 1


def test_rank_of_empty_matrix_is_zero():
    assert matrix_rank(sparse_matrix({}, (0, 3), QQ)) == 0
    assert determinant(sparse_matrix({}, (0, 0), QQ)) == QQ.one


def test_nullspace_and_solve():
    m = sparse_matrix({(0, 0): QQ(1), (0, 1): QQ(1), (1, 2): QQ(1)}, (2, 3), QQ)
    kernel = nullspace(m)
    assert len(kernel) == 1
    assert apply_matrix(m, kernel[0]) == {}
    x = solve(m, {0: QQ(2), 1: QQ(3)})
    assert apply_matrix(m, x) == {0: QQ(2), 1: QQ(3)}
    singular = sparse_matrix({(0, 0): QQ(1), (1, 0): QQ(1)}, (2, 1), QQ)
    assert solve(singular, {0: QQ(1)}) is None


def test_sparse_matrix_rejects_out_of_range_entries():
    with pytest.raises(StructuralError):
        sparse_matrix({(2, 0): QQ(1)}, (2, 2), QQ)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=4))
def test_rank_nullity(rows):
    m = sparse_matrix({r: {c: QQ(v) for c, v in enumerate(row)} for r, row in enumerate(rows)},
                      (len(rows), 3), QQ)
    assert matrix_rank(m) + len(nullspace(m)) == 3


# ---------------------------------------------------------------------------
# Graded objects
# ---------------------------------------------------------------------------

def test_graded_dim_vector_drops_zeros_and_shifts():
    v = GradedDimVector.from_mapping({0: 1, 2: 0, 4: 1})
    assert v.as_dict() == {0: 1, 4: 1}
    assert v.total == 2
    assert v.shift(-4).as_dict() == {4: 1, 8: 1}
    assert str(v) == "{0:1, 4:1}"


def _two_term_complex(value):
    space = GradedVectorSpace.from_dims(QQ, {0: 1, 1: 1})
    d = GradedMap(space, space, 1, {0: sparse_matrix({(0, 0): value}, (1, 1), QQ)})
    return space, d


def test_cohomology_of_isomorphism_is_zero():
    space, d = _two_term_complex(QQ(1))
    assert cohomology_dims(space, d).as_dict() == {}


def test_cohomology_of_zero_differential_is_the_space():
    space, d = _two_term_complex(QQ(0))
    assert cohomology_dims(space, d).as_dict() == {0: 1, 1: 1}


def test_cohomology_detects_d_squared():
    space = GradedVectorSpace.from_dims(QQ, {0: 1, 1: 1, 2: 1})
    one = sparse_matrix({(0, 0): QQ(1)}, (1, 1), QQ)
    d = GradedMap(space, space, 1, {0: one, 1: one})
    with pytest.raises(AxiomError) as info:
        cohomology_dims(space, d)
    assert info.value.axiom == "d_squared"
    assert info.value.witness == 0


def test_cohomology_rejects_wrong_degree():
    space = GradedVectorSpace.from_dims(QQ, {0: 1})
    with pytest.raises(StructuralError):
        cohomology_dims(space, GradedMap.identity(space))


def test_graded_map_shape_is_checked():
    space = GradedVectorSpace.from_dims(QQ, {0: 1, 1: 2})
    with pytest.raises(StructuralError):
        GradedMap(space, space, 1, {0: sparse_matrix({}, (1, 1), QQ)})


def test_solve_linear_and_compose():
    space, d = _two_term_complex(QQ(3))
    assert solve_linear(d, 1, {0: QQ(6)}) == {0: QQ(2)}
    assert compose_graded(d, d).blocks == {}


def test_rank_of_graded_map_per_degree():
    space = GradedVectorSpace.from_dims(QQ, {0: 2, 1: 2})
    block = sparse_matrix({(0, 0): QQ(1), (1, 0): QQ(2)}, (2, 2), QQ)
    d = GradedMap(space, space, 1, {0: block})
    assert rank_of_graded_map(d) == {0: 1}
    assert rank_of_graded_map(GradedMap.identity(space)) == {0: 2, 1: 2}


@given(st.integers(0, 10_000))
def test_rank_of_composite_is_bounded(seed):
    rng = np.random.default_rng(seed)
    first = sparse_matrix({(r, c): QQ(int(v)) for (r, c), v in np.ndenumerate(rng.integers(-2, 3, (3, 4)))},
                          (3, 4), QQ)
    second = sparse_matrix({(r, c): QQ(int(v)) for (r, c), v in np.ndenumerate(rng.integers(-2, 3, (4, 2)))},
                           (4, 2), QQ)
    assert matrix_rank(first * second) <= min(matrix_rank(first), matrix_rank(second))


@given(st.integers(0, 10_000))
def test_cohomology_keeps_the_euler_characteristic(seed):
    rng = np.random.default_rng(seed)
    a, w, u, c = (int(x) for x in rng.integers(1, 4, 4))
    space = GradedVectorSpace.from_dims(QQ, {0: a, 1: w + u, 2: c})
    # d0 lands in the first w coordinates, d1 only reads the last u, so d1 d0 = 0
    d0 = sparse_matrix({(r, col): QQ(int(v)) for (r, col), v in np.ndenumerate(rng.integers(-2, 3, (w, a)))
                        if v}, (w + u, a), QQ)
    d1 = sparse_matrix({(r, w + col): QQ(int(v)) for (r, col), v in np.ndenumerate(rng.integers(-2, 3, (c, u)))
                        if v}, (c, w + u), QQ)
    d = GradedMap(space, space, 1, {0: d0, 1: d1})
    assert cohomology_dims(space, d).euler_characteristic() == space.dims.euler_characteristic()
