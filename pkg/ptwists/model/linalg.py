"""
Exact graded linear algebra

Scalars live in a sympy polynomial domain (QQ or GF(p)); matrices are sparse
DomainMatrix objects. Everything above this module (Hom-complexes, minimal
models, isomorphism witnesses) reduces to the rank / kernel / solve routines
defined here. Pivoting is whatever DomainMatrix.rref does, which is
deterministic (lowest index first), so results reproduce exactly.

Classes:
    GradedDimVector: Finitely supported degree -> dimension map
    GradedVectorSpace: Graded space with ordered basis labels per degree
    GradedMap: Homogeneous map between graded spaces, one block per degree

Functions:
    make_field, field_name, format_scalar, parse_scalar
    sparse_matrix, matrix_rank, nullspace, solve, determinant
    rank_of_graded_map, cohomology_dims, solve_linear
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from sympy import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix

from ptwists.model.errors import AxiomError, ConfigurationError, StructuralError

Vector = Dict[int, object]


# ---------------------------------------------------------------------------
# Scalars
# ---------------------------------------------------------------------------

def make_field(name="QQ", prime=32003):
    """
    Return the sympy domain for a field name.

    Args:
        name (str): "QQ" for the rationals, "GF" or "GF(p)" for a prime field
        prime (int): Characteristic used when name is "GF"

    Returns:
        Domain: sympy QQ or GF(prime)
    """
    key = str(name).strip().upper()
    if key in ("QQ", "Q", "RATIONALS"):
        return QQ
    if key.startswith("GF"):
        inner = key[2:].strip("() ")
        try:
            p = int(inner) if inner else int(prime)
        except ValueError:
            raise ConfigurationError(f"unknown field '{name}' (expected QQ or GF(p))") from None
        if not isprime(p):
            raise ConfigurationError(f"GF characteristic must be prime, got {p}")
        return GF(p)
    raise ConfigurationError(f"unknown field '{name}' (expected QQ or GF(p))")


def field_name(K):
    """Canonical name of a domain: 'QQ' or 'GF(p)'."""
    if K == QQ:
        return "QQ"
    return f"GF({K.characteristic()})"


def format_scalar(K, value):
    """Exact string form: '3/7' over QQ, '12 mod 32003' over GF(p)."""
    if K == QQ:
        return str(K.to_sympy(value))
    p = K.characteristic()
    return f"{int(K.to_sympy(value)) % p} mod {p}"


def parse_scalar(K, text):
    """Inverse of format_scalar; plain integers are accepted for either field."""
    if isinstance(text, int):
        return K(text)
    raw = str(text).strip()
    if " mod " in raw:
        value, modulus = raw.split(" mod ")
        if K == QQ or int(modulus) != K.characteristic():
            raise StructuralError(f"scalar '{raw}' does not belong to {field_name(K)}")
        return K(int(value))
    frac = Fraction(raw)
    if K == QQ:
        return QQ(frac.numerator, frac.denominator)
    return K(frac.numerator) / K(frac.denominator)


# ---------------------------------------------------------------------------
# Sparse matrices
# ---------------------------------------------------------------------------

def sparse_matrix(entries, shape, K):
    """
    Build a sparse DomainMatrix.

    Args:
        entries (dict): Either {(row, col): value} or {row: {col: value}}
        shape (tuple): (rows, cols)
        K: sympy domain

    Returns:
        DomainMatrix: Matrix in sparse format with zeros dropped
    """
    rows = {}
    for key, value in entries.items():
        if isinstance(key, tuple):
            r, c = key
            if value:
                rows.setdefault(r, {})[c] = value
        else:
            kept = {c: v for c, v in value.items() if v}
            if kept:
                rows[key] = kept
    for r, cols in rows.items():
        if not 0 <= r < shape[0] or any(not 0 <= c < shape[1] for c in cols):
            raise StructuralError(f"entry outside matrix of shape {shape}")
    return DomainMatrix(rows, shape, K)


def _rows_of(matrix):
    return {r: dict(cols) for r, cols in matrix.to_sparse().rep.items() if cols}


def matrix_rank(matrix):
    """Exact rank; zero-size matrices have rank 0."""
    if 0 in matrix.shape:
        return 0
    return matrix.rank()


def _rref(matrix):
    if 0 in matrix.shape:
        return {}, ()
    reduced, pivots = matrix.rref()
    return _rows_of(reduced), tuple(pivots)


def nullspace(matrix) -> List[Vector]:
    """
    Basis of the right kernel, one vector per free column, in column order.

    Args:
        matrix (DomainMatrix): m x n matrix

    Returns:
        list: Sparse vectors {column: value}
    """
    K = matrix.domain
    n = matrix.shape[1]
    rows, pivots = _rref(matrix)
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        vec = {free: K.one}
        for i, p in enumerate(pivots):
            coeff = rows.get(i, {}).get(free)
            if coeff:
                vec[p] = -coeff
        basis.append(vec)
    return basis


def solve(matrix, rhs: Mapping[int, object]) -> Optional[Vector]:
    """
    Some exact x with matrix * x = rhs, or None.

    Free variables are set to zero, so the answer is deterministic.
    """
    K = matrix.domain
    m, n = matrix.shape
    if any(not 0 <= r < m for r in rhs):
        raise StructuralError("right-hand side outside the target space")
    if not any(rhs.values()):
        return {}
    if n == 0:
        return None
    augmented = _rows_of(matrix)
    for r, v in rhs.items():
        if v:
            augmented.setdefault(r, {})[n] = v
    rows, pivots = _rref(sparse_matrix(augmented, (m, n + 1), K))
    if n in pivots:
        return None
    solution = {}
    for i, p in enumerate(pivots):
        value = rows.get(i, {}).get(n)
        if value:
            solution[p] = value
    return solution


def determinant(matrix):
    """Determinant of a square matrix; the empty matrix has determinant one."""
    rows, cols = matrix.shape
    if rows != cols:
        raise StructuralError(f"determinant of non-square {matrix.shape} matrix")
    if rows == 0:
        return matrix.domain.one
    return matrix.det()


def apply_matrix(matrix, vec: Mapping[int, object]) -> Vector:
    """Sparse matrix-vector product."""
    K = matrix.domain
    out = {}
    for r, cols in _rows_of(matrix).items():
        acc = K.zero
        for c, v in cols.items():
            x = vec.get(c)
            if x:
                acc += v * x
        if acc:
            out[r] = acc
    return out


# ---------------------------------------------------------------------------
# Graded objects
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GradedDimVector:
    """
    Finitely supported map degree -> dimension.

    Zero dimensions are dropped on construction, so two vectors compare equal
    exactly when they agree on every degree.

    Attributes:
        items (tuple): Sorted (degree, dimension) pairs with dimension >= 1
    """

    items: Tuple[Tuple[int, int], ...] = ()

    @classmethod
    def from_mapping(cls, dims: Mapping[int, int]):
        return cls(tuple(sorted((int(d), int(n)) for d, n in dims.items() if n)))

    def __getitem__(self, degree):
        return dict(self.items).get(degree, 0)

    def __iter__(self):
        return iter(self.items)

    def __len__(self):
        return len(self.items)

    def as_dict(self):
        return dict(self.items)

    @property
    def total(self):
        """Total dimension (the hom* number of the ping-pong inequalities)."""
        return sum(n for _, n in self.items)

    def euler_characteristic(self):
        return sum((-1) ** (d % 2) * n for d, n in self.items)

    def shift(self, j):
        """Degrees d become d - j (the profile of X[j] given that of X)."""
        return GradedDimVector(tuple((d - j, n) for d, n in self.items))

    def __str__(self):
        return "{" + ", ".join(f"{d}:{n}" for d, n in self.items) + "}"


@dataclass
class GradedVectorSpace:
    """
    Finite graded vector space with ordered basis labels per degree.

    Attributes:
        K: sympy domain of scalars
        labels (dict): degree -> list of basis labels (empty degrees omitted)
    """

    K: object
    labels: Dict[int, list] = field(default_factory=dict)

    def __post_init__(self):
        self.labels = {d: list(ls) for d, ls in sorted(self.labels.items()) if ls}

    @classmethod
    def from_dims(cls, K, dims: Mapping[int, int]):
        return cls(K, {d: [f"v{d}_{i}" for i in range(n)] for d, n in dims.items()})

    def dim(self, degree):
        return len(self.labels.get(degree, ()))

    @property
    def dims(self):
        return GradedDimVector.from_mapping({d: len(ls) for d, ls in self.labels.items()})

    @property
    def total_dim(self):
        return sum(len(ls) for ls in self.labels.values())

    def degrees(self):
        return sorted(self.labels)


class GradedMap:
    """
    Homogeneous linear map between graded spaces.

    Block at source degree d is a DomainMatrix of shape
    (target.dim(d + degree), source.dim(d)).

    Attributes:
        source (GradedVectorSpace): Domain
        target (GradedVectorSpace): Codomain
        degree (int): Degree of the map
        blocks (dict): source degree -> DomainMatrix
    """

    def __init__(self, source, target, degree, blocks=None):
        if source.K != target.K:
            raise StructuralError("graded map between spaces over different fields")
        self.source = source
        self.target = target
        self.degree = degree
        self.blocks = {}
        for d, block in (blocks or {}).items():
            expected = (target.dim(d + degree), source.dim(d))
            if tuple(block.shape) != expected:
                raise StructuralError(
                    f"block at degree {d} has shape {tuple(block.shape)}, expected {expected}"
                )
            self.blocks[d] = block

    @property
    def K(self):
        return self.source.K

    def block(self, d):
        """Block at source degree d (a zero matrix if none was stored)."""
        if d in self.blocks:
            return self.blocks[d]
        shape = (self.target.dim(d + self.degree), self.source.dim(d))
        return sparse_matrix({}, shape, self.K)

    @classmethod
    def identity(cls, space):
        K = space.K
        blocks = {
            d: sparse_matrix({(i, i): K.one for i in range(space.dim(d))}, (space.dim(d),) * 2, K)
            for d in space.degrees()
        }
        return cls(space, space, 0, blocks)

    @classmethod
    def zero(cls, source, target, degree=0):
        return cls(source, target, degree, {})


# ---------------------------------------------------------------------------
# Graded operations
# ---------------------------------------------------------------------------

def rank_of_graded_map(f: GradedMap) -> Dict[int, int]:
    """
    Exact rank per source degree.

    Returns:
        dict: degree -> rank, degrees of rank 0 omitted
    """
    ranks = {}
    for d in f.source.degrees():
        r = matrix_rank(f.block(d))
        if r:
            ranks[d] = r
    return ranks


def _check_square_zero(space, differential):
    for d in space.degrees():
        first = differential.block(d)
        second = differential.block(d + 1)
        if 0 in first.shape or 0 in second.shape:
            continue
        if not (second * first).is_zero_matrix:
            raise AxiomError("d_squared", d, f"d^2 != 0 starting in degree {d}")


def cohomology_dims(space: GradedVectorSpace, differential: GradedMap, check=True):
    """
    Graded dimension of the cohomology of (space, differential).

    Args:
        space (GradedVectorSpace): Underlying graded space
        differential (GradedMap): Degree-1 endomorphism of space
        check (bool): Verify d^2 = 0 first

    Returns:
        GradedDimVector: dim H^d = dim ker(d_d) - rank(d_{d-1})

    Raises:
        StructuralError: differential is not a degree-1 endomorphism
        AxiomError: d^2 != 0, reporting the first violating degree
    """
    if (
        differential.degree != 1
        or differential.source.dims != space.dims
        or differential.target.dims != space.dims
    ):
        raise StructuralError("differential must be a degree-1 endomorphism of the space")
    if check:
        _check_square_zero(space, differential)
    ranks = rank_of_graded_map(differential)
    dims = {}
    for d in space.degrees():
        dims[d] = space.dim(d) - ranks.get(d, 0) - ranks.get(d - 1, 0)
    return GradedDimVector.from_mapping(dims)


def solve_linear(f: GradedMap, degree, target_vector: Mapping[int, object]) -> Optional[Vector]:
    """
    Exact preimage of a vector under f.

    Args:
        f (GradedMap): The map
        degree (int): Degree of the target vector in f.target
        target_vector (dict): Sparse vector in f.target at that degree

    Returns:
        dict or None: Source vector at degree - f.degree, or None if there
        is no solution

    Raises:
        StructuralError: The vector does not fit the target degree
    """
    if any(not 0 <= i < f.target.dim(degree) for i in target_vector):
        raise StructuralError(f"vector does not live in target degree {degree}")
    return solve(f.block(degree - f.degree), target_vector)


def compose_graded(g: GradedMap, f: GradedMap) -> GradedMap:
    """g after f."""
    if f.target.dims != g.source.dims:
        raise StructuralError("graded maps are not composable")
    blocks = {}
    for d in f.source.degrees():
        left = g.block(d + f.degree)
        right = f.block(d)
        if 0 in left.shape or 0 in right.shape:
            continue
        blocks[d] = left * right
    return GradedMap(f.source, g.target, f.degree + g.degree, blocks)


def vectors_span_rank(K, vectors: Iterable[Vector], dim):
    """Rank of the span of sparse vectors in a space of the given dimension."""
    rows = {i: dict(v) for i, v in enumerate(vectors) if v}
    if not rows:
        return 0
    return matrix_rank(sparse_matrix(rows, (max(rows) + 1, dim), K))
