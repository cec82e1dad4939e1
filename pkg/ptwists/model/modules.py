"""
Semi-free dg-modules (twisted complexes) over a DgAlgebra

Conventions (used by every construction in the package):
    - Modules are right modules. Generator j has idempotent c(j) and degree s_j;
      the free module on it is e_{c(j)} A shifted so g_j sits in degree s_j.
    - D(g_j) = sum_i g_i delta_ij, entry delta_ij in e_{c(i)} A e_{c(j)} of
      degree s_j + 1 - s_i. D^2 = 0 reads  delta delta + S d(delta) = 0  with
      S = diag((-1)^{s_i}).
    - A degree-p morphism M -> N has entry (l, j) of degree p + s_j - s_l and
      Hom differential D(f) = delta_N F + S_N d(F) - (-1)^p F delta_M.
    - M[j] lowers generator degrees by j and multiplies delta by (-1)^j.
    - cone(f: M -> N) has generators N then M[1] and delta [[delta_N, F], [0, -delta_M]].

Classes:
    Generator: (label, idempotent position, degree)
    SemiFreeModule: Generators plus a sparse matrix differential
    ModuleMorphism: Homogeneous algebra-entry matrix between modules
    HomComplex: The finite Hom-complex with an elementary basis
    QuasiIsoResult: Outcome of is_quasi_isomorphic

Functions:
    free_module, free_algebra_module, direct_sum, shift, cone,
    hom_complex, minimize, is_quasi_isomorphic, verify_witness
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Tuple

import numpy as np

from ptwists.config.parameters import params
from ptwists.model.algebra import DgAlgebra, Element
from ptwists.model.errors import AxiomError, ContractViolation, StructuralError
from ptwists.model.linalg import (
    GradedDimVector,
    GradedMap,
    GradedVectorSpace,
    cohomology_dims,
    determinant,
    nullspace,
    solve,
    sparse_matrix,
)

logger = logging.getLogger(__name__)


def _sign(K, exponent):
    return K(-1) if exponent % 2 else K.one


def same_algebra(*algebras):
    """Raise StructuralError unless all arguments are the same algebra object."""
    first = algebras[0]
    for other in algebras[1:]:
        if other is not first:
            if other.K != first.K:
                raise StructuralError(
                    f"field mismatch: {first.field_name} vs {other.field_name}"
                )
            raise StructuralError(f"algebra mismatch: '{first.name}' vs '{other.name}'")
    return first


@dataclass(frozen=True)
class Generator:
    """A free generator: label, idempotent position and degree."""

    label: str
    idempotent: int
    degree: int

    def shifted(self, j):
        return Generator(self.label, self.idempotent, self.degree - j)


class SemiFreeModule:
    """
    Twisted complex over a DgAlgebra.

    Attributes:
        algebra (DgAlgebra): Coefficient algebra
        generators (tuple): Generator records
        delta (dict): (i, j) -> algebra element, nonzero entries only
        name (str): Display name
    """

    def __init__(self, algebra: DgAlgebra, generators, delta=None, name="M", validate=True):
        self.algebra = algebra
        self.generators = tuple(generators)
        self.delta = {key: dict(val) for key, val in (delta or {}).items() if val}
        self.name = name
        if validate:
            self._validate_entries()

    def _validate_entries(self):
        A = self.algebra
        n = len(self.generators)
        for (i, j), entry in self.delta.items():
            if not (0 <= i < n and 0 <= j < n):
                raise StructuralError(f"{self.name}: delta entry ({i}, {j}) outside {n} generators")
            gi, gj = self.generators[i], self.generators[j]
            expected = gj.degree + 1 - gi.degree
            for b in entry:
                if A.degrees[b] != expected:
                    raise StructuralError(
                        f"{self.name}: delta[{i},{j}] has degree {A.degrees[b]}, expected {expected}"
                    )
                if A.left[b] != gi.idempotent or A.right[b] != gj.idempotent:
                    raise StructuralError(
                        f"{self.name}: delta[{i},{j}] not in e_{gi.idempotent + 1} A e_{gj.idempotent + 1}"
                    )

    # ------------------------------------------------------------------

    @property
    def rank(self):
        return len(self.generators)

    def __len__(self):
        return len(self.generators)

    @property
    def is_zero(self):
        return not self.generators

    @cached_property
    def columns(self) -> Dict[int, Dict[int, Element]]:
        cols = {}
        for (i, j), entry in self.delta.items():
            cols.setdefault(j, {})[i] = entry
        return cols

    @cached_property
    def rows(self) -> Dict[int, Dict[int, Element]]:
        rows = {}
        for (i, j), entry in self.delta.items():
            rows.setdefault(i, {})[j] = entry
        return rows

    def degree_multiset(self) -> Tuple[Tuple[int, int], ...]:
        """Sorted (idempotent, degree) pairs; the minimal-model fingerprint."""
        return tuple(sorted((g.idempotent, g.degree) for g in self.generators))

    def scalar_part(self):
        """Matrix of idempotent coefficients of delta."""
        A = self.algebra
        entries = {}
        for (i, j), entry in self.delta.items():
            c = self.generators[i].idempotent
            if c == self.generators[j].idempotent:
                coeff = A.unit_coefficient(entry, c)
                if coeff:
                    entries[(i, j)] = coeff
        return sparse_matrix(entries, (self.rank, self.rank), A.K)

    def maurer_cartan_defect(self):
        """Nonzero entries of delta delta + S d(delta); empty when D^2 = 0."""
        A = self.algebra
        defect = {}
        for (i, j), first in self.delta.items():
            for l, second in self.columns.get(i, {}).items():
                key = (l, j)
                defect[key] = A.add(defect.get(key, {}), A.multiply(second, first))
        for (i, j), entry in self.delta.items():
            d_entry = A.differential(entry)
            if d_entry:
                sign = _sign(A.K, self.generators[i].degree)
                defect[(i, j)] = A.add(defect.get((i, j), {}), A.scale(sign, d_entry))
        return {key: val for key, val in defect.items() if val}

    def is_semifree(self):
        scalar = self.scalar_part()
        power = scalar
        for _ in range(self.rank):
            if power.is_zero_matrix:
                return True
            power = power * scalar
        return power.is_zero_matrix or self.rank == 0

    def check(self):
        """
        Raise AxiomError if D^2 != 0 or the scalar part is not nilpotent.

        Returns:
            SemiFreeModule: self, for chaining
        """
        defect = self.maurer_cartan_defect()
        if defect:
            raise AxiomError("d_squared", min(defect), f"{self.name}: D^2 != 0 at entry {min(defect)}")
        if not self.is_semifree():
            raise AxiomError("semi_free", None, f"{self.name}: scalar part of delta is not nilpotent")
        return self

    def renamed(self, name):
        return SemiFreeModule(self.algebra, self.generators, self.delta, name, validate=False)

    def __eq__(self, other):
        if not isinstance(other, SemiFreeModule):
            return NotImplemented
        return (
            self.algebra is other.algebra
            and self.generators == other.generators
            and self.delta == other.delta
        )

    def __hash__(self):
        return hash((id(self.algebra), self.degree_multiset(), len(self.delta)))

    def __repr__(self):
        degs = ", ".join(f"{g.label}:{g.degree}" for g in self.generators)
        return f"SemiFreeModule({self.name}, [{degs}], {len(self.delta)} entries)"


# ---------------------------------------------------------------------------
# Morphisms
# ---------------------------------------------------------------------------

class ModuleMorphism:
    """
    Degree-homogeneous map between semi-free modules.

    Attributes:
        source (SemiFreeModule): Domain
        target (SemiFreeModule): Codomain
        degree (int): Degree p
        entries (dict): (l, j) -> element, l a target and j a source generator
    """

    def __init__(self, source, target, degree, entries=None, validate=True):
        same_algebra(source.algebra, target.algebra)
        self.source = source
        self.target = target
        self.degree = degree
        self.entries = {key: dict(val) for key, val in (entries or {}).items() if val}
        if validate:
            self._validate_entries()

    def _validate_entries(self):
        A = self.source.algebra
        for (l, j), entry in self.entries.items():
            gl, gj = self.target.generators[l], self.source.generators[j]
            expected = self.degree + gj.degree - gl.degree
            for b in entry:
                if A.degrees[b] != expected or A.left[b] != gl.idempotent or A.right[b] != gj.idempotent:
                    raise StructuralError(
                        f"morphism entry ({l}, {j}) is not in e_{gl.idempotent + 1} A "
                        f"e_{gj.idempotent + 1} of degree {expected}"
                    )

    @property
    def algebra(self):
        return self.source.algebra

    @classmethod
    def identity(cls, M):
        A = M.algebra
        entries = {(j, j): A.idempotent(g.idempotent) for j, g in enumerate(M.generators)}
        return cls(M, M, 0, entries, validate=False)

    @classmethod
    def zero(cls, source, target, degree=0):
        return cls(source, target, degree, {}, validate=False)

    @classmethod
    def diagonal(cls, M, element, degree):
        """Endomorphism g_j -> g_j e_c x e_c, for x homogeneous of the given degree."""
        A = M.algebra
        entries = {}
        for j, g in enumerate(M.generators):
            e = A.idempotent(g.idempotent)
            entries[(j, j)] = A.multiply(A.multiply(e, element), e)
        return cls(M, M, degree, entries)

    def differential(self) -> Dict[Tuple[int, int], Element]:
        """D(f) = delta_N F + S_N d(F) - (-1)^p F delta_M, as an entry dict."""
        A = self.algebra
        K = A.K
        out = {}

        def add(key, value):
            if value:
                out[key] = A.add(out.get(key, {}), value)

        for (l, j), entry in self.entries.items():
            for r, d_entry in self.target.columns.get(l, {}).items():
                add((r, j), A.multiply(d_entry, entry))
            d_f = A.differential(entry)
            if d_f:
                add((l, j), A.scale(_sign(K, self.target.generators[l].degree), d_f))
            minus = -_sign(K, self.degree)
            for i, d_entry in self.source.rows.get(j, {}).items():
                add((l, i), A.scale(minus, A.multiply(entry, d_entry)))
        return {key: val for key, val in out.items() if val}

    @cached_property
    def closed(self):
        return not self.differential()

    def compose(self, other: "ModuleMorphism") -> "ModuleMorphism":
        """self after other."""
        if other.target is not self.source and other.target != self.source:
            raise StructuralError("morphisms are not composable")
        A = self.algebra
        out = {}
        by_row = {}
        for (l, j), entry in self.entries.items():
            by_row.setdefault(j, []).append((l, entry))
        for (j, i), entry in other.entries.items():
            for l, left in by_row.get(j, ()):
                out[(l, i)] = A.add(out.get((l, i), {}), A.multiply(left, entry))
        return ModuleMorphism(other.source, self.target, self.degree + other.degree, out, validate=False)

    def add(self, other, coeff=None):
        A = self.algebra
        if other.degree != self.degree:
            raise StructuralError("cannot add morphisms of different degrees")
        out = {key: dict(val) for key, val in self.entries.items()}
        for key, entry in other.entries.items():
            term = entry if coeff is None else A.scale(coeff, entry)
            out[key] = A.add(out.get(key, {}), term)
        return ModuleMorphism(self.source, self.target, self.degree, out, validate=False)

    def scalar_matrix(self):
        """Idempotent coefficients of a degree-0 map, as a DomainMatrix."""
        A = self.algebra
        entries = {}
        for (l, j), entry in self.entries.items():
            c = self.target.generators[l].idempotent
            if c == self.source.generators[j].idempotent:
                coeff = A.unit_coefficient(entry, c)
                if coeff:
                    entries[(l, j)] = coeff
        return sparse_matrix(entries, (self.target.rank, self.source.rank), A.K)

    def __repr__(self):
        return (f"ModuleMorphism({self.source.name} -> {self.target.name}, "
                f"degree {self.degree}, {len(self.entries)} entries)")


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------

def free_module(A: DgAlgebra, position, degree=0, label=None):
    """The projective P_{position+1} = e_position A with its generator in `degree`."""
    if not 0 <= position < A.num_idempotents:
        raise StructuralError(f"no idempotent at position {position}")
    label = label or f"P{position + 1}"
    return SemiFreeModule(A, [Generator(label, position, degree)], {}, name=label)


def free_algebra_module(A: DgAlgebra, name="A"):
    """A as a right module over itself: the direct sum of all P_i."""
    gens = [Generator(f"P{p + 1}", p, 0) for p in range(A.num_idempotents)]
    return SemiFreeModule(A, gens, {}, name=name)


def zero_module(A: DgAlgebra):
    return SemiFreeModule(A, [], {}, name="0")


def direct_sum(*modules, name=None):
    """Block-diagonal direct sum."""
    if not modules:
        raise StructuralError("direct sum of no modules")
    A = same_algebra(*(M.algebra for M in modules))
    gens, delta, offset = [], {}, 0
    for M in modules:
        gens.extend(M.generators)
        for (i, j), entry in M.delta.items():
            delta[(i + offset, j + offset)] = entry
        offset += M.rank
    return SemiFreeModule(A, gens, delta, name or " + ".join(M.name for M in modules), validate=False)


def shift(M: SemiFreeModule, j) -> SemiFreeModule:
    """M[j]: generator degrees drop by j, delta picks up (-1)^j."""
    if j == 0:
        return M
    A = M.algebra
    sign = _sign(A.K, j)
    delta = {key: A.scale(sign, entry) for key, entry in M.delta.items()}
    gens = [g.shifted(j) for g in M.generators]
    return SemiFreeModule(A, gens, delta, f"{M.name}[{j}]", validate=False)


def cone(f: ModuleMorphism, name=None) -> SemiFreeModule:
    """
    Mapping cone of a closed degree-0 morphism.

    Raises:
        ContractViolation: f has nonzero degree or is not closed (carries D(f))
    """
    if f.degree != 0:
        raise ContractViolation(f"cone needs a degree-0 morphism, got degree {f.degree}")
    residual = f.differential()
    if residual:
        raise ContractViolation("cone of a non-closed morphism", residual=residual)
    A = f.algebra
    N, M = f.target, f.source
    offset = N.rank
    gens = list(N.generators) + [g.shifted(1) for g in M.generators]
    delta = dict(N.delta)
    for (l, j), entry in f.entries.items():
        delta[(l, offset + j)] = entry
    for (i, j), entry in M.delta.items():
        delta[(offset + i, offset + j)] = A.negate(entry)
    return SemiFreeModule(A, gens, delta, name or f"cone({M.name}->{N.name})", validate=False)


# ---------------------------------------------------------------------------
# Hom complexes
# ---------------------------------------------------------------------------

class HomComplex:
    """
    The complex Hom(M, N) of all idempotent-compatible entry matrices.

    The basis is elementary: (l, j, b) is the matrix with the single basis
    element b of e_{c(l)} A e_{c(j)} at position (l, j); its degree is
    |b| + s_l - s_j.

    Attributes:
        source, target (SemiFreeModule): M and N
        basis (dict): degree -> list of (l, j, b)
        space (GradedVectorSpace): Underlying graded space
    """

    def __init__(self, source: SemiFreeModule, target: SemiFreeModule):
        A = same_algebra(source.algebra, target.algebra)
        self.algebra = A
        self.source = source
        self.target = target
        basis = {}
        for l, gl in enumerate(target.generators):
            for j, gj in enumerate(source.generators):
                for b in A.piece(gl.idempotent, gj.idempotent):
                    deg = A.degrees[b] + gl.degree - gj.degree
                    basis.setdefault(deg, []).append((l, j, b))
        self.basis = dict(sorted(basis.items()))
        self.position = {key: (deg, idx) for deg, keys in self.basis.items()
                         for idx, key in enumerate(keys)}
        self.space = GradedVectorSpace(A.K, self.basis)
        self._blocks = {}

    def dim(self, degree):
        return len(self.basis.get(degree, ()))

    def degree_of(self, key):
        return self.position[key][0]

    def expand(self, entries: Dict[Tuple[int, int], Element], degree):
        """Coordinates of an entry dict in the basis of the given degree."""
        vec = {}
        for (l, j), entry in entries.items():
            for b, coeff in entry.items():
                deg, idx = self.position[(l, j, b)]
                if deg != degree:
                    raise StructuralError(f"entry ({l}, {j}) is not of degree {degree}")
                vec[idx] = vec.get(idx, self.algebra.K.zero) + coeff
        return {i: v for i, v in vec.items() if v}

    def morphism(self, degree, vector) -> ModuleMorphism:
        """The morphism with the given coordinates in the given degree."""
        A = self.algebra
        entries = {}
        keys = self.basis.get(degree, [])
        for idx, coeff in vector.items():
            if coeff:
                l, j, b = keys[idx]
                entries[(l, j)] = A.add(entries.get((l, j), {}), {b: coeff})
        return ModuleMorphism(self.source, self.target, degree, entries, validate=False)

    def vector(self, f: ModuleMorphism):
        return self.expand(f.entries, f.degree)

    def differential_of(self, key):
        """D of one elementary basis vector, as coordinates in degree + 1."""
        deg = self.degree_of(key)
        l, j, b = key
        f = ModuleMorphism(self.source, self.target, deg, {(l, j): {b: self.algebra.K.one}},
                           validate=False)
        return self.expand(f.differential(), deg + 1)

    def block(self, degree):
        """Matrix of D from degree to degree + 1."""
        if degree not in self._blocks:
            entries = {}
            for col, key in enumerate(self.basis.get(degree, ())):
                for row, coeff in self.differential_of(key).items():
                    entries[(row, col)] = coeff
            shape = (self.dim(degree + 1), self.dim(degree))
            self._blocks[degree] = sparse_matrix(entries, shape, self.algebra.K)
        return self._blocks[degree]

    @cached_property
    def differential(self) -> GradedMap:
        blocks = {d: self.block(d) for d in self.basis}
        return GradedMap(self.space, self.space, 1, blocks)

    def cohomology(self) -> GradedDimVector:
        return cohomology_dims(self.space, self.differential, check=False)

    def closed_maps(self, degree) -> List[dict]:
        """Basis of the closed maps of the given degree (kernel of D)."""
        return nullspace(self.block(degree))

    def is_coboundary(self, f: ModuleMorphism) -> bool:
        """True when f = D(g) for some g of degree |f| - 1."""
        vec = self.vector(f)
        if not vec:
            return True
        return solve(self.block(f.degree - 1), vec) is not None

    def class_coefficient(self, f: ModuleMorphism, generator: ModuleMorphism):
        """
        c with f = c * generator + D(g), when the degree's cohomology is spanned by generator.

        Returns:
            scalar or None: None when f is not in that span modulo coboundaries
        """
        deg = f.degree
        K = self.algebra.K
        z = self.vector(generator)
        prev = self.block(deg - 1)
        width = prev.shape[1]
        entries = {(row, 0): v for row, v in z.items()}
        for row, cols in prev.to_sparse().rep.items():
            for col, v in cols.items():
                entries[(row, col + 1)] = v
        augmented = sparse_matrix(entries, (self.dim(deg), width + 1), K)
        answer = solve(augmented, self.vector(f))
        if answer is None:
            return None
        return answer.get(0, K.zero)


def hom_complex(M: SemiFreeModule, N: SemiFreeModule) -> HomComplex:
    """Hom(M, N); raises StructuralError across algebras."""
    return HomComplex(M, N)


def hom_dims(M, N) -> GradedDimVector:
    """Graded dimension of H* Hom(M, N)."""
    return HomComplex(M, N).cohomology()


# ---------------------------------------------------------------------------
# Minimal models
# ---------------------------------------------------------------------------

def _unit_inverse(A: DgAlgebra, u: Element, position):
    """Inverse of a degree-0 element lambda e_c + nilpotent in e_c A e_c, or None."""
    lam = A.unit_coefficient(u, position)
    if not lam or A.differential(u):
        return None
    e = A.idempotent(position)
    inv_lam = A.K.one / lam
    radical = A.add(u, A.scale(-lam, e))
    step = A.scale(-inv_lam, radical)
    term = dict(e)
    total = dict(e)
    for _ in range(A.dim + 1):
        term = A.multiply(term, step)
        if not term:
            return A.scale(inv_lam, total)
        total = A.add(total, term)
    return None


def minimize(M: SemiFreeModule, name=None) -> SemiFreeModule:
    """
    Cancel contractible pairs until no delta entry has an invertible scalar part.

    Pivots are taken column by column (lowest index first), lowest row first;
    each cancellation of delta_ij = u replaces delta by
    delta_rc - delta_rj u^{-1} delta_ic and removes generators i and j.

    Returns:
        SemiFreeModule: Quasi-isomorphic module, canonical for the pivot order
    """
    A = M.algebra
    gens = M.generators
    cols = {j: dict(col) for j, col in M.columns.items()}
    rows = {i: dict(row) for i, row in M.rows.items()}
    alive = set(range(len(gens)))

    def find_pivot():
        for j in sorted(cols):
            if j not in alive:
                continue
            gj = gens[j]
            for i in sorted(cols[j]):
                gi = gens[i]
                if gi.idempotent != gj.idempotent or gi.degree != gj.degree + 1:
                    continue
                inv = _unit_inverse(A, cols[j][i], gj.idempotent)
                if inv is not None:
                    return i, j, inv
        return None

    while True:
        pivot = find_pivot()
        if pivot is None:
            break
        i, j, inv = pivot
        left = {r: A.multiply(entry, inv) for r, entry in cols.get(j, {}).items()
                if r not in (i, j)}
        right = {c: entry for c, entry in rows.get(i, {}).items() if c not in (i, j)}
        for r, lr in left.items():
            for c, rc in right.items():
                update = A.negate(A.multiply(lr, rc))
                if not update:
                    continue
                value = A.add(cols.get(c, {}).get(r, {}), update)
                if value:
                    cols.setdefault(c, {})[r] = value
                    rows.setdefault(r, {})[c] = value
                else:
                    cols.get(c, {}).pop(r, None)
                    rows.get(r, {}).pop(c, None)
        for g in (i, j):
            alive.discard(g)
            for c in rows.pop(g, {}):
                cols.get(c, {}).pop(g, None)
            for r in cols.pop(g, {}):
                rows.get(r, {}).pop(g, None)

    order = sorted(alive)
    new_index = {old: new for new, old in enumerate(order)}
    delta = {}
    for j, col in cols.items():
        for i, entry in col.items():
            if entry and i in new_index and j in new_index:
                delta[(new_index[i], new_index[j])] = entry
    return SemiFreeModule(A, [gens[g] for g in order], delta, name or M.name, validate=False)


# ---------------------------------------------------------------------------
# Quasi-isomorphism
# ---------------------------------------------------------------------------

WITNESSED = "witnessed"
DISTINCT = "distinct"
UNDETERMINED = "undetermined"


@dataclass
class QuasiIsoResult:
    """
    Verdict of is_quasi_isomorphic.

    Attributes:
        status (str): 'witnessed', 'distinct' or 'undetermined'
        witness (ModuleMorphism): Closed degree-0 map between the minimal
            models with invertible scalar part (witnessed only)
        source_min, target_min (SemiFreeModule): The minimal models compared
        attempts (int): Candidate combinations tried
    """

    status: str
    witness: Optional[ModuleMorphism] = None
    source_min: Optional[SemiFreeModule] = None
    target_min: Optional[SemiFreeModule] = None
    attempts: int = 0

    def __bool__(self):
        return self.status == WITNESSED

    @property
    def determinant(self):
        if self.witness is None:
            return None
        return determinant(self.witness.scalar_matrix())


def _scalar_rows(hc: HomComplex):
    """For each degree-0 basis vector, its (l, j) slot if it is an idempotent entry."""
    A = hc.algebra
    idems = set(A.idempotents)
    return {idx: (l, j) for idx, (l, j, b) in enumerate(hc.basis.get(0, ())) if b in idems}


def _candidate_det(K, slots, vector, n):
    entries = {}
    for idx, coeff in vector.items():
        slot = slots.get(idx)
        if slot is not None:
            entries[slot] = entries.get(slot, K.zero) + coeff
    return determinant(sparse_matrix(entries, (n, n), K))


def is_quasi_isomorphic(M: SemiFreeModule, N: SemiFreeModule, attempts=None, seed=None) -> QuasiIsoResult:
    """
    Search for a witnessed quasi-isomorphism between M and N.

    Both sides are minimized. Different (idempotent, degree) multisets mean
    the modules are distinct. Otherwise the closed degree-0 maps are swept:
    each kernel basis vector, then their sum, then seeded random integer
    combinations, until one has an invertible scalar part. Exhausting the
    budget yields 'undetermined', never a false positive.
    Every witness is checked with verify_witness before it is returned.

    Args:
        M, N (SemiFreeModule): Modules over the same algebra
        attempts (int): Random combinations to try (default params.qiso_attempts)
        seed (int): Seed for the combinations (default params.seed)

    Returns:
        QuasiIsoResult

    Raises:
        ContractViolation: A witness failed verify_witness
    """
    same_algebra(M.algebra, N.algebra)
    A = M.algebra
    K = A.K
    m_min, n_min = minimize(M), minimize(N)
    if m_min.degree_multiset() != n_min.degree_multiset():
        return QuasiIsoResult(DISTINCT, None, m_min, n_min)
    if m_min.generators == n_min.generators and m_min.delta == n_min.delta:
        identity = ModuleMorphism(m_min, n_min, 0, ModuleMorphism.identity(m_min).entries, validate=False)
        return QuasiIsoResult(WITNESSED, _checked_witness(identity), m_min, n_min)

    hc = HomComplex(m_min, n_min)
    kernel = hc.closed_maps(0)
    slots = _scalar_rows(hc)
    n = m_min.rank
    budget = params.qiso_attempts if attempts is None else attempts
    rng = np.random.default_rng(params.seed if seed is None else seed)

    def candidates():
        yield from kernel
        if len(kernel) > 1:
            total = {}
            for vec in kernel:
                for idx, v in vec.items():
                    total[idx] = total.get(idx, K.zero) + v
            yield total
        for _ in range(budget):
            coeffs = rng.integers(1, 1000, size=len(kernel))
            combo = {}
            for c, vec in zip(coeffs, kernel):
                scalar = K(int(c))
                for idx, v in vec.items():
                    combo[idx] = combo.get(idx, K.zero) + scalar * v
            yield combo

    tried = 0
    if kernel:
        for vec in candidates():
            tried += 1
            if _candidate_det(K, slots, vec, n):
                return QuasiIsoResult(WITNESSED, _checked_witness(hc.morphism(0, vec)), m_min, n_min, tried)
    logger.warning("quasi-isomorphism undetermined after %d candidates (%s vs %s)",
                   tried, M.name, N.name)
    return QuasiIsoResult(UNDETERMINED, None, m_min, n_min, tried)


def is_acyclic(M: SemiFreeModule) -> bool:
    """H* Hom(P_c, M) = 0 for every idempotent c."""
    A = M.algebra
    return all(
        not hom_dims(free_module(A, c), M).items
        for c in range(A.num_idempotents)
    )


def verify_witness(f: ModuleMorphism) -> bool:
    """A closed degree-0 map is a quasi-isomorphism iff its cone is acyclic."""
    if f.degree != 0 or not f.closed:
        return False
    return is_acyclic(cone(f))


def _checked_witness(f: ModuleMorphism) -> ModuleMorphism:
    """
    Raises:
        ContractViolation: f has an invertible scalar part but its cone is not acyclic
    """
    if not verify_witness(f):
        raise ContractViolation(f"witness {f.source.name} -> {f.target.name} is not a quasi-isomorphism")
    return f
