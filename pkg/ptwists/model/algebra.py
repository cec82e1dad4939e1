"""
Finite-dimensional dg-algebras given by structure constants

A DgAlgebra is a finite graded algebra over QQ or GF(p) described by its
basis, a sparse multiplication table and a differential. Orthogonal
degree-0 idempotents are basis elements; every other basis element must lie
in a single piece e_i A e_j, which the constructor infers from the table.

Elements are sparse dicts {basis index: scalar}.

Classes:
    DgAlgebra: The algebra, with element arithmetic
    AxiomVerdict / AxiomReport: Result of check_dg_axioms

Functions:
    build_pnk_algebra: k[t]/t^{n+1} with deg t = k
    build_two_object_algebra: End of P_1 + P_2 with Hom in degree nk/2
    build_orthogonal_algebra: Two orthogonal copies of k[t]/t^{n+1}
    check_dg_axioms, is_central, check_cy_pairing
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Optional, Tuple

from ptwists.config.parameters import params
from ptwists.model.errors import (
    ConfigurationError,
    PreconditionError,
    StructuralError,
)
from ptwists.model.linalg import determinant, field_name, sparse_matrix

logger = logging.getLogger(__name__)

Element = Dict[int, object]


def _accumulate(acc, index, value):
    total = acc.get(index)
    total = value if total is None else total + value
    if total:
        acc[index] = total
    else:
        acc.pop(index, None)


class DgAlgebra:
    """
    Finite dg-algebra with structure constants.

    Attributes:
        K: sympy domain of scalars
        labels (list): Basis labels in construction order
        degrees (list): Degree of each basis element
        mult (dict): (i, j) -> element, the product of basis elements i and j
        diff (dict): i -> element, the differential of basis element i
        idempotents (list): Basis indices of e_1..e_r
        marked (dict): Name -> element (t1, t2, ..., h)
        params (dict): Provenance such as {'n': 2, 'k': 2, 'm': 1}
        name (str): Human readable name
        left, right (list): Idempotent positions with e_left b e_right = b
    """

    def __init__(self, K, labels, degrees, mult, diff=None, idempotents=(0,),
                 marked=None, params=None, name="algebra"):
        if len(labels) != len(degrees):
            raise StructuralError("labels and degrees differ in length")
        if len(set(labels)) != len(labels):
            raise StructuralError("basis labels must be unique")
        self.K = K
        self.labels = list(labels)
        self.degrees = [int(d) for d in degrees]
        self.mult = {key: {k: v for k, v in val.items() if v} for key, val in mult.items()}
        self.mult = {key: val for key, val in self.mult.items() if val}
        self.diff = {i: {k: v for k, v in val.items() if v} for i, val in (diff or {}).items()}
        self.diff = {i: val for i, val in self.diff.items() if val}
        self.idempotents = list(idempotents)
        self.marked = dict(marked or {})
        self.params = dict(params or {})
        self.name = name
        self._index = {label: i for i, label in enumerate(self.labels)}
        for i in self.idempotents:
            if not 0 <= i < self.dim or self.degrees[i] != 0:
                raise StructuralError(f"idempotent {i} is not a degree-0 basis element")
        self.left, self.right = self._infer_sides()
        self._pieces = {}
        for b in range(self.dim):
            key = (self.left[b], self.right[b])
            self._pieces.setdefault(key, []).append(b)

    # ------------------------------------------------------------------
    # Basic structure
    # ------------------------------------------------------------------

    @property
    def dim(self):
        return len(self.labels)

    @property
    def field_name(self):
        return field_name(self.K)

    @property
    def num_idempotents(self):
        return len(self.idempotents)

    def index(self, label):
        try:
            return self._index[label]
        except KeyError:
            raise StructuralError(f"no basis element labelled '{label}'") from None

    def basis_element(self, label_or_index, coeff=None):
        i = label_or_index if isinstance(label_or_index, int) else self.index(label_or_index)
        return {i: self.K.one if coeff is None else coeff}

    def idempotent(self, position):
        return {self.idempotents[position]: self.K.one}

    @property
    def unit(self):
        return {e: self.K.one for e in self.idempotents}

    def marked_element(self, name):
        """Marked element by name; missing names are a configuration error."""
        if name not in self.marked:
            raise ConfigurationError(f"algebra '{self.name}' has no marked element '{name}'")
        return dict(self.marked[name])

    def t_element(self, position):
        """The marked t_i living in e_i A e_i (positions are 0-based)."""
        return self.marked_element(f"t{position + 1}")

    def piece(self, i, j):
        """Basis indices of e_i A e_j in construction order."""
        return self._pieces.get((i, j), [])

    def degree_dims(self):
        dims = {}
        for d in self.degrees:
            dims[d] = dims.get(d, 0) + 1
        return dict(sorted(dims.items()))

    def _infer_sides(self):
        left, right = [], []
        for b in range(self.dim):
            lefts = [p for p, e in enumerate(self.idempotents)
                     if self.basis_product(e, b).get(b)]
            rights = [p for p, e in enumerate(self.idempotents)
                      if self.basis_product(b, e).get(b)]
            if len(lefts) != 1 or len(rights) != 1:
                raise StructuralError(
                    f"basis element '{self.labels[b]}' does not lie in a single e_i A e_j"
                )
            left.append(lefts[0])
            right.append(rights[0])
        return left, right

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def basis_product(self, i, j) -> Element:
        return self.mult.get((i, j), {})

    def multiply(self, x: Element, y: Element) -> Element:
        acc = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.mult.get((i, j), {}).items():
                    _accumulate(acc, k, a * b * c)
        return acc

    def differential(self, x: Element) -> Element:
        acc = {}
        for i, a in x.items():
            for k, c in self.diff.get(i, {}).items():
                _accumulate(acc, k, a * c)
        return acc

    def add(self, *elements: Element) -> Element:
        acc = {}
        for x in elements:
            for i, a in x.items():
                _accumulate(acc, i, a)
        return acc

    def scale(self, c, x: Element) -> Element:
        if not c:
            return {}
        return {i: c * a for i, a in x.items()}

    def negate(self, x: Element) -> Element:
        return {i: -a for i, a in x.items()}

    def degree_of(self, x: Element) -> Optional[int]:
        """
        Degree of a homogeneous element (None for zero).

        Raises:
            StructuralError: x is not homogeneous
        """
        degs = {self.degrees[i] for i, a in x.items() if a}
        if not degs:
            return None
        if len(degs) > 1:
            raise StructuralError(f"element spans degrees {sorted(degs)}")
        return degs.pop()

    def is_differential_zero(self):
        return not self.diff

    def unit_coefficient(self, x: Element, position):
        """Coefficient of the idempotent e_position in x."""
        return x.get(self.idempotents[position], self.K.zero)

    def format_element(self, x: Element):
        if not x:
            return "0"
        parts = []
        for i in sorted(x):
            a = x[i]
            coeff = "" if a == self.K.one else f"{self.K.to_sympy(a)}*"
            parts.append(f"{coeff}{self.labels[i]}")
        return " + ".join(parts)

    # ------------------------------------------------------------------
    # Variants
    # ------------------------------------------------------------------

    def _copy(self, mult=None, diff=None, marked=None, name=None):
        return DgAlgebra(
            self.K, self.labels, self.degrees,
            self.mult if mult is None else mult,
            self.diff if diff is None else diff,
            self.idempotents,
            self.marked if marked is None else marked,
            self.params, name or self.name,
        )

    def with_product(self, left_label, right_label, value: Element):
        """Copy with one structure constant redefined (value {} makes it zero)."""
        mult = {key: dict(val) for key, val in self.mult.items()}
        mult[(self.index(left_label), self.index(right_label))] = dict(value)
        return self._copy(mult=mult, name=f"{self.name}*")

    def with_differential(self, label, value: Element):
        """Copy with d(label) redefined."""
        diff = {key: dict(val) for key, val in self.diff.items()}
        diff[self.index(label)] = dict(value)
        return self._copy(diff=diff, name=f"{self.name}*")

    def with_marked(self, name, value: Element):
        marked = dict(self.marked)
        marked[name] = dict(value)
        return self._copy(marked=marked)

    def __repr__(self):
        return f"DgAlgebra({self.name!r}, dim={self.dim}, field={self.field_name})"


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------

def build_pnk_algebra(n, k, K=None):
    """
    The truncated polynomial algebra k[t]/t^{n+1} with deg t = k.

    Args:
        n (int): Truncation, n >= 1
        k (int): Degree of t, k >= 1
        K: sympy domain (defaults to the session field)

    Returns:
        DgAlgebra: Basis 1, t, ..., t^n with one idempotent, t1 = h = t
    """
    if n < 1 or k < 1:
        raise ConfigurationError(f"pnk algebra needs n >= 1 and k >= 1, got ({n}, {k})")
    K = K or params.scalar_field()
    labels = ["1"] + ["t" if p == 1 else f"t^{p}" for p in range(1, n + 1)]
    degrees = [p * k for p in range(n + 1)]
    mult = {}
    for p, q in product(range(n + 1), repeat=2):
        if p + q <= n:
            mult[(p, q)] = {p + q: K.one}
    marked = {"t1": {1: K.one}, "h": {1: K.one}}
    return DgAlgebra(K, labels, degrees, mult, {}, [0], marked,
                     {"n": n, "k": k}, name=f"pnk({n},{k})")


def _two_block_algebra(n, k, m, K, name):
    # e1, t1..t1^n, e2, t2..t2^n, a1..am (e2 A e1), b1..bm (e1 A e2)
    size = n + 1
    labels, degrees = [], []
    for block in (1, 2):
        labels.append(f"e{block}")
        labels.extend(f"t{block}" if p == 1 else f"t{block}^{p}" for p in range(1, n + 1))
        degrees.extend(p * k for p in range(n + 1))
    mid = n * k // 2
    labels.extend(f"a{i}" for i in range(1, m + 1))
    labels.extend(f"b{i}" for i in range(1, m + 1))
    degrees.extend([mid] * (2 * m))
    a0 = 2 * size
    b0 = a0 + m
    e1, e2 = 0, size

    mult = {}
    for offset in (0, size):
        for p, q in product(range(n + 1), repeat=2):
            if p + q <= n:
                mult[(offset + p, offset + q)] = {offset + p + q: K.one}
    for i in range(m):
        a, b = a0 + i, b0 + i
        mult[(e2, a)] = {a: K.one}
        mult[(a, e1)] = {a: K.one}
        mult[(e1, b)] = {b: K.one}
        mult[(b, e2)] = {b: K.one}
        mult[(b, a)] = {n: K.one}
        mult[(a, b)] = {size + n: K.one}
    marked = {
        "t1": {1: K.one},
        "t2": {size + 1: K.one},
        "h": {1: K.one, size + 1: K.one},
    }
    return DgAlgebra(K, labels, degrees, mult, {}, [e1, e2], marked,
                     {"n": n, "k": k, "m": m}, name=name)


def build_two_object_algebra(n, k, m, K=None):
    """
    Endomorphism algebra of P_1 + P_2 with Hom*(P_i, P_j) of dimension m in degree nk/2.

    Products: t_i^{n+1} = 0, b_j a_i = delta_ij t_1^n, a_i b_j = delta_ij t_2^n,
    and t * a = a * t = 0 (likewise for b). h = t_1 + t_2 is central.

    Args:
        n (int): Truncation of each k[t_i]/t_i^{n+1}
        k (int): Degree of t_i, must be even
        m (int): Number of dual pairs (a_i, b_i), m = 0 is the orthogonal case

    Raises:
        ConfigurationError: k odd or negative sizes
    """
    if k % 2:
        raise ConfigurationError(f"two-object algebra needs k even, got k = {k}")
    if n < 1 or k < 1 or m < 0:
        raise ConfigurationError(f"invalid two-object parameters ({n}, {k}, {m})")
    K = K or params.scalar_field()
    return _two_block_algebra(n, k, m, K, f"two-object({n},{k},{m})")


def build_orthogonal_algebra(n, k, K=None):
    """
    Two orthogonal copies of k[t]/t^{n+1}, with no parity restriction on k.

    Used for the abelian regime at odd k, in particular the (1, 1) case.
    """
    if n < 1 or k < 1:
        raise ConfigurationError(f"invalid orthogonal parameters ({n}, {k})")
    K = K or params.scalar_field()
    return _two_block_algebra(n, k, 0, K, f"orthogonal({n},{k})")


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------

@dataclass
class AxiomVerdict:
    """Outcome of one axiom check; witness is the first violating tuple."""

    passed: bool
    witness: Optional[Tuple] = None


@dataclass
class AxiomReport:
    """
    Per-axiom verdicts of check_dg_axioms.

    Attributes:
        algebra (str): Name of the checked algebra
        verdicts (dict): Axiom name -> AxiomVerdict
    """

    algebra: str
    verdicts: Dict[str, AxiomVerdict] = field(default_factory=dict)

    @property
    def passed(self):
        return all(v.passed for v in self.verdicts.values())

    def failures(self):
        return {name: v.witness for name, v in self.verdicts.items() if not v.passed}

    def as_dict(self):
        return {
            name: {"passed": v.passed, "witness": None if v.witness is None else list(v.witness)}
            for name, v in self.verdicts.items()
        }


def check_dg_axioms(A: DgAlgebra) -> AxiomReport:
    """
    Check every dg-algebra axiom on all basis pairs and triples.

    Failures are report content, never exceptions. Witnesses are tuples of
    basis labels.
    """
    report = AxiomReport(A.name)
    L = A.labels
    basis = [A.basis_element(i) for i in range(A.dim)]

    def first(predicate, tuples):
        for tup in tuples:
            if not predicate(*tup):
                return AxiomVerdict(False, tuple(L[i] for i in tup))
        return AxiomVerdict(True)

    pairs = list(product(range(A.dim), repeat=2))

    report.verdicts["degree_additivity"] = first(
        lambda i, j: all(A.degrees[k] == A.degrees[i] + A.degrees[j]
                         for k in A.basis_product(i, j)),
        pairs,
    )
    report.verdicts["associativity"] = first(
        lambda i, j, l: A.multiply(A.basis_product(i, j), basis[l])
        == A.multiply(basis[i], A.basis_product(j, l)),
        product(range(A.dim), repeat=3),
    )
    unit = A.unit
    report.verdicts["unit"] = first(
        lambda i: A.multiply(unit, basis[i]) == basis[i] == A.multiply(basis[i], unit),
        [(i,) for i in range(A.dim)],
    )
    report.verdicts["idempotents"] = first(
        lambda i, j: A.basis_product(i, j) == (basis[i] if i == j else {}),
        list(product(A.idempotents, repeat=2)),
    )
    report.verdicts["differential_degree"] = first(
        lambda i: all(A.degrees[k] == A.degrees[i] + 1 for k in A.diff.get(i, {})),
        [(i,) for i in range(A.dim)],
    )
    report.verdicts["d_squared"] = first(
        lambda i: not A.differential(A.differential(basis[i])),
        [(i,) for i in range(A.dim)],
    )

    def leibniz(i, j):
        lhs = A.differential(A.basis_product(i, j))
        sign = A.K(-1) if A.degrees[i] % 2 else A.K.one
        rhs = A.add(
            A.multiply(A.differential(basis[i]), basis[j]),
            A.scale(sign, A.multiply(basis[i], A.differential(basis[j]))),
        )
        return lhs == rhs

    report.verdicts["leibniz"] = first(leibniz, pairs)
    return report


def is_central(A: DgAlgebra, x: Element) -> bool:
    """
    Graded centrality: x b = (-1)^{|x||b|} b x for every basis element b.

    Raises:
        StructuralError: x is not homogeneous
    """
    deg = A.degree_of(x)
    if deg is None:
        return True
    for b in range(A.dim):
        e = A.basis_element(b)
        sign = A.K(-1) if (deg * A.degrees[b]) % 2 else A.K.one
        if A.multiply(x, e) != A.scale(sign, A.multiply(e, x)):
            return False
    return True


def check_cy_pairing(A: DgAlgebra, d) -> bool:
    """
    Calabi-Yau pairing check on the graded pieces of the algebra.

    For every pair (i, j) the composition e_i A e_j x e_j A e_i -> e_i A e_i,
    projected onto the degree-d line of e_i A e_i, must be perfect between
    degrees p and d - p.

    Raises:
        PreconditionError: A has a nonzero differential
    """
    if not A.is_differential_zero():
        raise PreconditionError("Calabi-Yau pairing check needs a formal algebra (zero differential)")
    r = A.num_idempotents
    for i, j in product(range(r), repeat=2):
        top = [b for b in A.piece(i, i) if A.degrees[b] == d]
        if len(top) != 1:
            logger.debug("CY pairing: e%d A e%d has %d basis elements in degree %d", i + 1, i + 1, len(top), d)
            return False
        top = top[0]
        forward = A.piece(i, j)
        backward = A.piece(j, i)
        degs = {A.degrees[b] for b in forward} | {d - A.degrees[b] for b in backward}
        for p in sorted(degs):
            xs = [b for b in forward if A.degrees[b] == p]
            ys = [b for b in backward if A.degrees[b] == d - p]
            if len(xs) != len(ys):
                return False
            entries = {}
            for row, x in enumerate(xs):
                for col, y in enumerate(ys):
                    coeff = A.basis_product(x, y).get(top)
                    if coeff:
                        entries[(row, col)] = coeff
            if not determinant(sparse_matrix(entries, (len(xs), len(ys)), A.K)):
                return False
    return True
