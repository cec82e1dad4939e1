"""
Spherical twists, P-twists and their inverses on semi-free modules

All constructions work with the full Hom-complex rather than cohomology
representatives, so the evaluation map and the double-cone map H compose to
zero on the nose. Every result is minimized.

For an object P and a module X:
    W = Hom(P, X) (x) P          generators (phi, g), degree |phi| + s_g
    ev: W -> X                   entry (i, (phi, g)) = phi_ig
    U = Hom(X, P)^dual (x) P     generators (psi*, g), degree s_g - |psi|
    coev: X -> U                 entry ((psi*, l), j) = b  for psi = (l, j, b)

    T_S(X)  = min cone(ev)
    T'_S(X) = min cone(coev)[-1]
    P_P(X)  = min cone(cone(H) -> X),         H = t* (x) 1 - 1 (x) t
    P'_P(X) = min cone(X -> cone(H^dual)[-1])[-1]

Classes:
    TwistDescriptor: One letter of a twist word made concrete
    HomProfile: Graded Hom dimensions from a fixed test set

Functions:
    ev_map, coev_map, spherical_twist, spherical_untwist, p_twist,
    p_untwist, hom_profile, check_p_object, pairing_is_perfect
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from ptwists.model.errors import ContractViolation, PreconditionError, StructuralError
from ptwists.model.linalg import (
    GradedDimVector,
    determinant,
    sparse_matrix,
    vectors_span_rank,
)
from ptwists.model.modules import (
    Generator,
    HomComplex,
    ModuleMorphism,
    SemiFreeModule,
    cone,
    minimize,
    same_algebra,
    shift,
)

logger = logging.getLogger(__name__)

_warned_degenerate = set()


def _sign(K, exponent):
    return K(-1) if exponent % 2 else K.one


def _guard_degenerate(A):
    """Warn once per algebra when (n, k) = (1, 1): twists may coincide there."""
    if A.params.get("n") == 1 and A.params.get("k") == 1 and A.name not in _warned_degenerate:
        _warned_degenerate.add(A.name)
        logger.warning("(n, k) = (1, 1) on %s: P-twist results are not conclusive", A.name)


_p_object_verdicts = {}


def _require_p_object(P: SemiFreeModule, t: ModuleMorphism):
    """
    Refuse to twist along anything but a P^n[k]-object.

    n is read off the top degree of End*(P); the verdict is cached per (P, t).

    Raises:
        PreconditionError: P is not a P^n[k]-object for t
    """
    key = (P, tuple(sorted((rc, tuple(sorted(entry.items()))) for rc, entry in t.entries.items())))
    verdict = _p_object_verdicts.get(key)
    if verdict is None:
        k = t.degree
        top = max((d for d, _ in HomComplex(P, P).cohomology()), default=None)
        verdict = (
            k >= 1 and top is not None and top % k == 0
            and check_p_object(P, t, top // k, k)
        )
        _p_object_verdicts[key] = verdict
    if not verdict:
        raise PreconditionError(f"{P.name} is not a P^n[k]-object for a degree-{t.degree} t")


def _flat_basis(hc: HomComplex):
    """Hom basis in (degree, position) order, as (degree, key) pairs."""
    return [(deg, key) for deg, keys in hc.basis.items() for key in keys]


def _as_endomorphism(P: SemiFreeModule, t) -> ModuleMorphism:
    if isinstance(t, ModuleMorphism):
        if t.source != P or t.target != P:
            raise StructuralError("t must be an endomorphism of P")
        return t
    deg = P.algebra.degree_of(t)
    if deg is None:
        raise StructuralError("t must be a nonzero homogeneous element")
    return ModuleMorphism.diagonal(P, t, deg)


# ---------------------------------------------------------------------------
# Evaluation and coevaluation
# ---------------------------------------------------------------------------

class _HomTensor:
    """
    Hom(P, X) (x) P as a semi-free module, with index bookkeeping.

    Attributes:
        hc (HomComplex): Hom(P, X)
        phis (list): (degree, key) per Hom basis vector
        module (SemiFreeModule): W
    """

    def __init__(self, P: SemiFreeModule, X: SemiFreeModule):
        A = same_algebra(P.algebra, X.algebra)
        K = A.K
        self.P = P
        self.hc = HomComplex(P, X)
        self.phis = _flat_basis(self.hc)
        self.global_index = {key: n for n, (_, key) in enumerate(self.phis)}
        width = P.rank
        gens, delta = [], {}
        for n, (deg, key) in enumerate(self.phis):
            for g, gen in enumerate(P.generators):
                gens.append(Generator(f"h{n}.{gen.label}", gen.idempotent, deg + gen.degree))
        by_degree = {deg: keys for deg, keys in self.hc.basis.items()}
        for n, (deg, key) in enumerate(self.phis):
            image = self.hc.differential_of(key)
            targets = by_degree.get(deg + 1, [])
            for idx, coeff in image.items():
                m = self.global_index[targets[idx]]
                for g, gen in enumerate(P.generators):
                    delta[(m * width + g, n * width + g)] = A.scale(coeff, A.idempotent(gen.idempotent))
            sign = _sign(K, deg)
            for (h, g), entry in P.delta.items():
                delta[(n * width + h, n * width + g)] = A.scale(sign, entry)
        self.module = SemiFreeModule(A, gens, delta, f"Hom({P.name},{X.name})*{P.name}",
                                     validate=False)

    def index(self, n, g):
        return n * self.P.rank + g


def ev_map(P: SemiFreeModule, X: SemiFreeModule) -> ModuleMorphism:
    """
    Evaluation Hom(P, X) (x) P -> X; closed of degree 0 by construction.

    Raises:
        StructuralError: P and X live over different algebras
    """
    return _ev_with_tensor(P, X)[1]


def _ev_with_tensor(P, X):
    tensor = _HomTensor(P, X)
    entries = {}
    for n, (deg, (l, j, b)) in enumerate(tensor.phis):
        entries[(l, tensor.index(n, j))] = {b: P.algebra.K.one}
    return tensor, ModuleMorphism(tensor.module, X, 0, entries, validate=False)


class _DualTensor:
    """Hom(X, S)^dual (x) S as a semi-free module."""

    def __init__(self, X: SemiFreeModule, S: SemiFreeModule):
        A = same_algebra(X.algebra, S.algebra)
        K = A.K
        self.S = S
        self.hc = HomComplex(X, S)
        self.psis = _flat_basis(self.hc)
        self.global_index = {key: n for n, (_, key) in enumerate(self.psis)}
        width = S.rank
        gens, delta = [], {}
        for n, (deg, key) in enumerate(self.psis):
            for g, gen in enumerate(S.generators):
                gens.append(Generator(f"d{n}.{gen.label}", gen.idempotent, gen.degree - deg))
        targets_by_degree = self.hc.basis
        for n, (deg, key) in enumerate(self.psis):
            # D(psi) = sum_phi D_{phi psi} phi  gives  D(phi*) += (-1)^{|phi|} D_{phi psi} psi*
            image = self.hc.differential_of(key)
            targets = targets_by_degree.get(deg + 1, [])
            sign = _sign(K, deg + 1)
            for idx, coeff in image.items():
                m = self.global_index[targets[idx]]
                for g, gen in enumerate(S.generators):
                    delta[(self.index(n, g), self.index(m, g))] = A.scale(
                        sign * coeff, A.idempotent(gen.idempotent))
            own = _sign(K, deg)
            for (h, g), entry in S.delta.items():
                delta[(self.index(n, h), self.index(n, g))] = A.scale(own, entry)
        self.module = SemiFreeModule(A, gens, delta, f"Hom({X.name},{S.name})^*{S.name}",
                                     validate=False)

    def index(self, n, g):
        return n * self.S.rank + g


def _coev_with_tensor(X, S):
    tensor = _DualTensor(X, S)
    entries = {}
    for n, (deg, (l, j, b)) in enumerate(tensor.psis):
        entries[(tensor.index(n, l), j)] = {b: X.algebra.K.one}
    return tensor, ModuleMorphism(X, tensor.module, 0, entries, validate=False)


def coev_map(X: SemiFreeModule, S: SemiFreeModule) -> ModuleMorphism:
    """Coevaluation X -> Hom(X, S)^dual (x) S; closed of degree 0 by construction."""
    return _coev_with_tensor(X, S)[1]


# ---------------------------------------------------------------------------
# Spherical twists
# ---------------------------------------------------------------------------

def spherical_twist(S: SemiFreeModule, X: SemiFreeModule) -> SemiFreeModule:
    """T_S(X) = minimize(cone(ev: Hom(S, X) (x) S -> X))."""
    return minimize(cone(ev_map(S, X)), name=f"T[{S.name}]({X.name})")


def spherical_untwist(S: SemiFreeModule, X: SemiFreeModule) -> SemiFreeModule:
    """T'_S(X) = minimize(cone(coev: X -> Hom(X, S)^dual (x) S)[-1])."""
    return minimize(shift(cone(coev_map(X, S)), -1), name=f"T'[{S.name}]({X.name})")


# ---------------------------------------------------------------------------
# P-twists
# ---------------------------------------------------------------------------

def _expand_product(hc, entries, degree):
    return hc.expand({key: val for key, val in entries.items() if val}, degree)


def p_twist(P: SemiFreeModule, t, X: SemiFreeModule) -> SemiFreeModule:
    """
    P-twist of X along P with respect to the degree-k endomorphism t.

    Builds H: W[-k] -> W with H(phi (x) g) = (-1)^{k|phi|} (phi t (x) g - phi (x) t g),
    checks ev H = 0, and returns minimize(cone((ev, 0): cone(H) -> X)).

    Args:
        P (SemiFreeModule): The P-object
        t: Marked element of e_i A e_i or a closed ModuleMorphism P -> P
        X (SemiFreeModule): Module to twist

    Raises:
        ContractViolation: ev H != 0 or H not closed
    """
    A = same_algebra(P.algebra, X.algebra)
    _guard_degenerate(A)
    K = A.K
    t = _as_endomorphism(P, t)
    _require_p_object(P, t)
    k = t.degree
    tensor, ev = _ev_with_tensor(P, X)
    W = tensor.module
    hc = tensor.hc
    t_by_row = {}
    for (j, jj), entry in t.entries.items():
        t_by_row.setdefault(j, []).append((jj, entry))

    H = {}

    def add(key, value):
        if value:
            H[key] = A.add(H.get(key, {}), value)

    for n, (deg, (l, j, b)) in enumerate(tensor.phis):
        sign = _sign(K, k * deg)
        composite = {}
        for jj, entry in t_by_row.get(j, ()):
            composite[(l, jj)] = A.add(composite.get((l, jj), {}), A.multiply({b: K.one}, entry))
        image = _expand_product(hc, composite, deg + k)
        targets = hc.basis.get(deg + k, [])
        for idx, coeff in image.items():
            m = tensor.global_index[targets[idx]]
            for g, gen in enumerate(P.generators):
                add((tensor.index(m, g), tensor.index(n, g)),
                    A.scale(sign * coeff, A.idempotent(gen.idempotent)))
        for (h, g), entry in t.entries.items():
            add((tensor.index(n, h), tensor.index(n, g)), A.scale(-sign, entry))

    H = ModuleMorphism(shift(W, -k), W, 0, H, validate=False)
    residual = ev.compose(H).entries
    if residual:
        raise ContractViolation("ev after H is nonzero", residual=residual)
    C = cone(H, name=f"cone(H[{P.name}])")
    e = ModuleMorphism(C, X, 0, ev.entries, validate=False)
    return minimize(cone(e), name=f"P[{P.name}]({X.name})")


def p_untwist(P: SemiFreeModule, t, X: SemiFreeModule) -> SemiFreeModule:
    """
    Inverse P-twist by the dual double cone.

    With U = Hom(X, P)^dual (x) P and H^dual: U -> U[k] given by the dual of
    post-composition with t minus 1 (x) t, the coevaluation lifts to
    K = cone(H^dual)[-1]; the result is minimize(cone(X -> K)[-1]).

    Raises:
        ContractViolation: H^dual coev != 0 or H^dual not closed
    """
    A = same_algebra(P.algebra, X.algebra)
    _guard_degenerate(A)
    K = A.K
    t = _as_endomorphism(P, t)
    _require_p_object(P, t)
    k = t.degree
    tensor, coev = _coev_with_tensor(X, P)
    U = tensor.module
    hc = tensor.hc
    t_by_col = {}
    for (r, l), entry in t.entries.items():
        t_by_col.setdefault(l, []).append((r, entry))

    Hd = {}

    def add(key, value):
        if value:
            Hd[key] = A.add(Hd.get(key, {}), value)

    for n, (deg, (l, j, b)) in enumerate(tensor.psis):
        # chi = (l, j, b); t chi expands to sum_psi L_{psi chi} psi
        composite = {}
        for r, entry in t_by_col.get(l, ()):
            composite[(r, j)] = A.add(composite.get((r, j), {}), A.multiply(entry, {b: K.one}))
        image = _expand_product(hc, composite, deg + k)
        targets = hc.basis.get(deg + k, [])
        for idx, coeff in image.items():
            m = tensor.global_index[targets[idx]]
            sign = _sign(K, k * (deg + k))
            for g, gen in enumerate(P.generators):
                add((tensor.index(n, g), tensor.index(m, g)),
                    A.scale(sign * coeff, A.idempotent(gen.idempotent)))
    for n, (deg, _) in enumerate(tensor.psis):
        sign = _sign(K, k * (deg + 1))
        for (h, g), entry in t.entries.items():
            add((tensor.index(n, h), tensor.index(n, g)), A.scale(-sign, entry))

    Hd = ModuleMorphism(U, shift(U, k), 0, Hd, validate=False)
    residual = Hd.compose(coev).entries
    if residual:
        raise ContractViolation("H-dual after coev is nonzero", residual=residual)
    Kc = shift(cone(Hd, name=f"cone(H*[{P.name}])"), -1)
    offset = U.rank
    lifted = {(offset + row, j): entry for (row, j), entry in coev.entries.items()}
    lift = ModuleMorphism(X, Kc, 0, lifted, validate=False)
    return minimize(shift(cone(lift), -1), name=f"P'[{P.name}]({X.name})")


# ---------------------------------------------------------------------------
# Descriptors and profiles
# ---------------------------------------------------------------------------

SPHERICAL = "spherical"
P_TWIST = "p-twist"


@dataclass
class TwistDescriptor:
    """
    A twist generator made concrete.

    Attributes:
        kind (str): 'spherical' or 'p-twist'
        obj (SemiFreeModule): The P_i or S_i twisted along
        t_element: Marked t_i for P-twists (None for spherical twists)
        exponent (int): +1 for the twist, -1 for its inverse
        label (str): Letter in twist words, e.g. 'P1' or "T2'"
    """

    kind: str
    obj: SemiFreeModule
    t_element: Optional[dict] = None
    exponent: int = 1
    label: str = ""

    def __post_init__(self):
        if self.kind not in (SPHERICAL, P_TWIST):
            raise StructuralError(f"unknown twist kind '{self.kind}'")
        if self.exponent == 0:
            raise StructuralError("twist exponent must be nonzero")
        if self.kind == P_TWIST and self.t_element is None:
            raise StructuralError("P-twist needs a t element")

    def inverse(self):
        label = self.label[:-1] if self.label.endswith("'") else f"{self.label}'"
        return TwistDescriptor(self.kind, self.obj, self.t_element, -self.exponent, label)

    def apply(self, X: SemiFreeModule) -> SemiFreeModule:
        """Apply the twist |exponent| times."""
        result = X
        for _ in range(abs(self.exponent)):
            if self.kind == SPHERICAL:
                result = (spherical_twist if self.exponent > 0 else spherical_untwist)(self.obj, result)
            else:
                result = (p_twist if self.exponent > 0 else p_untwist)(self.obj, self.t_element, result)
        return result


@dataclass(frozen=True)
class HomProfile:
    """
    Graded dimensions of H* Hom(G, M) for each test object G.

    Attributes:
        entries (tuple): (label, GradedDimVector) pairs in test-set order
    """

    entries: Tuple[Tuple[str, GradedDimVector], ...]

    def __getitem__(self, label):
        for name, dims in self.entries:
            if name == label:
                return dims
        raise KeyError(label)

    @property
    def labels(self):
        return [name for name, _ in self.entries]

    def totals(self):
        return {name: dims.total for name, dims in self.entries}

    def shift(self, j):
        return HomProfile(tuple((name, dims.shift(j)) for name, dims in self.entries))

    def as_dict(self):
        return {name: {str(d): n for d, n in dims.items} for name, dims in self.entries}

    def __str__(self):
        return ", ".join(f"{name}: {dims}" for name, dims in self.entries)


def hom_profile(M: SemiFreeModule, test_set: List[SemiFreeModule]) -> HomProfile:
    """Per test object G, the cohomology dimensions of Hom(G, M)."""
    return HomProfile(tuple((G.name, HomComplex(G, M).cohomology()) for G in test_set))


# ---------------------------------------------------------------------------
# Endomorphism pairings
# ---------------------------------------------------------------------------

def cohomology_representatives(hc: HomComplex, degree) -> List[ModuleMorphism]:
    """Closed maps in `degree` whose classes form a basis of H^degree."""
    K = hc.algebra.K
    dim = hc.dim(degree)
    prev = hc.block(degree - 1)
    boundaries = []
    for col in range(prev.shape[1]):
        vec = {}
        for row, cols in prev.to_sparse().rep.items():
            v = cols.get(col)
            if v:
                vec[row] = v
        if vec:
            boundaries.append(vec)
    base = vectors_span_rank(K, boundaries, dim)
    chosen = []
    for z in hc.closed_maps(degree):
        rank = vectors_span_rank(K, boundaries + chosen + [z], dim)
        if rank > base + len(chosen):
            chosen.append(z)
    return [hc.morphism(degree, z) for z in chosen]


def pairing_is_perfect(M: SemiFreeModule, top) -> bool:
    """
    Composition End^p x End^{top-p} -> End^top is perfect in cohomology.

    Requires H^top End(M) to be one-dimensional.
    """
    hc = HomComplex(M, M)
    dims = hc.cohomology()
    if dims[top] != 1:
        return False
    generator = cohomology_representatives(hc, top)[0]
    for p, size in dims.items:
        if dims[top - p] != size:
            return False
        xs = cohomology_representatives(hc, p)
        ys = cohomology_representatives(hc, top - p)
        entries = {}
        for row, x in enumerate(xs):
            for col, y in enumerate(ys):
                coeff = hc.class_coefficient(x.compose(y), generator)
                if coeff is None:
                    return False
                if coeff:
                    entries[(row, col)] = coeff
        if not determinant(sparse_matrix(entries, (len(xs), len(ys)), M.algebra.K)):
            return False
    return True


def check_p_object(P: SemiFreeModule, t, n, k) -> bool:
    """
    P is a P^n[k]-object: End* = k[t]/t^{n+1} and the pairing into degree nk is perfect.

    The powers t^i must represent nonzero classes for i <= n.
    """
    hc = HomComplex(P, P)
    expected = GradedDimVector.from_mapping({i * k: 1 for i in range(n + 1)})
    if hc.cohomology() != expected:
        return False
    t = _as_endomorphism(P, t)
    power = ModuleMorphism.identity(P)
    for _ in range(n):
        power = t.compose(power)
        if hc.is_coboundary(power):
            return False
    return pairing_is_perfect(P, n * k)
