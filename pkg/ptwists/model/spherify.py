"""
Spherification B = A[eps]/eps^2 and the functors between D(A) and D(B)

Given a central element h of even degree k in A, the algebra B has basis
A + eps A with deg eps = k - 1,

    (a1 + eps a2)(a1' + eps a2') = a1 a1' + eps((-1)^{|a1|} a1 a2' + a2 a1')
    d(a1 + eps a2)               = d(a1) + h a2 - eps d(a2)

and as a right A-module B is the cone of h: A[-k] -> A. F = B (x)_A (-)
pushes twisted complexes forward entrywise; R is restriction, realized by
splitting each B-generator into g and g*eps; the left adjoint is R[k-1].

Classes:
    SpherificationData: A, B and the bookkeeping between them
    CotwistResult: Output of cotwist_object
    HomGrowth: Output of hom_growth

Functions:
    build_spherification_algebra, apply_F, apply_R, apply_L, unit_map,
    cotwist_object, check_spherical, check_weak_spherification,
    check_adjunction, check_left_adjoint, hom_growth
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

from ptwists.model.algebra import DgAlgebra, Element, check_dg_axioms, is_central
from ptwists.model.errors import AxiomError, ConfigurationError, PreconditionError, StructuralError
from ptwists.model.linalg import GradedDimVector
from ptwists.model.modules import (
    Generator,
    HomComplex,
    ModuleMorphism,
    QuasiIsoResult,
    SemiFreeModule,
    cone,
    free_module,
    hom_dims,
    is_quasi_isomorphic,
    minimize,
    shift,
)
from ptwists.model.twists import pairing_is_perfect

logger = logging.getLogger(__name__)


def _sign(K, exponent):
    return K(-1) if exponent % 2 else K.one


@dataclass
class SpherificationData:
    """
    The pair A -> B.

    Attributes:
        base (DgAlgebra): A, with marked central h
        extended (DgAlgebra): B = A[eps]/eps^2
        k (int): Degree of h (even)
        h (dict): The central element, as an element of A
        report: check_dg_axioms(B)
    """

    base: DgAlgebra
    extended: DgAlgebra
    k: int
    h: Element
    report: object = None

    @property
    def offset(self):
        return self.base.dim

    def embed(self, x: Element) -> Element:
        """A -> B on elements (indices are shared)."""
        return dict(x)

    def epsilon(self, x: Element) -> Element:
        """x -> eps x."""
        return {self.offset + i: c for i, c in x.items()}

    def split(self, y: Element):
        """y = u + eps v with u, v in A."""
        u, v = {}, {}
        for i, c in y.items():
            if i < self.offset:
                u[i] = c
            else:
                v[i - self.offset] = c
        return u, v

    @property
    def sphere_dimension(self):
        """nk + k - 1, the Calabi-Yau dimension of F P."""
        n = self.base.params.get("n")
        if n is None:
            raise ConfigurationError("base algebra records no n; pass d explicitly")
        return n * self.k + self.k - 1


def build_spherification_algebra(A: DgAlgebra, h_name="h") -> SpherificationData:
    """
    Build B = A[eps]/eps^2 with d(eps) = h.

    Raises:
        ConfigurationError: A has no marked h
        PreconditionError: h inhomogeneous, of odd degree, or not central
        AxiomError: B fails a dg-axiom
    """
    h = A.marked_element(h_name)
    try:
        k = A.degree_of(h)
    except StructuralError as exc:
        raise PreconditionError(f"marked element '{h_name}' is not homogeneous") from exc
    if k is None:
        raise ConfigurationError(f"marked element '{h_name}' is zero")
    if k % 2:
        raise PreconditionError(f"spherification needs h of even degree, got k = {k}")
    if not is_central(A, h):
        raise PreconditionError(
            f"'{h_name}' is not central in {A.name}; the spherification needs a central lift of the t_i"
        )
    if A.params.get("n") == 1:
        logger.warning("n = 1 on %s: weak spherification of spherelike objects is excluded", A.name)

    K = A.K
    N = A.dim
    labels = list(A.labels) + [f"eps.{label}" for label in A.labels]
    degrees = list(A.degrees) + [d + k - 1 for d in A.degrees]
    mult = {}
    for (i, j), prod in A.mult.items():
        mult[(i, j)] = dict(prod)
        sign = _sign(K, A.degrees[i])
        mult[(i, N + j)] = {N + r: sign * c for r, c in prod.items()}
        mult[(N + i, j)] = {N + r: c for r, c in prod.items()}
    diff = {}
    for b in range(N):
        if b in A.diff:
            diff[b] = dict(A.diff[b])
        value = A.multiply(h, {b: K.one})
        for r, c in A.diff.get(b, {}).items():
            value[N + r] = value.get(N + r, K.zero) - c
        value = {r: c for r, c in value.items() if c}
        if value:
            diff[N + b] = value
    marked = dict(A.marked)
    marked["eps"] = {N + e: K.one for e in A.idempotents}
    params = dict(A.params)
    params["spherified"] = True
    B = DgAlgebra(K, labels, degrees, mult, diff, A.idempotents, marked, params,
                  name=f"B[{A.name}]")
    report = check_dg_axioms(B)
    if not report.passed:
        axiom, witness = next(iter(report.failures().items()))
        raise AxiomError(axiom, witness)
    return SpherificationData(A, B, k, h, report)


# ---------------------------------------------------------------------------
# Functors
# ---------------------------------------------------------------------------

def _check_over(M: SemiFreeModule, algebra: DgAlgebra, side):
    if M.algebra is not algebra:
        raise StructuralError(f"module {M.name} is not over the {side} algebra {algebra.name}")


def apply_F(S: SpherificationData, M: SemiFreeModule) -> SemiFreeModule:
    """B (x)_A M: same generators, entries pushed through A -> B."""
    _check_over(M, S.base, "base")
    delta = {key: S.embed(entry) for key, entry in M.delta.items()}
    return SemiFreeModule(S.extended, M.generators, delta, f"F{M.name}", validate=False)


def apply_R(S: SpherificationData, N: SemiFreeModule) -> SemiFreeModule:
    """
    Restriction of a B-module to A.

    Each generator g_j (degree s_j) yields g_j and g_j eps (degree s_j + k - 1).
    With delta_ij = u + eps v the entries are
        g_j -> g_i: u,   g_j -> g_i eps: v,   g_j eps -> g_i eps: (-1)^{|u|} u,
        g_j eps -> g_j: (-1)^{s_j} e h e.
    """
    _check_over(N, S.extended, "extended")
    A = S.base
    K = A.K
    n = N.rank
    gens = list(N.generators)
    gens += [Generator(f"{g.label}.eps", g.idempotent, g.degree + S.k - 1) for g in N.generators]
    delta = {}
    for (i, j), entry in N.delta.items():
        u, v = S.split(entry)
        if u:
            delta[(i, j)] = u
            parity = N.generators[j].degree + 1 - N.generators[i].degree
            delta[(n + i, n + j)] = A.scale(_sign(K, parity), u)
        if v:
            delta[(n + i, j)] = v
    for j, g in enumerate(N.generators):
        e = A.idempotent(g.idempotent)
        twist = A.multiply(A.multiply(e, S.h), e)
        if twist:
            delta[(j, n + j)] = A.scale(_sign(K, g.degree), twist)
    return SemiFreeModule(A, gens, delta, f"R{N.name}", validate=False)


def apply_L(S: SpherificationData, N: SemiFreeModule) -> SemiFreeModule:
    """Left adjoint of F, realized as R[k - 1]."""
    return shift(apply_R(S, N), S.k - 1).renamed(f"L{N.name}")


def unit_map(S: SpherificationData, M: SemiFreeModule) -> ModuleMorphism:
    """eta: M -> R F M, the identity onto the undecorated generators."""
    RF = apply_R(S, apply_F(S, M))
    entries = {(j, j): M.algebra.idempotent(g.idempotent) for j, g in enumerate(M.generators)}
    return ModuleMorphism(M, RF, 0, entries, validate=False)


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------

@dataclass
class CotwistResult:
    """
    Attributes:
        module (SemiFreeModule): minimize(cone(M -> R F M)[-1])
        verdict (QuasiIsoResult): Comparison against M[-k]
        alpha_nonzero (bool): h_M: M -> M[k] is nonzero in cohomology
    """

    module: SemiFreeModule
    verdict: QuasiIsoResult
    alpha_nonzero: bool


def _alpha_nonzero(S: SpherificationData, M: SemiFreeModule) -> bool:
    if M.is_zero:
        return False
    alpha = ModuleMorphism.diagonal(M, S.h, S.k)
    if not alpha.closed:
        return False
    return not HomComplex(M, M).is_coboundary(alpha)


def cotwist_object(S: SpherificationData, M: SemiFreeModule) -> CotwistResult:
    """Dual cotwist C M = cone(eta)[-1], compared with M[-k]."""
    _check_over(M, S.base, "base")
    C = minimize(shift(cone(unit_map(S, M)), -1), name=f"C{M.name}")
    verdict = is_quasi_isomorphic(C, shift(M, -S.k))
    return CotwistResult(C, verdict, _alpha_nonzero(S, M))


def check_spherical(S: SpherificationData, N: SemiFreeModule, d=None) -> bool:
    """
    N is d-spherical: End* N = k + k[-d] with a perfect composition pairing.

    Args:
        d (int): Defaults to nk + k - 1 of the base algebra
    """
    _check_over(N, S.extended, "extended")
    d = S.sphere_dimension if d is None else d
    expected = GradedDimVector.from_mapping({0: 1, d: 1} if d else {0: 2})
    if hom_dims(N, N) != expected:
        return False
    return pairing_is_perfect(N, d)


@dataclass
class WeakSpherification:
    """Per-object verdict of check_weak_spherification."""

    label: str
    cotwist_is_shift: bool
    alpha_nonzero: bool
    status: str

    @property
    def passed(self):
        return self.cotwist_is_shift and self.alpha_nonzero


def check_weak_spherification(S: SpherificationData, P: SemiFreeModule) -> WeakSpherification:
    """C P = P[-k] (witnessed) and alpha_P != 0."""
    result = cotwist_object(S, P)
    return WeakSpherification(P.name, bool(result.verdict), result.alpha_nonzero,
                              result.verdict.status)


def check_adjunction(S: SpherificationData, M: SemiFreeModule, N: SemiFreeModule) -> bool:
    """H* Hom_B(F M, N) = H* Hom_A(M, R N) as graded dimensions."""
    return hom_dims(apply_F(S, M), N) == hom_dims(M, apply_R(S, N))


def check_left_adjoint(S: SpherificationData, N: SemiFreeModule, M: SemiFreeModule) -> bool:
    """H* Hom_A(L N, M) = H* Hom_B(N, F M) with L = R[k - 1]."""
    return hom_dims(apply_L(S, N), M) == hom_dims(N, apply_F(S, M))


@dataclass
class HomGrowth:
    """
    Attributes:
        base (GradedDimVector): hom*(P_1, P_2)
        spherified (GradedDimVector): hom*(F P_1, F P_2)
        bound_holds (bool): spherified total >= 2 whenever base total >= 1
    """

    base: GradedDimVector
    spherified: GradedDimVector
    bound_holds: bool


def hom_growth(S: SpherificationData, first: Optional[SemiFreeModule] = None,
               second: Optional[SemiFreeModule] = None) -> HomGrowth:
    """Compare hom*(P_1, P_2) with hom*(F P_1, F P_2)."""
    A = S.base
    first = first or free_module(A, 0)
    second = second or free_module(A, min(1, A.num_idempotents - 1))
    base = hom_dims(first, second)
    spherified = hom_dims(apply_F(S, first), apply_F(S, second))
    bound = base.total == 0 or spherified.total >= 2
    return HomGrowth(base, spherified, bound)
