"""
Seeded random semi-free modules

Over a formal algebra (zero differential) every degree-0 map between modules
with zero delta is closed, so the cone of a random such map is a valid
twisted complex. Contractible pairs cone(c * id) are mixed in so that
minimization has something to cancel.
"""

import numpy as np

from ptwists.model.errors import PreconditionError
from ptwists.model.modules import (
    Generator,
    ModuleMorphism,
    SemiFreeModule,
    cone,
    direct_sum,
)


def _random_free_sum(A, rng, rank, degrees, prefix):
    gens = [
        Generator(f"{prefix}{i}", int(rng.integers(A.num_idempotents)), int(rng.choice(degrees)))
        for i in range(rank)
    ]
    return SemiFreeModule(A, gens, {}, name=prefix)


def _random_map(A, rng, source, target, density):
    K = A.K
    entries = {}
    for l, gl in enumerate(target.generators):
        for j, gj in enumerate(source.generators):
            wanted = gj.degree - gl.degree
            for b in A.piece(gl.idempotent, gj.idempotent):
                if A.degrees[b] == wanted and rng.random() < density:
                    c = int(rng.integers(-5, 6))
                    if c:
                        entries.setdefault((l, j), {})[b] = K(c)
    return ModuleMorphism(source, target, 0, entries)


def random_module(A, rng=None, max_rank=3, degrees=(-2, 0, 2), density=0.6, contractible=True):
    """
    Random twisted complex over a formal algebra.

    Args:
        A (DgAlgebra): Coefficient algebra, zero differential
        rng: numpy Generator (or a seed)
        max_rank (int): Largest rank of each side of the cone
        degrees (tuple): Generator degrees to draw from
        density (float): Probability of each admissible basis entry
        contractible (bool): Add a cone(c * id) summand

    Raises:
        PreconditionError: A has a nonzero differential
    """
    if not A.is_differential_zero():
        raise PreconditionError("random modules need a formal algebra")
    rng = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    source = _random_free_sum(A, rng, int(rng.integers(1, max_rank + 1)), degrees, "m")
    target = _random_free_sum(A, rng, int(rng.integers(1, max_rank + 1)), degrees, "n")
    M = cone(_random_map(A, rng, source, target, density), name="random")
    if contractible:
        P = _random_free_sum(A, rng, 1, degrees, "c")
        c = A.K(int(rng.integers(1, 6)))
        entries = {(0, 0): A.scale(c, A.idempotent(P.generators[0].idempotent))}
        M = direct_sum(M, cone(ModuleMorphism(P, P, 0, entries)), name="random")
    return M
