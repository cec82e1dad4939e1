"""
ptwists - Exact P-twists, spherification and ping-pong certificates

An exact-arithmetic engine for twisted complexes over finite formal
dg-algebras: spherical twists and P-twists along P^n[k]-objects, the
spherification B = A[eps]/eps^2 that turns P-objects into spherical ones,
and certificates for the group generated by two twists (free in the
non-orthogonal case, free abelian in the orthogonal case).

## Module Structure

- config/: Session parameters and presets
- model/: Engine (linalg, algebra, modules, twists, spherify, pingpong)
- view/: Command line front end and text reports
- utils/: JSON serialization and atomic artifact writing

## Usage

Certify freeness up to length 4:
    python -m ptwists certify free --algebra two-object:2,2,1 --L 4 --output cert.json

Replay it:
    python -m ptwists replay cert.json
"""

from ptwists.config.parameters import VERSION

__version__ = VERSION

# Make key classes easily importable
from ptwists.config.parameters import SessionConfig, params
from ptwists.config.presets import PRESETS
from ptwists.model.algebra import DgAlgebra, build_pnk_algebra, build_two_object_algebra
from ptwists.model.modules import SemiFreeModule, free_module, hom_dims, minimize
from ptwists.model.pingpong import TwistContext, TwistWord, certify_abelian, certify_no_relations
from ptwists.model.spherify import build_spherification_algebra

__all__ = [
    'SessionConfig', 'params', 'PRESETS',
    'DgAlgebra', 'build_pnk_algebra', 'build_two_object_algebra',
    'SemiFreeModule', 'free_module', 'hom_dims', 'minimize',
    'TwistContext', 'TwistWord', 'certify_abelian', 'certify_no_relations',
    'build_spherification_algebra',
]
