"""
Model package for ptwists

Contains the exact engine: graded linear algebra, dg-algebras, semi-free
modules, twists, spherification and ping-pong certificates
"""

from ptwists.model.algebra import (
    DgAlgebra,
    build_orthogonal_algebra,
    build_pnk_algebra,
    build_two_object_algebra,
    check_dg_axioms,
)
from ptwists.model.certificate import Certificate
from ptwists.model.errors import (
    AxiomError,
    ConfigurationError,
    ContractViolation,
    PreconditionError,
    PTwistsError,
    ResourceError,
    StructuralError,
)
from ptwists.model.modules import (
    HomComplex,
    ModuleMorphism,
    SemiFreeModule,
    cone,
    free_module,
    hom_dims,
    is_quasi_isomorphic,
    minimize,
    shift,
)
from ptwists.model.pingpong import (
    TwistContext,
    TwistWord,
    certify_abelian,
    certify_no_relations,
    classify,
    search_relations,
)
from ptwists.model.spherify import apply_F, apply_R, build_spherification_algebra, check_spherical
from ptwists.model.twists import hom_profile, p_twist, p_untwist, spherical_twist, spherical_untwist

__all__ = [
    'DgAlgebra', 'build_pnk_algebra', 'build_two_object_algebra', 'build_orthogonal_algebra',
    'check_dg_axioms', 'Certificate',
    'PTwistsError', 'StructuralError', 'AxiomError', 'ConfigurationError', 'PreconditionError',
    'ContractViolation', 'ResourceError',
    'SemiFreeModule', 'ModuleMorphism', 'HomComplex', 'free_module', 'cone', 'shift', 'minimize',
    'hom_dims', 'is_quasi_isomorphic',
    'spherical_twist', 'spherical_untwist', 'p_twist', 'p_untwist', 'hom_profile',
    'build_spherification_algebra', 'apply_F', 'apply_R', 'check_spherical',
    'TwistWord', 'TwistContext', 'classify', 'certify_no_relations', 'certify_abelian',
    'search_relations',
]
