"""
Utilities package for ptwists

Contains JSON serialization of algebras, modules and artifacts
"""

from ptwists.utils.serialize import (
    algebra_from_dict,
    algebra_to_dict,
    canonical_json,
    module_from_dict,
    module_to_dict,
    parse_algebra_spec,
    write_json_atomic,
)

__all__ = [
    'algebra_from_dict', 'algebra_to_dict', 'canonical_json',
    'module_from_dict', 'module_to_dict', 'parse_algebra_spec', 'write_json_atomic',
]
