"""
Preset configurations for the standard twist regimes

All presets name:
- algebra: Spec string of the input algebra
- scope: 'A' for P-twists, 'B' for spherical twists over the spherification
- word_length: Word budget L
- transition_exponent: Powers checked by the ping-pong transitions
"""

import logging

from ptwists.config.parameters import params

logger = logging.getLogger(__name__)

PRESETS = {
    # === NON-ORTHOGONAL PAIRS (free group expected) ===

    "P2-pair": {
        # Two P^2[2]-objects, one degree-2 map each way
        'algebra': "two-object:2,2,1",
        'scope': "A",
        'word_length': 4,
        'transition_exponent': 3,
    },

    "P2-pair spherified": {
        # Same pair pushed to spherical objects of dimension 5
        'algebra': "two-object:2,2,1",
        'scope': "B",
        'word_length': 4,
        'transition_exponent': 3,
    },

    "P2-pair double": {
        # m = 2: hom*(S1, S2) = 4, the ping-pong inequalities have slack
        'algebra': "two-object:2,2,2",
        'scope': "A",
        'word_length': 3,
        'transition_exponent': 2,
    },

    "P3[2]-pair": {
        'algebra': "two-object:3,2,1",
        'scope': "A",
        'word_length': 3,
        'transition_exponent': 2,
    },

    # === ORTHOGONAL PAIRS (free abelian expected) ===

    "Orthogonal P2": {
        'algebra': "orthogonal:2,2",
        'scope': "A",
        'word_length': 3,
        'transition_exponent': 1,
    },

    "Orthogonal spherical n=1": {
        # Degenerate (1,1): certificates are non-conclusive
        'algebra': "orthogonal:1,1",
        'scope': "A",
        'word_length': 2,
        'transition_exponent': 1,
    },
}

# Algebras exercised by the acceptance suite
ACCEPTANCE_ALGEBRAS = [
    "pnk:1,2",
    "pnk:2,2",
    "pnk:3,2",
    "pnk:2,4",
    "two-object:2,2,1",
    "two-object:2,2,2",
    "orthogonal:2,2",
]


def load_preset(preset_name):
    """
    Load a preset configuration into the global parameters.

    Args:
        preset_name (str): Key of PRESETS

    Raises:
        ConfigurationError: Unknown preset
    """
    if preset_name not in PRESETS:
        from ptwists.model.errors import ConfigurationError

        raise ConfigurationError(
            f"unknown preset '{preset_name}' (available: {', '.join(sorted(PRESETS))})"
        )
    params.update(**PRESETS[preset_name])
    logger.info(f"LOADED PRESET: {preset_name}")
    return params
