"""
Configuration package for ptwists

Contains session parameters and preset configurations
"""

from ptwists.config.parameters import VERSION, SessionConfig, params
from ptwists.config.presets import ACCEPTANCE_ALGEBRAS, PRESETS, load_preset

__all__ = ['VERSION', 'SessionConfig', 'params', 'PRESETS', 'ACCEPTANCE_ALGEBRAS', 'load_preset']
