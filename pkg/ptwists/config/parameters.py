"""
Session parameters configuration
Contains SessionConfig class with all configurable engine parameters
"""

import json
import os

VERSION = "1.0.0"


class SessionConfig:
    """
    Global parameters object for a ptwists session

    Contains all configurable parameters for:
    - Scalar field
    - Input algebra
    - Word enumeration and ping-pong transitions
    - Resource caps and parallelism
    - Artifact output
    """

    def __init__(self):
        # Scalars
        self.field = "QQ"  # 'QQ' or 'GF(p)'
        self.prime = 32003  # Used when field is 'GF' without an explicit p

        # Input algebra (pnk:n,k | two-object:n,k,m | orthogonal:n,k | JSON path)
        self.algebra = "two-object:2,2,1"

        # Words
        self.word_length = 4  # L
        self.transition_exponent = 3  # Powers checked by the ping-pong transitions
        self.scope = "A"  # 'A' P-twists, 'B' spherical twists over the spherification

        # Resources
        self.max_generators = 400  # Per twist step, 0 disables the cap
        self.seed = 0
        self.qiso_attempts = 24  # Random combinations tried before 'undetermined'
        self.workers = os.cpu_count() or 1

        # Output
        self.output = None
        self.force = False
        self.show_progress = False

    def scalar_field(self):
        """The sympy domain named by field/prime."""
        from ptwists.model.linalg import make_field

        return make_field(self.field, self.prime)

    def validate(self):
        """
        Reject bad values before any computation.

        Raises:
            ConfigurationError: First invalid parameter found
        """
        from ptwists.model.errors import ConfigurationError

        self.scalar_field()
        for name in ("word_length", "transition_exponent", "max_generators", "qiso_attempts", "seed"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise ConfigurationError(f"{name} must be a non-negative integer, got {value!r}")
        if self.transition_exponent < 1:
            raise ConfigurationError("transition_exponent must be at least 1")
        if not isinstance(self.workers, int) or self.workers < 1:
            raise ConfigurationError(f"workers must be a positive integer, got {self.workers!r}")
        if self.scope not in ("A", "B"):
            raise ConfigurationError(f"scope must be 'A' or 'B', got '{self.scope}'")
        if not self.algebra:
            raise ConfigurationError("no algebra given")
        return self

    def update(self, **values):
        """Apply overrides; None values are skipped, unknown names rejected."""
        from ptwists.model.errors import ConfigurationError

        for name, value in values.items():
            if value is None:
                continue
            if not hasattr(self, name):
                raise ConfigurationError(f"unknown parameter '{name}'")
            setattr(self, name, value)
        return self

    def as_dict(self):
        """
        Parameters echoed into certificates.

        Output location, overwrite permission, progress display and worker
        count do not affect results and are left out.
        """
        return {
            "field": self.field,
            "prime": self.prime,
            "algebra": self.algebra,
            "word_length": self.word_length,
            "transition_exponent": self.transition_exponent,
            "scope": self.scope,
            "max_generators": self.max_generators,
            "seed": self.seed,
            "qiso_attempts": self.qiso_attempts,
        }

    @classmethod
    def from_file(cls, path):
        """
        Read a JSON config file on top of the defaults.

        Raises:
            ConfigurationError: Unreadable file or unknown keys
        """
        from ptwists.model.errors import ConfigurationError

        try:
            with open(path, encoding="utf-8") as handle:
                data = json.load(handle)
        except (OSError, ValueError) as exc:
            raise ConfigurationError(f"cannot read config file {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigurationError(f"config file {path} must hold a JSON object")
        return cls().update(**data)

    def reset(self):
        """Restore every default (tests and replay start from a clean session)."""
        self.__init__()
        return self


# Global instance
params = SessionConfig()
