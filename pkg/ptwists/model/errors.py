"""
Exception hierarchy for the twist engine

Every failure raised by the engine derives from PTwistsError so the command
line front end can map it onto an exit status. Warnings (vacuous ping-pong
classification, the (n, k) = (1, 1) guard, undetermined isomorphism
verdicts) go through logging and are never raised.

Classes:
    PTwistsError: Root of the hierarchy
    StructuralError: Shape, degree, algebra or field mismatch
    AxiomError: A dg-axiom (d^2 = 0, Leibniz, associativity, ...) fails
    ConfigurationError: Invalid parameters or wrong regime
    PreconditionError: A mathematical precondition of an operation fails
    ContractViolation: A chain-level construction invariant is broken
    ResourceError: A generator-count budget was exceeded
"""


class PTwistsError(Exception):
    """Base class for all engine errors."""

    exit_code = 1


class StructuralError(PTwistsError):
    """Shape, degree or algebra mismatch between inputs."""


class AxiomError(StructuralError):
    """
    A dg-axiom is violated.

    Attributes:
        axiom (str): Name of the failing axiom
        witness: Violating degree or basis tuple
    """

    def __init__(self, axiom, witness=None, message=None):
        self.axiom = axiom
        self.witness = witness
        super().__init__(message or f"axiom '{axiom}' violated at {witness!r}")


class ConfigurationError(PTwistsError):
    """Invalid configuration value, missing marked element or wrong regime."""


class PreconditionError(ConfigurationError):
    """The input does not satisfy a mathematical precondition (e.g. h not central)."""


class ContractViolation(PTwistsError):
    """
    A construction invariant failed, e.g. cone of a non-closed morphism.

    Attributes:
        residual: The offending nonzero data (usually D(f) as an entry dict)
    """

    exit_code = 2

    def __init__(self, message, residual=None):
        self.residual = residual
        super().__init__(message)


class ResourceError(PTwistsError):
    """
    Generator-count cap exceeded while folding a twist word.

    Attributes:
        prefix (tuple): Letters applied before the cap was hit
        generators (int): Generator count that exceeded the cap
    """

    exit_code = 3

    def __init__(self, prefix, generators, cap):
        self.prefix = tuple(prefix)
        self.generators = generators
        self.cap = cap
        word = " ".join(self.prefix) or "<empty>"
        super().__init__(
            f"generator cap {cap} exceeded ({generators} generators) after prefix '{word}'"
        )
