"""Exception hierarchy.

Every error maps to one CLI exit status through ``exit_status``.
"""


class OrbcodesError(Exception):
    exit_status = 1


class ValidationError(OrbcodesError, ValueError):
    """Malformed input: bad tower parameters, bad encodings, wrong lengths."""

    exit_status = 2


class NonPrimeError(ValidationError):
    pass


class NotPrimitiveError(ValidationError):
    pass


class MixedTowerError(ValidationError):
    pass


class PreconditionError(OrbcodesError, ValueError):
    """An operation was called outside its hypotheses (dimension, field, form)."""

    exit_status = 3


class OrbitError(PreconditionError):
    """Orbit-level quantity undefined, e.g. distance of a one-element orbit."""


class CapExceededError(OrbcodesError):
    exit_status = 4
