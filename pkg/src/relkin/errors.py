"""Exception types shared across the package."""


class KinematicsError(Exception):
    """Base class for all errors raised by relkin."""


class ConstraintViolation(KinematicsError):
    """An input or a result failed one of its defining constraints."""


class VelocityMismatch(ConstraintViolation):
    """The operation needs equal endpoint velocities but they differ."""


class DriftViolation(KinematicsError):
    """A conserved quantity drifted beyond tolerance during integration.

    Usually a signal that the integration step is too large.
    """


class ScenarioError(KinematicsError):
    """A scenario file could not be parsed or fails schema validation."""
