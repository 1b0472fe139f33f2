"""Fermi-Walker transport of gyroscopic vectors along world lines.

A spacelike vector carried by an accelerated point keeps its direction,
in the only boost-consistent sense, when it evolves by
zdot = velocity (acceleration . z) - acceleration (velocity . z).
Transport preserves orthogonality to the velocity, magnitudes and mutual
angles.  Two independent routes are provided and cross-validate each
other: a fixed-step RK4 propagator for any world line, and an exact
operator for circular lines built from two commuting-plane rotation
exponentials.  Restricting a closed-loop transport operator to the space
vectors of the (equal) endpoint velocity yields the Thomas rotation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .boosts import SpatialRotation
from .config import TOL
from .errors import ConstraintViolation, DriftViolation, VelocityMismatch
from .minkowski import (
    METRIC,
    FourVector,
    LorentzMap,
    _mdot,
    lorentz_dot,
    wedge,
)
from .worldlines import CircularWorldLine, WorldLine


@dataclass(frozen=True)
class GyroState:
    """Gyroscopic vector ``z`` at proper time ``s`` of its world line."""

    s: float
    z: FourVector


class TransportOperator(LorentzMap):
    """Lorentz map carrying gyroscopic vectors from proper time s1 to s2."""

    def __init__(self, matrix, s1: float, s2: float, tol: float | None = None):
        super().__init__(matrix)
        tol = TOL.numeric if tol is None else tol
        if not self.is_lorentz(tol):
            raise ConstraintViolation("transport operator must preserve the Lorentz form")
        self.s1 = float(s1)
        self.s2 = float(s2)


def fermi_walker_derivative(line: WorldLine, s: float, z: FourVector) -> FourVector:
    """Right-hand side of the transport equation at proper time ``s``."""
    rdot, rddot = line._kinematics_arrays(float(s))
    return FourVector(rdot * _mdot(rddot, z.components) - rddot * _mdot(rdot, z.components))


def _resolve_step(line: WorldLine, s1: float, s2: float, step: float | None) -> float:
    if step is not None:
        if step <= 0.0:
            raise ConstraintViolation("integration step must be positive")
        return float(step)
    if isinstance(line, CircularWorldLine):
        return line.proper_period / 10_000
    span = abs(s2 - s1)
    return span / 10_000 if span > 0.0 else 1.0


def _rhs(rdot: np.ndarray, rddot: np.ndarray, z: np.ndarray) -> np.ndarray:
    return rdot * _mdot(rddot, z) - rddot * _mdot(rdot, z)


def _rk4_vector(
    line: WorldLine,
    z: np.ndarray,
    s1: float,
    s2: float,
    step: float,
    norm0: float,
    tol_drift: float,
) -> np.ndarray:
    """Classical RK4 with fixed step; the final partial step is shortened.

    Raises DriftViolation as soon as orthogonality to the velocity or the
    magnitude drifts beyond ``tol_drift`` (drift is monitored, never
    silently corrected).
    """
    total = s2 - s1
    if total == 0.0:
        return z
    n_full = int(abs(total) // step)
    h_full = math.copysign(step, total)
    kin = line._kinematics_arrays
    rdot_lo, rddot_lo = kin(s1)
    s = s1
    for i in range(n_full + 1):
        if i == n_full:
            h = s2 - s
            if abs(h) <= 1e-15 * max(1.0, abs(s2)):
                break
        else:
            h = h_full
        mid = kin(s + 0.5 * h)
        hi = kin(s + h)
        k1 = _rhs(rdot_lo, rddot_lo, z)
        k2 = _rhs(mid[0], mid[1], z + (0.5 * h) * k1)
        k3 = _rhs(mid[0], mid[1], z + (0.5 * h) * k2)
        k4 = _rhs(hi[0], hi[1], z + h * k3)
        z = z + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
        s += h
        rdot_lo, rddot_lo = hi
        ortho = abs(_mdot(rdot_lo, z))
        mag = abs(math.sqrt(_mdot(z, z)) - norm0)
        if ortho > tol_drift or mag > tol_drift:
            raise DriftViolation(
                f"transport drift at s = {s}: velocity.z = {ortho}, |z| drift = {mag} "
                f"(step {step} too large)"
            )
    return z


def transport_numeric(
    line: WorldLine,
    z0: FourVector,
    s1: float,
    s2: float,
    step: float | None = None,
    tol_drift: float | None = None,
) -> GyroState:
    """Transport ``z0`` from proper time ``s1`` to ``s2`` by fixed-step RK4.

    ``z0`` must be orthogonal to the velocity at ``s1``.  The default step
    is one ten-thousandth of the orbital period (or of the span for
    non-periodic lines); global error is fourth order in the step.
    """
    s1, s2 = float(s1), float(s2)
    step = _resolve_step(line, s1, s2, step)
    tol_drift = TOL.drift if tol_drift is None else tol_drift
    rdot1, _ = line._kinematics_arrays(s1)
    ortho = _mdot(rdot1, z0.components)
    if abs(ortho) > TOL.constraint * max(1.0, float(np.max(np.abs(z0.components)))):
        raise ConstraintViolation(
            f"initial vector must be orthogonal to the velocity, got {ortho}"
        )
    norm0 = z0.norm()
    z = _rk4_vector(line, z0.components.copy(), s1, s2, step, norm0, tol_drift)
    return GyroState(s2, FourVector(z))


def transport_path(
    line: WorldLine,
    z0: FourVector,
    s_points,
    s_start: float = 0.0,
    step: float | None = None,
    tol_drift: float | None = None,
) -> list[GyroState]:
    """Transport ``z0`` (gyroscopic at ``s_start``) to each of ``s_points``.

    One sequential integration pass; the points must be ascending.
    """
    ss = [float(s) for s in s_points]
    if any(b < a for a, b in zip(ss, ss[1:])):
        raise ConstraintViolation("proper-time points must be ascending")
    s_start = float(s_start)
    tol_drift = TOL.drift if tol_drift is None else tol_drift
    rdot0, _ = line._kinematics_arrays(s_start)
    if abs(_mdot(rdot0, z0.components)) > TOL.constraint * max(
        1.0, float(np.max(np.abs(z0.components)))
    ):
        raise ConstraintViolation(
            f"initial vector must be orthogonal to the velocity at s = {s_start}"
        )
    norm0 = z0.norm()
    out: list[GyroState | None] = [None] * len(ss)
    first_fwd = next((i for i, s in enumerate(ss) if s >= s_start), len(ss))
    z, cur = z0.components.copy(), s_start
    for i in range(first_fwd, len(ss)):
        h = _resolve_step(line, cur, ss[i], step)
        z = _rk4_vector(line, z, cur, ss[i], h, norm0, tol_drift)
        cur = ss[i]
        out[i] = GyroState(cur, FourVector(z))
    z, cur = z0.components.copy(), s_start
    for i in range(first_fwd - 1, -1, -1):
        h = _resolve_step(line, cur, ss[i], step)
        z = _rk4_vector(line, z, cur, ss[i], h, norm0, tol_drift)
        cur = ss[i]
        out[i] = GyroState(cur, FourVector(z))
    return out  # type: ignore[return-value]


def _rk4_matrix(line: WorldLine, s1: float, s2: float, step: float) -> np.ndarray:
    total = s2 - s1
    m = np.eye(4)
    if total == 0.0:
        return m
    n_full = int(abs(total) // step)
    h_full = math.copysign(step, total)

    def gen(kin_pair):
        rdot, rddot = kin_pair
        return np.outer(rdot, METRIC @ rddot) - np.outer(rddot, METRIC @ rdot)

    kin = line._kinematics_arrays
    w_lo = gen(kin(s1))
    s = s1
    for i in range(n_full + 1):
        if i == n_full:
            h = s2 - s
            if abs(h) <= 1e-15 * max(1.0, abs(s2)):
                break
        else:
            h = h_full
        w_mid = gen(kin(s + 0.5 * h))
        w_hi = gen(kin(s + h))
        k1 = w_lo @ m
        k2 = w_mid @ (m + (0.5 * h) * k1)
        k3 = w_mid @ (m + (0.5 * h) * k2)
        k4 = w_hi @ (m + h * k3)
        m = m + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
        s += h
        w_lo = w_hi
    return m


def transport_operator_numeric(
    line: WorldLine,
    s1: float,
    s2: float,
    step: float | None = None,
    tol: float | None = None,
) -> TransportOperator:
    """Assemble the transport map s1 -> s2 by integrating basis vectors.

    The result preserves the Lorentz form and carries the velocity at
    ``s1`` to the velocity at ``s2``, both within ``tol``.
    """
    s1, s2 = float(s1), float(s2)
    tol = TOL.numeric if tol is None else tol
    step = _resolve_step(line, s1, s2, step)
    m = _rk4_matrix(line, s1, s2, step)
    form = float(np.max(np.abs(m.T @ METRIC @ m - METRIC)))
    if form > tol:
        raise DriftViolation(
            f"transport operator form error {form} exceeds {tol} (step too large)"
        )
    rdot1, _ = line._kinematics_arrays(s1)
    rdot2, _ = line._kinematics_arrays(s2)
    endpoint = float(np.max(np.abs(m @ rdot1 - rdot2)))
    if endpoint > tol:
        raise DriftViolation(
            f"transport operator endpoint error {endpoint} exceeds {tol} (step too large)"
        )
    return TransportOperator(m, s1, s2, tol=tol)


def circular_transport_generator(line: CircularWorldLine) -> LorentzMap:
    """Antisymmetric generator of the co-rotating factor of circular transport.

    With this map A, the exact transport over center time t factors as
    (orbital rotation over t) composed with exp(-t A).  A kills the
    line's initial velocity and rotates the orthogonal plane at rate
    lorentz_factor * angular_rate.
    """
    if not isinstance(line, CircularWorldLine):
        raise ConstraintViolation("transport generator is defined for circular world lines")
    lam2 = line.lorentz_factor ** 2
    rate2 = line.angular_rate ** 2
    boost_part = wedge(line.center_velocity, line.radius_vector)
    return lam2 * line.angular_velocity + (lam2 * rate2) * boost_part


def _elliptic_exp(m: np.ndarray, rate: float, t: float) -> np.ndarray:
    # exact exponential for antisymmetric maps with m^3 = -rate^2 m
    if rate == 0.0:
        return np.eye(4)
    ph = rate * t
    return np.eye(4) + (math.sin(ph) / rate) * m + ((1.0 - math.cos(ph)) / rate ** 2) * (m @ m)


def transport_circular_exact(
    line: CircularWorldLine, z0: FourVector, t: float
) -> FourVector:
    """Exact transport of ``z0`` over center time ``t`` on a circular line.

    ``z0`` must be orthogonal to the initial velocity.  Center time runs a
    factor lorentz_factor faster than proper time; numeric transport APIs
    take proper time instead.
    """
    ortho = lorentz_dot(line.initial_velocity, z0)
    if abs(ortho) > TOL.constraint * max(1.0, float(np.max(np.abs(z0.components)))):
        raise ConstraintViolation(
            f"initial vector must be orthogonal to the initial velocity, got {ortho}"
        )
    t = float(t)
    gen = circular_transport_generator(line)
    spin_rate = line.lorentz_factor * line.angular_rate
    orbital = _elliptic_exp(line.angular_velocity.matrix, line.angular_rate, t)
    corotating = _elliptic_exp(gen.matrix, spin_rate, -t)
    return FourVector(orbital @ (corotating @ z0.components))


class ThomasAngle(NamedTuple):
    """Rotation per revolution of a circular-line gyroscope.

    ``unreduced`` is the accumulated angle 2 pi (1 - lorentz_factor),
    ``reduced`` its representative in (-pi, pi], and ``winding`` the
    revolution fraction (1 - lorentz_factor).
    """

    reduced: float
    unreduced: float
    winding: float


def _reduce_angle(angle: float) -> float:
    reduced = math.remainder(angle, 2.0 * math.pi)
    if reduced <= -math.pi:
        reduced += 2.0 * math.pi
    return reduced


def circular_thomas_angle(line: CircularWorldLine) -> ThomasAngle:
    """Closed-form Thomas angle of one full revolution."""
    winding = 1.0 - line.lorentz_factor
    unreduced = 2.0 * math.pi * winding
    return ThomasAngle(_reduce_angle(unreduced), unreduced, winding)


def thomas_rotation_circular(line: CircularWorldLine) -> SpatialRotation:
    """Exact rotation a gyroscope acquires per revolution of a circular line.

    The orbital factor of the transport closes after one revolution, so
    the full-period transport operator is the co-rotating exponential
    alone, a rotation of the space vectors of the initial velocity.
    """
    gen = circular_transport_generator(line)
    spin_rate = line.lorentz_factor * line.angular_rate
    m = _elliptic_exp(gen.matrix, spin_rate, -line.center_period)
    return SpatialRotation(m, line.initial_velocity)


def thomas_rotation_general(
    line: WorldLine,
    s1: float,
    s2: float,
    step: float | None = None,
) -> SpatialRotation:
    """Closed-loop rotation between proper times with equal velocities.

    Defined only when the velocities at ``s1`` and ``s2`` agree (within
    ``TOL.velocity_match``); the numeric transport operator then restricts
    to a rotation of the shared space vectors.
    """
    v1 = line.velocity(s1)
    v2 = line.velocity(s2)
    mismatch = float(np.max(np.abs(v1.components - v2.components)))
    if mismatch > TOL.velocity_match:
        raise VelocityMismatch(
            f"velocities at s1 and s2 differ by {mismatch}; "
            "a closed-loop rotation needs equal endpoint velocities"
        )
    op = transport_operator_numeric(line, s1, s2, step=step)
    return SpatialRotation(op.matrix, v1, tol=10.0 * TOL.velocity_match)
