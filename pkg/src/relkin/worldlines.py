"""World lines parameterized by proper time, and the exact circular orbit.

A world line exposes exact position, velocity and acceleration functions
of proper time (positions are displacements from a scenario origin).  The
circular line is constructed from a center frame, an antisymmetric angular
velocity and an initial radius vector, with all derived quantities (orbital
rate, radius, time-dilation factor, initial velocity) validated eagerly.
"""
from __future__ import annotations

import abc
import math

import numpy as np

from .boosts import boost
from .config import TOL
from .errors import ConstraintViolation
from .minkowski import (
    E1,
    E2,
    ZERO,
    AbsoluteVelocity,
    FourVector,
    LorentzMap,
    _mdot,
    antisymmetric_magnitude,
    lorentz_dot,
    wedge,
)


class WorldLine(abc.ABC):
    """History of a material point as exact functions of proper time."""

    @abc.abstractmethod
    def position(self, s: float) -> FourVector:
        """Displacement of the world point at proper time ``s`` from the origin."""

    @abc.abstractmethod
    def velocity(self, s: float) -> AbsoluteVelocity:
        """Four-velocity at proper time ``s``."""

    @abc.abstractmethod
    def acceleration(self, s: float) -> FourVector:
        """Proper acceleration at proper time ``s``; orthogonal to the velocity."""

    def _kinematics_arrays(self, s: float) -> tuple[np.ndarray, np.ndarray]:
        # raw (velocity, acceleration) component arrays; integrator fast path
        return self.velocity(s).components, self.acceleration(s).components


class InertialWorldLine(WorldLine):
    """Straight world line of an unaccelerated point."""

    def __init__(self, velocity: AbsoluteVelocity, origin: FourVector = ZERO):
        self._velocity = velocity
        self._origin = origin
        self._zero = ZERO

    def position(self, s: float) -> FourVector:
        return FourVector(self._origin.components + float(s) * self._velocity.components)

    def velocity(self, s: float) -> AbsoluteVelocity:
        return self._velocity

    def acceleration(self, s: float) -> FourVector:
        return self._zero

    def _kinematics_arrays(self, s: float):
        return self._velocity.components, self._zero.components


class CircularWorldLine(WorldLine):
    """Uniform circular motion in the space of a center frame.

    Parameters
    ----------
    center_velocity:
        Four-velocity of the orbit center.
    angular_velocity:
        Antisymmetric map generating the orbital rotation; must kill the
        center velocity and be nonzero.
    radius_vector:
        Initial position relative to the center, a space vector of the
        center frame lying in the rotation plane.
    origin:
        World point of the center at proper time 0.

    The orbital speed (rate times radius) must stay below 1; construction
    rejects anything invalid instead of repairing it.
    """

    def __init__(
        self,
        center_velocity: AbsoluteVelocity,
        angular_velocity: LorentzMap,
        radius_vector: FourVector,
        origin: FourVector = ZERO,
        tol: float | None = None,
    ):
        tol = TOL.constraint if tol is None else tol
        uc = center_velocity.components
        om = angular_velocity.matrix
        q = radius_vector.components

        if not angular_velocity.is_antisymmetric(tol):
            raise ConstraintViolation("angular velocity must be antisymmetric")
        if float(np.max(np.abs(om @ uc))) > tol:
            raise ConstraintViolation("angular velocity must kill the center velocity")
        rate = antisymmetric_magnitude(angular_velocity, tol)
        if rate <= tol:
            raise ConstraintViolation("angular velocity must be nonzero")
        if abs(_mdot(uc, q)) > tol:
            raise ConstraintViolation("radius vector must be a space vector of the center frame")
        radius = radius_vector.norm()
        if radius <= tol:
            raise ConstraintViolation("radius vector must be nonzero")
        # q in the rotation plane is equivalent to Om^2 q = -rate^2 q
        plane_residual = om @ (om @ q) + rate * rate * q
        if float(np.max(np.abs(plane_residual))) > tol * max(1.0, rate * rate * radius):
            raise ConstraintViolation(
                "radius vector must lie in the rotation plane (orthogonal to the kernel)"
            )
        speed = rate * radius
        if speed >= 1.0 - 1e-9:
            raise ConstraintViolation(f"orbital speed must stay below 1, got {speed}")

        self.center_velocity = center_velocity
        self.angular_velocity = angular_velocity
        self.radius_vector = radius_vector
        self.origin = origin
        self.angular_rate = rate
        self.radius = radius
        self.orbital_speed = speed
        self.lorentz_factor = 1.0 / math.sqrt(1.0 - speed * speed)
        self.initial_velocity = AbsoluteVelocity(
            self.lorentz_factor * (uc + om @ q), tol=max(tol, 1e-12)
        )
        self.proper_period = 2.0 * math.pi / (rate * self.lorentz_factor)
        self.center_period = 2.0 * math.pi / rate

        # cached arrays for the closed-form kinematics
        lam = self.lorentz_factor
        omq = om @ q
        self._q = q
        self._omq_over_rate = omq / rate
        self._vel_const = lam * uc
        self._vel_cos = lam * omq
        self._vel_sin = -lam * rate * q
        self._acc_cos = -(lam * rate) ** 2 * q
        self._acc_sin = -(lam ** 2) * rate * omq

    @classmethod
    def from_plane(
        cls,
        angular_rate: float,
        radius: float,
        plane: tuple[FourVector, FourVector] | None = None,
        center_velocity: AbsoluteVelocity | None = None,
        origin: FourVector = ZERO,
    ) -> "CircularWorldLine":
        """Circular line from scalar rate and radius plus a rotation plane.

        ``plane`` is a pair of orthonormal space vectors of the center
        frame; the motion starts on the first axis and turns toward the
        second.  Defaults to the (e1, e2) plane carried into the center
        frame by the boost from the base frame.
        """
        uc = AbsoluteVelocity.rest() if center_velocity is None else center_velocity
        if plane is None:
            carry = boost(uc, AbsoluteVelocity.rest())
            p1, p2 = carry(E1), carry(E2)
        else:
            p1, p2 = plane
        for p in (p1, p2):
            if abs(p.norm() - 1.0) > 1e-9 or abs(lorentz_dot(uc, p)) > 1e-9:
                raise ConstraintViolation(
                    "plane axes must be unit space vectors of the center frame"
                )
        if abs(lorentz_dot(p1, p2)) > 1e-9:
            raise ConstraintViolation("plane axes must be orthogonal")
        generator = float(angular_rate) * wedge(p2, p1)
        return cls(uc, generator, float(radius) * p1, origin)

    def _phase(self, s: float) -> float:
        return self.angular_rate * self.lorentz_factor * s

    def position(self, s: float) -> FourVector:
        s = float(s)
        ph = self._phase(s)
        turn = self._q * math.cos(ph) + self._omq_over_rate * math.sin(ph)
        return FourVector(
            self.origin.components + (s * self.lorentz_factor) * self.center_velocity.components + turn
        )

    def velocity(self, s: float) -> AbsoluteVelocity:
        ph = self._phase(float(s))
        return AbsoluteVelocity(
            self._vel_const + self._vel_cos * math.cos(ph) + self._vel_sin * math.sin(ph)
        )

    def acceleration(self, s: float) -> FourVector:
        ph = self._phase(float(s))
        return FourVector(self._acc_cos * math.cos(ph) + self._acc_sin * math.sin(ph))

    def _kinematics_arrays(self, s: float):
        ph = self._phase(s)
        c, si = math.cos(ph), math.sin(ph)
        return (
            self._vel_const + c * self._vel_cos + si * self._vel_sin,
            c * self._acc_cos + si * self._acc_sin,
        )

    def center_time_of_proper_time(self, s: float) -> float:
        """Center-frame time elapsed at proper time ``s`` (linear dilation)."""
        return self.lorentz_factor * float(s)

    def proper_time_of_center_time(self, t: float) -> float:
        return float(t) / self.lorentz_factor

    def initial_time_of_proper_time(self, s: float) -> float:
        """Time of the frame comoving with the orbit at s = 0.

        Closed form obtained by integrating the dilation factor
        lam^2 (1 - speed^2 cos(phase)) over proper time.
        """
        s = float(s)
        lam = self.lorentz_factor
        return lam * lam * s - lam * self.angular_rate * self.radius ** 2 * math.sin(self._phase(s))

    def proper_time_of_initial_time(
        self, t: float, residual: float = 1e-12, max_newton: int = 50
    ) -> float:
        """Invert :meth:`initial_time_of_proper_time`.

        Newton iteration from the guess t/lam^2 with a bisection fallback;
        the forward map is strictly increasing with slope at least 1, so
        |forward(s) - t| bounds the error in s.
        """
        t = float(t)
        lam2 = self.lorentz_factor ** 2
        speed2 = self.orbital_speed ** 2
        s = t / lam2
        for _ in range(max_newton):
            f = self.initial_time_of_proper_time(s) - t
            if abs(f) < residual:
                return s
            s -= f / (lam2 * (1.0 - speed2 * math.cos(self._phase(s))))
        f = self.initial_time_of_proper_time(s) - t
        lo, hi = s - abs(f), s + abs(f)
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            fm = self.initial_time_of_proper_time(mid) - t
            if abs(fm) < residual:
                return mid
            if fm < 0.0:
                lo = mid
            else:
                hi = mid
        raise ConstraintViolation(f"time inversion failed to converge for t = {t}")


def frame_time_of_proper_time(u: AbsoluteVelocity, line: WorldLine, s: float) -> float:
    """Time frame ``u`` assigns to the world point at proper time ``s``.

    Zeroed at the world point of proper time 0; always increases with
    ``s`` because the dilation factor is at least 1.
    """
    disp = line.position(s) - line.position(0.0)
    return -lorentz_dot(u, disp)


def proper_time_of_frame_time(
    u: AbsoluteVelocity,
    line: WorldLine,
    t: float,
    residual: float = 1e-12,
    max_newton: int = 50,
) -> float:
    """Invert :func:`frame_time_of_proper_time` for any world line.

    Newton iteration with a bisection fallback; the map is strictly
    increasing with slope -u.velocity(s) >= 1, so the residual bounds the
    error in s directly.
    """
    t = float(t)
    if t == 0.0:
        return 0.0
    s = t
    for _ in range(max_newton):
        f = frame_time_of_proper_time(u, line, s) - t
        if abs(f) < residual:
            return s
        s -= f / (-lorentz_dot(u, line.velocity(s)))
    f = frame_time_of_proper_time(u, line, s) - t
    lo, hi = s - abs(f), s + abs(f)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = frame_time_of_proper_time(u, line, mid) - t
        if abs(fm) < residual:
            return mid
        if fm < 0.0:
            lo = mid
        else:
            hi = mid
    raise ConstraintViolation(f"frame-time inversion failed to converge for t = {t}")
