"""Gyroscope precession as seen by an arbitrary inertial frame.

A transported gyroscopic vector keeps its direction in itself, yet any
fixed inertial frame that observes it, by boosting it continuously into
its own space, sees it precess.  The instantaneous angular velocity of
that precession depends only on the relative velocity and acceleration of
the carrier as seen by the frame, and genuinely differs from frame to
frame.  The circular-line special cases have closed forms implemented
here alongside the generic observation pipeline.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .boosts import boost, relative_acceleration, relative_velocity
from .config import TOL
from .errors import ConstraintViolation
from .minkowski import (
    AbsoluteVelocity,
    FourVector,
    LorentzMap,
    lorentz_dot,
    orthonormal_spatial_frame,
    wedge,
)
from .transport import transport_path
from .worldlines import CircularWorldLine, WorldLine, proper_time_of_frame_time


@dataclass
class PrecessionSample:
    """One observation of a gyroscope from a fixed inertial frame.

    ``z`` is the gyroscopic vector boosted into the observer's space,
    ``rate`` the instantaneous angular-velocity map of its precession
    (kills the observer velocity), and ``z_dot`` the centered finite
    difference of ``z`` over the sample grid (None at the endpoints).
    """

    t: float
    z: FourVector
    rate: LorentzMap
    z_dot: FourVector | None = None


def precession_rate(v: FourVector, a: FourVector, tol: float | None = None) -> LorentzMap:
    """Angular velocity (gamma^2 / (1 + gamma)) v ^ a of the observed precession.

    ``v`` and ``a`` are the relative velocity and acceleration in the
    observer's space; |v| must stay below 1.  Equals ((gamma - 1)/|v|^2) v ^ a
    for nonzero v.
    """
    tol = TOL.constraint if tol is None else tol
    v_sq = lorentz_dot(v, v)
    if v_sq < -tol:
        raise ConstraintViolation("relative velocity must be spacelike")
    v_sq = max(v_sq, 0.0)
    if v_sq >= 1.0:
        raise ConstraintViolation(f"relative speed must be below 1, got squared {v_sq}")
    gamma = 1.0 / np.sqrt(1.0 - v_sq)
    return (gamma * gamma / (1.0 + gamma)) * wedge(v, a)


def observe_gyroscope(
    u: AbsoluteVelocity,
    line: WorldLine,
    z_of_s,
    t: float,
) -> FourVector:
    """Gyroscopic vector at frame time ``t``, boosted into the space of ``u``.

    ``z_of_s`` supplies the transported vector as a function of proper
    time.  Boosting preserves the magnitude, so the observed needle never
    changes length, only direction.
    """
    s = proper_time_of_frame_time(u, line, t)
    z = z_of_s(s)
    rdot = line.velocity(s)
    if abs(lorentz_dot(rdot, z)) > TOL.drift * max(1.0, float(np.max(np.abs(z.components)))):
        raise ConstraintViolation("supplied trajectory is not gyroscopic at the requested time")
    return boost(u, rdot)(z)


def precession_series(
    u: AbsoluteVelocity,
    line: WorldLine,
    z0: FourVector,
    t_grid,
    step: float | None = None,
) -> list[PrecessionSample]:
    """Observe a numerically transported gyroscope on a grid of frame times.

    ``z0`` must be gyroscopic at proper time 0.  One sequential transport
    pass covers the grid; each sample then gets the boosted vector and the
    rate built from the relative velocity and acceleration at that
    instant.  Interior samples also carry the centered difference of the
    observed vector, so the precession law can be checked against the
    series itself.
    """
    ts = [float(t) for t in t_grid]
    if len(ts) < 2:
        raise ConstraintViolation("a precession series needs at least two grid points")
    if any(b <= a for a, b in zip(ts, ts[1:])):
        raise ConstraintViolation("frame-time grid must be strictly increasing")
    ss = [proper_time_of_frame_time(u, line, t) for t in ts]
    states = transport_path(line, z0, ss, step=step)
    samples = []
    for t, state in zip(ts, states):
        rdot = line.velocity(state.s)
        observed = boost(u, rdot)(state.z)
        v = relative_velocity(u, rdot)
        a = relative_acceleration(u, rdot, line.acceleration(state.s))
        samples.append(PrecessionSample(t, observed, precession_rate(v, a)))
    for k in range(1, len(samples) - 1):
        dt = ts[k + 1] - ts[k - 1]
        samples[k].z_dot = (samples[k + 1].z - samples[k - 1].z) * (1.0 / dt)
    return samples


def central_frame_precession(line: CircularWorldLine) -> LorentzMap:
    """Precession rate seen by the center frame of a circular orbit.

    Constant in center time: (1 - lorentz_factor) times the orbital
    angular velocity, retrograde for any nonzero orbital speed.
    """
    return (1.0 - line.lorentz_factor) * line.angular_velocity


@dataclass(frozen=True)
class FrameInstant:
    """Observed kinematics at one instant of the observing frame."""

    proper_time: float
    frame_time: float
    velocity: FourVector
    rate: LorentzMap
    acceleration: FourVector | None = None


@dataclass(frozen=True)
class SpecialInstantPair:
    """Closed-form instants of the initial rest frame of a circular orbit."""

    even: FrameInstant
    odd: FrameInstant


def initial_frame_special_instants(line: CircularWorldLine, n: int = 1) -> SpecialInstantPair:
    """Observed kinematics at the n-th aligned and opposed orbit instants.

    The observer is the frame comoving with the orbit at proper time 0.
    At phases that are even multiples of pi the carrier is momentarily at
    rest in that frame, so both the relative velocity and the precession
    rate vanish.  At odd multiples everything is closed form; the rate
    follows from pushing the closed-form velocity and acceleration through
    the precession law.
    """
    if n < 1:
        raise ConstraintViolation("instant index must be a positive integer")
    lam = line.lorentz_factor
    rate = line.angular_rate
    uc = line.center_velocity
    q = line.radius_vector
    omq = line.angular_velocity(q)
    x = line.orbital_speed ** 2

    s_even = 2.0 * n * np.pi / (rate * lam)
    even = FrameInstant(
        proper_time=s_even,
        frame_time=2.0 * n * np.pi * lam / rate,
        velocity=FourVector(np.zeros(4)),
        rate=LorentzMap(np.zeros((4, 4))),
    )

    s_odd = (2.0 * n - 1.0) * np.pi / (rate * lam)
    v_odd = (-2.0 * lam / (1.0 + x)) * (x * uc + omq)
    a_odd = ((1.0 - x) * rate ** 2 / (1.0 + x) ** 2) * q
    rate_odd = (-lam * rate ** 2 / (1.0 + x)) * wedge(x * uc + omq, q)
    odd = FrameInstant(
        proper_time=s_odd,
        frame_time=(2.0 * n - 1.0) * np.pi * lam / rate,
        velocity=v_odd,
        rate=rate_odd,
        acceleration=a_odd,
    )
    return SpecialInstantPair(even=even, odd=odd)


def rate_components(rate: LorentzMap, u: AbsoluteVelocity, frame=None) -> np.ndarray:
    """Angular-velocity pseudo-vector of ``rate`` in the spatial frame of ``u``.

    Components (r1, r2, r3) such that the restriction of ``rate`` rotates
    f1 toward f2 at rate r3, and cyclically; their Euclidean norm is the
    precession speed.
    """
    f = orthonormal_spatial_frame(u) if frame is None else frame
    m = np.array(
        [[lorentz_dot(fi, rate(fj)) for fj in f] for fi in f]
    )
    return np.array([m[2, 1], m[0, 2], m[1, 0]])
