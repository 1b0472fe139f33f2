"""Lorentz boosts between four-velocities and the kinematics they induce.

A boost is the canonical form-preserving map identifying the space vectors
of one inertial frame with those of another.  Boosts are symmetric but not
transitive: chaining three of them around a velocity triangle leaves a
residual spatial rotation, extracted here together with the relative
velocity, acceleration and time-dilation factor any inertial frame
attributes to a moving point.
"""
from __future__ import annotations

import math

import numpy as np

from .config import TOL
from .errors import ConstraintViolation
from .minkowski import (
    METRIC,
    AbsoluteVelocity,
    FourVector,
    LorentzMap,
    _mdot,
    lorentz_dot,
    orthonormal_spatial_frame,
    wedge,
)


class Boost(LorentzMap):
    """Lorentz boost carrying frame ``u_from`` onto frame ``u_to``."""

    def __init__(self, matrix, u_to: AbsoluteVelocity, u_from: AbsoluteVelocity,
                 tol: float | None = None):
        super().__init__(matrix)
        tol = TOL.constraint if tol is None else tol
        if not self.is_lorentz(tol):
            raise ConstraintViolation("boost matrix does not preserve the Lorentz form")
        if float(np.max(np.abs(self.matrix @ u_from.components - u_to.components))) > tol:
            raise ConstraintViolation("boost does not map u_from to u_to")
        self.u_to = u_to
        self.u_from = u_from


class SpatialRotation(LorentzMap):
    """Lorentz map fixing a velocity ``u`` and rotating its space vectors."""

    def __init__(self, matrix, u: AbsoluteVelocity, tol: float | None = None):
        super().__init__(matrix)
        tol = TOL.constraint if tol is None else tol
        if float(np.max(np.abs(self.matrix @ u.components - u.components))) > tol:
            raise ConstraintViolation("rotation does not fix its velocity")
        self.u = u
        r = self.restriction()
        if float(np.max(np.abs(r.T @ r - np.eye(3)))) > tol:
            raise ConstraintViolation("restriction to the spatial subspace is not orthogonal")
        if abs(float(np.linalg.det(r)) - 1.0) > tol:
            raise ConstraintViolation("restriction must have determinant +1")

    def restriction(self, frame=None) -> np.ndarray:
        """3x3 matrix of the map on the space vectors of ``u``.

        Uses the canonical orthonormal frame unless one is supplied.
        """
        f = orthonormal_spatial_frame(self.u) if frame is None else frame
        cols = [self.matrix @ fj.components for fj in f]
        return np.array([[float(_mdot(fi.components, c)) for c in cols] for fi in f])


def boost(u_to: AbsoluteVelocity, u_from: AbsoluteVelocity) -> Boost:
    """Boost mapping ``u_from`` to ``u_to``.

    boost(u, u) is the identity and boost(u, u') inverts boost(u', u).
    """
    d = lorentz_dot(u_to, u_from)
    # future-directed velocities always satisfy u_to.u_from <= -1
    assert d < 0.0, "velocities must be future directed"
    s = u_to.components + u_from.components
    m = (
        np.eye(4)
        + np.outer(s, METRIC @ s) / (1.0 - d)
        - 2.0 * np.outer(u_to.components, METRIC @ u_from.components)
    )
    return Boost(m, u_to, u_from)


def gamma_factor(u: AbsoluteVelocity, rdot: AbsoluteVelocity) -> float:
    """Relativistic factor -u.rdot = 1/sqrt(1 - |relative velocity|^2)."""
    return -lorentz_dot(u, rdot)


def relative_velocity(u: AbsoluteVelocity, rdot: AbsoluteVelocity) -> FourVector:
    """Velocity of a point with four-velocity ``rdot`` as seen by frame ``u``.

    Lies in the space vectors of ``u`` and has magnitude below 1.
    """
    g = gamma_factor(u, rdot)
    return FourVector(rdot.components / g - u.components)


def relative_acceleration(
    u: AbsoluteVelocity,
    rdot: AbsoluteVelocity,
    rddot: FourVector,
    tol: float | None = None,
) -> FourVector:
    """Acceleration of a point as seen by frame ``u``.

    ``rddot`` is the proper acceleration, required to be orthogonal to
    ``rdot``; the result lies in the space vectors of ``u``.
    """
    tol = TOL.constraint if tol is None else tol
    ortho = lorentz_dot(rdot, rddot)
    scale = max(1.0, float(np.max(np.abs(rddot.components))))
    if abs(ortho) > tol * scale:
        raise ConstraintViolation(
            f"acceleration must be orthogonal to velocity, got rdot.rddot = {ortho}"
        )
    g = gamma_factor(u, rdot)
    inner = rddot.components + rdot.components * (lorentz_dot(u, rddot) / g)
    return FourVector(inner / (g * g))


def thomas_rotation_discrete(
    u: AbsoluteVelocity,
    u1: AbsoluteVelocity,
    u2: AbsoluteVelocity,
    tol: float = 1e-10,
) -> SpatialRotation:
    """Residual rotation of the boost chain u -> u1 -> u2 -> u.

    The identity exactly when u, u1, u2 are coplanar; otherwise a genuine
    rotation of the space vectors of ``u``.
    """
    m = boost(u, u2).matrix @ boost(u2, u1).matrix @ boost(u1, u).matrix
    return SpatialRotation(m, u, tol=tol)


def _canonical_axis_sign(a: np.ndarray) -> np.ndarray:
    # sign convention: first non-negligible component positive
    idx = int(np.nonzero(np.abs(a) > 1e-9)[0][0])
    return -a if a[idx] < 0.0 else a


def rotation_angle_axis(
    rotation: SpatialRotation,
) -> tuple[float, FourVector | None]:
    """Angle in (-pi, pi] and unit axis of a spatial rotation.

    The axis sign is canonicalized so that its first non-negligible
    component in the canonical frame is positive; a positive angle is a
    right-handed rotation about that axis.  Below ``TOL.degenerate_angle``
    the axis is ill-conditioned and ``None`` is returned instead.  The
    reported axis is not continuous in the rotation: it flips direction
    as the angle crosses zero.
    """
    frame = orthonormal_spatial_frame(rotation.u)
    m = rotation.restriction(frame)
    cos_t = min(1.0, max(-1.0, 0.5 * (float(np.trace(m)) - 1.0)))
    # the axial part has magnitude 2|sin(angle)|
    w = np.array([m[2, 1] - m[1, 2], m[0, 2] - m[2, 0], m[1, 0] - m[0, 1]])
    wnorm = float(np.linalg.norm(w))
    if 0.5 * wnorm < TOL.degenerate_angle and cos_t > 0.0:
        return math.asin(min(0.5 * wnorm, 1.0)), None
    if cos_t < -0.999:
        # near pi the axial part vanishes; use the eigenvector route
        b = m + np.eye(3)
        col = int(np.argmax(np.sum(b * b, axis=0)))
        a = b[:, col]
        a = a / np.linalg.norm(a)
    else:
        a = w / wnorm
    a = _canonical_axis_sign(a)
    angle = math.atan2(0.5 * float(w @ a), cos_t)
    if angle <= -math.pi:
        angle = math.pi
    axis = frame[0] * a[0] + frame[1] * a[1] + frame[2] * a[2]
    return angle, axis


def coplanar(
    u: AbsoluteVelocity,
    u1: AbsoluteVelocity,
    u2: AbsoluteVelocity,
    tol: float | None = None,
) -> bool:
    """True when the three velocities span at most a 2-plane.

    Decided by the smallest singular value of the 4x3 component matrix
    relative to the largest; scale-invariant and robust for fast
    velocities.
    """
    tol = TOL.rank if tol is None else tol
    cols = np.column_stack([u.components, u1.components, u2.components])
    sv = np.linalg.svd(cols, compute_uv=False)
    return bool(sv[-1] < tol * sv[0])


def relative_velocities_collinear(
    u: AbsoluteVelocity,
    u1: AbsoluteVelocity,
    u2: AbsoluteVelocity,
    tol: float | None = None,
) -> bool:
    """Collinearity of the relative velocities of u1 and u2 in frame ``u``.

    Equivalent to :func:`coplanar` in exact arithmetic; the rank test is
    authoritative where the two disagree at tolerance edges.
    """
    tol = TOL.rank if tol is None else tol
    v1 = relative_velocity(u, u1)
    v2 = relative_velocity(u, u2)
    n1, n2 = v1.norm(), v2.norm()
    if n1 < tol or n2 < tol:
        return True
    span = float(np.max(np.abs(wedge(v1, v2).matrix)))
    return span <= tol * n1 * n2
