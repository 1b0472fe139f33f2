"""Minkowski vector space with signature (-,+,+,+) in natural units (c = 1).

Conventions fixed here and assumed by every other module:

* the basis (e0, e1, e2, e3) is orthonormal, e0 timelike, e1..e3 spacelike,
  and is declared positively oriented;
* the Lorentz product of x and y is  -x0*y0 + x1*y1 + x2*y2 + x3*y3;
* four-velocities square to -1 and have a positive time component;
* time and length share one scalar unit, so velocities are dimensionless
  and spatial speeds are bounded by 1.

Tensor conventions:  (a (x) b) x = a (b . x)  and the wedge map acts as
(x ^ y) z = x (y . z) - y (x . z), all dots being Lorentz products.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.linalg import expm

from .config import TOL
from .errors import ConstraintViolation

#: Metric matrix of the Lorentz form in the fixed basis.
METRIC = np.diag([-1.0, 1.0, 1.0, 1.0])
METRIC.setflags(write=False)


def _frozen(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=float)
    out.setflags(write=False)
    return out


class FourVector:
    """Spacetime vector, stored as four real components in the fixed basis."""

    __slots__ = ("components",)

    def __init__(self, components):
        arr = np.asarray(components, dtype=float)
        if arr.shape != (4,):
            raise ConstraintViolation(
                f"a four-vector needs exactly 4 components, got shape {arr.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise ConstraintViolation("four-vector components must be finite")
        self.components = _frozen(arr)

    def dot(self, other: "FourVector") -> float:
        return lorentz_dot(self, other)

    def norm(self) -> float:
        """Euclidean magnitude of a spacelike vector.

        The Lorentz square of a spacelike vector is non-negative; tiny
        negative values from roundoff are clamped to zero, genuinely
        timelike vectors are rejected.
        """
        sq = lorentz_dot(self, self)
        if sq < -TOL.constraint * max(1.0, float(np.max(np.abs(self.components))) ** 2):
            raise ConstraintViolation(f"norm of a timelike vector (square = {sq})")
        return math.sqrt(max(sq, 0.0))

    def __add__(self, other: "FourVector") -> "FourVector":
        return FourVector(self.components + other.components)

    def __sub__(self, other: "FourVector") -> "FourVector":
        return FourVector(self.components - other.components)

    def __neg__(self) -> "FourVector":
        return FourVector(-self.components)

    def __mul__(self, scalar: float) -> "FourVector":
        return FourVector(self.components * float(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar: float) -> "FourVector":
        return FourVector(self.components / float(scalar))

    def __repr__(self) -> str:
        c = ", ".join(format(v, ".6g") for v in self.components)
        return f"{type(self).__name__}({c})"


class AbsoluteVelocity(FourVector):
    """Future-directed four-velocity: u.u = -1 and positive time component."""

    __slots__ = ()

    def __init__(self, components, tol: float | None = None):
        super().__init__(components)
        tol = TOL.constraint if tol is None else tol
        sq = lorentz_dot(self, self)
        if abs(sq + 1.0) > tol:
            raise ConstraintViolation(f"four-velocity must square to -1, got {sq}")
        if self.components[0] <= 0.0:
            raise ConstraintViolation("four-velocity must be future directed")

    @classmethod
    def from_3velocity(cls, v3) -> "AbsoluteVelocity":
        """Four-velocity of a point moving with spatial velocity ``v3``
        relative to the base frame e0.  Requires |v3| < 1."""
        v3 = np.asarray(v3, dtype=float)
        if v3.shape != (3,):
            raise ConstraintViolation("3-velocity needs exactly 3 components")
        speed_sq = float(v3 @ v3)
        if speed_sq >= 1.0:
            raise ConstraintViolation(f"speed must be below 1, got |v| = {math.sqrt(speed_sq)}")
        gamma = 1.0 / math.sqrt(1.0 - speed_sq)
        return cls([gamma, gamma * v3[0], gamma * v3[1], gamma * v3[2]])

    @classmethod
    def rest(cls) -> "AbsoluteVelocity":
        """The base frame velocity e0."""
        return _REST


class LorentzMap:
    """Linear map on Minkowski space stored as a 4x4 real array.

    Composition is array multiplication; ``A(x)`` applies the map to a
    four-vector.  Scalar multiples, sums and negation are provided so that
    antisymmetric generators form the expected algebra.
    """

    def __init__(self, matrix):
        m = np.asarray(matrix, dtype=float)
        if m.shape != (4, 4):
            raise ConstraintViolation(f"a Lorentz map needs a 4x4 array, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ConstraintViolation("map entries must be finite")
        self.matrix = _frozen(m)

    @classmethod
    def identity(cls) -> "LorentzMap":
        return cls(np.eye(4))

    def __call__(self, x: FourVector) -> FourVector:
        return FourVector(self.matrix @ x.components)

    def __matmul__(self, other: "LorentzMap") -> "LorentzMap":
        return LorentzMap(self.matrix @ other.matrix)

    def __add__(self, other: "LorentzMap") -> "LorentzMap":
        return LorentzMap(self.matrix + other.matrix)

    def __sub__(self, other: "LorentzMap") -> "LorentzMap":
        return LorentzMap(self.matrix - other.matrix)

    def __neg__(self) -> "LorentzMap":
        return LorentzMap(-self.matrix)

    def __mul__(self, scalar: float) -> "LorentzMap":
        return LorentzMap(self.matrix * float(scalar))

    __rmul__ = __mul__

    def is_lorentz(self, tol: float | None = None) -> bool:
        """True when the map preserves the Lorentz form on the fixed basis."""
        tol = TOL.constraint if tol is None else tol
        residual = self.matrix.T @ METRIC @ self.matrix - METRIC
        return float(np.max(np.abs(residual))) <= tol

    def is_antisymmetric(self, tol: float | None = None) -> bool:
        """True when (Ax).y = -x.(Ay) on the fixed basis."""
        tol = TOL.constraint if tol is None else tol
        residual = METRIC @ self.matrix + self.matrix.T @ METRIC
        return float(np.max(np.abs(residual))) <= tol

    def lorentz_adjoint(self) -> "LorentzMap":
        """Adjoint with respect to the Lorentz form: (Ax).y = x.(A*y)."""
        return LorentzMap(METRIC @ self.matrix.T @ METRIC)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({np.array2string(self.matrix, precision=6)})"


def lorentz_dot(x: FourVector, y: FourVector) -> float:
    """Lorentz product -x0*y0 + x1*y1 + x2*y2 + x3*y3.

    The summation order is fixed, so the result is exactly symmetric in
    its arguments.
    """
    a, b = x.components, y.components
    return float(-a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3])


def _mdot(a: np.ndarray, b: np.ndarray) -> float:
    # raw-array Lorentz product, fast path for integrators
    return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]


def project_spatial(u: AbsoluteVelocity, x: FourVector) -> FourVector:
    """Project ``x`` onto the space vectors of the frame ``u``.

    Returns x + u (u.x), the component of x orthogonal to u; idempotent.
    """
    return FourVector(x.components + u.components * lorentz_dot(u, x))


def wedge(x: FourVector, y: FourVector) -> LorentzMap:
    """Antisymmetric map z -> x (y.z) - y (x.z).

    Generates rotations when x, y are spacelike and boosts when one of
    them is timelike.
    """
    a, b = x.components, y.components
    return LorentzMap(np.outer(a, METRIC @ b) - np.outer(b, METRIC @ a))


def exp_map(generator: LorentzMap, t: float = 1.0) -> LorentzMap:
    """Exponential e^(t A) of an antisymmetric map, a Lorentz transformation.

    Rejects generators that are not antisymmetric with respect to the
    Lorentz form, since only those exponentiate to form-preserving maps.
    """
    if not generator.is_antisymmetric():
        raise ConstraintViolation("exp_map needs an antisymmetric generator")
    return LorentzMap(expm(float(t) * generator.matrix))


def antisymmetric_magnitude(generator: LorentzMap, tol: float | None = None) -> float:
    """Rotation rate sqrt(1/2 Tr(A* A)) of a rotation-like antisymmetric map.

    Meaningful for generators acting as a rotation on a spacelike plane
    (zero elsewhere); rejects generators whose invariant is negative,
    i.e. boost-dominated ones.
    """
    tol = TOL.constraint if tol is None else tol
    m = generator.matrix
    sq = 0.5 * float(np.trace((METRIC @ m.T @ METRIC) @ m))
    scale = max(1.0, float(np.max(np.abs(m))) ** 2)
    if sq < -tol * scale:
        raise ConstraintViolation(f"generator is boost-like, squared magnitude {sq}")
    return math.sqrt(max(sq, 0.0))


def orthonormal_spatial_frame(
    u: AbsoluteVelocity,
) -> tuple[FourVector, FourVector, FourVector]:
    """Orthonormal basis (f1, f2, f3) of the space vectors of frame ``u``.

    Gram-Schmidt on the projections of e1, e2, e3; the projections are
    always independent because u is timelike.  The resulting basis makes
    (u, f1, f2, f3) positively oriented, and reduces to (e1, e2, e3) for
    the base frame.
    """
    frame: list[FourVector] = []
    for e in (E1, E2, E3):
        f = project_spatial(u, e)
        for g in frame:
            f = f - g * lorentz_dot(g, f)
        frame.append(f / f.norm())
    return frame[0], frame[1], frame[2]


E0 = FourVector([1.0, 0.0, 0.0, 0.0])
E1 = FourVector([0.0, 1.0, 0.0, 0.0])
E2 = FourVector([0.0, 0.0, 1.0, 0.0])
E3 = FourVector([0.0, 0.0, 0.0, 1.0])
ZERO = FourVector([0.0, 0.0, 0.0, 0.0])
BASIS = (E0, E1, E2, E3)

_REST = AbsoluteVelocity([1.0, 0.0, 0.0, 0.0])
