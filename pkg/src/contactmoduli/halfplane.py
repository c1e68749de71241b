"""PSL(2,R) acting on the upper half-plane by fractional linear maps."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum


class MobiusClass(Enum):
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


_SIGN_EPS = 1e-12
_TRACE_EPS = 1e-9


@dataclass(frozen=True)
class Psl2Element:
    """Sign-canonicalized real matrix with det 1.

    Canonical representative: the first entry of (a, b, c, d) larger than
    1e-12 in magnitude is positive.
    """

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        # evaluating a*d - b*c itself carries scale^2 * eps rounding, so
        # the unit-determinant check is relative to the entry scale
        scale = max(1.0, max(abs(self.a), abs(self.b), abs(self.c), abs(self.d)) ** 2)
        if abs(det - 1.0) > 1e-12 * scale:
            raise ValueError(f"determinant {det} deviates from 1 beyond tolerance")

    @classmethod
    def from_entries(cls, a, b, c, d):
        """Normalize determinant (must be positive) and canonicalize sign."""
        det = a * d - b * c
        if det <= 0:
            raise ValueError("entries must have positive determinant")
        for _ in range(2):
            s = 1.0 / math.sqrt(det)
            a, b, c, d = a * s, b * s, c * s, d * s
            det = a * d - b * c
        for x in (a, b, c, d):
            if abs(x) > _SIGN_EPS:
                if x < 0:
                    a, b, c, d = -a, -b, -c, -d
                break
        return cls(a, b, c, d)

    @classmethod
    def identity(cls):
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def rotation(cls, t):
        """The paper-normalized A_t, rotating positively by 2t about i."""
        return cls.from_entries(math.cos(t), math.sin(t), -math.sin(t), math.cos(t))

    @classmethod
    def translation_to(cls, z):
        """Affine map i -> z: w -> y*w + x, an element with c = 0."""
        if z.imag <= 0:
            raise ValueError("target must lie in the upper half-plane")
        s = math.sqrt(z.imag)
        return cls.from_entries(s, z.real / s, 0.0, 1.0 / s)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __matmul__(self, other):
        return Psl2Element.from_entries(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self):
        return Psl2Element.from_entries(self.d, -self.b, -self.c, self.a)

    def trace(self):
        return self.a + self.d

    def classify(self) -> MobiusClass:
        t = abs(self.trace())
        if t < 2.0 - _TRACE_EPS:
            return MobiusClass.ELLIPTIC
        if t > 2.0 + _TRACE_EPS:
            return MobiusClass.HYPERBOLIC
        return MobiusClass.PARABOLIC

    def is_identity(self, tol=1e-9):
        return (
            abs(self.a - 1) < tol
            and abs(self.b) < tol
            and abs(self.c) < tol
            and abs(self.d - 1) < tol
        )

    def fixed_point(self):
        """The fixed point in the open upper half-plane (elliptic only)."""
        if self.classify() is not MobiusClass.ELLIPTIC:
            raise ValueError("only elliptic elements fix a point of H^2")
        # c z^2 + (d - a) z - b = 0; elliptic forces c != 0
        disc = (self.d - self.a) ** 2 + 4 * self.b * self.c
        root = cmath.sqrt(complex(disc))
        z1 = ((self.a - self.d) + root) / (2 * self.c)
        z2 = ((self.a - self.d) - root) / (2 * self.c)
        return z1 if z1.imag > 0 else z2

    def rotation_multiplier(self):
        """Derivative 1/(c z0 + d)^2 at the elliptic fixed point."""
        z0 = self.fixed_point()
        return 1.0 / (self.c * z0 + self.d) ** 2

    def eigen_hyperbolic(self):
        """(lam, P) with self = P diag(lam, 1/lam) P^-1, lam > 1, P real."""
        if self.classify() is not MobiusClass.HYPERBOLIC:
            raise ValueError("eigendecomposition of the axis needs |trace| > 2")
        a, b, c, d = self.entries()
        tr = a + d
        s = 1.0 if tr >= 0 else -1.0
        a, b, c, d, tr = s * a, s * b, s * c, s * d, s * tr
        disc = math.sqrt(tr * tr - 4.0)
        lam = (tr + disc) / 2.0
        mu = (tr - disc) / 2.0

        def eigvec(l):
            # (a - l) x + b y = 0 ; c x + (d - l) y = 0
            v = (b, l - a)
            w = (l - d, c)
            if math.hypot(*w) > math.hypot(*v):
                v = w
            n = math.hypot(*v)
            return (v[0] / n, v[1] / n)

        v1 = eigvec(lam)
        v2 = eigvec(mu)
        det = v1[0] * v2[1] - v2[0] * v1[1]
        if abs(det) < 1e-14:
            raise ValueError("degenerate eigenvectors")
        return lam, ((v1[0], v2[0]), (v1[1], v2[1]))


def mobius_act(g: Psl2Element, z: complex) -> complex:
    if z.imag <= 0:
        raise ValueError("point must lie in the upper half-plane")
    return (g.a * z + g.b) / (g.c * z + g.d)


def elliptic_about(z0: complex, angle: float) -> Psl2Element:
    """Rotation by `angle` (positively) about z0 in H^2."""
    b = Psl2Element.translation_to(z0)
    return b @ Psl2Element.rotation(angle / 2.0) @ b.inverse()
