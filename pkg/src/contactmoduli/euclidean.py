"""The universal cover of the euclidean group: R^2 translations with an
unreduced rotation angle.

Multiplication rotates the right factor's translational part by the left
factor's angle and adds angles; the angle is deliberately NOT reduced
mod 2*pi, which is the whole point of working in the cover.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class EuclideanMotion:
    tx: float
    ty: float
    theta: float

    @classmethod
    def identity(cls):
        return cls(0.0, 0.0, 0.0)

    def translation(self):
        return (self.tx, self.ty)

    def translation_complex(self):
        return complex(self.tx, self.ty)

    def is_translation(self, tol=1e-12):
        return abs(self.theta - 2 * math.pi * round(self.theta / (2 * math.pi))) < tol


def e2_mul(g: EuclideanMotion, h: EuclideanMotion) -> EuclideanMotion:
    c, s = math.cos(g.theta), math.sin(g.theta)
    return EuclideanMotion(
        tx=c * h.tx - s * h.ty + g.tx,
        ty=s * h.tx + c * h.ty + g.ty,
        theta=g.theta + h.theta,
    )


def e2_inv(g: EuclideanMotion) -> EuclideanMotion:
    c, s = math.cos(-g.theta), math.sin(-g.theta)
    return EuclideanMotion(
        tx=-(c * g.tx - s * g.ty),
        ty=-(s * g.tx + c * g.ty),
        theta=-g.theta,
    )


def e2_scale(c: float, g: EuclideanMotion) -> EuclideanMotion:
    """Scale the translational part by c > 0 (a group automorphism)."""
    if c <= 0:
        raise ValueError("scaling factor must be positive")
    return EuclideanMotion(c * g.tx, c * g.ty, g.theta)


def e2_act(g: EuclideanMotion, x: float, y: float, theta: float):
    """Left action on R^3 = (plane point, angle coordinate)."""
    c, s = math.cos(g.theta), math.sin(g.theta)
    return (c * x - s * y + g.tx, s * x + c * y + g.ty, g.theta + theta)
