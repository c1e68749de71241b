"""Quaternion arithmetic, exact and floating, and the SU(2) picture.

A quaternion a0 + a1*i + b0*j + b1*k corresponds to the SU(2) matrix

    [ a0 + i*a1    b0 + i*b1 ]
    [ -b0 + i*b1   a0 - i*a1 ]

Exact quaternions carry Q235 coordinates and are hashable, which is what
makes group closure over them robust.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .numberfield import Q235, _coerce as _field


def _ham(p, q):
    a0, a1, b0, b1 = p
    c0, c1, d0, d1 = q
    return (
        a0 * c0 - a1 * c1 - b0 * d0 - b1 * d1,
        a0 * c1 + a1 * c0 + b0 * d1 - b1 * d0,
        a0 * d0 - a1 * d1 + b0 * c0 + b1 * c1,
        a0 * d1 + a1 * d0 - b0 * c1 + b1 * c0,
    )


class ExactQuaternion:
    """Quaternion with coordinates in Q(sqrt2, sqrt3, sqrt5)."""

    __slots__ = ("c",)

    def __init__(self, a0, a1, b0, b1):
        self.c = (_field(a0), _field(a1), _field(b0), _field(b1))

    def __mul__(self, other):
        return ExactQuaternion(*_ham(self.c, other.c))

    def conjugate(self):
        a0, a1, b0, b1 = self.c
        return ExactQuaternion(a0, -a1, -b0, -b1)

    def inverse(self):
        # unit quaternions only, which is all the group code ever builds
        n = self.norm_sq()
        if n != Q235.of(1):
            raise ValueError("inverse implemented for unit quaternions only")
        return self.conjugate()

    def norm_sq(self):
        a0, a1, b0, b1 = self.c
        return a0 * a0 + a1 * a1 + b0 * b0 + b1 * b1

    def __eq__(self, other):
        return isinstance(other, ExactQuaternion) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __neg__(self):
        return ExactQuaternion(*(-x for x in self.c))

    def sort_key(self):
        return tuple(x.co for x in self.c)

    def to_float(self):
        return UnitQuaternion(*(float(x) for x in self.c))

    def to_su2(self):
        return self.to_float().to_su2()

    def __repr__(self):
        return "ExactQuaternion({}, {}, {}, {})".format(*self.c)


QUAT_ONE = ExactQuaternion(1, 0, 0, 0)
QUAT_I = ExactQuaternion(0, 1, 0, 0)
QUAT_J = ExactQuaternion(0, 0, 1, 0)
QUAT_K = ExactQuaternion(0, 0, 0, 1)


@dataclass(frozen=True)
class UnitQuaternion:
    """Floating-point quaternion, expected to be close to unit norm."""

    a0: float
    a1: float
    b0: float
    b1: float

    def __post_init__(self):
        n = self.a0**2 + self.a1**2 + self.b0**2 + self.b1**2
        if abs(n - 1.0) > 1e-12:
            raise ValueError(f"quaternion norm {n} deviates from 1 beyond 1e-12")

    def components(self):
        return (self.a0, self.a1, self.b0, self.b1)

    def to_su2(self):
        a0, a1, b0, b1 = self.components()
        return np.array(
            [[a0 + 1j * a1, b0 + 1j * b1], [-b0 + 1j * b1, a0 - 1j * a1]],
            dtype=complex,
        )


def quat_mul(p: UnitQuaternion, q: UnitQuaternion) -> UnitQuaternion:
    return UnitQuaternion(*_ham(p.components(), q.components()))


def quat_conj(q: UnitQuaternion) -> UnitQuaternion:
    return UnitQuaternion(q.a0, -q.a1, -q.b0, -q.b1)


def quat_to_su2(q: UnitQuaternion) -> np.ndarray:
    return q.to_su2()


def quat_from_halfturn(angle: float, axis=(1.0, 0.0, 0.0)) -> UnitQuaternion:
    """cos(angle) + sin(angle) * (unit imaginary axis)."""
    ax = np.asarray(axis, dtype=float)
    ax = ax / np.linalg.norm(ax)
    s = math.sin(angle)
    return UnitQuaternion(math.cos(angle), s * ax[0], s * ax[1], s * ax[2])


def exact_halfturn(num: int, den: int, axis: str) -> ExactQuaternion:
    """cos(pi*num/den) + sin(pi*num/den)*axis for angles exact in Q235.

    Supported denominators: those whose cosine and sine both lie in
    Q(sqrt2, sqrt3, sqrt5), i.e. multiples of pi/2, pi/3, pi/4, pi/6.
    """
    table = {
        Fraction(0): (Q235.of(1), Q235.of(0)),
        Fraction(1, 6): (Q235.of(Fraction(1, 2), 3), Q235.of(Fraction(1, 2))),
        Fraction(1, 4): (Q235.of(Fraction(1, 2), 2), Q235.of(Fraction(1, 2), 2)),
        Fraction(1, 3): (Q235.of(Fraction(1, 2)), Q235.of(Fraction(1, 2), 3)),
        Fraction(1, 2): (Q235.of(0), Q235.of(1)),
        Fraction(2, 3): (Q235.of(Fraction(-1, 2)), Q235.of(Fraction(1, 2), 3)),
        Fraction(3, 4): (Q235.of(Fraction(-1, 2), 2), Q235.of(Fraction(1, 2), 2)),
        Fraction(5, 6): (Q235.of(Fraction(-1, 2), 3), Q235.of(Fraction(1, 2))),
        Fraction(1): (Q235.of(-1), Q235.of(0)),
    }
    frac = Fraction(num, den) % 2
    if frac > 1:
        cos, sin = table.get(2 - frac, (None, None))
        if cos is None:
            raise ValueError(f"angle pi*{num}/{den} not exact in Q(sqrt2,sqrt3,sqrt5)")
        sin = -sin
    else:
        if frac not in table:
            raise ValueError(f"angle pi*{num}/{den} not exact in Q(sqrt2,sqrt3,sqrt5)")
        cos, sin = table[frac]
    units = {"i": (1, 0, 0), "j": (0, 1, 0), "k": (0, 0, 1)}
    ux, uy, uz = units[axis]
    return ExactQuaternion(cos, sin * ux if ux else 0, sin * uy if uy else 0, sin * uz if uz else 0)
