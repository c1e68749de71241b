"""The universal cover of PSL(2,R) with explicit branch bookkeeping.

An element is a sign-canonicalized matrix together with base_disp, the
continuous theta-displacement of its action at the base point i.  The
action on H^2 x R is

    (z, theta) -> (Az, theta + disp(z)),

where disp is the continuous continuation of -2*arg(c*w + d) along a
path from i to z, starting at base_disp.  Since c, d are real, c*w + d
never vanishes on the open upper half-plane, so the continuation is
path independent; straight segments between the endpoints are used.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .halfplane import MobiusClass, Psl2Element, elliptic_about, mobius_act

_BASE = 1j
_MAX_STEPS = 2**16
_DISP_TOL = 1e-9
TWO_PI = 2.0 * math.pi


def _arg_increment(c: float, d: float, w0: complex, w1: complex) -> float:
    """Continuous increment of arg(c*w + d) from w0 to w1 along the segment.

    Adaptive bisection keeps every step's principal-branch jump below
    pi/2, which pins the branch; hard cap 2**16 subdivisions.
    """
    if abs(c) < 1e-300:
        return 0.0

    def f(w):
        return c * w + d

    total = 0.0
    stack = [(w0, w1)]
    steps = 0
    while stack:
        a, b = stack.pop()
        delta = cmath.phase(f(b) / f(a))
        if abs(delta) < 0.5 * math.pi:
            total += delta
        else:
            steps += 1
            if steps > _MAX_STEPS:
                raise RuntimeError("argument continuation exceeded subdivision cap")
            mid = 0.5 * (a + b)
            stack.append((mid, b))
            stack.append((a, mid))
    return total


@dataclass(frozen=True)
class Sl2TildeElement:
    mat: Psl2Element
    base_disp: float

    def __post_init__(self):
        arg = -2.0 * cmath.phase(self.mat.c * _BASE + self.mat.d)
        residue = self.base_disp - arg
        k = round(residue / TWO_PI)
        if abs(residue - TWO_PI * k) > _DISP_TOL:
            raise ValueError(
                "base displacement is not a lift of -2*arg(c*i + d): "
                f"residual {residue - TWO_PI * k}"
            )

    @classmethod
    def identity(cls):
        return cls(Psl2Element.identity(), 0.0)

    @classmethod
    def central(cls, k: int):
        """The central element shifting theta by 2*pi*k."""
        return cls(Psl2Element.identity(), TWO_PI * k)

    def is_central(self, tol=1e-9):
        return self.mat.is_identity(tol)

    def central_shift(self, tol=1e-9):
        """The theta shift if central; raises otherwise."""
        if not self.is_central(tol):
            raise ValueError("element is not central")
        return self.base_disp


def theta_displacement(g: Sl2TildeElement, z: complex) -> float:
    """Continuous theta displacement of g at z, pinned by base_disp at i."""
    if z.imag <= 0:
        raise ValueError("point must lie in the upper half-plane")
    return g.base_disp - 2.0 * _arg_increment(g.mat.c, g.mat.d, _BASE, z)


def sl2tilde_act(g: Sl2TildeElement, z: complex, theta: float):
    return mobius_act(g.mat, z), theta + theta_displacement(g, z)


def sl2tilde_mul(g: Sl2TildeElement, h: Sl2TildeElement) -> Sl2TildeElement:
    """Product with the displacement cocycle disp_gh(i) = disp_g(h.i) + disp_h(i)."""
    mat = g.mat @ h.mat
    disp = theta_displacement(g, mobius_act(h.mat, _BASE)) + h.base_disp
    return Sl2TildeElement(mat, disp)


def sl2tilde_inv(g: Sl2TildeElement) -> Sl2TildeElement:
    # 0 = disp_{g^-1}(g.i) + disp_g(i) pins the branch of the inverse
    minv = g.mat.inverse()
    gi = mobius_act(g.mat, _BASE)
    disp = -g.base_disp + 2.0 * _arg_increment(minv.c, minv.d, _BASE, gi)
    return Sl2TildeElement(minv, disp)


def sl2tilde_pow(g: Sl2TildeElement, n: int) -> Sl2TildeElement:
    if n < 0:
        return sl2tilde_pow(sl2tilde_inv(g), -n)
    out = Sl2TildeElement.identity()
    for _ in range(n):
        out = sl2tilde_mul(out, g)
    return out


def commutator(g: Sl2TildeElement, h: Sl2TildeElement) -> Sl2TildeElement:
    return sl2tilde_mul(
        sl2tilde_mul(g, h), sl2tilde_mul(sl2tilde_inv(g), sl2tilde_inv(h))
    )


def _lift_along_path(mats) -> float:
    """base_disp of the endpoint of a matrix path starting at the identity.

    mats is a discrete sampling; within each step the principal-branch
    increment of arg(c(s)*i + d(s)) must stay below pi/2, refined here
    by inserting midpoint samples via linear matrix interpolation being
    unavailable -- callers must sample densely enough; a verification
    pass asserts the step condition.
    """
    total = 0.0
    prev = mats[0]
    for m in mats[1:]:
        w_prev = complex(prev.c * 1j + prev.d)
        w_cur = complex(m.c * 1j + m.d)
        # representative sign may flip between consecutive canonical
        # matrices; arg of w is only defined mod pi then.  Work with the
        # smallest equivalent jump mod pi.
        delta = cmath.phase(w_cur / w_prev)
        if delta > 0.5 * math.pi:
            delta -= math.pi
        elif delta < -0.5 * math.pi:
            delta += math.pi
        total += delta
        prev = m
    return -2.0 * total


def preferred_lift(mat: Psl2Element, elliptic_order: int | None = None,
                   steps: int = 256) -> Sl2TildeElement:
    """The distinguished lift of a hyperbolic or finite-order elliptic element.

    Hyperbolic: lift of the path A^s, s in [0,1], through elements with
    the same axis (real eigendecomposition).  Elliptic of order alpha,
    rotating by +2*pi/alpha: lift of the rotation path about the fixed
    point; its alpha-th power is the central 2*pi shift.
    """
    cls = mat.classify()
    if cls is MobiusClass.PARABOLIC:
        raise ValueError("parabolic elements have no preferred lift")

    if cls is MobiusClass.HYPERBOLIC:
        lam, p = mat.eigen_hyperbolic()
        (p00, p01), (p10, p11) = p
        det = p00 * p11 - p01 * p10
        q00, q01, q10, q11 = p11 / det, -p01 / det, -p10 / det, p00 / det
        path = []
        for k in range(steps + 1):
            s = k / steps
            ls = lam**s
            ms = lam**-s
            path.append(
                Psl2Element.from_entries(
                    p00 * ls * q00 + p01 * ms * q10,
                    p00 * ls * q01 + p01 * ms * q11,
                    p10 * ls * q00 + p11 * ms * q10,
                    p10 * ls * q01 + p11 * ms * q11,
                )
            )
        disp = _lift_along_path(path)
        return Sl2TildeElement(mat, _snap_to(mat, disp))

    if elliptic_order is None:
        raise ValueError("elliptic preferred lift needs the order alpha")
    alpha = int(elliptic_order)
    if alpha < 2:
        raise ValueError("elliptic order must be at least 2")
    mult = mat.rotation_multiplier()
    want = cmath.exp(2j * math.pi / alpha)
    if abs(mult - want) > 1e-8:
        raise ValueError(
            f"element does not rotate by +2*pi/{alpha}: multiplier {mult}"
        )
    z0 = mat.fixed_point()
    path = [
        elliptic_about(z0, (k / steps) * TWO_PI / alpha) for k in range(steps + 1)
    ]
    disp = _lift_along_path(path)
    return Sl2TildeElement(mat, _snap_to(mat, disp))


def _snap_to(mat: Psl2Element, disp: float) -> float:
    """Replace disp by the exact lift of -2*arg(c*i+d) in its 2*pi class.

    The path integration carries O(steps^-2) error; the true value is
    pinned to the discrete set arg + 2*pi*Z, so snapping removes the
    integration error entirely.
    """
    arg = -2.0 * cmath.phase(mat.c * _BASE + mat.d)
    k = round((disp - arg) / TWO_PI)
    snapped = arg + TWO_PI * k
    if abs(snapped - disp) > 0.2:
        raise RuntimeError("path sampling too coarse to pin the branch")
    return snapped


def project(g: Sl2TildeElement) -> Psl2Element:
    return g.mat
