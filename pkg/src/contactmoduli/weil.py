"""A concrete genus-2 surface group and the lifted Gauss-Bonnet identity.

The group comes from the regular hyperbolic octagon with vertex angle
pi/4 (all eight vertices in one cycle, angle sum 2*pi).  Side pairings
follow the canonical pattern a b a^-1 b^-1 c d c^-1 d^-1, each pairing
being the unique orientation-preserving isometry matching the glued
oriented edges.  The surface relation [u1,v1][u2,v2] = 1 is verified
numerically; it is the construction's acceptance oracle.

The lifted identity: the product of commutators of preferred lifts is
the central shift by -2*pi*chi = +4*pi for genus 2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .halfplane import MobiusClass, Psl2Element, mobius_act
from .seifert import SeifertData, euler_number, matrix_c, raymond_vasquez
from .sl2tilde import (
    Sl2TildeElement,
    commutator,
    preferred_lift,
    sl2tilde_act,
    sl2tilde_mul,
)

TWO_PI = 2.0 * math.pi

# disk <-> half-plane via the Cayley transform w = (z - i)/(z + i)


def _disk_to_halfplane(m):
    """SU(1,1)-like disk isometry (2x2 complex) -> Psl2Element on H^2."""
    import numpy as np

    cayley = np.array([[1.0, -1j], [1.0, 1j]])
    mm = np.array([[m[0], m[1]], [m[2], m[3]]])
    a = np.linalg.solve(cayley, mm @ cayley)
    if np.max(np.abs(a.imag)) > 1e-9 * np.max(np.abs(a)):
        raise ValueError("conjugated matrix is not real")
    return Psl2Element.from_entries(a[0, 0].real, a[0, 1].real,
                                    a[1, 0].real, a[1, 1].real)


def _disk_mobius(m, w):
    a, b, c, d = m
    return (a * w + b) / (c * w + d)


def _disk_translation_to(w):
    """Disk isometry sending 0 -> w."""
    return (1.0 + 0j, w, w.conjugate(), 1.0 + 0j)


def _disk_mul(m, n):
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _disk_inv(m):
    a, b, c, d = m
    det = a * d - b * c
    return (d / det, -b / det, -c / det, a / det)


def _pairing_isometry(p, q, p2, q2):
    """The orientation-preserving disk isometry with p -> p2, q -> q2.

    Exists uniquely because the hyperbolic distances d(p,q) and d(p2,q2)
    agree for glued octagon sides.
    """
    t1 = _disk_inv(_disk_translation_to(p))     # p -> 0
    t2 = _disk_inv(_disk_translation_to(p2))    # p2 -> 0
    q_at = _disk_mobius(t1, q)
    q2_at = _disk_mobius(t2, q2)
    if abs(abs(q_at) - abs(q2_at)) > 1e-12:
        raise ValueError("side lengths differ; no pairing isometry")
    phi = cmath.phase(q2_at) - cmath.phase(q_at)
    rot = (cmath.exp(0.5j * phi), 0j, 0j, cmath.exp(-0.5j * phi))
    out = _disk_mul(_disk_inv(t2), _disk_mul(rot, t1))
    det = out[0] * out[3] - out[1] * out[2]
    s = 1.0 / cmath.sqrt(det)
    return tuple(x * s for x in out)


@dataclass(frozen=True)
class FuchsianGenus2:
    """Standard generators of the regular-octagon surface group."""

    u1: Psl2Element
    v1: Psl2Element
    u2: Psl2Element
    v2: Psl2Element

    def generators(self):
        return (self.u1, self.v1, self.u2, self.v2)

    def relation_residual(self) -> float:
        """max-entry distance of [u1,v1][u2,v2] from the identity."""
        w = _psl_commutator(self.u1, self.v1) @ _psl_commutator(self.u2, self.v2)
        return _identity_distance(w)

    def conjugated(self, m: Psl2Element) -> "FuchsianGenus2":
        mi = m.inverse()
        return FuchsianGenus2(
            *(m @ g @ mi for g in self.generators())
        )


def _psl_commutator(a, b):
    return a @ b @ a.inverse() @ b.inverse()


def _identity_distance(m: Psl2Element) -> float:
    return max(abs(m.a - 1), abs(m.b), abs(m.c), abs(m.d - 1))


def octagon_group() -> FuchsianGenus2:
    """Side pairings of the regular octagon with vertex angle pi/4.

    The circumradius R satisfies cosh R = cot^2(pi/8) = 3 + 2*sqrt(2).
    """
    cosh_r = 3.0 + 2.0 * math.sqrt(2.0)
    # Euclidean radius of the vertices in the Poincare disk
    # tanh(R/2) = sinh R / (cosh R + 1)
    rho = math.sqrt((cosh_r - 1.0) / (cosh_r + 1.0))
    verts = [rho * cmath.exp(1j * (2 * k + 1) * math.pi / 8.0) for k in range(8)]

    def side(k):
        return verts[k % 8], verts[(k + 1) % 8]

    # boundary word a b a^-1 b^-1 c d c^-1 d^-1 on sides 0..7:
    # the generator for label x maps the side carrying x^-1 onto the side
    # carrying x, matching the orientation of the glued edge.
    pairings = {}
    for label, s_pos, s_neg in (("a", 0, 2), ("b", 1, 3), ("c", 4, 6), ("d", 5, 7)):
        p, q = side(s_pos)          # edge traversed forward: V[s+] -> V[s+ + 1]
        q2, p2 = side(s_neg)        # edge traversed backward on the boundary
        pairings[label] = _pairing_isometry(p2, q2, p, q)

    gens = {}
    for label, m in pairings.items():
        gens[label] = _disk_to_halfplane(m)

    # the relation [u1,v1][u2,v2] = 1 holds with the b and d pairings
    # inverted, reflecting the edge orientations in the vertex labels
    grp = FuchsianGenus2(
        u1=gens["a"],
        v1=gens["b"].inverse(),
        u2=gens["c"],
        v2=gens["d"].inverse(),
    )
    resid = grp.relation_residual()
    if resid > 1e-9:
        raise RuntimeError(f"octagon relation fails: residual {resid}")
    for g in grp.generators():
        if g.classify() is not MobiusClass.HYPERBOLIC:
            raise RuntimeError("side pairing is not hyperbolic")
    return grp


@dataclass(frozen=True)
class LiftAssignment:
    """Lifts of the four generators plus the central lift of h."""

    lifts: tuple  # four Sl2TildeElement
    h_shift_turns: int  # rho(h) = central shift by 2*pi*r

    def commutator_product(self) -> Sl2TildeElement:
        c1 = commutator(self.lifts[0], self.lifts[1])
        c2 = commutator(self.lifts[2], self.lifts[3])
        return sl2tilde_mul(c1, c2)


def preferred_lifts(grp: FuchsianGenus2, r: int = 2) -> LiftAssignment:
    return LiftAssignment(
        lifts=tuple(preferred_lift(g) for g in grp.generators()),
        h_shift_turns=r,
    )


@dataclass(frozen=True)
class GaussBonnetReport:
    shift: float
    shift_over_2pi: float
    matrix_residual: float
    displacement_residual: float
    action_residual: float


def gauss_bonnet_lift_check(grp: FuchsianGenus2, samples=10, seed=0) -> GaussBonnetReport:
    """Product of preferred-lift commutators == central shift by 4*pi.

    For genus 2 without cone points, chi_orb = -2 and the product acts
    as (z, theta) -> (z, theta - 2*pi*chi_orb) = (z, theta + 4*pi).
    """
    assignment = preferred_lifts(grp)
    prod = assignment.commutator_product()
    mat_res = _identity_distance(prod.mat)
    disp_res = abs(prod.base_disp - 2.0 * TWO_PI)

    import random

    rng = random.Random(seed)
    act_res = 0.0
    for _ in range(samples):
        z = complex(rng.uniform(-2, 2), rng.uniform(0.2, 3.0))
        theta = rng.uniform(-10, 10)
        z2, t2 = sl2tilde_act(prod, z, theta)
        act_res = max(act_res, abs(z2 - z), abs(t2 - theta - 2.0 * TWO_PI))
    return GaussBonnetReport(
        shift=prod.base_disp,
        shift_over_2pi=prod.base_disp / TWO_PI,
        matrix_residual=mat_res,
        displacement_residual=disp_res,
        action_residual=act_res,
    )


def rho0_relation_check(grp: FuchsianGenus2, s: SeifertData) -> dict:
    """Check the commutator product equals rho0(h)^b = central 2*pi*r*b.

    Only the smooth genus-2 base (n = 0, g = 2) is realized honestly.
    """
    if s.n != 0 or s.g != 2:
        raise ValueError("honest Fuchsian verification covers n=0, g=2 only")
    cert = raymond_vasquez(s)
    if cert is None:
        raise ValueError("Seifert data admits no integral fibre index")
    report = gauss_bonnet_lift_check(grp)
    expected_turns = cert.r * s.b
    return {
        "r": cert.r,
        "b": s.b,
        "rb": expected_turns,
        "shift_over_2pi": report.shift_over_2pi,
        "matrix_residual": report.matrix_residual,
        "residual": abs(report.shift_over_2pi - expected_turns),
    }


def lift_uniqueness(s: SeifertData) -> dict:
    """Kernel of C x = 0 over Q decides uniqueness of the h, q_j lifts."""
    c, det = matrix_c(s)
    kernel_dim = c.rational_kernel_dim()
    e = euler_number(s)
    if e != 0:
        verdict = "unique lift of h and q_j" if kernel_dim == 0 else "inconsistent"
    else:
        verdict = "non-unique (e = 0 excluded upstream)"
    return {
        "det": det,
        "kernel_dim": kernel_dim,
        "euler_number": e,
        "verdict": verdict,
    }


def weil_fibre_action(w, lifts: LiftAssignment) -> LiftAssignment:
    """Shift the generator lifts by central 2*pi*w_i; free and transitive."""
    if len(w) != len(lifts.lifts):
        raise ValueError("need one integer per generator lift")
    shifted = tuple(
        sl2tilde_mul(g, Sl2TildeElement.central(int(k)))
        for g, k in zip(lifts.lifts, w)
    )
    return LiftAssignment(lifts=shifted, h_shift_turns=lifts.h_shift_turns)


def aut_action_on_lifts(c, lifts: LiftAssignment) -> LiftAssignment:
    """Compose generators with h^{c_i}: the fibre translation by r*c."""
    r = lifts.h_shift_turns
    return weil_fibre_action([r * int(k) for k in c], lifts)


def fibre_quotient_order(r: int, genus: int = 2) -> int:
    """Order of Z^{2g} / (r Z^{2g}): the covering degree r^{2g}."""
    return abs(r) ** (2 * genus)
