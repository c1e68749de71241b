"""Finite subgroups of SU(2), SL(2,C)-realizable outer automorphisms, and
the deformation-space descriptors for spherical quotients.

Groups are built as exact quaternion groups over Q(sqrt2, sqrt3, sqrt5);
the intertwiner search for Out_0 runs in floating point with a hard
numerical gap (nullspace singular value below 1e-9 versus above 1e-6).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .groups import (
    FiniteGroupTable,
    GroupMap,
    automorphism_group,
    group_closure,
    inner_automorphisms,
    outer_classes,
)
from .numberfield import HALF, Q235, SQRT2, SQRT5
from .quaternions import (
    QUAT_I,
    QUAT_J,
    ExactQuaternion,
    exact_halfturn,
)

_EXACT_DENOMS = {1, 2, 3, 4, 6}  # n with cos(pi/n), sin(pi/n) in the field


@dataclass(frozen=True)
class SubgroupSpec:
    """One of Cm(m), Dstar(4n), Tstar, Ostar, Istar with exact generators."""

    tag: str
    order: int
    generators: tuple

    @classmethod
    def cyclic(cls, m: int) -> "SubgroupSpec":
        if m < 1:
            raise ValueError("cyclic order must be >= 1")
        # x = cos(2 pi / m) + i sin(2 pi / m): exact when both values lie
        # in Q(sqrt2, sqrt3, sqrt5)
        try:
            x = exact_halfturn(2, m, "i")
        except ValueError as exc:
            raise ValueError(
                f"C_{m} generator is not exact over Q(sqrt2,sqrt3,sqrt5)"
            ) from exc
        return cls(tag=f"C{m}", order=m, generators=(x,))

    @classmethod
    def binary_dihedral(cls, four_n: int) -> "SubgroupSpec":
        if four_n % 4 != 0 or four_n < 8:
            raise ValueError("binary dihedral order must be 4n with n >= 2")
        n = four_n // 4
        if n == 2:
            return cls.quaternion_q8()
        if n not in _EXACT_DENOMS:
            raise ValueError(
                f"Dstar({four_n}) generator cos(pi/{n}) + j sin(pi/{n}) is "
                "not exact over Q(sqrt2,sqrt3,sqrt5)"
            )
        y = exact_halfturn(1, n, "j")
        return cls(tag=f"Dstar{four_n}", order=four_n, generators=(QUAT_I, y))

    @classmethod
    def quaternion_q8(cls) -> "SubgroupSpec":
        return cls(tag="Q8", order=8, generators=(QUAT_I, QUAT_J))

    @classmethod
    def binary_tetrahedral(cls) -> "SubgroupSpec":
        z = ExactQuaternion(
            Fraction(-1, 2), Fraction(-1, 2), Fraction(-1, 2), Fraction(-1, 2)
        )
        return cls(tag="Tstar", order=24, generators=(QUAT_I, QUAT_J, z))

    @classmethod
    def binary_octahedral(cls) -> "SubgroupSpec":
        z = ExactQuaternion(
            Fraction(-1, 2), Fraction(-1, 2), Fraction(-1, 2), Fraction(-1, 2)
        )
        w = ExactQuaternion(0, HALF * SQRT2, 0, -(HALF * SQRT2))  # (i - k)/sqrt2
        return cls(
            tag="Ostar", order=48, generators=(QUAT_I, QUAT_J, z, w)
        )

    @classmethod
    def binary_icosahedral(cls) -> "SubgroupSpec":
        phi = (Q235.of(1) + SQRT5) * HALF
        phi_inv = (SQRT5 - Q235.of(1)) * HALF
        b = ExactQuaternion(phi * HALF, phi_inv * HALF, HALF, 0)
        return cls(tag="Istar", order=120, generators=(QUAT_I, b))

    @classmethod
    def from_name(cls, name: str) -> "SubgroupSpec":
        name = name.strip()
        if name in ("Q8", "D*8", "Dstar8"):
            return cls.quaternion_q8()
        if name in ("Tstar", "T*"):
            return cls.binary_tetrahedral()
        if name in ("Ostar", "O*"):
            return cls.binary_octahedral()
        if name in ("Istar", "I*"):
            return cls.binary_icosahedral()
        for prefix in ("Dstar", "D*"):
            if name.startswith(prefix):
                return cls.binary_dihedral(int(name[len(prefix):]))
        if name.startswith("C"):
            return cls.cyclic(int(name[1:]))
        raise ValueError(f"unknown subgroup name {name!r}")


def build_group(spec: SubgroupSpec) -> FiniteGroupTable:
    table = group_closure(spec.generators, cap=max(2 * spec.order, 256))
    if table.order != spec.order:
        raise ValueError(
            f"{spec.tag}: closure produced order {table.order}, expected {spec.order}"
        )
    return table


def su2_matrices(table: FiniteGroupTable) -> np.ndarray:
    """The defining representation: (order, 2, 2) complex array."""
    return np.stack([q.to_su2() for q in table.elements])


@dataclass(frozen=True)
class IntertwinerResult:
    dimension: int
    matrix: np.ndarray | None
    realizable: bool
    residual: float
    smallest_gap: float


def intertwiner(table: FiniteGroupTable, theta: GroupMap,
                rho: np.ndarray | None = None) -> IntertwinerResult:
    """Solve phi rho(u) = rho(theta(u)) phi over 2x2 complex matrices.

    Stacks the linear system over a generating set; Schur's lemma gives
    nullspace dimension 0 or 1 for these irreducible representations.
    """
    if rho is None:
        rho = su2_matrices(table)
    gens = table.generator_indices
    blocks = []
    eye = np.eye(2)
    for s in gens:
        a = rho[theta(s)]
        b = rho[s]
        # phi b - a phi = 0  <->  (kron(I, b^T) - kron(a, I)) vec(phi) = 0
        blocks.append(np.kron(b.T, eye) - np.kron(eye, a))
    system = np.vstack(blocks)
    _, sing, vh = np.linalg.svd(system)
    null_dim = int(np.sum(sing < 1e-9))
    gap = float(sing[-1])
    if null_dim == 0:
        return IntertwinerResult(dimension=0, matrix=None, realizable=False,
                                 residual=math.inf, smallest_gap=gap)
    if null_dim > 1:
        raise RuntimeError("nullspace dimension exceeds 1; representation "
                           "not irreducible?")
    phi = np.reshape(np.conj(vh[-1]), (2, 2), order="F")
    det = np.linalg.det(phi)
    if abs(det) < 1e-6:
        return IntertwinerResult(dimension=1, matrix=None, realizable=False,
                                 residual=math.inf, smallest_gap=gap)
    phi = phi / np.sqrt(det)
    residual = max(
        float(np.max(np.abs(phi @ rho[u] - rho[theta(u)] @ phi)))
        for u in range(table.order)
    )
    return IntertwinerResult(dimension=1, matrix=phi, realizable=True,
                             residual=residual, smallest_gap=gap)


@dataclass(frozen=True)
class Out0Result:
    tag: str
    order: int
    out_order: int
    out0_order: int
    structure: str
    witnesses: tuple
    gaps: tuple

    def to_json(self):
        return {
            "group": self.tag,
            "order": self.order,
            "out": self.out_order,
            "out0": self.out0_order,
            "structure": self.structure,
            "witnesses": [
                [[x.real, x.imag] for x in w.flatten()] for w in self.witnesses
            ],
        }


_STRUCTURE_BY_ORDER = {1: "1", 2: "C2", 6: "S3"}


def out0(spec: SubgroupSpec) -> Out0Result:
    """Out and Out_0 via automorphism enumeration and intertwiner search."""
    table = build_group(spec)
    if _is_abelian(table):
        raise ValueError("Out_0 analysis covers non-abelian subgroups only; "
                         "lens spaces use the descriptor route")
    auts = automorphism_group(table)
    classes = outer_classes(table, auts)
    rho = su2_matrices(table)
    witnesses = []
    gaps = []
    realizable = []
    for theta in classes:
        res = intertwiner(table, theta, rho)
        gaps.append(res.smallest_gap)
        if res.realizable:
            if res.residual > 1e-9:
                raise RuntimeError(f"witness residual {res.residual} too large")
            realizable.append(theta)
            witnesses.append(res.matrix)
        else:
            if res.smallest_gap < 1e-6 and res.dimension == 0:
                raise RuntimeError("no clear numerical gap in the intertwiner "
                                   "system")
    _check_out0_subgroup(table, classes, realizable)
    return Out0Result(
        tag=spec.tag,
        order=table.order,
        out_order=len(classes),
        out0_order=len(realizable),
        structure=_STRUCTURE_BY_ORDER.get(len(realizable), f"order {len(realizable)}"),
        witnesses=tuple(witnesses),
        gaps=tuple(gaps),
    )


def _is_abelian(table: FiniteGroupTable) -> bool:
    n = table.order
    return all(
        table.mul[i][j] == table.mul[j][i] for i in range(n) for j in range(i + 1, n)
    )


def _class_key(table, inner, images):
    """Canonical representative of the Inn-coset of an automorphism."""
    return min(tuple(images[x] for x in m.images) for m in inner)


def _check_out0_subgroup(table, classes, realizable):
    """The realizable classes must be closed under composition."""
    inner = inner_automorphisms(table)
    keys = {_class_key(table, inner, th.images) for th in realizable}
    for t1 in realizable:
        for t2 in realizable:
            comp = tuple(t1.images[x] for x in t2.images)
            if _class_key(table, inner, comp) not in keys:
                raise RuntimeError("realizable outer classes are not closed "
                                   "under composition")


def teichmuller_count(spec: SubgroupSpec) -> dict:
    """|T(M)| = |Lambda| / |Out_0(Gamma)|, symbolic in |Lambda|."""
    result = out0(spec)
    d = result.out0_order
    return {
        "group": spec.tag,
        "denominator": d,
        "count": "|Lambda|" if d == 1 else f"|Lambda|/{d}",
    }


# --- lens spaces -----------------------------------------------------------


@dataclass(frozen=True)
class LensModuli:
    """Moduli of L(m, m-1): the slab component and the discrete component."""

    m: int

    def slab_member(self, a: complex) -> bool:
        return 0.0 < a.real < 1.0

    def discrete_member(self, n: int) -> bool:
        return n >= 1 and (n + 1) % self.m == 0

    def describe(self):
        return {
            "m": self.m,
            "components": [
                "M1 = {0 < Re(a) < 1} / (a ~ 1-a)",
                f"M2 = {{n >= 1 : n = -1 mod {self.m}}}",
            ],
        }


def lens_moduli(m: int) -> LensModuli:
    if m < 1:
        raise ValueError("m must be >= 1")
    return LensModuli(m=m)


def m2_member(m: int, n: int) -> bool:
    return lens_moduli(m).discrete_member(n)


def lens_teichmuller(m: int) -> dict:
    """Theorem-level descriptor: component list of T(L(m, m-1))."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if m <= 2:
        comps = ["M1", "M1", "M2", "M2"]
    else:
        comps = ["M1~ (unquotiented slab)", "M2", "M2"]
    return {"m": m, "components": comps}


def moduli_map_a(a: complex) -> complex:
    """The biholomorphism [a] -> a(1-a) of the slab modulo a ~ 1-a.

    The image lands in {x + iy : x >= y^2}.
    """
    a = complex(a)
    if not (0.0 < a.real < 1.0):
        raise ValueError("need 0 < Re(a) < 1")
    w = a * (1.0 - a)
    assert w.real >= w.imag**2 - 1e-12
    return w
