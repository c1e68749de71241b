"""Torus bundles over the circle and the moduli of flat contact circles.

Covers the five periodic monodromies, rotational-part rigidity, the
reduction of Z^3-representations into the euclidean cover to standard
form (r, tau, z), reduction into the modular fundamental domain, the
rank-4 universal lattice, and lattice symmetry detection.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .intlinalg import AbelianGroup, IntMatrix, abelianization
from .seifert import Presentation

TWO_PI = 2.0 * math.pi

_TABLE1 = {
    1: ((1, 0), (0, 1)),
    2: ((-1, 0), (0, -1)),
    3: ((0, -1), (1, -1)),
    4: ((0, -1), (1, 0)),
    6: ((0, -1), (1, 1)),
}

_TABLE1_TAU = {
    1: ("any", None),
    2: ("any", None),
    3: ("exp(2*pi*i/3)", cmath.exp(2j * math.pi / 3)),
    4: ("i", 1j),
    6: ("exp(2*pi*i/6)", cmath.exp(1j * math.pi / 3)),
}

_TABLE1_H1 = {
    1: AbelianGroup(rank=3, torsion=()),
    2: AbelianGroup(rank=1, torsion=(2, 2)),
    3: AbelianGroup(rank=1, torsion=(3,)),
    4: AbelianGroup(rank=1, torsion=(2,)),
    6: AbelianGroup(rank=1, torsion=()),
}


@dataclass(frozen=True)
class TorusBundleSpec:
    k: int
    monodromy: tuple
    tau_label: str
    tau_value: complex | None
    h1: AbelianGroup


def _mat2_mul(a, b):
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def table1(k: int) -> TorusBundleSpec:
    if k not in _TABLE1:
        raise ValueError(f"period must be one of 1,2,3,4,6, got {k}")
    a = _TABLE1[k]
    # A^k = I and no smaller power
    power = ((1, 0), (0, 1))
    for j in range(1, k + 1):
        power = _mat2_mul(power, a)
        if j < k:
            assert power != ((1, 0), (0, 1)), f"monodromy period divides {j}"
    assert power == ((1, 0), (0, 1))
    label, value = _TABLE1_TAU[k]
    spec = TorusBundleSpec(k=k, monodromy=a, tau_label=label, tau_value=value,
                           h1=_TABLE1_H1[k])
    recomputed = h1(k)
    assert recomputed == spec.h1, f"table H1 mismatch for k={k}: {recomputed}"
    return spec


def pi1_presentation(k: int) -> Presentation:
    """<s, t, b | st=ts, b s b^-1 = s^alpha t^gamma, b t b^-1 = s^beta t^delta>."""
    (alpha, beta), (gamma, delta) = _TABLE1[k]
    rel_comm = (("s", 1), ("t", 1), ("s", -1), ("t", -1))
    rel_s = (("b", 1), ("s", 1), ("b", -1), ("s", -alpha), ("t", -gamma))
    rel_t = (("b", 1), ("t", 1), ("b", -1), ("s", -beta), ("t", -delta))
    return Presentation(generators=("s", "t", "b"), relators=(rel_comm, rel_s, rel_t))


def h1(k: int) -> AbelianGroup:
    pres = pi1_presentation(k)
    return abelianization(pres.abelianized_relations(), 3)


def rotational_rigidity(k: int) -> int:
    """det [[alpha-1, gamma], [beta, delta-1]] = 2 - trace(A)."""
    (alpha, beta), (gamma, delta) = _TABLE1[k]
    det = (alpha - 1) * (delta - 1) - beta * gamma
    assert det == 2 - (alpha + delta)
    return det


@dataclass(frozen=True)
class Z3Rep:
    """rho(e_i) = (v_i, 2*pi*r_i): translations with integer rotation counts."""

    v: tuple  # three complex translational parts
    r: tuple  # three integers

    def rows(self):
        return [[self.v[i].real, self.v[i].imag, float(self.r[i])] for i in range(3)]


def is_valid_t3_rep(rep: Z3Rep, tol=1e-9) -> bool:
    """Faithful and discrete iff the three (Re v, Im v, r) rows span R^3.

    Exact integer/rational rows get an exact determinant test; floats go
    through a singular-value floor at tol.
    """
    rows = rep.rows()
    exact = all(
        isinstance(x, (int, Fraction)) or float(x).is_integer()
        for row in rows
        for x in row
    )
    if exact:
        m = [[Fraction(x) for x in row] for row in rows]
        det = (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
        return det != 0
    import numpy as np

    sv = np.linalg.svd(np.array(rows, dtype=float), compute_uv=False)
    return sv[-1] > tol * max(1.0, sv[0])


@dataclass(frozen=True)
class StandardFormRep:
    """rho(e1) = (tau, 0), rho(e2) = (1, 0), rho(e3) = (z, 2*pi*r)."""

    r: int
    tau: complex
    z: complex

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("rotation count r must be a positive integer")
        if self.tau.imag <= 0:
            raise ValueError("tau must lie in the upper half-plane")

    def to_rep(self) -> Z3Rep:
        return Z3Rep(v=(self.tau, 1.0 + 0.0j, self.z), r=(0, 0, self.r))

    def to_json(self):
        return {
            "r": self.r,
            "tau": [self.tau.real, self.tau.imag],
            "z": [self.z.real, self.z.imag],
        }


def _unimodular_rotation_reduction(r):
    """U in GL3(Z) with (U @ r) = (0, 0, gcd); returns (U, gcd)."""
    r = list(r)
    u = [[1 if i == j else 0 for j in range(3)] for i in range(3)]

    def add(dst, src, k):
        r[dst] += k * r[src]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def swap(i, j):
        r[i], r[j] = r[j], r[i]
        u[i], u[j] = u[j], u[i]

    # euclidean moves: clear positions 0 and 1 into position 2
    while r[0] != 0 or r[1] != 0:
        # keep the smallest nonzero magnitude at position 2
        for i in (0, 1):
            if r[i] != 0 and (r[2] == 0 or abs(r[i]) < abs(r[2])):
                swap(i, 2)
        for i in (0, 1):
            if r[i] != 0:
                add(i, 2, -(r[i] // r[2]))
    if r[2] < 0:
        u[2] = [-x for x in u[2]]
        r[2] = -r[2]
    return u, r[2]


def to_standard_form(rep: Z3Rep):
    """Reduce to standard form; returns (StandardFormRep, change, scale).

    change is the unimodular matrix N with new_i = sum_j N[i][j] e_j and
    scale the complex factor applied to all translational parts.
    """
    if not is_valid_t3_rep(rep):
        raise ValueError("representation rows do not span R^3")
    if all(x == 0 for x in rep.r):
        raise ValueError("all rotational parts vanish; not a valid representation")

    u, r = _unimodular_rotation_reduction(rep.r)

    def apply(mat, vs):
        return [sum(mat[i][j] * vs[j] for j in range(3)) for i in range(3)]

    v = apply(u, list(rep.v))
    # rows 0, 1 now rotation-free; force Im(v0/v1) > 0, swapping if needed
    if v[1] == 0 or (v[0] / v[1]).imag == 0:
        # valid reps always have independent translations here; guard anyway
        if v[0] == 0 or v[1] == 0:
            raise ValueError("degenerate rotation-free translations")
    tau = v[0] / v[1]
    if tau.imag == 0:
        raise ValueError("rotation-free translations are collinear")
    if tau.imag < 0:
        v[0], v[1] = v[1], v[0]
        u[0], u[1] = u[1], u[0]
        tau = v[0] / v[1]
    scale = 1.0 / v[1]
    z = v[2] * scale
    # translate e3 by the lattice to the fundamental parallelogram [0,1)^2
    m = math.floor(z.imag / tau.imag)
    z1 = z - m * tau
    n = math.floor((z1 - z1.imag / tau.imag * tau).real)
    z1 = z1 - n
    # record the lattice move in the change matrix: e3' = e3 - m e1' - n e2'
    u[2] = [x - m * a - n * b for x, a, b in zip(u[2], u[0], u[1])]
    sf = StandardFormRep(r=r, tau=tau, z=z1)
    return sf, [list(row) for row in u], scale


def _lattice_coords(z: complex, tau: complex):
    """(p, q) real with z = p + q*tau."""
    q = z.imag / tau.imag
    p = z.real - q * tau.real
    return p, q


def _reduce_mod_lattice(z: complex, tau: complex) -> complex:
    p, q = _lattice_coords(z, tau)
    p -= math.floor(p)
    q -= math.floor(q)
    # guard against the roundoff that lands exactly on 1.0
    if p >= 1.0:
        p -= 1.0
    if q >= 1.0:
        q -= 1.0
    return p + q * tau


def sl2z_reduce(tau: complex, z: complex = 0j):
    """Reduce tau into the modular fundamental domain, carrying z along.

    The matrix [[a,b],[c,d]] returned satisfies tau* = (a tau + b)/(c tau + d)
    and z* = z/(c tau + d) mod <1, tau*>.  Boundary ties resolve to
    Re tau* >= 0; the representative of {z*, -z*} is chosen by the
    lexicographically smaller lattice coordinates.
    """
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half-plane")
    a, b, c, d = 1, 0, 0, 1
    t = tau
    for _ in range(10_000):
        n = round(t.real)
        if n != 0:
            t = t - n
            a, b = a - n * c, b - n * d
        if abs(t) < 1.0 - 1e-15:
            t = -1.0 / t
            a, b, c, d = -c, -d, a, b
        else:
            break
    else:
        raise RuntimeError("fundamental-domain reduction did not converge")
    # boundary tie-breaks: Re >= 0 on |Re| = 1/2 and on |t| = 1
    if abs(t.real + 0.5) < 1e-12:
        t = t + 1.0
        a, b = a + c, b + d
    if abs(abs(t) - 1.0) < 1e-12 and t.real < -1e-12:
        t = -1.0 / t
        a, b, c, d = -c, -d, a, b
        if abs(t.real + 0.5) < 1e-12:
            t = t + 1.0
            a, b = a + c, b + d
    denom = c * tau + d
    z_new = z / denom
    cand1 = _reduce_mod_lattice(z_new, t)
    cand2 = _reduce_mod_lattice(-z_new, t)
    key1 = _lattice_coords(cand1, t)
    key2 = _lattice_coords(cand2, t)
    z_star = cand1 if _lex_leq(key1, key2) else cand2
    return t, z_star, ((a, b), (c, d))


def _lex_leq(k1, k2, tol=1e-10):
    if abs(k1[0] - k2[0]) > tol:
        return k1[0] < k2[0]
    if abs(k1[1] - k2[1]) > tol:
        return k1[1] < k2[1]
    return True


@dataclass(frozen=True)
class BundleModuli:
    """Discrete congruence set plus the continuous factor, per period."""

    k: int
    congruence: str  # membership condition on the rotation count r
    continuous: str  # "H^2 x T^2 / SL2Z", "H^2 / PSL2Z", or "point"
    kind: str  # "moduli" or "teichmuller"

    def member(self, r: int) -> bool:
        if self.kind == "moduli" and r < 1:
            return False
        if self.kind == "teichmuller" and r == 0:
            return False
        k = self.k
        if k == 1:
            return r >= 1
        if k == 2:
            return r % 2 == 1
        return r % k in (1, k - 1)


def moduli_descriptor(k: int) -> BundleModuli:
    if k not in _TABLE1:
        raise ValueError(f"period must be one of 1,2,3,4,6, got {k}")
    cong = {
        1: "r in N",
        2: "r in N, r = 1 mod 2",
        3: "r in N, r = +-1 mod 3",
        4: "r in N, r = +-1 mod 4",
        6: "r in N, r = +-1 mod 6",
    }[k]
    cont = {
        1: "SL2Z \\ (H^2 x T^2)",
        2: "PSL2Z \\ H^2",
        3: "point",
        4: "point",
        6: "point",
    }[k]
    return BundleModuli(k=k, congruence=cong, continuous=cont, kind="moduli")


def teichmuller_descriptor(k: int) -> BundleModuli:
    if k not in _TABLE1:
        raise ValueError(f"period must be one of 1,2,3,4,6, got {k}")
    cong = {
        1: "(r1,r2,r3) in Z^3 with rank condition",
        2: "r in Z, r = 1 mod 2",
        3: "r in Z, r = +-1 mod 3",
        4: "r in Z, r = +-1 mod 4",
        6: "r in Z, r = +-1 mod 6",
    }[k]
    cont = {
        1: "open subset of CP^2 per integer triple",
        2: "C - R",
        3: "point",
        4: "point",
        6: "point",
    }[k]
    return BundleModuli(k=k, congruence=cong, continuous=cont, kind="teichmuller")


@dataclass(frozen=True)
class Lattice4:
    """The rank-4 lattice (tau,0), (1,0), (z, 2*pi*i*r), (0,1) in C^2."""

    vectors: tuple
    det: float


def universal_lattice(sf: StandardFormRep) -> Lattice4:
    vecs = (
        (sf.tau, 0j),
        (1 + 0j, 0j),
        (sf.z, 2j * math.pi * sf.r),
        (0j, 1 + 0j),
    )
    rows = [[v[0].real, v[0].imag, v[1].real, v[1].imag] for v in vecs]
    det = _det4(rows)
    expected = TWO_PI * sf.r * sf.tau.imag
    if abs(abs(det) - expected) > 1e-9 * max(1.0, expected):
        raise ValueError("lattice determinant mismatch")
    if abs(det) < 1e-12:
        raise ValueError("degenerate lattice")
    return Lattice4(vectors=vecs, det=det)


def _det4(m):
    import itertools

    total = 0.0
    for perm in itertools.permutations(range(4)):
        sign = 1
        seen = list(perm)
        for i in range(4):
            for j in range(i + 1, 4):
                if seen[i] > seen[j]:
                    sign = -sign
        prod = 1.0
        for i in range(4):
            prod *= m[i][perm[i]]
        total += sign * prod
    return total


_SYMMETRY_CANDIDATES = tuple(
    (cmath.exp(2j * math.pi * k / n), n)
    for n, ks in ((2, (1,)), (3, (1, 2)), (4, (1, 3)), (6, (1, 5)))
    for k in ks
)


def symmetry_points(tau: complex, z: complex, tol=1e-9):
    """Roots of unity mu with mu*<1,tau> = <1,tau> and mu*z = z mod <1,tau>."""
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half-plane")
    found = []
    for mu, order in _SYMMETRY_CANDIDATES:
        if not _preserves_lattice(mu, tau, tol):
            continue
        w = mu * z - z
        p, q = _lattice_coords(w, tau)
        if abs(p - round(p)) < tol and abs(q - round(q)) < tol:
            found.append((mu, order))
    return found


def _preserves_lattice(mu: complex, tau: complex, tol):
    for w in (mu, mu * tau):
        p, q = _lattice_coords(w, tau)
        if abs(p - round(p)) > tol or abs(q - round(q)) > tol:
            return False
    return True
