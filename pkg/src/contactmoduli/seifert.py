"""Normalized Seifert invariants and their exact arithmetic.

All derived quantities (orbifold Euler characteristic, Euler number,
fibre index, the (n+1)x(n+1) relation matrix C) are exact rationals or
integers; floats never appear in this module.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .intlinalg import AbelianGroup, IntMatrix, abelianization


@dataclass(frozen=True)
class SeifertData:
    """Normalized invariants {g, b, (alpha_1,beta_1),...,(alpha_n,beta_n)}."""

    g: int
    b: int
    cones: tuple

    def __post_init__(self):
        if self.g < 0:
            raise ValueError("genus must be non-negative")
        for alpha, beta in self.cones:
            if alpha < 2:
                raise ValueError(f"multiplicity {alpha} < 2")
            if not (1 <= beta < alpha):
                raise ValueError(f"beta {beta} not normalized for alpha {alpha}")
            if math.gcd(alpha, beta) != 1:
                raise ValueError(f"({alpha},{beta}) not coprime")

    @property
    def n(self):
        return len(self.cones)

    @classmethod
    def parse(cls, text: str) -> "SeifertData":
        """Parse 'g=2 b=1 (2,1) (3,2)' or a JSON array [g, b, [a,b], ...]."""
        text = text.strip()
        if text.startswith("["):
            raw = json.loads(text)
            return cls(g=int(raw[0]), b=int(raw[1]),
                       cones=tuple((int(a), int(b)) for a, b in raw[2:]))
        m_g = re.search(r"g\s*=\s*(-?\d+)", text)
        m_b = re.search(r"b\s*=\s*(-?\d+)", text)
        if not m_g or not m_b:
            raise ValueError(f"cannot parse Seifert tuple from {text!r}")
        cones = tuple(
            (int(a), int(b)) for a, b in re.findall(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)", text)
        )
        return cls(g=int(m_g.group(1)), b=int(m_b.group(1)), cones=cones)

    def to_json(self):
        return [self.g, self.b, *[list(c) for c in self.cones]]


@dataclass(frozen=True)
class RvCertificate:
    """Integers r, k_j with r*beta_j = alpha_j - 1 + k_j*alpha_j and
    r*b = 2g - 2 - sum(k_j)."""

    r: int
    k: tuple

    def verify(self, s: SeifertData):
        for (alpha, beta), kj in zip(s.cones, self.k):
            if self.r * beta != alpha - 1 + kj * alpha:
                return False
        return self.r * s.b == 2 * s.g - 2 - sum(self.k)


@dataclass(frozen=True)
class Presentation:
    """Generators plus relator words; words are tuples of (name, exponent)."""

    generators: tuple
    relators: tuple
    central: tuple = ()

    def abelianized_relations(self) -> IntMatrix | None:
        """Exponent-sum matrix of the relators (commutators drop out)."""
        idx = {gname: i for i, gname in enumerate(self.generators)}
        rows = []
        for word in self.relators:
            row = [0] * len(self.generators)
            for gname, exp in word:
                row[idx[gname]] += exp
            rows.append(row)
        if not rows:
            return None
        return IntMatrix(rows)


def chi_orb(s: SeifertData) -> Fraction:
    return Fraction(2 - 2 * s.g - s.n) + sum(Fraction(1, a) for a, _ in s.cones)


def euler_number(s: SeifertData) -> Fraction:
    return -(Fraction(s.b) + sum(Fraction(b, a) for a, b in s.cones))


def admits_sl2(s: SeifertData):
    """(admissible, reasons): chi_orb < 0 and e != 0."""
    chi = chi_orb(s)
    e = euler_number(s)
    reasons = []
    if chi >= 0:
        reasons.append(f"chi_orb = {chi} is not negative")
    if e == 0:
        reasons.append("euler number e = 0")
    return (not reasons, reasons)


def fibre_index(s: SeifertData) -> Fraction:
    e = euler_number(s)
    if e == 0:
        raise ValueError("fibre index r = chi_orb/e needs e != 0")
    return chi_orb(s) / e


def raymond_vasquez(s: SeifertData) -> RvCertificate | None:
    e = euler_number(s)
    if e == 0:
        return None
    r = chi_orb(s) / e
    if r == 0 or r.denominator != 1:
        return None
    r = int(r)
    ks = []
    for alpha, beta in s.cones:
        num = r * beta - alpha + 1
        if num % alpha != 0:
            return None
        ks.append(num // alpha)
    cert = RvCertificate(r=r, k=tuple(ks))
    assert cert.verify(s)
    return cert


def matrix_c(s: SeifertData):
    """The (n+1)x(n+1) relation matrix C and its exact determinant."""
    n = s.n
    rows = []
    for j, (alpha, beta) in enumerate(s.cones):
        row = [0] * (n + 1)
        row[j] = alpha
        row[n] = beta
        rows.append(row)
    rows.append([1] * n + [-s.b])
    c = IntMatrix(rows)
    det = c.det()
    alphas = 1
    for alpha, _ in s.cones:
        alphas *= alpha
    assert Fraction(det) == alphas * euler_number(s)
    return c, det


def pi1_presentation(s: SeifertData) -> Presentation:
    gens = []
    for i in range(1, s.g + 1):
        gens += [f"u{i}", f"v{i}"]
    gens += [f"q{j}" for j in range(1, s.n + 1)]
    gens.append("h")

    surface = []
    for i in range(1, s.g + 1):
        surface += [(f"u{i}", 1), (f"v{i}", 1), (f"u{i}", -1), (f"v{i}", -1)]
    surface += [(f"q{j}", 1) for j in range(1, s.n + 1)]
    surface += [("h", -s.b)]
    relators = [tuple(surface)]
    for j, (alpha, beta) in enumerate(s.cones, start=1):
        relators.append(((f"q{j}", alpha), ("h", beta)))
    return Presentation(generators=tuple(gens), relators=tuple(relators), central=("h",))


def orb_presentation(s: SeifertData) -> Presentation:
    gens = []
    for i in range(1, s.g + 1):
        gens += [f"u{i}", f"v{i}"]
    gens += [f"q{j}" for j in range(1, s.n + 1)]

    surface = []
    for i in range(1, s.g + 1):
        surface += [(f"u{i}", 1), (f"v{i}", 1), (f"u{i}", -1), (f"v{i}", -1)]
    surface += [(f"q{j}", 1) for j in range(1, s.n + 1)]
    relators = [tuple(surface)]
    for j, (alpha, _) in enumerate(s.cones, start=1):
        relators.append(((f"q{j}", alpha),))
    return Presentation(generators=tuple(gens), relators=tuple(relators))


def h1(s: SeifertData) -> AbelianGroup:
    pres = pi1_presentation(s)
    rel = pres.abelianized_relations()
    group = abelianization(rel, len(pres.generators))
    if euler_number(s) != 0:
        _, det = matrix_c(s)
        assert group.torsion_order() == abs(det)
        assert group.rank == 2 * s.g
    return group


@dataclass(frozen=True)
class FibrationDescriptor:
    """Shape of the deformation spaces over the base orbifold."""

    base_dimension: int
    base_components: int
    fibre_rank: int
    fibre_index: int
    covering_degree: int
    branched: bool
    sign_convention: str
    components_note: str | None = None


def teichmuller_descriptor(s: SeifertData) -> FibrationDescriptor:
    ok, reasons = admits_sl2(s)
    if not ok:
        raise ValueError("; ".join(reasons))
    cert = raymond_vasquez(s)
    if cert is None:
        raise ValueError("no integral fibre-index certificate")
    return FibrationDescriptor(
        base_dimension=6 * s.g - 6 + 2 * s.n,
        base_components=2,
        fibre_rank=2 * s.g,
        fibre_index=cert.r,
        covering_degree=1,
        branched=False,
        sign_convention="r as computed; flipping its sign flips orientations",
    )


def moduli_descriptor(s: SeifertData) -> FibrationDescriptor:
    base = teichmuller_descriptor(s)
    r = base.fibre_index
    note = None
    if s.n == 0:
        note = "connected" if r % 2 != 0 else "two components"
    return FibrationDescriptor(
        base_dimension=base.base_dimension,
        base_components=base.base_components,
        fibre_rank=base.fibre_rank,
        fibre_index=r,
        covering_degree=abs(r) ** (2 * s.g),
        branched=True,
        sign_convention=base.sign_convention,
        components_note=note,
    )


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
