"""Exact integer linear algebra: Smith normal form and abelianization.

Everything here runs on arbitrary-precision Python ints; no float ever
enters.  Matrices are plain lists of lists, row-major.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class IntMatrix:
    """Immutable integer matrix (row-major, arbitrary precision)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        rows = [list(map(int, r)) for r in entries]
        if not rows or not rows[0]:
            raise ValueError("matrix dimensions must be positive")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        self.rows = len(rows)
        self.cols = ncols
        self.entries = tuple(tuple(r) for r in rows)

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, diag):
        n = len(diag)
        return cls([[diag[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.entries]})"

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        return IntMatrix(
            [
                [
                    sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols))
                    for j in range(other.cols)
                ]
                for i in range(self.rows)
            ]
        )

    def transpose(self):
        return IntMatrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def det(self):
        """Exact determinant by fraction-free Gaussian elimination (Bareiss)."""
        if self.rows != self.cols:
            raise ValueError("determinant needs a square matrix")
        n = self.rows
        m = [list(r) for r in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def rational_kernel_dim(self):
        """Dimension of the kernel over the rationals."""
        m = [[Fraction(x) for x in r] for r in self.entries]
        rank = 0
        col = 0
        for col in range(self.cols):
            pivot = None
            for i in range(rank, self.rows):
                if m[i][col] != 0:
                    pivot = i
                    break
            if pivot is None:
                continue
            m[rank], m[pivot] = m[pivot], m[rank]
            inv = 1 / m[rank][col]
            m[rank] = [x * inv for x in m[rank]]
            for i in range(self.rows):
                if i != rank and m[i][col] != 0:
                    f = m[i][col]
                    m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
            rank += 1
        return self.cols - rank


@dataclass(frozen=True)
class SnfResult:
    """Smith normal form: u @ m @ v == diag(d) with u, v unimodular."""

    d: tuple
    u: IntMatrix
    v: IntMatrix

    def diag_matrix(self, rows, cols):
        return IntMatrix(
            [
                [self.d[i] if (i == j and i < len(self.d)) else 0 for j in range(cols)]
                for i in range(rows)
            ]
        )


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group: Z^rank + sum of Z/torsion[i]."""

    rank: int
    torsion: tuple

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError("torsion coefficients must form a divisibility chain")

    def torsion_order(self):
        n = 1
        for t in self.torsion:
            n *= t
        return n

    def describe(self):
        parts = ["Z"] * self.rank + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def smith_normal_form(m: IntMatrix) -> SnfResult:
    """Diagonalize m over the integers.

    Returns invariant factors d (non-negative, each dividing the next)
    and unimodular u, v with u @ m @ v equal to the diagonal matrix.
    """
    a = [list(r) for r in m.entries]
    nr, nc = m.rows, m.cols
    u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    v = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):
        # row[dst] += k * row[src]
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):
        for r in a:
            r[dst] += k * r[src]
        for r in v:
            r[dst] += k * r[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    n = min(nr, nc)
    t = 0
    while t < n:
        # pick the nonzero entry of least magnitude as pivot
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        dirty = False
        for i in range(t + 1, nr):
            if a[i][t] != 0:
                q = a[i][t] // a[t][t]
                add_row(i, t, -q)
                if a[i][t] != 0:
                    dirty = True
        for j in range(t + 1, nc):
            if a[t][j] != 0:
                q = a[t][j] // a[t][t]
                add_col(j, t, -q)
                if a[t][j] != 0:
                    dirty = True
        if dirty:
            continue
        # pivot now alone in its row and column; enforce divisibility
        culprit = None
        for i in range(t + 1, nr):
            for j in range(t + 1, nc):
                if a[i][j] % a[t][t] != 0:
                    culprit = i
                    break
            if culprit is not None:
                break
        if culprit is not None:
            add_row(t, culprit, 1)
            continue
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    d = tuple(a[i][i] for i in range(n))
    return SnfResult(d=d, u=IntMatrix(u), v=IntMatrix(v))


def abelianization(relations: IntMatrix | None, num_generators: int) -> AbelianGroup:
    """Abelian group on num_generators generators modulo the relation rows."""
    if relations is None:
        return AbelianGroup(rank=num_generators, torsion=())
    if relations.cols != num_generators:
        raise ValueError("relation matrix must have one column per generator")
    snf = smith_normal_form(relations)
    nonzero = [x for x in snf.d if x != 0]
    return AbelianGroup(
        rank=num_generators - len(nonzero),
        torsion=tuple(x for x in nonzero if x > 1),
    )
