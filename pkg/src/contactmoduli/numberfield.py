"""Exact arithmetic in the real field Q(sqrt2, sqrt3, sqrt5).

Elements are stored as 8 rational coordinates over the basis

    1, sqrt2, sqrt3, sqrt5, sqrt6, sqrt10, sqrt15, sqrt30,

indexed by subsets of {2, 3, 5} encoded as bitmasks (bit0=2, bit1=3,
bit2=5).  This field contains every quaternion coordinate used by the
finite-subgroup constructions: 1/2, sqrt2/2, sqrt3/2 and the golden
ratio (1+sqrt5)/2.
"""

from __future__ import annotations

import math
from fractions import Fraction

_PRIMES = (2, 3, 5)

# basis index <-> squarefree radicand
_RADICAND = tuple(
    2 ** (m & 1) * 3 ** ((m >> 1) & 1) * 5 ** ((m >> 2) & 1) for m in range(8)
)
_SQRTS = tuple(math.sqrt(r) for r in _RADICAND)

# _MULT[i][j] = (k, c):  basis_i * basis_j == c * basis_k
_MULT = []
for i in range(8):
    row = []
    for j in range(8):
        k = i ^ j
        c = 1
        for bit, p in enumerate(_PRIMES):
            if (i >> bit) & 1 and (j >> bit) & 1:
                c *= p
        row.append((k, c))
    _MULT.append(tuple(row))
_MULT = tuple(_MULT)

_ZERO8 = (Fraction(0),) * 8


class Q235:
    """An element of Q(sqrt2, sqrt3, sqrt5); immutable and hashable."""

    __slots__ = ("co",)

    def __init__(self, co):
        self.co = tuple(co)

    @classmethod
    def of(cls, rational, radicand=1):
        """rational * sqrt(radicand), radicand a squarefree product of 2,3,5."""
        idx = _RADICAND.index(radicand)
        co = [Fraction(0)] * 8
        co[idx] = Fraction(rational)
        return cls(co)

    def __add__(self, other):
        other = _coerce(other)
        return Q235(tuple(a + b for a, b in zip(self.co, other.co)))

    __radd__ = __add__

    def __neg__(self):
        return Q235(tuple(-a for a in self.co))

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        out = [Fraction(0)] * 8
        for i, x in enumerate(self.co):
            if not x:
                continue
            for j, y in enumerate(other.co):
                if not y:
                    continue
                k, c = _MULT[i][j]
                out[k] += x * y * c
        return Q235(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Q235(tuple(a / other for a in self.co))
        return self * _coerce(other).inverse()

    def inverse(self):
        """Multiplicative inverse via repeated Galois conjugation.

        Multiplying by the conjugates over each sqrt kills the radicals
        one at a time, reducing to a rational denominator.
        """
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        num = Q235.of(1)
        den = self
        for bit in range(3):
            conj = den.galois(bit)
            num = num * conj
            den = den * conj
        # den is now rational
        rat = den.co[0]
        assert all(c == 0 for c in den.co[1:])
        return Q235(tuple(c / rat for c in num.co))

    def galois(self, bit):
        """Conjugate flipping the sign of sqrt(p) for the bit-th prime."""
        return Q235(
            tuple(-c if (m >> bit) & 1 else c for m, c in enumerate(self.co))
        )

    def is_zero(self):
        return all(c == 0 for c in self.co)

    def is_rational(self):
        return all(c == 0 for c in self.co[1:])

    def __eq__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self.co == other.co

    def __hash__(self):
        return hash(self.co)

    def __float__(self):
        return float(sum(float(c) * s for c, s in zip(self.co, _SQRTS)))

    def __repr__(self):
        terms = []
        for m, c in enumerate(self.co):
            if c == 0:
                continue
            rad = _RADICAND[m]
            terms.append(str(c) if rad == 1 else f"{c}*sqrt{rad}")
        return " + ".join(terms) if terms else "0"


def _coerce(x):
    if isinstance(x, Q235):
        return x
    if isinstance(x, (int, Fraction)):
        return Q235.of(x)
    raise TypeError(f"cannot coerce {type(x).__name__} into Q235")


ZERO = Q235.of(0)
ONE = Q235.of(1)
HALF = Q235.of(Fraction(1, 2))
SQRT2 = Q235.of(1, 2)
SQRT3 = Q235.of(1, 3)
SQRT5 = Q235.of(1, 5)
