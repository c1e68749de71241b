"""Model coframes on the three geometries and structure-equation checks.

Coframes are chart evaluators: a point in chart coordinates goes to the
component matrix of the three 1-forms.  Exterior derivatives are taken
either by central finite differences of the coefficient functions or,
for the polynomial families on the 3-sphere, from the exact ambient
2-form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ChartPoint:
    chart: str
    coords: tuple

    def __post_init__(self):
        if self.chart == "sl2" and self.coords[1] <= 0:
            raise ValueError("sl2 chart needs y > 0")
        if self.chart == "s3":
            n = sum(x * x for x in self.coords)
            if abs(n - 1.0) > 1e-12:
                raise ValueError("s3 points must have unit norm within 1e-12")


@dataclass(frozen=True)
class CoframeEvaluator:
    """Chart name plus point -> (3, 3) array, rows = forms, cols = components."""

    chart: str
    fn: object

    def __call__(self, coords):
        return self.fn(np.asarray(coords, dtype=float))

    def form(self, i):
        return lambda coords: self(coords)[i]


@dataclass(frozen=True)
class FormResidual:
    max_residual: float
    samples: int
    detail: dict | None = None


def e2_coframe() -> CoframeEvaluator:
    """alpha1 = cos(th) dx + sin(th) dy, alpha2 = -sin(th) dx + cos(th) dy,
    alpha3 = -d(th); the flat (K=0) model coframe."""

    def fn(p):
        _, _, th = p
        c, s = math.cos(th), math.sin(th)
        return np.array([[c, s, 0.0], [-s, c, 0.0], [0.0, 0.0, -1.0]])

    return CoframeEvaluator(chart="e2", fn=fn)


def sl2_coframe() -> CoframeEvaluator:
    """w1 + i*w2 = e^{-i th}(dx + i dy)/y with w3 = -(d(th) + dx/y).

    The sign of w3 is the one the finite-difference oracle confirms for
    the structure equations dw1 = w2^w3, dw2 = w3^w1, dw3 = -w1^w2.
    """

    def fn(p):
        _, y, th = p
        c, s = math.cos(th), math.sin(th)
        return np.array(
            [
                [c / y, s / y, 0.0],
                [-s / y, c / y, 0.0],
                [-1.0 / y, 0.0, -1.0],
            ]
        )

    return CoframeEvaluator(chart="sl2", fn=fn)


def constant_coframe() -> CoframeEvaluator:
    """(dx, dy, d(th)): closed forms, the negative control for K != 0."""

    def fn(p):
        return np.eye(3)

    return CoframeEvaluator(chart="e2", fn=fn)


def numeric_d(form_fn, coords, h=1e-5, richardson=False):
    """Exterior derivative of a 1-form by central differences.

    Returns the three components (d12, d13, d23) of the 2-form; with
    richardson=True, one extrapolation step at h and h/2.
    """
    if h <= 0 or h < 1e-12:
        raise ValueError("step underflow")
    if richardson:
        d1 = numeric_d(form_fn, coords, h)
        d2 = numeric_d(form_fn, coords, h / 2)
        return (4.0 * d2 - d1) / 3.0
    coords = np.asarray(coords, dtype=float)
    grad = np.empty((3, 3), dtype=complex)  # grad[i][j] = d_i f_j
    for i in range(3):
        up = coords.copy()
        dn = coords.copy()
        up[i] += h
        dn[i] -= h
        grad[i] = (np.asarray(form_fn(up)) - np.asarray(form_fn(dn))) / (2 * h)
    d = np.array(
        [grad[0][1] - grad[1][0], grad[0][2] - grad[2][0], grad[1][2] - grad[2][1]]
    )
    if np.max(np.abs(d.imag)) == 0.0:
        return d.real
    return d


def wedge11(a, b):
    """Wedge of two 1-forms: components (12, 13, 23)."""
    return np.array(
        [
            a[0] * b[1] - a[1] * b[0],
            a[0] * b[2] - a[2] * b[0],
            a[1] * b[2] - a[2] * b[1],
        ]
    )


def wedge12(a, b):
    """Wedge of a 1-form with a 2-form: the single (123) component."""
    return a[0] * b[2] - a[1] * b[1] + a[2] * b[0]


def check_cartan_k(coframe: CoframeEvaluator, k_const: float, points, h=1e-5) -> FormResidual:
    """Residuals of dw1 - w2^w3, dw2 - w3^w1, dw3 - K w1^w2."""
    worst = 0.0
    per_eq = [0.0, 0.0, 0.0]
    for p in points:
        w = coframe(p)
        d1 = numeric_d(coframe.form(0), p, h)
        d2 = numeric_d(coframe.form(1), p, h)
        d3 = numeric_d(coframe.form(2), p, h)
        r1 = np.max(np.abs(d1 - wedge11(w[1], w[2])))
        r2 = np.max(np.abs(d2 - wedge11(w[2], w[0])))
        r3 = np.max(np.abs(d3 - k_const * wedge11(w[0], w[1])))
        per_eq = [max(a, float(b)) for a, b in zip(per_eq, (r1, r2, r3))]
        worst = max(worst, float(r1), float(r2), float(r3))
    return FormResidual(
        max_residual=worst,
        samples=len(points),
        detail={"eq1": per_eq[0], "eq2": per_eq[1], "eq3": per_eq[2]},
    )


def coframe_independence(coframe: CoframeEvaluator, points) -> float:
    """min |det| of the component matrix over the samples."""
    return min(abs(np.linalg.det(np.asarray(coframe(p), dtype=float))) for p in points)


def check_taut(w1_fn, w2_fn, points, h=1e-5, d1_fn=None, d2_fn=None) -> FormResidual:
    """Residuals of the two defining equations of a taut contact circle.

    Exact derivative evaluators can be passed for polynomial families;
    otherwise finite differences are used.  detail reports the volume
    floor certifying w1 ^ dw1 != 0 and the two mixed terms separately.
    """
    eq1 = eq2 = mixed = 0.0
    vol_min = math.inf
    for p in points:
        w1 = np.asarray(w1_fn(p))
        w2 = np.asarray(w2_fn(p))
        d1 = np.asarray(d1_fn(p)) if d1_fn else numeric_d(w1_fn, p, h)
        d2 = np.asarray(d2_fn(p)) if d2_fn else numeric_d(w2_fn, p, h)
        v11 = wedge12(w1, d1)
        v22 = wedge12(w2, d2)
        v12 = wedge12(w1, d2)
        v21 = wedge12(w2, d1)
        eq1 = max(eq1, abs(v11 - v22))
        eq2 = max(eq2, abs(v12 + v21))
        mixed = max(mixed, abs(v12), abs(v21))
        vol_min = min(vol_min, abs(v11))
    return FormResidual(
        max_residual=max(eq1, eq2),
        samples=len(points),
        detail={"eq1": eq1, "eq2": eq2, "volume_min": vol_min, "mixed_max": mixed},
    )


# ---------------------------------------------------------------------------
# the 3-sphere: stereographic charts and the two polynomial families
# ---------------------------------------------------------------------------

# ambient coordinates are ordered (x1, y1, x2, y2) with z1 = x1 + i y1,
# z2 = x2 + i y2; both charts project from the poles +-e_{y2}.


def stereo_to_sphere(u, chart):
    """Chart point(s) u (..., 3) -> ambient (..., 4)."""
    u = np.asarray(u, dtype=float)
    n2 = np.sum(u * u, axis=-1)
    denom = 1.0 + n2
    out = np.empty(u.shape[:-1] + (4,))
    out[..., 0] = 2 * u[..., 0] / denom
    out[..., 1] = 2 * u[..., 1] / denom
    out[..., 2] = 2 * u[..., 2] / denom
    if chart == "north":
        out[..., 3] = (n2 - 1.0) / denom
    elif chart == "south":
        out[..., 3] = (1.0 - n2) / denom
    else:
        raise ValueError(f"unknown chart {chart}")
    return out


def sphere_to_stereo(x, chart):
    x = np.asarray(x, dtype=float)
    if chart == "north":
        denom = 1.0 - x[..., 3]
    else:
        denom = 1.0 + x[..., 3]
    return x[..., :3] / denom[..., None]


def stereo_jacobian(u, chart):
    """d(stereo_to_sphere) as (..., 3, 4): rows are d/du_i."""
    u = np.asarray(u, dtype=float)
    n2 = np.sum(u * u, axis=-1)
    denom = 1.0 + n2
    jac = np.empty(u.shape[:-1] + (3, 4))
    for i in range(3):
        for a in range(3):
            jac[..., i, a] = (
                (2.0 if i == a else 0.0) * denom - 4.0 * u[..., a] * u[..., i]
            ) / denom**2
        jac[..., i, 3] = 4.0 * u[..., i] / denom**2
    if chart == "south":
        jac[..., :, 3] = -jac[..., :, 3]
    return jac


def preferred_chart(x) -> str:
    """The stereographic chart whose pole is farther from the point."""
    return "north" if x[3] <= 0 else "south"


@dataclass(frozen=True)
class SphereFamily:
    """w = P(z) dz1 + Q(z) dz2 with exact ambient dw = kappa dz1^dz2."""

    name: str
    param: complex

    def __post_init__(self):
        if self.name == "a":
            if not (0.0 < self.param.real < 1.0):
                raise ValueError("the a-family needs 0 < Re(a) < 1")
        elif self.name == "n":
            n = self.param
            if n.imag != 0 or n.real < 1 or int(n.real) != n.real:
                raise ValueError("the n-family needs an integer n >= 1")
        else:
            raise ValueError(f"unknown family {self.name}")

    def coefficients(self, z1, z2):
        """(P, Q) with w = P dz1 + Q dz2."""
        if self.name == "a":
            a = self.param
            return -(1.0 - a) * z2, a * z1
        n = int(self.param.real)
        return -z2, n * z1 + z2**n

    @property
    def kappa(self) -> complex:
        """dw = kappa dz1 ^ dz2 in the ambient coordinates."""
        if self.name == "a":
            return 1.0 + 0j
        return float(int(self.param.real) + 1) + 0j

    def omega_chart(self, u, chart):
        """Pullback of w to the chart: (..., 3) complex components."""
        x = stereo_to_sphere(u, chart)
        jac = stereo_jacobian(u, chart)
        z1 = x[..., 0] + 1j * x[..., 1]
        z2 = x[..., 2] + 1j * x[..., 3]
        p, q = self.coefficients(z1, z2)
        dz1 = jac[..., 0] + 1j * jac[..., 1]  # dz1(d/du_i)
        dz2 = jac[..., 2] + 1j * jac[..., 3]
        return p[..., None] * dz1 + q[..., None] * dz2

    def domega_chart(self, u, chart):
        """Exact pullback of dw: (..., 3) components (12, 13, 23)."""
        jac = stereo_jacobian(u, chart)
        dz1 = jac[..., 0] + 1j * jac[..., 1]
        dz2 = jac[..., 2] + 1j * jac[..., 3]
        pairs = ((0, 1), (0, 2), (1, 2))
        out = np.empty(jac.shape[:-2] + (3,), dtype=complex)
        for idx, (i, j) in enumerate(pairs):
            out[..., idx] = self.kappa * (
                dz1[..., i] * dz2[..., j] - dz1[..., j] * dz2[..., i]
            )
        return out


def su2_taut_circle(family: str, param, p: ChartPoint):
    """Evaluate w and its exact dw at a point of the 3-sphere.

    Returns (chart, w components, dw components) in the stereographic
    chart whose pole is farther from p.
    """
    if p.chart != "s3":
        raise ValueError("point must be on the s3 chart")
    fam = SphereFamily(name=family, param=complex(param))
    chart = preferred_chart(p.coords)
    u = sphere_to_stereo(np.array(p.coords), chart)
    return chart, fam.omega_chart(u, chart), fam.domega_chart(u, chart)
