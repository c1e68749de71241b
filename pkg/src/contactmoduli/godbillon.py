"""Godbillon-Vey invariants of the sphere families by quadrature.

Pipeline: two stereographic grids cover the 3-sphere with a smooth
partition of unity; at every node the gauge field gamma solving
dw = gamma ^ w is written down in closed form (the solution
Hermitian-orthogonal to w, which both conformal charts agree on);
d(gamma) comes from 4th-order central differences on the grid; the
3-form gamma ^ d(gamma) is divided by the reference volume form and the
resulting function integrated against the volume measure.

Orientation is carried entirely by the reference volume form
x . (dx1 ^ dy1 ^ dx2 ^ dy2), so no chart-orientation bookkeeping is
needed: the integrand is the chart-independent ratio of two 3-forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coframes import SphereFamily, stereo_jacobian, stereo_to_sphere

S3_VOLUME = 2.0 * math.pi**2

_CHARTS = ("north", "south")


def _smoothstep(t):
    """C-infinity monotone step: 0 for t <= 0, 1 for t >= 1."""
    t = np.clip(t, 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        a = np.where(t > 0, np.exp(-1.0 / np.maximum(t, 1e-300)), 0.0)
        b = np.where(t < 1, np.exp(-1.0 / np.maximum(1.0 - t, 1e-300)), 0.0)
    return a / (a + b)


@dataclass(frozen=True)
class S3Atlas:
    """Two cell-centered stereographic grids with partition weights."""

    resolution: int
    box: float = 2.1
    cutoff: float = 0.5  # partition transitions over |y2| < cutoff

    def axis(self):
        n = self.resolution
        h = 2.0 * self.box / n
        return -self.box + (np.arange(n) + 0.5) * h, h

    def grid(self, chart):
        ax, h = self.axis()
        u = np.stack(np.meshgrid(ax, ax, ax, indexing="ij"), axis=-1)
        return u, h

    def weight(self, x, chart):
        """Partition-of-unity weight evaluated at ambient points."""
        y2 = x[..., 3]
        w_north = _smoothstep((self.cutoff - y2) / (2.0 * self.cutoff))
        return w_north if chart == "north" else 1.0 - w_north

    def volume(self):
        """Quadrature of 1: the volume of the 3-sphere."""
        total = 0.0
        for chart in _CHARTS:
            u, h = self.grid(chart)
            x = stereo_to_sphere(u, chart)
            w = self.weight(x, chart)
            dens = np.abs(_volume_density(u, chart))
            total += float(np.sum(w * dens)) * h**3
        return total


def _volume_density(u, chart):
    """Signed density of x . (dx1^dy1^dx2^dy2) in chart coordinates."""
    x = stereo_to_sphere(u, chart)
    jac = stereo_jacobian(u, chart)  # (..., 3, 4)
    mats = np.concatenate([x[..., None, :], jac], axis=-2)  # rows: x, d1, d2, d3
    return np.linalg.det(mats)


def solve_gamma(omega, domega, tol=1e-8):
    """gamma with gamma ^ omega = domega, Hermitian-orthogonal to omega.

    omega: (..., 3) complex chart components; domega: (..., 3) components
    (12, 13, 23).  In a conformal chart the euclidean-orthogonal solution
    is the round-metric one, so both stereographic charts produce the
    same global field.  Closed form: gamma_i = sum_k conj(w_k) B_ik / |w|^2.
    """
    w = np.asarray(omega, dtype=complex)
    b = np.asarray(domega, dtype=complex)
    s = np.sum(np.abs(w) ** 2, axis=-1)
    if np.any(s < 1e-250):
        raise ValueError("omega vanishes at a sample point")
    wc = np.conj(w)
    gamma = np.empty_like(w)
    # B as antisymmetric matrix: B01=b[...,0], B02=b[...,1], B12=b[...,2]
    gamma[..., 0] = (wc[..., 1] * b[..., 0] + wc[..., 2] * b[..., 1]) / s
    gamma[..., 1] = (-wc[..., 0] * b[..., 0] + wc[..., 2] * b[..., 2]) / s
    gamma[..., 2] = (-wc[..., 0] * b[..., 1] - wc[..., 1] * b[..., 2]) / s
    # consistency: the equation must actually be solvable (integrability)
    resid = _wedge11_arr(gamma, w) - b
    scale = np.maximum(np.max(np.abs(b)), 1.0)
    if np.max(np.abs(resid)) > tol * scale:
        raise ValueError("gamma ^ omega = d(omega) is inconsistent; "
                         "integrability violated beyond tolerance")
    return gamma


def _wedge11_arr(a, b):
    out = np.empty_like(a)
    out[..., 0] = a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]
    out[..., 1] = a[..., 0] * b[..., 2] - a[..., 2] * b[..., 0]
    out[..., 2] = a[..., 1] * b[..., 2] - a[..., 2] * b[..., 1]
    return out


def _d_grid(f, h):
    """4th-order central differences of (..., N,N,N, 3) 1-form components.

    Returns 2-form components (12, 13, 23); only interior nodes (margin
    2) are valid, the margin is left as zero and must carry zero weight.
    """
    def deriv(g, axis):
        out = np.zeros_like(g)
        sl = [slice(None)] * g.ndim
        def shifted(k):
            s = sl.copy()
            s[axis] = slice(2 + k, g.shape[axis] - 2 + k)
            return g[tuple(s)]
        inner = (shifted(-2) - 8 * shifted(-1) + 8 * shifted(1) - shifted(2)) / (12 * h)
        s = sl.copy()
        s[axis] = slice(2, g.shape[axis] - 2)
        out[tuple(s)] = inner
        return out

    d01 = deriv(f[..., 1], 0) - deriv(f[..., 0], 1)
    d02 = deriv(f[..., 2], 0) - deriv(f[..., 0], 2)
    d12 = deriv(f[..., 2], 1) - deriv(f[..., 1], 2)
    return np.stack([d01, d02, d12], axis=-1)


@dataclass(frozen=True)
class GvEstimate:
    value: complex
    resolution: int
    error_estimate: float
    coarse_value: complex | None = None
    volume: float | None = None


def gv_closed_form(family: str, param) -> complex:
    """-2|S^3|/(a(1-a)) for the slab family, -2n|S^3|/(n+1)^2 for n >= 1."""
    if family == "a":
        a = complex(param)
        if not (0.0 < a.real < 1.0):
            raise ValueError("need 0 < Re(a) < 1")
        return -2.0 * S3_VOLUME / (a * (1.0 - a))
    if family == "n":
        n = int(param)
        if n < 1:
            raise ValueError("need n >= 1")
        return complex(-2.0 * n * S3_VOLUME / (n + 1) ** 2)
    raise ValueError(f"unknown family {family}")


def _gv_single(fam: SphereFamily, atlas: S3Atlas, gauge_extra=None):
    total = 0j
    for chart in _CHARTS:
        u, h = atlas.grid(chart)
        x = stereo_to_sphere(u, chart)
        w = fam.omega_chart(u, chart)
        b = fam.domega_chart(u, chart)
        gamma = solve_gamma(w, b)
        if gauge_extra is not None:
            gamma = gamma + gauge_extra(x)[..., None] * w
        dg = _d_grid(gamma, h)
        three_form = (
            gamma[..., 0] * dg[..., 2]
            - gamma[..., 1] * dg[..., 1]
            + gamma[..., 2] * dg[..., 0]
        )
        dens = _volume_density(u, chart)
        weight = atlas.weight(x, chart)
        total += np.sum(weight * (three_form / dens) * np.abs(dens)) * h**3
    return complex(total)


def gv_integral(family: str, param, resolution: int = 64, atlas_kwargs=None,
                gauge_extra=None) -> GvEstimate:
    """Quadrature of the Godbillon-Vey integral with a two-grid error bar."""
    if resolution < 16:
        raise ValueError("resolution too coarse for the finite-difference stencil")
    fam = SphereFamily(name=family, param=complex(param))
    kwargs = atlas_kwargs or {}
    fine = S3Atlas(resolution=resolution, **kwargs)
    coarse = S3Atlas(resolution=resolution // 2, **kwargs)
    val_fine = _gv_single(fam, fine, gauge_extra)
    val_coarse = _gv_single(fam, coarse, gauge_extra)
    err = abs(val_fine - val_coarse) / 3.0
    return GvEstimate(
        value=val_fine,
        resolution=resolution,
        error_estimate=err,
        coarse_value=val_coarse,
        volume=fine.volume(),
    )


def formal_integrability_residual(family: str, param, points) -> float:
    """max |w ^ dw| over ambient sample points (exact derivative)."""
    fam = SphereFamily(name=family, param=complex(param))
    worst = 0.0
    for x in np.asarray(points, dtype=float):
        chart = "north" if x[3] <= 0 else "south"
        u = x[:3] / (1.0 - x[3] if chart == "north" else 1.0 + x[3])
        w = fam.omega_chart(u, chart)
        b = fam.domega_chart(u, chart)
        val = w[0] * b[2] - w[1] * b[1] + w[2] * b[0]
        worst = max(worst, abs(val))
    return worst


def conjugated_control_residual(a: complex, points) -> float:
    """|w ^ dw| for the non-integrable variant a z1 dz2 - (1-a) z2 d(conj z1)."""
    worst = 0.0
    for x in np.asarray(points, dtype=float):
        chart = "north" if x[3] <= 0 else "south"
        u = x[:3] / (1.0 - x[3] if chart == "north" else 1.0 + x[3])
        xx = stereo_to_sphere(u, chart)
        jac = stereo_jacobian(u, chart)
        z1 = xx[0] + 1j * xx[1]
        z2 = xx[2] + 1j * xx[3]
        dz1 = jac[..., 0] + 1j * jac[..., 1]
        dz1c = jac[..., 0] - 1j * jac[..., 1]
        dz2 = jac[..., 2] + 1j * jac[..., 3]
        w = a * z1 * dz2 - (1 - a) * z2 * dz1c
        # d(w) = a dz1^dz2 - (1-a) dz2^dconj(z1) = a dz1^dz2 + (1-a) dconj(z1)^dz2
        pairs = ((0, 1), (0, 2), (1, 2))
        b = np.empty(3, dtype=complex)
        for idx, (i, j) in enumerate(pairs):
            b[idx] = a * (dz1[i] * dz2[j] - dz1[j] * dz2[i]) + (1 - a) * (
                dz1c[i] * dz2[j] - dz1c[j] * dz2[i]
            )
        val = w[0] * b[2] - w[1] * b[1] + w[2] * b[0]
        worst = max(worst, abs(val))
    return worst


def kernel_field(omega):
    """Real unit vector field spanning ker(w1) and ker(w2) in the chart."""
    w = np.asarray(omega, dtype=complex)
    y = np.cross(w.real, w.imag, axis=-1)
    n = np.linalg.norm(y, axis=-1, keepdims=True)
    if np.any(n < 1e-14):
        raise ValueError("omega_1, omega_2 degenerate at a sample point")
    return y / n


def transverse_conformal_check(family: str, param, points, t=1e-3, fd_h=1e-4):
    """Residual of L_Y w ^ w = 0 with the Lie derivative from the flow.

    Y spans ker(w1) and ker(w2); its flow is integrated with RK4 and the
    pullback differentiated in t by a 4th-order stencil.  Returns the max
    over points of |(L_Y w) ^ w| together with the max deviation from the
    exact Cartan-formula value i_Y d(w).
    """
    fam = SphereFamily(name=family, param=complex(param))

    worst_prop = 0.0
    worst_cartan = 0.0
    for x in np.asarray(points, dtype=float):
        chart = "north" if x[3] <= 0 else "south"
        u = x[:3] / (1.0 - x[3] if chart == "north" else 1.0 + x[3])

        def y_field(uu):
            return kernel_field(fam.omega_chart(uu, chart))

        def flow(uu, tt, steps=8):
            dt = tt / steps
            v = uu.astype(float).copy()
            for _ in range(steps):
                k1 = y_field(v)
                k2 = y_field(v + 0.5 * dt * k1)
                k3 = y_field(v + 0.5 * dt * k2)
                k4 = y_field(v + dt * k3)
                v = v + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
            return v

        def pullback(tt):
            """(phi_t)^* w at u: w(phi(u)) . d(phi)."""
            base = flow(u, tt)
            w_at = fam.omega_chart(base, chart)
            jac = np.empty((3, 3))
            for i in range(3):
                e = np.zeros(3)
                e[i] = fd_h
                jac[i] = (flow(u + e, tt) - flow(u - e, tt)) / (2 * fd_h)
            # (phi^* w)_i = sum_a w_a d(phi_a)/d(u_i)
            return jac @ w_at

        lie = (pullback(-2 * t) - 8 * pullback(-t) + 8 * pullback(t)
               - pullback(2 * t)) / (12 * t)
        w0 = fam.omega_chart(u, chart)
        prop = _wedge11_arr(lie[None, :], w0[None, :])[0]
        worst_prop = max(worst_prop, float(np.max(np.abs(prop))))
        # independent cross-check: L_Y w = i_Y dw with the exact ambient dw
        b = fam.domega_chart(u, chart)
        y0 = kernel_field(w0)
        iydw = np.array(
            [
                -b[0] * y0[1] - b[1] * y0[2],
                b[0] * y0[0] - b[2] * y0[2],
                b[1] * y0[0] + b[2] * y0[1],
            ]
        )
        worst_cartan = max(worst_cartan, float(np.max(np.abs(lie - iydw))))
    return worst_prop, worst_cartan
