"""Boundary diagnostics: innerness, radial Julia-Caratheodory traces, the
boundary set where Re F vanishes, and the geometry of the leaf region

    { x + iy : 4|y| sqrt(x^2 + y^2) < (1 - x^2 - y^2)^2 }.

Limits are never certified; traces keep the finite evidence (running minima,
divergence flags) instead.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy import integrate

from . import kernels
from .diskmaps import UnitComplex
from .errors import DomainError, PoleError
from .model import PositiveRealMap, SchwarzMap, _as_map, evaluate


def _circle(r: float, M: int) -> np.ndarray:
    return r * np.exp(2j * np.pi * np.arange(M) / M)


def innerness_score(phi, r: float = 1 - 1e-6, M: int = 4096) -> float:
    """Mean of ``|phi|`` over M equally spaced points on the circle of radius r.

    Tends to 1 as r -> 1 exactly when phi is inner.
    """
    if not 0 < r < 1:
        raise DomainError("r must lie in (0, 1)")
    return float(np.mean(np.abs(evaluate(_as_map(phi), _circle(r, M)))))


@dataclass(frozen=True)
class RadialTrace:
    zeta: complex
    radii: Tuple[float, ...]
    values: Tuple[complex, ...]
    quotients: Tuple[float, ...]
    running_min: Tuple[float, ...]
    divergent: bool
    ceiling: float

    @property
    def liminf_proxy(self) -> float:
        return self.running_min[-1]

    @property
    def last(self) -> float:
        return self.quotients[-1]

    def rows(self):
        for r, v, q, m in zip(self.radii, self.values, self.quotients, self.running_min):
            yield r, v, q, m


def jc_quotient_trace(phi, zeta=1.0, n_radii: int = 20, ceiling: float = 1e3) -> RadialTrace:
    """Julia-Caratheodory quotients ``(1 - |phi(r zeta)|)/(1 - r)`` along a radius.

    Radii are ``1 - 2**-j`` for ``j = 1..n_radii``.  The trace is flagged
    divergent when every quotient in its last quarter exceeds ``ceiling``.
    """
    zeta = zeta.value if isinstance(zeta, UnitComplex) else UnitComplex(zeta).value
    if n_radii < 1:
        raise DomainError("n_radii must be positive")
    j = np.arange(1, n_radii + 1)
    radii = 1.0 - 2.0 ** (-j.astype(float))
    vals = evaluate(_as_map(phi), radii * zeta)
    q = (1.0 - np.abs(vals)) / (1.0 - radii)
    running = np.minimum.accumulate(q)
    tail = q[-max(1, n_radii // 4):]
    return RadialTrace(
        zeta=zeta,
        radii=tuple(radii.tolist()),
        values=tuple(complex(v) for v in vals),
        quotients=tuple(q.tolist()),
        running_min=tuple(running.tolist()),
        divergent=bool(np.all(tail > ceiling)),
        ceiling=ceiling,
    )


@dataclass(frozen=True)
class MeasureEstimate:
    fraction: float
    n_samples: int
    n_poles: int
    r: float
    tol: float


def measure_ReF_zero(F, r: float = 1 - 1e-6, M: int = 4096, tol: float = 1e-3) -> MeasureEstimate:
    """Fraction of M samples on ``|z| = r`` with ``Re F < tol``.

    A sampled proxy for the normalized measure of the boundary set on which
    Re F vanishes.  Samples that hit a pole are skipped and counted.
    """
    if not 0 < r < 1:
        raise DomainError("r must lie in (0, 1)")
    f = _as_map(F)
    pts = _circle(r, M)
    hits, poles = 0, 0
    try:
        vals = evaluate(f, pts)
        good = np.isfinite(vals)
        poles = int(np.count_nonzero(~good))
        hits = int(np.count_nonzero(vals[good].real < tol))
    except PoleError:
        for z in pts:
            try:
                v = evaluate(f, z)
            except PoleError:
                poles += 1
                continue
            hits += v.real < tol
    counted = M - poles
    frac = hits / counted if counted else float("nan")
    return MeasureEstimate(float(frac), M, poles, r, tol)


# -- leaf region ------------------------------------------------------------------


def leaf_contains(w):
    """Membership in the leaf region.

    The defining inequality is evaluated as written, restricted to the open
    unit disk (outside the disk the inequality also holds on an unbounded
    set that is not part of the region).
    """
    out = kernels.leaf_contains(np.asarray(w, dtype=complex))
    out = np.asarray(out)
    return bool(out) if out.ndim == 0 else out


def _leaf_radius(s):
    # 1 - r^2 = 2 (sqrt(s + s^2) - s) = 2 s / (sqrt(s + s^2) + s), written without cancellation
    s = np.asarray(s, dtype=float)
    with np.errstate(invalid="ignore", divide="ignore"):
        gap = np.where(s > 0, 2 * s / (np.sqrt(s + s * s) + s), 0.0)
    return np.sqrt(1.0 - gap), gap


def leaf_boundary_radius(theta):
    """Polar radius of the leaf boundary for ``0 < theta < pi``.

    Solves ``4 r^2 sin(theta) = (1 - r^2)^2``; other directions follow by
    symmetry in both axes.
    """
    th = np.asarray(theta, dtype=float)
    if np.any((th <= 0) | (th >= math.pi)):
        raise DomainError("theta must lie in (0, pi)")
    r, _ = _leaf_radius(np.sin(th))
    return r.item() if r.ndim == 0 else r


def leaf_boundary_curve(n: int = 2048) -> np.ndarray:
    """Rows ``(theta, r, x, y)`` for n equally spaced theta in [0, 2 pi)."""
    th = 2 * np.pi * np.arange(n) / n
    r, _ = _leaf_radius(np.abs(np.sin(th)))
    r = np.where(np.isclose(np.sin(th), 0, atol=1e-15), 1.0, r)
    return np.column_stack([th, r, r * np.cos(th), r * np.sin(th)])


def _one_minus_r(theta):
    r, gap = _leaf_radius(np.sin(theta))
    return gap / (1.0 + r)


def tsuji_integrand(theta, eps: float = math.pi / 2):
    """``(1 - r(theta)) / theta^2`` for ``0 < theta <= eps``."""
    th = np.asarray(theta, dtype=float)
    if np.any((th <= 0) | (th > eps)) or eps >= math.pi:
        raise DomainError("theta must lie in (0, eps] with eps < pi")
    out = _one_minus_r(th) / th**2
    return out.item() if out.ndim == 0 else out


def tsuji_partial_integral(delta: float, eps: float = 0.1) -> float:
    """``int_delta^eps (1 - r(theta))/theta^2 d theta`` by quadrature in log theta."""
    if not 0 < delta < eps < math.pi:
        raise DomainError("need 0 < delta < eps < pi")
    val, _ = integrate.quad(
        lambda u: float(_one_minus_r(math.exp(u))) * math.exp(-u),
        math.log(delta), math.log(eps), epsabs=0, epsrel=1e-10, limit=200,
    )
    return val


def tsuji_ratio_table(thetas=(1e-2, 1e-4, 1e-6, 1e-8)):
    """Rows ``(theta, integrand, theta**1.5 * integrand)``; the last column tends to 1."""
    return [(t, tsuji_integrand(t), t**1.5 * tsuji_integrand(t)) for t in thetas]


def angular_derivative_crosscheck(phi, omega, zeta=1.0, n_radii: int = 20, eta: float = 1e-3) -> dict:
    """Observable signature of the angular-derivative obstruction at ``zeta``.

    When the phi trace converges to a finite quotient, the omega trace should
    diverge or omega should stay at distance ``eta`` from the circle.
    """
    tp = jc_quotient_trace(phi, zeta, n_radii)
    tw = jc_quotient_trace(omega, zeta, n_radii)
    phi_finite = not tp.divergent
    omega_far = max(abs(v) for v in tw.values) < 1 - eta
    return {
        "phi_quotient": tp.last,
        "phi_finite": phi_finite,
        "omega_divergent": tw.divergent,
        "omega_bounded_away": omega_far,
        "consistent": (not phi_finite) or tw.divergent or omega_far,
    }
