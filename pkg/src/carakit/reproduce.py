"""Scripted reproductions of the three worked examples.

1. Sector maps ``F = l**eps`` against dilations ``phi = R z``.
2. ``phi = z(1+z)/2`` with ``omega = z(2-z)/(2K)``: sufficiency above
   ``K = 4 + sqrt(73)/2`` and the smallest K that passes on the grid.
3. The leaf region: membership versus the pointwise criterion with
   ``phi = omega``, its polar boundary, and the divergent integral behind the
   missing angular derivative.
"""
from __future__ import annotations

import math
from typing import Callable, Optional

import numpy as np

from . import boundary
from .model import DiskGrid, Dilation, HalfPlane, Power, Var, Z, certify_positive_real, certify_schwarz
from .preservation import SymbolPair, scan_pair, slack_c

EXAMPLE2_BOUND = 4 + math.sqrt(73) / 2


def bisect_threshold(holds: Callable[[float], bool], lo: float, hi: float, tol: float = 1e-4) -> float:
    """Boundary of a monotone predicate: ``holds(lo) != holds(hi)`` is required."""
    a, b = holds(lo), holds(hi)
    if a == b:
        raise ValueError("predicate does not change between the endpoints")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if holds(mid) == a:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# -- example 1 ------------------------------------------------------------------


def sector_threshold(R: float) -> float:
    """Largest admissible exponent ``1 - (2/pi) arcsin(2R/(1 + R^2))``."""
    return 1 - (2 / math.pi) * math.asin(2 * R / (1 + R * R))


def sector_pair(eps: float, R: float, grid: DiskGrid) -> SymbolPair:
    F = certify_positive_real(Power(HalfPlane(), eps), grid)
    phi = certify_schwarz(Dilation(R), grid)
    return SymbolPair(F, phi)


def example1(R_values=(0.1, 0.2, 1 / 3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9),
             eps_values=tuple(np.round(np.arange(0.05, 1.0, 0.05), 2)),
             grid: Optional[DiskGrid] = None, bisect_tol: float = 1e-4) -> dict:
    grid = grid or DiskGrid.default()
    rows = []
    for R in R_values:
        for eps in eps_values:
            rep = scan_pair(sector_pair(float(eps), R, grid), grid)
            rows.append({"R": R, "eps": float(eps), "verdict": rep.verdict,
                         "min_slack_d": rep.min_slack_d, "threshold": sector_threshold(R)})
    curve = [{"R": R, "threshold": sector_threshold(R),
              "grid_threshold": bisect_threshold(
                  lambda e, R=R: scan_pair(sector_pair(e, R, grid), grid).holds, 1e-3, 1 - 1e-3, bisect_tol)}
             for R in R_values]
    return {"rows": rows, "curve": curve, "grid": grid.describe()}


# -- example 2 ------------------------------------------------------------------


def example2_pair(K: float, grid: DiskGrid) -> SymbolPair:
    phi = certify_schwarz(Z * (1 + Z) / 2, grid)
    omega = Z * (2 - Z) / (2 * K)
    F = certify_positive_real(HalfPlane() @ omega, grid)
    return SymbolPair(F, phi)


def example2(K_values=(8.28, 9.0), grid: Optional[DiskGrid] = None, lo: float = 1.5, hi: float = 9.0,
             bisect_tol: float = 1e-4) -> dict:
    grid = grid or DiskGrid.default()
    checks = []
    for K in K_values:
        rep = scan_pair(example2_pair(K, grid), grid)
        checks.append({"K": K, "verdict": rep.verdict, "min_slack_c": rep.min_slack_c})
    k_min = bisect_threshold(lambda K: scan_pair(example2_pair(K, grid), grid).holds, lo, hi, bisect_tol)
    return {"checks": checks, "grid_minimal_K": k_min, "sufficient_bound": EXAMPLE2_BOUND,
            "grid": grid.describe()}


# -- example 3 ------------------------------------------------------------------


def random_disk_points(n: int, seed: int = 0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    r = np.sqrt(rng.uniform(0, 1, n)) * (1 - 1e-9)
    return r * np.exp(2j * np.pi * rng.uniform(0, 1, n))


def leaf_agreement(n: int = 10_000, seed: int = 0, band: float = 1e-12) -> dict:
    """Compare leaf membership with ``slack_c(w, w) > 0`` on random disk points."""
    w = random_disk_points(n, seed)
    inside = boundary.leaf_contains(w)
    s = np.asarray(slack_c(w, w))
    crit = s > 0
    outside_band = np.abs(s) > band
    disagree = int(np.count_nonzero((inside != crit) & outside_band))
    return {"n": n, "seed": seed, "disagreements": disagree,
            "in_band": int(np.count_nonzero(~outside_band)), "fraction_inside": float(inside.mean())}


def example3(n_random: int = 10_000, seed: int = 0, n_curve: int = 2048) -> dict:
    curve = boundary.leaf_boundary_curve(n_curve)
    r_half = boundary.leaf_boundary_radius(math.pi / 2)
    table = boundary.tsuji_ratio_table((1e-2, 1e-4, 1e-6, 1e-8))
    integrals = [(d, boundary.tsuji_partial_integral(d, 0.1)) for d in (1e-4, 2.5e-5, 6.25e-6)]
    return {
        "agreement": leaf_agreement(n_random, seed),
        "radius_at_half_pi": r_half,
        "radius_at_half_pi_expected": math.sqrt(2) - 1,
        "tsuji_ratio": [{"theta": t, "integrand": v, "ratio": q} for t, v, q in table],
        "partial_integrals": [{"delta": d, "integral": v} for d, v in integrals],
        "curve": curve,
    }
