"""Fixed points of admissible weighted compositions.

For an admissible pair (F, phi) with phi not a rotation the unique fixed point
of ``f -> F * (f o phi)`` is the infinite product

    G = prod_{k >= 0} F o phi_k,        phi_k = k-fold iterate of phi,

which converges locally uniformly because ``|phi_k(z)| <= delta**k |z|`` on
``|z| <= r`` with ``delta = max_{|z|=r} |phi| / r < 1``.  Products are
evaluated pointwise by iterating ``z -> phi(z)``; no composite trees are built.

When phi is a rotation the fixed points are classified instead (identity,
rotation of finite order, or of infinite order at the tested resolution).
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import optimize

from .diskmaps import UnitComplex
from .errors import ConvergenceError, DomainError, PreconditionError
from .model import DiskGrid, PositiveRealMap, SchwarzMap, _as_map, evaluate
from .preservation import SymbolPair, scan_pair

ROTATION_TOL = 1e-9
ROTATION_NMAX = 720


@dataclass(frozen=True)
class RotationClass:
    tag: str  # 'not-rotation', 'identity', 'rational', 'irrational'
    lam: Optional[complex] = None
    order: Optional[int] = None
    n_max: int = ROTATION_NMAX

    @property
    def is_rotation(self) -> bool:
        return self.tag != "not-rotation"

    def to_dict(self) -> dict:
        lam = None if self.lam is None else [self.lam.real, self.lam.imag]
        return {"tag": self.tag, "lambda": lam, "order": self.order, "n_max": self.n_max}


def _probe_points() -> np.ndarray:
    return DiskGrid(tuple(np.linspace(0.1, 0.95, 8)), 24, 0.95).points()


def classify_rotation(phi, tol: float = ROTATION_TOL, n_max: int = ROTATION_NMAX) -> RotationClass:
    """Decide whether phi is ``z -> lam z`` and, if so, the order of ``lam``.

    ``lam`` is read off at ``z = 1/2``.  Orders up to ``n_max`` are searched;
    beyond that the rotation is reported as irrational at this resolution.
    """
    f = _as_map(phi)
    lam = evaluate(f, 0.5) / 0.5
    if abs(abs(lam) - 1) > tol:
        return RotationClass("not-rotation", n_max=n_max)
    pts = _probe_points()
    if np.max(np.abs(evaluate(f, pts) - lam * pts)) >= tol:
        return RotationClass("not-rotation", n_max=n_max)
    lam = lam / abs(lam)
    if abs(lam - 1) < tol:
        return RotationClass("identity", lam, 1, n_max)
    power = lam
    for n in range(2, n_max + 1):
        power *= lam
        if abs(power - 1) < tol:
            return RotationClass("rational", lam, n, n_max)
    return RotationClass("irrational", lam, None, n_max)


def max_modulus_on_circle(phi, r: float, M: int = 1024) -> float:
    """``max_{|z| = r} |phi(z)|``: dense sampling, then a local refinement of the best sample."""
    f = _as_map(phi)
    theta = 2 * np.pi * np.arange(M) / M
    mods = np.abs(evaluate(f, r * np.exp(1j * theta)))
    k = int(np.argmax(mods))
    h = 2 * np.pi / M
    res = optimize.minimize_scalar(
        lambda t: -abs(evaluate(f, r * complex(math.cos(t), math.sin(t)))),
        bounds=(theta[k] - h, theta[k] + h), method="bounded", options={"xatol": 1e-12},
    )
    return float(max(mods[k], -res.fun))


def contraction_factor(phi, r: float, M: int = 1024) -> float:
    """``delta = m(r)/r`` with ``m(r)`` the maximum modulus of phi on ``|z| = r``."""
    if not 0 < r < 1:
        raise DomainError("r must lie in (0, 1)")
    rc = classify_rotation(phi)
    if rc.is_rotation:
        raise PreconditionError(f"phi is a rotation ({rc.tag}); no contraction", detail=rc)
    return max_modulus_on_circle(phi, r, M) / r


def apply_transform(F, phi, f, z):
    """``F(z) * f(phi(z))``."""
    return evaluate(_as_map(F), z) * evaluate(_as_map(f), evaluate(_as_map(phi), z))


def transform_power(F, phi, f, n: int, z):
    """n-th iterate of the transformation applied to f, evaluated at z.

    Equals ``prod_{k<n} F(phi_k(z)) * f(phi_n(z))``.
    """
    Fm, pm, fm = _as_map(F), _as_map(phi), _as_map(f)
    zk = np.asarray(z, dtype=complex)
    prod = np.ones_like(zk)
    for _ in range(n):
        prod = prod * evaluate(Fm, zk)
        zk = evaluate(pm, zk)
    out = prod * evaluate(fm, zk)
    return complex(out) if np.ndim(out) == 0 else out


class FixedPointFunction:
    """Partial product ``prod_{k<n} F(phi_k(z))`` with a per-point memo.

    Reads go straight to the dict; writes take a lock.  Cached and fresh
    evaluations are identical.
    """

    def __init__(self, F, phi, n_terms: int):
        self.F = _as_map(F)
        self.phi = _as_map(phi)
        self.n_terms = int(n_terms)
        self._memo = {}
        self._lock = threading.Lock()

    def _compute(self, z: np.ndarray) -> np.ndarray:
        prod = np.ones_like(z)
        zk = z
        for _ in range(self.n_terms):
            prod = prod * evaluate(self.F, zk)
            zk = evaluate(self.phi, zk)
        return prod

    def __call__(self, z):
        arr = np.asarray(z, dtype=complex)
        flat = arr.ravel()
        out = np.empty_like(flat)
        missing = []
        for i, w in enumerate(flat.tolist()):
            hit = self._memo.get(w)
            if hit is None:
                missing.append(i)
            else:
                out[i] = hit
        if missing:
            idx = np.asarray(missing)
            vals = self._compute(flat[idx])
            out[idx] = vals
            with self._lock:
                for w, v in zip(flat[idx].tolist(), vals.tolist()):
                    self._memo[w] = v
        out = out.reshape(arr.shape)
        return complex(out) if arr.ndim == 0 else out

    def cache_size(self) -> int:
        return len(self._memo)


@dataclass
class FixedPointResult:
    G: FixedPointFunction
    n_terms: int
    r: float
    tail_bound: float
    residual: float
    delta: float
    g0_error: float
    min_real_part: float
    samples: np.ndarray = field(repr=False)

    def to_dict(self, max_rows: Optional[int] = None) -> dict:
        pts = self.samples if max_rows is None else self.samples[:max_rows]
        vals = self.G(pts)
        return {
            "n_terms": self.n_terms,
            "r": self.r,
            "delta": self.delta,
            "tail_bound": self.tail_bound,
            "residual": self.residual,
            "g0_error": self.g0_error,
            "min_real_part": self.min_real_part,
            "samples": [
                {"z": [float(z.real), float(z.imag)], "G": [float(g.real), float(g.imag)]}
                for z, g in zip(pts.tolist(), vals.tolist())
            ],
            "units": {"delta": "dimensionless", "tail_bound": "dimensionless", "residual": "dimensionless"},
        }


def tail_bound(r: float, delta: float, n: int) -> float:
    """Majorant ``(2r/(1-r)) delta**n / (1 - delta)`` of the product tail from term n."""
    return (2 * r / (1 - r)) * delta**n / (1 - delta)


def terms_for(r: float, delta: float, tol: float) -> int:
    """Smallest n with ``tail_bound(r, delta, n) < tol``."""
    if delta <= 0:
        return 1
    n = math.log(tol * (1 - delta) * (1 - r) / (2 * r)) / math.log(delta)
    n = max(1, math.ceil(n))
    while tail_bound(r, delta, n) >= tol:
        n += 1
    return n


def sample_disk(r: float, n_radii: int = 9, M: int = 32) -> np.ndarray:
    return DiskGrid(tuple(np.linspace(0.0, r, n_radii)), M, r).points()


def fixed_point(F, phi, r: float = 0.8, tol: float = 1e-12, n_max: int = 10_000,
                grid: Optional[DiskGrid] = None, check_admissible: bool = True) -> FixedPointResult:
    """Construct the unique fixed point G on ``|z| <= r``.

    Refuses rotations and pairs that fail the admissibility scan.  The term
    count comes from the tail majorant; the residual
    ``max |F(z) G(phi(z)) - G(z)|`` over samples in ``|z| <= r`` is then
    checked and the count doubled until it is below ``tol``.
    """
    if not 0 < r < 1:
        raise DomainError("r must lie in (0, 1)")
    if tol <= 0:
        raise DomainError("tol must be positive")
    rc = classify_rotation(phi)
    if rc.is_rotation:
        raise PreconditionError(f"phi is a rotation ({rc.tag}); fixed points are not unique", detail=rc)
    if check_admissible:
        if not isinstance(F, PositiveRealMap) or not isinstance(phi, SchwarzMap):
            pair = SymbolPair.certify(F, phi, grid)
        else:
            pair = SymbolPair(F, phi)
        report = scan_pair(pair, grid)
        if not report.holds:
            raise PreconditionError("pair is not admissible on the grid", detail=report)
    Fm, pm = _as_map(F), _as_map(phi)
    delta = contraction_factor(pm, r)
    n = terms_for(r, delta, tol)
    if n > n_max:
        raise ConvergenceError(f"tail bound needs {n} terms > n_max={n_max}")
    pts = sample_disk(r)
    while True:
        G = FixedPointFunction(Fm, pm, n)
        gz = G(pts)
        residual = float(np.max(np.abs(evaluate(Fm, pts) * G(evaluate(pm, pts)) - gz)))
        if residual <= tol:
            break
        if 2 * n > n_max:
            raise ConvergenceError(f"residual {residual:.3e} > tol with n_max={n_max} terms")
        n *= 2
    g0 = abs(G(0j) - 1)
    return FixedPointResult(
        G=G, n_terms=n, r=r, tail_bound=tail_bound(r, delta, n), residual=residual,
        delta=delta, g0_error=float(g0), min_real_part=float(gz.real.min()), samples=pts,
    )


def nfold_symmetry_check(f, n: int, grid: Optional[DiskGrid] = None, tol: float = 1e-10) -> bool:
    """Whether ``f(lam z) == f(z)`` on the grid for ``lam = exp(2 pi i/n)``.

    Agreement is relative to ``max(1, |f(z)|)``: near the circle the values
    of half-plane type maps grow like ``1/(1 - |z|)`` and absolute rounding
    grows with them.
    """
    if n < 1:
        raise DomainError("n must be at least 1")
    grid = grid or DiskGrid.default()
    fm = _as_map(f)
    pts = grid.points()
    lam = UnitComplex.from_turns(1.0 / n).value
    a = evaluate(fm, pts)
    b = evaluate(fm, lam * pts)
    return bool(np.all(np.abs(a - b) <= tol * np.maximum(1.0, np.abs(a))))
