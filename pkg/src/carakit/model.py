"""Analytic maps on the unit disk as immutable expression trees.

An :class:`AnalyticMap` is a small expression tree in the single variable
``z``.  Trees are frozen dataclasses, so they hash, compare structurally and
can be shared freely between threads.  Evaluation is vectorised over numpy
arrays of sample points.

The module also holds the sampling lattice :class:`DiskGrid` and the two
certified wrappers, :class:`SchwarzMap` and :class:`PositiveRealMap`, whose
constructors are :func:`certify_schwarz` and :func:`certify_positive_real`.
"""
from __future__ import annotations

import math
import numbers
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Tuple

import numpy as np

from . import diskmaps
from .errors import CertificationError, DomainError, PoleError

NORMALIZATION_TOL = 1e-12
EVAL_RADIUS_TOL = 1e-12
MAX_TREE_NODES = 10_000
MAX_TREE_DEPTH = 256


def _as_map(x) -> "AnalyticMap":
    if isinstance(x, AnalyticMap):
        return x
    if isinstance(x, (SchwarzMap, PositiveRealMap)):
        return x.map
    if isinstance(x, numbers.Number):
        return Const(complex(x))
    raise TypeError(f"cannot use {type(x).__name__} as an analytic map")


class AnalyticMap:
    """Base class of expression nodes.

    Subclasses implement ``_eval(z)`` on a complex numpy array and
    ``children``.  Arithmetic operators build new trees; ``f @ g`` is the
    composition ``f o g``.
    """

    children: Tuple["AnalyticMap", ...] = ()

    def _eval(self, z: np.ndarray) -> np.ndarray:  # pragma: no cover - abstract
        raise NotImplementedError

    def __call__(self, z):
        return evaluate(self, z)

    @cached_property
    def size(self) -> int:
        return 1 + sum(c.size for c in self.children)

    @cached_property
    def depth(self) -> int:
        return 1 + max((c.depth for c in self.children), default=0)

    def __add__(self, other):
        return Add(self, _as_map(other))

    def __radd__(self, other):
        return Add(_as_map(other), self)

    def __sub__(self, other):
        return Sub(self, _as_map(other))

    def __rsub__(self, other):
        return Sub(_as_map(other), self)

    def __mul__(self, other):
        return Mul(self, _as_map(other))

    def __rmul__(self, other):
        return Mul(_as_map(other), self)

    def __truediv__(self, other):
        return Div(self, _as_map(other))

    def __rtruediv__(self, other):
        return Div(_as_map(other), self)

    def __neg__(self):
        return Sub(Const(0j), self)

    def __pow__(self, exponent):
        if not isinstance(exponent, numbers.Real):
            raise TypeError("only real exponents are supported")
        return Power(self, float(exponent))

    def __matmul__(self, inner):
        return Compose(self, _as_map(inner))

    def __str__(self):
        from .dsl import format_map

        return format_map(self)


# -- leaves -------------------------------------------------------------------


@dataclass(frozen=True, eq=True)
class Var(AnalyticMap):
    """The identity map ``z``."""

    def _eval(self, z):
        return z


@dataclass(frozen=True, eq=True)
class Const(AnalyticMap):
    value: complex

    def _eval(self, z):
        return np.full(z.shape, complex(self.value))


@dataclass(frozen=True, eq=True)
class HalfPlane(AnalyticMap):
    """``(1 + lam z)/(1 - lam z)``; ``lam = 1`` is the plain half-plane map."""

    lam: complex = 1 + 0j

    def __post_init__(self):
        object.__setattr__(self, "lam", diskmaps.UnitComplex(self.lam).value)

    def _eval(self, z):
        return np.asarray(diskmaps.halfplane_map(z, self.lam))


@dataclass(frozen=True, eq=True)
class Lens(AnalyticMap):
    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", diskmaps.LensParameter(self.alpha).alpha)

    def _eval(self, z):
        return np.asarray(diskmaps.lens_map(z, self.alpha))


@dataclass(frozen=True, eq=True)
class Rotation(AnalyticMap):
    lam: complex

    def __post_init__(self):
        object.__setattr__(self, "lam", diskmaps.UnitComplex(self.lam).value)

    def _eval(self, z):
        return self.lam * z


@dataclass(frozen=True, eq=True)
class Dilation(AnalyticMap):
    factor: complex

    def _eval(self, z):
        return complex(self.factor) * z


# -- interior nodes -------------------------------------------------------------


@dataclass(frozen=True, eq=True)
class _Binary(AnalyticMap):
    left: AnalyticMap
    right: AnalyticMap

    @property
    def children(self):
        return (self.left, self.right)


class Add(_Binary):
    def _eval(self, z):
        return self.left._eval(z) + self.right._eval(z)


class Sub(_Binary):
    def _eval(self, z):
        return self.left._eval(z) - self.right._eval(z)


class Mul(_Binary):
    def _eval(self, z):
        return self.left._eval(z) * self.right._eval(z)


class Div(_Binary):
    def _eval(self, z):
        num = self.left._eval(z)
        den = self.right._eval(z)
        bad = den == 0
        if np.any(bad):
            raise PoleError(
                "division by zero", subexpr=str(self.right), point=complex(z.flat[np.argmax(bad)])
            )
        return num / den


@dataclass(frozen=True, eq=True)
class Power(AnalyticMap):
    """Principal-branch real power of ``base``."""

    base: AnalyticMap
    exponent: float

    @property
    def children(self):
        return (self.base,)

    def _eval(self, z):
        w = self.base._eval(z)
        try:
            return np.asarray(diskmaps.principal_power(w, self.exponent))
        except DomainError as exc:
            bad = w == 0
            raise PoleError(str(exc), subexpr=str(self), point=complex(z.flat[np.argmax(bad)])) from exc


@dataclass(frozen=True, eq=True)
class Compose(AnalyticMap):
    """``outer o inner``."""

    outer: AnalyticMap
    inner: AnalyticMap

    @property
    def children(self):
        return (self.outer, self.inner)

    def _eval(self, z):
        return self.outer._eval(self.inner._eval(z))


@dataclass(frozen=True, eq=True)
class Iterate(AnalyticMap):
    """``base`` composed with itself ``n`` times, applied repeatedly.

    Used in place of a nested :class:`Compose` chain once the expanded tree
    would exceed the size or depth limits.
    """

    base: AnalyticMap
    n: int

    @property
    def children(self):
        return (self.base,)

    @cached_property
    def size(self) -> int:
        return 1 + self.base.size

    def _eval(self, z):
        for _ in range(self.n):
            z = self.base._eval(z)
        return z


Z = Var()
ONE = Const(1 + 0j)


def evaluate(f, z):
    """Evaluate ``f`` at a point or array of points with ``|z| <= 1``.

    Raises :class:`~carakit.errors.DomainError` outside the closed disk and
    :class:`~carakit.errors.PoleError` when a pole is met.
    """
    f = _as_map(f)
    arr = np.asarray(z, dtype=complex)
    if np.any(np.abs(arr) > 1.0 + EVAL_RADIUS_TOL):
        raise DomainError("evaluation point outside the closed unit disk")
    scalar = arr.ndim == 0
    with np.errstate(all="ignore"):
        out = np.asarray(f._eval(np.atleast_1d(arr)), dtype=complex)
    if scalar:
        return complex(out.reshape(-1)[0])
    return out.reshape(arr.shape)


def to_F(omega) -> AnalyticMap:
    """The class-P function ``l o omega`` paired with a Schwarz-type ``omega``."""
    return Compose(HalfPlane(), _as_map(omega))


def omega_of(F) -> AnalyticMap:
    """Schwarz factor ``(F - 1)/(F + 1)`` of ``F``.

    Exact when ``F`` is written as ``l o g``: then ``g`` itself is returned.
    """
    F = _as_map(F)
    if isinstance(F, Compose) and F.outer == HalfPlane():
        return F.inner
    if F == HalfPlane():
        return Z
    return Div(Sub(F, ONE), Add(F, ONE))


def iterate(phi, n: int) -> AnalyticMap:
    """The n-fold composite of ``phi``; ``iterate(phi, 0)`` is the identity."""
    if n < 0:
        raise DomainError("iteration count must be non-negative")
    base = _as_map(phi)
    if n == 0:
        return Z
    if n * base.size > MAX_TREE_NODES or n * base.depth > MAX_TREE_DEPTH:
        return Iterate(base, n)
    out = base
    for _ in range(n - 1):
        out = Compose(out, base)
    return out


def sup_norm_estimate(f, boundary_samples: int = 4096, r: float = 1 - 1e-6) -> float:
    """Maximum of ``|f|`` over equally spaced samples on the circle of radius r."""
    theta = 2 * np.pi * np.arange(boundary_samples) / boundary_samples
    return float(np.max(np.abs(evaluate(f, r * np.exp(1j * theta)))))


# -- sampling lattice -----------------------------------------------------------


@dataclass(frozen=True)
class DiskGrid:
    """Polar lattice with radii refined geometrically toward the circle.

    The default radii are ``1 - 2**(-j/4)`` for ``j = 0..40`` (so
    ``r_max = 1 - 2**-10``) and there are 64 angles.  In general
    ``r_j = 1 - (1 - r_max)**(j/J)``.
    """

    radii: Tuple[float, ...]
    M: int
    r_max: float

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        if not radii:
            raise DomainError("grid needs at least one radius")
        if any(b <= a for a, b in zip(radii, radii[1:])):
            raise DomainError("grid radii must be strictly increasing")
        if radii[0] < 0 or not self.r_max < 1 or radii[-1] > self.r_max:
            raise DomainError("grid radii must lie in [0, r_max] with r_max < 1")
        if self.M < 1:
            raise DomainError("grid needs at least one angle")
        object.__setattr__(self, "radii", radii)

    @classmethod
    def geometric(cls, J: int = 40, M: int = 64, r_max: float = 1 - 2.0**-10) -> "DiskGrid":
        if J < 1:
            raise DomainError("J must be at least 1")
        if not 0 < r_max < 1:
            raise DomainError("r_max must lie in (0, 1)")
        gap = 1.0 - r_max
        radii = [1.0 - gap ** (j / J) for j in range(J + 1)]
        radii[0] = 0.0
        radii[-1] = r_max
        return cls(tuple(radii), M, r_max)

    default = geometric

    @property
    def angles(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.M) / self.M

    @cached_property
    def _points(self) -> np.ndarray:
        ring = np.exp(1j * self.angles)
        pts = []
        for r in self.radii:
            if r == 0:
                pts.append(np.zeros(1, dtype=complex))
            else:
                pts.append(r * ring)
        return np.concatenate(pts)

    def points(self) -> np.ndarray:
        """All sample points (the origin appears once)."""
        return self._points.copy()

    def __len__(self):
        return len(self._points)

    def describe(self) -> dict:
        return {"J": len(self.radii) - 1, "M": self.M, "r_max": self.r_max, "n_points": len(self)}


# -- certified wrappers --------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    """Sampled evidence behind a membership claim."""

    grid: DiskGrid
    max_modulus: float
    value_at_zero: complex
    min_real_part: Optional[float] = None


@dataclass(frozen=True)
class SchwarzMap:
    map: AnalyticMap
    certificate: Certificate

    def __call__(self, z):
        return evaluate(self.map, z)


@dataclass(frozen=True)
class PositiveRealMap:
    F: AnalyticMap
    omega: AnalyticMap
    certificate: Certificate

    @property
    def map(self) -> AnalyticMap:
        return self.F

    def __call__(self, z):
        return evaluate(self.F, z)


def _reject(message, pts, mask):
    idx = int(np.argmax(mask))
    raise CertificationError(message, witness=complex(pts[idx]))


def certify_schwarz(f, grid: Optional[DiskGrid] = None, rtol: float = 1e-12) -> SchwarzMap:
    """Check ``f(0) = 0``, ``|f| < 1`` and ``|f(z)| <= |z|`` on the grid."""
    f = _as_map(f)
    grid = grid or DiskGrid.default()
    f0 = evaluate(f, 0j)
    if abs(f0) > NORMALIZATION_TOL:
        raise CertificationError(f"f(0) = {f0} != 0", witness=0j)
    pts = grid.points()
    mod = np.abs(evaluate(f, pts))
    if not np.all(np.isfinite(mod)):
        _reject("non-finite value", pts, ~np.isfinite(mod))
    if np.any(mod >= 1):
        _reject("|f| >= 1 at a sample", pts, mod >= 1)
    bound = np.abs(pts) * (1 + rtol) + NORMALIZATION_TOL
    if np.any(mod > bound):
        _reject("Schwarz bound |f(z)| <= |z| fails", pts, mod > bound)
    return SchwarzMap(f, Certificate(grid, float(mod.max()), f0))


def certify_positive_real(f, grid: Optional[DiskGrid] = None, rtol: float = 1e-10) -> PositiveRealMap:
    """Check ``F(0) = 1``, ``Re F > 0`` and the growth bound on the grid.

    The paired Schwarz factor ``omega = (F - 1)/(F + 1)`` must itself pass
    :func:`certify_schwarz`.
    """
    F = _as_map(f)
    grid = grid or DiskGrid.default()
    F0 = evaluate(F, 0j)
    if abs(F0 - 1) > NORMALIZATION_TOL:
        raise CertificationError(f"F(0) = {F0} != 1", witness=0j)
    pts = grid.points()
    vals = evaluate(F, pts)
    if not np.all(np.isfinite(vals)):
        _reject("non-finite value", pts, ~np.isfinite(vals))
    if np.any(vals.real <= 0):
        _reject("Re F <= 0 at a sample", pts, vals.real <= 0)
    r = np.abs(pts)
    mod = np.abs(vals)
    lo = (1 - r) / (1 + r)
    hi = (1 + r) / (1 - r)
    bad = (mod < lo * (1 - rtol)) | (mod > hi * (1 + rtol))
    if np.any(bad):
        _reject("growth bound l(-|z|) <= |F(z)| <= l(|z|) fails", pts, bad)
    omega = omega_of(F)
    try:
        certify_schwarz(omega, grid, rtol=1e-9)
    except CertificationError as exc:
        raise CertificationError(f"Schwarz factor of F: {exc}", witness=exc.witness) from exc
    return PositiveRealMap(F, omega, Certificate(grid, float(mod.max()), F0, float(vals.real.min())))
