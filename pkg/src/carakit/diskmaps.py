"""Closed-form conformal building blocks on the unit disk.

Every function accepts either a Python scalar or a numpy array and returns
the same kind.  Poles and domain violations raise instead of producing
infinities so that callers scanning grids can react deterministically.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PoleError

UNIT_TOL = 1e-12


@dataclass(frozen=True)
class UnitComplex:
    """A point on the unit circle, used as a rotation parameter."""

    value: complex

    def __post_init__(self):
        v = complex(self.value)
        if abs(abs(v) - 1.0) > UNIT_TOL:
            raise DomainError(f"|{v}| != 1 (rotation parameter must be unimodular)")
        object.__setattr__(self, "value", v)

    @classmethod
    def from_turns(cls, t: float) -> "UnitComplex":
        """Return exp(2*pi*i*t)."""
        return cls(complex(math.cos(2 * math.pi * t), math.sin(2 * math.pi * t)))

    @classmethod
    def from_angle(cls, theta: float) -> "UnitComplex":
        return cls(complex(math.cos(theta), math.sin(theta)))

    def __complex__(self):
        return self.value


@dataclass(frozen=True)
class LensParameter:
    """Opening parameter of a lens map, strictly between 0 and 1."""

    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if not 0.0 < a < 1.0:
            raise DomainError(f"lens parameter must lie in (0, 1), got {a}")
        object.__setattr__(self, "alpha", a)

    def __float__(self):
        return self.alpha


def _unit(lam) -> complex:
    if isinstance(lam, UnitComplex):
        return lam.value
    return UnitComplex(lam).value


def _alpha(alpha) -> float:
    if isinstance(alpha, LensParameter):
        return alpha.alpha
    return LensParameter(alpha).alpha


def _out(x):
    """Collapse 0-d numpy results to Python scalars."""
    if isinstance(x, np.ndarray) and x.ndim == 0:
        return x.item()
    return x


def principal_arg(w):
    """Principal argument in (-pi, pi].

    ``-pi`` is never returned: a negative real with a signed-zero imaginary
    part maps to ``+pi``.
    """
    w = np.asarray(w, dtype=complex)
    if np.any(w == 0):
        raise DomainError("argument of zero")
    a = np.arctan2(w.imag, w.real)
    a = np.where(a <= -math.pi, math.pi, a)
    return _out(a)


def halfplane_map(z, lam=1.0):
    """Rotated half-plane map (1 + lam*z) / (1 - lam*z)."""
    lam = _unit(lam)
    z = np.asarray(z, dtype=complex)
    lz = lam * z
    den = 1.0 - lz
    if np.any(den == 0):
        raise PoleError("half-plane map pole at lam*z = 1", subexpr="l", point=_first(z, den == 0))
    return _out((1.0 + lz) / den)


def cayley_inverse(w):
    """Inverse of the half-plane map: (w - 1) / (w + 1)."""
    w = np.asarray(w, dtype=complex)
    den = w + 1.0
    if np.any(den == 0):
        raise PoleError("Cayley inverse pole at w = -1", subexpr="cayley", point=_first(w, den == 0))
    return _out((w - 1.0) / den)


def principal_power(w, eps: float):
    """Principal branch of w**eps for real eps.

    ``0**eps`` is 0 for eps > 0 and a domain error otherwise.
    """
    eps = float(eps)
    w = np.asarray(w, dtype=complex)
    zero = w == 0
    if np.any(zero) and eps <= 0:
        raise DomainError(f"0 raised to non-positive power {eps}")
    safe = np.where(zero, 1.0, w)
    arg = np.arctan2(safe.imag, safe.real)
    arg = np.where(arg <= -math.pi, math.pi, arg)
    out = np.exp(eps * (np.log(np.abs(safe)) + 1j * arg))
    out = np.where(zero, 0.0, out)
    return _out(out)


def lens_map(z, alpha):
    """Standard lens map: Cayley inverse of the alpha-th power of the half-plane map."""
    a = _alpha(alpha)
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1.0):
        raise DomainError("lens map is defined on the open unit disk only")
    return _out(cayley_inverse(principal_power(halfplane_map(z, 1.0), a)))


def _first(z, mask):
    z = np.asarray(z)
    if z.ndim == 0:
        return complex(z)
    return complex(z[np.argmax(mask)])
