"""Admissibility of symbol pairs (F, phi) for the transformation f -> F * (f o phi).

A pair is admissible when the transformation maps the Caratheodory class
into itself.  Pointwise this is the inequality

    4 |phi| |Im omega| < (1 - |omega|^2)(1 - |phi|^2),      F = l o omega,

equivalently ``|arg F| < arctan((1 - |phi|^2) / (2 |phi|))``, or
``|omega_lambda| < 1`` for every unimodular ``lambda``.  All three forms are
exposed here; grid scans report the worst sampled slack and where it occurs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import kernels
from .diskmaps import UNIT_TOL, UnitComplex, principal_arg
from .errors import DomainError, PoleError
from .model import (
    DiskGrid, PositiveRealMap, SchwarzMap, Var, certify_positive_real,
    certify_schwarz, evaluate,
)

HOLDS = "holds-on-grid"
VIOLATED = "violated"
BOUNDARY_TOL = 1e-12


def _scalar_or_array(x):
    x = np.asarray(x)
    return x.item() if x.ndim == 0 else x


def slack_c(phi_z, omega_z):
    """``(1 - |omega|^2)(1 - |phi|^2) - 4 |phi| |Im omega|``; positive iff admissible at the point."""
    p = np.asarray(phi_z, dtype=complex)
    w = np.asarray(omega_z, dtype=complex)
    if np.any(np.abs(p) >= 1) or np.any(np.abs(w) >= 1):
        raise DomainError("slack_c needs |phi| < 1 and |omega| < 1")
    return _scalar_or_array(kernels.slack_c(p, w))


def slack_d(F_z, phi_z):
    """Angular slack ``arctan((1 - |phi|^2)/(2|phi|)) - |arg F|`` in radians.

    The arctan form equals ``pi/2 - arcsin(2|phi|/(1 + |phi|^2))`` but does
    not cancel as ``|phi| -> 0``; at ``phi = 0`` the first term is ``pi/2``.
    """
    F = np.asarray(F_z, dtype=complex)
    p = np.asarray(phi_z, dtype=complex)
    if np.any(F.real <= 0):
        raise DomainError("slack_d needs Re F > 0")
    if np.any(np.abs(p) >= 1):
        raise DomainError("slack_d needs |phi| < 1")
    return _scalar_or_array(kernels.slack_d(F, p))


def omega_lambda(lam, phi_z, omega_z):
    """Schwarz factor of ``F * (l_lambda o phi)``: ``(lam phi + omega)/(1 + lam phi omega)``."""
    if isinstance(lam, UnitComplex):
        lam = lam.value
    else:
        lam = np.asarray(lam, dtype=complex)
        if np.any(np.abs(np.abs(lam) - 1) > UNIT_TOL):
            raise DomainError("lambda must be unimodular")
    p = np.asarray(phi_z, dtype=complex)
    w = np.asarray(omega_z, dtype=complex)
    den = 1.0 + lam * p * w
    if np.any(den == 0):
        raise PoleError("omega_lambda denominator vanishes", subexpr="1 + lam*phi*omega")
    return _scalar_or_array((lam * p + w) / den)


# -- pairs and reports --------------------------------------------------------


@dataclass(frozen=True)
class SymbolPair:
    F: PositiveRealMap
    phi: SchwarzMap

    @classmethod
    def certify(cls, F, phi, grid: Optional[DiskGrid] = None) -> "SymbolPair":
        """Certify both symbols on ``grid`` (default lattice when omitted)."""
        grid = grid or DiskGrid.default()
        if not isinstance(F, PositiveRealMap):
            F = certify_positive_real(F, grid)
        if not isinstance(phi, SchwarzMap):
            phi = certify_schwarz(phi, grid)
        return cls(F, phi)


@dataclass(frozen=True)
class CriterionReport:
    verdict: str
    min_slack_c: float
    min_slack_d: float
    witness: Optional[complex]
    grid: DiskGrid
    boundary_case: bool
    extrema: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "min_slack_c": self.min_slack_c,
            "min_slack_d": self.min_slack_d,
            "witness": _cplx(self.witness),
            "boundary_case": self.boundary_case,
            "grid": self.grid.describe(),
            "extrema": {k: _cplx(v) if isinstance(v, complex) else v for k, v in self.extrema.items()},
            "units": {"min_slack_c": "dimensionless", "min_slack_d": "radians"},
        }


@dataclass(frozen=True)
class RotationReport:
    verdict: str
    worst_modulus: float
    witness_lambda: complex
    witness_z: complex
    n_lambda: int
    grid: DiskGrid

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "worst_modulus": self.worst_modulus,
            "witness_lambda": _cplx(self.witness_lambda),
            "witness_z": _cplx(self.witness_z),
            "n_lambda": self.n_lambda,
            "grid": self.grid.describe(),
            "units": {"worst_modulus": "dimensionless"},
        }


def _cplx(z):
    if z is None:
        return None
    return [float(complex(z).real), float(complex(z).imag)]


def _sample(pair: SymbolPair, grid: DiskGrid):
    pts = grid.points()
    phi = evaluate(pair.phi.map, pts)
    omega = evaluate(pair.F.omega, pts)
    F = evaluate(pair.F.F, pts)
    return pts, F, phi, omega


def scan_pair(pair: SymbolPair, grid: Optional[DiskGrid] = None, boundary_tol: float = BOUNDARY_TOL) -> CriterionReport:
    """Evaluate both pointwise slacks at every grid point.

    The verdict is ``violated`` when some slack falls below ``-boundary_tol``;
    slacks inside ``[-boundary_tol, 0]`` keep the ``holds-on-grid`` verdict
    but raise ``boundary_case``.
    """
    grid = grid or pair.phi.certificate.grid
    pts, F, phi, omega = _sample(pair, grid)
    if np.any(np.abs(phi) >= 1) or np.any(np.abs(omega) >= 1):
        bad = (np.abs(phi) >= 1) | (np.abs(omega) >= 1)
        raise DomainError(f"symbol leaves the disk at grid point {complex(pts[np.argmax(bad)])}")
    if np.any(F.real <= 0):
        raise DomainError(f"Re F <= 0 at grid point {complex(pts[np.argmax(F.real <= 0)])}")
    sc = kernels.slack_c(phi, omega)
    sd = kernels.slack_d(F, phi)
    ic, id_ = int(np.argmin(sc)), int(np.argmin(sd))
    min_c, min_d = float(sc[ic]), float(sd[id_])
    violated = min_c < -boundary_tol or min_d < -boundary_tol
    witness = None
    if violated:
        witness = complex(pts[ic] if min_c < -boundary_tol else pts[id_])
    arg = np.abs(np.arctan2(F.imag, F.real))
    extrema = {
        "argmin_slack_c": complex(pts[ic]),
        "argmin_slack_d": complex(pts[id_]),
        "max_abs_phi": float(np.abs(phi).max()),
        "max_abs_omega": float(np.abs(omega).max()),
        "max_abs_arg_F": float(arg.max()),
    }
    return CriterionReport(
        verdict=VIOLATED if violated else HOLDS,
        min_slack_c=min_c,
        min_slack_d=min_d,
        witness=witness,
        grid=grid,
        boundary_case=(not violated) and min(min_c, min_d) <= 0,
        extrema=extrema,
    )


def rotation_test(pair: SymbolPair, grid: Optional[DiskGrid] = None, n_lambda: int = 360,
                  boundary_tol: float = BOUNDARY_TOL) -> RotationReport:
    """Check ``|omega_lambda| < 1`` over ``n_lambda`` equally spaced rotations.

    A finite set of rotations can miss a violation that a denser set would
    catch, so a passing result is evidence at this resolution only.
    """
    if n_lambda < 1:
        raise DomainError("n_lambda must be positive")
    grid = grid or pair.phi.certificate.grid
    pts, _, phi, omega = _sample(pair, grid)
    worst, i, k = kernels.rotation_worst(phi, omega, int(n_lambda))
    lam = complex(np.exp(2j * np.pi * k / n_lambda))
    violated = worst * worst - 1.0 > boundary_tol
    return RotationReport(VIOLATED if violated else HOLDS, float(worst), lam, complex(pts[i]), int(n_lambda), grid)


# -- closed-form sufficiency bounds ------------------------------------------------


def sector_sufficient(R: float) -> float:
    """Largest ``sup |arg F|`` (radians) admissible with every phi of sup-norm R."""
    R = float(R)
    if not 0.0 <= R < 1.0:
        raise DomainError("R must lie in [0, 1)")
    return math.pi / 2 - math.asin(2 * R / (1 + R * R))


def argbound_sufficient(K: float) -> float:
    """Sup-norm bound on phi that is admissible with any F of ``|arg F| <= K``.

    ``K = arcsin(2R/(1 + R^2))`` is inverted in closed form as ``R = tan(K/2)``.
    """
    K = float(K)
    if not 0.0 <= K < math.pi / 2:
        raise DomainError("K must lie in [0, pi/2)")
    R = math.tan(K / 2)
    return (1 - R) / (1 + R)


def omega_norm_sufficient(omega_sup: float) -> float:
    """``(1 - s)/(1 + s)`` for ``s = sup |omega|``."""
    s = float(omega_sup)
    if not 0.0 <= s < 1.0:
        raise DomainError("sup |omega| must lie in [0, 1)")
    return (1 - s) / (1 + s)


def lens_threshold(alpha) -> float:
    """Exact sup-norm threshold on phi for ``F = l o lens_alpha``.

    Here ``sup |arg F| = alpha pi/2``, so this is ``argbound_sufficient`` at
    that angle; unlike the other bounds it is also necessary.
    """
    a = float(alpha)
    if not 0.0 < a < 1.0:
        raise DomainError("alpha must lie in (0, 1)")
    return argbound_sufficient(a * math.pi / 2)


# -- rigidity -------------------------------------------------------------------


@dataclass(frozen=True)
class RigidityResult:
    confirmed: bool
    witness: Optional[complex]
    report: CriterionReport


def multiplier_rigidity_witness(F: PositiveRealMap, grid: Optional[DiskGrid] = None) -> RigidityResult:
    """Pair F with the identity and look for a violating sample.

    Only ``F == 1`` multiplies the class into itself, so any other F should
    produce a witness once the grid reaches close enough to the circle.
    """
    grid = grid or F.certificate.grid
    ident = certify_schwarz(Var(), grid)
    report = scan_pair(SymbolPair(F, ident), grid)
    return RigidityResult(report.holds, report.witness, report)
