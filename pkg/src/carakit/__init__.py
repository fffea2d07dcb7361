"""carakit: weighted compositions preserving the Caratheodory class.

Decide whether ``f -> F * (f o phi)`` maps the class of analytic functions on
the unit disk with positive real part and ``f(0) = 1`` into itself, diagnose
boundary behaviour of the symbols, and build the unique fixed point.
"""
__version__ = "0.1.0"

from .diskmaps import (
    LensParameter, UnitComplex, cayley_inverse, halfplane_map, lens_map,
    principal_arg, principal_power,
)
from .dsl import ParseDiagnostic, ParseError, format_map, parse
from .errors import (
    CaraKitError, CertificationError, ConvergenceError, DomainError, PoleError,
    PreconditionError,
)
from .model import (
    AnalyticMap, DiskGrid, PositiveRealMap, SchwarzMap, certify_positive_real,
    certify_schwarz, evaluate, iterate, sup_norm_estimate,
)
from .preservation import (
    CriterionReport, SymbolPair, argbound_sufficient, lens_threshold,
    multiplier_rigidity_witness, omega_lambda, omega_norm_sufficient,
    rotation_test, scan_pair, sector_sufficient, slack_c, slack_d,
)
from .fixedpoint import (
    FixedPointResult, RotationClass, apply_transform, classify_rotation,
    contraction_factor, fixed_point, nfold_symmetry_check,
)
