"""Elliptic automorphic Lie algebras: theta intertwiners, sl(2) normal forms,
exact quotient-ring checks and the Landau-Lifshitz zero-curvature pair."""
from .elliptic import CurveParams, Lattice, TorusPoint, mu, tau_from_r, wp, wp_prime, wp_zero
from .errors import (
    AliaError,
    BranchError,
    CalibrationError,
    ConvergenceError,
    DegenerateError,
    DomainError,
    OffCurveError,
    PoleError,
    SingularError,
    ThetaOverflowError,
)
from .theta import ModularParam, identity_residuals, theta_deriv, theta_general, theta_jacobi, theta_null

__version__ = "0.1.0"

__all__ = [
    "AliaError", "BranchError", "CalibrationError", "ConvergenceError", "CurveParams",
    "DegenerateError", "DomainError", "Lattice", "ModularParam", "OffCurveError", "PoleError",
    "SingularError", "ThetaOverflowError", "TorusPoint", "identity_residuals", "mu", "tau_from_r",
    "theta_deriv", "theta_general", "theta_jacobi", "theta_null", "wp", "wp_prime", "wp_zero",
]
