"""The intertwiner Omega on the torus and its intrinsic form on the curve."""
from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .elliptic import CurveParams
from .errors import BranchError, DomainError, PoleError
from .liealg import T1, T2, conj_by, det2, inv2, rep_apply, t1, t2
from .theta import as_modular, theta_jacobi

POLE_TOL = 1e-13


@dataclass(frozen=True)
class OmegaVariant:
    """T1^a1 T2^a2 . Omega . T1^b1 T2^b2."""

    a1: int = 0
    a2: int = 0
    b1: int = 0
    b2: int = 0

    def __post_init__(self):
        if any(x not in (0, 1) for x in (self.a1, self.a2, self.b1, self.b2)):
            raise DomainError("variant exponents must be bits")

    def left(self):
        return np.linalg.matrix_power(T1, self.a1) @ np.linalg.matrix_power(T2, self.a2)

    def right(self):
        return np.linalg.matrix_power(T1, self.b1) @ np.linalg.matrix_power(T2, self.b2)

    def apply(self, M):
        return self.left() @ M @ self.right()

    def as_tuple(self):
        return (self.a1, self.a2, self.b1, self.b2)


BASE = OmegaVariant()
VARIANTS = tuple(OmegaVariant(*bits) for bits in itertools.product((0, 1), repeat=4))


def _theta1_2z(z, mp):
    d = theta_jacobi(1, 2 * z, mp)
    if abs(d) < POLE_TOL:
        raise PoleError(f"z={z} lies (numerically) in 1/2 Lambda")
    return d


def psi_pm(sign: int, z, tau) -> complex:
    """psi_+ (sign=+1) or psi_- (sign=-1)."""
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    mp = as_modular(tau)
    _, _, t3, t4 = mp.nulls
    d1 = _theta1_2z(z, mp)
    return (
        sign * (t4**2 / t3) * theta_jacobi(3, 2 * z, mp) / d1
        - (t3**2 / t4) * theta_jacobi(4, 2 * z, mp) / d1
    )


def omega(z, tau, variant: OmegaVariant = BASE):
    """Omega(z) = [[th3(2z|2tau), psi_- th2(2z|2tau)], [th2(2z|2tau), psi_+ th3(2z|2tau)]]."""
    mp = as_modular(tau)
    m2 = mp.doubled
    a = theta_jacobi(3, 2 * z, m2)
    c = theta_jacobi(2, 2 * z, m2)
    M = np.array([[a, psi_pm(-1, z, mp) * c], [c, psi_pm(1, z, mp) * a]], dtype=complex)
    if variant != BASE:
        M = variant.apply(M)
    return M


def omega_det_expected(z, tau) -> complex:
    """-theta_2(0)^2 theta_1(2z)."""
    mp = as_modular(tau)
    return -mp.nulls[1] ** 2 * theta_jacobi(1, 2 * z, mp)


def _norm(M) -> float:
    return float(np.max(np.abs(M)))


def omega_transform_check(z, tau, variant: OmegaVariant = BASE) -> dict:
    """Residuals of the three transformation laws plus controls.

    Keys: ``t1``, ``t2``, ``parity`` (matrix laws, relative to max(1, |lhs|)); ``t2_no_prefactor``
    (negative control, expected to be large); ``ad_t1``, ``ad_t2``, ``ad_parity``
    (Ad-level laws, checked on h, e, f).
    """
    mp = as_modular(tau)
    t = mp.tau
    Om = omega(z, mp, variant)
    O1 = omega(z + 0.5, mp, variant)
    O2 = omega(z + t / 2, mp, variant)
    Om_neg = omega(-z, mp, variant)
    pref = cmath.exp(-1j * cmath.pi * (2 * z + t / 2))
    out = {}
    if variant == BASE:
        # matrix laws relative to max(1, |lhs|): Omega(z + tau/2) can be large
        out["t1"] = _norm(O1 - T1 @ Om) / max(1.0, _norm(O1))
        out["t2"] = _norm(O2 - pref * T2 @ Om) / max(1.0, _norm(O2))
        out["parity"] = _norm(Om_neg - Om @ T1) / max(1.0, _norm(Om_neg))
        out["t2_no_prefactor"] = _norm(O2 - T2 @ Om) / max(1.0, _norm(O2))
    from .liealg import h, e, f

    ad1 = ad2 = adp = 0.0
    for A in (h, e, f):
        X = conj_by(Om, A)
        ad1 = max(ad1, _norm(conj_by(O1, A) - rep_apply("rho", t1, X)))
        ad2 = max(ad2, _norm(conj_by(O2, A) - rep_apply("rho", t2, X)))
        # parity acts through rho(t1) on the right: Ad(Omega(-z)) = Ad(Omega(z)) Ad(T1)
        adp = max(adp, _norm(conj_by(Om_neg, A) - conj_by(Om, rep_apply("rho", variant_parity(variant), A))))
    out["ad_t1"] = ad1
    out["ad_t2"] = ad2
    out["ad_parity"] = adp
    return out


def variant_parity(variant: OmegaVariant):
    """Group element g with Ad(Omega_v(-z)) = Ad(Omega_v(z)) rho(g).

    Omega_v(-z) = L Omega(z) T1 R = Omega_v(z) R^-1 T1 R, and R^-1 T1 R is
    +-T1 up to sign, so the parity law is rho(t1) for every variant.
    """
    return t1


def ad_omega(z, A, tau, variant: OmegaVariant = BASE):
    """Ad(Omega(z)) A with the closed-form 2x2 inverse."""
    A = np.asarray(A, dtype=complex)
    if abs(A[0, 0] + A[1, 1]) > 1e-12 * max(1.0, _norm(A)):
        raise DomainError("ad_omega expects a traceless matrix")
    M = omega(z, tau, variant)
    return M @ A @ inv2(M)


class LDU(NamedTuple):
    L: np.ndarray
    D: np.ndarray
    U: np.ndarray


def ldu_factor(z, tau) -> LDU:
    """Omega(z) = L D U with unit triangular L, U."""
    mp = as_modular(tau)
    m2 = mp.doubled
    a = theta_jacobi(3, 2 * z, m2)
    c = theta_jacobi(2, 2 * z, m2)
    if abs(a) < POLE_TOL:
        raise PoleError("zero pivot theta_3(2z|2tau)")
    d = det2(omega(z, mp))
    Lm = np.array([[1, 0], [c / a, 1]], dtype=complex)
    Dm = np.array([[a, 0], [0, d / a]], dtype=complex)
    Um = np.array([[1, psi_pm(-1, z, mp) * c / a], [0, 1]], dtype=complex)
    return LDU(Lm, Dm, Um)


# ---------------------------------------------------------------------------
# intrinsic form


def omega_intrinsic(l1, l2, l3, curve: CurveParams, A=None, B=None):
    """Omega on the curve; principal square roots, branches A, B from ``curve``."""
    curve.check_on_curve((l1, l2, l3))
    A = curve.A if A is None else A
    B = curve.B if B is None else B
    sp = cmath.sqrt(A * l2 + B * l3)
    sm = cmath.sqrt(A * l2 - B * l3)
    M = np.array(
        [[sp, (-l2 / A - l3 / B) * sm], [sm, (l2 / A - l3 / B) * sp]], dtype=complex
    )
    return M / cmath.sqrt(2)


class VariantMatch(NamedTuple):
    variant: OmegaVariant
    kappa: complex
    d: complex
    residual: float


def match_omega_variant(z, curve: CurveParams, tol: float = 1e-8) -> VariantMatch:
    """Find a variant with Omega_v(z) = kappa * Omega_int(lambda(z)) * diag(1, d).

    kappa and d are fitted from the (1,1) and (1,2) entries and validated on
    the other two.  Raises BranchError when no variant matches.
    """
    lam = curve.uniformize(z)
    OL = omega_intrinsic(*lam, curve)
    best = None
    for v in VARIANTS:
        Ov = omega(z, curve.tau, v)
        kappa = Ov[0, 0] / OL[0, 0]
        d = Ov[0, 1] / (kappa * OL[0, 1])
        fit = kappa * OL @ np.diag([1, d])
        res = _norm(fit - Ov) / max(1.0, _norm(Ov))
        if best is None or res < best.residual:
            best = VariantMatch(v, complex(kappa), complex(d), res)
    if best.residual > tol:
        raise BranchError(f"no Omega variant matches the intrinsic form (best residual {best.residual:.2e})")
    return best


def intrinsic_scaling_residual(z, curve: CurveParams, match: VariantMatch | None = None) -> float:
    """How far the fitted (kappa, d) are from kappa^2 = theta_2^2 theta_1(2z)/s, d^2 = (s/R23)^2.

    Only squares are compared: the signs of kappa and d move with the matched
    variant as the principal square roots change sheet.
    """
    m = match_omega_variant(z, curve) if match is None else match
    mp = curve.tau
    s = curve.scale
    k2 = mp.nulls[1] ** 2 * theta_jacobi(1, 2 * z, mp) / s
    d2 = (s / curve.R(2, 3)) ** 2
    return max(abs(m.kappa**2 / k2 - 1), abs(m.d**2 / d2 - 1))
