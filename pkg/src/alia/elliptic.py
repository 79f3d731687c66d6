"""Elliptic functions on C / (Z + Z tau).

mu_i uniformizers, Weierstrass p with lattice scaling, Jacobi sn/cn/dn and the
w_i quotients, the modular lambda function and its AGM inversion, xi_p,
zeros of p, two-point splittings and D2 isotypical projectors.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .errors import (
    ConvergenceError,
    DegenerateError,
    DomainError,
    OffCurveError,
    PoleError,
    SingularError,
)
from .theta import ModularParam, as_modular, theta_deriv, theta_jacobi

POLE_TOL = 1e-13
AGM_MAXITER = 64


# ---------------------------------------------------------------------------
# lattices and torus points


@dataclass(frozen=True)
class Lattice:
    """The lattice scale * (Z + Z tau)."""

    tau: complex
    scale: complex = 1.0

    def __post_init__(self):
        tau = complex(self.tau.tau if isinstance(self.tau, ModularParam) else self.tau)
        scale = complex(self.scale)
        if tau.imag <= 0:
            raise DomainError(f"tau must lie in the upper half plane, got {tau}")
        if scale == 0:
            raise DomainError("lattice scale must be nonzero")
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "scale", scale)

    def half(self) -> "Lattice":
        return Lattice(self.tau, self.scale / 2)

    @property
    def periods(self) -> tuple[complex, complex]:
        return self.scale, self.scale * self.tau

    def coords(self, z):
        """Real coordinates (u, v) with z = scale * (u + v tau)."""
        w = np.asarray(z, dtype=complex) / self.scale
        v = w.imag / self.tau.imag
        u = w.real - v * self.tau.real
        return u, v

    def reduce(self, z):
        """Representative of z in the parallelogram {scale(u + v tau): 0 <= u, v < 1}."""
        u, v = self.coords(z)
        u = u - np.floor(u)
        v = v - np.floor(v)
        out = self.scale * (u + v * self.tau)
        return complex(out) if np.ndim(out) == 0 else out

    def reduce_centered(self, z):
        """Representative with coordinates in [-1/2, 1/2)."""
        u, v = self.coords(z)
        u = u - np.floor(u + 0.5)
        v = v - np.floor(v + 0.5)
        out = self.scale * (u + v * self.tau)
        return complex(out) if np.ndim(out) == 0 else out

    def distance(self, z):
        """Distance from z to the nearest lattice point."""
        w = np.asarray(self.reduce_centered(z))
        w1, w2 = self.periods
        best = np.abs(w)
        for a in (-1, 0, 1):
            for b in (-1, 0, 1):
                best = np.minimum(best, np.abs(w - a * w1 - b * w2))
        return float(best) if best.ndim == 0 else best

    def contains(self, z, tol: float = 1e-10) -> bool:
        return self.distance(z) < tol * max(1.0, abs(self.scale))


@dataclass(frozen=True)
class TorusPoint:
    z: complex
    lattice: Lattice

    def reduce(self) -> "TorusPoint":
        return TorusPoint(self.lattice.reduce(self.z), self.lattice)

    def __eq__(self, other):
        if not isinstance(other, TorusPoint):
            return NotImplemented
        if self.lattice != other.lattice:
            return False
        return self.lattice.distance(self.z - other.z) < 1e-12 * max(1.0, abs(self.lattice.scale))

    def __neg__(self):
        return TorusPoint(-self.z, self.lattice)

    def __hash__(self):
        return hash(self.lattice)


def half_lattice_distance(z, tau):
    """Distance from z to 1/2 (Z + Z tau)."""
    return Lattice(as_modular(tau).tau, 0.5).distance(z)


def sample_points(tau, n: int, rng, punctures: Sequence[complex] = (0.0,), radius: float = 0.05,
                  max_tries: int = 100000) -> np.ndarray:
    """n random points of the centered fundamental parallelogram of Z + Z tau.

    Points closer than ``radius`` to p + 1/2 Lambda for any puncture p are
    rejected; with p = 0 this removes the D2 orbit of 0 and all lattice points.
    """
    mp = as_modular(tau)
    t = mp.tau
    half = Lattice(t, 0.5)
    out = []
    tries = 0
    while len(out) < n:
        tries += 1
        if tries > max_tries:
            raise ConvergenceError("could not sample enough points away from the punctures")
        z = complex(rng.random() - 0.5 + (rng.random() - 0.5) * t)
        if all(half.distance(z - p) >= radius for p in punctures):
            out.append(z)
    return np.array(out, dtype=complex)


# ---------------------------------------------------------------------------
# mu uniformizers and the modular lambda function


def _theta1_2z(z, mp):
    d = theta_jacobi(1, 2 * z, mp)
    if np.any(np.abs(d) < POLE_TOL):
        raise PoleError(f"z={z} is (numerically) a point of 1/2 Lambda")
    return d


def mu(i: int, z, tau):
    """mu_i(z) = theta_{i+1}(2z) / (theta_{i+1}(0) theta_1(2z)), i = 1..3."""
    if i not in (1, 2, 3):
        raise DomainError(f"mu index must be 1..3, got {i}")
    mp = as_modular(tau)
    den = _theta1_2z(z, mp)
    return theta_jacobi(i + 1, 2 * z, mp) / (mp.nulls[i] * den)


def mu_all(z, tau):
    """(mu_1, mu_2, mu_3) at z, sharing one theta_1 evaluation."""
    mp = as_modular(tau)
    den = _theta1_2z(z, mp)
    return tuple(theta_jacobi(i + 1, 2 * z, mp) / (mp.nulls[i] * den) for i in (1, 2, 3))


def mu_differences(tau) -> dict:
    """The constants mu_i^2 - mu_j^2 expressed through theta nulls.

    Keys (i, j); values are R_ji = r_j - r_i on the canonical curve.
    """
    _, t2, t3, t4 = as_modular(tau).nulls
    return {
        (1, 3): -(t3**2) / (t4**2 * t2**2),
        (2, 1): t4**2 / (t2**2 * t3**2),
        (3, 2): t2**2 / (t3**2 * t4**2),
    }


def modular_lambda(tau) -> complex:
    """lambda(tau) = theta_2(0)^4 / theta_3(0)^4."""
    _, t2, t3, _ = as_modular(tau).nulls
    return t2**4 / t3**4


def agm(a: complex, b: complex, maxiter: int = AGM_MAXITER) -> complex:
    """Arithmetic-geometric mean with principal square roots."""
    a = complex(a)
    b = complex(b)
    for _ in range(maxiter):
        if abs(a - b) <= 1e-16 * abs(a):
            return a
        a, b = (a + b) / 2, cmath.sqrt(a * b)
    if abs(a - b) <= 1e-14 * abs(a):
        return a
    raise ConvergenceError(f"AGM did not converge in {maxiter} iterations")


def ellipk(m: complex) -> complex:
    """Complete elliptic integral K(m) = pi / (2 agm(1, sqrt(1 - m)))."""
    return math.pi / (2 * agm(1.0, cmath.sqrt(1 - m)))


def tau_from_r(r1, r2, r3) -> ModularParam:
    """tau with lambda(tau) = (r2 - r3)/(r1 - r3), via tau = i K(1-m)/K(m)."""
    r1, r2, r3 = complex(r1), complex(r2), complex(r3)
    if r1 == r2 or r2 == r3 or r1 == r3:
        raise DegenerateError(f"r values must be pairwise distinct, got {(r1, r2, r3)}")
    m = (r2 - r3) / (r1 - r3)
    if m == 0 or m == 1:
        raise DegenerateError(f"cross ratio m={m} is degenerate")
    tau = 1j * ellipk(1 - m) / ellipk(m)
    if not tau.imag > 0:
        raise ConvergenceError(f"principal-branch inversion left the upper half plane for m={m}")
    mp = ModularParam(tau)
    err = abs(modular_lambda(mp) - m)
    if err > 1e-10 * max(1.0, abs(m)):
        raise ConvergenceError(f"lambda round trip failed for m={m} (error {err:.2e})")
    return mp


# ---------------------------------------------------------------------------
# the curve E_{r1,r2,r3}


@dataclass(frozen=True)
class CurveParams:
    """The curve lambda_i^2 - lambda_j^2 = r_j - r_i with its uniformization data.

    On the curve lambda_i = s * mu_i(z | tau) where s^2 = (r1 - r3) / R13(tau)
    and R13(tau) = theta_3^2/(theta_2^2 theta_4^2) is the canonical value.
    """

    r1: complex
    r2: complex
    r3: complex
    tau: ModularParam = field(default=None)

    def __post_init__(self):
        r = tuple(complex(x) for x in (self.r1, self.r2, self.r3))
        if len({r[0], r[1], r[2]}) < 3:
            raise DegenerateError(f"r values must be pairwise distinct, got {r}")
        object.__setattr__(self, "r1", r[0])
        object.__setattr__(self, "r2", r[1])
        object.__setattr__(self, "r3", r[2])
        if self.tau is None:
            object.__setattr__(self, "tau", tau_from_r(*r))
        else:
            mp = as_modular(self.tau)
            object.__setattr__(self, "tau", mp)
            m = (r[1] - r[2]) / (r[0] - r[2])
            if abs(modular_lambda(mp) - m) > 1e-10 * max(1.0, abs(m)):
                raise DomainError("tau does not match the r cross ratio")

    @classmethod
    def from_tau(cls, tau) -> "CurveParams":
        """Canonical curve of tau: r_i - r_j from the mu relations, mean zero."""
        mp = as_modular(tau)
        d = mu_differences(mp)
        r12, r23 = d[(2, 1)], d[(3, 2)]
        r2 = (r23 - r12) / 3
        return cls(r2 + r12, r2, r2 - r23, mp)

    @property
    def r(self) -> tuple[complex, complex, complex]:
        return self.r1, self.r2, self.r3

    def R(self, i: int, j: int) -> complex:
        return self.r[i - 1] - self.r[j - 1]

    @property
    def lambda_tau(self) -> complex:
        return modular_lambda(self.tau)

    @property
    def A_i(self) -> tuple[complex, complex, complex]:
        mean = sum(self.r) / 3
        return tuple(x - mean for x in self.r)

    @property
    def A(self) -> complex:
        return cmath.sqrt(self.R(1, 3) / self.R(2, 3))

    @property
    def B(self) -> complex:
        return cmath.sqrt(self.R(1, 2) / self.R(2, 3))

    @cached_property
    def scale(self) -> complex:
        """s with lambda_i = s mu_i (principal root of (r1 - r3)/R13(tau))."""
        _, t2, t3, t4 = self.tau.nulls
        r13c = t3**2 / (t2**2 * t4**2)
        return cmath.sqrt(self.R(1, 3) / r13c)

    def uniformize(self, z) -> tuple[complex, complex, complex]:
        s = self.scale
        m1, m2, m3 = mu_all(z, self.tau)
        return s * m1, s * m2, s * m3

    def x_of(self, lam) -> complex:
        """The central coordinate x = lambda_1^2 + r_1."""
        return lam[0] ** 2 + self.r1

    def curve_residual(self, lam) -> float:
        l1, l2, l3 = lam
        r1, r2, r3 = self.r
        return max(
            abs(l1**2 - l2**2 - (r2 - r1)),
            abs(l2**2 - l3**2 - (r3 - r2)),
            abs(l3**2 - l1**2 - (r1 - r3)),
        )

    def check_on_curve(self, lam, tol: float = 1e-10):
        scale = max(1.0, max(abs(x) for x in lam) ** 2)
        res = self.curve_residual(lam)
        if not res <= tol * scale:
            raise OffCurveError(f"point {tuple(lam)} is off the curve (residual {res:.2e})")

    def point_from_l1(self, l1: complex) -> tuple[complex, complex, complex]:
        """Curve point with given lambda_1 (principal branches for lambda_2, lambda_3)."""
        l1 = complex(l1)
        return l1, cmath.sqrt(l1 * l1 + self.R(1, 2)), cmath.sqrt(l1 * l1 + self.R(1, 3))

    def sample_points(self, n: int, rng, scale: float = 1.0):
        """n algebraic curve points with complex Gaussian lambda_1."""
        out = []
        for _ in range(n):
            l1 = complex(rng.normal(), rng.normal()) * scale
            out.append(self.point_from_l1(l1))
        return out


# ---------------------------------------------------------------------------
# Weierstrass p


def _unit_wp_constant(mp: ModularParam) -> complex:
    return theta_deriv(1, 0.0, mp, 3) / (3 * theta_deriv(1, 0.0, mp, 1))


def _log_derivs(z, mp):
    th = theta_jacobi(1, z, mp)
    d1 = theta_deriv(1, z, mp, 1)
    d2 = theta_deriv(1, z, mp, 2)
    d3 = theta_deriv(1, z, mp, 3)
    return th, d1 / th, d2 / th, d3 / th


def _unit_coords(z, lattice: Lattice):
    w = np.asarray(z, dtype=complex) / lattice.scale
    if np.any(Lattice(lattice.tau).distance(w) < 1e-8):
        raise PoleError(f"z={z} is too close to a lattice point")
    w = Lattice(lattice.tau).reduce_centered(w)
    return w


def wp(z, lattice: Lattice):
    """Weierstrass p of the lattice, from the second log-derivative of theta_1."""
    mp = as_modular(lattice.tau)
    w = _unit_coords(z, lattice)
    _, l1, l2, _ = _log_derivs(w, mp)
    val = -(l2 - l1 * l1) + _unit_wp_constant(mp)
    return val / lattice.scale**2


def wp_prime(z, lattice: Lattice):
    mp = as_modular(lattice.tau)
    w = _unit_coords(z, lattice)
    _, l1, l2, l3 = _log_derivs(w, mp)
    val = -(l3 - 3 * l1 * l2 + 2 * l1**3)
    return val / lattice.scale**3


def half_period_values(lattice: Lattice) -> tuple[complex, complex, complex]:
    """(e1, e2, e3) = p at scale/2, scale(1+tau)/2, scale*tau/2."""
    _, t2, t3, t4 = as_modular(lattice.tau).nulls
    c = math.pi**2 / 3
    e1 = c * (t3**4 + t4**4)
    e2 = c * (t2**4 - t4**4)
    e3 = -c * (t2**4 + t3**4)
    a2 = lattice.scale**2
    return e1 / a2, e2 / a2, e3 / a2


def invariants_g2_g3(lattice: Lattice) -> tuple[complex, complex]:
    """Modular invariants g2, g3 from theta nulls, rescaled by scale^-4, scale^-6."""
    e1, e2, e3 = half_period_values(Lattice(lattice.tau))
    g2 = 2 * (e1 * e1 + e2 * e2 + e3 * e3)
    g3 = 4 * e1 * e2 * e3
    return g2 / lattice.scale**4, g3 / lattice.scale**6


def wp_zero(lattice: Lattice, grid: int = 40, maxiter: int = 80) -> tuple[TorusPoint, TorusPoint]:
    """The zeros +-z0 of p (grid scan, then Newton with p').

    A double zero (p and p' vanishing together) is refined by Newton on p'
    so that z0 lands on the half period and z0 == -z0 modulo the lattice.
    """
    a = lattice.scale
    t = lattice.tau
    unit = Lattice(t)
    g2, _ = invariants_g2_g3(unit)
    best = None
    for iu in range(grid):
        for iv in range(grid):
            w = (iu + 0.5) / grid + (iv + 0.5) / grid * t
            if unit.distance(w) < 1e-2:
                continue
            val = abs(wp(w, unit))
            if best is None or val < best[0]:
                best = (val, w)
    w = best[1]
    for _ in range(maxiter):
        step = wp(w, unit) / wp_prime(w, unit)
        w = w - step
        if abs(step) < 1e-15:
            break
    else:
        if abs(wp(w, unit)) > 1e-10:
            raise ConvergenceError("Newton iteration for the zero of p did not converge")
    # near-critical point: the zero may be double; refine on p'
    if abs(wp_prime(w, unit)) < 1e-3 * abs(g2) ** 0.75:
        wc = w
        for _ in range(maxiter):
            p2 = 6 * wp(wc, unit) ** 2 - g2 / 2
            step = wp_prime(wc, unit) / p2
            wc = wc - step
            if abs(step) < 1e-16:
                break
        if abs(wp(wc, unit)) < 1e-10:
            w = wc
    if abs(wp(w, unit)) > 1e-10:
        raise ConvergenceError(f"zero of p not found (|p|={abs(wp(w, unit)):.2e})")
    z0 = a * unit.reduce(w)
    return TorusPoint(z0, lattice), TorusPoint(lattice.reduce(-z0), lattice)


def wp_has_double_zero(lattice: Lattice) -> bool:
    zp, zm = wp_zero(lattice)
    return zp == zm


# ---------------------------------------------------------------------------
# xi_p, Jacobi functions


def xi_p(z, p, tau):
    """xi_p(z) = mu_1(z) mu_1(z - p); D2-invariant with simple poles on {0, p} + 1/2 Lambda."""
    mp = as_modular(tau)
    if half_lattice_distance(p, mp) < 1e-10:
        raise DomainError(f"p={p} lies in 1/2 Lambda")
    return mu(1, z, mp) * mu(1, z - p, mp)


def jacobi_modulus(tau) -> complex:
    """k = theta_2(0)^2 / theta_3(0)^2."""
    _, t2, t3, _ = as_modular(tau).nulls
    return t2**2 / t3**2


def jacobi_argument_scale(tau) -> complex:
    """The constant pi theta_3(0)^2 with sn(u) built from thetas at u / (pi theta_3^2)."""
    return math.pi * as_modular(tau).nulls[3] ** 2


def jacobi_sn_cn_dn(u, tau):
    """(sn, cn, dn)(u) of modulus k = theta_2^2/theta_3^2."""
    mp = as_modular(tau)
    _, t2, t3, t4 = mp.nulls
    zeta = u / jacobi_argument_scale(mp)
    th = {j: theta_jacobi(j, zeta, mp) for j in (1, 2, 3, 4)}
    if np.any(np.abs(th[4]) < POLE_TOL):
        raise PoleError(f"u={u} is a pole of sn, cn, dn")
    sn = (t3 / t2) * th[1] / th[4]
    cn = (t4 / t2) * th[2] / th[4]
    dn = (t4 / t3) * th[3] / th[4]
    return sn, cn, dn


def jacobi_w(i: int, z, tau):
    """w_1 = 1/sn, w_2 = dn/sn, w_3 = cn/sn at argument z."""
    if i not in (1, 2, 3):
        raise DomainError(f"w index must be 1..3, got {i}")
    mp = as_modular(tau)
    _, t2, t3, t4 = mp.nulls
    zeta = z / jacobi_argument_scale(mp)
    th1 = theta_jacobi(1, zeta, mp)
    if np.any(np.abs(th1) < POLE_TOL):
        raise PoleError(f"z={z} is a zero of sn")
    if i == 1:
        return (t2 / t3) * theta_jacobi(4, zeta, mp) / th1
    if i == 2:
        return (t2 * t4 / t3**2) * theta_jacobi(3, zeta, mp) / th1
    return (t4 / t3) * theta_jacobi(2, zeta, mp) / th1


def jacobi_J(tau) -> dict:
    k2 = jacobi_modulus(tau) ** 2
    return {(1, 2): k2, (2, 3): 1 - k2, (3, 1): -1.0 + 0j}


# ---------------------------------------------------------------------------
# fits, splittings and projectors


def fit_linear_combination(f: Callable, basis: Sequence[Callable], z_fit, z_val):
    """Least-squares coefficients of f in span(basis) on z_fit, residual on z_val.

    The residual is max |f - fit| / max(1, max |f|) over the validation points.
    """
    A = np.array([[b(z) for b in basis] for z in z_fit], dtype=complex)
    y = np.array([f(z) for z in z_fit], dtype=complex)
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    Av = np.array([[b(z) for b in basis] for z in z_val], dtype=complex)
    yv = np.array([f(z) for z in z_val], dtype=complex)
    res = np.max(np.abs(Av @ coef - yv)) / max(1.0, np.max(np.abs(yv)))
    return coef, float(res)


class SplitResult(NamedTuple):
    c1: complex
    c2: complex
    residual: float
    flagged: bool


def two_point_split(i: int, f: Callable, z_plus, z_minus, tau, seed: int = 0,
                    flag_tol: float = 1e-8) -> SplitResult:
    """Write f(z) ~ c1 mu_i(z - z_plus) + c2 mu_i(z - z_minus).

    Solves the 2x2 system at two generic points and measures the mismatch at
    eight fresh points (relative to max(1, |f|)).  ``flagged`` is set when the
    residual exceeds ``flag_tol``: f is then not in the span.
    """
    mp = as_modular(tau)
    if half_lattice_distance(z_plus - z_minus, mp) < 1e-10:
        raise DegenerateError("z_plus - z_minus lies in 1/2 Lambda")
    rng = np.random.default_rng(seed)
    pts = sample_points(mp, 10, rng, punctures=(0.0, z_plus, z_minus), radius=0.05)
    basis = (lambda z: mu(i, z - z_plus, mp), lambda z: mu(i, z - z_minus, mp))
    A = np.array([[b(z) for b in basis] for z in pts[:2]])
    scale = np.max(np.abs(A))
    if abs(np.linalg.det(A)) < 1e-12 * scale**2:
        raise SingularError("degenerate sample points for the two-point split")
    rhs = np.array([f(z) for z in pts[:2]], dtype=complex)
    c1, c2 = np.linalg.solve(A, rhs)
    fv = np.array([f(z) for z in pts[2:]], dtype=complex)
    fit = np.array([c1 * basis[0](z) + c2 * basis[1](z) for z in pts[2:]])
    res = float(np.max(np.abs(fv - fit)) / max(1.0, np.max(np.abs(fv))))
    return SplitResult(complex(c1), complex(c2), res, res > flag_tol)


def d2_translate(a: int, b: int, z, tau):
    """sigma(t1^a t2^b) z = z + a/2 + b tau/2."""
    return z + a / 2 + b * as_modular(tau).tau / 2


def isotypical_project(f: Callable, char, z, tau):
    """(1/4) sum over D2 of char(g) f(sigma(g) z)."""
    from .liealg import D2Character

    ch = char if isinstance(char, D2Character) else D2Character(*char)
    total = 0
    for a in (0, 1):
        for b in (0, 1):
            total = total + ch(a, b) * f(d2_translate(a, b, z, tau))
    return total / 4
