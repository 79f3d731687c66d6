"""Theta functions with characteristics and the Jacobi theta quartet.

Conventions: the unit lattice is Z + Z*tau and

    theta_{a,b}(z|tau) = sum_k exp(pi i tau (k+a)^2 + 2 pi i (k+a)(z+b)),

with theta_1 = -theta_{1/2,1/2}, theta_2 = theta_{1/2,0}, theta_3 = theta_{0,0}
and theta_4 = theta_{0,1/2}.  In this normalization theta_j(z|tau) equals the
classical jtheta(j, pi*z, q) with nome q = exp(i pi tau).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from .errors import DomainError, ThetaOverflowError

MIN_IM_TAU = 0.05
TAIL_REL = 1e-18
MAX_TERMS = 64
# exp(709) is close to the largest finite double
_EXP_LIMIT = 700.0

_CHARS = {
    1: (0.5, 0.5, -1.0),
    2: (0.5, 0.0, 1.0),
    3: (0.0, 0.0, 1.0),
    4: (0.0, 0.5, 1.0),
}


@dataclass(frozen=True)
class ModularParam:
    """A point tau of the upper half plane with cached nome and theta nulls."""

    tau: complex
    min_im_tau: float = MIN_IM_TAU
    nome_q: complex = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        tau = complex(self.tau)
        if not (math.isfinite(tau.real) and math.isfinite(tau.imag)) or tau.imag <= 0:
            raise DomainError(f"tau must lie in the upper half plane, got {tau}")
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "nome_q", cmath.exp(1j * math.pi * tau))
        if tau.imag >= self.min_im_tau:
            # fill the cache eagerly so the object is effectively immutable
            _ = self.nulls

    @cached_property
    def nulls(self) -> tuple[complex, complex, complex, complex]:
        """(theta_1(0), ..., theta_4(0)); theta_1(0) is exactly 0."""
        vals = [0j]
        for j in (2, 3, 4):
            a, b, sign = _CHARS[j]
            vals.append(sign * complex(_series(a, b, 0.0, self)))
        return tuple(vals)

    @cached_property
    def doubled(self) -> "ModularParam":
        """The parameter 2*tau (used by the intertwiner)."""
        return ModularParam(2 * self.tau, self.min_im_tau)

    def __str__(self):
        return f"tau={self.tau.real:.17g}{self.tau.imag:+.17g}i"


@lru_cache(maxsize=256)
def _modular_cached(tau: complex) -> ModularParam:
    return ModularParam(tau)


def as_modular(tau) -> ModularParam:
    """Coerce a complex number (or a ModularParam) to a ModularParam."""
    if isinstance(tau, ModularParam):
        return tau
    return _modular_cached(complex(tau))


def _check_tau(mp: ModularParam):
    if mp.tau.imag < mp.min_im_tau:
        raise DomainError(
            f"Im(tau)={mp.tau.imag:g} below min_im_tau={mp.min_im_tau:g}; "
            "reduce tau by a modular transformation first"
        )


def _series(a, b, z, tau, order: int = 0):
    """Term-wise summed theta_{a,b} (or its z-derivative of given order)."""
    mp = as_modular(tau)
    _check_tau(mp)
    if order < 0 or order > 4:
        raise DomainError(f"derivative order must be in 0..4, got {order}")
    a = float(a)
    b = float(b)
    t = mp.tau
    y = t.imag
    if np.ndim(z) == 0:
        return _series_scalar(a, b, complex(z), t, order)
    zz = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(zz)):
        raise DomainError("non-finite z")
    # the largest term sits near k + a = -Im z / Im tau with size exp(pi (Im z)^2 / Im tau)
    lead = math.pi * np.max(zz.imag**2) / y
    if lead > _EXP_LIMIT:
        raise ThetaOverflowError(f"|Im z| too large for Im tau={y:g} (log lead term {lead:.1f})")
    k0 = np.rint(-zz.imag / y - a)
    ipt = 1j * math.pi * t
    w = zz + b

    def term(k):
        n = k + a
        val = np.exp(ipt * n * n + 2j * math.pi * n * w)
        if order:
            val = val * (2j * math.pi * n) ** order
        return val

    total = term(k0)
    for step in range(1, MAX_TERMS + 1):
        up = term(k0 + step)
        down = term(k0 - step)
        total = total + up + down
        nxt = np.maximum(np.abs(up), np.abs(down))
        if np.all(nxt <= TAIL_REL * np.abs(total)):
            break
    return total


def _series_scalar(a: float, b: float, z: complex, t: complex, order: int) -> complex:
    if not cmath.isfinite(z):
        raise DomainError("non-finite z")
    y = t.imag
    lead = math.pi * z.imag**2 / y
    if lead > _EXP_LIMIT:
        raise ThetaOverflowError(f"|Im z| too large for Im tau={y:g} (log lead term {lead:.1f})")
    k0 = round(-z.imag / y - a)
    ipt = 1j * math.pi * t
    w2 = 2j * math.pi * (z + b)
    exp = cmath.exp

    def term(k):
        n = k + a
        val = exp(ipt * n * n + w2 * n)
        if order:
            val *= (2j * math.pi * n) ** order
        return val

    total = term(k0)
    for step in range(1, MAX_TERMS + 1):
        up = term(k0 + step)
        down = term(k0 - step)
        total += up + down
        if max(abs(up), abs(down)) <= TAIL_REL * abs(total):
            break
    return total


def theta_general(a, b, z, tau):
    """theta_{a,b}(z|tau) for characteristics a, b in {0, 1/2}.

    Vectorized over ``z``.  Raises DomainError when Im tau is below the
    direct-series threshold.
    """
    for c in (a, b):
        if Fraction(c).limit_denominator(8) not in (Fraction(0), Fraction(1, 2)):
            raise DomainError(f"characteristic must be 0 or 1/2, got {c}")
    return _series(a, b, z, tau)


def theta_jacobi(j: int, z, tau):
    """Jacobi theta_j(z|tau), j = 1..4."""
    if j not in _CHARS:
        raise DomainError(f"theta index must be 1..4, got {j}")
    a, b, sign = _CHARS[j]
    val = _series(a, b, z, tau)
    return -val if sign < 0 else val


def theta_null(j: int, tau) -> complex:
    if j not in _CHARS:
        raise DomainError(f"theta index must be 1..4, got {j}")
    mp = as_modular(tau)
    _check_tau(mp)
    return mp.nulls[j - 1]


def theta_deriv(j: int, z, tau, order: int = 1):
    """d^order/dz^order theta_j(z|tau) by term-wise differentiation (order <= 4)."""
    if j not in _CHARS:
        raise DomainError(f"theta index must be 1..4, got {j}")
    a, b, sign = _CHARS[j]
    val = _series(a, b, z, tau, order)
    return -val if sign < 0 else val


# ---------------------------------------------------------------------------
# identity suite

SUITES = ("shifts", "quadratic", "duplication", "half-tau", "all")


@dataclass
class IdentityReport:
    suite: str
    tau: complex
    samples: int
    seed: int
    residuals: dict = field(default_factory=dict)
    # theta-null quartic: both orientations, never asserted a priori
    quartic: dict = field(default_factory=dict)
    absolute: dict = field(default_factory=dict)

    @property
    def quartic_orientation(self) -> str | None:
        if not self.quartic:
            return None
        return min(self.quartic, key=self.quartic.get)

    def max_residual(self) -> float:
        vals = list(self.residuals.values())
        if self.quartic:
            vals.append(min(self.quartic.values()))
        return max(vals) if vals else 0.0

    def passed(self, tol: float) -> bool:
        return self.max_residual() < tol


def sample_fundamental(tau, n: int, rng) -> np.ndarray:
    """n points u + v*tau with u, v uniform in [-1/2, 1/2)."""
    t = as_modular(tau).tau
    u = rng.random(n) - 0.5
    v = rng.random(n) - 0.5
    return u + v * t


def _shift_laws(z, mp):
    t = mp.tau
    th = {j: theta_jacobi(j, z, mp) for j in (1, 2, 3, 4)}
    one = {j: theta_jacobi(j, z + 1, mp) for j in (1, 2, 3, 4)}
    half = {j: theta_jacobi(j, z + t / 2, mp) for j in (1, 2, 3, 4)}
    pref = np.exp(-1j * np.pi * (z + t / 4))
    return {
        "shift_theta1_by_1": (one[1], th[1]),
        "shift_theta2_by_1": (one[2], th[2]),
        "shift_theta3_by_1": (one[3], -th[3]),
        "shift_theta4_by_1": (one[4], -th[4]),
        "shift_theta1_by_half_tau": (half[1], -1j * pref * th[4]),
        "shift_theta2_by_half_tau": (half[2], -pref * th[3]),
        "shift_theta3_by_half_tau": (half[3], -pref * th[2]),
        "shift_theta4_by_half_tau": (half[4], -1j * pref * th[1]),
    }


def _quadratic(z, mp):
    _, t2, t3, t4 = mp.nulls
    th = {j: theta_jacobi(j, z, mp) for j in (1, 2, 3, 4)}
    d3 = theta_jacobi(3, 2 * z, mp)
    d4 = theta_jacobi(4, 2 * z, mp)
    return {
        "identity1": (t3 * t4**2 * d3, -t4 * t3**2 * d4, 2 * th[1] ** 2 * th[2] ** 2),
        "identity2": (t3 * t4**2 * d3, t4 * t3**2 * d4, -2 * th[3] ** 2 * th[4] ** 2),
        "identity3": (
            t3**2 * t4**4 * d3**2,
            -(t4**2) * t3**4 * d4**2,
            4 * (th[1] * th[2] * th[3] * th[4]) ** 2,
        ),
    }


def _duplication(z, mp):
    _, t2, t3, t4 = mp.nulls
    th = {j: theta_jacobi(j, z, mp) for j in (1, 2, 3, 4)}
    d = {j: theta_jacobi(j, 2 * z, mp) for j in (1, 3, 4)}
    return {
        "identity5": (t2 * t3 * t4 * d[1], -2 * th[1] * th[2] * th[3] * th[4]),
        "identity4": (t4**2 * d[3] ** 2, -(t3**2) * d[4] ** 2, t2**2 * d[1] ** 2),
    }


def _half_tau(z, mp):
    _, t2, t3, t4 = mp.nulls
    m2 = mp.doubled
    th = {j: theta_jacobi(j, z, mp) for j in (1, 2, 3, 4)}
    hh = {j: theta_jacobi(j, z, m2) for j in (1, 2, 3, 4)}
    return {
        "identity6": (2 * hh[2] ** 2, -th[3] * t3, th[4] * t4),
        "identity7": (2 * hh[3] ** 2, -th[3] * t3, -th[4] * t4),
        "identity8": (2 * hh[2] * hh[3], -th[2] * t2),
        "identity9": (2 * hh[1] * hh[4], -th[1] * t2),
    }


_SUITE_FUNCS = {
    "shifts": (_shift_laws,),
    "quadratic": (_quadratic,),
    "duplication": (_duplication,),
    "half-tau": (_half_tau,),
    "all": (_shift_laws, _quadratic, _duplication, _half_tau),
}


def quartic_residuals(tau) -> dict:
    """Residuals of the two candidate theta-null quartic identities."""
    _, t2, t3, t4 = as_modular(tau).nulls
    return {
        "standard": abs(t3**4 - t2**4 - t4**4),
        "alternate": abs(t4**4 - t2**4 - t3**4),
    }


def identity_residuals(suite: str, tau, samples: int = 100, seed: int = 0) -> IdentityReport:
    """Residuals of each identity in ``suite`` over random z.

    Every identity is written as a list of terms summing to zero.  The
    reported residual is |sum| / max(1, max |term|); the raw absolute value is
    kept in ``report.absolute``.  For |term| <= 1 the two coincide.
    """
    if suite not in _SUITE_FUNCS:
        raise DomainError(f"unknown identity suite {suite!r}; expected one of {SUITES}")
    mp = as_modular(tau)
    rng = np.random.default_rng(seed)
    z = sample_fundamental(mp, samples, rng)
    rep = IdentityReport(suite, mp.tau, samples, seed)
    for fn in _SUITE_FUNCS[suite]:
        for name, terms in fn(z, mp).items():
            total = np.abs(sum(terms))
            scale = np.maximum(1.0, np.max(np.abs(np.array(terms)), axis=0))
            rep.residuals[name] = float(np.max(total / scale))
            rep.absolute[name] = float(np.max(total))
    rep.quartic = quartic_residuals(mp)
    return rep
