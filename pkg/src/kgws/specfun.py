"""Special functions for the closed forms: log-gamma, Beta, Gauss 2F1, Jacobi.

Everything works in complex arithmetic.  The 2F1 only needs the regimes the
closed forms actually visit (|z| < 0.9, z = 1, and z = i via Pfaff).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import scipy.special as _sp

from .errors import DivergenceError, PoleError

_SERIES_RTOL = 1e-16
_SERIES_CAP = 10_000


def _is_nonpositive_int(z, tol=1e-12) -> bool:
    z = complex(z)
    return abs(z.imag) < tol and z.real < 0.5 and abs(z.real - round(z.real)) < tol


def ln_gamma(z) -> complex:
    """Principal-branch log-gamma; exp(ln_gamma(z)) reproduces Gamma(z)."""
    if _is_nonpositive_int(z):
        raise PoleError(f"log-gamma pole at z = {z}", location=complex(z))
    # scipy returns nan for negative real input unless it is fed a complex.
    return complex(_sp.loggamma(complex(z)))


def gamma_fn(z) -> complex:
    return cmath.exp(ln_gamma(z))


def beta(x, y) -> complex:
    """B(x, y) = Gamma(x)Gamma(y)/Gamma(x+y)."""
    for w in (x, y, x + y):
        if _is_nonpositive_int(w):
            raise PoleError(f"Beta pole: Gamma argument {w}", location=complex(w))
    return cmath.exp(ln_gamma(x) + ln_gamma(y) - ln_gamma(x + y))


@dataclass(frozen=True)
class Hyp2F1Args:
    a0: complex
    b0: complex
    c0: complex
    z: complex

    def __post_init__(self):
        if _is_nonpositive_int(self.c0):
            raise PoleError(f"2F1 lower parameter c0 = {self.c0} is a nonpositive integer",
                            location=complex(self.c0))


def _series_2f1(a, b, c, z) -> complex:
    term = complex(1.0)
    total = complex(1.0)
    quiet = 0
    for k in range(_SERIES_CAP):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        total += term
        if abs(term) < _SERIES_RTOL * max(abs(total), 1e-300):
            quiet += 1
            if quiet >= 3:
                return total
        else:
            quiet = 0
    raise DivergenceError(f"2F1 series did not settle within {_SERIES_CAP} terms at z = {z}")


def _gauss_value_at_one(a, b, c) -> complex:
    if complex(c - a - b).real <= 0:
        raise DivergenceError(
            f"2F1 at z = 1 diverges: Re(c0-a0-b0) = {complex(c - a - b).real} <= 0")
    if _is_nonpositive_int(c - a - b):
        # Re > 0 already checked; defensive only.
        raise PoleError(f"Gamma pole in the unit-argument value: {c - a - b}")
    # Reciprocal-gamma zeros: a pole in a denominator Gamma kills the value.
    if _is_nonpositive_int(c - a) or _is_nonpositive_int(c - b):
        return complex(0.0)
    return cmath.exp(ln_gamma(c) + ln_gamma(c - a - b) - ln_gamma(c - a) - ln_gamma(c - b))


def gauss_2f1(args: Hyp2F1Args) -> complex:
    """2F1(a0, b0; c0; z) in the regimes the closed forms use.

    |z| < 0.9 sums the power series directly; z = 1 uses the unit-argument
    closed value; anything else goes through the Pfaff transform
    z -> z/(z-1) first (z = i lands at modulus 1/sqrt 2).
    """
    a, b, c, z = complex(args.a0), complex(args.b0), complex(args.c0), complex(args.z)
    if z == 0:
        return complex(1.0)
    # Terminating series: polynomial case is exact for any z.
    for p in (a, b):
        if _is_nonpositive_int(p):
            return _series_2f1(a, b, c, z)
    if abs(z) < 0.9:
        return _series_2f1(a, b, c, z)
    if abs(z - 1.0) < 1e-14:
        return _gauss_value_at_one(a, b, c)
    w = z / (z - 1.0)
    if abs(w) >= 0.9:
        raise DivergenceError(f"2F1 argument z = {z} outside the supported regimes")
    return (1.0 - z) ** (-a) * _series_2f1(a, c - b, c, w)


@dataclass(frozen=True)
class JacobiParams:
    """Degree and the two (possibly complex) Jacobi parameters."""

    n: int
    rho: complex
    nu: complex

    def __post_init__(self):
        if self.n < 0 or int(self.n) != self.n:
            raise ValueError("Jacobi degree n must be a nonnegative integer")


def jacobi_poly(p: JacobiParams, z) -> complex:
    """P_n^(rho, nu)(z) by the three-term recurrence in complex arithmetic."""
    n, al, be = p.n, complex(p.rho), complex(p.nu)
    z = complex(z)
    if n == 0:
        return complex(1.0)
    pm1 = complex(1.0)
    pc = (al + 1.0) + (al + be + 2.0) * (z - 1.0) / 2.0
    for k in range(2, n + 1):
        c1 = 2.0 * k * (k + al + be) * (2.0 * k + al + be - 2.0)
        c2 = (2.0 * k + al + be - 1.0) * (al * al - be * be)
        c3 = (2.0 * k + al + be - 1.0) * (2.0 * k + al + be) * (2.0 * k + al + be - 2.0)
        c4 = 2.0 * (k + al - 1.0) * (k + be - 1.0) * (2.0 * k + al + be)
        pc, pm1 = ((c2 + c3 * z) * pc - c4 * pm1) / c1, pc
    return pc


def jacobi_sum_product_form(p: JacobiParams, s, q=1.0) -> complex:
    """Finite double-power sum in s and (1-s) with explicit shape-q factors.

    Equals P_n^(rho, nu)(1-2s) at q = 1; general q is experimental.
    """
    n, b2, e2 = p.n, complex(p.rho), complex(p.nu)  # rho = 2b, nu = 2eps
    s, q = complex(s), complex(q)
    pref = (-1.0) ** n * cmath.exp(ln_gamma(n + b2 + 1.0) + ln_gamma(n + e2 + 1.0))
    total = complex(0.0)
    for k in range(n + 1):
        c = (-1.0) ** k * q ** (n - k) * cmath.exp(
            -ln_gamma(k + 1.0) - ln_gamma(n - k + 1.0)
            - ln_gamma(k + e2 + 1.0) - ln_gamma(n + b2 - k + 1.0))
        total += c * s ** (n - k) * (1.0 - s) ** k
    return pref * total


def jacobi_sum_ascending_form(p: JacobiParams, s, q=1.0) -> complex:
    """Single ascending sum in powers of s; same q = 1 equivalence as above."""
    n, b2, e2 = p.n, complex(p.rho), complex(p.nu)
    s, q = complex(s), complex(q)
    pref = cmath.exp(ln_gamma(n + b2 + 1.0) - ln_gamma(n + b2 + e2 + 1.0))
    total = complex(0.0)
    for r in range(n + 1):
        total += (-1.0) ** r * q ** r * cmath.exp(
            ln_gamma(n + b2 + e2 + r + 1.0)
            - ln_gamma(r + 1.0) - ln_gamma(n - r + 1.0) - ln_gamma(b2 + r + 1.0)) * s ** r
    return pref * total
