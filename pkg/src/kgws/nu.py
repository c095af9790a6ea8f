"""Generic reduction of a hypergeometric-type second-order ODE.

Given the polynomial triple (tau_tilde, sigma, sigma_tilde) of

    y'' + (tau_tilde/sigma) y' + (sigma_tilde/sigma^2) y = 0,

this module produces the linear polynomial pi(s), the admissible constants k,
the transported tau(s), the eigenparameter lambda, and the polynomial ladder
lambda_n, keeping the caller's coefficient types (Fraction stays Fraction,
complex stays complex) so exact algebra is possible in tests.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple, Optional

from .errors import DegenerateError, UnsupportedSigmaError

_REL_TOL = 1e-10


def _sqrt_keep(x):
    """Square root preserving Fraction exactness when the value is a perfect square."""
    if isinstance(x, Fraction):
        if x >= 0:
            pn, pd = math.isqrt(x.numerator), math.isqrt(x.denominator)
            if pn * pn == x.numerator and pd * pd == x.denominator:
                return Fraction(pn, pd)
        x = float(x)
    if isinstance(x, float) and x >= 0:
        return math.sqrt(x)
    return cmath.sqrt(complex(x))


class Poly2:
    """c0 + c1*s + c2*s^2 with coefficient-type-agnostic arithmetic."""

    __slots__ = ("c0", "c1", "c2")

    def __init__(self, c0=0, c1=0, c2=0):
        self.c0, self.c1, self.c2 = c0, c1, c2

    def __call__(self, s):
        return self.c0 + s * (self.c1 + s * self.c2)

    def deriv(self) -> "Poly2":
        return Poly2(self.c1, 2 * self.c2, 0)

    def __add__(self, other):
        return Poly2(self.c0 + other.c0, self.c1 + other.c1, self.c2 + other.c2)

    def __sub__(self, other):
        return Poly2(self.c0 - other.c0, self.c1 - other.c1, self.c2 - other.c2)

    def scale(self, f) -> "Poly2":
        return Poly2(f * self.c0, f * self.c1, f * self.c2)

    def __mul__(self, other):
        c3 = self.c1 * other.c2 + self.c2 * other.c1
        c4 = self.c2 * other.c2
        if abs(c3) > 1e-30 or abs(c4) > 1e-30:
            raise ValueError("Poly2 product exceeds degree 2")
        return Poly2(
            self.c0 * other.c0,
            self.c0 * other.c1 + self.c1 * other.c0,
            self.c0 * other.c2 + self.c1 * other.c1 + self.c2 * other.c0,
        )

    def coeffs(self):
        return (self.c0, self.c1, self.c2)

    def __repr__(self):
        return f"Poly2({self.c0!r}, {self.c1!r}, {self.c2!r})"


@dataclass(frozen=True)
class HypergeometricTypeProblem:
    tau_tilde: Poly2
    sigma: Poly2
    sigma_tilde: Poly2

    def __post_init__(self):
        if abs(self.tau_tilde.c2) > 1e-30:
            raise ValueError("tau_tilde must have degree <= 1")


@dataclass(frozen=True)
class NuBranch:
    """One (k, sign) resolution: pi(s), tau(s), lambda, and the acceptance flag."""

    k: object
    pi: Poly2
    tau: Poly2
    lam: object
    sign_choice: str
    accepted: bool
    problem: HypergeometricTypeProblem


def _half_shape(problem: HypergeometricTypeProblem) -> Poly2:
    # p = (sigma' - tau_tilde)/2, the polynomial completing the square under the root.
    d = problem.sigma.deriv() - problem.tau_tilde
    return Poly2(d.c0 / 2, d.c1 / 2, 0)


def candidate_ks(problem: HypergeometricTypeProblem) -> list:
    """Constants k for which the under-root quadratic has a double root.

    The radical argument is R(s; k) = p(s)^2 - sigma_tilde(s) + k*sigma(s);
    its s-discriminant is quadratic in k and the returned k values are that
    quadratic's roots (one entry when the roots coincide or the quadratic
    degenerates to linear).
    """
    p = _half_shape(problem)
    u = p * p - problem.sigma_tilde
    sg = problem.sigma
    A = sg.c1 * sg.c1 - 4 * sg.c2 * sg.c0
    B = 2 * u.c1 * sg.c1 - 4 * (u.c2 * sg.c0 + u.c0 * sg.c2)
    C = u.c1 * u.c1 - 4 * u.c2 * u.c0
    scale = max(abs(A), abs(B), abs(C))
    if scale == 0:
        raise DegenerateError("discriminant condition identically satisfied: any k works")
    if abs(A) <= _REL_TOL * scale:
        if abs(B) <= _REL_TOL * scale:
            raise DegenerateError("discriminant condition unsolvable: no admissible k")
        return [-C / B]
    disc = B * B - 4 * A * C
    if abs(disc) <= (_REL_TOL * scale) ** 2:
        return [-B / (2 * A)]
    r = _sqrt_keep(disc)
    return [(-B + r) / (2 * A), (-B - r) / (2 * A)]


def _sqrt_poly(R: Poly2) -> Poly2:
    """Linear square root of a perfect-square quadratic (principal leading root)."""
    scale = max(abs(R.c0), abs(R.c1), abs(R.c2), 1e-300)
    if R.c2 != 0:
        d = R.c1 * R.c1 - 4 * R.c2 * R.c0
        # Vanishing discriminant is the defining property; the construction
        # below stays well-conditioned even when c2 is many orders below c0
        # (weak-coupling regime), so do not pre-screen on |c2| alone.
        if abs(d) <= _REL_TOL * scale * scale * 4:
            sr = _sqrt_keep(R.c2)
            s0 = -R.c1 / (2 * R.c2)
            return Poly2(-sr * s0, sr, 0)
        if abs(R.c2) > _REL_TOL * scale:
            raise ValueError("radical argument is not a perfect square for this k")
    if abs(R.c1) > _REL_TOL * scale:
        raise ValueError("radical argument is linear, not a perfect square")
    return Poly2(_sqrt_keep(R.c0), 0, 0)


def branches(problem: HypergeometricTypeProblem, k) -> list[NuBranch]:
    """Both sign resolutions of pi = p +/- sqrt(p^2 - sigma_tilde + k*sigma)."""
    p = _half_shape(problem)
    R = p * p - problem.sigma_tilde + problem.sigma.scale(k)
    r = _sqrt_poly(R)
    out = []
    for sign, tag in ((1, "+"), (-1, "-")):
        pi = p + r.scale(sign)
        tau = problem.tau_tilde + pi.scale(2)
        lam = k + pi.c1
        accepted = complex(tau.c1).real < 0
        out.append(NuBranch(k=k, pi=pi, tau=tau, lam=lam,
                            sign_choice=tag, accepted=accepted, problem=problem))
    return out


def lambda_n(branch: NuBranch, n: int):
    """Polynomial-ladder eigenvalue: -n*tau' - n(n-1)/2 * sigma''."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    # n(n-1) is even, so integer division keeps Fraction/int coefficients exact.
    return -n * branch.tau.c1 - (n * (n - 1) // 2) * (2 * branch.problem.sigma.c2)


class QuantizationReport(NamedTuple):
    residual: object
    branch: NuBranch


def quantization_report(problem: HypergeometricTypeProblem, n: int) -> QuantizationReport:
    """lambda - lambda_n minimized in magnitude over every (k, sign) resolution.

    The sign resolution realizing an eigenvalue is not always the one passing
    the negative-tau' rule (for n >= 1 it usually is not), so all four are
    tried and the acceptance flag of the winner is reported as a diagnostic
    rather than used as a filter.
    """
    best = None
    for k in candidate_ks(problem):
        for br in branches(problem, k):
            res = br.lam - lambda_n(br, n)
            if best is None or abs(res) < abs(best[0]) or (
                    abs(res) == abs(best[0]) and br.accepted and not best[1].accepted):
                best = (res, br)
    return QuantizationReport(residual=best[0], branch=best[1])


def quantization_residual(problem: Optional[HypergeometricTypeProblem], n: int,
                          parameter_hook: Optional[Callable[[], HypergeometricTypeProblem]] = None):
    """Residual of the quantization condition; a root in energy is an eigenvalue.

    Either pass the problem directly or supply parameter_hook, a no-argument
    callable whose closure binds the trial energy and returns the problem.
    """
    if parameter_hook is not None:
        problem = parameter_hook()
    if problem is None:
        raise ValueError("either problem or parameter_hook is required")
    return quantization_report(problem, n).residual


def phi_and_weight(branch: NuBranch, problem: Optional[HypergeometricTypeProblem] = None):
    """Exponent pairs for phi = s^A (1-s)^B and the weight rho = s^2A (1-s)^2B.

    Only sigma = s - s^2 is supported: the partial-fraction split of pi/sigma
    then gives A = pi(0) and B = -(pi(0) + pi'(0)).
    """
    problem = problem if problem is not None else branch.problem
    sg = problem.sigma
    if abs(sg.c0) > 1e-12 or abs(sg.c1 - 1) > 1e-12 or abs(sg.c2 + 1) > 1e-12:
        raise UnsupportedSigmaError("weight solving implemented only for sigma = s - s^2")
    A = branch.pi.c0
    B = -(branch.pi.c0 + branch.pi.c1)
    return (A, B), (2 * A, 2 * B)
