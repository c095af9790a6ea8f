"""Eigenfunction assembly: exponents, polynomial part, normalization.

psi(s) = N * s^A * (1-s)^B * P_n^(2A, 2B)(1-2s), with (A, B) the sign-resolved
exponent pair recorded on the bound state.  Normalization follows the printed
double-sum identity where it converges; states whose norm integral diverges
are carried with N = 1 and flagged, never dropped.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import scipy.integrate as _integrate

from .core import PotentialParams, Variant, dimensionless_kg, map_x_to_s
from .errors import (DivergenceError, NonNormalizable, PoleError,
                     QuadratureFailure)
from .spectra import BoundState, schrodinger_complex_spectrum, \
    schrodinger_realized_exponents
from .specfun import Hyp2F1Args, JacobiParams, beta, gauss_2f1, jacobi_poly, ln_gamma

_S_MAP_RULE = {
    Variant.REAL: "s = 1/(1 + q*exp(-alpha*x))",
    Variant.PT: "s = 1/(1 + q*exp(-i*alpha*x))",
    Variant.NONPT: "s = 1/(1 + i*q*exp(-alpha*x))",
    Variant.PSEUDO: "s = 1/(1 + i*q*exp(-i*alpha*x))",
}


@dataclass(frozen=True)
class WavefunctionSpec:
    """Exponents, Jacobi parameters, and normalization defining psi(s)."""

    n: int
    A: complex
    B: complex
    jacobi: JacobiParams
    N: complex
    variant: Variant
    s_map: str
    norm_status: str

    def eval_s(self, s) -> complex:
        """psi at a point of the unit s-interval (complex powers principal)."""
        s = complex(s)
        return self.N * s ** self.A * (1.0 - s) ** self.B * jacobi_poly(self.jacobi, 1.0 - 2.0 * s)

    def eval_x(self, params: PotentialParams, x) -> tuple[complex, complex]:
        """(s, psi) at physical coordinate x through the variant's map."""
        s = map_x_to_s(params, x)
        return s, self.eval_s(s)


def rodrigues_eval(n: int, A, B, s) -> complex:
    """General-Leibniz evaluation of s^-2A (1-s)^-2B d^n/ds^n [s^(n+2A) (1-s)^(n+2B)].

    Equals n! * P_n^(2A, 2B)(1-2s); kept independent of the recurrence for
    cross-validation.
    """
    if n > 8:
        raise ValueError("rodrigues_eval guard: n <= 8")
    A, B, s = complex(A), complex(B), complex(s)
    lg_top_a = ln_gamma(n + 2 * A + 1.0)
    lg_top_b = ln_gamma(n + 2 * B + 1.0)
    total = complex(0.0)
    for j in range(n + 1):
        c = cmath.exp(
            lg_top_a - ln_gamma(n + 2 * A - j + 1.0)
            + lg_top_b - ln_gamma(2 * B + j + 1.0)
            + ln_gamma(n + 1.0) - ln_gamma(j + 1.0) - ln_gamma(n - j + 1.0))
        total += (-1.0) ** (n - j) * c * s ** (n - j) * (1.0 - s) ** j
    return total


def _norm_integral_factor(variant: Variant, alpha0, beta0) -> complex:
    # 2F1 argument: unit for the real/PT route, i when q itself went imaginary.
    z = 1j if variant in (Variant.NONPT, Variant.PSEUDO) else 1.0
    val = gauss_2f1(Hyp2F1Args(a0=alpha0, b0=beta0, c0=alpha0 + 1.0, z=z))
    return val * beta(alpha0, 1.0)


def normalization_closed_form(params: PotentialParams, state: BoundState,
                              A=None, B=None) -> complex:
    """N from the printed double-sum identity (factorials read as Gamma).

    A and B default to the state's sign-resolved exponents; pass the principal
    values explicitly to evaluate the convergent reference integral instead.
    """
    n = state.n
    A = complex(state.b_exp if A is None else A)
    B = complex(state.eps_exp if B is None else B)
    q = complex(params.q)
    pref = (-1.0) ** n * cmath.exp(
        ln_gamma(n + 2 * B + 1.0) + 2.0 * ln_gamma(n + 2 * A + 1.0)
        - ln_gamma(n + 2 * A + 2 * B + 1.0))
    total = complex(0.0)
    for p in range(n + 1):
        tp = (-1.0) ** p * q ** (n - p) * cmath.exp(
            -ln_gamma(p + 1.0) - ln_gamma(n - p + 1.0)
            - ln_gamma(p + 2 * B + 1.0) - ln_gamma(n + 2 * A - p + 1.0))
        for r in range(n + 1):
            tr = (-1.0) ** r * q ** r * cmath.exp(
                ln_gamma(n + 2 * A + 2 * B + r + 1.0)
                - ln_gamma(r + 1.0) - ln_gamma(n - r + 1.0) - ln_gamma(2 * A + r + 1.0))
            alpha0 = n + 2 * A + r - p + 1.0
            total += tp * tr * _norm_integral_factor(params.variant, alpha0, -(p + 2 * B))
    ssum = pref * total
    if ssum == 0:
        raise NonNormalizable("squared-norm sum is zero")
    if state.normalizable and abs(ssum.imag) < 1e-9 * abs(ssum) and ssum.real < 0:
        raise NonNormalizable(f"squared-norm sum is negative real: {ssum}")
    return 1.0 / cmath.sqrt(ssum)


def normalization_quadrature(params: PotentialParams, state: BoundState,
                             A=None, B=None) -> float:
    """N from adaptive quadrature of |unnormalized psi|^2 over s in (0, 1).

    Endpoint singularities are absorbed by s = u^2 on the left half and
    1 - s = v^2 on the right half before handing over to the integrator.
    """
    n = state.n
    A = complex(state.b_exp if A is None else A)
    B = complex(state.eps_exp if B is None else B)
    if 2.0 * A.real <= -1.0 or 2.0 * B.real <= -1.0:
        raise NonNormalizable(
            f"norm integral diverges: exponent pair (2A, 2B) = ({2*A}, {2*B})")
    jac = JacobiParams(n, 2 * A, 2 * B)

    def f(s: float) -> float:
        return abs(s ** A * (1.0 - s) ** B * jacobi_poly(jac, 1.0 - 2.0 * s)) ** 2

    lim = 1.0 / (2.0 ** 0.5)
    left, el = _integrate.quad(lambda u: 2.0 * u * f(u * u), 0.0, lim,
                               epsabs=1e-12, epsrel=1e-12, limit=200)
    right, er = _integrate.quad(lambda v: 2.0 * v * f(1.0 - v * v), 0.0, lim,
                                epsabs=1e-12, epsrel=1e-12, limit=200)
    if el + er > 1e-9:
        raise QuadratureFailure(f"norm quadrature error estimate {el + er:.3g} > 1e-9")
    return 1.0 / math.sqrt(left + right)


def build_wavefunction(params: PotentialParams, state: BoundState,
                       principal: bool = False) -> WavefunctionSpec:
    """Assemble psi for an emitted state; never rejects, only flags.

    The default exponent pair is the sign-resolved one that actually solves
    the transformed equation at this energy.  principal=True takes the
    positive square roots instead: that profile has the textbook node
    structure (n interior zeros) but solves the equation only when the
    realized signs happen to be positive.

    The closed-form normalization is attempted when it is meaningful (shape
    q = 1, where the polynomial part of the printed norm sums matches the
    Jacobi factor); a divergent or inapplicable norm leaves N = 1.
    """
    if principal:
        d = dimensionless_kg(params, state.E)
        A = cmath.sqrt(d.eps2 - d.beta2 - d.gamma2)
        B = cmath.sqrt(d.eps2)
    else:
        A, B = complex(state.b_exp), complex(state.eps_exp)
    N, status = complex(1.0), "unnormalized"
    if params.q == 1.0:
        try:
            N = normalization_closed_form(params, state, A=A, B=B)
            status = "closed-form"
        except (DivergenceError, NonNormalizable, PoleError) as exc:
            status = f"unnormalized ({exc})"
    else:
        status = "unnormalized (printed norm sums are q-deformed away from q = 1)"
    return WavefunctionSpec(
        n=state.n, A=A, B=B, jacobi=JacobiParams(state.n, 2 * A, 2 * B),
        N=N, variant=params.variant, s_map=_S_MAP_RULE[params.variant],
        norm_status=status)


def wavefunction_with_energy(params: PotentialParams, state: BoundState,
                             E) -> WavefunctionSpec:
    """Rebuild the profile with the same sign pattern but exponents from energy E.

    Used by the detector-sensitivity check: for E off the eigenvalue the
    result no longer solves the transformed equation.
    """
    d0 = dimensionless_kg(params, state.E)
    b_v0 = cmath.sqrt(d0.eps2 - d0.beta2 - d0.gamma2)
    e_v0 = cmath.sqrt(d0.eps2)
    sb = 1.0 if abs(state.b_exp - b_v0) <= abs(state.b_exp + b_v0) else -1.0
    se = 1.0 if abs(state.eps_exp - e_v0) <= abs(state.eps_exp + e_v0) else -1.0
    d = dimensionless_kg(params, E)
    A = sb * cmath.sqrt(d.eps2 - d.beta2 - d.gamma2)
    B = se * cmath.sqrt(d.eps2)
    return WavefunctionSpec(
        n=state.n, A=A, B=B, jacobi=JacobiParams(state.n, 2 * A, 2 * B),
        N=complex(1.0), variant=params.variant, s_map=_S_MAP_RULE[params.variant],
        norm_status="unnormalized (off-eigenvalue probe)")


def schrodinger_wavefunction(params: PotentialParams, n: int) -> WavefunctionSpec:
    """Profile for the nonrelativistic complex-alpha level n (N = 1)."""
    c_exp, eps_exp = schrodinger_realized_exponents(params, n)
    return WavefunctionSpec(
        n=n, A=c_exp, B=eps_exp, jacobi=JacobiParams(n, 2 * c_exp, 2 * eps_exp),
        N=complex(1.0), variant=params.variant,
        s_map=_S_MAP_RULE[Variant.PT], norm_status="unnormalized")


def schrodinger_level_energy(params: PotentialParams, n: int) -> float:
    return schrodinger_complex_spectrum(params, n)
