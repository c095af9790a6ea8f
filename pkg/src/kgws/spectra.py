"""Closed-form bound-state energies for the four variants, plus existence gates.

Level energies come from the quantization condition of the polynomial
reduction; every emitted state is re-verified by back-substituting its energy
into that condition.  The +/- sign ambiguity of the root formula and the sign
ambiguity of the auxiliary square roots are resolved numerically per level and
recorded on the state instead of being hard-coded.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass

from .core import DimensionlessKG, PotentialParams, Variant, dimensionless_kg
from .errors import ConditionViolated, EmptySpectrum
from .nu import HypergeometricTypeProblem, Poly2, quantization_report

log = logging.getLogger("kgws.spectra")

# |Im E| below this (in units of m) counts as a real energy.
_IM_TOL = 1e-9
# Back-substitution residual bound for a physical level.
_RESIDUAL_TOL = 1e-9
# Consecutive gate failures before the level iteration stops (complex variants).
_GATE_STREAK = 3


def kg_problem(params: PotentialParams, E) -> HypergeometricTypeProblem:
    """Polynomial triple of the transformed relativistic equation at energy E."""
    d = dimensionless_kg(params, E)
    return HypergeometricTypeProblem(
        tau_tilde=Poly2(1.0, -2.0, 0.0),
        sigma=Poly2(0.0, 1.0, -1.0),
        sigma_tilde=Poly2(d.beta2 + d.gamma2 - d.eps2, -(d.beta2 + 2.0 * d.gamma2), d.gamma2),
    )


def schrodinger_problem(params: PotentialParams, E) -> HypergeometricTypeProblem:
    """Polynomial triple of the nonrelativistic complex-alpha equation at energy E."""
    al2 = params.alpha ** 2
    eps2 = 2.0 * params.m * complex(E) / al2
    beta2 = -2.0 * params.m * params.V0 / (al2 * params.q)
    return HypergeometricTypeProblem(
        tau_tilde=Poly2(1.0, -2.0, 0.0),
        sigma=Poly2(0.0, 1.0, -1.0),
        sigma_tilde=Poly2(beta2 - eps2, -beta2, 0.0),
    )


@dataclass(frozen=True)
class BoundState:
    """One eigenlevel with its auxiliaries and diagnostic flags.

    b_signed is the signed combination (sqrt(1-4*gamma^2) - (2n+1))/2 - eps;
    (b_exp, eps_exp) are the sign-resolved exponents that actually satisfy the
    transformed equation, which need not match (b_signed, eps).
    """

    n: int
    E: complex
    xi: float
    b_signed: complex
    eps: complex
    branch: str
    physical: bool
    normalizable: bool
    variant: Variant
    b_exp: complex
    eps_exp: complex
    residual: float
    nu_accepted: bool
    gate_ok: bool
    emitted: bool
    dim: DimensionlessKG


def _realized_exponents(n: int, d: DimensionlessKG):
    """Sign-resolve the exponent pair against the quantization roots.

    The quantization residual factors as -(w - w_plus)(w - w_minus) in
    w = b + eps; the principal roots b, eps enter only squared upstream, so
    the combination realizing an eigenvalue is found by trying all four signs
    against both w roots.
    """
    g = cmath.sqrt(1.0 - 4.0 * d.gamma2)
    w_targets = ((g - (2 * n + 1)) / 2.0, (-g - (2 * n + 1)) / 2.0)
    b_v = cmath.sqrt(d.eps2 - d.beta2 - d.gamma2)
    eps_v = cmath.sqrt(d.eps2)
    best = None
    for target in w_targets:
        for sb in (1.0, -1.0):
            for se in (1.0, -1.0):
                miss = abs(sb * b_v + se * eps_v - target)
                if best is None or miss < best[0]:
                    best = (miss, sb * b_v, se * eps_v)
    return best[1], best[2], b_v, eps_v, w_targets[0]


def _make_state(params: PotentialParams, n: int, E: complex, branch: str,
                xi_val: float, gate_ok: bool, emitted: bool,
                physical=None) -> BoundState:
    d = dimensionless_kg(params, E)
    b_exp, eps_exp, _, eps_v, w_plus = _realized_exponents(n, d)
    b_signed = w_plus - eps_v
    if cmath.isfinite(E):
        rep = quantization_report(kg_problem(params, E), n)
        residual = abs(complex(rep.residual))
        nu_accepted = rep.branch.accepted
    else:
        residual, nu_accepted = math.inf, False
    if physical is None:
        physical = bool(emitted and residual < _RESIDUAL_TOL)
    normalizable = complex(b_signed).real > 0 and complex(eps_v).real > 0
    return BoundState(
        n=n, E=complex(E), xi=float(xi_val), b_signed=b_signed, eps=eps_v,
        branch=branch, physical=physical, normalizable=normalizable,
        variant=params.variant, b_exp=b_exp, eps_exp=eps_exp,
        residual=residual, nu_accepted=nu_accepted, gate_ok=gate_ok,
        emitted=emitted, dim=d)


def xi(params: PotentialParams, n: int) -> float:
    """Auxiliary level combination; the inner root decides existence upfront."""
    q, al, v0 = params.q, params.alpha, params.V0
    var = params.variant
    if var in (Variant.REAL, Variant.NONPT):
        inner = q * q * al * al - 4.0 * v0 * v0
        if inner < 0:
            raise ConditionViolated(
                f"q^2*alpha^2 >= 4*V0^2 violated: {q*q*al*al:.6g} < {4*v0*v0:.6g}",
                condition="q^2*alpha^2 >= 4*V0^2")
        root = math.sqrt(inner)
    else:
        root = math.sqrt(q * q * al * al + 4.0 * v0 * v0)
    if var is Variant.PSEUDO:
        return root + q * al * (2 * n + 1)
    return root - q * al * (2 * n + 1)


def max_level_index(params: PotentialParams) -> int:
    """Largest admissible level index for the real variant; -1 when none fits."""
    q, al, v0, m = params.q, params.alpha, params.V0, params.m
    if 4.0 * q * q * m * m < v0 * v0:
        raise ConditionViolated(
            f"4*q^2*m^2 >= V0^2 violated: {4*q*q*m*m:.6g} < {v0*v0:.6g}",
            condition="4*q^2*m^2 >= V0^2")
    inner = q * q * al * al / 4.0 - v0 * v0
    if inner < 0:
        raise ConditionViolated(
            f"q^2*alpha^2 >= 4*V0^2 violated: {q*q*al*al:.6g} < {4*v0*v0:.6g}",
            condition="q^2*alpha^2 >= 4*V0^2")
    bound = (math.sqrt(4.0 * q * q * m * m - v0 * v0) + math.sqrt(inner)) / (q * al) - 0.5
    # Nudge protects exact-boundary cases (e.g. V0 = 0) from roundoff exclusion.
    n = math.floor(bound + 1e-12)
    return int(n) if n >= 0 else -1


def has_any_level(params: PotentialParams) -> bool:
    """Ground-state existence inequality for the real variant."""
    q, al, v0, m = params.q, params.alpha, params.V0, params.m
    if 4.0 * q * q * m * m < v0 * v0:
        raise ConditionViolated(
            f"4*q^2*m^2 >= V0^2 violated: {4*q*q*m*m:.6g} < {v0*v0:.6g}",
            condition="4*q^2*m^2 >= V0^2")
    inner = q * q * al * al - 4.0 * v0 * v0
    if inner < 0:
        raise ConditionViolated(
            f"q^2*alpha^2 >= 4*V0^2 violated: {q*q*al*al:.6g} < {4*v0*v0:.6g}",
            condition="q^2*alpha^2 >= 4*V0^2")
    return q * al - math.sqrt(inner) <= 2.0 * math.sqrt(4.0 * q * q * m * m - v0 * v0)


def _zero_coupling_cap(params: PotentialParams) -> int:
    return int(math.floor(2.0 * params.m / params.alpha + 1e-12))


def _zero_coupling_state(params: PotentialParams, n: int) -> BoundState:
    # V0 -> 0 closes the root formula as 0*inf; the analytic limit takes over.
    al, m = params.alpha, params.m
    E = m * math.sqrt(max(0.0, 1.0 - (n * al / (2.0 * m)) ** 2))
    st = _make_state(params, n, complex(E), "-", xi(params, n),
                     gate_ok=True, emitted=True, physical=True)
    return st


def _real_candidates(params: PotentialParams, n: int) -> list[BoundState]:
    q, v0, m = params.q, params.V0, params.m
    xi_val = xi(params, n)
    rad = m * m / (4.0 * v0 * v0 + xi_val * xi_val) - 1.0 / (16.0 * q * q)
    gate_ok = rad >= -1e-15
    root = cmath.sqrt(complex(rad))
    out = []
    for sign, tag in ((1.0, "+"), (-1.0, "-")):
        E = -v0 / (2.0 * q) + sign * xi_val * root
        emitted = bool(gate_ok and abs(E.imag) < _IM_TOL * m)
        st = _make_state(params, n, E, tag, xi_val, gate_ok=gate_ok, emitted=emitted)
        if st.emitted:
            # Physicality for the Hermitian well: bound window and beta^2 > 0.
            d = st.dim
            phys = (abs(E) ** 2 <= m * m * (1.0 + 1e-12)
                    and complex(d.beta2).real > 0.0
                    and abs(complex(d.beta2).imag) < 1e-12
                    and st.residual < _RESIDUAL_TOL)
            st = _replace_flags(st, physical=bool(phys))
        out.append(st)
    return out


def _replace_flags(st: BoundState, **kw) -> BoundState:
    from dataclasses import replace
    return replace(st, **kw)


def _complex_candidate(params: PotentialParams, n: int) -> BoundState:
    """Single printed root for the PT / non-PT / pseudo closed forms."""
    q, al, v0, m = params.q, params.alpha, params.V0, params.m
    var = params.variant
    xi_val = xi(params, n)
    if var is Variant.NONPT:
        denom = 4.0 * v0 * v0 + xi_val * xi_val
        gate_ok = 16.0 * q * q * m * m >= denom
        rad = m * m / denom - 1.0 / (16.0 * q * q) if denom != 0 else math.inf
    else:
        denom = 4.0 * v0 * v0 - xi_val * xi_val
        gate_ok = 16.0 * q * q * m * m <= denom
        rad = 1.0 / (16.0 * q * q) - m * m / denom if denom != 0 else -math.inf
    if math.isinf(rad):
        E = complex(float("nan"), 0.0)
    else:
        E = -v0 / (2.0 * q) + xi_val * cmath.sqrt(complex(rad))
    is_real = cmath.isfinite(E) and abs(E.imag) < _IM_TOL * m
    emitted = bool(gate_ok and is_real)
    if gate_ok != is_real and cmath.isfinite(E):
        # The normalizability inequality and the realness of the root disagree;
        # report it instead of silently picking a side (KGWS_LOG=INFO to see).
        log.info(
            "gate/realness disagreement: variant=%s n=%d V0=%g q=%g alpha=%g -> "
            "gate_ok=%s, E=%s", var.value, n, v0, q, al, gate_ok, E)
    return _make_state(params, n, E, "+", xi_val, gate_ok=gate_ok, emitted=emitted)


def level_candidates(params: PotentialParams, n: int) -> list[BoundState]:
    """All closed-form root candidates at level n, flags set, nothing filtered."""
    if params.variant is Variant.REAL:
        if params.V0 == 0.0:
            return [_zero_coupling_state(params, n)] if n <= _zero_coupling_cap(params) else []
        return _real_candidates(params, n)
    return [_complex_candidate(params, n)]


def real_spectrum(params: PotentialParams, n_max: int) -> list[BoundState]:
    """Physical levels of the Hermitian well, both root branches resolved."""
    if params.variant is not Variant.REAL:
        raise ValueError("real_spectrum requires the real variant")
    if params.V0 == 0.0:
        top = min(n_max, _zero_coupling_cap(params))
        return [_zero_coupling_state(params, n) for n in range(top + 1)]
    top = min(n_max, max_level_index(params))
    out = []
    for n in range(top + 1):
        out.extend(st for st in _real_candidates(params, n) if st.physical)
    if not out:
        raise EmptySpectrum("no level passes the physicality filters")
    return out


def _gated_spectrum(params: PotentialParams, n_max: int) -> list[BoundState]:
    out = []
    streak = 0
    for n in range(n_max + 1):
        st = _complex_candidate(params, n)
        if st.emitted:
            out.append(st)
            streak = 0
        else:
            streak += 1
            if streak >= _GATE_STREAK:
                break
    if not out:
        raise EmptySpectrum("no level passes the existence gate")
    return out


def pt_spectrum(params: PotentialParams, n_max: int) -> list[BoundState]:
    if params.variant is not Variant.PT:
        raise ValueError("pt_spectrum requires the PT variant")
    return _gated_spectrum(params, n_max)


def nonpt_spectrum(params: PotentialParams, n_max: int) -> list[BoundState]:
    if params.variant is not Variant.NONPT:
        raise ValueError("nonpt_spectrum requires the nonpt variant")
    return _gated_spectrum(params, n_max)


def pseudo_spectrum(params: PotentialParams, n_max: int) -> list[BoundState]:
    if params.variant is not Variant.PSEUDO:
        raise ValueError("pseudo_spectrum requires the pseudo variant")
    return _gated_spectrum(params, n_max)


def spectrum(params: PotentialParams, n_max: int) -> list[BoundState]:
    """Variant dispatch: the closed-form spectrum up to level n_max."""
    return {
        Variant.REAL: real_spectrum,
        Variant.PT: pt_spectrum,
        Variant.NONPT: nonpt_spectrum,
        Variant.PSEUDO: pseudo_spectrum,
    }[params.variant](params, n_max)


def schrodinger_complex_spectrum(params: PotentialParams, n: int) -> float:
    """Nonrelativistic complex-alpha energy at level n (hbar = 1)."""
    al2 = params.alpha ** 2
    gamma_nr = params.m * params.V0 / (params.q * al2)
    return al2 / (2.0 * params.m) * ((n + 1) / 2.0 - gamma_nr / (n + 1)) ** 2


def schrodinger_realized_exponents(params: PotentialParams, n: int) -> tuple[complex, complex]:
    """Sign-resolved (c, eps) pair satisfying c + eps = -(n+1)."""
    gamma_nr = params.m * params.V0 / (params.q * params.alpha ** 2)
    c_exp = -((n + 1) / 2.0 + gamma_nr / (n + 1))
    eps_exp = -((n + 1) / 2.0 - gamma_nr / (n + 1))
    return complex(c_exp), complex(eps_exp)
