"""Problem parameters, the four potential variants, and the x -> s transformation.

Everything downstream (polynomial reduction, spectra, wavefunctions, the
numerical oracle) consumes the types defined here.  Units: hbar = c = 1.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import NamedTuple

import numpy as np

from .errors import PoleError

# Relative tolerance used to declare a denominator "on a pole".
_POLE_RTOL = 1e-12


class Variant(Enum):
    """Which complexification of the well is being solved.

    The value string is the CLI/JSON tag; ``rule`` records the parameter
    substitution that produces the variant from the real well.
    """

    REAL = "real"
    PT = "pt"
    NONPT = "nonpt"
    PSEUDO = "pseudo"

    @property
    def rule(self) -> str:
        return {
            Variant.REAL: "identity",
            Variant.PT: "alpha -> i*alpha",
            Variant.NONPT: "V0 -> i*V0, q -> i*q",
            Variant.PSEUDO: "V0 -> i*V0, alpha -> i*alpha, q -> i*q",
        }[self]


@dataclass(frozen=True)
class PotentialParams:
    """Physical inputs defining one problem instance.

    Args:
        V0: coupling strength (energy units).
        q: shape parameter, real and nonzero (it divides every closed form).
        a: surface diffuseness (length); alpha = 1/a.
        m: particle rest mass (energy units).
        R0: offset length, x = r - R0.  Pure translation, default 0.
        l: angular momentum; only l = 0 is solved.
        variant: which complexification is active.
    """

    V0: float
    q: float
    a: float
    m: float
    R0: float = 0.0
    l: int = 0
    variant: Variant = Variant.REAL

    def __post_init__(self):
        if not (self.a > 0):
            raise ValueError("diffuseness a must be positive")
        if not (self.m > 0):
            raise ValueError("mass m must be positive")
        if self.q == 0:
            raise ValueError("shape parameter q must be nonzero")
        if self.l != 0:
            raise ValueError("only s-wave (l = 0) is supported")

    @property
    def alpha(self) -> float:
        return 1.0 / self.a

    @property
    def vtilde(self) -> float:
        # V0/q is invariant under every substitution rule above: the real and
        # PT rules leave V0 and q alone, the other two multiply both by i.
        return self.V0 / self.q

    @classmethod
    def from_alpha(cls, V0, q, alpha, m, R0=0.0, variant=Variant.REAL):
        if alpha == 0:
            raise ValueError("alpha must be nonzero")
        return cls(V0=V0, q=q, a=1.0 / alpha, m=m, R0=R0, variant=variant)

    def with_variant(self, variant: Variant) -> "PotentialParams":
        return replace(self, variant=variant)

    def complexified(self) -> tuple[complex, complex, complex]:
        """(V0, alpha, q) with the variant's substitution applied."""
        v0, al, q = complex(self.V0), complex(self.alpha), complex(self.q)
        if self.variant is Variant.PT:
            al *= 1j
        elif self.variant is Variant.NONPT:
            v0 *= 1j
            q *= 1j
        elif self.variant is Variant.PSEUDO:
            v0 *= 1j
            al *= 1j
            q *= 1j
        return v0, al, q

    def to_json_dict(self) -> dict:
        return {
            "V0": self.V0,
            "q": self.q,
            "a": self.a,
            "m": self.m,
            "R0": self.R0,
            "variant": self.variant.value,
        }


def nuclear_radius(r0: float, mass_number: int) -> float:
    """Convenience R0 = r0 * A^(1/3) for nuclear-well presets."""
    if r0 <= 0 or mass_number < 1:
        raise ValueError("need r0 > 0 and mass_number >= 1")
    return r0 * mass_number ** (1.0 / 3.0)


def params_from_json(text_or_dict) -> PotentialParams:
    """Build PotentialParams from the JSON parameter schema."""
    d = json.loads(text_or_dict) if isinstance(text_or_dict, str) else dict(text_or_dict)
    return PotentialParams(
        V0=float(d["V0"]),
        q=float(d["q"]),
        a=float(d["a"]),
        m=float(d["m"]),
        R0=float(d.get("R0", 0.0)),
        variant=Variant(d.get("variant", "real")),
    )


class DimensionlessKG(NamedTuple):
    """The (eps^2, beta^2, gamma^2) combination driving the s-space equation."""

    eps2: complex
    beta2: complex
    gamma2: complex
    vtilde: complex


def dimensionless_kg(params: PotentialParams, E) -> DimensionlessKG:
    """Dimensionless combination for the active variant at energy E.

    The substitution rule is applied to alpha before dividing, so the PT and
    pseudo variants pick up a global sign (i*alpha squares to -alpha^2) while
    the real and non-PT variants keep the Hermitian-form values.
    """
    al2 = params.alpha ** 2
    vt = params.vtilde
    E = complex(E)
    if params.variant in (Variant.PT, Variant.PSEUDO):
        al2 = -al2
    eps2 = (params.m ** 2 - E * E) / al2
    beta2 = 2.0 * E * vt / al2
    gamma2 = (vt * vt) / al2
    return DimensionlessKG(eps2=eps2, beta2=beta2, gamma2=gamma2, vtilde=complex(vt))


def _check_pole(den, scale, location, what):
    if abs(den) < _POLE_RTOL * max(scale, 1e-300):
        raise PoleError(f"{what} evaluated on a pole near x = {location}", location=location)


def _nearest_trig_pole(q, alpha, x, kind):
    """Real-axis pole of the PT (kind='cos') or pseudo (kind='sin') denominator.

    Real poles exist only for |q| = 1; returns None otherwise.
    """
    if abs(abs(q) - 1.0) > 1e-9:
        return None
    if kind == "cos":
        base = math.pi / alpha if q > 0 else 0.0
    else:
        base = (-0.5 * math.pi / alpha) if q > 0 else (0.5 * math.pi / alpha)
    period = 2.0 * math.pi / alpha
    k = round((x - base) / period)
    return base + k * period


def potential_value(params: PotentialParams, x) -> complex:
    """V_q(x) for the active variant, in its explicit (pole-transparent) form.

    Each branch is algebraically identical to substituting the complexified
    parameters into the defining well; the rewritten forms keep denominators
    real so pole detection stays honest.
    """
    v0, q, al = params.V0, params.q, params.alpha
    var = params.variant
    if var is Variant.REAL:
        e = math.exp(-al * x)
        den = 1.0 + q * e
        loc = params.a * math.log(-q) if q < 0 else None
        _check_pole(den, 1.0 + abs(q * e), loc, "real-variant potential")
        return complex(-v0 * e / den)
    if var is Variant.PT:
        c, s = math.cos(al * x), math.sin(al * x)
        den = q * q + 2.0 * q * c + 1.0
        _check_pole(den, q * q + 2.0 * abs(q) + 1.0,
                    _nearest_trig_pole(q, al, x, "cos"), "PT-variant potential")
        return -v0 * complex(q + c, -s) / den
    if var is Variant.NONPT:
        e = math.exp(-al * x)
        den = 1.0 + q * q * e * e
        return -v0 * complex(q * e * e, e) / den
    # pseudo
    c, s = math.cos(al * x), math.sin(al * x)
    den = q * q + 2.0 * q * s + 1.0
    _check_pole(den, q * q + 2.0 * abs(q) + 1.0,
                _nearest_trig_pole(q, al, x, "sin"), "pseudo-variant potential")
    return -v0 * complex(q + s, c) / den


def potential_value_substituted(params: PotentialParams, x) -> complex:
    """Naive substitution of the complexified parameters into the defining well.

    Reference implementation for the agreement check; potential_value must
    match this to roundoff wherever both are finite.
    """
    v0, al, q = params.complexified()
    e = cmath.exp(-al * x)
    den = 1.0 + q * e
    _check_pole(den, 1.0 + abs(q * e), None, "substituted potential")
    return -v0 * e / den


def map_x_to_s(params: PotentialParams, x) -> complex:
    """s = 1/(1 + q*exp(-alpha*x)) with the variant's complexified (q, alpha)."""
    _, al, q = params.complexified()
    den = 1.0 + q * cmath.exp(-al * x)
    _check_pole(den, 1.0 + abs(q * cmath.exp(-al * x)), None, "x -> s map")
    return 1.0 / den


def potential_poles(params: PotentialParams, lo: float, hi: float) -> list[float]:
    """Real-axis poles of the active variant's potential inside [lo, hi]."""
    q, al = params.q, params.alpha
    out: list[float] = []
    if params.variant is Variant.REAL:
        if q < 0:
            p = params.a * math.log(-q)
            if lo <= p <= hi:
                out.append(p)
        return out
    if params.variant is Variant.NONPT:
        return out
    kind = "cos" if params.variant is Variant.PT else "sin"
    if abs(abs(q) - 1.0) > 1e-9:
        return out
    period = 2.0 * math.pi / al
    p = _nearest_trig_pole(q, al, lo, kind)
    while p <= hi + period:
        if lo <= p <= hi:
            out.append(p)
        p += period
    return sorted(out)


def x_grid(params: PotentialParams, lo: float, hi: float, n: int,
           guard: float = 1e-6) -> np.ndarray:
    """Uniform grid on [lo, hi] with points nudged off potential poles.

    Points landing within `guard` of a pole are shifted to the guard-band
    edge on their own side (or +guard when exactly on the pole).
    """
    xs = np.linspace(lo, hi, n)
    for p in potential_poles(params, lo - guard, hi + guard):
        near = np.abs(xs - p) < guard
        if not near.any():
            continue
        side = np.sign(xs[near] - p)
        side[side == 0] = 1.0
        xs[near] = p + side * guard
    return xs
