"""Independent numerical checks: x-space shooting and transformed-ODE residuals.

The shooting side never sees the closed forms: it integrates the radial
equation on a grid with a fixed-step fourth-order scheme, scans the bound
window for log-derivative mismatch sign changes, and bisects.  Agreement (or
honest disagreement) with the closed-form levels is reported, not assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import PotentialParams, Variant, dimensionless_kg
from .errors import ConditionViolated, StiffnessError
from .spectra import (BoundState, real_spectrum, schrodinger_complex_spectrum,
                      schrodinger_problem)
from .errors import EmptySpectrum
from .wavefn import WavefunctionSpec, build_wavefunction, schrodinger_wavefunction

_DECAY_RTOL = 1e-12
_L_CAP_FACTOR = 400.0
_RENORM_EVERY = 256


@dataclass
class GridConfig:
    """Numerical knobs for the shooting and residual grids."""

    L: float | None = None
    n_points: int = 4001
    match_x: float = 0.0
    e_scan: tuple = (None, None, 400)
    tol_e: float = 1e-10

    def __post_init__(self):
        if self.n_points < 2001 or self.n_points % 2 == 0:
            raise ValueError("n_points must be odd and >= 2001")


@dataclass
class OracleReport:
    found: list = field(default_factory=list)
    matched: list = field(default_factory=list)
    unmatched_closed: list = field(default_factory=list)
    unmatched_numeric: list = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "found": [{"E": e, "residual": r} for e, r in self.found],
            "matched": self.matched,
            "unmatched_closed": self.unmatched_closed,
            "unmatched_numeric": self.unmatched_numeric,
        }


def _numerov_mismatch(qfun, xs: np.ndarray, Es: np.ndarray, im: int,
                      seed_kappa=None) -> np.ndarray:
    """Normalized matching-point Wronskian of the two one-sided solutions.

    qfun(xs, Es) -> Q array of shape (len(xs), len(Es)) for psi'' + Q psi = 0.
    A root in E of the returned mismatch is an eigenvalue.  Columns are
    propagated together; renormalization keeps magnitudes bounded without
    touching signs.
    """
    h = xs[1] - xs[0]
    Q = np.asarray(qfun(xs, Es), dtype=float)
    f = 1.0 + (h * h / 12.0) * Q          # Numerov weights
    g = 2.0 * (1.0 - (5.0 * h * h / 12.0) * Q)
    k = Q.shape[1]

    if seed_kappa is None:
        kl = np.sqrt(np.maximum(-Q[0, :], 1e-30))
        kr = np.sqrt(np.maximum(-Q[-1, :], 1e-30))
    else:
        kl, kr = seed_kappa(Es)

    def sweep(start, stop, step, grow):
        # psi at start and start+step; the boundary-decaying branch grows inward.
        a = np.ones(k)
        b = np.exp(np.asarray(grow) * h)
        idx_a, idx_b = start, start + step
        for count, i in enumerate(range(start + 2 * step, stop + step, step)):
            a, b = b, (g[idx_b, :] * b - f[idx_a, :] * a) / f[i, :]
            idx_a, idx_b = idx_b, i
            if count % _RENORM_EVERY == _RENORM_EVERY - 1:
                scale = np.maximum(np.abs(a), np.abs(b))
                scale[scale == 0.0] = 1.0
                a, b = a / scale, b / scale
            if not np.all(np.isfinite(b)):
                raise StiffnessError("non-finite values during propagation")
        return a, b  # values at (stop - step, stop)

    # Left solution propagated to im+1; right solution propagated down to im.
    l_a, l_b = sweep(0, im + 1, 1, kl)          # psi_L at im, im+1
    r_a, r_b = sweep(Q.shape[0] - 1, im, -1, kr)  # psi_R at im+1, im
    mism = l_a * r_a - l_b * r_b                  # L[im]*R[im+1] - L[im+1]*R[im]
    norm = (np.maximum(np.abs(l_a), np.abs(l_b))
            * np.maximum(np.abs(r_a), np.abs(r_b)) + 1e-300)
    return mism / norm


def find_eigenvalues(qfun, L: float, n_points: int, e_lo: float, e_hi: float,
                     steps: int = 400, tol_e: float = 1e-10, match_x: float = 0.0,
                     seed_kappa=None, x_center: float = 0.0):
    """Scan-and-bisect eigenvalue search for psi'' + Q(x, E) psi = 0 on [-L, L].

    Returns a list of (E, mismatch magnitude) pairs, sorted ascending in E.
    """
    xs = np.linspace(x_center - L, x_center + L, n_points)
    im = int(np.argmin(np.abs(xs - match_x)))
    im = min(max(im, 1), n_points - 2)

    def mism(Es):
        return _numerov_mismatch(qfun, xs, np.atleast_1d(np.asarray(Es, dtype=float)),
                                 im, seed_kappa)

    Es = np.linspace(e_lo, e_hi, steps)
    D = mism(Es)
    lo_idx = np.nonzero(np.isfinite(D[:-1]) & np.isfinite(D[1:])
                        & (np.sign(D[:-1]) * np.sign(D[1:]) < 0))[0]
    if lo_idx.size == 0:
        return []
    a, b = Es[lo_idx].copy(), Es[lo_idx + 1].copy()
    da = D[lo_idx].copy()
    it = max(8, int(math.ceil(math.log2(max((e_hi - e_lo) / max(tol_e, 1e-300), 2.0)))))
    for _ in range(it):
        mid = 0.5 * (a + b)
        dm = mism(mid)
        left = np.sign(da) * np.sign(dm) < 0
        b = np.where(left, mid, b)
        a = np.where(left, a, mid)
        da = np.where(left, da, dm)
    roots = 0.5 * (a + b)
    resid = np.abs(mism(roots))
    return sorted(zip(roots.tolist(), resid.tolist()))


def pair_levels(closed: list, numeric: list, rel_tol: float = 1e-6):
    """Greedy nearest pairing of closed-form against numeric energies.

    Returns (pairs, unmatched_closed, unmatched_numeric); a pair is kept when
    the relative gap is within rel_tol.
    """
    pairs, un_closed = [], []
    used = [False] * len(numeric)
    for ec in closed:
        best, best_gap = None, None
        for j, en in enumerate(numeric):
            if used[j]:
                continue
            gap = abs(ec - en)
            if best is None or gap < best_gap:
                best, best_gap = j, gap
        if best is not None and best_gap <= rel_tol * max(abs(ec), 1e-12):
            used[best] = True
            pairs.append((ec, numeric[best], best_gap / max(abs(ec), 1e-12)))
        else:
            un_closed.append(ec)
    un_numeric = [en for j, en in enumerate(numeric) if not used[j]]
    return pairs, un_closed, un_numeric


def _real_potential_on_grid(params: PotentialParams, xs: np.ndarray) -> np.ndarray:
    # -V0/(exp(alpha x) + q): stable at both ends for q > 0.
    with np.errstate(over="ignore"):
        return -params.V0 / (np.exp(params.alpha * xs) + params.q)


def _auto_half_width(params: PotentialParams) -> float:
    vt = abs(params.vtilde)
    scale = max(vt, abs(params.V0), params.m)
    L = 40.0 / params.alpha
    cap = _L_CAP_FACTOR / params.alpha
    while L < cap:
        tail_r = abs(_real_potential_on_grid(params, np.array([L]))[0])
        tail_l = abs(_real_potential_on_grid(params, np.array([-L]))[0] + params.vtilde)
        if tail_r < _DECAY_RTOL * scale and tail_l < _DECAY_RTOL * scale:
            break
        L *= 1.25
    return L


def shoot_real_eigenvalues(params: PotentialParams, grid: GridConfig | None = None,
                           closed_levels: list[BoundState] | None = None,
                           match_tol: float = 1e-6) -> OracleReport:
    """Direct eigenvalue search for the Hermitian well, paired with closed forms.

    The trial energy enters the effective coefficient quadratically; that
    nonlinearity lives entirely in the outer root-find, each integration being
    linear at fixed E.  Asymptotic decay rates differ between the two ends
    because the well floor sits at -V0/q on the left.
    """
    if params.variant is not Variant.REAL:
        raise ConditionViolated("shooting implemented for the real variant only",
                                condition="variant == real")
    if params.q <= 0:
        raise ConditionViolated("shooting requires q > 0 (q < 0 puts a pole on the axis)",
                                condition="q > 0")
    grid = grid or GridConfig()
    m, vt = params.m, params.vtilde
    L = grid.L if grid.L is not None else _auto_half_width(params)

    # Bound window: decay at +inf needs E^2 < m^2; at -inf, (E + V0/q)^2 < m^2.
    pad = 1e-9 * m
    e_lo = max(-m, -vt - m) + pad
    e_hi = min(m, m - vt) - pad
    lo_cfg, hi_cfg, steps = grid.e_scan
    e_lo = lo_cfg if lo_cfg is not None else e_lo
    e_hi = hi_cfg if hi_cfg is not None else e_hi

    report = OracleReport()
    if closed_levels is None:
        if params.V0 == 0.0:
            closed_levels = []  # no well, nothing bound; limit values are formal
        else:
            try:
                closed_levels = real_spectrum(params, n_max=64)
            except (EmptySpectrum, ConditionViolated):
                closed_levels = []

    if e_hi > e_lo:
        def qfun(xs, Es):
            V = _real_potential_on_grid(params, xs)
            return (Es[None, :] - V[:, None]) ** 2 - m * m

        def seed_kappa(Es):
            # decay rates at the two ends differ: the floor sits at -V0/q on the left
            kl = np.sqrt(np.maximum(m * m - (Es + vt) ** 2, 1e-30))
            kr = np.sqrt(np.maximum(m * m - Es ** 2, 1e-30))
            return kl, kr

        report.found = find_eigenvalues(
            qfun, L, grid.n_points, e_lo, e_hi, steps=steps,
            tol_e=grid.tol_e, match_x=grid.match_x, seed_kappa=seed_kappa)

    closed_es = [(complex(st.E).real, st) for st in closed_levels]
    pairs, un_c, un_n = pair_levels([e for e, _ in closed_es],
                                    [e for e, _ in report.found], match_tol)
    by_e = {e: st for e, st in closed_es}
    report.matched = [
        {"E_closed": ec, "E_numeric": en, "rel_err": rel,
         "n": by_e[ec].n, "branch": by_e[ec].branch}
        for ec, en, rel in pairs]
    report.unmatched_closed = un_c
    report.unmatched_numeric = un_n
    return report


def _fd_residual(evaluate, sigma_tilde, s_lo: float, s_hi: float, npts: int) -> float:
    """Max relative residual of y'' + tau~/sigma y' + sigma~/sigma^2 y on [s_lo, s_hi]."""
    s = np.linspace(s_lo, s_hi, npts)
    h = s[1] - s[0]
    psi = np.array([evaluate(v) for v in s], dtype=complex)
    d1 = (psi[:-4] - 8.0 * psi[1:-3] + 8.0 * psi[3:-1] - psi[4:]) / (12.0 * h)
    d2 = (-psi[:-4] + 16.0 * psi[1:-3] - 30.0 * psi[2:-2] + 16.0 * psi[3:-1]
          - psi[4:]) / (12.0 * h * h)
    si = s[2:-2]
    sig = si - si * si
    st = (sigma_tilde.c0 + si * (sigma_tilde.c1 + si * sigma_tilde.c2))
    res = d2 + (1.0 - 2.0 * si) / sig * d1 + st / (sig * sig) * psi[2:-2]
    denom = np.max(np.abs(d2))
    return float(np.max(np.abs(res)) / max(denom, 1e-300))


def residual_check(params: PotentialParams, state: BoundState,
                   wf: WavefunctionSpec | None = None,
                   grid: GridConfig | None = None, E=None,
                   s_lo: float = 0.05, s_hi: float = 0.95) -> float:
    """Transformed-equation residual of the closed-form profile.

    E defaults to the state's energy; pass the perturbed energy when probing
    an off-eigenvalue profile so the coefficients follow the probe.
    """
    wf = wf if wf is not None else build_wavefunction(params, state)
    E = state.E if E is None else E
    d = dimensionless_kg(params, E)
    from .nu import Poly2
    sig_t = Poly2(d.beta2 + d.gamma2 - d.eps2, -(d.beta2 + 2.0 * d.gamma2), d.gamma2)
    npts = grid.n_points if grid is not None else 4001
    return _fd_residual(wf.eval_s, sig_t, s_lo, s_hi, npts)


def schrodinger_check(params: PotentialParams, n: int,
                      grid: GridConfig | None = None,
                      s_lo: float = 0.05, s_hi: float = 0.95) -> float:
    """Residual of the nonrelativistic closed form in its own transformed equation."""
    E = schrodinger_complex_spectrum(params, n)
    wf = schrodinger_wavefunction(params, n)
    prob = schrodinger_problem(params, E)
    npts = grid.n_points if grid is not None else 4001
    return _fd_residual(wf.eval_s, prob.sigma_tilde, s_lo, s_hi, npts)
