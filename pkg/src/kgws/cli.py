"""Command-line front door: spectra, wavefunction samples, verification, sweeps.

Output contract: CSV with `#`-prefixed header comments (default) or JSON;
floats printed with 17 significant digits; no timestamps, so identical
configurations give byte-identical files.  Exit codes: 0 success, 2 invalid
or violated configuration, 3 verification mismatch.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .core import PotentialParams, Variant, map_x_to_s
from .errors import (ConditionViolated, EmptySpectrum, KgwsError, NoBracket,
                     StiffnessError)
from .oracle import GridConfig, residual_check, shoot_real_eigenvalues
from .spectra import level_candidates, spectrum
from .wavefn import build_wavefunction

log = logging.getLogger("kgws.cli")

_RESIDUAL_GATE = 1e-7

# Figure presets: caption parameters; sweep ranges are our choice (the source
# figures do not pin their axes numerically) and stay flag-overridable.
_PRESETS = {
    "fig1a": {"variant": "pt", "q": 1.0, "a": 1.0, "m": 1.0, "V0": 6.0,
              "sweep": "V0", "from": 0.0, "to": 8.0, "steps": 81, "nmax": 0},
    "fig1b": {"variant": "pt", "q": -1.0, "a": 1.0, "m": 1.0, "V0": 6.0,
              "sweep": "V0", "from": 0.0, "to": 8.0, "steps": 81, "nmax": 0},
    "fig2a": {"variant": "pt", "q": 1.0, "a": 1.0, "m": 1.0, "V0": 6.0,
              "sweep": "alpha", "from": 0.1, "to": 8.0, "steps": 80, "nmax": 2},
    "fig2b": {"variant": "pt", "q": -1.0, "a": 1.0, "m": 1.0, "V0": 2.0,
              "sweep": "alpha", "from": 0.1, "to": 8.0, "steps": 80, "nmax": 2},
    "fig3a": {"variant": "pseudo", "q": 1.0, "a": 10.0, "m": 1.0, "V0": 2.0,
              "sweep": "V0", "from": 0.0, "to": 8.0, "steps": 81, "nmax": 0},
    "fig3b": {"variant": "pseudo", "q": -1.0, "a": 1.0, "m": 1.0, "V0": 2.0,
              "sweep": "V0", "from": 0.0, "to": 8.0, "steps": 81, "nmax": 0},
    "fig4a": {"variant": "pseudo", "q": 1.0, "a": 1.0, "m": 1.0, "V0": 2.0,
              "sweep": "alpha", "from": 0.1, "to": 8.0, "steps": 80, "nmax": 2},
    "fig4b": {"variant": "pseudo", "q": -1.0, "a": 1.0, "m": 1.0, "V0": 4.0,
              "sweep": "alpha", "from": 0.1, "to": 8.0, "steps": 80, "nmax": 2},
}


def _fmt(x) -> str:
    """Deterministic scalar formatting: 17 significant digits, complex as re+imj."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, complex) or (hasattr(x, "imag") and x.imag != 0):
        z = complex(x)
        if z.imag == 0.0:
            return f"{z.real:.17g}"
        return f"{z.real:.17g}{z.imag:+.17g}j"
    return f"{float(x):.17g}"


class _Usage(Exception):
    """Configuration problems that map to exit code 2."""


def _add_problem_flags(p: argparse.ArgumentParser):
    p.add_argument("--config", metavar="JSON_FILE",
                   help="parameter file; flags override its values")
    p.add_argument("--variant", choices=[v.value for v in Variant])
    p.add_argument("--V0", type=float)
    p.add_argument("--q", type=float)
    p.add_argument("--a", type=float, help="diffuseness; alpha = 1/a")
    p.add_argument("--alpha", type=float, help="inverse diffuseness; wins over --a")
    p.add_argument("--m", type=float)
    p.add_argument("--R0", type=float)
    p.add_argument("--units-of-m", action="store_true",
                   help="read V0 and alpha in units of m (R0 in 1/m)")


def _add_output_flags(p: argparse.ArgumentParser, fmt_default="csv"):
    p.add_argument("--format", choices=["csv", "json"], default=fmt_default)
    p.add_argument("--output", metavar="FILE", help="write here instead of stdout")
    p.add_argument("--plot", metavar="PNG", help="also render a figure to this path")


def _build_params(args) -> PotentialParams:
    base = {"q": 1.0, "a": 1.0, "m": 1.0, "R0": 0.0, "variant": "real"}
    if getattr(args, "preset", None):
        if args.preset not in _PRESETS:
            raise _Usage(f"unknown preset {args.preset!r}; choices: "
                         + ", ".join(sorted(_PRESETS)))
        pre = _PRESETS[args.preset]
        base.update({k: pre[k] for k in ("variant", "q", "a", "m", "V0")})
    if args.config:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                base.update(json.load(fh))
        except (OSError, json.JSONDecodeError) as exc:
            raise _Usage(f"cannot read --config: {exc}") from exc
    for key in ("variant", "V0", "q", "a", "m", "R0"):
        val = getattr(args, key, None)
        if val is not None:
            base[key] = val
    if args.alpha is not None:
        if args.alpha <= 0:
            raise _Usage("--alpha must be positive")
        base["a"] = 1.0 / args.alpha
    if base.get("V0") is None:
        raise _Usage("V0 is required (flag --V0, --config file, or --preset)")
    if args.units_of_m:
        m = float(base["m"])
        base["V0"] = float(base["V0"]) * m
        base["a"] = float(base["a"]) / m       # alpha scales like m
        base["R0"] = float(base.get("R0", 0.0)) / m
    try:
        return PotentialParams(V0=float(base["V0"]), q=float(base["q"]),
                               a=float(base["a"]), m=float(base["m"]),
                               R0=float(base.get("R0", 0.0)),
                               variant=Variant(base.get("variant", "real")))
    except (ValueError, KeyError) as exc:
        raise _Usage(f"invalid parameters: {exc}") from exc


def _config_header(params: PotentialParams, command: str, extra: dict) -> list[str]:
    items = dict(params.to_json_dict())
    items.update(extra)
    kv = " ".join(f"{k}={items[k]}" for k in sorted(items))
    return [f"# kgws {__version__}", f"# command={command}", f"# {kv}"]


def _emit(args, lines: list[str]):
    text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, payload: dict):
    payload = dict(payload)
    payload["version"] = __version__
    text = json.dumps(payload, sort_keys=True, indent=2, default=str) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _state_row(st) -> dict:
    e = complex(st.E)
    return {
        "n": st.n, "branch": st.branch, "E_re": e.real, "E_im": e.imag,
        "xi": st.xi, "b_signed": st.b_signed, "eps": st.eps,
        "physical": st.physical, "normalizable": st.normalizable,
    }


def cmd_spectrum(args) -> int:
    params = _build_params(args)
    n_max = args.nmax if args.nmax is not None else 16
    try:
        states = spectrum(params, n_max)
    except ConditionViolated as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except EmptySpectrum:
        states = []
    rows = [_state_row(st) for st in states]
    cols = ["n", "branch", "E_re", "E_im", "xi", "b_signed", "eps",
            "physical", "normalizable"]
    if args.format == "json":
        _emit_json(args, {"config": params.to_json_dict(),
                          "nmax": n_max, "states": rows})
    else:
        lines = _config_header(params, "spectrum", {"nmax": n_max})
        lines.append(",".join(cols))
        for r in rows:
            lines.append(",".join(
                str(r[c]) if c in ("n", "branch") else _fmt(r[c]) for c in cols))
        _emit(args, lines)
    if args.plot and states:
        from .report import render_spectrum
        render_spectrum(states, params, args.plot)
    return 0


def cmd_verify(args) -> int:
    params = _build_params(args)
    grid = GridConfig(L=args.L, n_points=args.grid_points,
                      tol_e=args.tol if args.tol is not None else 1e-10)
    match_tol = 1e-6

    if params.variant is Variant.REAL:
        try:
            closed = [] if params.V0 == 0.0 else spectrum(params, args.nmax or 64)
        except (EmptySpectrum, ConditionViolated):
            closed = []
        if args.inject_shift:
            closed = [dataclasses.replace(st, E=complex(st.E).real + args.inject_shift)
                      for st in closed]
        try:
            rep = shoot_real_eigenvalues(params, grid, closed_levels=closed,
                                         match_tol=match_tol)
        except (ConditionViolated, StiffnessError, NoBracket) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        ok = not rep.unmatched_closed and not rep.unmatched_numeric
        _emit_json(args, {"config": params.to_json_dict(), "mode": "shooting",
                          "report": rep.to_json_dict(), "agreed": ok})
        return 0 if ok else 3

    # complex variants: residual-only verification of every emitted level
    try:
        states = spectrum(params, args.nmax if args.nmax is not None else 16)
    except (EmptySpectrum, ConditionViolated):
        states = []
    entries, ok = [], True
    for st in states:
        r = residual_check(params, st, grid=grid)
        good = r < _RESIDUAL_GATE
        ok = ok and good
        e = complex(st.E)
        entries.append({"n": st.n, "E_re": e.real, "E_im": e.imag,
                        "residual": r, "pass": good})
    _emit_json(args, {"config": params.to_json_dict(), "mode": "residual",
                      "levels": entries, "agreed": ok})
    return 0 if ok else 3


def _scan_point(params: PotentialParams, axis: str, value: float, nmax: int):
    if axis == "V0":
        p = PotentialParams(V0=value, q=params.q, a=params.a, m=params.m,
                            R0=params.R0, variant=params.variant)
    else:
        p = PotentialParams(V0=params.V0, q=params.q, a=1.0 / value, m=params.m,
                            R0=params.R0, variant=params.variant)
    rows = []
    for n in range(nmax + 1):
        try:
            cands = level_candidates(p, n)
        except ConditionViolated:
            continue  # point outside this variant's existence condition
        for st in cands:
            e = complex(st.E)
            rows.append({"sweep_value": value, "n": n, "E_re": e.real,
                         "E_im": e.imag, "emitted": bool(st.emitted)})
    return rows


def cmd_scan(args) -> int:
    pre = _PRESETS.get(args.preset) if args.preset else None
    if args.preset and pre is None:
        print(f"error: unknown preset {args.preset!r}", file=sys.stderr)
        return 2
    params = _build_params(args)
    axis = args.sweep or (pre["sweep"] if pre else None)
    if axis not in ("V0", "alpha"):
        print("error: --sweep must be V0 or alpha", file=sys.stderr)
        return 2
    lo = args.range_from if args.range_from is not None else (pre or {}).get("from")
    hi = args.range_to if args.range_to is not None else (pre or {}).get("to")
    steps = args.steps if args.steps is not None else (pre or {}).get("steps", 50)
    nmax = args.nmax if args.nmax is not None else (pre or {}).get("nmax", 0)
    if lo is None or hi is None:
        print("error: sweep range required (--from/--to or a preset)", file=sys.stderr)
        return 2
    if axis == "alpha" and lo <= 0:
        lo = max(lo, 1e-3)

    values = list(np.linspace(float(lo), float(hi), int(steps)))
    jobs = max(1, args.jobs or 1)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(
                lambda v: _scan_point(params, axis, v, nmax), values))
    else:
        chunks = [_scan_point(params, axis, v, nmax) for v in values]
    rows = [r for chunk in chunks for r in chunk]  # deterministic sweep order

    if args.format == "json":
        _emit_json(args, {"config": params.to_json_dict(), "sweep": axis,
                          "rows": rows})
    else:
        lines = _config_header(params, "scan",
                               {"sweep": axis, "from": lo, "to": hi,
                                "steps": steps, "nmax": nmax})
        lines.append("sweep_value,n,E_re,E_im,emitted")
        for r in rows:
            lines.append(",".join([_fmt(r["sweep_value"]), str(r["n"]),
                                   _fmt(r["E_re"]), _fmt(r["E_im"]),
                                   _fmt(r["emitted"])]))
        _emit(args, lines)
    if args.plot:
        from .report import render_scan
        render_scan(rows, "sweep_value", params, args.plot)
    return 0


def cmd_wavefunction(args) -> int:
    params = _build_params(args)
    n = args.n
    try:
        states = spectrum(params, max(n, args.nmax or n))
    except (ConditionViolated, EmptySpectrum) as exc:
        print(f"error: no spectrum: {exc}", file=sys.stderr)
        return 2
    match = [st for st in states if st.n == n]
    if not match:
        print(f"error: level n={n} is not emitted for this configuration",
              file=sys.stderr)
        return 2
    st = match[0]  # lowest-energy branch first for the real variant
    wf = build_wavefunction(params, st, principal=args.principal)
    res = residual_check(params, st, wf=wf)

    L = args.L if args.L is not None else 12.0 / params.alpha
    npts = args.samples
    xs = np.linspace(-L, L, npts)
    lines = _config_header(params, "wavefunction", {
        "n": n, "branch": st.branch, "E": _fmt(st.E), "N": _fmt(wf.N),
        "norm_status": wf.norm_status, "residual": _fmt(res), "L": _fmt(L),
        "samples": npts})
    rows = []
    for x in xs:
        s = map_x_to_s(params, x)
        psi = wf.eval_s(s)
        rows.append((x, s, psi))
    if args.format == "json":
        _emit_json(args, {
            "config": params.to_json_dict(), "n": n, "E": str(complex(st.E)),
            "N": str(complex(wf.N)), "norm_status": wf.norm_status,
            "residual": res,
            "samples": [{"x": x, "s_re": complex(s).real, "s_im": complex(s).imag,
                         "psi_re": complex(p).real, "psi_im": complex(p).imag}
                        for x, s, p in rows]})
    else:
        lines.append("x,s_re,s_im,psi_re,psi_im")
        for x, s, p in rows:
            s, p = complex(s), complex(p)
            lines.append(",".join([_fmt(x), _fmt(s.real), _fmt(s.imag),
                                   _fmt(p.real), _fmt(p.imag)]))
        _emit(args, lines)
    if args.plot:
        from .report import render_wavefunction
        render_wavefunction(xs, [p for _, _, p in rows], params, n, args.plot)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="kgws",
        description="Bound states of the deformed exponential well: closed-form "
                    "spectra, eigenfunctions, and independent numerical checks.")
    ap.add_argument("--version", action="version", version=f"kgws {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="closed-form level table")
    _add_problem_flags(sp)
    sp.add_argument("--nmax", type=int)
    _add_output_flags(sp)
    sp.set_defaults(fn=cmd_spectrum)

    vf = sub.add_parser("verify", help="independent numerical check")
    _add_problem_flags(vf)
    vf.add_argument("--nmax", type=int)
    vf.add_argument("--grid-points", type=int, default=4001)
    vf.add_argument("--L", type=float)
    vf.add_argument("--tol", type=float)
    vf.add_argument("--inject-shift", type=float, default=0.0,
                    help=argparse.SUPPRESS)  # test hook: detector sensitivity
    _add_output_flags(vf, fmt_default="json")
    vf.set_defaults(fn=cmd_verify)

    sc = sub.add_parser("scan", help="parameter sweep table (figure data)")
    _add_problem_flags(sc)
    sc.add_argument("--preset", choices=sorted(_PRESETS))
    sc.add_argument("--sweep", choices=["V0", "alpha"])
    sc.add_argument("--from", dest="range_from", type=float)
    sc.add_argument("--to", dest="range_to", type=float)
    sc.add_argument("--steps", type=int)
    sc.add_argument("--nmax", type=int)
    sc.add_argument("--jobs", type=int, default=1)
    _add_output_flags(sc)
    sc.set_defaults(fn=cmd_scan)

    wf = sub.add_parser("wavefunction", help="sampled eigenfunction")
    _add_problem_flags(wf)
    wf.add_argument("--n", type=int, default=0, help="level index")
    wf.add_argument("--nmax", type=int)
    wf.add_argument("--samples", type=int, default=801)
    wf.add_argument("--L", type=float, help="half-width of the x sampling window")
    wf.add_argument("--principal", action="store_true",
                    help="positive-root exponents (textbook node structure; "
                         "does not satisfy the equation when the resolved "
                         "signs differ)")
    _add_output_flags(wf)
    wf.set_defaults(fn=cmd_wavefunction)
    return ap


def main(argv=None) -> int:
    level = os.environ.get("KGWS_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except _Usage as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConditionViolated as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KgwsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
