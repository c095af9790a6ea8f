"""Figure rendering for the command-line reports.

Everything here is presentation only: the numbers are computed by the callers
and passed in, so plots can never disagree with the delimited output written
next to them.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")  # headless; must precede pyplot import

import matplotlib.pyplot as plt
import numpy as np

from .core import PotentialParams

_DPI = 150


def _param_label(params: PotentialParams) -> str:
    return (f"{params.variant.value}: V0={params.V0:g}, q={params.q:g}, "
            f"a={params.a:g}, m={params.m:g}")


def render_spectrum(states, params: PotentialParams, out_path: str) -> str:
    """Level diagram: Re E per level index, with Im E called out when present."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for st in states:
        e = complex(st.E)
        ax.hlines(e.real, st.n - 0.3, st.n + 0.3,
                  colors="C0" if st.physical or st.emitted else "C3")
        if abs(e.imag) > 1e-12:
            ax.annotate(f"Im={e.imag:.3g}", (st.n, e.real),
                        textcoords="offset points", xytext=(4, 4), fontsize=7)
    if states:
        m = params.m
        ax.axhline(m, color="gray", lw=0.6, ls="--")
        ax.axhline(-m, color="gray", lw=0.6, ls="--")
    ax.set_xlabel("level index n")
    ax.set_ylabel("Re E")
    ax.set_title(_param_label(params), fontsize=9)
    fig.tight_layout()
    fig.savefig(out_path, dpi=_DPI)
    plt.close(fig)
    return out_path


def render_scan(rows, sweep_key: str, params: PotentialParams, out_path: str) -> str:
    """Energy curves against the swept parameter, one curve per level index.

    rows: dicts with the swept value, "n", "E_re", "E_im", "emitted".
    """
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    by_n = {}
    for r in rows:
        by_n.setdefault(r["n"], []).append(r)
    for n in sorted(by_n):
        pts = by_n[n]
        xs = np.array([p[sweep_key] for p in pts], dtype=float)
        ys = np.array([p["E_re"] for p in pts], dtype=float)
        ok = np.array([bool(p["emitted"]) for p in pts])
        order = np.argsort(xs)
        xs, ys, ok = xs[order], ys[order], ok[order]
        line, = ax.plot(xs[ok], ys[ok], "-", label=f"n={n}")
        if (~ok).any():
            ax.plot(xs[~ok], ys[~ok], "o", mfc="none", ms=3,
                    color=line.get_color())
    has_im = any(abs(r["E_im"]) > 1e-12 and r["emitted"] for r in rows)
    ax.set_xlabel(sweep_key)
    ax.set_ylabel("Re E" + (" (complex energies present)" if has_im else ""))
    ax.set_title(_param_label(params), fontsize=9)
    if by_n:
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=_DPI)
    plt.close(fig)
    return out_path


def render_wavefunction(xs, psi, params: PotentialParams, n: int,
                        out_path: str) -> str:
    """Profile along x: real part, imaginary part, modulus."""
    xs = np.asarray(xs, dtype=float)
    psi = np.asarray(psi, dtype=complex)
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(xs, psi.real, label="Re")
    if np.max(np.abs(psi.imag)) > 1e-14 * max(np.max(np.abs(psi)), 1e-300):
        ax.plot(xs, psi.imag, label="Im")
    ax.plot(xs, np.abs(psi), "--", lw=0.8, label="|psi|")
    ax.axhline(0.0, color="gray", lw=0.5)
    ax.set_xlabel("x")
    ax.set_ylabel("psi")
    ax.set_title(_param_label(params) + f", n={n}", fontsize=9)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=_DPI)
    plt.close(fig)
    return out_path
