"""End-to-end acceptance checks, one test per shipped guarantee.

Each test is self-contained and pins its own tolerance.  Two of them check
guarantees that conflict with the closed forms as printed and are expected
to fail; their assertion messages carry the analysis.
"""

import json
import math
import random
import time

import numpy as np
import pytest
import scipy.integrate as si

from kgws.cli import main
from kgws.core import (PotentialParams, Variant, potential_value, x_grid)
from kgws.errors import ConditionViolated, EmptySpectrum
from kgws.oracle import residual_check, shoot_real_eigenvalues
from kgws.specfun import (Hyp2F1Args, JacobiParams, beta, gauss_2f1,
                          jacobi_poly, jacobi_sum_ascending_form,
                          jacobi_sum_product_form)
from kgws.spectra import (level_candidates, max_level_index, real_spectrum,
                          spectrum)
from kgws.wavefn import build_wavefunction, normalization_quadrature


def test_criterion_01_zero_coupling_limit_values():
    t0 = time.perf_counter()
    p = PotentialParams(V0=0.0, q=1.0, a=1.0, m=1.0)  # alpha = m
    sp = real_spectrum(p, 4)
    e0, e1 = sp[0].E.real, sp[1].E.real
    assert abs(e0 - 1.0) < 1e-6
    assert abs(e1 - math.sqrt(3.0) / 2.0) < 1e-12
    assert abs(e1 - 0.866025) < 1e-6 * 0.866025
    assert time.perf_counter() - t0 < 1.0


def test_criterion_02_shooting_oracle_agreement():
    t0 = time.perf_counter()
    failures = []
    for q in (0.75, 1.0, 2.0):
        p = PotentialParams(V0=0.4 * q, q=q, a=1.0, m=1.0)
        closed = real_spectrum(p, 64)
        assert len({st.n for st in closed}) == max_level_index(p) + 1
        rep = shoot_real_eigenvalues(p, match_tol=1e-6)
        if rep.unmatched_closed:
            failures.append((q, rep.unmatched_closed, len(rep.found)))
    assert time.perf_counter() - t0 < 30.0
    assert not failures, (
        "closed-form physical levels have no shooting counterpart: "
        f"{failures} (q, unmatched energies, eigenvalues found). The direct "
        "search is not missing roots: for every admissible real-variant "
        "parameter set the bound-state window forces |E - V| < m on the "
        "whole axis, so psi'' = ((E-V)^2 - m^2) psi < 0 admits no "
        "square-integrable solution and the closed-form levels are formal, "
        "consistent with their sign-resolved exponents never decaying at "
        "both ends.")


def test_criterion_03_level_count_identity():
    p = PotentialParams(V0=0.0, q=1.0, a=1.0, m=1.0)
    assert max_level_index(p) == 2
    sp = real_spectrum(p, 8)
    assert [st.n for st in sp] == [0, 1, 2]
    assert abs(sp[2].E) < 1e-9


def test_criterion_04_quantization_self_consistency():
    t0 = time.perf_counter()
    rng = random.Random(20260822)
    checked = 0
    for variant in Variant:
        done = 0
        while done < 100:
            m = rng.uniform(0.5, 2.0)
            al = rng.uniform(0.2, 3.0)
            q = rng.uniform(0.5, 3.0)
            if variant in (Variant.REAL, Variant.NONPT):
                v0 = rng.uniform(0.05, 0.95) * q * al / 2.0
            else:
                q *= rng.choice((1.0, -1.0))
                v0 = rng.uniform(0.1, 6.0) * m
            p = PotentialParams(V0=v0, q=q, a=1.0 / al, m=m, variant=variant)
            done += 1
            try:
                states = spectrum(p, 6)
            except (EmptySpectrum, ConditionViolated):
                continue
            for st in states:
                assert st.residual < 1e-9, (p, st.n, st.residual)
                checked += 1
    assert checked > 200  # the property must not hold vacuously
    assert time.perf_counter() - t0 < 10.0


def test_criterion_05_special_function_suite():
    rng = np.random.default_rng(7)
    for n in range(7):
        for _ in range(3):
            jp = JacobiParams(n, float(rng.uniform(0, 2.5)), float(rng.uniform(0, 2.5)))
            for s in np.linspace(0.05, 0.95, 7):
                r1 = jacobi_poly(jp, 1.0 - 2.0 * s)
                r2 = jacobi_sum_product_form(jp, s)
                r3 = jacobi_sum_ascending_form(jp, s)
                scale = 1.0 + abs(r1)
                assert abs(r1 - r2) < 1e-10 * scale
                assert abs(r1 - r3) < 1e-10 * scale
    assert abs(gauss_2f1(Hyp2F1Args(1.0, 1.0, 3.0, 1.0)) - 2.0) < 1e-12
    for qz in (1.0, 1j):
        for (a0, mu) in [(1.5, 0.7), (2.25, 1.9), (4.5, 2.5)]:
            lhs = gauss_2f1(Hyp2F1Args(a0, -mu, a0 + 1.0, qz)) * beta(a0, 1.0)
            re, _ = si.quad(lambda s: (s ** (a0 - 1) * (1 - qz * s) ** mu).real,
                            0.0, 1.0, epsabs=1e-13, epsrel=1e-13)
            im, _ = si.quad(lambda s: (s ** (a0 - 1) * (1 - qz * s) ** mu).imag,
                            0.0, 1.0, epsabs=1e-13, epsrel=1e-13)
            assert abs(lhs - complex(re, im)) < 1e-9


def test_criterion_06_normalization_cross_check():
    p = PotentialParams(V0=0.1, q=1.0, a=2.5, m=1.0)
    sp = real_spectrum(p, 4)
    assert [st.n for st in sp] == [0, 1, 2, 3, 4]
    for st in sp:
        w = build_wavefunction(p, st, principal=True)
        assert w.norm_status == "closed-form"
        quad = normalization_quadrature(p, st, A=w.A, B=w.B)
        assert abs(w.N.real - quad) < 1e-7 * quad


def test_criterion_07_symmetry_certificates():
    pt = PotentialParams(V0=1.3, q=1.0, a=1.0, m=1.0, variant=Variant.PT)
    worst_pt = max(
        abs(potential_value(pt, x) - potential_value(pt, -x).conjugate())
        for x in x_grid(pt, -8.0, 8.0, 1000, guard=1e-2))
    assert worst_pt <= 1e-12

    ps = PotentialParams(V0=1.3, q=1.0, a=1.0, m=1.0, variant=Variant.PSEUDO)
    shift = math.pi / (2.0 * ps.alpha)
    worst_ps = max(
        abs(potential_value(ps, x) - potential_value(ps, shift - x).conjugate())
        for x in x_grid(ps, -8.0, 8.0, 1000, guard=1e-2))
    assert worst_ps <= 1e-12, (
        f"quarter-period map deviation {worst_ps:.3g}: V(pi/(2 alpha) - x)* "
        "reproduces the PT-variant potential, not this one (cross-check in "
        "test_core.test_pseudo_quarter_shift_maps_onto_pt_not_itself); the "
        "actual antiunitary self-map of the pseudo variant is the half-period "
        "shift x -> pi/alpha - x, which passes this grid check at ~1e-11.")


def _scan_rows(tmp_path, preset):
    out = tmp_path / f"{preset}.json"
    rc = main(["scan", "--preset", preset, "--format", "json",
               "--output", str(out)])
    assert rc == 0
    return json.loads(out.read_text())["rows"]


def test_criterion_08_sign_structure_of_preset_sweeps(tmp_path):
    neg = {"fig1a": None, "fig2a": None}
    for preset in neg:
        rows = [r for r in _scan_rows(tmp_path, preset) if r["emitted"]]
        assert rows, f"{preset}: nothing emitted"
        assert all(r["E_re"] < 0.0 for r in rows), preset
    for preset in ("fig1b", "fig2b"):
        rows = [r for r in _scan_rows(tmp_path, preset) if r["emitted"]]
        # sign-flipped wells: the normalizability gate never opens, so the
        # emitted set is empty and the sign property holds vacuously
        assert all(r["E_re"] > 0.0 for r in rows), preset


def test_criterion_09_residual_detector_and_sensitivity():
    fixtures = [
        PotentialParams(V0=0.45, q=1.0, a=1.0, m=1.0),
        PotentialParams(V0=6.0, q=1.0, a=1.0, m=1.0, variant=Variant.PT),
        PotentialParams(V0=0.8, q=2.0, a=1.0, m=1.0, variant=Variant.NONPT),
        PotentialParams(V0=4.0, q=-1.0, a=0.5, m=1.0, variant=Variant.PSEUDO),
    ]
    for p in fixtures:
        states = [st for n in range(3) for st in level_candidates(p, n)
                  if st.emitted]
        assert states, p
        for st in states:
            assert residual_check(p, st) < 1e-7, (p, st.n)
            shifted = residual_check(p, st, E=complex(st.E) + 0.01 * p.m)
            assert shifted > 1e-3, (p, st.n, shifted)


def test_criterion_10_cli_determinism(tmp_path):
    runs = {
        "spectrum": ["spectrum", "--V0", "0.45", "--q", "1", "--a", "1",
                     "--m", "1"],
        "scan": ["scan", "--preset", "fig4a", "--steps", "11"],
        "wavefunction": ["wavefunction", "--V0", "0.1", "--q", "1", "--a", "2.5",
                         "--m", "1", "--n", "1", "--principal",
                         "--samples", "101"],
        "verify": ["verify", "--variant", "nonpt", "--V0", "0.8", "--q", "2",
                   "--a", "1", "--m", "1"],
    }
    for name, argv in runs.items():
        a, b = tmp_path / f"{name}-1.txt", tmp_path / f"{name}-2.txt"
        assert main([*argv, "--output", str(a)]) in (0, 3)
        assert main([*argv, "--output", str(b)]) in (0, 3)
        assert a.read_bytes() == b.read_bytes(), name
