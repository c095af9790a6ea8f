import numpy as np
import pytest

from kgws.core import PotentialParams, Variant
from kgws.errors import ConditionViolated
from kgws.oracle import (GridConfig, find_eigenvalues, pair_levels,
                         residual_check, schrodinger_check,
                         shoot_real_eigenvalues)
from kgws.spectra import nonpt_spectrum, real_spectrum

REAL_FIX = dict(V0=0.45, q=1.0, a=1.0, m=1.0)
FAST_GRID = GridConfig(n_points=2001, e_scan=(None, None, 200))


def qho(xs, Es):
    # manufactured problem with known levels 2n+1; validates the integrator
    # against something this package's closed forms had no hand in
    return Es[None, :] - (xs ** 2)[:, None]


def test_engine_recovers_oscillator_levels():
    errs = {}
    for npts in (2001, 4001):
        roots = find_eigenvalues(qho, 8.0, npts, 0.2, 8.2, steps=150, tol_e=1e-12)
        es = [e for e, _ in roots]
        assert len(es) == 4
        errs[npts] = max(abs(e - w) for e, w in zip(es, (1.0, 3.0, 5.0, 7.0)))
    assert errs[4001] < 5e-10
    # halving h should cut the error by ~16 (fourth-order scheme)
    assert errs[2001] / errs[4001] > 12.0


def test_pair_levels_greedy_and_tolerance():
    pairs, un_c, un_n = pair_levels([1.0, 2.0], [1.0 + 1e-9, 2.5], rel_tol=1e-6)
    assert len(pairs) == 1
    assert pairs[0][0] == 1.0
    assert un_c == [2.0]
    assert un_n == [2.5]
    # a systematic shift must not silently pair up
    closed = [0.3, 0.5, 0.7]
    shifted = [e + 1e-3 for e in closed]
    pairs, un_c, un_n = pair_levels(closed, shifted, rel_tol=1e-6)
    assert pairs == []
    assert un_c == closed and un_n == shifted


def test_real_well_supports_no_true_bound_state():
    # the closed-form levels are formal: the effective coefficient stays
    # negative on the whole axis for every admissible parameter set, so the
    # direct search must come back empty and leave the closed list unmatched
    p = PotentialParams(**REAL_FIX)
    rep = shoot_real_eigenvalues(p, FAST_GRID)
    assert rep.found == []
    assert rep.matched == []
    assert [pytest.approx(e, abs=1e-9) for e in rep.unmatched_closed] == \
        [0.2870217667416346, 0.4673849236455199]
    assert rep.unmatched_numeric == []
    d = rep.to_json_dict()
    assert d["found"] == [] and len(d["unmatched_closed"]) == 2


def test_zero_coupling_report_is_clean():
    p = PotentialParams(V0=0.0, q=1.0, a=1.0, m=1.0)
    rep = shoot_real_eigenvalues(p, FAST_GRID)
    assert rep.found == []
    assert rep.unmatched_closed == []
    assert rep.unmatched_numeric == []


def test_shooting_guards():
    with pytest.raises(ConditionViolated):
        shoot_real_eigenvalues(PotentialParams(V0=0.4, q=-1.0, a=1.0, m=1.0),
                               FAST_GRID)
    with pytest.raises(ConditionViolated):
        shoot_real_eigenvalues(
            PotentialParams(V0=0.4, q=1.0, a=1.0, m=1.0, variant=Variant.PT),
            FAST_GRID)


def test_grid_config_validation():
    with pytest.raises(ValueError):
        GridConfig(n_points=2000)
    with pytest.raises(ValueError):
        GridConfig(n_points=1001)
    assert GridConfig().n_points == 4001


def test_residual_separates_eigen_from_perturbed():
    p = PotentialParams(**REAL_FIX)
    st = real_spectrum(p, 1)[0]
    assert residual_check(p, st) < 1e-7
    assert residual_check(p, st, E=st.E + 0.01 * p.m) > 1e-3
    np_p = PotentialParams(V0=0.8, q=2.0, a=1.0, m=1.0, variant=Variant.NONPT)
    for s in nonpt_spectrum(np_p, 1):
        assert residual_check(np_p, s) < 1e-7
        assert residual_check(np_p, s, E=s.E + 0.01) > 1e-3


def test_schrodinger_reduction_residuals():
    p = PotentialParams(V0=0.5, q=1.0, a=1.0, m=1.0)
    for n in range(3):
        assert schrodinger_check(p, n) < 1e-7


def test_match_window_can_be_overridden():
    # narrowing the scan window to exclude all levels finds nothing
    roots = find_eigenvalues(qho, 8.0, 2001, 1.4, 2.6, steps=60, tol_e=1e-10)
    assert roots == []
    roots = find_eigenvalues(qho, 8.0, 2001, 2.2, 3.8, steps=60, tol_e=1e-10)
    assert len(roots) == 1
    assert roots[0][0] == pytest.approx(3.0, abs=1e-8)
