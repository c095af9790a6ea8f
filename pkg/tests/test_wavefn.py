import cmath
import math

import numpy as np
import pytest

from kgws.core import PotentialParams, Variant
from kgws.errors import NonNormalizable
from kgws.spectra import (pseudo_spectrum, pt_spectrum, real_spectrum,
                          spectrum)
from kgws.specfun import JacobiParams, jacobi_poly
from kgws.wavefn import (build_wavefunction, normalization_closed_form,
                         normalization_quadrature, rodrigues_eval,
                         schrodinger_wavefunction, wavefunction_with_energy)

RICH = dict(V0=0.1, q=1.0, a=2.5, m=1.0)
# closed-form N for the principal-exponent profiles of the rich fixture,
# frozen after agreeing with adaptive quadrature to 2e-11
RICH_N = [46.194800197548, 2.332360754359, 4.741391641324,
          7.559934726151, 11.275456042478]


def test_rodrigues_matches_recurrence():
    for n in range(6):
        for A, B in ((0.7, 1.2), (0.7 + 0.2j, 1.1 - 0.3j), (1.5, 0.25)):
            jp = JacobiParams(n, 2 * A, 2 * B)
            for s in (0.13, 0.41, 0.5, 0.88):
                want = jacobi_poly(jp, 1 - 2 * s) * math.factorial(n)
                got = rodrigues_eval(n, A, B, s)
                assert got == pytest.approx(want, rel=1e-9, abs=1e-12)
    with pytest.raises(ValueError):
        rodrigues_eval(9, 1.0, 1.0, 0.5)


def test_rich_fixture_normalizations_agree():
    p = PotentialParams(**RICH)
    for st, want in zip(real_spectrum(p, 4), RICH_N):
        w = build_wavefunction(p, st, principal=True)
        assert w.norm_status == "closed-form"
        assert w.N.real == pytest.approx(want, rel=1e-9)
        assert abs(w.N.imag) < 1e-9 * abs(w.N)
        quad = normalization_quadrature(p, st, A=w.A, B=w.B)
        assert w.N.real == pytest.approx(quad, rel=1e-7)


def test_beta_function_norm_special_case():
    # A = B = 1, n = 0: integral of s^2 (1-s)^2 is 1/30, so N = sqrt(30)
    p = PotentialParams(**RICH)
    st = real_spectrum(p, 0)[0]
    closed = normalization_closed_form(p, st, A=1.0, B=1.0)
    quad = normalization_quadrature(p, st, A=1.0, B=1.0)
    assert quad == pytest.approx(math.sqrt(30.0), rel=1e-10)
    assert complex(closed).real == pytest.approx(math.sqrt(30.0), rel=1e-9)


def test_realized_exponents_are_not_normalizable():
    # the sign pattern that solves the equation grows at one end; the norm
    # machinery must refuse rather than return a finite number
    p = PotentialParams(V0=0.45, q=1.0, a=1.0, m=1.0)
    st = real_spectrum(p, 1)[0]
    assert st.b_exp.real > 0 and st.eps_exp.real < -0.5
    with pytest.raises(NonNormalizable):
        normalization_quadrature(p, st)
    w = build_wavefunction(p, st)
    assert w.N == 1.0 + 0.0j
    assert w.norm_status.startswith("unnormalized")


def test_principal_profiles_have_textbook_nodes():
    p = PotentialParams(**RICH)
    ss = np.linspace(1e-4, 1.0 - 1e-4, 4001)
    for st in real_spectrum(p, 4):
        w = build_wavefunction(p, st, principal=True)
        vals = np.array([w.eval_s(s).real for s in ss])
        sgn = np.sign(vals)
        sgn = sgn[sgn != 0]
        assert int(np.sum(sgn[1:] * sgn[:-1] < 0)) == st.n


def test_energy_rebuild_reproduces_realized_signs():
    p = PotentialParams(V0=0.45, q=1.0, a=1.0, m=1.0)
    st = real_spectrum(p, 1)[1]
    same = wavefunction_with_energy(p, st, st.E)
    assert same.A == pytest.approx(st.b_exp, abs=1e-14)
    assert same.B == pytest.approx(st.eps_exp, abs=1e-14)
    moved = wavefunction_with_energy(p, st, st.E + 0.05)
    assert moved.A != same.A
    assert moved.norm_status.endswith("(off-eigenvalue probe)")


def test_pt_fixture_is_closed_form_normalizable():
    p = PotentialParams(V0=6.0, q=1.0, a=1.0, m=1.0, variant=Variant.PT)
    st = pt_spectrum(p, 0)[0]
    assert st.normalizable
    w = build_wavefunction(p, st)
    assert w.norm_status == "closed-form"
    assert abs(w.N) > 0
    # the closed form is the state's own normalization here, not a reference
    assert w.A == pytest.approx(st.b_exp, abs=1e-14)


def test_q_deformed_norm_is_flagged_not_faked():
    p = PotentialParams(V0=4.0, q=-1.0, a=0.5, m=1.0, variant=Variant.PSEUDO)
    st = pseudo_spectrum(p, 0)[0]
    w = build_wavefunction(p, st)
    assert w.N == 1.0 + 0.0j
    assert "q-deformed" in w.norm_status


def test_eval_x_goes_through_the_variant_map():
    p = PotentialParams(**RICH)
    st = real_spectrum(p, 0)[0]
    w = build_wavefunction(p, st, principal=True)
    s, psi = w.eval_x(p, 0.0)
    assert s == pytest.approx(0.5, abs=1e-15)
    assert psi == pytest.approx(w.eval_s(0.5), abs=1e-12)
    s_far, _ = w.eval_x(p, 40.0)
    assert abs(s_far - 1.0) < 1e-6


def test_schrodinger_profile_exponent_sum():
    p = PotentialParams(V0=0.5, q=1.0, a=1.0, m=1.0)
    for n in range(4):
        w = schrodinger_wavefunction(p, n)
        assert (w.A + w.B).real == pytest.approx(-(n + 1), abs=1e-12)
        assert w.N == 1.0 + 0.0j
