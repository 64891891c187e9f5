import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phasecov import (AffineBlochMap, CoefficientSet, OhmicParams, RateProfile,
                      ThermalParams, choi_matrix, choi_spectrum, constant_profile,
                      cp_choi, cp_paper, cp_report, ohmic_closed_form,
                      ohmic_profile, pqwy, short_time_check, thermal_coefficients,
                      thermal_profile, weak_coupling_check)

RNG = np.random.default_rng(7)


def _coeffs(Gamma, GammaTilde, Omega, g, t=1.0):
    return CoefficientSet(t=t, Gamma=Gamma, GammaTilde=GammaTilde, Omega=Omega, g=g)


coeff_strategy = st.builds(
    _coeffs,
    Gamma=st.floats(-1.0, 6.0),
    GammaTilde=st.floats(-2.0, 6.0),
    Omega=st.floats(-7.0, 7.0),
    g=st.floats(-0.3, 1.3),
)


class TestPqwy:
    def test_identity_map(self):
        p, q, w, y = pqwy(CoefficientSet.identity())
        assert (p, q, w, y) == (0.5, -0.5, 1.0, 0j)

    def test_pure_dephasing(self):
        c = _coeffs(0.0, math.log(2.0), 0.0, 0.0)
        p, q, w, y = pqwy(c)
        assert (p, q) == (0.5, -0.5)
        assert w == pytest.approx(0.5, rel=1e-15)
        assert y == 0j

    def test_thermal_algebraic_identities(self):
        # p = e^{-Gamma}(G+1) - 1/2 and q = e^{-Gamma} G - 1/2
        c = thermal_coefficients(ThermalParams(R=0.25, N=1.0), 1.0)
        p, q, w, y = pqwy(c)
        assert p == pytest.approx(math.exp(-c.Gamma) + c.g - 0.5, rel=1e-14)
        assert q == pytest.approx(c.g - 0.5, rel=1e-14)


class TestPaperConditions:
    def test_initial_time_saturates_i_and_iv(self):
        conds = cp_paper(CoefficientSet.identity(), tol=1e-9)
        assert conds.margin_i == 0.0
        assert conds.margin_iv == 0.0
        assert conds.verdict

    def test_negative_constant_dephasing_violates_iv(self):
        # Gamma = g = Omega = 0, GammaTilde = -0.1: iv reads e^{0.2} <= 1
        c = _coeffs(0.0, -0.1, 0.0, 0.0)
        conds = cp_paper(c)
        assert conds.margin_iv == pytest.approx(1.0 - math.exp(0.2), rel=1e-12)
        assert not conds.holds_iv
        assert not conds.verdict
        assert conds.holds_i and conds.holds_ii and conds.holds_iii

    def test_recast_reported_only_without_dephasing(self):
        with_deph = cp_paper(_coeffs(0.5, 0.3, 0.0, 0.2))
        assert with_deph.recast_iv is None
        without = cp_paper(_coeffs(0.5, 0.0, 0.7, 0.2))
        assert without.recast_iv is not None and without.recast_iv >= 0.0

    def test_thermal_plus_ohmic_always_cp(self):
        tp = ThermalParams(R=10.0, N=1.0)
        op = OhmicParams(alpha=0.1, s=3.0, omega_c=1.0, T=0.0, kernel="literature")
        for t in np.linspace(0.0, 8.0, 160):
            tc = thermal_coefficients(tp, float(t))
            tilde = ohmic_closed_form(op, float(t))[1]
            c = CoefficientSet(t=float(t), Gamma=tc.Gamma, GammaTilde=tilde,
                               Omega=0.0, g=tc.g)
            report = cp_report(c)
            assert report.paper_verdict and report.choi_verdict


class TestChoiSpectrum:
    def test_identity_map(self):
        eigs = choi_spectrum(AffineBlochMap.identity())
        assert sorted(eigs) == pytest.approx([0.0, 0.0, 0.0, 2.0], abs=1e-15)

    def test_full_dephasing(self):
        m = AffineBlochMap(lambda3=1.0, t3=0.0, kappa=0j)
        assert sorted(choi_spectrum(m)) == pytest.approx([0, 0, 1, 1], abs=1e-15)

    def test_full_zero_temperature_relaxation(self):
        m = AffineBlochMap(lambda3=0.0, t3=1.0, kappa=0j)
        assert sorted(choi_spectrum(m)) == pytest.approx([0, 0, 1, 1], abs=1e-15)
        assert list(choi_spectrum(m)[:2]) == [0.0, 1.0]

    def test_closed_form_matches_dense_eigensolver(self):
        for _ in range(10_000):
            m = AffineBlochMap(
                lambda3=RNG.uniform(-1.2, 1.2),
                t3=RNG.uniform(-1.2, 1.2),
                kappa=complex(RNG.uniform(-1.2, 1.2), RNG.uniform(-1.2, 1.2)),
            )
            dense = np.linalg.eigvalsh(choi_matrix(m))
            assert np.abs(np.sort(choi_spectrum(m)) - dense).max() <= 1e-10

    def test_trace_is_two(self):
        for _ in range(500):
            m = AffineBlochMap(
                lambda3=RNG.uniform(-1.0, 1.0),
                t3=RNG.uniform(-1.0, 1.0),
                kappa=complex(RNG.uniform(-1, 1), RNG.uniform(-1, 1)),
            )
            assert abs(choi_spectrum(m).sum() - 2.0) <= 1e-12


@settings(max_examples=300, deadline=None)
@given(coeff_strategy)
def test_positivity_implies_condition_iii(c):
    # i) and ii) within tol bound the iii) margin below by -2 tol
    tol = 1e-12
    conds = cp_paper(c, tol=tol)
    if conds.holds_i and conds.holds_ii:
        assert conds.margin_iii >= -2 * tol


@settings(max_examples=300, deadline=None)
@given(coeff_strategy)
def test_choi_cp_implies_paper_cp(c):
    if cp_choi(c, tol=1e-12).is_cp:
        assert cp_paper(c, tol=1e-9).verdict


def test_sufficiency_positive_dephasing():
    # i), ii) plus GammaTilde >= 0 guarantee complete positivity
    for _ in range(10_000):
        qbar = RNG.uniform(0.0, 1.0)
        pbar = RNG.uniform(qbar, 1.0)
        lam3 = pbar - qbar
        gamma = math.inf if lam3 == 0.0 else -math.log(lam3)
        c = _coeffs(gamma, RNG.uniform(0.0, 3.0), RNG.uniform(0, 2 * math.pi), qbar)
        assert cp_choi(c).is_cp


def test_verdicts_agree_at_zero_phase():
    for _ in range(10_000):
        omega = RNG.choice([0.0, math.pi, -math.pi, 2 * math.pi])
        c = _coeffs(RNG.uniform(-1.0, 5.0), RNG.uniform(-2.0, 5.0),
                    float(omega), RNG.uniform(-0.3, 1.3))
        assert cp_paper(c).verdict == cp_choi(c).is_cp


def test_known_discrepancy_tuple():
    # negative accumulated dephasing hidden by cos^2(Omega) at Omega = pi/2:
    # the inequality conditions pass while the Choi operator is not PSD
    c = _coeffs(0.5, -0.5, math.pi / 2, 0.3)
    report = cp_report(c)
    assert report.paper_verdict
    assert not report.choi_verdict
    assert not report.agreement


class TestShortTime:
    def test_thermal_rates_start_at_zero(self):
        for R, N in ((0.25, 0.0), (0.25, 2.0), (10.0, 1.0)):
            rep = short_time_check(thermal_profile(ThermalParams(R=R, N=N)))
            assert rep.all_ok
            assert max(abs(v) for v in rep.values) <= 1e-10

    def test_ohmic_rate_starts_at_zero(self):
        rep = short_time_check(ohmic_profile(OhmicParams(alpha=0.3, s=2.0)))
        assert rep.all_ok and rep.values[2] == 0.0

    def test_negative_initial_rate_fails(self):
        rep = short_time_check(constant_profile(gamma3=-0.1))
        assert rep.ok == (True, True, False)
        assert not rep.all_ok

    def test_singular_origin_is_indeterminate(self):
        prof = RateProfile(singular_points=(0.0,))
        rep = short_time_check(prof)
        assert rep.indeterminate == (True, True, True)
        assert not rep.all_ok


def test_weak_coupling_check():
    assert weak_coupling_check(0.0, 0.0, 0.0) == (True, True, True)
    assert weak_coupling_check(1.0, 2.0, -0.5) == (True, True, False)
