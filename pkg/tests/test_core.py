"""Thermal moments, intercepts, and asymptotics of the mu-Bose gas."""

import math

import pytest

from mubose import (
    ASYMPTOTIC,
    CLOSED_FORM,
    ORACLE,
    ConvergenceError,
    CorrelationResult,
    DeformationMu,
    DomainError,
    PoleError,
    ThermoPoint,
    closed_form_admissible,
    intercept,
    intercept_asymptotic,
    mean_occupation,
    mu_bracket,
    mu_factorial,
    oracle_moment,
    r3_asymptotic,
    r3_function,
    r_moment,
)

LN2 = math.log(2.0)
PION = 139.57


class TestTypes:
    def test_deformation_validation(self):
        assert DeformationMu(0.0).mu == 0.0
        for bad in (-0.1, math.nan, math.inf):
            with pytest.raises(DomainError):
                DeformationMu(bad)

    def test_thermo_point_alpha(self):
        pt = ThermoPoint(120.0, 0.0, PION)
        assert pt.alpha == pytest.approx(PION / 120.0, rel=1e-15)
        pt = ThermoPoint(180.0, 300.0, PION)
        assert pt.alpha == pytest.approx(math.hypot(PION, 300.0) / 180.0, rel=1e-15)

    @pytest.mark.parametrize("T,k,m", [(0.0, 0.0, PION), (-5.0, 0.0, PION),
                                       (120.0, -1.0, PION), (120.0, 0.0, 0.0)])
    def test_thermo_point_validation(self, T, k, m):
        with pytest.raises(DomainError):
            ThermoPoint(T, k, m)


class TestBracket:
    def test_values(self):
        assert mu_bracket(1.0, 0.1) == pytest.approx(1.0 / 1.1, rel=1e-15)
        assert mu_bracket(5.0, 0.0) == 5.0
        assert mu_bracket(3.0, 0.2) == pytest.approx(1.875, rel=1e-15)

    def test_saturation_bound(self):
        # phi(n) < 1/mu for every n when mu > 0
        assert all(mu_bracket(float(n), 0.25) < 4.0 for n in range(1, 200))

    def test_domain(self):
        with pytest.raises(DomainError):
            mu_bracket(-1.0, 0.1)
        with pytest.raises(DomainError):
            mu_bracket(1.0, -0.1)

    def test_factorial(self):
        assert mu_factorial(3, 0.0) == pytest.approx(6.0, rel=1e-15)
        want = (1 / 1.1) * (2 / 1.2) * (3 / 1.3)
        assert mu_factorial(3, 0.1) == pytest.approx(want, rel=1e-14)


class TestMeanOccupation:
    def test_bose_limit(self):
        res = mean_occupation(0.0, LN2)
        assert res.value == pytest.approx(1.0, rel=1e-15)
        assert res.method == CLOSED_FORM

    def test_frozen_oracle_value(self):
        # (1-e^-1) sum phi_0.1(n) e^-n, summed in high precision
        res = mean_occupation(0.1, 1.0)
        assert res.value == pytest.approx(0.48368116243507456, rel=1e-12)
        assert res.error_bound <= 1e-12

    def test_continuity_at_zero(self):
        tiny = mean_occupation(1e-8, 1.0).value
        zero = mean_occupation(0.0, 1.0).value
        assert tiny == pytest.approx(zero, abs=1e-5)

    def test_accepts_wrapper_type(self):
        a = mean_occupation(DeformationMu(0.1), 1.0).value
        b = mean_occupation(0.1, 1.0).value
        assert a == b

    def test_domain(self):
        with pytest.raises(DomainError):
            mean_occupation(0.1, 0.0)
        with pytest.raises(DomainError):
            mean_occupation(0.1, 1.0, tol=0.0)


class TestRMoment:
    def test_bose_closed_form(self):
        res = r_moment(0.0, LN2, 3)
        assert res.value == pytest.approx(6.0, rel=1e-14)

    def test_frozen_oracle_value(self):
        res = r_moment(0.1, 1.0, 2)
        assert res.value == pytest.approx(0.40271173395477298, rel=1e-12)
        assert res.method == CLOSED_FORM

    def test_r1_matches_mean(self):
        assert r_moment(0.2, 5.0, 1).value == mean_occupation(0.2, 5.0).value

    def test_domain_boundary(self):
        with pytest.raises(DomainError, match="0.5"):
            r_moment(0.6, 1.0, 3)
        with pytest.raises(DomainError):
            r_moment(0.5, 1.0, 3)

    def test_small_mu_routes_to_oracle(self):
        res = r_moment(1e-6, 1.0, 4)
        assert res.method == ORACLE
        bose = math.factorial(4) / math.expm1(1.0) ** 4
        assert res.value == pytest.approx(bose, rel=1e-4)


class TestOracleMoment:
    def test_bose_agreement(self):
        got = oracle_moment(0.0, LN2, 2)
        assert got.value == pytest.approx(2.0, abs=1e-10)
        assert got.method == ORACLE

    def test_matches_closed_form(self):
        a = r_moment(0.1, 1.0, 3)
        b = oracle_moment(0.1, 1.0, 3)
        assert abs(a.value - b.value) <= a.error_bound + b.error_bound

    def test_near_domain_edge(self):
        res = oracle_moment(0.45, 2.0, 2)
        assert math.isfinite(res.value) and res.value > 0.0

    def test_pole_rejection(self):
        with pytest.raises(PoleError):
            oracle_moment(0.5, 1.0, 3)
        with pytest.raises(PoleError):
            oracle_moment(1.0, 1.0, 2)
        # 1/mu integer but larger than r-1 is fine
        assert oracle_moment(0.5, 1.0, 2).value > 0.0


class TestIntercept:
    def test_undeformed_exact(self):
        for r in range(2, 7):
            res = intercept(0.0, 1.234, r)
            assert res.value == float(math.factorial(r) - 1)
            assert res.error_bound == 0.0

    def test_tiny_mu_near_undeformed(self):
        alpha = ThermoPoint(120.0, 0.0, PION).alpha
        for r in range(2, 7):
            res = intercept(1e-6, alpha, r)
            want = math.factorial(r) - 1
            assert res.value == pytest.approx(want, rel=1e-4)

    def test_large_alpha_near_asymptote(self):
        res = intercept(0.1, 25.0, 2)
        assert res.value == pytest.approx(intercept_asymptotic(0.1, 2), abs=1e-4)

    def test_closed_vs_oracle(self):
        a = intercept(0.2, 1.5, 3, method="closed")
        b = intercept(0.2, 1.5, 3, method="oracle")
        assert a.value == pytest.approx(b.value, rel=1e-9)
        assert a.value == pytest.approx(2.4226690276648218, rel=1e-10)
        assert a.method == CLOSED_FORM and b.method == ORACLE

    def test_error_bounds_honest(self):
        for mu, alpha, r in [(0.05, 0.8, 2), (0.1, 1.2, 3), (0.2, 2.0, 4),
                             (0.3, 1.0, 3), (0.15, 5.0, 5)]:
            a = intercept(mu, alpha, r, method="closed")
            b = intercept(mu, alpha, r, method="oracle")
            assert abs(a.value - b.value) <= a.error_bound + b.error_bound

    def test_auto_falls_back_when_ill_conditioned(self):
        assert intercept(1e-6, 1.0, 3).method == ORACLE
        assert intercept(0.1, 1.0, 3).method == CLOSED_FORM

    def test_forced_closed_requires_admissible_mu(self):
        with pytest.raises(DomainError, match="0.5"):
            intercept(0.6, 1.0, 3, method="closed")

    def test_inadmissible_mu_uses_oracle_in_auto(self):
        res = intercept(0.6, 1.0, 3)
        assert res.method == ORACLE and math.isfinite(res.value)

    def test_pole_with_no_route(self):
        with pytest.raises(PoleError):
            intercept(0.5, 1.0, 3)

    def test_underflow_returns_asymptote(self):
        res = intercept(0.1, 800.0, 2)
        assert res.method == ASYMPTOTIC
        assert res.value == intercept_asymptotic(0.1, 2)

    def test_bad_arguments(self):
        with pytest.raises(DomainError):
            intercept(0.1, 1.0, 1)
        with pytest.raises(DomainError):
            intercept(0.1, 1.0, 2, method="magic")
        with pytest.raises(DomainError):
            intercept(0.1, -1.0, 2)


class TestAsymptotics:
    def test_printed_values(self):
        assert intercept_asymptotic(0.1, 2) == pytest.approx(1.0 / 1.2, rel=5e-15)
        want3 = 5.7 / (1.2 * 1.3)
        assert intercept_asymptotic(0.1, 3) == pytest.approx(want3, rel=5e-15)
        assert intercept_asymptotic(0.0, 4) == pytest.approx(23.0, rel=1e-15)

    def test_general_formula(self):
        mu, r = 0.17, 5
        want = (1 + mu) ** r * mu_factorial(r, mu) - 1.0
        assert intercept_asymptotic(mu, r) == want

    def test_convergence_at_high_momentum(self):
        alpha = ThermoPoint(120.0, 3000.0, PION).alpha
        for r in (2, 3):
            res = intercept(0.1, alpha, r)
            assert res.value == pytest.approx(intercept_asymptotic(0.1, r), abs=1e-6)


class TestR3:
    def test_undeformed(self):
        res = r3_function(0.0, 2.0)
        assert res.value == pytest.approx(1.0, rel=1e-15)

    def test_asymptotic_value(self):
        assert r3_asymptotic(0.1) == pytest.approx(0.7583850796225377, rel=1e-13)
        assert r3_asymptotic(0.0) == pytest.approx(1.0, rel=1e-15)

    def test_large_alpha_matches_asymptote(self):
        res = r3_function(0.1, 28.0)
        assert res.value == pytest.approx(r3_asymptotic(0.1), abs=1e-6)

    def test_oracle_assembly(self):
        closed = r3_function(0.2, 2.0)
        lam2 = intercept(0.2, 2.0, 2, method="oracle").value
        lam3 = intercept(0.2, 2.0, 3, method="oracle").value
        want = (lam3 - 3.0 * lam2) / (2.0 * lam2**1.5)
        assert closed.value == pytest.approx(want, abs=1e-8)

    def test_method_merge(self):
        assert r3_function(1e-6, 1.0).method == ORACLE
        assert r3_function(0.1, 1.0).method == CLOSED_FORM


class TestAdmissibility:
    def test_edges(self):
        assert closed_form_admissible(0.0, 5)
        assert closed_form_admissible(0.3, 1)
        assert closed_form_admissible(0.49, 3)
        assert not closed_form_admissible(0.5, 3)
        assert not closed_form_admissible(0.34, 4)

    def test_result_type_immutable(self):
        res = CorrelationResult(1.0, 0.0, CLOSED_FORM)
        with pytest.raises(AttributeError):
            res.value = 2.0
