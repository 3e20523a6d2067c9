import math

import pytest
from hypothesis import given, settings, strategies as st

from bergersphere.errors import DomainError, NoRootFound, SingularDenominator
from bergersphere.roots import Tau, find_first_root, tau3, tau3_derivative, tau_conj

# spot values frozen from a 40-digit bisection oracle
TAU_CONJ_1_0 = 2.02875783811043422357697112473490345673
TAU_CONJ_HALF_HALF = 2.455643862879440304037105346314124354
TAU3_1_TINY = 2.028757833559380532526140452   # eta=1, pbar3=1e-4
TAU3_1_HALF = 1.910633236249018556327714205   # eta=1, pbar3=0.5

ETA_GRID = (0.1, 0.5, 1.0, 2.0, 5.0, 20.0)

eta_strategy = st.floats(min_value=0.05, max_value=50.0,
                         allow_nan=False, allow_infinity=False)


class TestTau:
    def test_accepts_range(self):
        assert Tau(math.pi).value == math.pi
        assert Tau(1e-9).value == 1e-9

    @pytest.mark.parametrize("v", [0.0, -1.0, math.pi + 1e-9, math.nan])
    def test_rejects_out_of_range(self, v):
        with pytest.raises(ValueError):
            Tau(v)


class TestFindFirstRoot:
    def test_sine(self):
        root = find_first_root(math.sin, 0.1, 4.0, scan_step=0.01, tol=1e-13)
        assert root.value == pytest.approx(math.pi, abs=1e-12)

    def test_cosine(self):
        root = find_first_root(math.cos, 0.0, 2.0, scan_step=0.01, tol=1e-13)
        assert root.value == pytest.approx(math.pi / 2, abs=1e-12)

    def test_no_root(self):
        with pytest.raises(NoRootFound):
            find_first_root(lambda t: t - 2.5, 0.0, 2.0, scan_step=0.01)

    def test_returns_first_of_several(self):
        root = find_first_root(lambda t: math.sin(3.0 * t), 0.1, 3.0, scan_step=0.01)
        assert root.value == pytest.approx(math.pi / 3, abs=1e-12)


class TestTau3:
    def test_pole_values(self):
        # at pbar3 = 1 the equation collapses to sin((1+eta)*tau)
        assert tau3(1.0, 1.0).value == pytest.approx(math.pi / 2, abs=1e-11)
        assert tau3(0.5, 1.0).value == pytest.approx(2.0 * math.pi / 3, abs=1e-11)

    @pytest.mark.parametrize("eta", [1.5, 2.0, 3.0, 5.0, 20.0])
    def test_critical_point_value(self, eta):
        assert tau3(eta, 1.0 / eta).value == pytest.approx(math.pi / 2, abs=1e-11)

    def test_zero_delegates_to_tau_conj(self):
        assert tau3(1.0, 0.0).value == tau_conj(1.0, 0.0).value
        assert tau3(1.0, 0.0).value == pytest.approx(TAU_CONJ_1_0, abs=1e-11)

    def test_small_pbar3_limit(self):
        assert tau3(1.0, 1e-4).value == pytest.approx(TAU3_1_TINY, abs=1e-11)
        for eta in ETA_GRID:
            assert abs(tau3(eta, 1e-4).value - tau_conj(eta, 0.0).value) < 1e-3

    def test_frozen_interior_value(self):
        assert tau3(1.0, 0.5).value == pytest.approx(TAU3_1_HALF, abs=1e-11)

    @pytest.mark.parametrize("eta", [0.0, -0.5, -1.0])
    def test_rejects_nonpositive_eta(self, eta):
        with pytest.raises(DomainError):
            tau3(eta, 0.5)

    @given(eta=eta_strategy, pb=st.floats(min_value=0.0, max_value=1.0))
    @settings(max_examples=60)
    def test_evenness(self, eta, pb):
        assert tau3(eta, pb).value == tau3(eta, -pb).value

    @pytest.mark.parametrize("eta", ETA_GRID)
    def test_strictly_decreasing(self, eta):
        grid = [k / 200 for k in range(201)]
        values = [tau3(eta, pb).value for pb in grid]
        assert all(b < a for a, b in zip(values, values[1:]))

    @pytest.mark.parametrize("eta", ETA_GRID)
    def test_residual_of_defining_equation(self, eta):
        for k in range(1, 101):
            pb = k / 100
            t = tau3(eta, pb).value
            res = math.cos(t) * math.sin(t * eta * pb) + pb * math.sin(t) * math.cos(t * eta * pb)
            assert abs(res) < 1e-11

    def test_result_in_tau_range(self):
        for eta in ETA_GRID:
            for pb in (0.0, 0.3, 1.0):
                assert 0.0 < tau3(eta, pb).value <= math.pi


class TestTauConj:
    def test_frozen_values(self):
        assert tau_conj(1.0, 0.0).value == pytest.approx(TAU_CONJ_1_0, abs=1e-11)
        assert tau_conj(0.5, 0.5).value == pytest.approx(TAU_CONJ_HALF_HALF, abs=1e-11)

    @pytest.mark.parametrize("eta", [0.5, 1.0, 2.0])
    def test_exactly_pi_at_pole(self, eta):
        # c = 0 at pbar3 = +-1; the branch is exact, not a bisection result
        assert tau_conj(eta, 1.0).value == math.pi
        assert tau_conj(eta, -1.0).value == math.pi

    @given(eta=eta_strategy, pb=st.floats(min_value=-1.0, max_value=1.0))
    @settings(max_examples=60)
    def test_range(self, eta, pb):
        v = tau_conj(eta, pb).value
        assert math.pi / 2 < v <= math.pi

    @pytest.mark.parametrize("eta", ETA_GRID)
    def test_separation_from_tau3(self, eta):
        for k in range(1, 101):
            pb = k / 100
            assert tau3(eta, pb).value < tau_conj(eta, pb).value

    def test_rejects_nonpositive_eta(self):
        with pytest.raises(DomainError):
            tau_conj(-0.2, 0.5)


class TestTau3Derivative:
    def test_value_at_both_poles(self):
        # at (eta=1, pbar3=1): numerator -pi/2, denominator -2
        assert tau3_derivative(1.0, 1.0) == pytest.approx(-math.pi / 4, abs=1e-11)
        assert tau3_derivative(1.0, -1.0) == pytest.approx(math.pi / 4, abs=1e-11)

    def test_odd_symmetry(self):
        assert tau3_derivative(2.0, -0.5) == pytest.approx(-tau3_derivative(2.0, 0.5))

    @pytest.mark.parametrize("eta", [0.5, 1.0, 2.0, 5.0])
    def test_matches_finite_differences(self, eta):
        h = 1e-6
        for k in range(5, 100, 7):
            pb = k / 100
            fd = (tau3(eta, pb + h).value - tau3(eta, pb - h).value) / (2.0 * h)
            assert tau3_derivative(eta, pb) == pytest.approx(fd, rel=1e-5)

    def test_rejects_zero_pbar3(self):
        with pytest.raises(DomainError):
            tau3_derivative(1.0, 0.0)

    def test_rejects_nonpositive_eta(self):
        with pytest.raises(DomainError):
            tau3_derivative(0.0, 0.5)

    def test_negative_on_interior(self):
        for eta in ETA_GRID:
            for pb in (0.1, 0.5, 0.9):
                assert tau3_derivative(eta, pb) < 0.0
