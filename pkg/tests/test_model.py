import math

import pytest
from hypothesis import assume, given, strategies as st

from bergersphere.model import (
    BergerMetric,
    Momentum,
    ReducedMomentum,
    Regime,
    classify_regime,
    momentum_norm,
)

finite_positive = st.floats(min_value=1e-6, max_value=1e6,
                            allow_nan=False, allow_infinity=False)


class TestBergerMetric:
    def test_eta_examples(self):
        assert BergerMetric(1.0, 1.0).eta() == 0.0
        assert BergerMetric(2.0, 1.0).eta() == 1.0
        assert BergerMetric(1.0, 2.0).eta() == -0.5

    @pytest.mark.parametrize("i1,i3", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0),
                                       (1.0, -2.0), (math.nan, 1.0), (1.0, math.inf)])
    def test_rejects_bad_eigenvalues(self, i1, i3):
        with pytest.raises(ValueError):
            BergerMetric(i1, i3)

    def test_eta_above_minus_one(self):
        assert BergerMetric(1e-6, 1e6).eta() > -1.0

    @given(i1=finite_positive, i3=finite_positive,
           c=st.floats(min_value=1e-3, max_value=1e3))
    def test_eta_scale_invariant(self, i1, i3, c):
        m = BergerMetric(i1, i3)
        scaled = BergerMetric(c * i1, c * i3)
        assert scaled.eta() == pytest.approx(m.eta(), rel=1e-12, abs=1e-12)


class TestReducedMomentum:
    @pytest.mark.parametrize("pb", [-1.0, -0.5, 0.0, 0.5, 1.0])
    def test_accepts_range(self, pb):
        assert ReducedMomentum(pb).pbar3 == pb

    @pytest.mark.parametrize("pb", [-1.0000001, 1.5, 2.0, math.nan])
    def test_rejects_out_of_range(self, pb):
        with pytest.raises(ValueError):
            ReducedMomentum(pb)


class TestMomentum:
    def test_norm_and_reduced(self):
        p = Momentum(3.0, 0.0, 4.0)
        assert p.norm() == pytest.approx(5.0)
        assert p.reduced().pbar3 == pytest.approx(0.8)

    def test_reduced_rejects_zero(self):
        with pytest.raises(ValueError):
            Momentum(0.0, 0.0, 0.0).reduced()

    def test_reduced_clamps_rounding(self):
        # p3/|p| can land a few ulp past 1; reduced() must still validate
        p = Momentum(0.0, 0.0, 0.1 + 0.2)
        assert abs(p.reduced().pbar3) <= 1.0


class TestMomentumNorm:
    def test_examples(self):
        assert momentum_norm(BergerMetric(1, 1), 0.7) == pytest.approx(1.0)
        assert momentum_norm(BergerMetric(2, 1), 1.0) == pytest.approx(1.0)
        assert momentum_norm(BergerMetric(1, 2), 1.0) == pytest.approx(math.sqrt(2.0))

    @given(i1=finite_positive, i3=finite_positive,
           pb=st.floats(min_value=-1.0, max_value=1.0))
    def test_bracket(self, i1, i3, pb):
        m = BergerMetric(i1, i3)
        eta = m.eta()
        lo = math.sqrt(i1 / (1.0 + max(eta, 0.0)))
        hi = math.sqrt(i1 / (1.0 + min(eta, 0.0)))
        v = momentum_norm(m, pb)
        assert lo * (1.0 - 1e-12) <= v <= hi * (1.0 + 1e-12)

    def test_accepts_wrapped_momentum(self):
        m = BergerMetric(2.0, 1.0)
        assert momentum_norm(m, ReducedMomentum(0.5)) == momentum_norm(m, 0.5)


class TestRegime:
    @pytest.mark.parametrize("i1,i3,want", [
        (1.0, 2.0, Regime.ROUND_DOMINATED),
        (1.0, 1.0, Regime.ROUND_DOMINATED),   # first branch closed at i1 = i3
        (1.5, 1.0, Regime.MIDDLE),
        (2.0, 1.0, Regime.MIDDLE),            # second branch closed at i1 = 2*i3
        (3.0, 1.0, Regime.PROLATE),
    ])
    def test_classification(self, i1, i3, want):
        assert classify_regime(BergerMetric(i1, i3)) is want

    @given(i1=finite_positive, i3=finite_positive,
           c=st.floats(min_value=1e-3, max_value=1e3))
    def test_scale_invariant(self, i1, i3, c):
        ratio = i1 / i3
        # a ratio within an ulp of a branch boundary can flip under rescaling
        assume(abs(ratio - 1.0) > 1e-9 and abs(ratio - 2.0) > 1e-9)
        m = BergerMetric(i1, i3)
        scaled = BergerMetric(c * i1, c * i3)
        assert classify_regime(scaled) is classify_regime(m)
