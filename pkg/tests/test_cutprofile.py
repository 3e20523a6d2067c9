import json
import math

import pytest

from bergersphere.cutprofile import (
    CSV_HEADER,
    CutProfile,
    ProfileRow,
    sample_profile,
    t_cut,
    t_cut_derivative,
    tau_cut,
)
from bergersphere.errors import DomainError
from bergersphere.model import BergerMetric


class TestTauCut:
    @pytest.mark.parametrize("eta,pb", [(-0.5, 0.3), (0.0, 0.9), (-0.99, 0.0)])
    def test_pi_branch(self, eta, pb):
        assert tau_cut(eta, pb).value == math.pi

    def test_tau3_branch(self):
        assert tau_cut(1.0, 1.0).value == pytest.approx(math.pi / 2, abs=1e-11)

    def test_rejects_eta_at_or_below_minus_one(self):
        with pytest.raises(DomainError):
            tau_cut(-1.0, 0.5)

    def test_validates_pbar3_on_constant_branch(self):
        with pytest.raises(ValueError):
            tau_cut(-0.5, 1.5)


class TestTCut:
    def test_examples(self):
        assert t_cut(BergerMetric(1, 2), 0.0) == pytest.approx(2.0 * math.pi, abs=1e-12)
        assert t_cut(BergerMetric(1, 2), 1.0) == pytest.approx(2.0 * math.pi * math.sqrt(0.5),
                                                               abs=1e-12)
        assert t_cut(BergerMetric(2, 1), 1.0) == pytest.approx(2.0 * math.pi, abs=1e-10)
        # at the interior maximum the cut time equals the prolate diameter
        assert t_cut(BergerMetric(3, 1), 0.5) == pytest.approx(math.pi * math.sqrt(3.0) *
                                                               math.sqrt(1.5), abs=1e-10)

    @pytest.mark.parametrize("i1,i3", [(0.5, 1.0), (2.0, 1.0), (3.0, 1.0)])
    def test_evenness(self, i1, i3):
        m = BergerMetric(i1, i3)
        for pb in (0.2, 0.5, 0.8, 1.0):
            assert t_cut(m, pb) == t_cut(m, -pb)

    def test_pole_value_for_positive_eta(self):
        # t_cut(+-1) = 2*pi*sqrt(i3) whenever eta > 0
        for i1, i3 in ((1.5, 1.0), (3.0, 1.0), (10.0, 1.0)):
            assert t_cut(BergerMetric(i1, i3), 1.0) == pytest.approx(
                2.0 * math.pi * math.sqrt(i3), abs=1e-9)

    def test_minimum_at_zero_for_positive_eta(self):
        m = BergerMetric(3.0, 1.0)
        center = t_cut(m, 0.0)
        for k in range(1, 11):
            assert center <= t_cut(m, 0.01 * k)

    def test_branch_continuity_in_eta(self):
        for k in range(50):
            pb = -1.0 + 2.0 * k / 49
            below = t_cut(BergerMetric(1.0, 1.0 / (1.0 - 1e-6)), pb)
            above = t_cut(BergerMetric(1.0, 1.0 / (1.0 + 1e-6)), pb)
            assert abs(above - below) < 1e-3


class TestTCutDerivative:
    def test_sign_pattern_eta_above_one(self):
        m = BergerMetric(3.0, 1.0)  # eta = 2
        assert t_cut_derivative(m, 0.1) > 0.0
        assert t_cut_derivative(m, 0.4) > 0.0
        assert t_cut_derivative(m, 0.6) < 0.0
        assert t_cut_derivative(m, 0.9) < 0.0
        assert t_cut_derivative(m, 1.0) < 0.0

    def test_positive_up_to_pole_for_small_eta(self):
        m = BergerMetric(1.5, 1.0)  # eta = 0.5
        for pb in (0.1, 0.5, 0.9):
            assert t_cut_derivative(m, pb) > 0.0

    def test_matches_finite_differences(self):
        m = BergerMetric(2.0, 1.0)
        h = 1e-6
        fd = (t_cut(m, 0.5 + h) - t_cut(m, 0.5 - h)) / (2.0 * h)
        assert t_cut_derivative(m, 0.5) == pytest.approx(fd, rel=1e-5)

    def test_odd(self):
        m = BergerMetric(3.0, 1.0)
        assert t_cut_derivative(m, -0.3) == pytest.approx(-t_cut_derivative(m, 0.3))

    def test_rejects_zero_and_nonpositive_eta(self):
        with pytest.raises(DomainError):
            t_cut_derivative(BergerMetric(3.0, 1.0), 0.0)
        with pytest.raises(DomainError):
            t_cut_derivative(BergerMetric(1.0, 2.0), 0.5)


class TestSampleProfile:
    def test_round_case_flat(self):
        profile = sample_profile(BergerMetric(1.0, 1.0), 5)
        assert [r.pbar3 for r in profile.rows] == [-1.0, -0.5, 0.0, 0.5, 1.0]
        for r in profile.rows:
            assert r.t_cut == pytest.approx(2.0 * math.pi, abs=1e-12)
            assert r.tau3 is None and r.tau_conj is None and r.dt_cut is None

    def test_prolate_max_row_at_inverse_eta(self):
        profile = sample_profile(BergerMetric(3.0, 1.0), 201)
        best = max(profile.rows, key=lambda r: r.t_cut)
        assert abs(best.pbar3) == pytest.approx(0.5, abs=0.01)

    def test_middle_max_row_at_pole(self):
        profile = sample_profile(BergerMetric(2.0, 1.0), 201)
        best = max(profile.rows, key=lambda r: r.t_cut)
        assert abs(best.pbar3) == 1.0

    def test_positive_eta_columns(self):
        profile = sample_profile(BergerMetric(2.0, 1.0), 5)
        for r in profile.rows:
            assert r.tau3 is not None and r.tau_conj is not None
            assert (r.dt_cut is None) == (r.pbar3 == 0.0)

    def test_grid_is_exact(self):
        profile = sample_profile(BergerMetric(1.0, 2.0), 9)
        assert profile.rows[0].pbar3 == -1.0
        assert profile.rows[4].pbar3 == 0.0
        assert profile.rows[-1].pbar3 == 1.0

    @pytest.mark.parametrize("n", [2, 1, 0, -3, 2.5])
    def test_rejects_bad_n(self, n):
        with pytest.raises(ValueError):
            sample_profile(BergerMetric(1.0, 1.0), n)


class TestCutProfileSerialization:
    def test_csv_header_and_shape(self):
        text = sample_profile(BergerMetric(3.0, 1.0), 11).to_csv()
        lines = text.splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 12
        assert all(line.count(",") == 4 for line in lines)

    def test_csv_empty_cells_for_absent_columns(self):
        text = sample_profile(BergerMetric(1.0, 2.0), 3).to_csv()
        row = text.splitlines()[1].split(",")
        assert row[1] == "" and row[2] == "" and row[4] == ""
        assert row[3] != ""

    def test_csv_deterministic(self):
        m = BergerMetric(1.7, 1.0)
        assert sample_profile(m, 21).to_csv() == sample_profile(m, 21).to_csv()

    def test_json_shape(self):
        parsed = json.loads(sample_profile(BergerMetric(2.0, 1.0), 3).to_json())
        assert parsed["metric"] == {"i1": 2.0, "i3": 1.0, "eta": 1.0}
        assert len(parsed["rows"]) == 3
        assert set(parsed["rows"][0]) == {"pbar3", "tau3", "tau_conj", "t_cut", "dt_cut"}
        assert parsed["rows"][1]["dt_cut"] is None  # the pbar3 = 0 row

    def test_rows_validated(self):
        m = BergerMetric(1.0, 1.0)
        good = ProfileRow(-1.0, None, None, 2.0 * math.pi, None)
        with pytest.raises(ValueError):
            CutProfile(metric=m, rows=(good,))  # does not cover [-1, 1]
        with pytest.raises(ValueError):
            CutProfile(metric=m, rows=(good, ProfileRow(1.0, None, None, 100.0, None)))
