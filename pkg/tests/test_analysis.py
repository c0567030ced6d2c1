"""Thresholds, regions, rankings, and sweeps."""

import numpy as np
import pytest

from tricorr.analysis import (
    RegionLabel,
    SweepSpec,
    classify_region,
    evaluate_report,
    find_threshold,
    run_sweep,
    scenario_ranking,
)
from tricorr.errors import DomainError
from tricorr.loss import LossConfig, Scenario
from tricorr.measures import MeasureId, parse_measure_id


def steering_id(s, direction):
    if direction == "k->ij":
        return MeasureId("S", ("c",), ("a", "b"), s)
    return MeasureId("S", ("a", "b"), ("c",), s)


class TestThresholds:
    @pytest.mark.parametrize("lam", [0.3, 0.5, 0.8])
    def test_scenario1_both_directions_half(self, lam):
        for d in ("ij->k", "k->ij"):
            res = find_threshold(steering_id(1, d), lam)
            assert res.T_star == pytest.approx(0.5, abs=1e-6)

    def test_scenario2_no_threshold(self):
        for d in ("ij->k", "k->ij"):
            res = find_threshold(steering_id(2, d), 0.5)
            assert res.T_star is None and res.present_everywhere

    def test_scenario3_split(self):
        assert find_threshold(steering_id(3, "ij->k"), 0.5).T_star == pytest.approx(0.5, abs=1e-6)
        res = find_threshold(steering_id(3, "k->ij"), 0.5)
        assert res.T_star is None and res.present_everywhere

    def test_scenario5_constants(self):
        assert find_threshold(steering_id(5, "ij->k"), 0.4).T_star == pytest.approx(0.75, abs=1e-6)
        assert find_threshold(steering_id(5, "k->ij"), 0.4).T_star == pytest.approx(0.6, abs=1e-6)

    def test_scenario4_directions(self):
        assert find_threshold(steering_id(4, "k->ij"), 0.5).T_star == pytest.approx(0.5, abs=1e-6)
        # pair -> single approaches 2/3 only as lambda -> 0
        res = find_threshold(steering_id(4, "ij->k"), 0.01)
        assert res.T_star == pytest.approx(2 / 3, abs=1e-5)
        res = find_threshold(steering_id(4, "ij->k"), 0.8)
        assert res.T_star < 2 / 3 - 1e-3

    def test_requires_scenario(self):
        with pytest.raises(DomainError):
            find_threshold(MeasureId("S", ("c",), ("a", "b")), 0.5)

    def test_numeric_fallback_for_unreliable_form(self):
        # scenario-2 1-vs-2 entanglement has no trusted closed form; the
        # bisection falls back to the eigenvalue margin and still resolves
        res = find_threshold(MeasureId("E", ("c",), ("a", "b"), 2), 0.5)
        assert res.T_star is None and res.present_everywhere


class TestRegions:
    def test_ideal_is_region_one(self):
        for s in (1, 3, 5):
            assert classify_region(0.5, Scenario(s, 1.0)) is RegionLabel.I

    def test_scenario5_moderate_loss_is_region_two(self):
        assert classify_region(0.5, Scenario(5, 0.5)) is RegionLabel.II

    def test_zero_squeezing_is_separable(self):
        assert classify_region(0.0, Scenario(5, 0.5)) is RegionLabel.SEPARABLE

    def test_labels_monotone_as_loss_grows(self):
        ranks = [
            classify_region(0.5, Scenario(5, T)).rank
            for T in np.round(np.arange(1.0, -0.001, -0.02), 10)
        ]
        assert all(b >= a for a, b in zip(ranks, ranks[1:]))


class TestRankings:
    def test_stated_orders(self):
        assert scenario_ranking(0.3, 0.7, "entanglement") == (2, 3, 1, 4, 5)
        assert scenario_ranking(0.3, 0.8, "steering") == (2, 3, 1, 4, 5)

    def test_tie_at_no_loss(self):
        assert scenario_ranking(0.5, 1.0, "entanglement") == (1, 2, 3, 4, 5)

    def test_bad_kind(self):
        with pytest.raises(DomainError):
            scenario_ranking(0.5, 0.5, "negativity")


class TestSweeps:
    def test_lambda_sweep_monotone(self):
        mids = (parse_measure_id("E:pair"), parse_measure_id("E:1v2"))
        res = run_sweep(SweepSpec("lambda", 0.0, 0.95, 0.05, 1.0, None, mids))
        pair = [r["E:a|b"] for r in res.rows]
        tri = [r["E:c|ab"] for r in res.rows]
        assert all(b >= a for a, b in zip(pair, pair[1:]))
        assert all(b >= a for a, b in zip(tri, tri[1:]))
        assert all(t >= p for p, t in zip(pair, tri))
        assert res.mismatch_count == 0

    def test_t_sweep_thresholds_respected(self):
        mids = (
            MeasureId("S", ("c",), ("a", "b"), 5),
            MeasureId("S", ("a", "b"), ("c",), 5),
        )
        res = run_sweep(SweepSpec("T", 0.0, 1.0, 0.05, 0.5, 5, mids))
        for r in res.rows:
            if r["T"] < 0.6:
                assert r["S:c->ab@s5"] == 0.0
            if r["T"] < 0.75:
                assert r["S:ab->c@s5"] == 0.0

    def test_t_sweep_carries_reflectivity(self):
        res = run_sweep(SweepSpec("T", 0.0, 1.0, 0.25, 0.5, 1, ()))
        assert res.columns[:2] == ("T", "reflectivity")
        assert [r["reflectivity"] for r in res.rows] == [1.0, 0.75, 0.5, 0.25, 0.0]

    def test_empty_measure_list(self):
        res = run_sweep(SweepSpec("T", 0.0, 1.0, 0.5, 0.5, 1, ()))
        assert len(res.rows) == 3
        assert res.mismatch_count == 0

    def test_spec_validation(self):
        with pytest.raises(DomainError):
            SweepSpec("x", 0, 1, 0.1, 0.5)
        with pytest.raises(DomainError):
            SweepSpec("T", 0, 1, -0.1, 0.5, 1)
        with pytest.raises(DomainError):
            SweepSpec("T", 0, 1, 0.1, 0.5)  # T sweep needs a scenario


class TestReports:
    def test_report_flags_regions_and_refs(self):
        rep = evaluate_report(0.5, Scenario(1, 0.4))
        assert rep.region == "II"
        assert rep.measures["S:c->ab@s1"] == 0.0
        assert rep.measures["S:ab->c@s1"] == 0.0
        assert rep.closed_forms["E:c|ab@s1"] is not None
        assert rep.closed_forms["E:a|bc@s1"] is None  # no catalogued form

    def test_custom_loss_config(self):
        rep = evaluate_report(0.5, loss=LossConfig((0.9, 0.8, 0.7)))
        assert rep.loss.transmissivities == (0.9, 0.8, 0.7)
        assert all(v >= 0 for v in rep.measures.values())
