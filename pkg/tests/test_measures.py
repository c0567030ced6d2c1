"""Measure identifiers, numeric quantifiers, and the closed-form catalogue."""

import math

import numpy as np
import pytest

from tricorr.errors import UnsupportedFormulaError
from tricorr.loss import Scenario, apply_loss, scenario_config
from tricorr.measures import (
    CORRECTED,
    UNRELIABLE,
    VERIFIED,
    MeasureId,
    default_measures,
    formula_status,
    gaussian_steering,
    ideal_pair_entanglement,
    log_negativity,
    monogamy_residuals,
    pair_conditional_eigenvalue,
    parse_measure_id,
    printed_formula,
    reference_formula,
)
from tricorr.symplectic import ModePartition
from tricorr.tritter import ideal_output_cm


def lossy(lam, s, T):
    return apply_loss(ideal_output_cm(lam), scenario_config(Scenario(s, T)))


class TestMeasureId:
    def test_parse_aliases(self):
        assert str(parse_measure_id("E:pair")) == "E:a|b"
        assert str(parse_measure_id("E:1v2")) == "E:c|ab"
        assert str(parse_measure_id("S:k->ij")) == "S:c->ab"
        assert str(parse_measure_id("S:ij->k")) == "S:ab->c"

    def test_parse_scenario_qualifier(self):
        mid = parse_measure_id("S:c->ab@s3")
        assert mid.scenario == 3
        assert str(mid) == "S:c->ab@s3"

    def test_entanglement_split_is_unordered(self):
        assert MeasureId("E", ("b", "a"), ("c",)) == MeasureId("E", ("c",), ("a", "b"))

    def test_steering_is_ordered(self):
        assert MeasureId("S", ("c",), ("a", "b")) != MeasureId("S", ("a", "b"), ("c",))

    def test_rejects_garbage(self):
        for bad in ("X:a|b", "E:a->b", "S:a|b", "E:a|a", "E:d|b", "S:c->ab@s9", ""):
            with pytest.raises(ValueError):
                parse_measure_id(bad)

    def test_default_measure_count(self):
        mids = default_measures()
        assert len(mids) == 18  # 3 + 3 entanglement, 6 + 6 steering
        assert len(set(map(str, mids))) == 18


class TestNumericPipeline:
    def test_pair_negativity_positive_for_squeezed_input(self):
        V = ideal_output_cm(0.5)
        e = log_negativity(V, ModePartition((0,), (1,)))
        assert e == pytest.approx(ideal_pair_entanglement(0.5), abs=1e-12)

    def test_vacuum_has_no_correlations(self):
        V = ideal_output_cm(0.0)
        for mid in default_measures():
            fn = gaussian_steering if mid.is_steering else log_negativity
            assert fn(V, mid.partition) == 0.0

    def test_pairwise_steering_is_zero(self):
        V = ideal_output_cm(0.7)
        for i in range(3):
            for j in range(3):
                if i != j:
                    assert gaussian_steering(V, ModePartition((i,), (j,))) == 0.0

    def test_collective_steering_is_symmetric_when_ideal(self):
        V = ideal_output_cm(0.6)
        fwd = gaussian_steering(V, ModePartition((2,), (0, 1)))
        bwd = gaussian_steering(V, ModePartition((0, 1), (2,)))
        assert fwd == pytest.approx(bwd, abs=1e-12)

    def test_monogamy_residuals_nonnegative(self):
        V = lossy(0.6, 5, 0.8)
        for k in "abc":
            r1, r2 = monogamy_residuals(V, k)
            assert r1 >= -1e-12 and r2 >= -1e-12


class TestCatalogue:
    def test_statuses(self):
        assert formula_status(MeasureId("E", ("a",), ("b",), 1)) == VERIFIED
        assert formula_status(MeasureId("E", ("a",), ("b",), 3)) == CORRECTED
        assert formula_status(MeasureId("E", ("c",), ("a", "b"), 2)) == UNRELIABLE
        assert formula_status(MeasureId("E", ("c",), ("a", "b"), 4)) == UNRELIABLE
        assert formula_status(MeasureId("S", ("a",), ("b",), 5)) == CORRECTED
        assert formula_status(MeasureId("S", ("c",), ("a", "b"), 4)) == CORRECTED
        assert formula_status(MeasureId("S", ("a", "b"), ("c",), 4)) == VERIFIED

    def test_unreliable_forms_raise(self):
        with pytest.raises(UnsupportedFormulaError):
            reference_formula(MeasureId("E", ("c",), ("a", "b"), 2), 0.5, 0.7)

    def test_no_form_for_non_c_splits_under_loss(self):
        with pytest.raises(UnsupportedFormulaError):
            reference_formula(MeasureId("E", ("a",), ("b", "c"), 1), 0.5, 0.7)

    @pytest.mark.parametrize("s", [1, 2, 3, 4, 5])
    def test_steering_forms_match_pipeline(self, s):
        lam, T = 0.6, 0.85
        V = lossy(lam, s, T)
        for mid in (MeasureId("S", ("c",), ("a", "b"), s), MeasureId("S", ("a", "b"), ("c",), s)):
            num = gaussian_steering(V, mid.partition)
            assert reference_formula(mid, lam, T).clamped == pytest.approx(num, abs=1e-9)

    @pytest.mark.parametrize("s", [1, 3, 5])
    def test_tri_entanglement_forms_match_pipeline(self, s):
        lam, T = 0.4, 0.55
        V = lossy(lam, s, T)
        mid = MeasureId("E", ("c",), ("a", "b"), s)
        num = log_negativity(V, mid.partition)
        assert reference_formula(mid, lam, T).clamped == pytest.approx(num, abs=1e-9)

    def test_pair_forms_cover_all_pairs(self):
        lam, T = 0.5, 0.6
        for s in (1, 2, 3, 4, 5):
            V = lossy(lam, s, T)
            for pair in (("a", "b"), ("a", "c"), ("b", "c")):
                mid = MeasureId("E", (pair[0],), (pair[1],), s)
                num = log_negativity(V, mid.partition)
                assert reference_formula(mid, lam, T).clamped == pytest.approx(num, abs=1e-9)

    def test_pair_conditional_eigenvalue_never_below_half(self):
        for lam in (0.1, 0.5, 0.9):
            for ti in (0.0, 0.3, 1.0):
                for tj in (0.0, 0.7, 1.0):
                    assert pair_conditional_eigenvalue(lam, ti, tj) >= 0.5 - 1e-12

    def test_lossless_limits_recover_ideal_forms(self):
        lam = 0.45
        for s in (1, 2, 3, 4, 5):
            mid = MeasureId("S", ("c",), ("a", "b"), s)
            ideal = reference_formula(MeasureId("S", ("c",), ("a", "b")), lam)
            assert reference_formula(mid, lam, 1.0).value == pytest.approx(ideal.value, abs=1e-12)

    def test_printed_errata_disagree_with_pipeline(self):
        # the as-published 1-vs-2 entanglement forms for scenarios 2 and 4
        # deviate from the numeric value by far more than the 1e-9 gate
        lam, T = 0.5, 0.5
        for s in (2, 4):
            mid = MeasureId("E", ("c",), ("a", "b"), s)
            num = log_negativity(lossy(lam, s, T), mid.partition)
            fv = printed_formula(mid, lam, T)
            assert fv.domain_ok
            assert abs(fv.clamped - num) > 1e-3

    def test_preclamp_values_go_negative_below_threshold(self):
        mid = MeasureId("S", ("a", "b"), ("c",), 1)
        fv = reference_formula(mid, 0.5, 0.3)  # below the T = 0.5 threshold
        assert fv.value < 0
        assert fv.clamped == 0.0
