"""Pure-loss channel and scenario configuration checks."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tricorr.errors import DomainError
from tricorr.loss import LossConfig, Scenario, apply_loss, scenario_config
from tricorr.symplectic import is_physical
from tricorr.tritter import ideal_output_cm


def test_scenario_configs():
    assert scenario_config(Scenario(1, 0.3)).transmissivities == (1.0, 1.0, 0.3)
    assert scenario_config(Scenario(2, 0.3)).transmissivities == (0.3, 1.0, 1.0)
    assert scenario_config(Scenario(3, 0.3)).transmissivities == (0.3, 0.3, 1.0)
    assert scenario_config(Scenario(4, 0.3)).transmissivities == (0.3, 1.0, 0.3)
    assert scenario_config(Scenario(5, 0.3)).transmissivities == (0.3, 0.3, 0.3)


def test_scenario_roles_are_configurable():
    cfg = scenario_config(Scenario(1, 0.4, single_mode="a"))
    assert cfg.transmissivities == (0.4, 1.0, 1.0)
    cfg = scenario_config(Scenario(2, 0.4, lossy_pair_member="b"))
    assert cfg.transmissivities == (1.0, 0.4, 1.0)


def test_scenario_validation():
    with pytest.raises(DomainError):
        Scenario(6, 0.5)
    with pytest.raises(DomainError):
        Scenario(1, 1.5)
    with pytest.raises(DomainError):
        Scenario(2, 0.5, single_mode="a", lossy_pair_member="a")
    with pytest.raises(DomainError):
        LossConfig((0.5, -0.1, 1.0))


def test_full_loss_gives_vacuum():
    V = apply_loss(ideal_output_cm(0.8), LossConfig.uniform(0.0))
    assert np.allclose(V, np.eye(6) / 2, atol=1e-14)


def test_no_loss_is_identity():
    V = ideal_output_cm(0.6)
    assert np.allclose(apply_loss(V, LossConfig.lossless()), V)


@settings(max_examples=25, deadline=None)
@given(
    lam=st.floats(0.0, 0.95),
    t1=st.floats(0.0, 1.0),
    t2=st.floats(0.0, 1.0),
)
def test_loss_composes_multiplicatively(lam, t1, t2):
    V = ideal_output_cm(lam)
    once = apply_loss(V, LossConfig.uniform(t1 * t2))
    twice = apply_loss(apply_loss(V, LossConfig.uniform(t1)), LossConfig.uniform(t2))
    assert np.abs(once - twice).max() <= 1e-12


@settings(max_examples=25, deadline=None)
@given(
    lam=st.floats(0.0, 0.95),
    ts=st.tuples(st.floats(0.0, 1.0), st.floats(0.0, 1.0), st.floats(0.0, 1.0)),
)
def test_loss_preserves_physicality(lam, ts):
    V = apply_loss(ideal_output_cm(lam), LossConfig(ts))
    assert is_physical(V)


def test_mode_count_mismatch():
    with pytest.raises(DomainError):
        apply_loss(np.eye(4) / 2, LossConfig.uniform(0.5))
