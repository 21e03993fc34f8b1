import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from homgadget import gf2
from homgadget.singleshot import (SoundnessParams, metacheck_repair, reduced_weight_upper, single_shot_prepare,
                                  soundness_probe, syndrome_error_sweep)

from oracles import min_weight_solution


def test_zero_observation_needs_no_repair(code4d):
    r = code4d.MX.shape[1]
    assert not metacheck_repair(code4d.MX, np.zeros(r, np.uint8)).any()


def test_single_flip_repair_matches_oracle(code4d):
    M = code4d.MX
    for j in (0, 17, M.shape[1] - 1):
        s = np.zeros(M.shape[1], np.uint8)
        s[j] = 1
        got = metacheck_repair(M, s, all_minimum=True)
        want = min_weight_solution(M, gf2.matmul(M, s), 2)
        assert sorted(map(tuple, got)) == sorted(map(tuple, want))
        assert all(v.sum() == 1 for v in got)


def test_repair_returns_none_past_the_cap():
    M = np.array([[1, 1, 1, 0], [0, 1, 1, 1]], np.uint8)
    assert metacheck_repair(M, np.array([1, 0, 0, 0]), cap=0) is None
    assert metacheck_repair(M, np.array([1, 0, 0, 0]), cap=1).tolist() == [1, 0, 0, 0]
    with pytest.raises(ValueError):
        metacheck_repair(M, np.zeros(3, np.uint8))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_reduced_weight_matches_oracle(seed):
    rng = np.random.default_rng(seed)
    H = rng.integers(0, 2, size=(int(rng.integers(2, 6)), int(rng.integers(3, 9)))).astype(np.uint8)
    e = rng.integers(0, 2, size=H.shape[1]).astype(np.uint8)
    hits = min_weight_solution(H, gf2.matmul(H, e), 3)
    want = int(hits[0].sum()) if hits else None
    assert reduced_weight_upper(H, e, 3) == want


def test_clean_syndrome_gives_perfect_trace(code4d):
    n, r = code4d.n, code4d.HX.shape[0]
    E0 = np.zeros(n, np.uint8)
    E0[5] = 1
    tr = single_shot_prepare(code4d, E0, np.zeros(r, np.uint8))
    assert tr.outcome == "repaired" and not tr.s_r.any()
    assert reduced_weight_upper(code4d.HX, tr.E, 0) == 0


def test_bad_repair_is_a_logical_failure(code4d):
    n, r = code4d.n, code4d.HX.shape[0]
    s_e = np.zeros(r, np.uint8)
    s_e[0] = 1
    tr = single_shot_prepare(code4d, np.zeros(n, np.uint8), s_e, repair=np.zeros(r, np.uint8))
    assert tr.outcome == "logical-failure" and tr.E is None
    assert tr.to_json_obj()["s_e"] == [0]


def test_unrepairable_trace(code4d):
    n, r = code4d.n, code4d.HX.shape[0]
    s_e = np.zeros(r, np.uint8)
    s_e[0] = 1
    assert single_shot_prepare(code4d, np.zeros(n, np.uint8), s_e, cap=0).outcome == "unrepairable"


def test_probe_weight_zero_is_vacuous(code4d):
    rep = soundness_probe(code4d, 0)
    assert rep["checked"] == 0 and rep["violations"] == [] and not rep["informational"]


def test_probe_on_4d_code_weight_one(code4d):
    rep = soundness_probe(code4d, 1)
    assert rep["checked"] == 96 and rep["violations"] == []


def test_probe_on_3d_code_is_informational(code3d):
    assert soundness_probe(code3d, 1, basis="Z")["informational"]


def test_codes_without_metachecks_are_refused(surface13):
    with pytest.raises(ValueError):
        soundness_probe(surface13, 1)
    with pytest.raises(ValueError):
        soundness_probe(surface13, 1, basis="Y")


def test_soundness_params():
    p = SoundnessParams(t=4)
    assert p.q == 2 and p.to_json_obj()["d_ss"] == "inf"
    assert SoundnessParams(t=4, d_ss=2).q == 1
    with pytest.raises(ValueError):
        SoundnessParams(t=3, f=lambda x: x + 1)
    with pytest.raises(ValueError):
        SoundnessParams(t=3, f=lambda x: -x)


@pytest.mark.parametrize("basis", ["Z", "X"])
def test_sweep_on_4d_code(code4d, basis):
    rep = syndrome_error_sweep(code4d, 1, basis=basis)
    assert rep["failures"] == 0
    assert rep["traces"] > code4d.HX.shape[0]
    assert rep["max_residual_reduced_weight"] <= 1
