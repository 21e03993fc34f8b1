import json

import pytest

from homgadget.schedule import (GadgetSchedule, GadgetStep, cnot_step, cycle_count, gppm_step, makespan,
                                measure_step, prep_step, serial_cycles)


def _logical(d=4):
    return GadgetSchedule({"D": (3, 3), "A": (3, 3)}, level="logical", d=d, data_blocks=("D",))


def test_preparation_costs_d_and_gppm_carries_offline_lead():
    s = _logical(4)
    s.add(GadgetStep("LPrep", ("A",), cycles=4, params={"basis": "X"}))
    s.add(gppm_step(("A",), "Z", [[0]], [[0]], 4))
    # GPPM lead d+2 = 6 dominates the prep end (4): busy 6..7, tail to 8
    assert makespan(s) == 8
    assert serial_cycles(s) == 4 + (6 + 1 + 1)
    assert cycle_count(s) == (8, 2)


def test_sequential_gppms_pipeline_behind_one_lead():
    s = _logical(4)
    s.add(GadgetStep("LPrep", ("A",), cycles=4, params={"basis": "X"}))
    for _ in range(4):
        s.add(gppm_step(("A",), "Z", [[0]], [[0]], 4))
    assert makespan(s) == 11
    assert s.logical_cycles == 3


def test_program_order_is_per_block():
    s = _logical(1)
    s.add(GadgetStep("TCNOT", ("D", "A")))
    s.add(GadgetStep("HSwap", ("D",)))
    s.add(GadgetStep("CZS", ("A",)))
    # HSwap and CZS run in parallel after the TCNOT
    assert makespan(s) == 2
    assert serial_cycles(s) == 3


def test_empty_schedule_costs_nothing():
    assert cycle_count(_logical()) == (0, 0)


def test_add_checks_level_and_blocks():
    s = _logical()
    with pytest.raises(ValueError):
        s.add(measure_step("D", "Z"))
    with pytest.raises(KeyError):
        s.add(GadgetStep("HSwap", ("nope",)))
    with pytest.raises(ValueError):
        GadgetStep("Teleport", ("D",))


def test_physical_step_constructors():
    assert prep_step("a", "X", 5).kind == "PrepX" and prep_step("a", "Z", 5).cycles == 5
    assert measure_step("a", "X").kind == "MeasureX"
    st = cnot_step("c", "t", [(0, 1), (2, 3)], mask=[(1, 1)])
    assert st.params["pairs"].shape == (2, 2) and st.mask == ((1, 1),)


def test_jsonl_export_has_one_line_per_step_and_a_summary():
    s = _logical(2)
    s.add(GadgetStep("LPrep", ("A",), cycles=2, params={"basis": "X"}))
    s.add(gppm_step(("A", "D"), "X", [[0, 1]], [[2]], 2))
    lines = [json.loads(x) for x in s.to_jsonl().splitlines()]
    assert [x.get("op") for x in lines[:2]] == ["LPrep", "GPPM"]
    assert lines[1]["blocks"] == ["A", "D"] and lines[1]["cycles"] == 4 + 1 + 1
    assert lines[1]["params"]["Er"] == [[0, 1]]
    summ = lines[-1]
    assert summ["summary"] and summ["logical_cycles"] == s.logical_cycles
    assert summ["code_cycles"] == makespan(s)
    assert summ["blocks"] == {"D": [3, 3], "A": [3, 3]}


def test_extend_renames_blocks():
    a = _logical()
    b = GadgetSchedule({"Q": (3, 3)}, level="logical")
    b.add(GadgetStep("HSwap", ("Q",)))
    a.extend(b, rename={"Q": "A"})
    assert a.steps[-1].blocks == ("A",)
    assert a.count("HSwap") == 1
