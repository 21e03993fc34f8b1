import json

import numpy as np
import pytest

from homgadget import gf2
from homgadget.logical import (LogicalCircuit, LogicalMachine, bell_reference, pauli_on, reference_group,
                               schedule_equivalent, simulate_logical)
from homgadget.logical_gadgets import LogicalBuilder
from homgadget.schedule import GadgetSchedule, GadgetStep


def test_circuit_json_is_one_indexed_and_round_trips():
    c = LogicalCircuit((3, 3), [("CNOT", (0, 0), (1, 2)), ("H", (0, 1)), ("S", (2, 2)),
                                ("CZ", (0, 0), (1, 1)), ("PPM", "Z", [(0, 0), (0, 1)]), ("Measure", "X", (2, 0))])
    obj = c.to_json_obj()
    assert obj[0] == {"g": "CNOT", "c": [1, 1], "t": [2, 3]}
    assert obj[1] == {"g": "H", "q": [1, 2]}
    back = LogicalCircuit.from_json_obj(json.loads(json.dumps(obj)), (3, 3))
    assert back.gates == c.gates


def test_layer_detection():
    assert LogicalCircuit((2, 2), [("H", (0, 0)), ("CNOT", (0, 1), (1, 1))]).is_layer()
    assert not LogicalCircuit((2, 2), [("H", (0, 0)), ("CNOT", (0, 0), (1, 1))]).is_layer()


def test_simulate_ghz_by_gates():
    c = LogicalCircuit((1, 3), [("H", (0, 0)), ("CNOT", (0, 0), (0, 1)), ("CNOT", (0, 1), (0, 2))])
    t = simulate_logical(c)
    assert t.expectation(*pauli_on(3, [0, 1, 2], "X")) == 1
    assert t.expectation(*pauli_on(3, [0, 2], "Z")) == 1


def test_non_clifford_gates_are_refused():
    with pytest.raises(ValueError):
        simulate_logical(LogicalCircuit((1, 1), [("T", (0, 0))]))


def test_machine_primitives():
    m = LogicalMachine({"Q": (2, 2)})
    s = GadgetSchedule({"Q": (2, 2)}, level="logical", data_blocks=())
    s.add(GadgetStep("LPrep", ("Q",), params={"basis": "X"}))
    s.add(GadgetStep("Translate", ("Q",), params={"shift": (1, 0)}))
    s.add(GadgetStep("CZS", ("Q",)))
    m.run(s)
    q = m.live["Q"]
    n = m.tab.n
    # after CZS on |+>^4: Y on the diagonal, X Z pairs across it
    assert m.tab.expectation(*_y(n, q[0, 0])) == 1
    px, pz = pauli_on(n, [q[0, 1]], "X")
    pz[q[1, 0]] = 1
    assert m.tab.expectation(px, pz) == 1


def _y(n, q):
    px, pz = pauli_on(n, [q], "X")
    pz[q] = 1
    return px, pz


def test_measurement_based_cnot_is_exact():
    shape = (1, 1)
    bld = LogicalBuilder(shape, 1, data_blocks=("C", "T"))
    bld.prep("A", "X")
    bld.gppm(("C", "A"), "Z", [[0]], [[0]])
    bld.gppm(("A", "T"), "X", [[0]], [[0]])
    bld.measure("A", "Z")
    m = LogicalMachine(bld.sched.blocks, bell_reference(2))
    m.bind("C", np.array([0]))
    m.bind("T", np.array([1]))
    m.run(bld.sched)
    got = m.tab.subgroup_on(np.array([m.live["C"][0, 0], m.live["T"][0, 0], 2, 3]))
    want = reference_group(LogicalCircuit((1, 2), [("CNOT", (0, 0), (0, 1))]))
    assert gf2.rowspace_equal(got, want)


def test_equivalence_detects_a_wrong_schedule():
    shape = (2, 2)
    bld = LogicalBuilder(shape, 1)
    bld.hswap("D")
    layer = LogicalCircuit(shape, [("H", c) for c in np.ndindex(2, 2)])
    # H-SWAP also transposes the grid, so it differs from plain H everywhere
    assert not schedule_equivalent(bld.sched, layer)
    transposed = LogicalCircuit(shape, [("H", c) for c in np.ndindex(2, 2)] + [("SWAP", (0, 1), (1, 0))])
    assert schedule_equivalent(bld.sched, transposed)


def test_equivalence_requires_ancillas_to_be_measured_out():
    bld = LogicalBuilder((1, 1), 1)
    bld.prep("A", "X")
    with pytest.raises(ValueError):
        schedule_equivalent(bld.sched, LogicalCircuit((1, 1), []))
