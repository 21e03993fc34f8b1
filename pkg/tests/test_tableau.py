import numpy as np
import pytest

from homgadget.tableau import Tableau


def _pauli(n, xs=(), zs=()):
    px = np.zeros(n, np.uint8)
    pz = np.zeros(n, np.uint8)
    px[list(xs)] = 1
    pz[list(zs)] = 1
    return px, pz


def test_initial_state_and_hadamard():
    t = Tableau(2)
    assert t.expectation(*_pauli(2, zs=[0])) == 1
    t.h(0)
    assert t.expectation(*_pauli(2, xs=[0])) == 1
    assert t.expectation(*_pauli(2, zs=[0])) == 0


def test_bell_pair_and_measurement_collapse():
    t = Tableau(2)
    t.h(0)
    t.cnot(0, 1)
    assert t.expectation(*_pauli(2, xs=[0, 1])) == 1
    assert t.expectation(*_pauli(2, zs=[0, 1])) == 1
    out, rnd = t.measure(*_pauli(2, zs=[0]))
    assert rnd and out == 0
    assert t.expectation(*_pauli(2, zs=[1])) == 1


def test_forced_outcome_sets_sign():
    t = Tableau(1)
    t.h(0)
    out, rnd = t.measure(*_pauli(1, zs=[0]), force=1)
    assert rnd and out == 1
    assert t.expectation(*_pauli(1, zs=[0])) == -1


def test_phase_gate_maps_x_to_y():
    t = Tableau(1)
    t.h(0)
    t.s(0)
    assert t.expectation(*_pauli(1, xs=[0], zs=[0])) == 1
    t.sdg(0)
    assert t.expectation(*_pauli(1, xs=[0])) == 1


def test_pauli_gates_flip_signs():
    t = Tableau(1)
    t.xgate(0)
    assert t.expectation(*_pauli(1, zs=[0])) == -1
    t.h(0)
    t.zgate(0)
    assert t.expectation(*_pauli(1, xs=[0])) == 1


def test_cz_swap_and_reset():
    t = Tableau(3)
    t.h([0, 1])
    t.cz(0, 1)
    assert t.expectation(*_pauli(3, xs=[0], zs=[1])) == 1
    t.swap(1, 2)
    assert t.expectation(*_pauli(3, xs=[0], zs=[2])) == 1
    t.reset(0, "X")
    assert t.expectation(*_pauli(3, xs=[0])) == 1
    with pytest.raises(ValueError):
        t.cnot(1, 1)


def test_grow_keeps_state_and_adds_zero_qubits():
    t = Tableau(1)
    t.h(0)
    t.grow(2)
    assert t.n == 3
    assert t.expectation(*_pauli(3, xs=[0])) == 1
    assert t.expectation(*_pauli(3, zs=[1])) == 1 and t.expectation(*_pauli(3, zs=[2])) == 1


def test_subgroup_on_a_subset():
    t = Tableau(3)
    t.h(0)
    t.cnot(0, 1)
    G = t.subgroup_on([0, 1])
    # XX and ZZ on qubits 0, 1 (columns follow the order of keep)
    assert G.shape == (2, 4)
    assert {tuple(r) for r in G} <= {(1, 1, 0, 0), (0, 0, 1, 1), (1, 1, 1, 1)}
    assert t.subgroup_on([0]).shape[0] == 0
