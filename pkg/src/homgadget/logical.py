"""Logical-level circuits and an executor for logical gadget schedules.

Every code block is an ``l1 x l2`` grid of logical qubits mapped onto qubits of
one shared :class:`Tableau`. Translations and fold swaps only relabel that map.
Coordinates are 0-based here and 1-based in JSON.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import gf2
from .schedule import GadgetSchedule, GadgetStep
from .tableau import Tableau

Coord = tuple[int, int]
CLIFFORD_GATES = {"H", "S", "CNOT", "CZ", "SWAP", "PPM", "Prep", "Measure"}


@dataclass
class LogicalCircuit:
    """Gates on an ``shape`` grid: ("H", q), ("S", q), ("CNOT", c, t), ("CZ", a, b),
    ("PPM", basis, [q...]), ("Prep", basis, q), ("Measure", basis, q)."""

    shape: tuple[int, int]
    gates: list[tuple] = field(default_factory=list)

    @property
    def k(self) -> int:
        return self.shape[0] * self.shape[1]

    def index(self, q: Coord) -> int:
        return q[0] * self.shape[1] + q[1]

    def qubits_of(self, g: tuple) -> list[Coord]:
        if g[0] in ("H", "S"):
            return [g[1]]
        if g[0] in ("CNOT", "CZ", "SWAP"):
            return [g[1], g[2]]
        if g[0] == "PPM":
            return list(g[2])
        if g[0] in ("Prep", "Measure"):
            return [g[2]]
        return []

    def is_layer(self) -> bool:
        seen: set = set()
        for g in self.gates:
            qs = set(map(tuple, self.qubits_of(g)))
            if qs & seen:
                return False
            seen |= qs
        return True

    def to_json_obj(self) -> list[dict]:
        out = []
        for g in self.gates:
            one = lambda q: [int(q[0]) + 1, int(q[1]) + 1]
            if g[0] in ("H", "S"):
                out.append({"g": g[0], "q": one(g[1])})
            elif g[0] in ("CNOT",):
                out.append({"g": "CNOT", "c": one(g[1]), "t": one(g[2])})
            elif g[0] in ("CZ", "SWAP"):
                out.append({"g": g[0], "q": [one(g[1]), one(g[2])]})
            elif g[0] == "PPM":
                out.append({"g": "PPM", "basis": g[1], "q": [one(q) for q in g[2]]})
            else:
                out.append({"g": g[0], "basis": g[1], "q": one(g[2])})
        return out

    @classmethod
    def from_json_obj(cls, obj, shape: tuple[int, int]) -> "LogicalCircuit":
        gates = []
        zero = lambda q: (int(q[0]) - 1, int(q[1]) - 1)
        for g in obj:
            name = g["g"]
            if name in ("H", "S"):
                gates.append((name, zero(g["q"])))
            elif name == "CNOT":
                gates.append(("CNOT", zero(g["c"]), zero(g["t"])))
            elif name in ("CZ", "SWAP"):
                gates.append((name, zero(g["q"][0]), zero(g["q"][1])))
            elif name == "PPM":
                gates.append(("PPM", g["basis"], [zero(q) for q in g["q"]]))
            elif name in ("Prep", "Measure"):
                gates.append((name, g.get("basis", "Z"), zero(g["q"])))
            else:
                gates.append((name,) + tuple(v for kk, v in g.items() if kk != "g"))
        return cls(tuple(shape), gates)


def pauli_on(n: int, qubits: Iterable[int], basis: str) -> tuple[np.ndarray, np.ndarray]:
    x = np.zeros(n, np.uint8)
    z = np.zeros(n, np.uint8)
    for q in qubits:
        if basis in ("X", "Y"):
            x[q] ^= 1
        if basis in ("Z", "Y"):
            z[q] ^= 1
    return x, z


def apply_gate(tab: Tableau, g: tuple, idx) -> None:
    """Apply one circuit gate; ``idx`` maps grid coordinates to tableau qubits."""
    name = g[0]
    if name not in CLIFFORD_GATES:
        raise ValueError(f"non-Clifford element {name!r} cannot be simulated")
    if name == "H":
        tab.h(idx(g[1]))
    elif name == "S":
        tab.s(idx(g[1]))
    elif name == "CNOT":
        tab.cnot(idx(g[1]), idx(g[2]))
    elif name == "CZ":
        tab.cz(idx(g[1]), idx(g[2]))
    elif name == "SWAP":
        tab.swap(idx(g[1]), idx(g[2]))
    elif name == "PPM":
        tab.measure(*pauli_on(tab.n, [idx(q) for q in g[2]], g[1]))
    elif name == "Prep":
        tab.reset(idx(g[2]), g[1])
    elif name == "Measure":
        tab.measure(*pauli_on(tab.n, [idx(g[2])], g[1]))


def simulate_logical(circuit: LogicalCircuit, tableau: Tableau | None = None,
                     qubits: Sequence[int] | None = None) -> Tableau:
    """Run ``circuit`` (outcomes forced to +1) on a fresh or given tableau."""
    tab = tableau if tableau is not None else Tableau(circuit.k)
    qubits = list(range(circuit.k)) if qubits is None else list(qubits)
    idx = lambda q: qubits[circuit.index(q)]
    for g in circuit.gates:
        apply_gate(tab, g, idx)
    return tab


class LogicalMachine:
    """Executes logical gadget steps on a shared tableau with block allocation."""

    def __init__(self, shapes: dict[str, tuple[int, int]], tableau: Tableau | None = None):
        self.shapes = dict(shapes)
        self.tab = tableau if tableau is not None else Tableau(0)
        self.live: dict[str, np.ndarray] = {}
        self.free: list[int] = []

    def bind(self, block: str, qubits: np.ndarray) -> None:
        self.live[block] = np.asarray(qubits, dtype=int).reshape(self.shapes[block])

    def allocate(self, block: str) -> np.ndarray:
        """Bind ``block`` to fresh qubits in ``|0>`` (for input blocks of a bare run)."""
        self.live[block] = self._alloc(block)
        return self.live[block]

    def _alloc(self, block: str) -> np.ndarray:
        shape = self.shapes[block]
        k = shape[0] * shape[1]
        if len(self.free) < k:
            start = self.tab.n
            self.tab.grow(k - len(self.free))
            self.free += list(range(start, self.tab.n))
        qs = np.array(sorted(self.free)[:k], dtype=int)
        taken = set(qs.tolist())
        self.free = [q for q in self.free if q not in taken]
        return qs.reshape(shape)

    def positions(self, block: str, coords: Iterable[Coord]) -> list[int]:
        arr = self.live[block]
        return [int(arr[c[0], c[1]]) for c in coords]

    def apply(self, step: GadgetStep) -> None:
        kind = step.kind
        p = step.params
        if kind == "LPrep":
            b = step.blocks[0]
            if b in self.live:
                self._release(b)
            arr = self._alloc(b)
            for q in arr.ravel():
                self.tab.reset(int(q), p["basis"])
            self.live[b] = arr
        elif kind == "LMeasure":
            b = step.blocks[0]
            n = self.tab.n
            for q in self.live[b].ravel():
                self.tab.measure(*pauli_on(n, [int(q)], p["basis"]))
            self._release(b)
        elif kind == "GPPM":
            n = self.tab.n
            for er, ec in itertools.product(p["Er"], p["Ec"]):
                cells = list(itertools.product(er, ec))
                qs = [q for b in step.blocks for q in self.positions(b, cells)]
                self.tab.measure(*pauli_on(n, qs, p["basis"]))
        elif kind == "TCNOT":
            cb, tb = step.blocks
            cells = p.get("cells")
            cells = cells if cells is not None else list(np.ndindex(*self.shapes[cb]))
            for c in cells:
                self.tab.cnot(int(self.live[cb][c]), int(self.live[tb][c]))
        elif kind == "HSwap":
            b = step.blocks[0]
            self.tab.h(self.live[b].ravel())
            self.live[b] = self.live[b].T.copy()
        elif kind == "CZS":
            b = step.blocks[0]
            arr = self.live[b]
            l = arr.shape[0]
            self.tab.s(np.array([arr[i, i] for i in range(l)]))
            for i, j in itertools.combinations(range(l), 2):
                self.tab.cz(int(arr[i, j]), int(arr[j, i]))
        elif kind == "Translate":
            b = step.blocks[0]
            i, j = p["shift"]
            self.live[b] = np.roll(self.live[b], (i, j), axis=(0, 1))
        elif kind == "Annotation":
            if p.get("clifford") is False and p.get("strict"):
                raise ValueError(f"non-Clifford annotation {p.get('label')!r}")
        else:
            raise ValueError(f"{kind} is not a logical step")

    def _release(self, block: str) -> None:
        self.free += self.live.pop(block).ravel().tolist()

    def run(self, sched: GadgetSchedule) -> "LogicalMachine":
        for s in sched.steps:
            self.apply(s)
        return self


def bell_reference(k: int) -> Tableau:
    """``2k`` qubits: data ``0..k-1`` maximally entangled with references ``k..2k-1``."""
    tab = Tableau(2 * k)
    for q in range(k):
        tab.h(q)
        tab.cnot(q, k + q)
    return tab


def run_on_reference(sched: GadgetSchedule, data_block: str, shape: tuple[int, int]
                     ) -> tuple[LogicalMachine, np.ndarray]:
    """Run a logical schedule with ``data_block`` entangled with references.

    Returns the machine and the reference qubit indices (grid order).
    """
    k = shape[0] * shape[1]
    m = LogicalMachine({b: v for b, v in sched.blocks.items()}, bell_reference(k))
    m.bind(data_block, np.arange(k))
    m.run(sched)
    return m, np.arange(k, 2 * k)


def group_on(m: LogicalMachine, block: str, refs: np.ndarray) -> np.ndarray:
    keep = np.concatenate([m.live[block].ravel(), refs])
    return m.tab.subgroup_on(keep)


def reference_group(circuit: LogicalCircuit) -> np.ndarray:
    """Sign-free group of ``circuit`` applied to the data half of Bell pairs."""
    k = circuit.k
    tab = simulate_logical(circuit, bell_reference(k), list(range(k)))
    return tab.subgroup_on(np.arange(2 * k))


def schedule_equivalent(sched: GadgetSchedule, circuit: LogicalCircuit, data_block: str = "D",
                        output_block: str | None = None) -> bool:
    """Sign-free equality of the schedule and the circuit as channels on the data block."""
    out = output_block or sched.notes.get("output_block", data_block)
    m, refs = run_on_reference(sched, data_block, circuit.shape)
    live_other = [b for b in m.live if b != out]
    if live_other:
        raise ValueError(f"blocks {live_other} are still live at the end of the schedule")
    return gf2.rowspace_equal(group_on(m, out, refs), reference_group(circuit))
