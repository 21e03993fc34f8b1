"""Compile layers of logical Clifford gates into logical gadget schedules.

A layer is split into moments of gates on disjoint qubits. Each moment runs
Hadamards (teleport out, transversal H, teleport back), CNOTs, a Hadamard fix-up
for CNOTs realized as CZs, and finally S gates via a teleported ``|i>`` block.

CNOTs come in three flavours. Aligned pairs (same row or column) and sparse
corner clusters run as measurement-based CNOTs inside workspace blocks whose
empty cells serve as ancillas. Dense clusters, many CNOTs sharing a corner, are
moved onto mirrored cells and executed together by one fold CZ-S.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .logical import LogicalCircuit, schedule_equivalent
from .logical_gadgets import (LogicalBuilder, build_i_state, hadamard_all, singletons, teleport,
                              teleport_passes)
from .schedule import GadgetSchedule, cycle_count

Coord = tuple[int, int]
__all__ = ["CompilerConfig", "classify_cnots", "split_moments", "compile_layer", "random_layer",
           "cycle_count", "layer_equivalent", "CostReport", "CostRow", "cost_report", "peak_blocks",
           "measure_layers", "SCHEMES", "CLOSED_FORMS", "route_in_column"]


@dataclass
class CompilerConfig:
    m: int | None = None          # dense-cluster threshold, default ceil(k^(1/4))
    d: int = 1
    max_workspaces: int | None = None  # CNOT workspaces live at once per moment

    def threshold(self, k: int) -> int:
        m = self.m if self.m is not None else math.ceil(round(k ** 0.25, 9))
        if m < 1:
            raise ValueError("dense-cluster threshold must be at least 1")
        return m


def classify_cnots(layer: LogicalCircuit | Iterable[tuple]) -> dict[str, list[tuple]]:
    """Partition CNOTs into Aligned (shared row or column), TLBR and TRBL diagonals."""
    gates = layer.gates if isinstance(layer, LogicalCircuit) else list(layer)
    out: dict[str, list[tuple]] = {"Aligned": [], "TLBR": [], "TRBL": []}
    for g in gates:
        if g[0] != "CNOT":
            raise ValueError(f"classify_cnots expects only CNOTs, got {g[0]}")
        (i, j), (i2, j2) = g[1], g[2]
        if i == i2 or j == j2:
            out["Aligned"].append(g)
        elif (i - i2) * (j - j2) > 0:
            out["TLBR"].append(g)
        else:
            out["TRBL"].append(g)
    return out


def split_moments(layer: LogicalCircuit) -> list[list[tuple]]:
    """Greedy ASAP split into moments whose gates touch disjoint qubits."""
    depth: dict[Coord, int] = {}
    moments: list[list[tuple]] = []
    for g in layer.gates:
        if g[0] not in ("H", "S", "CNOT"):
            raise ValueError(f"layer compiler handles H, S and CNOT only, got {g[0]}")
        qs = [tuple(q) for q in layer.qubits_of(g)]
        if len(set(qs)) != len(qs):
            raise ValueError(f"gate {g} repeats a qubit")
        for q in qs:
            if not (0 <= q[0] < layer.shape[0] and 0 <= q[1] < layer.shape[1]):
                raise ValueError(f"coordinate {q} is off the grid")
        t = max((depth.get(q, 0) for q in qs), default=0)
        for q in qs:
            depth[q] = t + 1
        while len(moments) <= t:
            moments.append([])
        moments[t].append(g)
    return moments


# -- workspace packing -----------------------------------------------------------


@dataclass
class _Workspace:
    data: set = field(default_factory=set)
    reserved: set = field(default_factory=set)
    aligned: list = field(default_factory=list)   # (control, target, ancilla, "col"|"row")
    clusters: list = field(default_factory=list)  # (corner, [(control, target), ...])

    def fits(self, cells: set, ancillas: set) -> bool:
        busy = self.data | self.reserved
        return not (cells & busy) and not (ancillas & (busy | cells))


def _aligned_ancillas(c: Coord, t: Coord, l: int) -> tuple[str, list[Coord]]:
    if c[1] == t[1]:
        return "col", [(r, c[1]) for r in range(l) if r not in (c[0], t[0])]
    return "row", [(c[0], s) for s in range(l) if s not in (c[1], t[1])]


def _pack(aligned: list[tuple], sparse: list[tuple], l: int) -> list[_Workspace]:
    spaces: list[_Workspace] = []

    def place(cells: set, options: list[Coord], add) -> None:
        for ws in spaces + [None]:
            if ws is None:
                ws = _Workspace()
                spaces.append(ws)
            for a in options:
                if ws.fits(cells, {a}):
                    ws.data |= cells
                    ws.reserved.add(a)
                    add(ws, a)
                    return
            if not ws.data and not ws.reserved:
                raise ValueError("no ancilla cell is available even in an empty workspace")

    for corner, pairs in sparse:
        cells = {q for p in pairs for q in p}
        place(cells, [corner], lambda ws, a, pairs=pairs: ws.clusters.append((a, pairs)))
    for g in aligned:
        c, t = g[1], g[2]
        kind, options = _aligned_ancillas(c, t, l)
        place({c, t}, options, lambda ws, a, c=c, t=t, kind=kind: ws.aligned.append((c, t, a, kind)))
    return spaces


def _run_workspace(bld: LogicalBuilder, W: str, ws: _Workspace) -> dict:
    """Measurement-based CNOTs inside ``W``: ZZ(control, ancilla), XX(ancilla, target), Z(ancilla)."""
    groups: dict[tuple, list] = {}
    for c, t, a, kind in ws.aligned:
        groups.setdefault((kind, c[1] if kind == "col" else c[0]), []).append((c, t, a))
    for (kind, idx), items in sorted(groups.items()):
        if kind == "col":
            bld.gppm((W,), "Z", [sorted([c[0], a[0]]) for c, t, a in items], [[idx]])
            bld.gppm((W,), "X", [sorted([a[0], t[0]]) for c, t, a in items], [[idx]])
            bld.gppm((W,), "Z", [[a[0]] for c, t, a in items], [[idx]])
        else:
            bld.gppm((W,), "Z", [[idx]], [sorted([c[1], a[1]]) for c, t, a in items])
            bld.gppm((W,), "X", [[idx]], [sorted([a[1], t[1]]) for c, t, a in items])
            bld.gppm((W,), "Z", [[idx]], [[a[1]] for c, t, a in items])
    depth = max((len(p) for _, p in ws.clusters), default=0)
    for s in range(depth):
        for (alpha, beta), pairs in ws.clusters:
            if s >= len(pairs):
                continue
            if s:
                bld.gppm((W,), "X", [[alpha]], [[beta]])
            (r, _), (_, col) = pairs[s]
            bld.gppm((W,), "Z", [sorted([r, alpha])], [[beta]])
            bld.gppm((W,), "X", [[alpha]], [sorted([beta, col])])
            bld.gppm((W,), "Z", [[alpha]], [[beta]])
    return {"column_passes": sum(1 for k in groups if k[0] == "col"),
            "row_passes": sum(1 for k in groups if k[0] == "row"),
            "cluster_sequences": depth}


# -- dense clusters --------------------------------------------------------------


def route_in_column(moves: dict[int, int], buffer: int) -> list[list[tuple[int, int]]]:
    """Rounds of parallel single-cell moves realizing ``moves`` (src row -> dst row).

    Cycles are broken through the ``buffer`` row, which must be free throughout.
    """
    pending = {a: b for a, b in moves.items() if a != b}
    occupied = set(moves)
    rounds = []
    while pending:
        ready = [(a, b) for a, b in pending.items() if b not in occupied]
        if not ready:
            a = min(pending)
            if buffer in occupied:
                raise AssertionError("buffer row is occupied")
            ready = [(a, buffer)]
            pending[buffer] = pending.pop(a)
        else:
            for a, _ in ready:
                pending.pop(a)
        for a, b in ready:
            occupied.discard(a)
            occupied.add(b)
        rounds.append(sorted(ready))
    return rounds


def _column_moves(bld: LogicalBuilder, Q: str, col: int, rounds) -> None:
    for rnd in rounds:
        bld.gppm((Q,), "X", [sorted(m) for m in rnd], [[col]])
        bld.gppm((Q,), "Z", [[a] for a, _ in rnd], [[col]])


def _run_dense(bld: LogicalBuilder, D: str, corner: Coord, pairs: list[tuple[Coord, Coord]]) -> tuple[str, dict]:
    """CNOTs with controls in column ``beta`` and targets in row ``alpha`` (targets pre-dressed with H).

    The cluster is teleported into a ``|0>`` block, its target row is shifted onto
    the corner's column index, controls are moved to the mirror cells of their
    targets, and one fold CZ-S applies every CZ at once.
    """
    l = bld.shape[0]
    alpha, beta = corner
    cells = [q for p in pairs for q in p]
    Q = bld.fresh("dense")
    bld.prep(Q, "Z")
    teleport(bld, D, Q, cells, via="X")
    shift = (beta - alpha) % l
    bld.translate(Q, shift, 0)
    moves = {(c[0] + shift) % l: t[1] for c, t in pairs}
    rounds = route_in_column(moves, buffer=beta)
    _column_moves(bld, Q, beta, rounds)
    bld.czs(Q)
    _column_moves(bld, Q, beta, [[(b, a) for a, b in rnd] for rnd in reversed(rounds)])
    bld.translate(Q, -shift, 0)
    teleport(bld, Q, D, cells, via="X")
    return Q, {"move_rounds": len(rounds)}


# -- phases ---------------------------------------------------------------------


def _h_phase(bld: LogicalBuilder, D: str, cells: set) -> None:
    l1, l2 = bld.shape
    if len(cells) == l1 * l2:
        hadamard_all(bld, D)
        return
    W = bld.fresh("had")
    bld.prep(W, "X")
    teleport(bld, D, W, cells)
    hadamard_all(bld, W)
    teleport(bld, W, D, cells)
    bld.measure(W, "Z")


def _s_phase(bld: LogicalBuilder, D: str, cells: set) -> str:
    """Teleport the whole block through a ``|i>``/``|+>`` pattern; returns the new data block."""
    l1, l2 = bld.shape
    A, B = bld.fresh("data"), bld.fresh("ipart")
    build_i_state(bld, A, B)
    rest = [(i, j) for i in range(l1) for j in range(l2) if (i, j) not in cells]
    for r, c in teleport_passes(rest)[1] if rest else []:
        bld.gppm((A,), "X", singletons(r), singletons(c))
    bld.tcnot(A, D)
    bld.measure(D, "Z")
    return A


def _compile_moment(bld: LogicalBuilder, D: str, gates: list[tuple], m: int,
                    max_ws: int | None, report: dict) -> str:
    l = bld.shape[0]
    hs = {tuple(g[1]) for g in gates if g[0] == "H"}
    ss = {tuple(g[1]) for g in gates if g[0] == "S"}
    cnots = [("CNOT", tuple(g[1]), tuple(g[2])) for g in gates if g[0] == "CNOT"]
    classes = classify_cnots(cnots)
    clusters: dict[Coord, list] = {}
    for g in classes["TLBR"] + classes["TRBL"]:
        c, t = g[1], g[2]
        clusters.setdefault((t[0], c[1]), []).append((c, t))
    dense = {k: v for k, v in clusters.items() if len(v) > m}
    sparse = [(k, v) for k, v in sorted(clusters.items()) if len(v) <= m]
    dense_targets = {t for v in dense.values() for _, t in v}
    if cnots and bld.shape[0] != bld.shape[1] and dense:
        raise ValueError("dense clusters need a square grid")
    if classes["Aligned"] and min(bld.shape) < 3:
        raise ValueError("aligned CNOTs need a grid side of at least 3 for the ancilla cell")

    if hs | dense_targets:
        _h_phase(bld, D, hs | dense_targets)

    spaces = _pack(classes["Aligned"], sparse, l)
    rounds = [spaces[i:i + max_ws] for i in range(0, len(spaces), max_ws)] if max_ws else [spaces]
    dense_blocks = []
    for rnd in rounds:
        names = []
        for ws in rnd:
            W = bld.fresh("work")
            bld.prep(W, "X")
            teleport(bld, D, W, sorted(ws.data))
            names.append(W)
        if rnd is rounds[0]:
            for corner, pairs in sorted(dense.items()):
                Q, info = _run_dense(bld, D, corner, pairs)
                dense_blocks.append(Q)
                report["clusters"].append({"corner": corner, "size": len(pairs), "path": "dense", **info})
        for W, ws in zip(names, rnd):
            info = _run_workspace(bld, W, ws)
            report["workspaces"].append(info)
            for corner, pairs in ws.clusters:
                report["clusters"].append({"corner": corner, "size": len(pairs), "path": "sparse",
                                           "sequences": len(pairs)})
        for W, ws in zip(names, rnd):
            teleport(bld, W, D, sorted(ws.data))
            bld.measure(W, "X")
    for Q in dense_blocks:
        bld.measure(Q, "Z")
    if dense_targets:
        _h_phase(bld, D, dense_targets)
    if ss:
        D = _s_phase(bld, D, ss)
    return D


def compile_layer(layer: LogicalCircuit, cfg: CompilerConfig | None = None) -> GadgetSchedule:
    """Logical schedule acting on block ``D``; the result ends in ``notes['output_block']``."""
    cfg = cfg or CompilerConfig()
    m = cfg.threshold(layer.k)
    bld = LogicalBuilder(layer.shape, cfg.d, name="compiled-layer")
    report = {"clusters": [], "workspaces": [], "moments": 0, "m": m}
    D = "D"
    moments = split_moments(layer)
    report["moments"] = len(moments)
    for gates in moments:
        D = _compile_moment(bld, D, gates, m, cfg.max_workspaces, report)
    s = bld.sched
    s.notes.update(report)
    s.notes["output_block"] = D
    s.declared_effect = [f"{len(layer.gates)}-gate Clifford layer"]
    return s


def layer_equivalent(sched: GadgetSchedule, layer: LogicalCircuit) -> bool:
    return schedule_equivalent(sched, layer, data_block="D")


def random_layer(shape: tuple[int, int], rng: np.random.Generator | None = None,
                 n_gates: int | None = None, disjoint: bool = True,
                 kinds: Sequence[str] = ("H", "S", "CNOT")) -> LogicalCircuit:
    """Random layer of H, S and CNOT gates.

    With ``disjoint`` every qubit is touched at most once and ``n_gates`` defaults
    to as many gates as fit; otherwise ``n_gates`` gates are drawn independently.
    """
    rng = rng if rng is not None else np.random.default_rng()
    l1, l2 = shape
    k = l1 * l2
    coord = lambda p: (int(p) // l2, int(p) % l2)
    gates: list[tuple] = []
    if disjoint:
        order = list(rng.permutation(k))
        limit = n_gates if n_gates is not None else k
        while order and len(gates) < limit:
            kind = kinds[int(rng.integers(len(kinds)))]
            if kind == "CNOT":
                if len(order) < 2:
                    if all(x == "CNOT" for x in kinds):
                        break
                    continue
                gates.append(("CNOT", coord(order.pop()), coord(order.pop())))
            else:
                gates.append((kind, coord(order.pop())))
        return LogicalCircuit(tuple(shape), gates)
    for _ in range(n_gates if n_gates is not None else k):
        kind = kinds[int(rng.integers(len(kinds)))]
        if kind == "CNOT" and k > 1:
            a, b = rng.choice(k, size=2, replace=False)
            gates.append(("CNOT", coord(a), coord(b)))
        elif kind != "CNOT":
            gates.append((kind, coord(rng.integers(k))))
    return LogicalCircuit(tuple(shape), gates)


# -- space-time cost comparison -----------------------------------------------------

SCHEMES = ("surface-lattice-surgery", "hgp-lattice-surgery", "hgp-gppm")
CLOSED_FORMS = {
    "surface-lattice-surgery": ("Θ(kd²)", "Θ(d)", "Θ(kd³) = Θ(k^{5/2})"),
    "hgp-lattice-surgery": ("Θ(k)", "Θ(k)·d", "Θ(k²d) = Θ(k^{5/2})"),
    "hgp-gppm": ("Θ(k)", "O(k^{3/4})·d", "O(k^{7/4}d) = O(k^{9/4})"),
}


@dataclass
class CostRow:
    scheme: str
    space_form: str
    time_form: str
    spacetime_form: str
    space: float       # physical qubits
    time: float        # code cycles
    measured: bool

    @property
    def spacetime(self) -> float:
        return self.space * self.time


@dataclass
class CostReport:
    k: int
    d: int
    rows: list[CostRow]
    notes: dict = field(default_factory=dict)

    def row(self, scheme: str) -> CostRow:
        return next(r for r in self.rows if r.scheme == scheme)

    def to_json_obj(self) -> dict:
        return {"k": self.k, "d": self.d, "notes": self.notes,
                "rows": [{"scheme": r.scheme, "space": r.space_form, "time": r.time_form,
                          "space_time": r.spacetime_form, "space_value": r.space, "time_value": r.time,
                          "space_time_value": r.spacetime, "measured": r.measured} for r in self.rows]}

    def to_text(self) -> str:
        head = f"{'scheme':<24} {'space':<8} {'time':<14} {'space-time':<26} {'qubits':>8} {'cycles':>8} {'product':>10}"
        lines = [head, "-" * len(head)]
        for r in self.rows:
            lines.append(f"{r.scheme:<24} {r.space_form:<8} {r.time_form:<14} {r.spacetime_form:<26} "
                         f"{r.space:>8.0f} {r.time:>8.1f} {r.spacetime:>10.0f}")
        return "\n".join(lines)


def peak_blocks(sched: GadgetSchedule) -> int:
    """Largest number of simultaneously live blocks in program order."""
    live = set(sched.data_blocks)
    peak = len(live)
    for s in sched.steps:
        if s.kind == "LPrep":
            live.add(s.blocks[0])
        elif s.kind == "LMeasure":
            live.discard(s.blocks[0])
        peak = max(peak, len(live))
    return peak


def measure_layers(shape: tuple[int, int], d: int, n_layers: int, seed: int,
                   cfg: CompilerConfig | None = None) -> dict:
    """Compile ``n_layers`` seeded random disjoint layers; mean logical cycles and peak blocks."""
    rng = np.random.default_rng(seed)
    cfg = cfg or CompilerConfig()
    cfg = CompilerConfig(m=cfg.m, d=d, max_workspaces=cfg.max_workspaces)
    cycles, peaks, gates = [], [], []
    for _ in range(n_layers):
        layer = random_layer(shape, rng)
        s = compile_layer(layer, cfg)
        cycles.append(s.logical_cycles)
        peaks.append(peak_blocks(s))
        gates.append(len(layer.gates))
    return {"logical_cycles": float(np.mean(cycles)), "peak_blocks": float(np.mean(peaks)),
            "gates": float(np.mean(gates)), "samples": cycles}


def cost_report(k: int, d: int, schemes: Sequence[str] = SCHEMES, n: int | None = None,
                sched: GadgetSchedule | None = None, seed: int = 0, n_layers: int = 3) -> CostReport:
    """Closed-form baselines with unit constants next to measured numbers for the GPPM scheme.

    ``n`` is the physical qubit count of one block (defaults to ``k``); the measured
    row uses ``sched`` if given, otherwise seeded random layers of Θ(k) gates.
    """
    rows = []
    notes: dict = {"convention": "d = Θ(√k); baselines use unit constants; time in code cycles"}
    for sc in schemes:
        if sc not in CLOSED_FORMS:
            raise ValueError(f"unknown scheme {sc!r}")
        forms = CLOSED_FORMS[sc]
        if sc == "surface-lattice-surgery":
            rows.append(CostRow(sc, *forms, space=k * d * d, time=d, measured=False))
        elif sc == "hgp-lattice-surgery":
            rows.append(CostRow(sc, *forms, space=n or k, time=k * d, measured=False))
        else:
            l = math.isqrt(k)
            if sched is not None:
                cyc, peak = sched.logical_cycles, peak_blocks(sched)
            else:
                if l * l != k:
                    raise ValueError("measured row needs a square logical grid")
                m = measure_layers((l, l), d, n_layers, seed)
                cyc, peak = m["logical_cycles"], m["peak_blocks"]
                notes["layers"] = m
            notes["peak_blocks"] = peak
            rows.append(CostRow(sc, *forms, space=(n or k) * peak, time=cyc * d, measured=True))
    return CostReport(k, d, rows, notes)
