"""Logical-level gadgets built from GPPMs, transversal CNOTs, fold gates and translations.

All builders work on square or rectangular grids of logical qubits; blocks are
named and allocated fresh so independent work overlaps under the makespan model.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

import numpy as np

from . import gf2
from .logical import LogicalCircuit, LogicalMachine, reference_group, run_on_reference
from .schedule import GadgetSchedule, GadgetStep, gppm_step

Coord = tuple[int, int]


def singletons(idx: Iterable[int]) -> list[list[int]]:
    return [[int(i)] for i in idx]


class LogicalBuilder:
    """Accumulates logical steps over blocks of one grid shape."""

    def __init__(self, shape: tuple[int, int], d: int, name: str = "",
                 data_blocks: Sequence[str] = ("D",)):
        self.shape = tuple(shape)
        self.d = d
        self.sched = GadgetSchedule(blocks={b: self.shape for b in data_blocks}, level="logical",
                                    d=d, data_blocks=tuple(data_blocks), name=name)
        self._ids = itertools.count()

    def fresh(self, stem: str = "anc") -> str:
        b = f"{stem}{next(self._ids)}"
        self.sched.blocks[b] = self.shape
        return b

    def use(self, b: str) -> str:
        self.sched.blocks.setdefault(b, self.shape)
        return b

    def prep(self, b: str, basis: str) -> None:
        self.sched.add(GadgetStep("LPrep", (self.use(b),), cycles=self.d, params={"basis": basis}))

    def measure(self, b: str, basis: str) -> None:
        self.sched.add(GadgetStep("LMeasure", (b,), params={"basis": basis}))

    def gppm(self, blocks: Sequence[str], basis: str, Er, Ec) -> None:
        if len(Er) and len(Ec):
            self.sched.add(gppm_step(blocks, basis, Er, Ec, self.d))

    def tcnot(self, control: str, target: str) -> None:
        self.sched.add(GadgetStep("TCNOT", (control, target)))

    def hswap(self, b: str) -> None:
        self.sched.add(GadgetStep("HSwap", (b,)))

    def czs(self, b: str) -> None:
        self.sched.add(GadgetStep("CZS", (b,)))

    def translate(self, b: str, i: int, j: int) -> None:
        i, j = i % self.shape[0], j % self.shape[1]
        if i or j:
            self.sched.add(GadgetStep("Translate", (b,), params={"shift": (i, j)}))

    def annotate(self, label: str, blocks: Sequence[str], cycles: int = 1, clifford: bool = False) -> None:
        self.sched.add(GadgetStep("Annotation", tuple(blocks), cycles=cycles,
                                  params={"label": label, "clifford": clifford}))


# -- teleportation ---------------------------------------------------------------


def teleport_passes(cells: Iterable[Coord]) -> tuple[str, list[tuple[list[int], list[int]]]]:
    """Split ``cells`` into per-column or per-row passes, whichever is fewer (ties go to columns).

    Each pass is (rows, cols) with one of the two lists a single line.
    """
    cells = sorted(set(map(tuple, cells)))
    cols: dict[int, list[int]] = {}
    rows: dict[int, list[int]] = {}
    for i, j in cells:
        cols.setdefault(j, []).append(i)
        rows.setdefault(i, []).append(j)
    if len(cols) <= len(rows):
        return "column", [(r, [j]) for j, r in sorted(cols.items())]
    return "row", [([i], c) for i, c in sorted(rows.items())]


def teleport(bld: LogicalBuilder, src: str, dst: str, cells: Iterable[Coord], via: str = "Z") -> int:
    """Move the logicals at ``cells`` from ``src`` to the same cells of ``dst``.

    With ``via="Z"`` the cells of ``dst`` must hold ``|+>`` and are left ``|+>`` in
    ``src``; with ``via="X"`` the roles of ``|0>`` and ``|+>`` swap.
    Returns the number of passes.
    """
    other = "X" if via == "Z" else "Z"
    _, passes = teleport_passes(cells)
    for r, c in passes:
        bld.gppm((src, dst), via, singletons(r), singletons(c))
        bld.gppm((src,), other, singletons(r), singletons(c))
    return len(passes)


def selective_teleport(shape: tuple[int, int], cells: Iterable[Coord], d: int = 1) -> GadgetSchedule:
    """Teleport ``cells`` of block ``D`` into a fresh ``|+>`` block ``T``."""
    bld = LogicalBuilder(shape, d, name="selective-teleport")
    bld.prep("T", "X")
    cells = sorted(set(map(tuple, cells)))
    n = teleport(bld, "D", "T", cells)
    s = bld.sched
    s.notes.update(passes=n, orientation=teleport_passes(cells)[0], cells=cells)
    s.declared_effect = [f"teleport {len(cells)} logicals D->T"]
    return s


def teleport_certified(sched: GadgetSchedule, shape: tuple[int, int], cells: Iterable[Coord]) -> bool:
    """The selected cells of ``T`` together with the rest of ``D`` carry the input state."""
    m, refs = run_on_reference(sched, "D", shape)
    out = m.live["D"].copy()
    for c in cells:
        out[c] = m.live["T"][c]
    keep = np.concatenate([out.ravel(), refs])
    return gf2.rowspace_equal(m.tab.subgroup_on(keep), reference_group(LogicalCircuit(tuple(shape), [])))


# -- diagonal measurement and line masks -------------------------------------------


def split_levels(l: int) -> list[tuple[list[int], list[int]]]:
    """Halving levels separating every pair of distinct indices in ``range(l)``.

    The largest power-of-two prefix is halved recursively; a remainder is halved
    alongside it and split off by one final extra level.
    """
    if l <= 1:
        return []
    p = 1 << (l.bit_length() - 1)
    segs = [list(range(p))] + ([list(range(p, l))] if p < l else [])
    levels = []
    while any(len(s) > 1 for s in segs):
        first: list[int] = []
        second: list[int] = []
        nxt = []
        for s in segs:
            if len(s) > 1:
                h = (len(s) + 1) // 2
                first += s[:h]
                second += s[h:]
                nxt += [s[:h], s[h:]]
            else:
                nxt.append(s)
        levels.append((first, second))
        segs = nxt
    if p < l:
        levels.append((list(range(p)), list(range(p, l))))
    return levels


def diag_measure(bld: LogicalBuilder, Q: str, basis: str = "X") -> int:
    """Measure ``basis`` on every diagonal logical of ``Q`` without touching the rest.

    A helper block is reset off the diagonal by GPPM levels, then coupled
    transversally and read out. Returns the number of GPPM pairs.
    """
    l = bld.shape[0]
    other = "Z" if basis == "X" else "X"
    h = bld.fresh("diag")
    bld.prep(h, basis)
    levels = split_levels(l)
    for first, second in levels:
        bld.gppm((h,), other, singletons(first), singletons(second))
        bld.gppm((h,), other, singletons(second), singletons(first))
    if basis == "X":
        bld.tcnot(h, Q)
    else:
        bld.tcnot(Q, h)
    bld.measure(h, basis)
    return len(levels)


def diagonal_x_measure(l: int, d: int = 1) -> GadgetSchedule:
    bld = LogicalBuilder((l, l), d, name="diagonal-x-measure")
    n = diag_measure(bld, "D", "X")
    s = bld.sched
    s.notes["gppm_pairs"] = n
    s.declared_effect = [f"X[{i + 1},{i + 1}]" for i in range(l)]
    return s


def line_cells(l: int, offset: int, cyclic: bool = False) -> list[Coord]:
    """Cells with ``row - col == offset`` (mod ``l`` when ``cyclic``)."""
    if cyclic:
        return [((c + offset) % l, c) for c in range(l)]
    return [(r, r - offset) for r in range(l) if 0 <= r - offset < l]


def line_mask(bld: LogicalBuilder, offset: int, on_line: str, cyclic: bool = False) -> str:
    """Fresh block in ``on_line`` basis on a line and the other basis elsewhere.

    The diagonal is selected by a diagonal measurement, moved by a translation,
    and for a non-cyclic line the wrapped cells are reset by one extra GPPM.
    """
    l = bld.shape[0]
    other = "X" if on_line == "Z" else "Z"
    M = bld.fresh("mask")
    bld.prep(M, other)
    diag_measure(bld, M, on_line)
    bld.translate(M, offset, 0)
    if not cyclic and offset % l:
        if offset < 0:
            rows, cols = range(l + offset, l), range(0, -offset)
        else:
            rows, cols = range(0, offset), range(l - offset, l)
        bld.gppm((M,), other, singletons(rows), singletons(cols))
    return M


def line_teleport(bld: LogicalBuilder, src: str, dst: str, offset: int, cyclic: bool = False) -> None:
    """Teleport one diagonal line from ``src`` to ``|+>`` cells of ``dst`` using masked ancillas."""
    zm = line_mask(bld, offset, "Z", cyclic)
    bld.tcnot(src, zm)
    bld.tcnot(dst, zm)
    bld.measure(zm, "Z")
    xm = line_mask(bld, offset, "X", cyclic)
    bld.tcnot(xm, src)
    bld.measure(xm, "X")


# -- composite gadgets --------------------------------------------------------------


def _require_square(shape) -> int:
    if shape[0] != shape[1]:
        raise ValueError("gadget needs a symmetric (square) logical grid")
    return shape[0]


def build_i_state(bld: LogicalBuilder, A: str, B: str) -> dict:
    """Prepare ``|i>`` on every logical of ``A`` using ``B`` as a partner block."""
    l = bld.shape[0]
    if l == 1:
        bld.prep(A, "X")
        bld.czs(A)
        return {"A": 0, "B": 0}
    t_a = (l - 1) // 2 + 1
    t_b = l - 1 - t_a
    bld.prep(A, "Z")
    bld.prep(B, "Z")
    for _ in range(t_a):
        diag_measure(bld, A, "X")
        bld.czs(A)
        bld.translate(A, 1, 0)
    for _ in range(t_b):
        diag_measure(bld, B, "X")
        bld.czs(B)
        bld.translate(B, -1, 0)
    diag_measure(bld, B, "X")
    bld.czs(B)
    everything = singletons(range(l))
    bld.gppm((A, B), "X", everything, everything)
    bld.measure(B, "Z")
    return {"A": t_a, "B": t_b + 1}


def i_state_prep(l: int, d: int = 1) -> GadgetSchedule:
    bld = LogicalBuilder((l, l), d, name="i-state-prep", data_blocks=())
    counts = build_i_state(bld, "A", "B")
    s = bld.sched
    s.notes.update(sequences=counts, output_block="A")
    s.declared_effect = [f"Y[{i + 1},{j + 1}]" for i in range(l) for j in range(l)]
    return s


def hadamard_all(bld: LogicalBuilder, Q: str) -> int:
    """Transversal H on every logical of ``Q``: fold H-SWAP then swap twin lines back.

    Returns the number of twin-line swaps.
    """
    l = bld.shape[0]
    bld.hswap(Q)
    for i in range(1, l):
        up, down = bld.fresh("line"), bld.fresh("line")
        bld.prep(up, "X")
        bld.prep(down, "X")
        line_teleport(bld, Q, up, -i)
        line_teleport(bld, Q, down, i)
        bld.translate(up, i, -i)
        bld.translate(down, -i, i)
        line_teleport(bld, up, Q, i)
        line_teleport(bld, down, Q, -i)
        bld.measure(up, "X")
        bld.measure(down, "X")
    return l - 1


def parallel_hadamard(l: int, d: int = 1) -> GadgetSchedule:
    bld = LogicalBuilder((l, l), d, name="parallel-hadamard")
    n = hadamard_all(bld, "D")
    s = bld.sched
    s.notes["line_swaps"] = n
    s.declared_effect = ["H on all logicals"]
    return s


def shift_cyclic(bld: LogicalBuilder, Q: str) -> None:
    """Row-major cyclic shift: the logical at index ``t`` moves to ``t + 1 mod k``."""
    l1, l2 = bld.shape
    if l1 * l2 == 1:
        return
    bld.translate(Q, 0, 1)
    if l1 == 1:
        return
    h = bld.fresh("shift")
    bld.prep(h, "X")
    col = [(i, 0) for i in range(l1)]
    teleport(bld, Q, h, col)
    bld.translate(h, 1, 0)
    teleport(bld, h, Q, col)
    bld.measure(h, "X")


def cyclic_shift(shape: tuple[int, int], d: int = 1) -> GadgetSchedule:
    bld = LogicalBuilder(shape, d, name="cyclic-shift")
    shift_cyclic(bld, "D")
    s = bld.sched
    k = shape[0] * shape[1]
    s.declared_effect = [f"logical {t + 1} -> {(t + 1) % k + 1}" for t in range(k)]
    return s


def ghz_schedule(M: int, N: int, d: int = 1) -> GadgetSchedule:
    """``|+>`` preparation then four Z-GPPMs: row chains then a chain down column 1."""
    bld = LogicalBuilder((M, N), d, name="ghz", data_blocks=())
    bld.prep("Q", "X")
    rows = singletons(range(M))
    bld.gppm(("Q",), "Z", rows, [[j, j + 1] for j in range(0, N - 1, 2)])
    bld.gppm(("Q",), "Z", rows, [[j, j + 1] for j in range(1, N - 1, 2)])
    bld.gppm(("Q",), "Z", [[i, i + 1] for i in range(0, M - 1, 2)], [[0]])
    bld.gppm(("Q",), "Z", [[i, i + 1] for i in range(1, M - 1, 2)], [[0]])
    s = bld.sched
    s.notes["output_block"] = "Q"
    s.declared_effect = ["X" * (M * N)] + [f"Z{t}Z{t + 1}" for t in range(1, M * N)]
    return s


def ghz_group(M: int, N: int) -> np.ndarray:
    """``(x | z)`` generators of the GHZ stabilizer group in row-major order."""
    k = M * N
    X = np.zeros((k, 2 * k), np.uint8)
    X[0, :k] = 1
    for t in range(k - 1):
        X[t + 1, k + t] = X[t + 1, k + t + 1] = 1
    return X


def ghz_certified(sched: GadgetSchedule) -> bool:
    """Simulate from scratch and compare the group on the output block with :func:`ghz_group`."""
    out = sched.notes.get("output_block", "Q")
    m = LogicalMachine(sched.blocks).run(sched)
    if set(m.live) != {out}:
        return False
    M, N = sched.blocks[out]
    return gf2.rowspace_equal(m.tab.subgroup_on(m.live[out].ravel()), ghz_group(M, N))


def permutation_circuit(shape: tuple[int, int], perm: Sequence[int]) -> LogicalCircuit:
    """SWAP network sending the logical at index ``t`` to index ``perm[t]``."""
    k = shape[0] * shape[1]
    where = list(range(k))  # where[t] = current index of logical t
    at = list(range(k))     # at[p] = logical at index p
    gates = []
    coord = lambda p: (p // shape[1], p % shape[1])
    for t in range(k):
        p, q = where[t], perm[t]
        if p != q:
            gates.append(("SWAP", coord(p), coord(q)))
            u = at[q]
            at[p], at[q] = u, t
            where[u], where[t] = p, q
    return LogicalCircuit(tuple(shape), gates)
