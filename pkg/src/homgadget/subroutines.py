"""Schedules for GHZ preparation, magic-state distillation and consumption, and the adder.

Only the Clifford skeleton of these subroutines carries semantics. Magic-state
inputs are prepared as ``|+>`` stand-ins followed by an opaque annotation, and
outcome-dependent (reactive) choices are drawn from a seeded generator.
"""

from __future__ import annotations

import itertools
import math
from typing import Sequence

import numpy as np

from .logical_gadgets import (LogicalBuilder, build_i_state, ghz_schedule, hadamard_all, shift_cyclic,
                              singletons, teleport_passes)
from .schedule import GadgetSchedule, cycle_count

__all__ = ["ghz_schedule", "reactive_prep", "msd_round_schedule", "msi_schedule", "adder_schedule",
           "grid_for", "CUBE_ROTATIONS"]

# Z-type rotation supports of the 8-to-CCZ round: every subset of the three
# output blocks, each joined with the check block.
CUBE_ROTATIONS = [tuple(s) + ("chk",) for r in range(4) for s in itertools.combinations(("o1", "o2", "o3"), r)]


def grid_for(k: int) -> tuple[int, int]:
    """Smallest square grid holding ``k`` logicals; unused cells stay idle."""
    l = math.isqrt(k)
    l = l if l * l >= k else l + 1
    return (l, l)


def _cells_pattern(bld: LogicalBuilder, rng: np.random.Generator, diagonal: bool) -> list[tuple[int, int]]:
    l1, l2 = bld.shape
    cells = [(i, i) for i in range(min(l1, l2))] if diagonal else [(i, j) for i in range(l1) for j in range(l2)]
    keep = rng.random(len(cells)) < 0.5
    return [c for c, f in zip(cells, keep) if f]


def _magic(bld: LogicalBuilder, b: str, label: str) -> None:
    bld.prep(b, "X")
    bld.annotate(f"inject {label}", (b,), cycles=bld.d)


def reactive_prep(bld: LogicalBuilder, R: str, plus_cells: Sequence[tuple[int, int]], mode: str) -> None:
    """Prepare ``R`` with ``|+>`` on ``plus_cells`` and ``|i>`` on the remaining used cells.

    Diagonal mode: ``|+>`` prep, fold CZ-S, one X-GPPM on the selected diagonal
    indices. Full mode: ``|i>`` everywhere via diagonal filling and translations,
    then X-GPPM passes on the selected cells.
    """
    if mode == "diagonal":
        bld.prep(R, "X")
        bld.czs(R)
        idx = sorted({i for i, _ in plus_cells})
        bld.gppm((R,), "X", singletons(idx), singletons(idx))
        return
    build_i_state(bld, R, bld.fresh("ipart"))
    for r, c in teleport_passes(plus_cells)[1] if plus_cells else []:
        bld.gppm((R,), "X", singletons(r), singletons(c))


def _bell_measure(bld: LogicalBuilder, a: str, b: str) -> None:
    bld.tcnot(a, b)
    bld.measure(a, "X")
    bld.measure(b, "Z")


def _check_mode(mode: str) -> None:
    if mode not in ("diagonal", "full"):
        raise ValueError("mode is 'diagonal' or 'full'")


def msd_round(bld: LogicalBuilder, mode: str, rng: np.random.Generator, outputs=("o1", "o2", "o3")) -> dict:
    """One 8-to-CCZ round on whole blocks; returns the reactive-prep step ranges."""
    rename = dict(zip(("o1", "o2", "o3"), outputs))
    for o in outputs:
        bld.prep(o, "X")
    chk = bld.fresh("chk")
    _magic(bld, chk, "T")
    stages = []
    diag = mode == "diagonal"
    everything = lambda: (singletons(range(bld.shape[0])), singletons(range(bld.shape[1])))
    for rot in CUBE_ROTATIONS:
        blocks = [chk if b == "chk" else rename[b] for b in rot]
        T = bld.fresh("tgate")
        _magic(bld, T, "T")
        bld.gppm(tuple(blocks) + (T,), "Z", *everything())
        R = bld.fresh("react")
        start = len(bld.sched.steps)
        reactive_prep(bld, R, _cells_pattern(bld, rng, diag), mode)
        stages.append((start, len(bld.sched.steps)))
        _bell_measure(bld, T, R)
    bld.measure(chk, "X")
    bld.annotate("CCZ output", tuple(outputs), cycles=0)
    return {"reactive_prep": stages}


def msd_round_schedule(k: int, mode: str = "diagonal", d: int = 1, seed: int = 0) -> GadgetSchedule:
    _check_mode(mode)
    shape = grid_for(k)
    if k == 0:
        return GadgetSchedule(blocks={}, level="logical", d=d, data_blocks=(), name="msd-round")
    if mode == "diagonal" and shape[0] != shape[1]:
        raise ValueError("diagonal mode needs a square grid")
    bld = LogicalBuilder(shape, d, name=f"msd-round-{mode}", data_blocks=())
    info = msd_round(bld, mode, np.random.default_rng(seed))
    s = bld.sched
    s.notes.update(info, rotations=len(CUBE_ROTATIONS), mode=mode)
    s.declared_effect = ["CCZ states on blocks o1, o2, o3 (annotated)"]
    return s


def _transversal_h(bld: LogicalBuilder, b: str, mode: str) -> None:
    if mode == "diagonal":
        bld.hswap(b)
    else:
        hadamard_all(bld, b)


def msi_consume(bld: LogicalBuilder, data: Sequence[str], mode: str, rng: np.random.Generator,
                ccz: Sequence[str] | None = None) -> list[str]:
    """Consume CCZ blocks on three data blocks; returns the six ancilla block ids."""
    diag = mode == "diagonal"
    everything = (singletons(range(bld.shape[0])), singletons(range(bld.shape[1])))
    if ccz is None:
        ccz = [bld.fresh("ccz") for _ in range(3)]
        for c in ccz:
            _magic(bld, c, "CCZ")
    for x, c in zip(data, ccz):
        bld.gppm((x, c), "Z", *everything)
        bld.measure(c, "X")
    ancillas = []
    for x, y in itertools.combinations(data, 2):
        a, b = bld.fresh("rcz"), bld.fresh("rcz")
        bld.prep(a, "Z")
        bld.prep(b, "Z")
        bld.tcnot(x, a)
        bld.tcnot(y, b)
        _transversal_h(bld, a, mode)
        ancillas += [a, b]
    for a, b in zip(ancillas[::2], ancillas[1::2]):
        for blk in (a, b):
            zc = _cells_pattern(bld, rng, diag)
            xc = _cells_pattern(bld, rng, diag)
            for basis, cells in (("Z", zc), ("X", xc)):
                idx_r = sorted({i for i, _ in cells})
                idx_c = sorted({j for _, j in cells})
                bld.gppm((blk,), basis, singletons(idx_r), singletons(idx_c))
        _bell_measure(bld, a, b)
    return ancillas


def msi_schedule(k: int, mode: str = "diagonal", d: int = 1, seed: int = 0) -> GadgetSchedule:
    _check_mode(mode)
    shape = grid_for(k)
    bld = LogicalBuilder(shape, d, name=f"msi-{mode}", data_blocks=("x", "y", "z"))
    anc = msi_consume(bld, ("x", "y", "z"), mode, np.random.default_rng(seed))
    s = bld.sched
    s.notes.update(ancilla_blocks=anc, mode=mode)
    s.declared_effect = ["Toffoli on (x, y, z) per logical (annotated)"]
    return s


def adder_schedule(k: int, d: int = 1, seed: int = 0) -> GadgetSchedule:
    """Parallel ripple-carry adder over blocks a, b (inputs), c, d, e and six reactive ancillas.

    The parallel part is costed by the cycle model; the sequential tail of
    reactive measurements is one logical cycle (``d`` code cycles) per round.
    """
    shape = grid_for(k)
    rng = np.random.default_rng(seed)
    bld = LogicalBuilder(shape, d, name="adder", data_blocks=("a", "b"))
    l1, l2 = shape
    mode = "full"
    # carries c and bridges e as Bell pairs; carry c_0 is reset by a single-cell Z-GPPM
    bld.prep("c", "X")
    bld.prep("e", "Z")
    bld.tcnot("c", "e")
    bld.gppm(("c",), "Z", [[0]], [[0]])
    bld.tcnot("c", "a")
    bld.tcnot("c", "b")
    toffolis = k - 1
    ancillas: list[str] = []
    if toffolis > 0:
        ccz = ("m1", "m2", "m3")
        msd_round(bld, mode, rng, outputs=ccz)
        bld.prep("dd", "X")
        ancillas = msi_consume(bld, ("a", "b", "dd"), mode, rng, ccz=ccz)
        bld.tcnot("c", "dd")
    start_shift = len(bld.sched.steps)
    shift_cyclic(bld, "e")
    shift_steps = (start_shift, len(bld.sched.steps))
    bld.tcnot("a", "b")
    if toffolis > 0:
        bld.tcnot("dd", "e")
        bld.measure("dd", "X")
    bld.measure("e", "Z")
    bld.measure("c", "X")
    parallel = cycle_count(bld.sched)
    tail_rounds = max(k - 1, 0)
    for r in range(tail_rounds):
        bld.annotate(f"reactive measurement round {r + 1}", tuple(ancillas[:2]) or ("a",),
                     cycles=d, clifford=True)
    s = bld.sched
    total = cycle_count(s)
    root = math.sqrt(k) * math.log2(k) if k > 1 else 0.0
    par_logical = parallel[1]
    tail_logical = total[1] - par_logical
    s.notes.update(
        toffolis=toffolis,
        shift_steps=shift_steps,
        ancilla_blocks=ancillas,
        parallel_logical_cycles=par_logical,
        tail_logical_cycles=tail_logical,
        c1=par_logical / root if root else 0.0,
        c2=tail_logical / k if k else 0.0,
        decomposition=f"{par_logical} + {tail_logical} = c1*sqrt(k)*log2(k) + c2*k",
    )
    s.declared_effect = ["|a>|b> -> |a>|a+b> (Clifford skeleton, Toffolis annotated)"]
    return s
