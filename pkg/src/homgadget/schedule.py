"""Gadget schedules, their steps, and the cycle cost model.

Physical steps act on the qubits of code blocks and are what the verifier
conjugates through. Logical steps act on encoded qubits and are what the
compiler emits; each one names the physical gadget that realizes it.

Cost model (code cycles). Preparations cost ``d``; every other primitive is
quantized to one cycle. A GPPM additionally carries an ``offline`` lead of
``d + 2`` cycles for its ancilla and mask preparation, which may overlap earlier
work because ancilla blocks are fresh, and a one-cycle tail for the ancilla
readout that does not block the data. Makespan is the ASAP critical path with
program order enforced per block.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

import numpy as np

PHYSICAL_KINDS = {"PrepZ", "PrepX", "CNOT", "MeasureZ", "MeasureX", "Permute", "FoldHSwap", "FoldCZS"}
LOGICAL_KINDS = {"LPrep", "LMeasure", "GPPM", "TCNOT", "HSwap", "CZS", "Translate", "Annotation"}


@dataclass
class GadgetStep:
    kind: str
    blocks: tuple[str, ...]
    cycles: int = 1
    lead: int = 0
    tail: int = 0
    mask: tuple | None = None
    params: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in PHYSICAL_KINDS | LOGICAL_KINDS:
            raise ValueError(f"unknown step kind {self.kind!r}")
        self.blocks = tuple(self.blocks)

    @property
    def serial_cost(self) -> int:
        return self.lead + self.cycles + self.tail

    def to_json_obj(self, t: int) -> dict:
        obj: dict[str, Any] = {"t": t, "op": self.kind, "blocks": list(self.blocks), "cycles": self.serial_cost}
        if self.mask is not None:
            obj["mask"] = [[int(x) + 1 for x in c] for c in self.mask]
        extra = {k: _jsonable(v) for k, v in self.params.items() if k not in ("pairs", "perm")}
        if extra:
            obj["params"] = extra
        return obj


def _jsonable(v):
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (np.integer,)):
        return int(v)
    return v


@dataclass
class GadgetSchedule:
    """Ordered steps over named blocks.

    ``blocks`` maps ids to codes (physical schedules) or to logical grid shapes
    (logical schedules). ``data_blocks`` are the blocks holding the input state.
    """

    blocks: dict[str, Any]
    steps: list[GadgetStep] = field(default_factory=list)
    d: int = 1
    level: str = "physical"
    data_blocks: tuple[str, ...] = ("data",)
    declared_effect: list = field(default_factory=list)
    certified: bool = False
    name: str = ""
    notes: dict[str, Any] = field(default_factory=dict)

    def add(self, step: GadgetStep) -> GadgetStep:
        kinds = PHYSICAL_KINDS if self.level == "physical" else LOGICAL_KINDS
        if step.kind not in kinds:
            raise ValueError(f"{step.kind} is not a {self.level} step")
        for b in step.blocks:
            if b not in self.blocks:
                raise KeyError(f"unknown block {b!r}")
        self.steps.append(step)
        return step

    def extend(self, other: "GadgetSchedule", rename: dict[str, str] | None = None) -> None:
        """Append ``other``'s steps, optionally renaming its blocks."""
        rename = rename or {}
        for b, v in other.blocks.items():
            self.blocks.setdefault(rename.get(b, b), v)
        for s in other.steps:
            self.steps.append(GadgetStep(s.kind, tuple(rename.get(b, b) for b in s.blocks),
                                         s.cycles, s.lead, s.tail, s.mask, dict(s.params)))

    def count(self, kind: str) -> int:
        return sum(1 for s in self.steps if s.kind == kind)

    @property
    def total_cycles(self) -> int:
        return cycle_count(self)[0]

    @property
    def logical_cycles(self) -> int:
        return cycle_count(self)[1]

    def summary(self) -> dict:
        code_c, log_c = cycle_count(self)
        return {
            "summary": True,
            "name": self.name,
            "level": self.level,
            "d": self.d,
            "steps": len(self.steps),
            "code_cycles": code_c,
            "serial_code_cycles": serial_cycles(self),
            "logical_cycles": log_c,
            "blocks": {b: _block_label(v) for b, v in self.blocks.items()},
            "declared_effect": [_jsonable(e) if isinstance(e, np.ndarray) else str(e) for e in self.declared_effect],
            "certified": self.certified,
        }

    def to_jsonl(self) -> str:
        lines = [json.dumps(s.to_json_obj(t)) for t, s in enumerate(self.steps)]
        lines.append(json.dumps(self.summary()))
        return "\n".join(lines) + "\n"


def _block_label(v) -> Any:
    if hasattr(v, "n") and hasattr(v, "HX"):
        return {"n": v.n, "k": v.k}
    return _jsonable(v)


def makespan(sched: GadgetSchedule) -> int:
    """ASAP critical-path length in code cycles."""
    free: dict[str, int] = {}
    end = 0
    for s in sched.steps:
        start = max([s.lead] + [free.get(b, 0) for b in s.blocks])
        busy_end = start + s.cycles
        for b in s.blocks:
            free[b] = busy_end
        end = max(end, busy_end + s.tail)
    return end


def serial_cycles(sched: GadgetSchedule) -> int:
    return sum(s.serial_cost for s in sched.steps)


def cycle_count(sched: GadgetSchedule) -> tuple[int, int]:
    """(code cycles on the critical path, logical cycles = ceil(code / d))."""
    c = makespan(sched)
    return c, math.ceil(c / sched.d) if c else 0


# -- step constructors -----------------------------------------------------------


def prep_step(block: str, basis: str, d: int) -> GadgetStep:
    return GadgetStep("PrepZ" if basis == "Z" else "PrepX", (block,), cycles=d)


def measure_step(block: str, basis: str) -> GadgetStep:
    return GadgetStep("MeasureZ" if basis == "Z" else "MeasureX", (block,))


def cnot_step(control: str, target: str, pairs: Sequence[tuple[int, int]],
              mask: Iterable[tuple[int, ...]] | None = None) -> GadgetStep:
    arr = np.asarray(list(pairs), dtype=int).reshape(-1, 2)
    return GadgetStep("CNOT", (control, target), mask=tuple(mask) if mask is not None else None,
                      params={"pairs": arr})


def gppm_step(blocks: Sequence[str], basis: str, Er, Ec, d: int) -> GadgetStep:
    Er = [list(map(int, e)) for e in Er]
    Ec = [list(map(int, e)) for e in Ec]
    return GadgetStep("GPPM", tuple(blocks), cycles=1, lead=d + 2, tail=1,
                      params={"basis": basis, "Er": Er, "Ec": Ec})
