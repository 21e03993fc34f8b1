"""Physical gadget schedules built from chain maps, plus their certification.

Measurement gadgets follow the Steane pattern: prepare an ancilla code,
couple it to the data with the transversal CNOT induced by a chain map, and
read it out. Grid and cube patterns insert mask stages that reset or
GHZ-link lines of the ancilla before it touches the data.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import gf2
from .classical import ClassicalCode, check_hyperedges
from .complexes import CssCode, hgp, homological_3d
from .homomorphism import (
    ChainMap,
    ClassicalChainMap,
    lift_to_product,
    mask_modification,
    rep_modification,
    translation_automorphism,
)
from .schedule import GadgetSchedule, GadgetStep, cnot_step, measure_step, prep_step
from .verify import (
    EffectReport,
    certify_measurement,
    grid_products,
    logical_action,
)

Edges = Sequence[Sequence[int]]


@dataclass
class _Layout:
    transposed: tuple[bool, ...]
    builder: Callable[[Sequence[ClassicalCode]], CssCode]
    qubit_grade: int


def _layout(code: CssCode) -> _Layout:
    if code.kind == "hgp":
        return _Layout((True, False), lambda cs: hgp(*cs, record_distance=False, strict=False), 1)
    if code.kind == "3d":
        return _Layout((False, False, True), lambda cs: homological_3d(*cs, strict=False), 2)
    raise ValueError(f"no gadget layout for {code.kind} codes")


def _lift(code: CssCode, lay: _Layout, bases: Sequence[ClassicalCode], mods: dict) -> ChainMap:
    maps = [mods[i] if i in mods else ClassicalChainMap.identity(c) for i, c in enumerate(bases)]
    reverse = all(lay.transposed[i] for i in mods) if mods else None
    return lift_to_product(maps, lay.transposed, lay.builder, lay.qubit_grade, reverse=reverse)


def _coupling(m: ChainMap, original: str, modified: str) -> tuple[str, str, list]:
    """(control block, target block, pairs) of the CNOT induced by ``m``."""
    if m.direction == "forward":  # modified -> original, controls in original
        return original, modified, m.cnot_pairs()
    return modified, original, m.cnot_pairs()


def steane_measurement(code: CssCode, basis: str, anc_mods: dict, mask_stages: Sequence[dict],
                       declared: list[np.ndarray], d: int | None = None, name: str = "") -> GadgetSchedule:
    """Generic ancilla + masks + transversal coupling measurement schedule.

    ``anc_mods`` maps factor index to a classical map modifying that factor of
    the ancilla; each mask stage does the same relative to the ancilla.
    """
    lay = _layout(code)
    d = d if d is not None else (code.d or 1)
    bases = list(code.bases)
    amap = _lift(code, lay, bases, {i: f for i, (_, f) in anc_mods.items()})
    anc_code = amap.source if amap.direction == "forward" else amap.target
    anc_bases = [anc_mods[i][0] if i in anc_mods else c for i, c in enumerate(bases)]
    other = "X" if basis == "Z" else "Z"
    blocks: dict[str, CssCode] = {"data": code, "anc": anc_code}
    sched = GadgetSchedule(blocks, d=d, name=name, declared_effect=declared)
    sched.add(prep_step("anc", basis, d))
    for s_idx, stage in enumerate(mask_stages):
        mmap = _lift(anc_code, lay, anc_bases, {i: f for i, (_, f) in stage.items()})
        mask_code = mmap.source if mmap.direction == "forward" else mmap.target
        if mask_code.k == 0:
            continue
        mb = f"mask{s_idx}"
        blocks[mb] = mask_code
        c, t, pairs = _coupling(mmap, "anc", mb)
        want_ctrl = mb if basis == "Z" else "anc"
        if c != want_ctrl:
            raise AssertionError("mask coupling runs in the wrong direction")
        sched.add(prep_step(mb, other, d))
        sched.add(cnot_step(c, t, pairs))
        sched.add(measure_step(mb, other))
    c, t, pairs = _coupling(amap, "data", "anc")
    if c != ("data" if basis == "Z" else "anc"):
        raise AssertionError("data coupling runs in the wrong direction")
    data_q = sorted({p[0] if c == "data" else p[1] for p in pairs})
    coords = code.coords_qubits
    mask = tuple(coords[q] for q in data_q) if coords is not None else None
    sched.add(cnot_step(c, t, pairs, mask=mask))
    sched.add(measure_step("anc", basis))
    sched.notes["ancilla"] = {"n": anc_code.n, "k": anc_code.k}
    return sched


def _all_singletons(k: int) -> list[list[int]]:
    return [[i] for i in range(k)]


def horizontal_ppms(code: CssCode, Eh: Edges, d: int | None = None) -> GadgetSchedule:
    """Measure ``prod_{j in e} Z_{i,j}`` for every row ``i`` and hyperedge ``e``."""
    C1, C2 = code.bases
    Eh = check_hyperedges(Eh, C2.k)
    C2p, f2 = rep_modification(C2, Eh)
    shape = (C1.k, C2.k)
    declared = grid_products(shape, "Z", [_all_singletons(C1.k), Eh])
    return steane_measurement(code, "Z", {1: (C2p, f2)}, [], declared, d, name="horizontal_ppms")


def grid_ppms(code: CssCode, basis: str, Er: Edges, Ec: Edges, d: int | None = None) -> GadgetSchedule:
    """Measure ``prod_{q in e_r x e_c} P_q`` for every pair of row and column hyperedges."""
    C1, C2 = code.bases
    Er = check_hyperedges(Er, C1.k)
    Ec = check_hyperedges(Ec, C2.k)
    shape = (C1.k, C2.k)
    declared = grid_products(shape, basis, [Er, Ec])
    if basis == "Z":
        anc = {1: rep_modification(C2, Ec)}
        masks = [{0: mask_modification(C1, Er)}]
    elif basis == "X":
        anc = {0: rep_modification(C1, Er)}
        masks = [{1: mask_modification(C2, Ec)}]
    else:
        raise ValueError("basis must be X or Z")
    return steane_measurement(code, basis, anc, masks, declared, d, name=f"grid_ppms_{basis}")


def cube_ppms(code: CssCode, basis: str, Ex: Edges, Ey: Edges, Ez: Edges, d: int | None = None) -> GadgetSchedule:
    """3D analogue of :func:`grid_ppms` on a code from :func:`homological_3d`."""
    if code.kind != "3d":
        raise ValueError("cube PPMs need a 3D product code")
    C1, C2, C3 = code.bases
    Ex, Ey, Ez = check_hyperedges(Ex, C1.k), check_hyperedges(Ey, C2.k), check_hyperedges(Ez, C3.k)
    declared = grid_products((C1.k, C2.k, C3.k), basis, [Ex, Ey, Ez])
    if basis == "Z":
        anc = {0: rep_modification(C1, Ex), 1: rep_modification(C2, Ey)}
        masks = [{2: mask_modification(C3, Ez)}]
    elif basis == "X":
        anc = {2: rep_modification(C3, Ez)}
        masks = [{0: mask_modification(C1, Ex)}, {1: mask_modification(C2, Ey)}]
    else:
        raise ValueError("basis must be X or Z")
    return steane_measurement(code, basis, anc, masks, declared, d, name=f"cube_ppms_{basis}")


# -- unitary gadgets -----------------------------------------------------------------


def _grid_perm_matrix(shape: tuple[int, int], f) -> np.ndarray:
    """Symplectic matrix of the logical relabeling ``q -> f(q)`` (both letters)."""
    k = shape[0] * shape[1]
    P = gf2.zeros(k, k)
    for i, j in itertools.product(range(shape[0]), range(shape[1])):
        a, b = f(i, j)
        P[i * shape[1] + j, a * shape[1] + b] = 1
    return np.block([[P, gf2.zeros(k, k)], [gf2.zeros(k, k), P]])


def translation_gadget(code: CssCode, i: int, j: int) -> GadgetSchedule:
    m = translation_automorphism(code, i, j)
    k1, k2 = code.logicals.grid_shape
    sched = GadgetSchedule({"data": code}, d=code.d or 1, name=f"translate_{i}_{j}")
    sched.add(GadgetStep("Permute", ("data",), params={"perm": m.as_permutation(), "shift": (i, j)}))
    sched.declared_effect = [_grid_perm_matrix((k1, k2), lambda a, b: ((a + i) % k1, (b + j) % k2))]
    return sched


def _require_symmetric(code: CssCode) -> None:
    if not code.symmetric:
        raise ValueError("fold-transversal gates need a symmetric HGP code")


def hswap_action(k1: int) -> np.ndarray:
    """``X_{ij} -> Z_{ji}`` and ``Z_{ij} -> X_{ji}``."""
    k = k1 * k1
    T = _grid_perm_matrix((k1, k1), lambda a, b: (b, a))[:k, :k]
    Zb = gf2.zeros(k, k)
    return np.block([[Zb, T], [T, Zb]])


def czs_action(k1: int) -> np.ndarray:
    """``X_{ij} -> X_{ij} Z_{ji}``, ``Z`` fixed."""
    k = k1 * k1
    T = _grid_perm_matrix((k1, k1), lambda a, b: (b, a))[:k, :k]
    return np.block([[gf2.eye(k), T], [gf2.zeros(k, k), gf2.eye(k)]])


def fold_hswap(code: CssCode) -> GadgetSchedule:
    _require_symmetric(code)
    sched = GadgetSchedule({"data": code}, d=code.d or 1, name="fold_hswap")
    sched.add(GadgetStep("FoldHSwap", ("data",)))
    sched.declared_effect = [hswap_action(code.logicals.grid_shape[0])]
    return sched


def fold_czs(code: CssCode) -> GadgetSchedule:
    _require_symmetric(code)
    sched = GadgetSchedule({"data": code}, d=code.d or 1, name="fold_czs")
    sched.add(GadgetStep("FoldCZS", ("data",)))
    sched.declared_effect = [czs_action(code.logicals.grid_shape[0])]
    return sched


@dataclass
class UnitaryReport:
    certified: bool
    action: np.ndarray
    mismatches: list[str]

    def to_json_obj(self) -> dict:
        return {"certified": self.certified, "action": self.action.tolist(), "mismatches": self.mismatches}


def certify_unitary(sched: GadgetSchedule) -> UnitaryReport:
    code = sched.blocks["data"]
    mism = []
    try:
        M = logical_action(code, sched)
    except AssertionError as exc:
        sched.certified = False
        return UnitaryReport(False, gf2.zeros(0, 0), [str(exc)])
    want = sched.declared_effect[0]
    if not np.array_equal(M, want):
        mism.append("logical action differs from the declared symplectic map")
    sched.certified = not mism
    return UnitaryReport(not mism, M, mism)


def certify(sched: GadgetSchedule) -> EffectReport | UnitaryReport:
    """Dispatch on schedule shape: measurement gadgets vs unitary gadgets."""
    if any(s.kind.startswith("Measure") for s in sched.steps):
        return certify_measurement(sched)
    return certify_unitary(sched)
