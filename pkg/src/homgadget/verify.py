"""Exact verification over GF(2): Pauli algebra, schedule conjugation, and
stabilizer simulation at the physical (sign-free) and logical (signed) levels.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import gf2
from .complexes import CssCode
from .schedule import GadgetSchedule, GadgetStep


# -- Paulis --------------------------------------------------------------------


@dataclass
class Pauli:
    """``i^phase X^x Z^z`` on ``n`` qubits (phase optional bookkeeping)."""

    x: np.ndarray
    z: np.ndarray
    phase: int = 0

    def __post_init__(self):
        self.x = gf2.as_vec(self.x)
        self.z = gf2.as_vec(self.z)
        if self.x.size != self.z.size:
            raise ValueError("x and z parts differ in length")

    @property
    def n(self) -> int:
        return int(self.x.size)

    @classmethod
    def identity(cls, n: int) -> "Pauli":
        return cls(np.zeros(n, np.uint8), np.zeros(n, np.uint8))

    @classmethod
    def from_string(cls, s: str) -> "Pauli":
        x = np.array([c in "XY" for c in s], dtype=np.uint8)
        z = np.array([c in "ZY" for c in s], dtype=np.uint8)
        return cls(x, z)

    def __str__(self) -> str:
        return "".join("IXZY"[a + 2 * b] for a, b in zip(self.x, self.z))

    def __mul__(self, other: "Pauli") -> "Pauli":
        return Pauli(self.x ^ other.x, self.z ^ other.z, (self.phase + other.phase) % 4)

    def vec(self) -> np.ndarray:
        return np.concatenate([self.x, self.z])

    @property
    def support(self) -> list[int]:
        return np.nonzero(self.x | self.z)[0].tolist()


def commutes(P: Pauli, Q: Pauli) -> bool:
    return not (int(P.x @ Q.z.astype(np.int64)) + int(P.z @ Q.x.astype(np.int64))) % 2


def symplectic_inner(A, B) -> np.ndarray:
    """Pairwise commutation matrix between rows of ``A`` and ``B`` in ``(x|z)`` form."""
    A, B = gf2.as_bin(A), gf2.as_bin(B)
    n = A.shape[1] // 2
    return gf2.matmul(A[:, :n], B[:, n:].T) ^ gf2.matmul(A[:, n:], B[:, :n].T)


def stabilizer_membership(P: Pauli, code: CssCode) -> bool:
    """True iff ``P`` equals a stabilizer up to phase (CSS split membership)."""
    return gf2.in_rowspace(code.HX, P.x) and gf2.in_rowspace(code.HZ, P.z)


# -- physical layout --------------------------------------------------------------


class Layout:
    """Concatenated qubit indices of the blocks of a schedule (plus references)."""

    def __init__(self, blocks: dict[str, CssCode], n_ref: int = 0):
        self.offsets: dict[str, slice] = {}
        pos = 0
        for b, code in blocks.items():
            self.offsets[b] = slice(pos, pos + code.n)
            pos += code.n
        self.ref = slice(pos, pos + n_ref)
        self.N = pos + n_ref

    def idx(self, block: str) -> np.ndarray:
        s = self.offsets[block]
        return np.arange(s.start, s.stop)


def _hgp_sides(code: CssCode) -> tuple[int, int, int]:
    C1, C2 = code.bases
    if C1.n != C2.n or C1.r != C2.r:
        raise ValueError("fold gates need a symmetric HGP code")
    return C1.n, C1.r, C1.n * C1.n


def fold_transpose(code: CssCode) -> np.ndarray:
    """Qubit permutation ``(i, j) -> (j, i)`` on both square blocks."""
    n, r, m = _hgp_sides(code)
    perm = np.arange(code.n)
    for a in range(n):
        for b in range(n):
            perm[a * n + b] = b * n + a
    for c in range(r):
        for e in range(r):
            perm[m + c * r + e] = m + e * r + c
    return perm


def fold_diagonal(code: CssCode) -> np.ndarray:
    n, r, m = _hgp_sides(code)
    return np.array([a * n + a for a in range(n)] + [m + c * r + c for c in range(r)])


class GroupSim:
    """Sign-free stabilizer group on ``N`` qubits; rows are ``(x | z)`` generators."""

    def __init__(self, N: int):
        self.N = N
        # every qubit starts in |0>
        self.X = np.zeros((N, N), dtype=np.uint8)
        self.Z = np.eye(N, dtype=np.uint8)

    # unitary updates (columns)
    def cnot(self, ctrl: np.ndarray, tgt: np.ndarray) -> None:
        """Commuting CNOTs; ``ctrl``/``tgt`` index disjoint qubit sets or commuting fan-outs."""
        ctrl, tgt = np.asarray(ctrl), np.asarray(tgt)
        if ctrl.size == 0:
            return
        if len(set(tgt.tolist())) == tgt.size and len(set(ctrl.tolist())) == ctrl.size:
            self.X[:, tgt] ^= self.X[:, ctrl]
            self.Z[:, ctrl] ^= self.Z[:, tgt]
            return
        xc = self.X[:, ctrl].copy()
        zt = self.Z[:, tgt].copy()
        for t, (c, q) in enumerate(zip(ctrl, tgt)):
            self.X[:, q] ^= xc[:, t]
            self.Z[:, c] ^= zt[:, t]

    def permute(self, idx: np.ndarray, perm: np.ndarray) -> None:
        """Qubit ``idx[a]`` moves to ``idx[perm[a]]``."""
        for M in (self.X, self.Z):
            old = M[:, idx].copy()
            M[:, idx[perm]] = old

    def hadamard(self, qs: np.ndarray) -> None:
        tmp = self.X[:, qs].copy()
        self.X[:, qs] = self.Z[:, qs]
        self.Z[:, qs] = tmp

    def phase(self, qs: np.ndarray) -> None:
        self.Z[:, qs] ^= self.X[:, qs]

    def cz(self, a: np.ndarray, b: np.ndarray) -> None:
        xa, xb = self.X[:, a].copy(), self.X[:, b].copy()
        self.Z[:, a] ^= xb
        self.Z[:, b] ^= xa

    # measurements
    def measure(self, px: np.ndarray, pz: np.ndarray) -> bool:
        """Measure the Pauli ``(px|pz)``; returns True when the outcome was random."""
        anti = np.nonzero((gf2.matmul(self.X, pz) ^ gf2.matmul(self.Z, px)).astype(bool))[0]
        if anti.size == 0:
            return False
        p = anti[0]
        rest = anti[1:]
        self.X[rest] ^= self.X[p]
        self.Z[rest] ^= self.Z[p]
        self.X[p] = px
        self.Z[p] = pz
        return True

    def measure_single(self, q: int, basis: str) -> None:
        col = self.X[:, q] if basis == "Z" else self.Z[:, q]
        anti = np.nonzero(col)[0]
        if anti.size == 0:
            return
        p = anti[0]
        rest = anti[1:]
        self.X[rest] ^= self.X[p]
        self.Z[rest] ^= self.Z[p]
        self.X[p] = 0
        self.Z[p] = 0
        (self.Z if basis == "Z" else self.X)[p, q] = 1

    def measure_block(self, qs: Iterable[int], basis: str) -> None:
        for q in qs:
            self.measure_single(int(q), basis)

    def reset(self, qs: np.ndarray, gens_x: np.ndarray, gens_z: np.ndarray) -> None:
        """Discard qubits ``qs`` and replace them by the pure state with the given generators.

        ``gens_*`` are given on ``qs`` only and must define a pure state there.
        """
        qs = np.asarray(qs)
        self.measure_block(qs, "Z")
        rest = np.setdiff1d(np.arange(self.N), qs)
        R = self.subgroup_on(rest)
        if R.shape[0] + gens_x.shape[0] != self.N:
            raise AssertionError("reset would leave a mixed state")
        m = R.shape[0]
        self.X = gf2.zeros(self.N, self.N)
        self.Z = gf2.zeros(self.N, self.N)
        self.X[np.ix_(np.arange(m), rest)] = R[:, : rest.size]
        self.Z[np.ix_(np.arange(m), rest)] = R[:, rest.size:]
        self.X[np.ix_(np.arange(m, self.N), qs)] = gens_x
        self.Z[np.ix_(np.arange(m, self.N), qs)] = gens_z

    def matrix(self) -> np.ndarray:
        return np.hstack([self.X, self.Z])

    def subgroup_on(self, keep: np.ndarray) -> np.ndarray:
        """Basis of the group elements supported on ``keep`` (as ``(x|z)`` on ``keep``)."""
        keep = np.asarray(keep)
        drop = np.setdiff1d(np.arange(self.N), keep)
        D = np.hstack([self.X[:, drop], self.Z[:, drop]])
        coeffs = gf2.kernel_basis(D.T)
        if coeffs.shape[0] == 0:
            return gf2.zeros(0, 2 * keep.size)
        K = np.hstack([self.X[:, keep], self.Z[:, keep]])
        M = gf2.matmul(coeffs, K)
        R, piv, _ = gf2.rref(M)
        return R[: len(piv)]


def code_state(code: CssCode, basis: str) -> tuple[np.ndarray, np.ndarray]:
    """Generators of the logical all-``|0>`` (``Z``) or all-``|+>`` (``X``) code state."""
    n = code.n
    if basis == "Z":
        zs = gf2.kernel_basis(code.HX)
        gx = np.vstack([code.HX, gf2.zeros(zs.shape[0], n)])
        gz = np.vstack([gf2.zeros(code.HX.shape[0], n), zs])
    else:
        xs = gf2.kernel_basis(code.HZ)
        gx = np.vstack([xs, gf2.zeros(code.HZ.shape[0], n)])
        gz = np.vstack([gf2.zeros(xs.shape[0], n), code.HZ])
    G = np.hstack([gx, gz])
    R, piv, _ = gf2.rref(G)
    R = R[: len(piv)]
    if R.shape[0] != n:
        raise AssertionError("code state is not pure")
    return R[:, :n], R[:, n:]


def _ensure_logicals(code: CssCode):
    if code.logicals is None:
        raise ValueError("data block needs a canonical logical basis")
    return code.logicals


def purified_initial(sim: GroupSim, layout: Layout, blocks: dict[str, CssCode], data: str) -> None:
    """Entangle the data block's logicals with reference qubits."""
    code = blocks[data]
    L = _ensure_logicals(code)
    qs = layout.idx(data)
    refs = np.arange(layout.ref.start, layout.ref.stop)
    allq = np.concatenate([qs, refs])
    n, k = code.n, L.k
    rx = [np.hstack([code.HX, gf2.zeros(code.HX.shape[0], k)])]
    rz = [gf2.zeros(code.HX.shape[0], n + k)]
    rx.append(gf2.zeros(code.HZ.shape[0], n + k))
    rz.append(np.hstack([code.HZ, gf2.zeros(code.HZ.shape[0], k)]))
    rx.append(np.hstack([L.X, gf2.eye(k)]))
    rz.append(gf2.zeros(k, n + k))
    rx.append(gf2.zeros(k, n + k))
    rz.append(np.hstack([L.Z, gf2.eye(k)]))
    G = np.hstack([np.vstack(rx), np.vstack(rz)])
    R, piv, _ = gf2.rref(G)
    R = R[: len(piv)]
    if R.shape[0] != n + k:
        raise AssertionError("purified data state is not pure")
    sim.reset(allq, R[:, : n + k], R[:, n + k:])


def apply_physical_step(sim: GroupSim, layout: Layout, blocks: dict[str, CssCode], step: GadgetStep) -> None:
    kind = step.kind
    if kind in ("PrepZ", "PrepX"):
        b = step.blocks[0]
        gx, gz = code_state(blocks[b], kind[-1])
        sim.reset(layout.idx(b), gx, gz)
    elif kind in ("MeasureZ", "MeasureX"):
        sim.measure_block(layout.idx(step.blocks[0]), kind[-1])
    elif kind == "CNOT":
        cb, tb = step.blocks
        pairs = step.params["pairs"]
        sim.cnot(layout.idx(cb)[pairs[:, 0]], layout.idx(tb)[pairs[:, 1]])
    elif kind == "Permute":
        sim.permute(layout.idx(step.blocks[0]), np.asarray(step.params["perm"]))
    elif kind == "FoldHSwap":
        b = step.blocks[0]
        qs = layout.idx(b)
        sim.hadamard(qs)
        sim.permute(qs, fold_transpose(blocks[b]))
    elif kind == "FoldCZS":
        b = step.blocks[0]
        qs = layout.idx(b)
        sim.phase(qs[fold_diagonal(blocks[b])])
        perm = fold_transpose(blocks[b])
        a = np.array([q for q in range(blocks[b].n) if perm[q] > q], dtype=int)
        sim.cz(qs[a], qs[perm[a]])
    else:
        raise ValueError(f"{kind} has no physical semantics")


def conjugate_by_schedule(P: Pauli, sched: GadgetSchedule) -> Pauli:
    """Image of ``P`` (over the concatenated blocks) under the unitary steps."""
    layout = Layout(sched.blocks)
    if P.n != layout.N:
        raise ValueError("Pauli length does not match the schedule's blocks")
    sim = GroupSim(1)
    sim.N = layout.N
    sim.X = P.x.reshape(1, -1).copy()
    sim.Z = P.z.reshape(1, -1).copy()
    for s in sched.steps:
        if s.kind in ("PrepZ", "PrepX", "MeasureZ", "MeasureX"):
            continue
        apply_physical_step(sim, layout, sched.blocks, s)
    return Pauli(sim.X[0], sim.Z[0], P.phase)


# -- effect extraction ------------------------------------------------------------


@dataclass
class LogicalProduct:
    """A logical Pauli ``prod X_q^{x_q} Z_q^{z_q}`` over grid coordinates (0-based)."""

    x: tuple[int, ...]
    z: tuple[int, ...]
    shape: tuple[int, ...]

    def __str__(self) -> str:
        parts = []
        for q in range(len(self.x)):
            c = ",".join(str(v + 1) for v in np.unravel_index(q, self.shape))
            if self.x[q] and self.z[q]:
                parts.append(f"Y[{c}]")
            elif self.x[q]:
                parts.append(f"X[{c}]")
            elif self.z[q]:
                parts.append(f"Z[{c}]")
        return "".join(parts) or "I"

    def vec(self) -> np.ndarray:
        return np.array(self.x + self.z, dtype=np.uint8)


def product_vector(shape: Sequence[int], basis: str, coords: Iterable[Sequence[int]]) -> np.ndarray:
    """``(x|z)`` vector over ``k`` logicals of a same-letter product on ``coords``."""
    k = int(np.prod(shape))
    v = np.zeros(2 * k, dtype=np.uint8)
    off = 0 if basis == "X" else k
    for c in coords:
        v[off + int(np.ravel_multi_index(tuple(c), tuple(shape)))] ^= 1
    return v


def grid_products(shape: Sequence[int], basis: str, edge_families: Sequence[Sequence[Sequence[int]]]
                  ) -> list[np.ndarray]:
    """One product per choice of hyperedge from each family (e.g. ``e_r x e_c``)."""
    out = []
    for edges in itertools.product(*edge_families):
        out.append(product_vector(shape, basis, itertools.product(*edges)))
    return out


def _to_products(vecs: np.ndarray, shape) -> list[LogicalProduct]:
    k = int(np.prod(shape))
    return [LogicalProduct(tuple(int(a) for a in v[:k]), tuple(int(a) for a in v[k:]), tuple(shape)) for v in vecs]


@dataclass
class EffectReport:
    certified: bool
    measured: list[LogicalProduct]
    declared: list[LogicalProduct]
    mismatches: list[str] = field(default_factory=list)

    def to_json_obj(self) -> dict:
        return {
            "certified": self.certified,
            "effect": [str(p) for p in self.measured],
            "declared": [str(p) for p in self.declared],
            "mismatches": self.mismatches,
        }


def run_physical(sched: GadgetSchedule) -> tuple[GroupSim, Layout]:
    """Simulate a physical schedule with the (single) data block purified by references."""
    if len(sched.data_blocks) != 1:
        raise ValueError("physical certification supports one data block")
    data = sched.data_blocks[0]
    L = _ensure_logicals(sched.blocks[data])
    layout = Layout(sched.blocks, n_ref=L.k)
    sim = GroupSim(layout.N)
    purified_initial(sim, layout, sched.blocks, data)
    for s in sched.steps:
        apply_physical_step(sim, layout, sched.blocks, s)
    return sim, layout


def _ideal_group(code: CssCode, measured: Sequence[np.ndarray]) -> np.ndarray:
    """Data+reference group after ideally measuring logical products."""
    L = _ensure_logicals(code)
    n, k = code.n, L.k
    layout = Layout({"data": code}, n_ref=k)
    sim = GroupSim(layout.N)
    purified_initial(sim, layout, {"data": code}, "data")
    for v in measured:
        px = gf2.matmul(v[:k], L.X) if k else np.zeros(n, np.uint8)
        pz = gf2.matmul(v[k:], L.Z) if k else np.zeros(n, np.uint8)
        sim.measure(np.concatenate([px, np.zeros(k, np.uint8)]), np.concatenate([pz, np.zeros(k, np.uint8)]))
    return sim.matrix()


def extract_measured_products(sched: GadgetSchedule) -> list[LogicalProduct]:
    """Logical products of the data block that the schedule measured.

    They are read off as the group elements supported on the references alone,
    a reduced basis expressed in the canonical logical coordinates.
    """
    sim, layout = run_physical(sched)
    code = sched.blocks[sched.data_blocks[0]]
    L = code.logicals
    refs = np.arange(layout.ref.start, layout.ref.stop)
    R = sim.subgroup_on(refs)
    return _to_products(R, L.grid_shape)


def certify_measurement(sched: GadgetSchedule, declared: Sequence[np.ndarray] | None = None) -> EffectReport:
    """Check that the schedule acts on the data exactly as measuring ``declared``.

    Compares full data+reference stabilizer groups, so both the measured set and
    the absence of any other disturbance are certified.
    """
    declared = list(sched.declared_effect if declared is None else declared)
    sim, layout = run_physical(sched)
    code = sched.blocks[sched.data_blocks[0]]
    L = code.logicals
    keep = np.concatenate([layout.idx(sched.data_blocks[0]), np.arange(layout.ref.start, layout.ref.stop)])
    got = sim.subgroup_on(keep)
    want = _ideal_group(code, declared)
    refs = np.arange(layout.ref.start, layout.ref.stop)
    measured = sim.subgroup_on(refs)
    decl_basis = gf2.as_bin(declared) if declared else gf2.zeros(0, 2 * L.k)
    mism = []
    if not gf2.rowspace_equal(measured, decl_basis):
        mism.append("measured logical products differ from the declared set")
    if not gf2.rowspace_equal(got, want):
        mism.append("data+reference stabilizer group differs from the ideal measurement")
    rep = EffectReport(not mism, _to_products(measured, L.grid_shape), _to_products(decl_basis, L.grid_shape), mism)
    sched.certified = rep.certified
    return rep


# -- logical action of unitary gadgets ----------------------------------------------


def logical_action(code: CssCode, sched: GadgetSchedule, block: str = "data") -> np.ndarray:
    """Symplectic matrix ``M`` (rows = images of ``X_1..X_k, Z_1..Z_k``) of a unitary schedule.

    Raises if a stabilizer maps outside the stabilizer group or a logical image
    is not a logical operator.
    """
    L = _ensure_logicals(code)
    n, k = code.n, L.k
    layout = Layout(sched.blocks)
    if list(sched.blocks) != [block]:
        raise ValueError("logical_action expects a single-block unitary schedule")
    sim = GroupSim(1)
    sim.N = n
    stabs = np.vstack([
        np.hstack([code.HX, gf2.zeros(code.HX.shape[0], n)]),
        np.hstack([gf2.zeros(code.HZ.shape[0], n), code.HZ]),
    ])
    logs = np.vstack([np.hstack([L.X, gf2.zeros(k, n)]), np.hstack([gf2.zeros(k, n), L.Z])])
    allrows = np.vstack([stabs, logs])
    sim.X = allrows[:, :n].copy()
    sim.Z = allrows[:, n:].copy()
    for s in sched.steps:
        if s.kind in ("PrepZ", "PrepX", "MeasureZ", "MeasureX"):
            raise ValueError("logical_action needs a unitary schedule")
        apply_physical_step(sim, layout, sched.blocks, s)
    img = sim.matrix()
    S = stabs
    for row in img[: stabs.shape[0]]:
        if not gf2.in_rowspace(S, row):
            raise AssertionError("a stabilizer is not mapped into the stabilizer group")
    # coefficient of X_q is <image, Z_q>, of Z_q is <image, X_q>
    zlog = np.hstack([gf2.zeros(k, n), L.Z])
    xlog = np.hstack([L.X, gf2.zeros(k, n)])
    M = np.hstack([symplectic_inner(img[stabs.shape[0]:], zlog), symplectic_inner(img[stabs.shape[0]:], xlog)])
    recon = gf2.matmul(M, logs)
    for row, rec in zip(img[stabs.shape[0]:], recon):
        if not gf2.in_rowspace(S, row ^ rec):
            raise AssertionError("logical image is not a logical operator times a stabilizer")
    return M


def symplectic_form(k: int) -> np.ndarray:
    return np.block([[gf2.zeros(k, k), gf2.eye(k)], [gf2.eye(k), gf2.zeros(k, k)]])


def is_symplectic(M: np.ndarray) -> bool:
    k = M.shape[0] // 2
    return np.array_equal(gf2.matmul(gf2.matmul(M, symplectic_form(k)), M.T), symplectic_form(k))
