"""Chain maps between codes: puncture/augment maps, product lifts, translations.

For a chain map ``gamma : A -> B`` between CSS codes, the induced transversal
CNOT is controlled by the qubits of ``B`` and targets the qubits of ``A``, one
gate per nonzero entry ``gamma_q[b, a]`` of the qubit-grade map.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import gf2
from .classical import ClassicalCode, QuasiCyclicCode, check_hyperedges, repetition_on_hyperedges
from .complexes import ChainComplex, CssCode, hgp, product, summand_offsets, summands, total


@dataclass
class ClassicalChainMap:
    """``(gamma1, gamma0)`` from ``source`` (C') to ``target`` (C) with ``H gamma1 = gamma0 H'``."""

    gamma1: np.ndarray
    gamma0: np.ndarray
    source: ClassicalCode
    target: ClassicalCode
    S: tuple[int, ...] = ()
    H0: np.ndarray | None = None

    def residual(self) -> np.ndarray:
        return gf2.matmul(self.target.H, self.gamma1) ^ gf2.matmul(self.gamma0, self.source.H)

    def commutes(self) -> bool:
        return gf2.is_zero(self.residual())

    @classmethod
    def identity(cls, code: ClassicalCode) -> "ClassicalChainMap":
        return cls(gf2.eye(code.n), gf2.eye(code.r), code, code)

    def compose(self, other: "ClassicalChainMap") -> "ClassicalChainMap":
        """``self o other`` (apply ``other`` first)."""
        return ClassicalChainMap(
            gf2.matmul(self.gamma1, other.gamma1),
            gf2.matmul(self.gamma0, other.gamma0),
            other.source, self.target,
        )


@dataclass
class ComplexMap:
    """Grade-wise maps ``gammas[g] : src_g -> tgt_g`` between two chain complexes."""

    gammas: list[np.ndarray]
    src: ChainComplex
    tgt: ChainComplex


def factor_map(f: ClassicalChainMap, transpose: bool) -> ComplexMap:
    """The complex map of ``f`` in direct orientation, or its dual when transposed.

    The dual of ``C' -> C`` runs ``C^T -> C'^T``.
    """
    if transpose:
        return ComplexMap(
            [f.gamma1.T.copy(), f.gamma0.T.copy()],
            ChainComplex.from_code(f.target.H, transpose=True),
            ChainComplex.from_code(f.source.H, transpose=True),
        )
    return ComplexMap(
        [f.gamma0, f.gamma1],
        ChainComplex.from_code(f.source.H),
        ChainComplex.from_code(f.target.H),
    )


def puncture_augment_map(code: ClassicalCode, S: Iterable[int], H0=None
                         ) -> tuple[ClassicalCode, ClassicalChainMap]:
    """Puncture ``S`` then append the checks ``H0`` (given on the surviving bits).

    Surviving bits keep their relative order, so ``gamma1`` embeds them into
    ``[n] \\ S`` and ``gamma0 = (I, 0)`` forgets the appended checks.
    """
    S = tuple(sorted(set(int(s) for s in S)))
    keep = [j for j in range(code.n) if j not in set(S)]
    n1 = len(keep)
    if H0 is None:
        H0 = gf2.zeros(0, n1)
    H0 = gf2.as_bin(H0).reshape(-1, n1)
    Hn = np.vstack([code.H[:, keep], H0])
    new = ClassicalCode(Hn, name=code.name)
    g1 = gf2.zeros(code.n, n1)
    g1[keep, np.arange(n1)] = 1
    g0 = np.hstack([gf2.eye(code.r), gf2.zeros(code.r, H0.shape[0])])
    f = ClassicalChainMap(g1, g0, new, code, S=S, H0=H0)
    if not f.commutes():
        raise AssertionError("puncture/augment square does not commute")
    return new, f


def modify_code(code: ClassicalCode, S: Iterable[int], edges: Sequence[Sequence[int]] = ()
                ) -> tuple[ClassicalCode, ClassicalChainMap]:
    """Puncture ``S`` and tie each hyperedge into a repetition code by pair parities."""
    S = sorted(set(int(s) for s in S))
    edges = check_hyperedges(edges, code.n)
    if set(S) & {x for e in edges for x in e}:
        raise ValueError("punctured bits may not lie on a hyperedge")
    keep = [j for j in range(code.n) if j not in set(S)]
    Hrep = repetition_on_hyperedges(code.n, edges)
    return puncture_augment_map(code, S, Hrep[:, keep])


def rep_modification(code: ClassicalCode, edges: Sequence[Sequence[int]], k: int | None = None
                     ) -> tuple[ClassicalCode, ClassicalChainMap]:
    """Keep only the hyperedge bits of the information set, each edge as one repetition code.

    Information bits ``[k]`` outside every hyperedge are punctured.
    """
    k = code.k if k is None else k
    edges = check_hyperedges(edges, k)
    used = {x for e in edges for x in e}
    return modify_code(code, [j for j in range(k) if j not in used], edges)


def mask_modification(code: ClassicalCode, edges: Sequence[Sequence[int]], k: int | None = None
                      ) -> tuple[ClassicalCode, ClassicalChainMap]:
    """Mask factor: singleton edges are punctured, larger edges become repetition codes.

    Information bits on no edge stay, so the mask resets those lines.
    """
    k = code.k if k is None else k
    edges = check_hyperedges(edges, k)
    singles = [e[0] for e in edges if len(e) == 1]
    return modify_code(code, singles, [e for e in edges if len(e) > 1])


@dataclass
class ChainMap:
    """Grade-wise maps between the total complexes of two product codes."""

    gammas: list[np.ndarray]
    source: CssCode
    target: CssCode
    src_complex: ChainComplex
    tgt_complex: ChainComplex
    qubit_grade: int = 1
    direction: str = "forward"
    provenance: dict = field(default_factory=dict)

    @property
    def qubit_map(self) -> np.ndarray:
        return self.gammas[self.qubit_grade]

    def residuals(self) -> list[np.ndarray]:
        """``delta_g gamma_g + gamma_{g-1} delta'_g`` for every positive grade."""
        out = []
        for g in range(1, len(self.gammas)):
            a = gf2.matmul(self.tgt_complex.boundary(g), self.gammas[g])
            b = gf2.matmul(self.gammas[g - 1], self.src_complex.boundary(g))
            out.append(a ^ b)
        return out

    def verify(self) -> dict:
        res = self.residuals()
        return {
            "commutes": all(gf2.is_zero(r) for r in res),
            "nonzero_grades": [g + 1 for g, r in enumerate(res) if not gf2.is_zero(r)],
            "residual_weights": [int(r.sum()) for r in res],
        }

    def cnot_pairs(self) -> list[tuple[int, int]]:
        """``(control, target)`` qubit pairs: control in ``target`` code, target in ``source``."""
        b, a = np.nonzero(self.qubit_map)
        return list(zip(b.tolist(), a.tolist()))

    def as_permutation(self) -> np.ndarray:
        """Index form ``perm[a] = b`` of a permutation qubit map."""
        M = self.qubit_map
        if M.shape[0] != M.shape[1] or not (M.sum(0) == 1).all() or not (M.sum(1) == 1).all():
            raise ValueError("qubit map is not a permutation")
        return np.argmax(M, axis=0)


def verify_chain_map(m: ChainMap) -> dict:
    return m.verify()


def lift_complex_maps(maps: Sequence[ComplexMap]) -> tuple[list[np.ndarray], ChainComplex, ChainComplex]:
    """Block-diagonal tensor lift over the lexicographically ordered summands."""
    Ps = product([m.src for m in maps])
    Pt = product([m.tgt for m in maps])
    Ts, Tt = total(Ps), total(Pt)
    gammas = []
    for g in range(len(Ts.dims)):
        G = gf2.zeros(Tt.dims[g], Ts.dims[g])
        so, to = summand_offsets(Ps, g), summand_offsets(Pt, g)
        for x in summands(Ps, g):
            G[to[x], so[x]] = gf2.kron(*[m.gammas[xi] for m, xi in zip(maps, x)])
        gammas.append(G)
    return gammas, Ts, Tt


def default_builder(codes: Sequence[ClassicalCode]) -> CssCode:
    return hgp(*codes, record_distance=False, strict=False)


def lift_to_product(classical_maps: Sequence[ClassicalChainMap],
                    transposed: Sequence[bool] = (True, False),
                    builder=default_builder, qubit_grade: int = 1,
                    reverse: bool | None = None) -> ChainMap:
    """Lift one classical map per factor of a product code.

    Factors marked ``transposed`` contribute the dual map, so all modified
    factors must share an orientation. A modification of transposed factors
    yields a map from the original code to the modified one
    (``direction="reversed"``); otherwise the map runs modified to original.
    ``builder`` turns the list of factor codes into the endpoint CSS codes.
    ``reverse`` picks the direction when every factor map is an identity.
    """
    if len(classical_maps) != len(transposed):
        raise ValueError("one orientation flag per factor")
    modified = [not _is_identity(f) for f in classical_maps]
    flips = {t for t, m in zip(transposed, modified) if m}
    if len(flips) > 1:
        raise ValueError("modifications on factors of opposite orientation do not compose")
    if flips:
        reverse = flips == {True}
    reverse = bool(reverse)
    maps = [factor_map(f, t) for f, t in zip(classical_maps, transposed)]
    gammas, Ts, Tt = lift_complex_maps(maps)
    modified_code = builder([f.source for f in classical_maps])
    original_code = builder([f.target for f in classical_maps])
    src, tgt = (original_code, modified_code) if reverse else (modified_code, original_code)
    m = ChainMap(gammas, src, tgt, Ts, Tt, qubit_grade=qubit_grade,
                 direction="reversed" if reverse else "forward",
                 provenance={"S": [list(f.S) for f in classical_maps],
                             "H0": [None if f.H0 is None else f.H0.tolist() for f in classical_maps]})
    rep = m.verify()
    if not rep["commutes"]:
        raise AssertionError(f"lifted squares fail at grades {rep['nonzero_grades']}")
    if not (np.array_equal(Ts.boundary(qubit_grade), src.HX) and np.array_equal(Tt.boundary(qubit_grade), tgt.HX)):
        raise AssertionError("lifted complexes disagree with the endpoint codes")
    return m


def _is_identity(f: ClassicalChainMap) -> bool:
    return (
        f.gamma1.shape[0] == f.gamma1.shape[1]
        and f.gamma0.shape[0] == f.gamma0.shape[1]
        and np.array_equal(f.gamma1, gf2.eye(f.gamma1.shape[0]))
        and np.array_equal(f.gamma0, gf2.eye(f.gamma0.shape[0]))
        and np.array_equal(f.source.H, f.target.H)
    )


def translation_automorphism(code: CssCode, i: int, j: int) -> ChainMap:
    """Block-cyclic shift by ``(i, j)`` of an HGP code with quasi-cyclic bases."""
    C1, C2 = code.bases
    if not (isinstance(C1, QuasiCyclicCode) and isinstance(C2, QuasiCyclicCode)):
        raise ValueError("translations need quasi-cyclic base codes")
    f1 = ComplexMap(
        [C1.block_shift(i), C1.block_shift(i, checks=True)],
        ChainComplex.from_code(C1.H, transpose=True),
        ChainComplex.from_code(C1.H, transpose=True),
    )
    f2 = ComplexMap(
        [C2.block_shift(j, checks=True), C2.block_shift(j)],
        ChainComplex.from_code(C2.H),
        ChainComplex.from_code(C2.H),
    )
    gammas, Ts, Tt = lift_complex_maps([f1, f2])
    m = ChainMap(gammas, code, code, Ts, Tt, provenance={"shift": [i, j]})
    rep = m.verify()
    if not rep["commutes"]:
        raise AssertionError("translation does not commute with the boundaries")
    return m
