"""Chain complexes, tensor products, and homological product CSS codes.

Conventions used by every other module:

* A classical code ``H`` is the complex ``bits --H--> checks`` (grade 1 to
  grade 0). Its transpose ``checks --H^T--> bits`` is the transposed complex.
* Product cells are indexed by ``x`` with ``0 <= x_i <= len(factor_i)`` and
  the summands of a total-complex grade are ordered lexicographically in ``x``.
* In a two-factor HGP code the first factor is transposed, so the qubits are
  ``B1 x B2`` followed by ``C1 x C2``, X checks live on ``B1 x C2`` and Z checks on
  ``C1 x B2``. Coordinates are the 1-indexed grid positions of these sets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import gf2
from .classical import ClassicalCode, is_info_first


@dataclass
class ChainComplex:
    """Spaces ``dims[0..L]`` with boundaries ``boundaries[i-1] = d_i : C_i -> C_{i-1}``."""

    dims: list[int]
    boundaries: list[np.ndarray]

    def __post_init__(self):
        if len(self.boundaries) != len(self.dims) - 1:
            raise ValueError("need one boundary per positive grade")
        for i, B in enumerate(self.boundaries, start=1):
            if B.shape != (self.dims[i - 1], self.dims[i]):
                raise ValueError(f"boundary {i} has shape {B.shape}")
        for i in range(1, len(self.boundaries)):
            if not gf2.is_zero(gf2.matmul(self.boundaries[i - 1], self.boundaries[i])):
                raise ValueError(f"d_{i} d_{i + 1} != 0")

    @property
    def length(self) -> int:
        return len(self.dims) - 1

    def boundary(self, i: int) -> np.ndarray:
        """``d_i``; zero maps outside ``1..length``."""
        if 1 <= i <= self.length:
            return self.boundaries[i - 1]
        lo = self.dims[i - 1] if 0 <= i - 1 <= self.length else 0
        hi = self.dims[i] if 0 <= i <= self.length else 0
        return gf2.zeros(lo, hi)

    @classmethod
    def from_code(cls, H, transpose: bool = False) -> "ChainComplex":
        H = gf2.as_bin(H)
        if transpose:
            return cls([H.shape[1], H.shape[0]], [H.T.copy()])
        return cls([H.shape[0], H.shape[1]], [H.copy()])


@dataclass
class ProductComplex:
    factors: list[ChainComplex]
    cells: dict[tuple[int, ...], int] = field(init=False)

    def __post_init__(self):
        ranges = [range(f.length + 1) for f in self.factors]
        self.cells = {
            x: int(np.prod([f.dims[xi] for f, xi in zip(self.factors, x)]))
            for x in itertools.product(*ranges)
        }

    @property
    def D(self) -> int:
        return len(self.factors)

    def directional(self, i: int, x: tuple[int, ...]) -> np.ndarray:
        """``d^i_x : D_x -> D_{x - e_i}``."""
        mats = []
        for j, (f, xj) in enumerate(zip(self.factors, x)):
            mats.append(f.boundary(xj) if j == i else gf2.eye(f.dims[xj]))
        return gf2.kron(*mats)

    def check_identities(self) -> bool:
        for x in self.cells:
            for i in range(self.D):
                if x[i] < 2:
                    continue
                y = _shift(x, i)
                if not gf2.is_zero(gf2.matmul(self.directional(i, y), self.directional(i, x))):
                    return False
            for i, j in itertools.combinations(range(self.D), 2):
                if x[i] < 1 or x[j] < 1:
                    continue
                a = gf2.matmul(self.directional(j, _shift(x, i)), self.directional(i, x))
                b = gf2.matmul(self.directional(i, _shift(x, j)), self.directional(j, x))
                if not np.array_equal(a, b):
                    return False
        return True


def _shift(x: tuple[int, ...], i: int, by: int = -1) -> tuple[int, ...]:
    y = list(x)
    y[i] += by
    return tuple(y)


def product(factors: Sequence[ChainComplex]) -> ProductComplex:
    P = ProductComplex(list(factors))
    if not P.check_identities():
        raise AssertionError("directional boundaries violate the product identities")
    return P


def summands(P: ProductComplex, k: int) -> list[tuple[int, ...]]:
    return sorted(x for x in P.cells if sum(x) == k)


def summand_offsets(P: ProductComplex, k: int) -> dict[tuple[int, ...], slice]:
    out, pos = {}, 0
    for x in summands(P, k):
        out[x] = slice(pos, pos + P.cells[x])
        pos += P.cells[x]
    return out


def total(P: ProductComplex) -> ChainComplex:
    top = sum(f.length for f in P.factors)
    dims = [sum(P.cells[x] for x in summands(P, k)) for k in range(top + 1)]
    bounds = []
    for k in range(1, top + 1):
        M = gf2.zeros(dims[k - 1], dims[k])
        lo, hi = summand_offsets(P, k - 1), summand_offsets(P, k)
        for x, cols in hi.items():
            for i in range(P.D):
                if x[i] == 0:
                    continue
                M[lo[_shift(x, i)], cols] = P.directional(i, x)
        bounds.append(M)
    return ChainComplex(dims, bounds)


# -- CSS codes -----------------------------------------------------------------


@dataclass
class LogicalBasis:
    """Canonical logical pairs indexed by 0-based grid coordinates."""

    grid_shape: tuple[int, ...]
    X: np.ndarray  # k x n, X-type supports
    Z: np.ndarray  # k x n, Z-type supports

    @property
    def k(self) -> int:
        return int(self.X.shape[0])

    def index(self, coord: Sequence[int]) -> int:
        return int(np.ravel_multi_index(tuple(coord), self.grid_shape))

    def coord(self, q: int) -> tuple[int, ...]:
        return tuple(int(c) for c in np.unravel_index(q, self.grid_shape))

    def pairing(self) -> np.ndarray:
        return gf2.matmul(self.X, self.Z.T)


@dataclass
class CssCode:
    HX: np.ndarray
    HZ: np.ndarray
    d: int | None = None
    coords_qubits: list[tuple[int, ...]] | None = None
    coords_xchecks: list[tuple[int, ...]] | None = None
    coords_zchecks: list[tuple[int, ...]] | None = None
    MX: np.ndarray | None = None
    MZ: np.ndarray | None = None
    logicals: LogicalBasis | None = None
    bases: tuple[ClassicalCode, ...] = ()
    kind: str = "css"
    name: str = ""

    def __post_init__(self):
        self.HX = gf2.as_bin(self.HX)
        self.HZ = gf2.as_bin(self.HZ)
        if self.HX.shape[1] != self.HZ.shape[1]:
            raise ValueError("HX and HZ act on different qubit counts")
        if not gf2.is_zero(gf2.matmul(self.HX, self.HZ.T)):
            raise ValueError("HX HZ^T != 0")
        if self.MX is not None and not gf2.is_zero(gf2.matmul(self.MX, self.HX)):
            raise ValueError("MX HX != 0")
        if self.MZ is not None and not gf2.is_zero(gf2.matmul(self.MZ, self.HZ)):
            raise ValueError("MZ HZ != 0")

    @property
    def n(self) -> int:
        return int(self.HX.shape[1])

    @property
    def k(self) -> int:
        return self.n - gf2.rank(self.HX) - gf2.rank(self.HZ)

    def params(self) -> tuple[int, int, int | None]:
        return self.n, self.k, self.d

    def __repr__(self) -> str:
        return f"CssCode[[{self.n},{self.k},{self.d}]]({self.kind})"

    # HGP helpers
    @property
    def n1(self) -> int:
        return self.bases[0].n

    @property
    def n2(self) -> int:
        return self.bases[1].n

    def qubit_index(self, i: int, j: int) -> int:
        """Index of the ``B1 x B2`` qubit at 0-based position ``(i, j)``."""
        return i * self.n2 + j

    @property
    def symmetric(self) -> bool:
        return (
            len(self.bases) == 2
            and np.array_equal(self.bases[0].H, self.bases[1].H)
            and np.array_equal(self.bases[0].G, self.bases[1].G)
        )


def _require_full_rank(*codes: ClassicalCode) -> None:
    for c in codes:
        if not c.full_rank:
            raise ValueError("base check matrices must be full rank")


def _base_distance(codes: Sequence[ClassicalCode]) -> int | None:
    if any(c.k == 0 for c in codes):
        return None
    return min(c.d for c in codes)


def hgp(C1: ClassicalCode, C2: ClassicalCode, with_logicals: bool = True,
        record_distance: bool = True, strict: bool = True) -> CssCode:
    """Hypergraph product with the first factor transposed.

    ``strict`` rejects rank-deficient bases. Ancilla codes built inside gadgets
    pass ``strict=False`` since the CSS construction itself needs no full rank.
    """
    if strict:
        _require_full_rank(C1, C2)
    T = total(product([ChainComplex.from_code(C1.H, transpose=True), ChainComplex.from_code(C2.H)]))
    HX = T.boundary(1)
    HZ = T.boundary(2).T
    n1, r1, n2, r2 = C1.n, C1.r, C2.n, C2.r
    qubits = [(a, b) for a in range(n1) for b in range(n2)]
    qubits += [(n1 + c, n2 + e) for c in range(r1) for e in range(r2)]
    xch = [(a, n2 + e) for a in range(n1) for e in range(r2)]
    zch = [(n1 + c, b) for c in range(r1) for b in range(n2)]
    code = CssCode(
        HX, HZ,
        d=_base_distance((C1, C2)) if record_distance else None,
        coords_qubits=qubits, coords_xchecks=xch, coords_zchecks=zch,
        bases=(C1, C2), kind="hgp",
    )
    if with_logicals and is_info_first(C1) and is_info_first(C2):
        code.logicals = canonical_logicals_2d(code)
    return code


def canonical_logicals_2d(code: CssCode) -> LogicalBasis:
    """``X_{i,j} = b1_i (x) e_j`` and ``Z_{i,j} = e_i (x) b2_j`` on the ``B1 x B2`` block."""
    C1, C2 = code.bases
    if not (is_info_first(C1) and is_info_first(C2)):
        raise ValueError("base codes must carry their information bits first")
    k1, k2 = C1.k, C2.k
    X = gf2.zeros(k1 * k2, code.n)
    Z = gf2.zeros(k1 * k2, code.n)
    I1, I2 = gf2.eye(C1.n), gf2.eye(C2.n)
    m = C1.n * C2.n
    for i in range(k1):
        for j in range(k2):
            q = i * k2 + j
            X[q, :m] = np.kron(C1.G[i], I2[j])
            Z[q, :m] = np.kron(I1[i], C2.G[j])
    return LogicalBasis((k1, k2), X, Z)


def homological_3d(C1: ClassicalCode, C2: ClassicalCode, C3: ClassicalCode,
                   strict: bool = True) -> CssCode:
    """3D product code with X metachecks; qubits are the middle grade.

    Factors one and two are graded directly and factor three is transposed, so
    ``HX = d_2``, ``HZ = d_3^T`` and ``MX = d_1`` of the total complex.
    """
    if strict:
        _require_full_rank(C1, C2, C3)
    P = product([
        ChainComplex.from_code(C1.H),
        ChainComplex.from_code(C2.H),
        ChainComplex.from_code(C3.H, transpose=True),
    ])
    T = total(P)
    code = CssCode(
        T.boundary(2), T.boundary(3).T, MX=T.boundary(1),
        d=_base_distance((C1, C2, C3)) if strict else None, bases=(C1, C2, C3), kind="3d",
        coords_qubits=_cell_coords(P, 2),
    )
    if all(is_info_first(c) for c in (C1, C2, C3)):
        code.logicals = canonical_logicals_3d(code)
    return code


def _cell_coords(P: ProductComplex, grade: int) -> list[tuple[int, ...]]:
    """Label each basis element of a grade by (summand x, position in each factor)."""
    out = []
    for x in summands(P, grade):
        ranges = [range(f.dims[xi]) for f, xi in zip(P.factors, x)]
        out += [tuple(x) + tuple(p) for p in itertools.product(*ranges)]
    return out


def canonical_logicals_3d(code: CssCode) -> LogicalBasis:
    """``X = e_i (x) e_j (x) b3_k`` and ``Z = b1_i (x) b2_j (x) e_k`` on ``B1 x B2 x B3``."""
    C1, C2, C3 = code.bases
    P = product([
        ChainComplex.from_code(C1.H),
        ChainComplex.from_code(C2.H),
        ChainComplex.from_code(C3.H, transpose=True),
    ])
    block = summand_offsets(P, 2)[(1, 1, 0)]
    shape = (C1.k, C2.k, C3.k)
    X = gf2.zeros(int(np.prod(shape)), code.n)
    Z = gf2.zeros(int(np.prod(shape)), code.n)
    I1, I2, I3 = gf2.eye(C1.n), gf2.eye(C2.n), gf2.eye(C3.n)
    for q, (i, j, k) in enumerate(itertools.product(*map(range, shape))):
        X[q, block] = gf2.kron(I1[i], I2[j], C3.G[k]).ravel()
        Z[q, block] = gf2.kron(C1.G[i], C2.G[j], I3[k]).ravel()
    return LogicalBasis(shape, X, Z)


def homological_4d(codes: Sequence[ClassicalCode]) -> CssCode:
    """4D product code of four directly graded factors.

    Qubits sit on grade 2; ``HX = d_2``, ``HZ = d_3^T``, ``MX = d_1``, ``MZ = d_4^T``.
    """
    if len(codes) != 4:
        raise ValueError("need four base codes")
    _require_full_rank(*codes)
    P = product([ChainComplex.from_code(c.H) for c in codes])
    T = total(P)
    return CssCode(
        T.boundary(2), T.boundary(3).T, MX=T.boundary(1), MZ=T.boundary(4).T,
        bases=tuple(codes), kind="4d", coords_qubits=_cell_coords(P, 2),
    )


# -- exhaustive checks -----------------------------------------------------------


def is_nontrivial_logical(code: CssCode, v: np.ndarray, basis: str) -> bool:
    """``v`` commutes with the opposite checks but is not a stabilizer."""
    other, same = (code.HZ, code.HX) if basis == "X" else (code.HX, code.HZ)
    return gf2.is_zero(gf2.matmul(other, v)) and not gf2.in_rowspace(same, v)


def min_logical_weight(code: CssCode, max_weight: int) -> int | None:
    """Smallest weight of a nontrivial X- or Z-type logical, searching up to ``max_weight``.

    For CSS codes any logical of weight ``w`` has an X or Z part that is itself a
    nontrivial logical of weight at most ``w``, so CSS-type search suffices.
    """
    n = code.n
    for w in range(1, max_weight + 1):
        for supp in itertools.combinations(range(n), w):
            v = np.zeros(n, dtype=np.uint8)
            v[list(supp)] = 1
            for basis in ("X", "Z"):
                if is_nontrivial_logical(code, v, basis):
                    return w
    return None
