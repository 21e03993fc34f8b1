"""Classical linear codes, their surgeries, and quasi-cyclic expansion.

Bits are 0-indexed throughout.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import gf2

DISTANCE_CAP = 24


class PunctureWarning(UserWarning):
    """Puncturing touched bits outside the information set."""


def generator_from_check(H) -> np.ndarray:
    """Generator matrix spanning ``ker(H)``, systematic on the free columns."""
    return gf2.kernel_basis(gf2.as_bin(H), prefer="right")


@dataclass(eq=False)
class ClassicalCode:
    """Linear code given by its check matrix ``H``.

    ``G`` defaults to the kernel basis of ``H``; a caller may pass another
    basis of the same space (e.g. the one read off a quasi-cyclic spec).
    """

    H: np.ndarray
    G: np.ndarray | None = None
    name: str = ""
    _d: int | None = field(default=None, repr=False)

    def __post_init__(self):
        self.H = gf2.as_bin(self.H)
        if self.G is None:
            self.G = generator_from_check(self.H)
        else:
            self.G = gf2.as_bin(self.G).reshape(-1, self.H.shape[1])
            if not gf2.is_zero(gf2.matmul(self.H, self.G.T)):
                raise ValueError("H G^T != 0")
            if gf2.rank(self.G) != self.n - gf2.rank(self.H):
                raise ValueError("G does not span ker(H)")

    @property
    def n(self) -> int:
        return int(self.H.shape[1])

    @property
    def r(self) -> int:
        return int(self.H.shape[0])

    @property
    def k(self) -> int:
        return int(self.G.shape[0])

    @cached_property
    def full_rank(self) -> bool:
        return gf2.rank(self.H) == self.r

    @property
    def d(self) -> int:
        if self._d is None:
            self._d = distance_bruteforce(self)
        return self._d

    def __repr__(self) -> str:
        d = "?" if self._d is None else self._d
        return f"ClassicalCode[{self.n},{self.k},{d}]"


def information_bits(code: ClassicalCode) -> list[int]:
    """Bits outside the rightmost independent column set of ``H``."""
    if not code.full_rank:
        raise ValueError("information bits need a full-rank check matrix")
    _, piv, _ = gf2.rref(code.H, prefer="right")
    pset = set(piv)
    return [j for j in range(code.n) if j not in pset]


def is_info_first(code: ClassicalCode) -> bool:
    """True when ``G`` is ``(I_k | *)``, i.e. bits ``0..k-1`` carry the information."""
    return bool(np.array_equal(code.G[:, : code.k], gf2.eye(code.k)))


def info_first(code: ClassicalCode) -> tuple[ClassicalCode, np.ndarray]:
    """Permute bits so that the information bits come first.

    Returns the permuted code and ``perm`` with new bit ``t`` = old bit ``perm[t]``.
    """
    info = information_bits(code)
    rest = [j for j in range(code.n) if j not in set(info)]
    perm = np.array(info + rest, dtype=int)
    return ClassicalCode(code.H[:, perm], name=code.name), perm


def distance_bruteforce(code: ClassicalCode, cap: int = DISTANCE_CAP, chunk: int = 1 << 14) -> int:
    """Minimum weight over the nonzero codewords; 0 when ``k = 0``."""
    k = code.k
    if k == 0:
        return 0
    if k > cap:
        raise ValueError(f"2^{k} codewords exceed the enumeration cap 2^{cap}")
    G = code.G.astype(np.int64)
    shifts = np.arange(k, dtype=np.int64)
    best = code.n
    total = 1 << k
    for start in range(1, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        coeffs = (idx[:, None] >> shifts) & 1
        words = coeffs @ G % 2
        best = min(best, int(words.sum(axis=1).min()))
    return best


def puncture(code: ClassicalCode, S: Iterable[int], warn: bool = True) -> ClassicalCode:
    """Delete the bits in ``S``; the new generator spans the shortened code."""
    S = sorted(set(int(s) for s in S))
    if any(s < 0 or s >= code.n for s in S):
        raise ValueError("puncture set out of range")
    if warn and S and code.full_rank:
        extra = set(S) - set(information_bits(code))
        if extra:
            warnings.warn(
                f"puncturing non-information bits {sorted(extra)}; distance may drop",
                PunctureWarning,
                stacklevel=2,
            )
    keep = [j for j in range(code.n) if j not in set(S)]
    return ClassicalCode(code.H[:, keep], name=code.name)


def augment(code: ClassicalCode, H0) -> ClassicalCode:
    """Append the checks ``H0``; the code becomes ``ker(H) ∩ ker(H0)``."""
    H0 = gf2.as_bin(H0).reshape(-1, code.n)
    if H0.shape[0] == 0:
        return ClassicalCode(code.H.copy(), code.G.copy(), name=code.name)
    return ClassicalCode(np.vstack([code.H, H0]), name=code.name)


def shorten_generator(code: ClassicalCode, S: Iterable[int]) -> np.ndarray:
    """Codewords vanishing on ``S``, restricted to the remaining bits."""
    S = sorted(set(S))
    keep = [j for j in range(code.n) if j not in set(S)]
    if code.k == 0:
        return gf2.zeros(0, len(keep))
    # combinations of G rows whose restriction to S is zero
    coeffs = gf2.kernel_basis(code.G[:, S].T) if S else gf2.eye(code.k)
    return gf2.matmul(coeffs, code.G)[:, keep]


def check_hyperedges(E: Sequence[Sequence[int]], n: int | None = None) -> list[list[int]]:
    seen: set[int] = set()
    out = []
    for e in E:
        e = [int(x) for x in e]
        if len(set(e)) != len(e) or seen & set(e):
            raise ValueError("hyperedges must be pairwise disjoint")
        if n is not None and any(x < 0 or x >= n for x in e):
            raise ValueError("hyperedge element out of range")
        seen |= set(e)
        out.append(e)
    return out


def repetition_on_hyperedges(n: int, E: Sequence[Sequence[int]]) -> np.ndarray:
    """Adjacent-pair parity checks of one repetition code per hyperedge."""
    E = check_hyperedges(E, n)
    rows = []
    for e in E:
        for a, b in zip(e, e[1:]):
            row = np.zeros(n, dtype=np.uint8)
            row[a] = row[b] = 1
            rows.append(row)
    return np.array(rows, dtype=np.uint8).reshape(len(rows), n)


def repetition_code(n: int = 3) -> ClassicalCode:
    H = np.zeros((n - 1, n), dtype=np.uint8)
    for i in range(n - 1):
        H[i, i] = H[i, i + 1] = 1
    return ClassicalCode(H, name=f"rep{n}")


def hamming_code() -> ClassicalCode:
    """[7,4,3] Hamming code with the information bits first."""
    H = np.array(
        [
            [1, 1, 0, 1, 1, 0, 0],
            [1, 0, 1, 1, 0, 1, 0],
            [0, 1, 1, 1, 0, 0, 1],
        ],
        dtype=np.uint8,
    )
    return ClassicalCode(H, name="hamming7")


# -- quasi-cyclic codes -----------------------------------------------------

_TERM = re.compile(r"^(1|x(\^\d+)?)$")


def parse_poly(s: str | int) -> list[int]:
    """Exponents of a polynomial string such as ``"1+x+x^3"``; ``"0"`` is empty."""
    s = str(s).replace(" ", "")
    if s in ("", "0"):
        return []
    exps: list[int] = []
    for term in s.split("+"):
        if not _TERM.match(term):
            raise ValueError(f"bad polynomial term {term!r}")
        e = 0 if term == "1" else 1 if term == "x" else int(term[2:])
        exps.append(e)
    return exps


def circulant(exps: Iterable[int], l: int) -> np.ndarray:
    """Circulant of ``sum x^e`` with ``x e_i = e_{i+1 mod l}``."""
    P = np.zeros((l, l), dtype=np.uint8)
    idx = np.arange(l)
    for e in exps:
        P[(idx + e) % l, idx] ^= 1
    return P


@dataclass(frozen=True)
class QuasiCyclicSpec:
    """Block check/generator polynomials over ``F2[x]/(x^l - 1)``."""

    lift: int
    Hpoly: tuple[tuple[str, ...], ...]
    Gpoly: tuple[str, ...]
    name: str = ""

    def __post_init__(self):
        for p in [q for row in self.Hpoly for q in row] + list(self.Gpoly):
            if any(e >= self.lift for e in parse_poly(p)):
                raise ValueError(f"degree of {p!r} not below the lift {self.lift}")
        if parse_poly(self.Gpoly[0]) != [0]:
            raise ValueError("the first generator block must be the identity")

    @property
    def n_blocks(self) -> int:
        return len(self.Gpoly)

    @property
    def r_blocks(self) -> int:
        return len(self.Hpoly)

    @classmethod
    def from_json_obj(cls, obj: dict) -> "QuasiCyclicSpec":
        return cls(
            lift=int(obj["lift"]),
            Hpoly=tuple(tuple(str(p) for p in row) for row in obj["H"]),
            Gpoly=tuple(str(p) for p in obj["G"]),
            name=obj.get("name", ""),
        )

    def to_json_obj(self) -> dict:
        return {
            "type": "quasi_cyclic",
            "name": self.name,
            "lift": self.lift,
            "H": [list(r) for r in self.Hpoly],
            "G": list(self.Gpoly),
        }


def expand_block(polys, l: int) -> np.ndarray:
    return np.block([[circulant(parse_poly(p), l) for p in row] for row in polys]).astype(np.uint8)


@dataclass(eq=False)
class QuasiCyclicCode(ClassicalCode):
    spec: QuasiCyclicSpec | None = None

    def block_shift(self, i: int, checks: bool = False) -> np.ndarray:
        """Block-diagonal ``x^i`` acting on bits (or on checks)."""
        l = self.spec.lift
        nb = self.spec.r_blocks if checks else self.spec.n_blocks
        return np.kron(gf2.eye(nb), circulant([i % l], l))


def expand_quasi_cyclic(spec: QuasiCyclicSpec) -> QuasiCyclicCode:
    l = spec.lift
    H = expand_block(spec.Hpoly, l)
    G = expand_block([spec.Gpoly], l)
    if not gf2.is_zero(gf2.matmul(H, G.T)):
        raise ValueError("expanded H G^T is nonzero; invalid quasi-cyclic spec")
    return QuasiCyclicCode(H, G, name=spec.name, spec=spec)


# One-generator systematic-circulant base codes, keyed by their [n,k,d].
OGSC_SPECS: dict[str, QuasiCyclicSpec] = {
    "ogsc_9_3_4": QuasiCyclicSpec(
        3, (("x^2", "x^2", "x^2"), ("x", "x^2", "0")), ("1", "x", "1+x"), "ogsc_9_3_4"
    ),
    "ogsc_12_3_6": QuasiCyclicSpec(
        3,
        (("x^2", "x^2", "x^2", "0"), ("x^2", "0", "x^2", "x^2"), ("x^2", "x^2", "x", "x^2")),
        ("1", "1+x^2", "x^2", "1+x^2"),
        "ogsc_12_3_6",
    ),
    "ogsc_16_4_8": QuasiCyclicSpec(
        4,
        (("x^3", "x^3", "0", "x^3"), ("x^3", "x^2", "x^3", "x^2"), ("x^3", "x^3", "x^2", "0")),
        ("1", "1+x+x^2", "1+x", "x+x^2"),
        "ogsc_16_4_8",
    ),
    "ogsc_20_5_9": QuasiCyclicSpec(
        5,
        (("x^4", "0", "x^4", "x^3"), ("0", "x^3", "x^3", "x^4"), ("x^3", "x^4", "0", "x^3")),
        ("1", "x+x^2+x^3", "1+x^2+x^3", "x+x^2"),
        "ogsc_20_5_9",
    ),
}

OGSC_BY_K = {3: "ogsc_9_3_4", 4: "ogsc_16_4_8", 5: "ogsc_20_5_9"}


def ogsc_code(name: str) -> QuasiCyclicCode:
    return expand_quasi_cyclic(OGSC_SPECS[name])


def code_from_json_obj(obj: dict) -> ClassicalCode:
    kind = obj.get("type", "explicit")
    if kind == "quasi_cyclic":
        return expand_quasi_cyclic(QuasiCyclicSpec.from_json_obj(obj))
    if kind == "explicit":
        H = obj["H"]
        H = gf2.from_json_obj(H) if isinstance(H, dict) else gf2.as_bin(H)
        return ClassicalCode(H, name=obj.get("name", ""))
    if kind == "builtin":
        nm = obj["name"]
        if nm == "hamming7":
            return hamming_code()
        if nm.startswith("rep"):
            return repetition_code(int(nm[3:]))
        return ogsc_code(nm)
    raise ValueError(f"unknown code type {kind!r}")
