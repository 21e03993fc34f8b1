"""Signed stabilizer tableau (destabilizers + stabilizers) for logical-level runs.

Random measurement outcomes are forced to +1, which models a Pauli frame in
which every outcome-dependent correction has been applied.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from . import gf2


def _g_sum(x1, z1, x2, z2) -> np.ndarray:
    """Sum over qubits of the phase exponent for multiplying Paulis (row-wise)."""
    x1 = x1.astype(np.int8)
    z1 = z1.astype(np.int8)
    x2 = x2.astype(np.int8)
    z2 = z2.astype(np.int8)
    g = np.where(
        (x1 == 1) & (z1 == 1), z2 - x2,
        np.where((x1 == 1) & (z1 == 0), z2 * (2 * x2 - 1),
                 np.where((x1 == 0) & (z1 == 1), x2 * (1 - 2 * z2), 0)),
    )
    return g.sum(axis=-1)


class Tableau:
    """Aaronson-Gottesman tableau on ``n`` qubits, initialised to ``|0...0>``."""

    def __init__(self, n: int):
        self.n = n
        self.x = np.zeros((2 * n, n), dtype=np.uint8)
        self.z = np.zeros((2 * n, n), dtype=np.uint8)
        self.r = np.zeros(2 * n, dtype=np.uint8)
        self.x[np.arange(n), np.arange(n)] = 1
        self.z[n + np.arange(n), np.arange(n)] = 1

    @property
    def k(self) -> int:
        return self.n

    def copy(self) -> "Tableau":
        t = Tableau(0)
        t.n, t.x, t.z, t.r = self.n, self.x.copy(), self.z.copy(), self.r.copy()
        return t

    def grow(self, extra: int) -> None:
        """Append ``extra`` fresh qubits in ``|0>``."""
        n, m = self.n, self.n + extra
        x = np.zeros((2 * m, m), dtype=np.uint8)
        z = np.zeros((2 * m, m), dtype=np.uint8)
        r = np.zeros(2 * m, dtype=np.uint8)
        x[:n, :n], z[:n, :n], r[:n] = self.x[:n], self.z[:n], self.r[:n]
        x[m:m + n, :n], z[m:m + n, :n], r[m:m + n] = self.x[n:], self.z[n:], self.r[n:]
        x[np.arange(n, m), np.arange(n, m)] = 1
        z[m + np.arange(n, m), np.arange(n, m)] = 1
        self.n, self.x, self.z, self.r = m, x, z, r

    # gates
    def h(self, a) -> None:
        a = np.atleast_1d(a)
        self.r ^= np.bitwise_xor.reduce(self.x[:, a] & self.z[:, a], axis=1) if a.size else 0
        self.x[:, a], self.z[:, a] = self.z[:, a].copy(), self.x[:, a].copy()

    def s(self, a) -> None:
        a = np.atleast_1d(a)
        if a.size:
            self.r ^= np.bitwise_xor.reduce(self.x[:, a] & self.z[:, a], axis=1)
        self.z[:, a] ^= self.x[:, a]

    def sdg(self, a) -> None:
        for _ in range(3):
            self.s(a)

    def xgate(self, a) -> None:
        a = np.atleast_1d(a)
        self.r ^= np.bitwise_xor.reduce(self.z[:, a], axis=1) if a.size else 0

    def zgate(self, a) -> None:
        a = np.atleast_1d(a)
        self.r ^= np.bitwise_xor.reduce(self.x[:, a], axis=1) if a.size else 0

    def cnot(self, a: int, b: int) -> None:
        if a == b:
            raise ValueError("CNOT needs distinct qubits")
        xa, za, xb, zb = self.x[:, a], self.z[:, a], self.x[:, b], self.z[:, b]
        self.r ^= xa & zb & (xb ^ za ^ 1)
        self.x[:, b] ^= xa
        self.z[:, a] ^= zb

    def cz(self, a: int, b: int) -> None:
        self.h(b)
        self.cnot(a, b)
        self.h(b)

    def swap(self, a: int, b: int) -> None:
        for M in (self.x, self.z):
            M[:, [a, b]] = M[:, [b, a]]

    # row algebra
    def _rowmul(self, targets: np.ndarray, src_x, src_z, src_r) -> None:
        """Left-multiply rows ``targets`` by the Pauli ``(src_x, src_z, src_r)``."""
        if targets.size == 0:
            return
        tx, tz = self.x[targets], self.z[targets]
        ph = 2 * self.r[targets].astype(np.int64) + 2 * int(src_r) + _g_sum(src_x[None, :], src_z[None, :], tx, tz)
        self.r[targets] = ((ph % 4) // 2).astype(np.uint8)
        self.x[targets] = tx ^ src_x
        self.z[targets] = tz ^ src_z

    def _anti(self, px, pz) -> np.ndarray:
        return (gf2.matmul(self.x, pz) ^ gf2.matmul(self.z, px)).astype(bool)

    def expectation(self, px, pz, sign: int = 0) -> int:
        """``<(-1)^sign P>`` in {+1, -1, 0}."""
        px, pz = gf2.as_vec(px), gf2.as_vec(pz)
        n = self.n
        anti = self._anti(px, pz)
        if anti[n:].any():
            return 0
        sx = np.zeros(n, np.uint8)
        sz = np.zeros(n, np.uint8)
        sr = 0
        for i in np.nonzero(anti[:n])[0]:
            ph = 2 * sr + 2 * int(self.r[n + i]) + int(_g_sum(self.x[n + i], self.z[n + i], sx, sz))
            sr = (ph % 4) // 2
            sx ^= self.x[n + i]
            sz ^= self.z[n + i]
        if not (np.array_equal(sx, px) and np.array_equal(sz, pz)):
            raise AssertionError("deterministic measurement reconstruction failed")
        return 1 if sr == sign else -1

    def measure(self, px, pz, sign: int = 0, force: int | None = 0) -> tuple[int, bool]:
        """Measure ``(-1)^sign P``; returns ``(outcome bit, was_random)``.

        Random outcomes are forced to ``force`` (0 means +1).
        """
        px, pz = gf2.as_vec(px), gf2.as_vec(pz)
        n = self.n
        anti = self._anti(px, pz)
        stab_anti = np.nonzero(anti[n:])[0]
        if stab_anti.size:
            p = n + stab_anti[0]
            others = np.nonzero(anti)[0]
            others = others[others != p]
            self._rowmul(others, self.x[p].copy(), self.z[p].copy(), self.r[p])
            self.x[p - n], self.z[p - n], self.r[p - n] = self.x[p], self.z[p], self.r[p]
            out = 0 if force is None else force
            self.x[p], self.z[p] = px, pz
            self.r[p] = (sign + out) % 2
            return out, True
        e = self.expectation(px, pz, sign)
        return (0 if e == 1 else 1), False

    def reset(self, a: int, basis: str = "Z") -> None:
        if basis == "X":
            self.h(a)
        v = np.zeros(self.n, np.uint8)
        v[a] = 1
        out, _ = self.measure(np.zeros(self.n, np.uint8), v)
        if out:
            self.xgate(a)
        if basis == "X":
            self.h(a)

    def stabilizers(self) -> np.ndarray:
        """``(x | z)`` rows of the stabilizer generators (signs dropped)."""
        return np.hstack([self.x[self.n:], self.z[self.n:]])

    def subgroup_on(self, keep: Sequence[int]) -> np.ndarray:
        """Sign-free basis of stabilizer-group elements supported on ``keep``."""
        keep = np.asarray(keep, dtype=int)
        drop = np.setdiff1d(np.arange(self.n), keep)
        S = self.stabilizers()
        D = np.hstack([S[:, drop], S[:, self.n + drop]])
        coeffs = gf2.kernel_basis(D.T) if drop.size else gf2.eye(self.n)
        K = np.hstack([S[:, keep], S[:, self.n + keep]])
        M = gf2.matmul(coeffs, K)
        R, piv, _ = gf2.rref(M)
        return R[: len(piv)]
