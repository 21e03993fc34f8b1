"""Dense linear algebra over GF(2).

Matrices are numpy ``uint8`` arrays with entries in {0, 1}. Every function
returns fresh arrays and never mutates its inputs.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Literal

import numpy as np

Pivot = Literal["left", "right"]


def as_bin(M) -> np.ndarray:
    """Coerce array-like input to a 2D uint8 matrix reduced mod 2."""
    A = np.asarray(M)
    if A.ndim == 1:
        A = A.reshape(1, -1) if A.size else A.reshape(0, 0)
    return (A.astype(np.int64) % 2).astype(np.uint8)


def as_vec(v) -> np.ndarray:
    return (np.asarray(v, dtype=np.int64).ravel() % 2).astype(np.uint8)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.uint8)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.uint8)


def matmul(A, B) -> np.ndarray:
    """Product mod 2 (works for matrix-matrix and matrix-vector)."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    return (A @ B % 2).astype(np.uint8)


def kron(*mats) -> np.ndarray:
    out = np.ones((1, 1), dtype=np.uint8)
    for M in mats:
        out = np.kron(out, np.asarray(M, dtype=np.uint8))
    return out


def is_zero(M) -> bool:
    return not np.any(np.asarray(M) % 2)


def rref(M, prefer: Pivot = "left") -> tuple[np.ndarray, list[int], np.ndarray]:
    """Reduced row-echelon form with a pivot-column preference.

    With ``prefer="right"`` columns are scanned from the last to the first, so
    the identity block lands on the rightmost independent columns. Rows of the
    result are ordered by ascending pivot column, followed by zero rows.

    Returns ``(R, pivots, T)`` with ``R = T @ M`` mod 2 and ``T`` invertible.
    """
    A = as_bin(M).copy()
    r, c = A.shape
    T = eye(r)
    order = range(c - 1, -1, -1) if prefer == "right" else range(c)
    pivots: list[int] = []
    row = 0
    for col in order:
        if row == r:
            break
        hits = np.nonzero(A[row:, col])[0]
        if hits.size == 0:
            continue
        p = row + int(hits[0])
        if p != row:
            A[[row, p]] = A[[p, row]]
            T[[row, p]] = T[[p, row]]
        others = np.nonzero(A[:, col])[0]
        others = others[others != row]
        if others.size:
            A[others] ^= A[row]
            T[others] ^= T[row]
        pivots.append(col)
        row += 1
    # sort the pivot rows by pivot column
    perm = np.argsort(pivots, kind="stable")
    idx = list(perm) + list(range(len(pivots), r))
    A = A[idx]
    T = T[idx]
    return A, sorted(pivots), T


def rank(M) -> int:
    A = as_bin(M)
    if A.size == 0:
        return 0
    return len(rref(A)[1])


def kernel_basis(M, prefer: Pivot = "right") -> np.ndarray:
    """Basis (as rows) of ``{v : M v = 0}``.

    The free columns of the reduced form carry an identity block, so with the
    default right preference and independent trailing columns the result is
    ``(I_k | A)``.
    """
    A = as_bin(M)
    c = A.shape[1]
    R, pivots, _ = rref(A, prefer=prefer)
    free = [j for j in range(c) if j not in set(pivots)]
    K = zeros(len(free), c)
    for t, f in enumerate(free):
        K[t, f] = 1
        for i, p in enumerate(pivots):
            if R[i, f]:
                K[t, p] = 1
    return K


def solve(M, b) -> np.ndarray | None:
    """Some ``x`` with ``M x = b`` mod 2, or ``None`` if none exists."""
    A = as_bin(M)
    b = as_vec(b)
    if A.shape[0] != b.size:
        raise ValueError("length of b must equal the row count of M")
    R, pivots, T = rref(A)
    tb = matmul(T, b)
    nr = len(pivots)
    if np.any(tb[nr:]):
        return None
    x = np.zeros(A.shape[1], dtype=np.uint8)
    for i, p in enumerate(pivots):
        x[p] = tb[i]
    return x


def in_rowspace(M, v) -> bool:
    A = as_bin(M)
    v = as_vec(v)
    if A.shape[0] == 0:
        return not v.any()
    return solve(A.T, v) is not None


def rowspace_equal(A, B) -> bool:
    A, B = as_bin(A), as_bin(B)
    ra, rb = rank(A), rank(B)
    if ra != rb:
        return False
    if ra == 0:
        return True
    return rank(np.vstack([A, B])) == ra


def complementary_space(M, prefer: Pivot = "right") -> np.ndarray:
    """Unit vectors on the non-pivot columns; they complete ``rowspace(M)``."""
    A = as_bin(M)
    c = A.shape[1]
    _, pivots, _ = rref(A, prefer=prefer)
    free = [j for j in range(c) if j not in set(pivots)]
    out = zeros(len(free), c)
    for t, f in enumerate(free):
        out[t, f] = 1
    return out


def weight(v) -> int:
    return int(np.count_nonzero(np.asarray(v) % 2))


# -- exchange formats ---------------------------------------------------------

def to_alist(M) -> str:
    """Serialize to the 1-indexed alist text format."""
    A = as_bin(M)
    r, c = A.shape
    rows = [list(np.nonzero(A[i])[0] + 1) for i in range(r)]
    cols = [list(np.nonzero(A[:, j])[0] + 1) for j in range(c)]
    mr = max((len(x) for x in rows), default=0)
    mc = max((len(x) for x in cols), default=0)
    lines = [f"{r} {c}", f"{mc} {mr}"]
    lines.append(" ".join(str(len(x)) for x in cols))
    lines.append(" ".join(str(len(x)) for x in rows))
    lines += [" ".join(map(str, x + [0] * (mc - len(x)))) for x in cols]
    lines += [" ".join(map(str, x + [0] * (mr - len(x)))) for x in rows]
    return "\n".join(lines) + "\n"


def from_alist(text: str) -> np.ndarray:
    toks = [line.split() for line in text.lstrip().splitlines()]
    r, c = map(int, toks[0])
    M = zeros(r, c)
    for j in range(c):
        # an all-zero matrix has empty index lines
        for i in (toks[4 + j] if 4 + j < len(toks) else []):
            if int(i):
                M[int(i) - 1, j] = 1
    return M


def to_json_obj(M) -> dict:
    A = as_bin(M)
    return {"rows": int(A.shape[0]), "cols": int(A.shape[1]), "data": A.tolist()}


def from_json_obj(obj: dict) -> np.ndarray:
    r, c = obj["rows"], obj["cols"]
    if r == 0:
        return zeros(0, c)
    A = as_bin(obj["data"])
    if A.shape != (r, c):
        raise ValueError(f"declared shape {(r, c)} does not match data {A.shape}")
    return A


def save_matrix(M, path, fmt: str = "json") -> None:
    path = Path(path)
    if fmt == "alist":
        path.write_text(to_alist(M))
    else:
        path.write_text(json.dumps(to_json_obj(M)))


def load_matrix(path) -> np.ndarray:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return from_json_obj(json.loads(text))
    return from_alist(text)
