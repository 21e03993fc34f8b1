"""Brute-force reference implementations used only by the tests."""

import itertools

import numpy as np

from homgadget import gf2
from homgadget.classical import ClassicalCode


def distance_by_vectors(H: np.ndarray) -> int:
    """Minimum weight of a nonzero ``v`` with ``H v = 0``, scanning all ``2^n`` vectors by weight."""
    n = H.shape[1]
    for w in range(1, n + 1):
        for supp in itertools.combinations(range(n), w):
            v = np.zeros(n, np.uint8)
            v[list(supp)] = 1
            if gf2.is_zero(gf2.matmul(H, v)):
                return w
    return 0


def random_full_rank_code(rng: np.random.Generator, n_max: int = 12, min_k: int = 1) -> ClassicalCode:
    """Random check matrix with independent rows and ``k >= min_k``."""
    while True:
        n = int(rng.integers(4, n_max + 1))
        r = int(rng.integers(1, n - min_k + 1))
        H = rng.integers(0, 2, size=(r, n)).astype(np.uint8)
        if gf2.rank(H) == r and not (H.sum(axis=0) == 0).any():
            return ClassicalCode(H)


def min_weight_solution(A: np.ndarray, target: np.ndarray, cap: int):
    """All minimum-weight ``x`` (weight <= cap) with ``A x = target``."""
    n = A.shape[1]
    for w in range(0, cap + 1):
        hits = []
        for supp in itertools.combinations(range(n), w):
            x = np.zeros(n, np.uint8)
            x[list(supp)] = 1
            if np.array_equal(gf2.matmul(A, x), target):
                hits.append(x)
        if hits:
            return hits
    return []


def random_modification_case(rng: np.random.Generator, n_max: int = 12):
    """A random (code, S within the information bits, H0) triple."""
    from homgadget.classical import information_bits

    C = random_full_rank_code(rng, n_max)
    info = information_bits(C)
    size = int(rng.integers(0, len(info) + 1))
    S = sorted(rng.choice(info, size=size, replace=False).tolist()) if size else []
    n1 = C.n - len(S)
    H0 = rng.integers(0, 2, size=(int(rng.integers(0, 3)), n1)).astype(np.uint8)
    return C, S, H0
