import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from homgadget import gf2


def span_size(M: np.ndarray) -> int:
    """Number of distinct GF(2) combinations of the rows (brute force)."""
    seen = set()
    r = M.shape[0]
    for coeffs in itertools.product((0, 1), repeat=r):
        v = np.array(coeffs, dtype=np.int64) @ M.astype(np.int64) % 2 if r else np.zeros(M.shape[1], int)
        seen.add(tuple(v))
    return len(seen)


small_mats = st.tuples(st.integers(1, 6), st.integers(1, 7)).flatmap(
    lambda s: arrays(np.uint8, s, elements=st.integers(0, 1)))


@given(small_mats)
@settings(max_examples=80, deadline=None)
def test_rank_matches_span_enumeration(M):
    assert 2 ** gf2.rank(M) == span_size(M)


@given(small_mats)
@settings(max_examples=80, deadline=None)
def test_kernel_is_annihilated_and_complete(M):
    K = gf2.kernel_basis(M)
    assert gf2.is_zero(gf2.matmul(M, K.T))
    assert K.shape[0] + gf2.rank(M) == M.shape[1]
    assert gf2.rank(K) == K.shape[0]


@given(small_mats, st.data())
@settings(max_examples=80, deadline=None)
def test_solve_finds_preimage_or_reports_none(M, data):
    x0 = data.draw(arrays(np.uint8, M.shape[1], elements=st.integers(0, 1)))
    b = gf2.matmul(M, x0)
    x = gf2.solve(M, b)
    assert x is not None and np.array_equal(gf2.matmul(M, x), b)
    # exhaustive check of solvability for an arbitrary right-hand side
    b2 = data.draw(arrays(np.uint8, M.shape[0], elements=st.integers(0, 1)))
    reachable = any(np.array_equal(gf2.matmul(M, np.array(v)), b2)
                    for v in itertools.product((0, 1), repeat=M.shape[1]))
    assert (gf2.solve(M, b2) is not None) == reachable


def test_rref_right_preference_puts_identity_on_trailing_columns():
    H = np.array([[1, 1, 0, 1, 1, 0, 0], [1, 0, 1, 1, 0, 1, 0], [0, 1, 1, 1, 0, 0, 1]], dtype=np.uint8)
    R, piv, T = gf2.rref(H, prefer="right")
    assert sorted(piv) == [4, 5, 6]
    assert np.array_equal(gf2.matmul(T, H)[: len(piv)], R[: len(piv)])
    K = gf2.kernel_basis(H)
    assert np.array_equal(K[:, :4], gf2.eye(4))


def test_rowspace_equal_and_membership():
    A = np.array([[1, 1, 0], [0, 1, 1]], dtype=np.uint8)
    B = np.array([[1, 0, 1], [1, 1, 0]], dtype=np.uint8)
    assert gf2.rowspace_equal(A, B)
    assert gf2.in_rowspace(A, [1, 0, 1])
    assert not gf2.in_rowspace(A, [1, 0, 0])
    assert gf2.in_rowspace(gf2.zeros(0, 3), [0, 0, 0])


def test_solve_rejects_length_mismatch():
    with pytest.raises(ValueError):
        gf2.solve(gf2.eye(3), [1, 0])


@given(small_mats)
@settings(max_examples=40, deadline=None)
def test_alist_and_json_round_trip(M):
    assert np.array_equal(gf2.from_alist(gf2.to_alist(M)), M)
    assert np.array_equal(gf2.from_json_obj(gf2.to_json_obj(M)), M)


def test_alist_zero_and_empty_matrices():
    for M in (gf2.zeros(3, 4), gf2.zeros(0, 3)):
        assert np.array_equal(gf2.from_alist(gf2.to_alist(M)), M)


def test_alist_layout_is_one_indexed():
    text = gf2.to_alist(np.array([[1, 0], [1, 1]], dtype=np.uint8))
    assert text.splitlines() == ["2 2", "2 2", "2 1", "1 2", "1 2", "2 0", "1 0", "1 2"]


def test_save_and_load_matrix(tmp_path):
    M = np.array([[1, 0, 1], [0, 1, 1]], dtype=np.uint8)
    for fmt in ("json", "alist"):
        p = tmp_path / f"m.{fmt}"
        gf2.save_matrix(M, p, fmt)
        assert np.array_equal(gf2.load_matrix(p), M)


def test_json_shape_mismatch_is_rejected():
    with pytest.raises(ValueError):
        gf2.from_json_obj({"rows": 2, "cols": 2, "data": [[1, 0, 1]]})


def test_kron_and_weight():
    assert np.array_equal(gf2.kron([[1, 1]], [[1], [1]]), np.ones((2, 2), np.uint8))
    assert gf2.weight([1, 0, 3, 2]) == 2
