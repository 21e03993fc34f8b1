import numpy as np
import pytest

from homgadget import gf2
from homgadget.classical import ClassicalCode, hamming_code, repetition_code
from homgadget.complexes import (ChainComplex, CssCode, hgp,
                                 is_nontrivial_logical, min_logical_weight, product, summands, total)


def _boundaries_square_to_zero(T: ChainComplex) -> bool:
    return all(gf2.is_zero(gf2.matmul(T.boundary(i), T.boundary(i + 1))) for i in range(1, T.length))


def test_chain_complex_validation():
    with pytest.raises(ValueError):
        ChainComplex([2, 2, 2], [gf2.eye(2), gf2.eye(2)])  # d1 d2 = I
    C = ChainComplex.from_code([[1, 1, 0], [0, 1, 1]])
    assert C.dims == [2, 3]
    assert C.boundary(0).shape == (0, 2) and C.boundary(2).shape == (3, 0)
    Ct = ChainComplex.from_code([[1, 1, 0], [0, 1, 1]], transpose=True)
    assert Ct.dims == [3, 2]


@pytest.mark.parametrize("factors", [2, 3, 4])
def test_total_complex_of_products_is_a_complex(factors):
    H = repetition_code(3).H
    P = product([ChainComplex.from_code(H, transpose=bool(i % 2)) for i in range(factors)])
    T = total(P)
    assert T.length == factors
    assert _boundaries_square_to_zero(T)
    assert sum(T.dims) == 5 ** factors
    assert summands(P, 0) == [(0,) * factors]


def test_hgp_dimensions_and_css_condition():
    C1, C2 = hamming_code(), repetition_code(3)
    code = hgp(C1, C2)
    assert code.n == C1.n * C2.n + C1.r * C2.r
    assert code.k == C1.k * C2.k
    assert gf2.is_zero(gf2.matmul(code.HX, code.HZ.T))
    assert len(code.coords_qubits) == code.n
    assert len(code.coords_xchecks) == code.HX.shape[0]
    assert len(code.coords_zchecks) == code.HZ.shape[0]
    assert code.qubit_index(1, 2) == 1 * C2.n + 2


def test_surface_code_has_no_logical_below_three(surface13):
    assert surface13.params() == (13, 1, 3)
    assert min_logical_weight(surface13, 2) is None
    assert min_logical_weight(surface13, 3) == 3


def test_hamming_hgp_parameters(hamming_hgp):
    assert hamming_hgp.params() == (58, 16, 3)
    assert hamming_hgp.symmetric


@pytest.mark.parametrize("fixture", ["surface13", "hamming_hgp", "ogsc117", "code3d"])
def test_canonical_logicals_pair_as_identity(fixture, request):
    code = request.getfixturevalue(fixture)
    L = code.logicals
    assert L.X.shape[0] == code.k == int(np.prod(L.grid_shape))
    assert gf2.is_zero(gf2.matmul(code.HZ, L.X.T))
    assert gf2.is_zero(gf2.matmul(code.HX, L.Z.T))
    assert np.array_equal(gf2.matmul(L.X, L.Z.T), gf2.eye(code.k))
    for q in range(code.k):
        assert is_nontrivial_logical(code, L.X[q], "X")
        assert is_nontrivial_logical(code, L.Z[q], "Z")


def test_two_dimensional_logicals_cross_on_one_qubit(hamming_hgp):
    L = hamming_hgp.logicals
    for q in range(hamming_hgp.k):
        assert int((L.X[q] & L.Z[q]).sum()) == 1


def test_three_dimensional_code_has_metachecks(code3d):
    assert code3d.params() == (51, 1, 3)
    assert gf2.is_zero(gf2.matmul(code3d.MX, code3d.HX))
    assert code3d.logicals.grid_shape == (1, 1, 1)


def test_four_dimensional_code_shapes(code4d):
    assert code4d.n == 216 and code4d.k == 0
    assert code4d.HX.shape == (96, 216)
    assert code4d.MX.shape == (16, 96)
    assert code4d.HZ.shape == (216, 216)
    assert code4d.MZ.shape == (81, 216)
    assert gf2.is_zero(gf2.matmul(code4d.MX, code4d.HX))
    assert gf2.is_zero(gf2.matmul(code4d.MZ, code4d.HZ))


def test_rank_deficient_bases_are_rejected_unless_relaxed():
    H = np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]], dtype=np.uint8)
    C = ClassicalCode(H)
    with pytest.raises(ValueError):
        hgp(C, C)
    relaxed = hgp(C, C, strict=False)
    assert gf2.is_zero(gf2.matmul(relaxed.HX, relaxed.HZ.T))


def test_css_code_rejects_anticommuting_checks():
    with pytest.raises(ValueError):
        CssCode(np.array([[1, 0]]), np.array([[1, 0]]))
    with pytest.raises(ValueError):
        CssCode(np.array([[1, 1]]), np.array([[1, 1]]), MX=np.array([[1]]))
