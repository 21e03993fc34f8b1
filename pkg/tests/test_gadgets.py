
import numpy as np
import pytest

from homgadget import gf2
from homgadget.classical import ClassicalCode, hamming_code
from homgadget.complexes import hgp, homological_3d
from homgadget.gadgets import (certify, cube_ppms, czs_action, fold_czs, fold_hswap, grid_ppms, horizontal_ppms,
                               hswap_action, translation_gadget)
from homgadget.verify import (Pauli, commutes, extract_measured_products, grid_products, is_symplectic,
                              product_vector, stabilizer_membership)


@pytest.fixture(scope="module")
def cube_code():
    P = ClassicalCode([[1, 1, 1]])
    return homological_3d(P, P, P)


def _vecs(products):
    return np.array([p.vec() for p in products], dtype=np.uint8).reshape(len(products), -1)


def test_single_logical_z_measurement(hamming_hgp):
    s = grid_ppms(hamming_hgp, "Z", [[0]], [[0]])
    rep = certify(s)
    assert rep.certified, rep.mismatches
    assert [str(p) for p in rep.measured] == ["Z[1,1]"]


def test_two_by_two_block_product(hamming_hgp):
    s = grid_ppms(hamming_hgp, "Z", [[0, 1]], [[0, 1]])
    rep = certify(s)
    assert rep.certified
    assert [str(p) for p in rep.measured] == ["Z[1,1]Z[1,2]Z[2,1]Z[2,2]"]


@pytest.mark.parametrize("basis", ["X", "Z"])
def test_grid_products_over_several_edges(hamming_hgp, basis):
    Er, Ec = [[0, 2], [3]], [[1], [0, 3]]
    s = grid_ppms(hamming_hgp, basis, Er, Ec)
    assert certify(s).certified
    got = _vecs(extract_measured_products(s))
    assert gf2.rowspace_equal(got, np.array(grid_products((4, 4), basis, [Er, Ec])))


def test_horizontal_products_cover_every_row(hamming_hgp):
    s = horizontal_ppms(hamming_hgp, [[0, 1, 2]])
    rep = certify(s)
    assert rep.certified
    assert len(rep.measured) == 4


def test_wrong_declaration_is_caught(hamming_hgp):
    s = grid_ppms(hamming_hgp, "Z", [[0, 1]], [[0]])
    s.declared_effect = [product_vector((4, 4), "Z", [(0, 0)])]
    rep = certify(s)
    assert not rep.certified and rep.mismatches
    assert not s.certified


@pytest.mark.parametrize("basis", ["X", "Z"])
def test_cube_products(cube_code, basis):
    s = cube_ppms(cube_code, basis, [[0, 1]], [[0], [1]], [[0, 1]])
    rep = certify(s)
    assert rep.certified, rep.mismatches
    assert len(rep.measured) == 2


def test_cube_products_need_a_three_dimensional_code(hamming_hgp):
    with pytest.raises(ValueError):
        cube_ppms(hamming_hgp, "Z", [[0]], [[0]], [[0]])
    with pytest.raises(ValueError):
        grid_ppms(hamming_hgp, "Y", [[0]], [[0]])


@pytest.mark.parametrize("shift", [(1, 0), (0, 2), (2, 1)])
def test_translation_gadget_shifts_the_grid(ogsc117, shift):
    s = translation_gadget(ogsc117, *shift)
    rep = certify(s)
    assert rep.certified, rep.mismatches
    assert is_symplectic(rep.action)


def test_fold_gates_act_as_declared(hamming_hgp):
    for build, want in ((fold_hswap, hswap_action(4)), (fold_czs, czs_action(4))):
        rep = certify(build(hamming_hgp))
        assert rep.certified
        assert np.array_equal(rep.action, want)
        assert is_symplectic(want)


def test_fold_gates_need_symmetric_codes():
    code = hgp(hamming_code(), ClassicalCode([[1, 1, 0], [0, 1, 1]]))
    with pytest.raises(ValueError):
        fold_hswap(code)


def test_pauli_helpers(surface13):
    P, Q = Pauli.from_string("XZI"), Pauli.from_string("ZXI")
    assert commutes(P, Q)
    assert not commutes(Pauli.from_string("XII"), Pauli.from_string("ZII"))
    assert str(P * Q) in ("YYI",)
    stab = Pauli(surface13.HX[0], np.zeros(surface13.n, np.uint8))
    assert stabilizer_membership(stab, surface13)
    log = Pauli(surface13.logicals.X[0], np.zeros(surface13.n, np.uint8))
    assert not stabilizer_membership(log, surface13)
