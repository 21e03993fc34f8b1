"""End-to-end acceptance criteria; each test records one PASS/FAIL line."""

import itertools
import time

import numpy as np

from homgadget import gf2
from homgadget.classical import augment, distance_bruteforce, information_bits, ogsc_code, puncture
from homgadget.compiler import compile_layer, cost_report, layer_equivalent, measure_layers, random_layer
from homgadget.complexes import hgp, min_logical_weight
from homgadget.gadgets import certify, grid_ppms, horizontal_ppms, translation_gadget
from homgadget.homomorphism import ClassicalChainMap, lift_to_product, puncture_augment_map
from homgadget.logical_gadgets import ghz_certified, ghz_schedule
from homgadget.singleshot import syndrome_error_sweep
from homgadget.subroutines import adder_schedule
from homgadget.verify import extract_measured_products, grid_products, product_vector

from acceptance_log import record
from oracles import random_full_rank_code, random_modification_case

OGSC = {"ogsc_9_3_4": [117, 9, 4], "ogsc_12_3_6": [225, 9, 6],
        "ogsc_16_4_8": [400, 16, 8], "ogsc_20_5_9": [625, 25, 9]}


def _vecs(products):
    return np.array([p.vec() for p in products], dtype=np.uint8).reshape(len(products), -1)


def test_criterion_01_product_code_parameters():
    t0 = time.perf_counter()
    got = {}
    ok = True
    for name, want in OGSC.items():
        C = ogsc_code(name)
        code = hgp(C, C)
        got[name] = [code.n, code.k, code.d]
        ok &= got[name] == want
        ok &= distance_bruteforce(C) == want[2] == C.d
        ok &= bool(gf2.is_zero(gf2.matmul(C.G, C.H.T)))
    dt = time.perf_counter() - t0
    ok &= dt < 10
    assert record(1, ok, f"OGSC product codes {list(got.values())} in {dt:.1f}s")


def test_criterion_02_surface_code(rep3):
    code = hgp(rep3, rep3)
    params = [code.n, code.k, code.d]
    low = min_logical_weight(code, 2)
    ok = params == [13, 1, 3] and low is None and min_logical_weight(code, 3) == 3
    assert record(2, ok, f"surface code {params}, lightest logical found at weight {min_logical_weight(code, 3)}")


def test_criterion_03_lifted_squares_commute():
    rng = np.random.default_rng(2024)
    t0 = time.perf_counter()
    bad = 0
    for _ in range(200):
        C, S, H0 = random_modification_case(rng)
        _, f = puncture_augment_map(C, S, H0)
        other = ClassicalChainMap.identity(random_full_rank_code(rng, 8))
        maps = [f, other] if rng.random() < 0.5 else [other, f]
        m = lift_to_product(maps)
        if not (m.verify()["commutes"] and all(gf2.is_zero(r) for r in m.residuals())):
            bad += 1
    dt = time.perf_counter() - t0
    assert record(3, bad == 0 and dt < 30, f"200 random lifted chain maps, {bad} non-commuting, {dt:.1f}s")


def _random_edges(rng, n):
    perm = [int(x) for x in rng.permutation(n)]
    cuts = sorted(int(c) for c in rng.choice(range(1, n), size=int(rng.integers(0, n)), replace=False))
    parts = [perm[a:b] for a, b in zip([0] + cuts, cuts + [n])]
    keep = [sorted(p) for p in parts if rng.random() < 0.7]
    return keep or [sorted(parts[0])]


def test_criterion_04_horizontal_products(hamming_hgp):
    rng = np.random.default_rng(7)
    t0 = time.perf_counter()
    bad = []
    assert [hamming_hgp.n, hamming_hgp.k, hamming_hgp.d] == [58, 16, 3]
    for _ in range(20):
        Eh = _random_edges(rng, 4)
        s = horizontal_ppms(hamming_hgp, Eh)
        got = _vecs(extract_measured_products(s))
        want = np.array(grid_products((4, 4), "Z", [[[i] for i in range(4)], Eh]))
        if not gf2.rowspace_equal(got, want):
            bad.append(Eh)
    dt = time.perf_counter() - t0
    assert record(4, not bad and dt < 60, f"20 random horizontal hyperedge sets on [[58,16,3]], "
                                          f"{len(bad)} mismatches, {dt:.1f}s")


def test_criterion_05_grid_measurements(hamming_hgp):
    single = certify(grid_ppms(hamming_hgp, "Z", [[0]], [[0]]))
    block = certify(grid_ppms(hamming_hgp, "Z", [[0, 1]], [[0, 1]]))
    ok = (single.certified and block.certified
          and gf2.rowspace_equal(_vecs(single.measured), product_vector((4, 4), "Z", [(0, 0)])[None])
          and gf2.rowspace_equal(_vecs(block.measured),
                                 product_vector((4, 4), "Z", [(0, 0), (0, 1), (1, 0), (1, 1)])[None]))
    assert record(5, ok, f"measured {[str(p) for p in single.measured]} and {[str(p) for p in block.measured]}")


def test_criterion_06_modifications_keep_distance():
    rng = np.random.default_rng(6)
    drops = 0
    checked = 0
    while checked < 50:
        C = random_full_rank_code(rng, 14)
        if C.k < 2:
            continue
        checked += 1
        d = distance_bruteforce(C)
        info = information_bits(C)
        S = sorted(int(x) for x in rng.choice(info, size=int(rng.integers(1, len(info))), replace=False))
        P = puncture(C, S)
        if P.k and distance_bruteforce(P) < d:
            drops += 1
        H0 = rng.integers(0, 2, size=(int(rng.integers(1, 3)), C.n)).astype(np.uint8)
        A = augment(C, H0)
        if A.k and distance_bruteforce(A) < d:
            drops += 1
    assert record(6, drops == 0, f"50 random codes, puncture and augment distance drops: {drops}")


def test_criterion_07_translations(ogsc117):
    t0 = time.perf_counter()
    bad = [(i, j) for i, j in itertools.product(range(3), repeat=2)
           if not certify(translation_gadget(ogsc117, i, j)).certified]
    dt = time.perf_counter() - t0
    assert record(7, not bad and dt < 30, f"9 translations on [[117,9,4]], failures {bad}, {dt:.1f}s")


def test_criterion_08_ghz():
    s = ghz_schedule(3, 3, d=4)
    ok = ghz_certified(s) and s.count("GPPM") == 4 and s.count("LPrep") == 1 and s.logical_cycles <= 5
    assert record(8, ok, f"GHZ on 3x3 with {s.count('GPPM')} GPPMs, {s.count('LPrep')} prep, "
                         f"{s.logical_cycles} logical cycles")


def test_criterion_09_compiler_equivalence():
    rng = np.random.default_rng(9)
    bad = 0
    for shape, count in (((3, 3), 50), ((4, 4), 20)):
        for _ in range(count):
            layer = random_layer(shape, rng)
            if not layer_equivalent(compile_layer(layer), layer):
                bad += 1
    assert record(9, bad == 0, f"70 random Clifford layers (50 at k=9, 20 at k=16), {bad} inequivalent")


def test_criterion_10_cycles_per_logical_decrease():
    ratios = []
    for l, d in ((3, 4), (4, 8), (5, 9)):
        m = measure_layers((l, l), d, n_layers=5, seed=0)
        ratios.append(m["logical_cycles"] / (l * l))
    ok = all(b < a for a, b in zip(ratios, ratios[1:]))
    assert record(10, ok, "logical cycles per k at k=9,16,25: " + ", ".join(f"{r:.3f}" for r in ratios))


def test_criterion_11_metachecks(code3d):
    L = code3d.logicals
    ok = (gf2.is_zero(gf2.matmul(code3d.MX, code3d.HX)) and gf2.is_zero(gf2.matmul(code3d.HX, code3d.HZ.T))
          and np.array_equal(gf2.matmul(L.X, L.Z.T), gf2.eye(code3d.k)))
    assert record(11, bool(ok), f"3D code [[{code3d.n},{code3d.k}]] with {code3d.MX.shape[0]} metachecks, "
                                f"identity pairing")


def test_criterion_12_single_shot(code4d):
    t0 = time.perf_counter()
    rep = syndrome_error_sweep(code4d, max_weight=1)
    dt = time.perf_counter() - t0
    ok = code4d.n == 216 and rep["failures"] == 0 and rep["max_residual_reduced_weight"] <= 2 and dt < 300
    assert record(12, ok, f"{rep['traces']} single-shot traces on the 216-qubit code, {rep['failures']} failures, "
                          f"worst residual reduced weight {rep['max_residual_reduced_weight']}, {dt:.1f}s")


def test_criterion_13_cost_report():
    rep = cost_report(9, 4, n=117, n_layers=3)
    forms = [(r.space_form, r.time_form) for r in rep.rows]
    want = [("Θ(kd²)", "Θ(d)"), ("Θ(k)", "Θ(k)·d"), ("Θ(k)", "O(k^{3/4})·d")]
    gppm = rep.row("hgp-gppm")
    adder = adder_schedule(9, d=4).notes
    ok = (forms == want and gppm.measured and gppm.time > 0
          and adder["c1"] > 0 and adder["c2"] > 0
          and adder["parallel_logical_cycles"] + adder["tail_logical_cycles"] > 0)
    assert record(13, ok, f"closed forms {forms}; measured hgp-gppm {gppm.space:.0f} qubits x {gppm.time:.0f} "
                          f"cycles; adder {adder['decomposition']} with c1={adder['c1']:.2f}, c2={adder['c2']:.2f}")
