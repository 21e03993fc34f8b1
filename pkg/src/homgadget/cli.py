"""Command-line front end.

Every verb writes its artifact to ``--out`` (or stdout). Indices on the command
line are 1-based, as in the JSON formats. Exit status is 0 on success, 1 when a
requested verification fails and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import gf2
from .classical import distance_bruteforce, repetition_code
from .compiler import CompilerConfig, compile_layer, cost_report, layer_equivalent
from .complexes import CssCode, homological_4d, min_logical_weight
from .gadgets import certify, cube_ppms, fold_czs, fold_hswap, grid_ppms, horizontal_ppms, translation_gadget
from .homomorphism import ClassicalChainMap, lift_to_product, modify_code, puncture_augment_map
from .logical import LogicalCircuit, LogicalMachine, schedule_equivalent
from .logical_gadgets import (cyclic_shift, ghz_certified, ghz_schedule, permutation_circuit,
                              selective_teleport, teleport_certified)
from .schedule import GadgetSchedule
from .serialize import (FORMATS, build_from_spec, chain_map_to_obj, classical_from_obj, classical_to_obj,
                        code_to_obj, load_code, read_spec)
from .singleshot import SoundnessParams, soundness_probe, syndrome_error_sweep
from .subroutines import adder_schedule, msd_round_schedule, msi_schedule

# design distance per grid size used when no code is given
DEFAULT_D = {9: 4, 16: 8, 25: 9}
DEFAULT_N = {9: 117, 16: 400, 25: 625}


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    def __init__(self, report):
        super().__init__("verification failed")
        self.report = report


# -- helpers ---------------------------------------------------------------------------


def _json_arg(text: str | None, default=None):
    if text is None:
        return default
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"not valid JSON: {text!r}") from exc


def _zero(edges) -> list[list[int]]:
    return [[int(x) - 1 for x in e] for e in edges]


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _report(obj: dict) -> None:
    sys.stderr.write(json.dumps(obj, default=str) + "\n")


def _read_json(path: str):
    try:
        return read_spec(path)
    except FileNotFoundError as exc:
        raise UsageError(f"no such file: {path}") from exc


def _code(args) -> CssCode:
    if not args.code:
        raise UsageError("this verb needs --code")
    return load_code(args.code)


def _shape(args, code: CssCode | None = None) -> tuple[int, int]:
    if getattr(args, "shape", None):
        shape = tuple(_json_arg(args.shape))
    elif code is not None and code.logicals is not None:
        shape = tuple(code.logicals.grid_shape)
    else:
        raise UsageError("need --shape or a --code with a logical grid")
    if len(shape) != 2:
        raise UsageError("the logical grid must be two-dimensional")
    return int(shape[0]), int(shape[1])


def _schedule_out(args, sched: GadgetSchedule) -> None:
    _emit(args, sched.to_jsonl())


# -- verbs -----------------------------------------------------------------------------


def cmd_build_code(args) -> int:
    spec = _read_json(args.spec)
    code = build_from_spec(spec)
    _emit(args, json.dumps(code_to_obj(code, args.format)) + "\n")
    if args.certify and "expected" in spec:
        got = [code.n, code.k, code.d]
        if got != list(spec["expected"]):
            raise VerificationFailed({"expected": spec["expected"], "got": got})
        _report({"certified": True, "params": got})
    return 0


def verify_code(code: CssCode, max_weight: int | None) -> dict:
    checks = {"HX_HZT_zero": bool(gf2.is_zero(gf2.matmul(code.HX, code.HZ.T)))}
    if code.MX is not None:
        checks["MX_HX_zero"] = bool(gf2.is_zero(gf2.matmul(code.MX, code.HX)))
    if code.MZ is not None:
        checks["MZ_HZ_zero"] = bool(gf2.is_zero(gf2.matmul(code.MZ, code.HZ)))
    if code.logicals is not None:
        L = code.logicals
        checks["logical_count"] = L.X.shape[0] == code.k
        checks["X_logicals_commute"] = bool(gf2.is_zero(gf2.matmul(code.HZ, L.X.T)))
        checks["Z_logicals_commute"] = bool(gf2.is_zero(gf2.matmul(code.HX, L.Z.T)))
        checks["pairing_identity"] = bool(np.array_equal(gf2.matmul(L.X, L.Z.T), gf2.eye(code.k)))
    out: dict = {"n": code.n, "k": code.k, "d": code.d, "checks": checks}
    if code.bases:
        out["base_distances"] = [distance_bruteforce(b) if b.k else None for b in code.bases]
    if max_weight:
        w = min_logical_weight(code, max_weight)
        out["min_logical_weight_at_most"] = {"cap": max_weight, "found": w}
        if code.d is not None and w is not None:
            checks["no_logical_below_d"] = w >= code.d
    out["ok"] = all(checks.values())
    return out


def cmd_verify_code(args) -> int:
    rep = verify_code(_code(args), args.max_weight)
    _emit(args, json.dumps(rep) + "\n")
    if not rep["ok"]:
        raise VerificationFailed(rep)
    return 0


def _classical_input(args):
    if not args.spec:
        raise UsageError("this verb needs --spec with a classical code")
    spec = _read_json(args.spec)
    return classical_from_obj(spec.get("code", spec))


def _modification(args, code):
    S = [s - 1 for s in _json_arg(args.puncture, [])]
    if args.edges:
        return modify_code(code, S, _zero(_json_arg(args.edges)))
    H0 = _json_arg(args.augment)
    return puncture_augment_map(code, S, H0)


def cmd_modify(args) -> int:
    code = _classical_input(args)
    new, f = _modification(args, code)
    rep = {"code": classical_to_obj(new, args.format), "n": new.n, "k": new.k,
           "d_before": distance_bruteforce(code) if code.k else None,
           "d_after": distance_bruteforce(new) if new.k else None,
           "punctured": [s + 1 for s in f.S], "commutes": bool(f.commutes())}
    _emit(args, json.dumps(rep) + "\n")
    if args.certify:
        ok = rep["commutes"] and (rep["d_after"] is None or rep["d_before"] is None
                                  or rep["d_after"] >= rep["d_before"])
        if not ok:
            raise VerificationFailed(rep)
    return 0


def cmd_homomorphism(args) -> int:
    code = _classical_input(args)
    _, f = _modification(args, code)
    ident = ClassicalChainMap.identity(code)
    maps = [f, ident] if args.factor == 1 else [ident, f]
    try:
        m = lift_to_product(maps)
    except AssertionError as exc:
        raise VerificationFailed({"commutes": False, "error": str(exc)}) from exc
    _emit(args, json.dumps(chain_map_to_obj(m, args.format)) + "\n")
    return 0


def _group_check(ok: bool) -> tuple[bool, dict]:
    return ok, {"certified": ok, "mismatches": [] if ok else ["simulated group differs from the declared effect"]}


def _gadget_schedule(args) -> tuple[GadgetSchedule, Callable[[], tuple[bool, dict]]]:
    """Build the requested gadget and a certifier returning ``(ok, report)``."""
    kind = args.kind
    if kind in ("teleport", "shift", "ghz"):
        code = load_code(args.code) if args.code else None
        shape = _shape(args, code)
        d = args.d or (code.d if code is not None and code.d else 1)
        if kind == "teleport":
            cells = [tuple(c) for c in _zero(_json_arg(args.cells, []))]
            if not cells:
                raise UsageError("teleport needs --cells")
            s = selective_teleport(shape, cells, d)
            return s, lambda: _group_check(teleport_certified(s, shape, cells))
        if kind == "shift":
            s = cyclic_shift(shape, d)
            k = shape[0] * shape[1]
            circ = permutation_circuit(shape, [(t + 1) % k for t in range(k)])
            return s, lambda: _group_check(schedule_equivalent(s, circ))
        s = ghz_schedule(shape[0], shape[1], d)
        return s, lambda: _group_check(ghz_certified(s))
    code = _code(args)
    if kind == "hppm":
        s = horizontal_ppms(code, _zero(_json_arg(args.edges, [])))
    elif kind == "gppm":
        s = grid_ppms(code, args.basis, _zero(_json_arg(args.rows, [])), _zero(_json_arg(args.cols, [])))
    elif kind == "cppm":
        s = cube_ppms(code, args.basis, *(_zero(_json_arg(e, [])) for e in (args.ex, args.ey, args.ez)))
    elif kind == "translate":
        i, j = _json_arg(args.shift, [0, 0])
        s = translation_gadget(code, int(i), int(j))
    elif kind == "hswap":
        s = fold_hswap(code)
    else:
        s = fold_czs(code)

    def check():
        rep = certify(s)
        return rep.certified, rep.to_json_obj()

    return s, check


def cmd_gadget(args) -> int:
    sched, check = _gadget_schedule(args)
    if args.certify:
        ok, rep = check()
        sched.certified = ok
        _schedule_out(args, sched)
        if not ok:
            raise VerificationFailed(rep)
        _report({"certified": True})
        return 0
    _schedule_out(args, sched)
    return 0


def cmd_compile(args) -> int:
    code = load_code(args.code) if args.code else None
    shape = _shape(args, code)
    layer = LogicalCircuit.from_json_obj(_read_json(args.circuit), shape)
    d = args.d or (code.d if code is not None and code.d else 1)
    cfg = CompilerConfig(m=args.m, d=d, max_workspaces=args.max_workspaces)
    sched = compile_layer(layer, cfg)
    if args.certify:
        sched.certified = layer_equivalent(sched, layer)
    text = sched.to_jsonl()
    if args.report == "cost":
        rep = cost_report(layer.k, d, n=code.n if code is not None else None, sched=sched)
        text += json.dumps({"cost_report": rep.to_json_obj()}) + "\n"
    _emit(args, text)
    if args.certify and not sched.certified:
        raise VerificationFailed({"certified": False, "mismatches": ["compiled schedule differs from the layer"]})
    return 0


def cmd_subroutine(args) -> int:
    if args.kind == "msd":
        s = msd_round_schedule(args.k, args.mode, args.d or 1, args.seed)
    elif args.kind == "msi":
        s = msi_schedule(args.k, args.mode, args.d or 1, args.seed)
    else:
        s = adder_schedule(args.k, args.d or 1, args.seed)
    if args.certify:
        # the Clifford skeleton must execute; annotations carry no semantics
        m = LogicalMachine(s.blocks)
        for b in s.data_blocks:
            m.allocate(b)
        m.run(s)
        s.certified = True
    text = s.to_jsonl() + json.dumps({"notes": s.notes}, default=str) + "\n"
    _emit(args, text)
    return 0


def cmd_single_shot(args) -> int:
    if args.code:
        code = load_code(args.code)
    else:
        code = homological_4d([repetition_code(3)] * 4)
    params = SoundnessParams(t=args.t)
    probe = soundness_probe(code, args.max_weight, params, args.basis)
    sweep = syndrome_error_sweep(code, args.sweep_weight, params, args.basis)
    rep = {"code": {"n": code.n, "k": code.k, "kind": code.kind}, "probe": probe, "sweep": sweep}
    _emit(args, json.dumps(rep) + "\n")
    if not probe["informational"] and (probe["violations"] or sweep["failures"]):
        raise VerificationFailed({"violations": len(probe["violations"]), "failures": sweep["failures"]})
    return 0


def _one_report(job):
    k, d, n, seed, layers = job
    return cost_report(k, d, n=n, seed=seed, n_layers=layers)


def cmd_report(args) -> int:
    ks = args.k
    ds = args.d_list or [DEFAULT_D.get(k) for k in ks]
    if len(ds) != len(ks) or any(d is None for d in ds):
        raise UsageError("give one --d per --k for grids without a default distance")
    for k in ks:
        if math.isqrt(k) ** 2 != k:
            raise UsageError(f"k={k} is not a square grid")
    jobs = [(k, d, DEFAULT_N.get(k), args.seed, args.layers) for k, d in zip(ks, ds)]
    if args.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as ex:
            reports = list(ex.map(_one_report, jobs))
    else:
        reports = [_one_report(j) for j in jobs]
    parts = []
    for r in reports:
        parts.append(f"== k={r.k} d={r.d} ==\n{r.to_text()}\n")
    parts.append("== json ==\n" + json.dumps([r.to_json_obj() for r in reports], default=str) + "\n")
    _emit(args, "".join(parts))
    if args.figure:
        from .plotting import plot_cost_reports
        path = plot_cost_reports(reports, args.figure)
        _report({"figure": str(path)})
    return 0


# -- parser ----------------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--out", help="write the artifact here instead of stdout")
    p.add_argument("--seed", type=int, default=0, help="seed for numpy's default_rng (PCG64)")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--certify", action="store_true", help="verify the result; exit 1 on mismatch")
    p.add_argument("--format", choices=FORMATS, default="json", help="matrix encoding")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(prog="homgadget", description="Homomorphic measurement gadgets for product codes.")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("build-code", parents=[common], help="build a product code from a spec")
    p.add_argument("--spec", required=True)
    p.set_defaults(func=cmd_build_code)

    p = sub.add_parser("verify-code", parents=[common], help="check a code file")
    p.add_argument("--code", required=True)
    p.add_argument("--max-weight", type=int, default=0, help="exhaustive logical search up to this weight")
    p.set_defaults(func=cmd_verify_code)

    for verb, func in (("modify", cmd_modify), ("homomorphism", cmd_homomorphism)):
        p = sub.add_parser(verb, parents=[common])
        p.add_argument("--spec", required=True, help="classical code spec")
        p.add_argument("--puncture", help="bits to puncture, e.g. [1,2]")
        p.add_argument("--augment", help="rows of extra checks on the surviving bits")
        p.add_argument("--edges", help="hyperedges tied into repetition codes")
        if verb == "homomorphism":
            p.add_argument("--factor", type=int, choices=(1, 2), default=2, help="factor carrying the modification")
        p.set_defaults(func=func)

    p = sub.add_parser("gadget", parents=[common], help="synthesize a gadget schedule")
    p.add_argument("kind", choices=("hppm", "gppm", "cppm", "translate", "hswap", "czs", "teleport", "shift", "ghz"))
    p.add_argument("--code")
    p.add_argument("--spec", help="alias of --code for construction specs")
    p.add_argument("--basis", choices=("X", "Z"), default="Z")
    p.add_argument("--rows")
    p.add_argument("--cols")
    p.add_argument("--edges")
    p.add_argument("--ex")
    p.add_argument("--ey")
    p.add_argument("--ez")
    p.add_argument("--shift")
    p.add_argument("--shape")
    p.add_argument("--cells")
    p.add_argument("--d", type=int)
    p.set_defaults(func=cmd_gadget)

    p = sub.add_parser("compile", parents=[common], help="compile one Clifford layer")
    p.add_argument("--circuit", required=True)
    p.add_argument("--code")
    p.add_argument("--shape")
    p.add_argument("--d", type=int)
    p.add_argument("--m", type=int, help="dense-cluster threshold (default ceil(k^(1/4)))")
    p.add_argument("--max-workspaces", type=int)
    p.add_argument("--report", choices=("cost",))
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("subroutine", parents=[common], help="magic-state and adder schedules")
    p.add_argument("kind", choices=("msd", "msi", "adder"))
    p.add_argument("--k", type=int, default=9)
    p.add_argument("--mode", choices=("diagonal", "full"), default="diagonal")
    p.add_argument("--d", type=int)
    p.set_defaults(func=cmd_subroutine)

    p = sub.add_parser("single-shot", parents=[common], help="metacheck repair and soundness probe")
    p.add_argument("--code", help="defaults to the 4D code of four [3,1,3] repetition codes")
    p.add_argument("--basis", choices=("X", "Z"), default="Z")
    p.add_argument("--max-weight", type=int, default=1)
    p.add_argument("--sweep-weight", type=int, default=1)
    p.add_argument("--t", type=int, default=3)
    p.set_defaults(func=cmd_single_shot)

    p = sub.add_parser("report", parents=[common], help="space-time cost table")
    p.add_argument("--k", type=int, nargs="+", default=[9, 16, 25])
    p.add_argument("--d", dest="d_list", type=int, nargs="+")
    p.add_argument("--layers", type=int, default=3)
    p.add_argument("--figure", help="also render a figure to this path")
    p.set_defaults(func=cmd_report)
    return ap


def run(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "spec", None) and getattr(args, "verb", "") == "gadget" and not args.code:
        args.code = args.spec
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        sys.stderr.write(f"homgadget {args.verb}: {exc}\n")
        return 2
    except VerificationFailed as exc:
        _report({"certified": False, "report": exc.report})
        return 1
    except (UsageError, ValueError, KeyError) as exc:
        sys.stderr.write(f"homgadget {args.verb}: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())
