"""Metacheck-based single-shot state preparation and soundness probes.

Preparing ``|0>`` measures one round of X checks. A noisy syndrome is first
repaired to the nearest vector passing the metachecks, then decoded to a Z
correction; the residual error is judged by its reduced weight, the smallest
weight with the same syndrome.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from . import gf2
from .complexes import CssCode


def _col_ints(H: np.ndarray) -> list[int]:
    H = gf2.as_bin(H)
    return [int("".join(map(str, H[:, j][::-1])) or "0", 2) for j in range(H.shape[1])]


def _vec_int(v: np.ndarray) -> int:
    v = gf2.as_vec(v)
    return int("".join(map(str, v[::-1])) or "0", 2)


def _supports(ncols: int, w: int) -> Iterator[tuple[int, ...]]:
    return itertools.combinations(range(ncols), w)


def metacheck_repair(MX: np.ndarray, observed: np.ndarray, cap: int = 3,
                     all_minimum: bool = False):
    """Minimum-weight ``s_r`` with ``MX (observed + s_r) = 0``.

    Ties are broken lexicographically on the support. Returns ``None`` when no
    repair of weight at most ``cap`` exists; with ``all_minimum`` returns every
    minimum-weight repair as a list.
    """
    MX = gf2.as_bin(MX)
    observed = gf2.as_vec(observed)
    if observed.size != MX.shape[1]:
        raise ValueError("observed syndrome length does not match the metacheck matrix")
    cols = _col_ints(MX)
    target = _vec_int(gf2.matmul(MX, observed))
    n = MX.shape[1]
    if target == 0:
        z = np.zeros(n, np.uint8)
        return [z] if all_minimum else z
    for w in range(1, cap + 1):
        found = []
        for supp in _supports(n, w):
            acc = 0
            for j in supp:
                acc ^= cols[j]
            if acc == target:
                v = np.zeros(n, np.uint8)
                v[list(supp)] = 1
                if not all_minimum:
                    return v
                found.append(v)
        if found:
            return found
    return None


def reduced_weight_upper(H: np.ndarray, e: np.ndarray, cap: int) -> int | None:
    """Smallest ``|e*| <= cap`` with ``H e* = H e``, or ``None`` if none exists at ``cap``.

    Meet in the middle: syndromes of half-weight supports are tabulated.
    """
    H = gf2.as_bin(H)
    target = _vec_int(gf2.matmul(H, e))
    if target == 0:
        return 0
    cols = _col_ints(H)
    n = len(cols)
    tables: dict[int, set[int]] = {0: {0}}

    def table(b: int) -> set[int]:
        if b not in tables:
            out = set()
            for supp in _supports(n, b):
                acc = 0
                for j in supp:
                    acc ^= cols[j]
                out.add(acc)
            tables[b] = out
        return tables[b]

    for w in range(1, cap + 1):
        a, b = w // 2, w - w // 2
        right = table(b)
        for supp in _supports(n, a):
            acc = target
            for j in supp:
                acc ^= cols[j]
            # an overlapping hit has smaller weight and would have been found earlier
            if acc in right:
                return w
    return None


@dataclass
class SoundnessParams:
    t: int
    f: Callable[[float], float] = field(default=lambda x: x ** 3 / 4)
    f_label: str = "x^3/4"
    d_ss: float = float("inf")

    def __post_init__(self):
        if self.f(0) != 0:
            raise ValueError("soundness function must vanish at 0")
        vals = [self.f(x) for x in range(0, 16)]
        if any(b < a for a, b in zip(vals, vals[1:])):
            raise ValueError("soundness function must be monotone")

    @property
    def q(self) -> float:
        return min(self.t, self.d_ss) / 2

    def to_json_obj(self) -> dict:
        return {"t": self.t, "f": self.f_label, "q": self.q,
                "d_ss": "inf" if self.d_ss == float("inf") else self.d_ss}


@dataclass
class SingleShotTrace:
    s: np.ndarray
    s_e: np.ndarray
    s_r: np.ndarray | None
    s_prime: np.ndarray | None
    E0: np.ndarray
    Er: np.ndarray | None
    E: np.ndarray | None
    outcome: str  # repaired | logical-failure | unrepairable

    def to_json_obj(self) -> dict:
        sup = lambda v: None if v is None else np.flatnonzero(v).tolist()
        return {"outcome": self.outcome, "s": sup(self.s), "s_e": sup(self.s_e), "s_r": sup(self.s_r),
                "s_prime": sup(self.s_prime), "E0": sup(self.E0), "Er": sup(self.Er), "E": sup(self.E)}


def _checks(code: CssCode, basis: str) -> tuple[np.ndarray, np.ndarray]:
    if basis == "Z":  # preparing |0>: X checks, Z errors
        H, M = code.HX, code.MX
    elif basis == "X":
        H, M = code.HZ, code.MZ
    else:
        raise ValueError("basis is 'Z' (prepare |0>) or 'X' (prepare |+>)")
    if M is None:
        raise ValueError("code has no metachecks")
    if not gf2.is_zero(gf2.matmul(M, H)):
        raise ValueError("metachecks do not annihilate the checks")
    return gf2.as_bin(H), gf2.as_bin(M)


def single_shot_prepare(code: CssCode, E0: np.ndarray, s_e: np.ndarray, basis: str = "Z",
                        cap: int = 3, repair: np.ndarray | None = None) -> SingleShotTrace:
    """Two-stage correction after one noisy round of checks.

    ``repair`` overrides the metacheck stage (used to exercise the failure path).
    """
    H, M = _checks(code, basis)
    E0 = gf2.as_vec(E0)
    s_e = gf2.as_vec(s_e)
    s = gf2.matmul(H, E0)
    observed = s ^ s_e
    s_r = gf2.as_vec(repair) if repair is not None else metacheck_repair(M, observed, cap)
    if s_r is None:
        return SingleShotTrace(s, s_e, None, None, E0, None, None, "unrepairable")
    s_prime = observed ^ s_r
    Er = gf2.solve(H, s_prime)
    if Er is None:
        return SingleShotTrace(s, s_e, s_r, s_prime, E0, None, None, "logical-failure")
    return SingleShotTrace(s, s_e, s_r, s_prime, E0, Er, Er ^ E0, "repaired")


def soundness_probe(code: CssCode, max_weight: int, params: SoundnessParams | None = None,
                    basis: str = "Z") -> dict:
    """Check ``|e|_H <= f(|H e|)`` for every error of weight ``<= max_weight`` with ``|H e| < t``."""
    params = params or SoundnessParams(t=3)
    H, _ = _checks(code, basis)
    n = H.shape[1]
    checked = 0
    violations = []
    for w in range(1, max_weight + 1):
        for supp in _supports(n, w):
            e = np.zeros(n, np.uint8)
            e[list(supp)] = 1
            sw = int(gf2.matmul(H, e).sum())
            if sw >= params.t:
                continue
            checked += 1
            bound = params.f(sw)
            cap = int(np.floor(bound + 1e-9))
            if reduced_weight_upper(H, e, min(cap, w)) is None:
                violations.append({"support": list(supp), "syndrome_weight": sw, "bound": bound})
    return {"checked": checked, "violations": violations, "params": params.to_json_obj(),
            "informational": code.kind != "4d"}


def syndrome_error_sweep(code: CssCode, max_weight: int = 1, params: SoundnessParams | None = None,
                         basis: str = "Z", cap: int = 3) -> dict:
    """Run the protocol from ``E0 = 0`` for every syndrome error of weight ``<= max_weight``.

    Every minimum-weight repair is tried, since the protocol may return any of
    them. A trace passes when it is repaired and the residual reduced weight is
    at most ``f(2 |s_e|)``.
    """
    params = params or SoundnessParams(t=3)
    H, M = _checks(code, basis)
    r, n = H.shape
    traces = failures = 0
    worst = 0
    bad = []
    for w in range(0, max_weight + 1):
        bound = int(np.floor(params.f(2 * w) + 1e-9))
        for supp in _supports(r, w):
            s_e = np.zeros(r, np.uint8)
            s_e[list(supp)] = 1
            repairs = metacheck_repair(M, s_e, cap, all_minimum=True) or [None]
            for s_r in repairs:
                traces += 1
                if s_r is None:
                    tr = single_shot_prepare(code, np.zeros(n, np.uint8), s_e, basis, cap)
                else:
                    tr = single_shot_prepare(code, np.zeros(n, np.uint8), s_e, basis, repair=s_r)
                rw = None if tr.E is None else reduced_weight_upper(H, tr.E, bound)
                if tr.outcome != "repaired" or rw is None:
                    failures += 1
                    bad.append(tr.to_json_obj())
                else:
                    worst = max(worst, rw)
    return {"syndrome_errors_max_weight": max_weight, "traces": traces, "failures": failures,
            "max_residual_reduced_weight": worst, "failed_traces": bad[:20], "params": params.to_json_obj()}
