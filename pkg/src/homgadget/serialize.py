"""JSON exchange for codes and chain maps.

Schedules (``GadgetSchedule.to_jsonl``) and circuits (``LogicalCircuit.to_json_obj``)
serialize themselves.

Matrices are written dense (``{"rows","cols","data"}``) or as alist text; both
readers are accepted on load. Coordinates and logical indices stay 0-based in
memory and are written 1-based, like the circuit format.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any

import numpy as np

from . import gf2
from .classical import ClassicalCode, QuasiCyclicCode, code_from_json_obj
from .complexes import CssCode, LogicalBasis, hgp, homological_3d, homological_4d
from .homomorphism import ChainMap

FORMATS = ("json", "alist")


def matrix_to_obj(M: np.ndarray, fmt: str = "json") -> Any:
    if fmt == "alist":
        return gf2.to_alist(M)
    if fmt != "json":
        raise ValueError(f"unknown matrix format {fmt!r}")
    return gf2.to_json_obj(M)


def matrix_from_obj(obj) -> np.ndarray:
    if isinstance(obj, str):
        return gf2.from_alist(obj)
    if isinstance(obj, dict):
        return gf2.from_json_obj(obj)
    return gf2.as_bin(obj)


# -- classical codes -----------------------------------------------------------------


def classical_to_obj(code: ClassicalCode, fmt: str = "json") -> dict:
    if isinstance(code, QuasiCyclicCode) and code.spec is not None:
        return code.spec.to_json_obj()
    return {"type": "explicit", "name": code.name, "H": matrix_to_obj(code.H, fmt),
            "G": matrix_to_obj(code.G, fmt)}


def classical_from_obj(obj: dict) -> ClassicalCode:
    """Inverse of :func:`classical_to_obj`; an explicit ``G`` is kept as the generator."""
    if obj.get("type", "explicit") == "explicit":
        H = matrix_from_obj(obj["H"])
        G = matrix_from_obj(obj["G"]) if "G" in obj else None
        return ClassicalCode(H, G, name=obj.get("name", ""))
    return code_from_json_obj(obj)


# -- quantum codes -------------------------------------------------------------------

_CONSTRUCTIONS = {"hgp": 2, "3d": 3, "4d": 4}


def build_from_spec(obj: dict) -> CssCode:
    """Build a product code from a spec object.

    A bare classical spec gives the symmetric HGP code of that base code. A
    ``{"construction": "hgp"|"3d"|"4d", "codes": [...]}`` object lists the base
    codes per factor; a single entry under ``"code"`` is repeated.
    """
    kind = obj.get("construction", "hgp")
    if kind not in _CONSTRUCTIONS:
        raise ValueError(f"unknown construction {kind!r}")
    if "codes" in obj:
        bases = [classical_from_obj(c) for c in obj["codes"]]
    else:
        base = classical_from_obj(obj.get("code", obj))
        bases = [base] * _CONSTRUCTIONS[kind]
    if len(bases) != _CONSTRUCTIONS[kind]:
        raise ValueError(f"{kind} needs {_CONSTRUCTIONS[kind]} base codes")
    if kind == "hgp":
        code = hgp(*bases)
    elif kind == "3d":
        code = homological_3d(*bases)
    else:
        code = homological_4d(bases)
    code.name = obj.get("name", bases[0].name)
    return code


def _coords_out(c):
    return None if c is None else [[int(x) + 1 for x in t] for t in c]


def _coords_in(c):
    return None if c is None else [tuple(int(x) - 1 for x in t) for t in c]


def code_to_obj(code: CssCode, fmt: str = "json") -> dict:
    obj: dict[str, Any] = {
        "kind": code.kind, "name": code.name, "n": code.n, "k": code.k, "d": code.d,
        "HX": matrix_to_obj(code.HX, fmt), "HZ": matrix_to_obj(code.HZ, fmt),
    }
    if code.MX is not None:
        obj["MX"] = matrix_to_obj(code.MX, fmt)
    if code.MZ is not None:
        obj["MZ"] = matrix_to_obj(code.MZ, fmt)
    obj["coords"] = {"qubits": _coords_out(code.coords_qubits),
                     "xchecks": _coords_out(code.coords_xchecks),
                     "zchecks": _coords_out(code.coords_zchecks)}
    if code.logicals is not None:
        L = code.logicals
        obj["logicals"] = {"grid_shape": list(L.grid_shape),
                           "X": matrix_to_obj(L.X, fmt), "Z": matrix_to_obj(L.Z, fmt)}
    obj["bases"] = [classical_to_obj(b, fmt) for b in code.bases]
    return obj


def code_from_obj(obj: dict) -> CssCode:
    opt = lambda key: matrix_from_obj(obj[key]) if obj.get(key) is not None else None
    coords = obj.get("coords") or {}
    logicals = None
    if obj.get("logicals"):
        L = obj["logicals"]
        logicals = LogicalBasis(tuple(L["grid_shape"]), matrix_from_obj(L["X"]), matrix_from_obj(L["Z"]))
    code = CssCode(
        matrix_from_obj(obj["HX"]), matrix_from_obj(obj["HZ"]), d=obj.get("d"),
        coords_qubits=_coords_in(coords.get("qubits")),
        coords_xchecks=_coords_in(coords.get("xchecks")),
        coords_zchecks=_coords_in(coords.get("zchecks")),
        MX=opt("MX"), MZ=opt("MZ"), logicals=logicals,
        bases=tuple(classical_from_obj(b) for b in obj.get("bases", [])),
        kind=obj.get("kind", "css"), name=obj.get("name", ""),
    )
    if "k" in obj and obj["k"] != code.k:
        raise ValueError(f"stored k={obj['k']} but the matrices give k={code.k}")
    return code


def bundled_specs() -> list[str]:
    """Names of the construction specs shipped with the package."""
    return sorted(p.name[:-5] for p in resources.files("homgadget").joinpath("data").iterdir()
                  if p.name.endswith(".json"))


def read_spec(name_or_path: str | Path) -> dict:
    """Parse a spec file, falling back to a bundled spec of that name."""
    p = Path(name_or_path)
    if p.exists():
        return json.loads(p.read_text())
    if str(name_or_path) in bundled_specs():
        return json.loads(resources.files("homgadget").joinpath("data", f"{name_or_path}.json").read_text())
    raise FileNotFoundError(f"no spec file or bundled spec named {name_or_path!r}")


def load_code(path: str | Path) -> CssCode:
    """Load a code file: either an exported code or a construction spec."""
    obj = read_spec(path)
    if "HX" in obj:
        return code_from_obj(obj)
    return build_from_spec(obj)


def save_code(code: CssCode, path: str | Path, fmt: str = "json") -> None:
    Path(path).write_text(json.dumps(code_to_obj(code, fmt)) + "\n")


# -- chain maps ----------------------------------------------------------------------


def chain_map_to_obj(m: ChainMap, fmt: str = "json") -> dict:
    prov = {k: np.asarray(v).tolist() if isinstance(v, np.ndarray) else v for k, v in m.provenance.items()}
    return {
        "direction": m.direction,
        "qubit_grade": m.qubit_grade,
        "source": {"n": m.source.n, "k": m.source.k},
        "target": {"n": m.target.n, "k": m.target.k},
        "gammas": [matrix_to_obj(g, fmt) for g in m.gammas],
        "provenance": prov,
        "verify": m.verify(),
    }
