"""JSON files for tile structures and state sets."""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .states import ProductState, StateSet
from .tiles import Tile, TileStructure, require_valid


class ParseError(ValueError):
    pass


def structure_to_json(s: TileStructure) -> dict:
    return {"dims": list(s.dims), "tiles": [{"axes": [list(a) for a in t.axes]} for t in s.tiles]}


def structure_from_json(obj, validate: bool = True) -> TileStructure:
    try:
        dims = [int(d) for d in obj["dims"]]
        tiles = [Tile(tuple(tuple(int(i) for i in a) for a in t["axes"])) for t in obj["tiles"]]
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"bad tile structure: {e}") from e
    s = TileStructure(tuple(dims), tuple(tiles))
    if not validate:
        return s
    try:
        require_valid(s)
    except ValueError as e:
        raise ParseError(str(e)) from e
    return s


def _cplx(v: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in v]


def stateset_to_json(S: StateSet) -> dict:
    out = {"dims": list(S.dims),
           "states": [{"label": x.label, "locals": [_cplx(v) for v in x.locals]} for x in S.states]}
    prov = {k: v for k, v in S.provenance.items() if isinstance(v, (str, int, float)) or v is None}
    if prov:
        out["provenance"] = prov
    return out


def stateset_from_json(obj) -> StateSet:
    try:
        dims = tuple(int(d) for d in obj["dims"])
        states = []
        for e in obj["states"]:
            locs = tuple(np.array([complex(re, im) for re, im in v], dtype=complex) for v in e["locals"])
            states.append(ProductState(locs, str(e.get("label", ""))))
        S = StateSet(dims, states, dict(obj.get("provenance", {})))
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"bad state set: {e}") from e
    return S


def load_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: {e}") from e


def read_structure(path) -> TileStructure:
    return structure_from_json(load_json(path))


def read_stateset(path) -> StateSet:
    return stateset_from_json(load_json(path))


def write_json(obj: dict, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=1) + "\n")
