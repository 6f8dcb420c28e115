"""JSON instance format.

Kinds: ``open``, ``clopen``, ``tree``, ``string``; universes are
``{"M": 6, "L": 3}``. Generators and nodes are written in canonical
length-lexicographic order. An instance may embed a ``universe`` key, which
overrides any externally supplied bound.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .core import ClopenCode, OpenCode, Universe, string
from .trees import TreeGen

Instance = Any  # OpenCode | ClopenCode | TreeGen | tuple (string instance)


def universe_to_json(u: Universe) -> dict:
    return {"M": u.M, "L": u.L}


def universe_from_json(data: dict) -> Universe:
    return Universe(M=int(data["M"]), L=int(data["L"]))


def instance_to_json(obj: Instance, universe: Universe | None = None) -> dict:
    if isinstance(obj, OpenCode):
        out: dict = {"kind": "open", "generators": [list(g) for g in obj.generators]}
    elif isinstance(obj, ClopenCode):
        out = {
            "kind": "clopen",
            "pos": [list(g) for g in obj.pos.generators],
            "neg": [list(g) for g in obj.neg.generators],
        }
    elif isinstance(obj, TreeGen):
        out = {"kind": "tree", "nodes": [list(n) for n in obj.sorted_nodes()]}
    elif isinstance(obj, tuple):
        out = {"kind": "string", "entries": list(obj)}
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    if universe is not None:
        out["universe"] = universe_to_json(universe)
    return out


def instance_from_json(data: dict) -> tuple[Instance, Universe | None]:
    kind = data.get("kind")
    emb = data.get("universe")
    universe = universe_from_json(emb) if emb else None
    if kind == "open":
        return OpenCode(data["generators"]), universe
    if kind == "clopen":
        return ClopenCode(OpenCode(data["pos"]), OpenCode(data["neg"])), universe
    if kind == "tree":
        return TreeGen(data["nodes"]), universe
    if kind == "string":
        return string(data["entries"]), universe
    raise ValueError(f"unknown instance kind: {kind!r}")


def dumps(data: Any) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def load_instance(path: str | Path) -> tuple[Instance, Universe | None]:
    with open(path) as fh:
        return instance_from_json(json.load(fh))
