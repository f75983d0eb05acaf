"""Bundled example artifacts: rank tables, blocks, scripts, networks, codes."""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources


@lru_cache(maxsize=None)
def bundled_examples() -> tuple[dict, ...]:
    text = resources.files("polymat").joinpath("data/manifest.json").read_text()
    return tuple(json.loads(text))


def entry(name: str) -> dict:
    for e in bundled_examples():
        if e["name"] == name:
            return e
    raise KeyError(f"no bundled example named {name!r}")


def load_json(name: str) -> dict:
    return json.loads(resources.files("polymat").joinpath("data", entry(name)["file"]).read_text())


def load(name: str):
    """Parsed object for a bundled entry, typed by its kind."""
    from .index import IndexCode, IndexProblem
    from .network import ConstructionScript, FncSolution, Network
    from .polymatroid import DiscretePolymatroid
    from .representation import Representation

    kinds = {
        "polymatroid": DiscretePolymatroid.from_json,
        "representation": Representation.from_json,
        "script": ConstructionScript.from_json,
        "network": Network.from_json,
        "solution": FncSolution.from_json,
        "problem": IndexProblem.from_json,
        "code": IndexCode.from_json,
    }
    return kinds[entry(name)["kind"]](load_json(name))
