"""JSON interchange for groups, fields, functions and designs.

Function files hold exact integers only::

    {"d": 5, "codomain": [5], "values": [[0], [1], [4], [4], [1]]}

Codomain factors need not be prime powers; residues are then written against
the given factors and converted to the canonical decomposition on load.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .diffcalc import GroupFunction
from .errors import ShapeError
from .groups import AbelianGroup, group_from_factors


class ParseError(ValueError):
    """Malformed JSON input, with a position where one is known."""


def group_to_json(g: AbelianGroup) -> list[int]:
    return list(g.factors)


def group_from_json(data: Any) -> AbelianGroup:
    if not isinstance(data, list) or not all(isinstance(n, int) and n >= 1 for n in data):
        raise ParseError(f"group must be a list of positive integers, got {data!r}")
    return AbelianGroup(data)


def function_to_json(f: GroupFunction) -> dict:
    return {"d": f.d, "codomain": list(f.codomain.factors), "values": [list(v) for v in f.values]}


def function_from_json(data: Any) -> GroupFunction:
    if not isinstance(data, dict):
        raise ParseError("function file must hold a JSON object")
    missing = {"d", "codomain", "values"} - data.keys()
    if missing:
        raise ParseError(f"function object lacks {sorted(missing)}")
    d, factors, values = data["d"], data["codomain"], data["values"]
    if not isinstance(d, int) or isinstance(d, bool):
        raise ParseError(f"'d' must be an integer, got {d!r}")
    if not isinstance(factors, list) or not all(isinstance(n, int) and n >= 1 for n in factors):
        raise ParseError(f"'codomain' must be a list of positive integers, got {factors!r}")
    if not isinstance(values, list) or not all(
        isinstance(v, list) and all(isinstance(r, int) for r in v) for v in values
    ):
        raise ParseError("'values' must be a list of integer lists")
    group, convert = group_from_factors(factors)
    try:
        return GroupFunction(d, group, tuple(convert(v) for v in values))
    except ShapeError as exc:
        raise ParseError(str(exc)) from exc


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def read_function(path: str | Path) -> GroupFunction:
    return function_from_json(loads(Path(path).read_text(encoding="utf-8")))


def write_function(f: GroupFunction, path: str | Path) -> None:
    Path(path).write_text(json.dumps(function_to_json(f)) + "\n", encoding="utf-8")


def complex_to_json(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]
