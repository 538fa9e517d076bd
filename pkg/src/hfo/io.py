"""JSON serialization of every structure, and DOT export."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any

from .cfk import Arrow, CFKInfinityWindow, CFKMinusData
from .errors import SchemaError
from .homology import ChainComplexF2
from .structures import TypeAStructure, TypeDStructure

FIXTURES = ("unknot", "trefoil_lh", "trefoil_rh", "figure_eight")


def _get(obj: Any, key: str, kind=None, where: str = ""):
    if not isinstance(obj, dict):
        raise SchemaError(f"{where or 'input'}: expected an object")
    if key not in obj:
        raise SchemaError(f"{where or 'input'}: missing field {key!r}")
    value = obj[key]
    if kind is not None and not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise SchemaError(f"{where or 'input'}: field {key!r} has the wrong type")
    return value


def _list(obj, key, where):
    return _get(obj, key, list, where) if key in obj else []


def read_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise SchemaError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False, sort_keys=False)


# -- type D / type A -------------------------------------------------------------

def _generators(obj, where):
    out = []
    for g in _get(obj, "generators", list, where):
        out.append((_get(g, "name", str, where), _get(g, "idempotent", int, where)))
    return out


def _edges(obj, where):
    return [(_get(e, "from", str, where), _get(e, "label", str, where), _get(e, "to", str, where))
            for e in _list(obj, "edges", where)]


def type_d_from_json(obj) -> TypeDStructure:
    return TypeDStructure(_generators(obj, "type D"), _edges(obj, "type D"))


def type_d_to_json(D: TypeDStructure) -> dict:
    return {
        "generators": [{"name": n, "idempotent": i} for n, i in D.generators.items()],
        "edges": [{"from": s, "label": l, "to": t} for s, l, t in sorted(D.edges)],
    }


def type_a_from_json(obj) -> TypeAStructure:
    ops = {}
    for op in _list(obj, "operations", "type A"):
        gen = _get(op, "from", str, "type A operation")
        inputs = tuple(_get(op, "inputs", list, "type A operation"))
        outs = _get(op, "to", list, "type A operation")
        ops[gen, inputs] = list(ops.get((gen, inputs), [])) + outs
    return TypeAStructure(_generators(obj, "type A"), _edges(obj, "type A"), ops)


def type_a_to_json(A: TypeAStructure) -> dict:
    from .algebra import BASIS_NAMES
    out = {
        "generators": [{"name": n, "idempotent": i} for n, i in A.generators.items()],
        "edges": [{"from": s, "label": l, "to": t} for s, l, t in sorted(A.edges)],
    }
    if A.operations:
        out["operations"] = [
            {"from": g, "inputs": [BASIS_NAMES[k] for k in seq], "to": sorted(outs)}
            for (g, seq), outs in sorted(A.operations.items())
        ]
    return out


def structure_from_json(obj):
    """Type D unless some edge label is an index string."""
    labels = [e.get("label") for e in _list(obj, "edges", "structure") if isinstance(e, dict)]
    if "operations" in obj or any(isinstance(l, str) and l != "1" and not l.startswith("r") for l in labels):
        return type_a_from_json(obj)
    return type_d_from_json(obj)


# -- chain complexes --------------------------------------------------------------

def complex_to_json(C: ChainComplexF2) -> dict:
    gens = []
    for g in C.generators:
        entry = {"name": g}
        if C.gradings is not None:
            entry["grading"] = C.gradings[g]
        gens.append(entry)
    return {
        "generators": gens,
        "boundary": [{"from": s, "to": t} for s, t in sorted(C.boundary)],
    }


def complex_from_json(obj) -> ChainComplexF2:
    gens = _get(obj, "generators", list, "chain complex")
    names = [_get(g, "name", str, "chain complex") for g in gens]
    gradings = None
    if gens and all("grading" in g for g in gens):
        gradings = {g["name"]: g["grading"] for g in gens}
    boundary = [(_get(b, "from", str, "chain complex"), _get(b, "to", str, "chain complex"))
                for b in _list(obj, "boundary", "chain complex")]
    return ChainComplexF2(names, boundary, gradings)


# -- knot data -------------------------------------------------------------------

def window_from_json(obj) -> CFKInfinityWindow:
    where = "CFK-infinity window"
    alex = {}
    for g in _get(obj, "generators", list, where):
        alex[_get(g, "name", str, where)] = _get(g, "alexander", int, where)
    diff = [(_get(d, "from", str, where), _get(d, "to", str, where), _get(d, "u_power", int, where))
            for d in _list(obj, "differential", where)]
    win = obj.get("window") or {}
    return CFKInfinityWindow(alex, diff, win.get("i_min"), win.get("i_max"))


def window_to_json(W: CFKInfinityWindow) -> dict:
    return {
        "generators": [{"name": x, "alexander": a} for x, a in W.alexander.items()],
        "differential": [{"from": s, "to": t, "u_power": u} for s, t, u in W.differential],
        "window": {"i_min": W.i_min, "i_max": W.i_max},
    }


def cfk_from_json(obj, name: str = "") -> CFKMinusData:
    where = "CFK data"
    gens = []
    for g in _get(obj, "generators", list, where):
        m = g.get("maslov_mod2") if isinstance(g, dict) else None
        gens.append((_get(g, "name", str, where), _get(g, "alexander", int, where), m))

    def arrows(key):
        return [Arrow(_get(a, "from", str, where), _get(a, "to", str, where), _get(a, "length", int, where))
                for a in _list(obj, key, where)]

    window = window_from_json(obj["cfkinf"]) if "cfkinf" in obj else None
    tau = obj.get("tau")
    eps = obj.get("epsilon")
    for key, val in (("tau", tau), ("epsilon", eps)):
        if val is not None and (not isinstance(val, int) or isinstance(val, bool)):
            raise SchemaError(f"{where}: field {key!r} must be an integer")
    return CFKMinusData(
        gens, arrows("vertical_arrows"), arrows("horizontal_arrows"),
        _get(obj, "w0", str, where), _get(obj, "w0prime", str, where),
        tau, eps, window, name,
    )


def cfk_to_json(cfk: CFKMinusData) -> dict:
    out = {
        "generators": [
            {"name": g[0], "alexander": g[1], **({"maslov_mod2": g[2]} if len(g) > 2 and g[2] is not None else {})}
            for g in cfk.generators
        ],
        "vertical_arrows": [{"from": a.src, "to": a.dst, "length": a.length} for a in cfk.vertical_arrows],
        "horizontal_arrows": [{"from": a.src, "to": a.dst, "length": a.length} for a in cfk.horizontal_arrows],
        "tau": cfk.tau,
        "epsilon": cfk.epsilon,
        "w0": cfk.w0,
        "w0prime": cfk.w0prime,
    }
    if cfk.cfkinf is not None:
        out["cfkinf"] = window_to_json(cfk.cfkinf)
    return out


def load_cfk(source: str | Path | dict) -> CFKMinusData:
    """Knot data from a dict, a file path, or a bundled fixture name."""
    if isinstance(source, dict):
        return cfk_from_json(source)
    s = str(source)
    if s in FIXTURES:
        return load_fixture(s)
    path = Path(s)
    if not path.exists() and path.suffix == ".json" and path.stem in FIXTURES:
        return load_fixture(path.stem)
    return cfk_from_json(read_json(s), path.stem)


def load_window(source: str | Path) -> CFKInfinityWindow:
    """A CFK-infinity window from a file, or a bundled one by name."""
    s = str(source)
    path = Path(s)
    stem = path.stem.removesuffix("_inf") if path.suffix == ".json" else s.removesuffix("_inf")
    if not path.exists() and stem in FIXTURES:
        return load_window_fixture(stem)
    return window_from_json(read_json(s))


def fixture_json(name: str) -> dict:
    ref = resources.files("hfo") / "data" / f"{name}.json"
    try:
        return json.loads(ref.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise SchemaError(f"no bundled fixture named {name!r}") from None


def load_fixture(name: str) -> CFKMinusData:
    return cfk_from_json(fixture_json(name), name)


def load_window_fixture(name: str) -> CFKInfinityWindow:
    return window_from_json(fixture_json(f"{name}_inf"))


# -- DOT --------------------------------------------------------------------------

def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _dot_graph(name: str, generators: dict[str, int], edges) -> str:
    lines = [f"digraph {_q(name)} {{"]
    for g in sorted(generators):
        style = 'style=filled, fillcolor=black, fontcolor=white' if generators[g] == 1 else 'style=solid'
        lines.append(f"  {_q(g)} [shape=circle, {style}];")
    for s, l, t in sorted(edges):
        lines.append(f"  {_q(s)} -> {_q(t)} [label={_q(l)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def type_d_to_dot(D: TypeDStructure, name: str = "D") -> str:
    return _dot_graph(name, D.generators, D.edges)


def type_a_to_dot(A: TypeAStructure, name: str = "A") -> str:
    return _dot_graph(name, A.generators, A.edges)


def complex_to_dot(C: ChainComplexF2, name: str = "C") -> str:
    lines = [f"digraph {_q(name)} {{"]
    for g in sorted(C.generators):
        lines.append(f"  {_q(g)} [shape=box];")
    for s, t in sorted(C.boundary):
        lines.append(f"  {_q(s)} -> {_q(t)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
