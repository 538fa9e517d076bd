"""Command line entry point ``hfo``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .cfk import invariants
from .errors import HFOError, SchemaError
from .homology import homology_rank
from .orbifold import (
    OrbifoldSurgerySpec,
    build_dn,
    build_dn_bounded,
    check_theorem2,
    check_theorem3,
    compute_hfo,
)
from .reduction import reduce
from .structures import TypeAStructure, TypeDStructure, cfda_dehn_twist, dualize_d_to_a
from .tensor import box_a_d, box_da_d

RANGE_FLAGS = ("--framings", "--orders")


def parse_range(text: str) -> list[int]:
    """``"a..b"`` (inclusive, empty when b < a) or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(text)]
    except ValueError:
        raise SchemaError(f"bad range {text!r}; expected a..b") from None


def _emit(obj, args, path: str | None = None) -> None:
    text = io.dumps(obj)
    if path:
        Path(path).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _table(rows: list[dict], columns: list[str]) -> str:
    cells = [[str(r.get(c, "")) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[k]) for row in cells]) for k, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths))]
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)) for row in cells]
    return "\n".join(lines)


def _load_spec(args) -> OrbifoldSurgerySpec:
    if args.spec:
        obj = io.read_json(args.spec)
        if not isinstance(obj, dict):
            raise SchemaError("spec file must hold an object")
        src = obj.get("cfk")
        if isinstance(src, str) and src not in io.FIXTURES:
            src = str((Path(args.spec).parent / src)) if not Path(src).is_absolute() else src
        if src is None:
            raise SchemaError("spec file: missing field 'cfk'")
        framing, order = obj.get("framing"), obj.get("order")
        if not isinstance(framing, int) or not isinstance(order, int):
            raise SchemaError("spec file: 'framing' and 'order' must be integers")
        return OrbifoldSurgerySpec(io.load_cfk(src), framing, order)
    if args.cfk is None or args.framing is None or args.order is None:
        raise SchemaError("compute needs --cfk, --framing and --order (or --spec)")
    return OrbifoldSurgerySpec(io.load_cfk(args.cfk), args.framing, args.order)


def cmd_compute(args) -> int:
    spec = _load_spec(args)
    res = compute_hfo(spec)
    t2 = check_theorem2(spec)
    t3 = check_theorem3(spec)
    report = {
        "rank_orbifold": res.rank,
        "rank_underlying": t2["rank_underlying"],
        "epsilon": spec.cfk.epsilon,
        "framing": spec.framing,
        "order": spec.order,
        "theorem2_ok": t2["theorem2_ok"],
        "theorem3_ok": t3["theorem3_ok"],
        "chi_abs": t3["chi_abs"],
        "h1_orb": t3["h1_orb"],
        "generators": len(res.complex.generators),
        "bounded_substitute": res.bounded_substitute,
    }
    if args.dot:
        dot = Path(args.dot)
        dot.write_text(io.complex_to_dot(res.complex, "orbifold"), encoding="utf-8")
        dot.with_name(dot.stem + "_cfa.dot").write_text(io.type_a_to_dot(res.cfa, "cfa"), encoding="utf-8")
        dot.with_name(dot.stem + "_d.dot").write_text(io.type_d_to_dot(res.dstructure, "d"), encoding="utf-8")
    if args.report:
        Path(args.report).write_text(io.dumps(report) + "\n", encoding="utf-8")
    if args.pretty:
        print(_table([report], list(report)))
    else:
        print(io.dumps(report))
    return 0


def cmd_check(args) -> int:
    cfk = io.load_cfk(args.cfk)
    rows = []
    for r in parse_range(args.framings):
        for n in parse_range(args.orders):
            if n < 1:
                raise SchemaError("orders must be positive")
            spec = OrbifoldSurgerySpec(cfk, r, n)
            row = {"framing": r, "order": n}
            ok = True
            if args.theorem in ("2", "all"):
                t2 = check_theorem2(spec)
                row.update(rank_orbifold=t2["rank_orbifold"], rank_underlying=t2["rank_underlying"],
                           expected=t2["expected"], theorem2_ok=t2["theorem2_ok"])
                ok = ok and t2["theorem2_ok"]
            if args.theorem in ("3", "all"):
                t3 = check_theorem3(spec)
                row.update(rank_orbifold=t3["rank_orbifold"], chi_abs=t3["chi_abs"], h1_orb=t3["h1_orb"],
                           theorem3_ok=t3["theorem3_ok"])
                ok = ok and t3["theorem3_ok"]
            row["ok"] = ok
            rows.append(row)
    rows.sort(key=lambda r: (r["framing"], r["order"]))
    all_ok = all(r["ok"] for r in rows)
    if args.pretty:
        cols = list(rows[0]) if rows else ["framing", "order", "ok"]
        print(_table(rows, cols))
    else:
        print(io.dumps({"rows": rows, "ok": all_ok}))
    return 0 if all_ok else 1


def _read_structure(path: str):
    return io.structure_from_json(io.read_json(path))


def cmd_reduce(args) -> int:
    D = _read_structure(args.input)
    if not isinstance(D, TypeDStructure):
        raise SchemaError("reduce expects a type D structure")
    _emit(io.type_d_to_json(reduce(D)), args, args.out)
    return 0


def cmd_dualize(args) -> int:
    D = _read_structure(args.input)
    if not isinstance(D, TypeDStructure):
        raise SchemaError("dualize expects a type D structure")
    _emit(io.type_a_to_json(dualize_d_to_a(D)), args, args.out)
    return 0


def cmd_tensor(args) -> int:
    D = _read_structure(args.d)
    if not isinstance(D, TypeDStructure):
        raise SchemaError("--d must be a type D structure")
    if args.twist:
        _emit(io.type_d_to_json(box_da_d(cfda_dehn_twist(), D)), args, args.out)
        return 0
    if not args.a:
        raise SchemaError("tensor needs --a or --twist")
    A = _read_structure(args.a)
    if not isinstance(A, TypeAStructure):
        raise SchemaError("--a must be a type A structure (index-string labels)")
    C = box_a_d(A, D)
    out = io.complex_to_json(C)
    out["rank"] = homology_rank(C)
    _emit(out, args, args.out)
    return 0


def cmd_tau(args) -> int:
    W = io.load_window(args.cfkinf)
    _emit(invariants(W), args)
    return 0


def cmd_dn(args) -> int:
    D = build_dn_bounded(args.order) if args.bounded else build_dn(args.order)
    _emit(io.type_d_to_json(D), args, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hfo", description="Orbifold Floer homology via bordered pairing.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="rank of the orbifold invariant for one surgery")
    c.add_argument("--cfk", help="knot data JSON file or fixture name")
    c.add_argument("--framing", type=int)
    c.add_argument("--order", type=int)
    c.add_argument("--spec", help="JSON file with cfk, framing and order")
    c.add_argument("--dot", help="write DOT of the complex (and _cfa/_d companions)")
    c.add_argument("--report", help="also write the JSON report here")
    c.add_argument("--pretty", action="store_true")
    c.set_defaults(func=cmd_compute)

    k = sub.add_parser("check", help="sweep framings and orders through the checkers")
    k.add_argument("--cfk", required=True)
    k.add_argument("--framings", required=True, help="a..b")
    k.add_argument("--orders", required=True, help="1..m")
    k.add_argument("--theorem", choices=("2", "3", "all"), default="all")
    k.add_argument("--pretty", action="store_true")
    k.set_defaults(func=cmd_check)

    r = sub.add_parser("reduce", help="cancel identity edges of a type D structure")
    r.add_argument("--in", dest="input", required=True)
    r.add_argument("--out")
    r.set_defaults(func=cmd_reduce)

    t = sub.add_parser("tensor", help="box tensor product")
    t.add_argument("--a", help="type A chain-graph JSON")
    t.add_argument("--d", required=True, help="type D JSON")
    t.add_argument("--twist", action="store_true", help="use the Dehn twist bimodule instead of --a")
    t.add_argument("--out")
    t.set_defaults(func=cmd_tensor)

    d = sub.add_parser("dualize", help="type A dual of a reduced type D structure")
    d.add_argument("--in", dest="input", required=True)
    d.add_argument("--out")
    d.set_defaults(func=cmd_dualize)

    u = sub.add_parser("tau", help="tau, nu, nu' and epsilon of a CFK-infinity window")
    u.add_argument("--cfkinf", required=True)
    u.set_defaults(func=cmd_tau)

    n = sub.add_parser("dn", help="emit the singular solid torus structure")
    n.add_argument("--order", type=int, required=True)
    n.add_argument("--bounded", action="store_true")
    n.add_argument("--out")
    n.set_defaults(func=cmd_dn)
    return p


def _join_ranges(argv: list[str]) -> list[str]:
    # "--framings -2..2" would otherwise be read as an option
    out: list[str] = []
    k = 0
    while k < len(argv):
        if argv[k] in RANGE_FLAGS and k + 1 < len(argv):
            out.append(f"{argv[k]}={argv[k + 1]}")
            k += 2
        else:
            out.append(argv[k])
            k += 1
    return out


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_join_ranges(argv))
    try:
        return args.func(args)
    except SchemaError as exc:
        print(f"hfo: error: {exc}", file=sys.stderr)
        return 2
    except HFOError as exc:
        print(f"hfo: invariant violation: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"hfo: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
