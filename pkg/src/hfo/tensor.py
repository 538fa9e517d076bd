"""Box tensor products: type A with type D, and type DA with type D."""

from __future__ import annotations

import os

from . import algebra
from .algebra import BASIS_NAMES, IDEMPOTENTS
from .errors import BoundednessError, PreconditionError
from .homology import ChainComplexF2
from .structures import TypeAStructure, TypeDAStructure, TypeDStructure, toggle

SEP = "⊗"


def pair_name(a: str, b: str) -> str:
    return f"{a}{SEP}{b}"


def max_generators() -> int:
    return int(os.environ.get("HFO_MAX_GENERATORS", "100000"))


def _cap(count: int) -> None:
    limit = max_generators()
    if count > limit:
        raise PreconditionError(f"complex would have {count} generators, above HFO_MAX_GENERATORS={limit}")


def _table_label(k: int) -> str:
    return "1" if k in IDEMPOTENTS else BASIS_NAMES[k]


def _paths_with_labels(D: TypeDStructure, start: str, labels: tuple[str, ...]) -> dict[str, int]:
    """Endpoints (mod 2) of D-paths from ``start`` reading exactly ``labels``."""
    current = {start: 1}
    for lab in labels:
        nxt: dict = {}
        for v in current:
            for l, w in D.out_edges(v):
                if l == lab:
                    toggle(nxt, w)
        current = nxt
    return current


def box_a_d(A: TypeAStructure, D: TypeDStructure, check: bool = True) -> ChainComplexF2:
    """The chain complex A ⊠ D.

    Paths in D are walked jointly with the digit expansion of A's chain-graph:
    each non-identity D label must continue the A-path by its index string,
    and consecutive labels must meet at a descent.  The walk stops once no
    A-path survives, so it terminates whenever one side is bounded.
    """
    a_cycle, d_cycle = A.find_cycle(), D.find_cycle()
    if a_cycle is not None and d_cycle is not None:
        raise BoundednessError(
            f"both factors are unbounded: type A cycle {a_cycle}, type D cycle {d_cycle}",
            cycles=[("A", a_cycle), ("D", d_cycle)],
        )
    gens = [(a, d) for a, i in A.generators.items() for d, j in D.generators.items() if i == j]
    _cap(len(gens))
    names = {g: pair_name(*g) for g in gens}
    is_gen = set(gens)
    boundary: dict = {}

    for x, y in gens:
        src = names[x, y]

        def emit(a, d):
            if (a, d) in is_gen:
                toggle(boundary, (src, names[a, d]))

        for (g, seq), outs in A.operations.items():
            if g != x:
                continue
            for end in _paths_with_labels(D, y, tuple(_table_label(k) for k in seq)):
                for o in outs:
                    emit(o, end)

        stack = [({x: 1}, y, None, True)]
        while stack:
            state, v, last, first = stack.pop()
            for label, w in D.out_edges(v):
                if label == "1":
                    if first:
                        emit(x, w)
                    continue
                s = algebra.digits(label)
                if last is not None and not last > s[0]:
                    continue
                nxt = A.advance(state, s)
                if not nxt:
                    continue
                for node in nxt:
                    if node in A.generators:
                        emit(node, w)
                stack.append((nxt, w, s[-1], False))

    C = ChainComplexF2([names[g] for g in gens], list(boundary))
    if check:
        C.check()
    return C


def box_da_d(B: TypeDAStructure, D: TypeDStructure) -> TypeDStructure:
    """The type D structure B ⊠ D; D must be bounded."""
    cycle = D.find_cycle()
    if cycle is not None:
        raise BoundednessError(f"type D factor has a cycle {cycle}", cycles=[("D", cycle)])
    gens = [(s, x) for s, (_, right) in B.generators.items() for x, i in D.generators.items() if right == i]
    _cap(len(gens))
    names = {g: pair_name(*g) for g in gens}
    edges: dict = {}

    for s, x in gens:
        src = names[s, x]

        def emit(label, t, end):
            if (t, end) in names:
                toggle(edges, (src, label, names[t, end]))

        for label, t in B.query(s, ()):
            emit(label, t, x)
        stack = [(x, ())]
        while stack:
            v, seq = stack.pop()
            for lab, w in D.out_edges(v):
                if lab == "1":
                    if not seq:
                        emit("1", s, w)
                    continue
                nseq = seq + (lab,)
                if (s, nseq) not in B.prefixes:
                    continue
                for out_label, t in B.query(s, nseq):
                    emit(out_label, t, w)
                stack.append((w, nseq))

    return TypeDStructure([(names[s, x], B.generators[s][0]) for s, x in gens], list(edges))
