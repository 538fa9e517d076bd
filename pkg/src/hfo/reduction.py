"""Edge reduction (the cancellation lemma) and isomorphism of type D structures."""

from __future__ import annotations

from collections import Counter, defaultdict
from typing import Callable, Sequence

from . import algebra
from .algebra import AlgebraElement, element_labels, label_element
from .errors import InvariantError, PreconditionError
from .structures import TypeDStructure, toggle, validate_type_d


def cancel_edge(D: TypeDStructure, edge: tuple[str, str, str], check: bool = True) -> TypeDStructure:
    """Cancel an identity-labelled edge w -> u.

    Every path z -a-> u, w -b-> t (z, t outside {w, u}) is replaced by the
    zigzag z -> t with coefficient a * c^-1 * b, where c is the full
    coefficient of u in delta(w).  c is the identity plus possibly a
    nilpotent term, so its inverse is c itself.
    """
    w, label, u = edge
    if label != "1":
        raise PreconditionError(f"can only cancel identity edges, got {label!r}")
    if edge not in D.edges:
        raise PreconditionError(f"edge {edge} is not in the structure")
    if w == u:
        raise PreconditionError(f"cannot cancel the identity self-loop at {w!r}")
    gone = {w, u}
    c = D.coefficient(w, u)
    extra = c - label_element("1", D.generators[w])
    if extra * extra:
        raise PreconditionError(f"coefficient {c!r} of the cancelled edge is not invertible")
    c_inv = c

    bag: dict = {}
    for e in D.edges:
        if e[0] not in gone and e[2] not in gone:
            bag[e] = 1
    ins = defaultdict(lambda: algebra.ZERO)
    for z, l in D.in_edges(u):
        if z not in gone:
            ins[z] = ins[z] + label_element(l, D.generators[z])
    outs = defaultdict(lambda: algebra.ZERO)
    for l, t in D.out_edges(w):
        if t not in gone:
            outs[t] = outs[t] + label_element(l, D.generators[w])
    for z, a in ins.items():
        for t, b in outs.items():
            for lab in element_labels(a * c_inv * b):
                toggle(bag, (z, lab, t))

    out = TypeDStructure([(g, i) for g, i in D.generators.items() if g not in gone], bag)
    if check:
        bad = validate_type_d(out)
        if bad:
            raise InvariantError(f"cancellation produced an invalid structure: {bad[:3]}")
    return out


def cancellable_edges(D: TypeDStructure) -> list[tuple[str, str, str]]:
    return sorted(e for e in D.edges if e[1] == "1")


def reduce(D: TypeDStructure, chooser: Callable[[Sequence], tuple] | None = None) -> TypeDStructure:
    """Cancel identity edges until none remain.

    ``chooser`` picks the next edge from the sorted list of candidates; by
    default the first one is taken.
    """
    while True:
        edges = cancellable_edges(D)
        if not edges:
            return D
        loops = [e for e in edges if e[0] == e[2]]
        if loops:
            raise PreconditionError(f"identity self-loop at {loops[0][0]!r} cannot be cancelled")
        e = chooser(edges) if chooser else edges[0]
        D = cancel_edge(D, e)


def _signature(D: TypeDStructure, v: str):
    outs = Counter(l for l, w in D.out_edges(v) if w != v)
    ins = Counter(l for _, l in D.in_edges(v) if _ != v)
    loops = frozenset(l for l, w in D.out_edges(v) if w == v)
    return D.generators[v], frozenset(outs.items()), frozenset(ins.items()), loops


def isomorphic(D1: TypeDStructure, D2: TypeDStructure) -> dict[str, str] | None:
    """A bijection of generators carrying D1 onto D2, or None.

    Plain backtracking; candidates are pruned by idempotent and by labelled
    in/out degree, and each new pair is checked against the pairs already
    placed.
    """
    if len(D1.generators) != len(D2.generators) or len(D1.edges) != len(D2.edges):
        return None
    sig1 = {v: _signature(D1, v) for v in D1.generators}
    sig2 = {v: _signature(D2, v) for v in D2.generators}
    if Counter(sig1.values()) != Counter(sig2.values()):
        return None
    between1 = defaultdict(set)
    for s, l, t in D1.edges:
        between1[s, t].add(l)
    between2 = defaultdict(set)
    for s, l, t in D2.edges:
        between2[s, t].add(l)
    by_sig = defaultdict(list)
    for v in sorted(D2.generators):
        by_sig[sig2[v]].append(v)

    # place vertices in an order that keeps each new one adjacent to placed ones
    nbrs = defaultdict(set)
    for s, _, t in D1.edges:
        nbrs[s].add(t)
        nbrs[t].add(s)
    order: list[str] = []
    seen: set = set()
    for root in sorted(D1.generators, key=lambda v: len(by_sig[sig1[v]])):
        if root in seen:
            continue
        seen.add(root)
        queue = [root]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(nbrs[v]):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)

    mapping: dict[str, str] = {}
    used: set = set()

    def consistent(v, fv):
        for u, fu in mapping.items():
            if between1.get((v, u), set()) != between2.get((fv, fu), set()):
                return False
            if between1.get((u, v), set()) != between2.get((fu, fv), set()):
                return False
        return True

    def place(k):
        if k == len(order):
            return True
        v = order[k]
        for fv in by_sig[sig1[v]]:
            if fv in used or not consistent(v, fv):
                continue
            mapping[v] = fv
            used.add(fv)
            if place(k + 1):
                return True
            del mapping[v]
            used.discard(fv)
        return False

    return dict(mapping) if place(0) else None
