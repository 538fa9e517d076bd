"""
Type D, type A and type DA structures over the torus algebra.

Type D structures are decorated digraphs: generators carry an idempotent
(1 for a filled vertex, 2 for a hollow one) and edges carry a label from
``algebra.LABELS``.  Edges form a set; adding an edge that is already
present removes it (coefficients live in Z/2).

Type A structures are stored in chain-graph form: edges are labelled by
index strings such as ``"321"`` and the multiplications m_k are evaluated on
demand by splitting path strings into maximal increasing runs.  A type A
structure may also carry an explicit sparse table of extra operations.
"""

from __future__ import annotations

from collections import defaultdict
from itertools import product
from typing import Iterable, Mapping, Sequence

from . import algebra
from .algebra import (
    BASIS_INDEX,
    BASIS_NAMES,
    IDEMPOTENTS,
    AlgebraElement,
    idempotent_index,
    label_element,
    label_sides,
)
from .errors import PreconditionError, SchemaError, StructuralError


def toggle(bag: dict, key, count: int = 1) -> None:
    """Add ``count`` copies of ``key`` to a Z/2 multiset stored as a dict."""
    if count % 2 == 0:
        return
    if key in bag:
        del bag[key]
    else:
        bag[key] = 1


def find_cycle(nodes: Iterable, succ: Mapping) -> list | None:
    """Return the vertices of some directed cycle, or None if acyclic."""
    WHITE, GREY, BLACK = 0, 1, 2
    color = {v: WHITE for v in nodes}
    for root in list(color):
        if color[root] != WHITE:
            continue
        stack = [(root, iter(succ.get(root, ())))]
        path = [root]
        color[root] = GREY
        while stack:
            v, it = stack[-1]
            for w in it:
                if color.get(w, WHITE) == GREY:
                    return path[path.index(w):]
                if color.get(w, WHITE) == WHITE:
                    color[w] = GREY
                    stack.append((w, iter(succ.get(w, ()))))
                    path.append(w)
                    break
            else:
                color[v] = BLACK
                stack.pop()
                path.pop()
    return None


def _check_generators(generators) -> dict[str, int]:
    gens: dict[str, int] = {}
    for name, idem in generators:
        if not isinstance(name, str) or not name:
            raise SchemaError(f"bad generator name {name!r}")
        if idem not in (1, 2):
            raise SchemaError(f"generator {name!r}: idempotent must be 1 or 2, got {idem!r}")
        if name in gens:
            raise SchemaError(f"duplicate generator {name!r}")
        gens[name] = idem
    return gens


# -- type D --------------------------------------------------------------------

class TypeDStructure:
    """A type D structure given by its decorated graph."""

    def __init__(self, generators: Iterable[tuple[str, int]], edges: Iterable[tuple[str, str, str]] = ()):
        self.generators = _check_generators(generators)
        bag: dict = {}
        for src, label, dst in edges:
            if label not in algebra.LABELS:
                raise SchemaError(f"unknown edge label {label!r}")
            for end in (src, dst):
                if end not in self.generators:
                    raise StructuralError(f"edge {src} -{label}-> {dst}: unknown generator {end!r}")
            toggle(bag, (src, label, dst))
        self.edges: frozenset[tuple[str, str, str]] = frozenset(bag)
        self._out = defaultdict(list)
        self._in = defaultdict(list)
        for src, label, dst in sorted(self.edges):
            self._out[src].append((label, dst))
            self._in[dst].append((src, label))

    def __len__(self):
        return len(self.generators)

    def __eq__(self, other):
        if not isinstance(other, TypeDStructure):
            return NotImplemented
        return self.generators == other.generators and self.edges == other.edges

    def __hash__(self):
        return hash((frozenset(self.generators.items()), self.edges))

    def __repr__(self):
        return f"TypeDStructure({len(self.generators)} generators, {len(self.edges)} edges)"

    def idempotent(self, name: str) -> int:
        return self.generators[name]

    def out_edges(self, name: str) -> list[tuple[str, str]]:
        return self._out.get(name, [])

    def in_edges(self, name: str) -> list[tuple[str, str]]:
        return self._in.get(name, [])

    def successors(self) -> dict[str, list[str]]:
        return {v: [w for _, w in self.out_edges(v)] for v in self.generators}

    def coefficient(self, src: str, dst: str) -> AlgebraElement:
        """Coefficient of ``dst`` in delta_1(src)."""
        out = algebra.ZERO
        for label, w in self.out_edges(src):
            if w == dst:
                out = out + label_element(label, self.generators[src])
        return out

    def relabel(self, mapping: Mapping[str, str]) -> "TypeDStructure":
        return TypeDStructure(
            [(mapping[n], i) for n, i in self.generators.items()],
            [(mapping[s], l, mapping[d]) for s, l, d in self.edges],
        )

    def find_cycle(self) -> list[str] | None:
        return find_cycle(self.generators, self.successors())


class Violation(tuple):
    """One failure reported by a validator: ``(kind, where, detail)``."""

    __slots__ = ()

    def __new__(cls, kind, where, detail):
        return super().__new__(cls, (kind, where, detail))

    kind = property(lambda self: self[0])
    where = property(lambda self: self[1])
    detail = property(lambda self: self[2])


def validate_type_d(D: TypeDStructure) -> list[Violation]:
    """Check idempotent compatibility and the type D relation.

    Returns a list of violations; an empty list means the structure is a
    valid type D structure.  For the relation, each failing ordered pair
    ``(v, w)`` is reported with the nonzero sum of label products over
    length-two paths from v to w.
    """
    problems = []
    for src, label, dst in sorted(D.edges):
        i, j = D.generators[src], D.generators[dst]
        if label == "1":
            if i != j:
                problems.append(Violation("idempotent", (src, label, dst), "identity edge joins different idempotents"))
        elif label_sides(label) != (i, j):
            problems.append(Violation("idempotent", (src, label, dst), f"{label} needs idempotents {label_sides(label)}"))
    sums: dict[tuple[str, str], AlgebraElement] = {}
    for v in D.generators:
        for l1, u in D.out_edges(v):
            a = label_element(l1, D.generators[v])
            for l2, w in D.out_edges(u):
                b = label_element(l2, D.generators[u])
                sums[v, w] = sums.get((v, w), algebra.ZERO) + a * b
    for key in sorted(sums):
        if sums[key]:
            problems.append(Violation("relation", key, sums[key]))
    return problems


def is_bounded(D: TypeDStructure) -> bool:
    return D.find_cycle() is None


def is_reduced(D: TypeDStructure) -> bool:
    return all(label != "1" for _, label, _ in D.edges)


# -- type A --------------------------------------------------------------------

def parse_index_string(label: str) -> str:
    """Normalise a chain-graph label; ``"r21"`` and ``"21"`` are the same."""
    s = label[1:] if label.startswith("r") else label
    if not s or any(c not in "123" for c in s):
        raise SchemaError(f"bad index string {label!r}")
    for a, b in zip(s, s[1:]):
        if abs(int(a) - int(b)) != 1:
            raise SchemaError(f"index string {label!r} is not idempotent compatible")
    return s


def _string_sides(s: str) -> tuple[int, int]:
    # a string starts at i1 on 1 or 3 and at i2 on 2; it ends at i2 on 1 or 3 and at i1 on 2
    first = 2 if s[0] == "2" else 1
    last = 1 if s[-1] == "2" else 2
    return first, last


def split_runs(s: str) -> list[str]:
    """Greedy left-to-right split of an index string into increasing runs."""
    runs: list[str] = []
    for c in s:
        if runs and int(runs[-1][-1]) + 1 == int(c):
            runs[-1] += c
        else:
            runs.append(c)
    return runs


def _as_terms(a) -> list[int]:
    if isinstance(a, AlgebraElement):
        return list(a.terms())
    if isinstance(a, str):
        if a == "1":
            return list(algebra.ONE.terms())
        return [BASIS_INDEX[a]]
    return [int(a)]


class TypeAStructure:
    """A type A structure in chain-graph form.

    ``edges`` are ``(src, index_string, dst)``; ``operations`` is an optional
    explicit table ``{(gen, (basis, ...)): [gen, ...]}`` of multiplications
    added on top of those read off the graph.
    """

    def __init__(self, generators: Iterable[tuple[str, int]], edges: Iterable[tuple[str, str, str]] = (),
                 operations: Mapping[tuple[str, tuple], Iterable[str]] | None = None):
        self.generators = _check_generators(generators)
        bag: dict = {}
        for src, label, dst in edges:
            s = parse_index_string(label)
            for end in (src, dst):
                if end not in self.generators:
                    raise StructuralError(f"edge {src} -{label}-> {dst}: unknown generator {end!r}")
            if _string_sides(s) != (self.generators[src], self.generators[dst]):
                raise SchemaError(f"edge {src} -{s}-> {dst} does not match the vertex idempotents")
            toggle(bag, (src, s, dst))
        self.edges: frozenset[tuple[str, str, str]] = frozenset(bag)

        table: dict[tuple[str, tuple[int, ...]], frozenset[str]] = {}
        for (gen, seq), outs in (operations or {}).items():
            seq = tuple(BASIS_INDEX[a] if isinstance(a, str) else int(a) for a in seq)
            out: dict = {}
            for o in outs:
                if o not in self.generators:
                    raise StructuralError(f"operation output {o!r} is not a generator")
                toggle(out, o)
            if gen not in self.generators:
                raise StructuralError(f"operation input {gen!r} is not a generator")
            if out:
                table[gen, seq] = frozenset(out)
        self.operations = table

        # digit-level expansion: every edge "d1 d2 ... dk" becomes k one-digit steps
        self._steps: dict = defaultdict(lambda: defaultdict(list))
        for src, s, dst in sorted(self.edges):
            prev = src
            for k, c in enumerate(s):
                nxt = dst if k == len(s) - 1 else (src, s, dst, k + 1)
                self._steps[prev][c].append(nxt)
                prev = nxt
        self._cache: dict = {}

    def __len__(self):
        return len(self.generators)

    def __eq__(self, other):
        if not isinstance(other, TypeAStructure):
            return NotImplemented
        return (self.generators == other.generators and self.edges == other.edges
                and self.operations == other.operations)

    def __hash__(self):
        return hash((frozenset(self.generators.items()), self.edges))

    def __repr__(self):
        return f"TypeAStructure({len(self.generators)} generators, {len(self.edges)} edges)"

    def idempotent(self, name: str) -> int:
        return self.generators[name]

    def successors(self) -> dict[str, list[str]]:
        succ = defaultdict(list)
        for src, _, dst in self.edges:
            succ[src].append(dst)
        return dict(succ)

    def find_cycle(self) -> list[str] | None:
        return find_cycle(self.generators, self.successors())

    def restrict(self, names: Iterable[str]) -> "TypeAStructure":
        keep = set(names)
        return TypeAStructure(
            [(n, i) for n, i in self.generators.items() if n in keep],
            [e for e in self.edges if e[0] in keep and e[2] in keep],
            {k: [o for o in v if o in keep] for k, v in self.operations.items() if k[0] in keep},
        )

    def components(self) -> list[list[str]]:
        """Weakly connected components of the chain-graph, in generator order."""
        parent = {n: n for n in self.generators}

        def root(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for src, _, dst in self.edges:
            parent[root(src)] = root(dst)
        for (gen, _), outs in self.operations.items():
            for o in outs:
                parent[root(gen)] = root(o)
        groups: dict[str, list[str]] = {}
        for n in self.generators:
            groups.setdefault(root(n), []).append(n)
        return list(groups.values())

    # lazy evaluation

    def advance(self, state: Mapping, s: str) -> dict:
        """Follow the digits of ``s`` from a Z/2 combination of graph positions.

        Positions are generator names or interior points of edges.  Returns the
        reached positions with odd multiplicity.
        """
        current = dict(state)
        for c in s:
            nxt: dict = {}
            for node in current:
                for w in self._steps.get(node, {}).get(c, ()):
                    toggle(nxt, w)
            current = nxt
            if not current:
                break
        return current

    def max_string_length(self) -> int | None:
        """Length of the longest path string; None if the graph has a cycle."""
        if self.find_cycle() is not None:
            return None
        memo: dict = {}

        def longest(node):
            if node not in memo:
                best = 0
                for c, targets in self._steps.get(node, {}).items():
                    for w in targets:
                        best = max(best, 1 + longest(w))
                memo[node] = best
            return memo[node]

        return max((longest(v) for v in self.generators), default=0)

    def max_arity(self) -> int | None:
        """Largest number of algebra inputs of a nonzero operation (bounded case)."""
        length = self.max_string_length()
        if length is None:
            return None
        table = max((len(seq) for _, seq in self.operations), default=0)
        return max(length, table, 1)

    def _eval_basis(self, x: str, seq: tuple[int, ...]) -> frozenset[str]:
        key = (x, seq)
        if key in self._cache:
            return self._cache[key]
        out: dict = {}
        for o in self.operations.get(key, ()):
            toggle(out, o)
        idem = idempotent_index(self.generators[x])
        if any(a in IDEMPOTENTS for a in seq):
            if len(seq) == 1 and seq[0] == idem:
                toggle(out, x)
        elif seq and self._composable(idem, seq):
            strings = [algebra.digits(a) for a in seq]
            if all(int(p[-1]) > int(q[0]) for p, q in zip(strings, strings[1:])):
                reached = self.advance({x: 1}, "".join(strings))
                for node in reached:
                    if node in self.generators:
                        toggle(out, node)
        result = frozenset(out)
        self._cache[key] = result
        return result

    @staticmethod
    def _composable(idem: int, seq: Sequence[int]) -> bool:
        cur = idem
        for a in seq:
            if algebra.left_idempotent(a) != cur:
                return False
            cur = algebra.right_idempotent(a)
        return True


def eval_mk(A: TypeAStructure, x, seq: Sequence) -> frozenset[str]:
    """m_{k+1}(x, a_1, ..., a_k) as a set of generators (a Z/2 sum).

    ``x`` is a generator name or an iterable of names (a sum); each ``a_i`` is
    an ``AlgebraElement``, a basis index, a basis name or a label.  The
    evaluation extends multilinearly.  A path contributes when its
    concatenated index string splits greedily into exactly the runs of the
    inputs; m_2(x, 1) = x, and any unit input to a longer operation kills it.
    """
    xs = [x] if isinstance(x, str) else list(x)
    out: dict = {}
    for choice in product(*[_as_terms(a) for a in seq]):
        for g in xs:
            for y in A._eval_basis(g, tuple(choice)):
                toggle(out, y)
    return frozenset(out)


def is_bounded_type_a(A: TypeAStructure) -> bool:
    return A.find_cycle() is None


_SWAP = str.maketrans("13", "31")


def dualize_d_to_a(D: TypeDStructure) -> TypeAStructure:
    """Dual type A structure of a reduced type D structure.

    Indices 1 and 3 are swapped in every edge label (r23 -> "21",
    r123 -> "321", ...), and the result is read as a chain-graph.
    """
    if not is_reduced(D):
        raise PreconditionError("dualization needs a reduced type D structure")
    return TypeAStructure(
        list(D.generators.items()),
        [(s, algebra.digits(l).translate(_SWAP), d) for s, l, d in D.edges],
    )


def reeb_sequences(max_length: int, start: int | None = None) -> list[tuple[int, ...]]:
    """All idempotent-compatible sequences of Reeb elements of total index length <= max_length."""
    out = []

    def extend(prefix, cur, remaining):
        for a in algebra.REEB:
            n = len(algebra.digits(a))
            if n > remaining or (cur is not None and algebra.left_idempotent(a) != cur):
                continue
            seq = prefix + (a,)
            out.append(seq)
            extend(seq, algebra.right_idempotent(a), remaining - n)

    extend((), start, max_length)
    return out


def a_infinity_violations(A: TypeAStructure, max_length: int = 8) -> list[tuple[str, tuple[int, ...], frozenset[str]]]:
    """Check the A-infinity relation on Reeb inputs of total index length <= max_length.

    For each generator x and compatible input sequence, the sum
        sum_j m(m_j(x, a_1..a_{j-1}), a_j..a_{k-1})
      + sum_j m(x, .., a_j a_{j+1}, ..)
    must vanish.  Returns the failing (x, inputs, nonzero sum) triples.
    """
    bad = []
    for x, idem in A.generators.items():
        for seq in reeb_sequences(max_length, idempotent_index(idem)):
            total: dict = {}
            for j in range(len(seq) + 1):
                inner = A._eval_basis(x, seq[:j])
                for y in inner:
                    for z in A._eval_basis(y, seq[j:]):
                        toggle(total, z)
            for j in range(len(seq) - 1):
                ab = algebra.MULT_TABLE[seq[j]][seq[j + 1]]
                if ab is None:
                    continue
                for z in A._eval_basis(x, seq[:j] + (ab,) + seq[j + 2:]):
                    toggle(total, z)
            if total:
                bad.append((x, seq, frozenset(total)))
    return bad


# -- type DA -------------------------------------------------------------------

class TypeDAStructure:
    """A type DA bimodule given by a sparse action table.

    ``actions`` maps ``(gen, (label, ...))`` to pairs ``(output_label, gen)``.
    Input-free actions use an empty tuple.  The unital action
    delta(x, 1) = 1 (x) x is implicit and never stored.
    """

    def __init__(self, generators: Iterable[tuple[str, int, int]], actions: Mapping):
        self.generators: dict[str, tuple[int, int]] = {}
        for name, left, right in generators:
            if left not in (1, 2) or right not in (1, 2):
                raise SchemaError(f"bad idempotents on {name!r}")
            self.generators[name] = (left, right)
        table: dict = {}
        for (gen, inputs), outs in actions.items():
            if gen not in self.generators:
                raise StructuralError(f"unknown generator {gen!r}")
            inputs = tuple(inputs)
            if "1" in inputs:
                raise SchemaError("unit inputs are handled by unitality and cannot be tabulated")
            bag: dict = {}
            for label, tgt in outs:
                if tgt not in self.generators:
                    raise StructuralError(f"unknown generator {tgt!r}")
                toggle(bag, (label, tgt))
            if bag:
                table[gen, inputs] = frozenset(bag)
        self.actions = table
        self.prefixes = {(g, seq[:k]) for g, seq in table for k in range(len(seq) + 1)}

    def query(self, gen: str, inputs: Sequence[str]) -> frozenset[tuple[str, str]]:
        inputs = tuple(inputs)
        if inputs == ("1",):
            return frozenset({("1", gen)})
        if "1" in inputs:
            return frozenset()
        return self.actions.get((gen, inputs), frozenset())


def validate_type_da(B: TypeDAStructure) -> list[Violation]:
    """Idempotent compatibility of every tabulated action."""
    problems = []
    for (gen, inputs), outs in sorted(B.actions.items()):
        left, cur = B.generators[gen]
        ok = True
        for label in inputs:
            l, r = label_sides(label)
            if l != cur:
                ok = False
            cur = r
        for out_label, tgt in outs:
            tl, tr = B.generators[tgt]
            if cur != tr:
                ok = False
            if out_label == "1":
                ok = ok and left == tl
            else:
                ok = ok and label_sides(out_label) == (left, tl)
        if not ok:
            problems.append(Violation("idempotent", (gen, inputs), sorted(outs)))
    return problems


def cfda_dehn_twist() -> TypeDAStructure:
    """The bimodule of the Dehn twist about the second alpha arc.

    Generators p (i1, i1), q (i2, i2), r (i2 on the left, i1 on the right).
    The action r -> r2 (x) p takes no algebra input.
    """
    return TypeDAStructure(
        [("p", 1, 1), ("q", 2, 2), ("r", 2, 1)],
        {
            ("p", ("r1",)): [("r1", "q")],
            ("p", ("r12",)): [("r123", "r")],
            ("p", ("r123",)): [("r123", "q")],
            ("p", ("r3", "r2")): [("r3", "r")],
            ("p", ("r3", "r23")): [("r3", "q")],
            ("q", ("r2",)): [("r23", "r")],
            ("q", ("r23",)): [("r23", "q")],
            ("r", ()): [("r2", "p")],
            ("r", ("r3",)): [("1", "q")],
        },
    )
