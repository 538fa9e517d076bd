"""
Chain complexes over F2, homology ranks, relative Z/2 gradings and the
sign functions of bordered partial permutations.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import InvariantError, PreconditionError, SchemaError, StructuralError


def gf2_rank(matrix) -> int:
    """Rank over F2 by row reduction."""
    mat = np.array(matrix, dtype=np.uint8) % 2
    if mat.size == 0:
        return 0
    m, n = mat.shape
    rank = 0
    for col in range(n):
        if rank == m:
            break
        rows = np.nonzero(mat[rank:, col])[0]
        if rows.size == 0:
            continue
        pivot = rank + rows[0]
        if pivot != rank:
            mat[[rank, pivot]] = mat[[pivot, rank]]
        hits = np.nonzero(mat[:, col])[0]
        hits = hits[hits != rank]
        if hits.size:
            mat[hits] ^= mat[rank]
        rank += 1
    return rank


class ChainComplexF2:
    """A finite chain complex over F2.

    ``boundary`` lists pairs ``(src, dst)`` meaning dst appears in d(src);
    repeated pairs cancel.  ``gradings`` optionally maps each generator to a
    bit.
    """

    def __init__(self, generators: Iterable[str], boundary: Iterable[tuple[str, str]] = (),
                 gradings: Mapping[str, int] | None = None):
        self.generators: list[str] = list(generators)
        self.index = {g: k for k, g in enumerate(self.generators)}
        if len(self.index) != len(self.generators):
            raise SchemaError("duplicate generator names in chain complex")
        bag: dict = {}
        for src, dst in boundary:
            for end in (src, dst):
                if end not in self.index:
                    raise StructuralError(f"boundary entry {src} -> {dst}: unknown generator {end!r}")
            bag[src, dst] = bag.get((src, dst), 0) ^ 1
        self.boundary: frozenset[tuple[str, str]] = frozenset(k for k, v in bag.items() if v)
        self.gradings: dict[str, int] | None = None
        if gradings is not None:
            missing = [g for g in self.generators if g not in gradings]
            if missing:
                raise SchemaError(f"missing gradings for {missing[:5]}")
            self.gradings = {g: int(gradings[g]) % 2 for g in self.generators}
        self.d: dict[str, list[str]] = defaultdict(list)
        for src, dst in sorted(self.boundary):
            self.d[src].append(dst)

    def __len__(self):
        return len(self.generators)

    def __eq__(self, other):
        if not isinstance(other, ChainComplexF2):
            return NotImplemented
        return (set(self.generators) == set(other.generators) and self.boundary == other.boundary
                and self.gradings == other.gradings)

    def __repr__(self):
        return f"ChainComplexF2({len(self.generators)} generators, {len(self.boundary)} boundary entries)"

    def with_gradings(self, gradings: Mapping[str, int]) -> "ChainComplexF2":
        return ChainComplexF2(self.generators, self.boundary, gradings)

    def matrix(self) -> np.ndarray:
        """Matrix of d with rows indexed by targets and columns by sources."""
        mat = np.zeros((len(self.generators), len(self.generators)), dtype=np.uint8)
        for src, dst in self.boundary:
            mat[self.index[dst], self.index[src]] = 1
        return mat

    def d_squared(self) -> dict[tuple[str, str], int]:
        """Nonzero entries of d∘d."""
        out: dict = {}
        for x in self.generators:
            for y in self.d.get(x, ()):
                for z in self.d.get(y, ()):
                    out[x, z] = out.get((x, z), 0) ^ 1
        return {k: 1 for k, v in out.items() if v}

    def check(self) -> None:
        bad = self.d_squared()
        if bad:
            raise InvariantError(f"d^2 != 0, e.g. at {sorted(bad)[:3]}")

    def is_odd(self) -> bool:
        if self.gradings is None:
            return False
        return all(self.gradings[s] != self.gradings[t] for s, t in self.boundary)

    def components(self) -> list[list[str]]:
        """Connected components of the (undirected) differential graph."""
        adj = defaultdict(list)
        for s, t in self.boundary:
            adj[s].append(t)
            adj[t].append(s)
        seen: set = set()
        comps = []
        for g in self.generators:
            if g in seen:
                continue
            seen.add(g)
            comp, stack = [], [g]
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in adj[v]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(comp)
        return comps

    def _block_rank(self, sources: Sequence[str], targets: Sequence[str]) -> int:
        if not sources or not targets:
            return 0
        si = {g: k for k, g in enumerate(sources)}
        ti = {g: k for k, g in enumerate(targets)}
        mat = np.zeros((len(targets), len(sources)), dtype=np.uint8)
        for s in sources:
            for t in self.d.get(s, ()):
                if t in ti:
                    mat[ti[t], si[s]] = 1
        return gf2_rank(mat)

    def differential_rank(self) -> int:
        """Rank of d, computed blockwise over connected components."""
        total = 0
        for comp in self.components():
            if len(comp) > 1:
                total += self._block_rank(comp, comp)
        return total


def homology_rank(C: ChainComplexF2) -> int:
    C.check()
    return len(C.generators) - 2 * C.differential_rank()


def kernel_rank(C: ChainComplexF2) -> int:
    C.check()
    return len(C.generators) - C.differential_rank()


def _require_odd(C: ChainComplexF2) -> None:
    if C.gradings is None:
        raise PreconditionError("Euler characteristic needs a grading on every generator")
    if not C.is_odd():
        raise PreconditionError("the differential does not change the grading")


def euler_characteristic(C: ChainComplexF2) -> int:
    _require_odd(C)
    return sum(1 if C.gradings[g] == 0 else -1 for g in C.generators)


def graded_homology_ranks(C: ChainComplexF2) -> tuple[int, int]:
    """Ranks of homology in grading 0 and grading 1."""
    _require_odd(C)
    C.check()
    h = [0, 0]
    for comp in C.components():
        parts = ([g for g in comp if C.gradings[g] == 0], [g for g in comp if C.gradings[g] == 1])
        r0 = C._block_rank(parts[0], parts[1])
        r1 = C._block_rank(parts[1], parts[0])
        h[0] += len(parts[0]) - r0 - r1
        h[1] += len(parts[1]) - r0 - r1
    return h[0], h[1]


def solve_grading(C: ChainComplexF2, target_abs_chi: int) -> dict[str, int] | None:
    """Find a grading making d odd with |chi| equal to the target, if any.

    Each component of the differential graph is 2-coloured (None if some
    component is not bipartite); then a sign is chosen for every component by
    a subset-sum over the signed colour-class differences.
    """
    C.check()
    colourings = []
    weights = []
    adj = defaultdict(list)
    for s, t in C.boundary:
        adj[s].append(t)
        adj[t].append(s)
    for comp in C.components():
        colour = {comp[0]: 0}
        stack = [comp[0]]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in colour:
                    colour[w] = 1 - colour[v]
                    stack.append(w)
                elif colour[w] == colour[v]:
                    return None
        colourings.append(colour)
        weights.append(sum(1 if c == 0 else -1 for c in colour.values()))

    # layers[k] holds the partial sums reachable with the first k components
    layers = [{0}]
    for w in weights:
        layers.append({t + w for t in layers[-1]} | {t - w for t in layers[-1]})
    for goal in (target_abs_chi, -target_abs_chi):
        if goal not in layers[-1]:
            continue
        flips = [0] * len(weights)
        for k in range(len(weights) - 1, -1, -1):
            if goal - weights[k] in layers[k]:
                goal -= weights[k]
            else:
                flips[k] = 1
                goal += weights[k]
        grading = {}
        for colour, flip in zip(colourings, flips):
            for g, c in colour.items():
                grading[g] = c ^ flip
        return grading
    return None


# -- bordered partial permutations ------------------------------------------------

@dataclass(frozen=True)
class BorderedPartialPermutation:
    """An injection sigma: [g] -> [g+1] together with a two-element set B.

    ``sigma[i-1]`` is the image of i.  The bordered condition (every element
    of [g+1] outside B is hit) is reported by ``is_bordered`` rather than
    enforced, so the sign functions also apply to plain injections.
    """

    g: int
    sigma: tuple[int, ...]
    B: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(self.sigma))
        object.__setattr__(self, "B", frozenset(self.B))
        if self.g < 1 or len(self.sigma) != self.g:
            raise SchemaError("sigma must have exactly g values")
        if len(set(self.sigma)) != self.g or not all(1 <= v <= self.g + 1 for v in self.sigma):
            raise SchemaError("sigma must be an injection [g] -> [g+1]")
        if len(self.B) != 2 or not self.B <= set(range(1, self.g + 2)):
            raise SchemaError("B must be a 2-element subset of [g+1]")

    @property
    def image(self) -> frozenset[int]:
        return frozenset(self.sigma)

    @property
    def is_bordered(self) -> bool:
        return set(range(1, self.g + 2)) - self.B <= self.image

    @property
    def is_type_a(self) -> bool:
        return self.B == {self.g, self.g + 1}

    @property
    def is_type_d(self) -> bool:
        return self.B == {1, 2}


def inv(sigma: BorderedPartialPermutation) -> int:
    s = sigma.sigma
    return sum(1 for i in range(len(s)) for j in range(i + 1, len(s)) if s[i] > s[j])


def sgn_a(sigma: BorderedPartialPermutation) -> int:
    if not sigma.is_type_a:
        raise PreconditionError("sgn_a needs B = {g, g+1}")
    return inv(sigma) % 2


def sgn_d(sigma: BorderedPartialPermutation) -> int:
    if not sigma.is_type_d:
        raise PreconditionError("sgn_d needs B = {1, 2}")
    im = sigma.image
    missing = [j for j in range(1, sigma.g + 2) if j not in im]
    correction = sum(1 for i in im for j in missing if j > i)
    return (inv(sigma) + correction) % 2


def grading_from_signs(sgn: int, orientation_bits: Sequence[int] = ()) -> int:
    return (sgn + sum(orientation_bits)) % 2
