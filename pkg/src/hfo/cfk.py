"""
Knot Floer input data, the bordered invariant of a framed knot exterior, and
the concordance invariants tau, nu, nu' and epsilon.

Knot data is given in one basis that is both vertically and horizontally
simplified: every generator but w0 is paired by exactly one vertical arrow,
and every generator but w0' by exactly one horizontal arrow.

A CFK-infinity window lists generators with Alexander gradings and
differential entries ``(src, dst, u)`` meaning ``U^u dst`` appears in
``d(src)``.  The element ``U^i x`` sits at ``I = -i`` and
``A = A(x) - i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import InvariantError, SchemaError, WindowTooSmall
from .homology import gf2_rank
from .structures import TypeAStructure


@dataclass(frozen=True)
class Arrow:
    src: str
    dst: str
    length: int


@dataclass
class CFKInfinityWindow:
    alexander: dict[str, int]
    differential: list[tuple[str, str, int]]
    i_min: int | None = None
    i_max: int | None = None

    def __post_init__(self):
        names = set(self.alexander)
        bag: dict = {}
        for src, dst, u in self.differential:
            if src not in names or dst not in names:
                raise SchemaError(f"differential entry {src} -> {dst} names an unknown generator")
            if u < 0:
                raise SchemaError("u_power must be non-negative")
            if self.alexander[dst] - u > self.alexander[src]:
                raise SchemaError(f"entry {src} -> U^{u} {dst} raises the Alexander filtration")
            bag[src, dst, u] = bag.get((src, dst, u), 0) ^ 1
        self.differential = sorted(k for k, v in bag.items() if v)
        span = (max(self.alexander.values()) - min(self.alexander.values()) + 2) if self.alexander else 2
        if self.i_min is None:
            self.i_min = -span
        if self.i_max is None:
            self.i_max = span
        if self.i_min > self.i_max:
            raise SchemaError("empty window")
        self._d: dict[str, list[tuple[str, int]]] = {x: [] for x in self.alexander}
        for src, dst, u in self.differential:
            self._d[src].append((dst, u))
        bad = self.d_squared()
        if bad:
            raise InvariantError(f"d^2 != 0 over F2[U] at {bad[:3]}")

    def d_squared(self) -> list[tuple[str, str, int]]:
        out: dict = {}
        for x in self.alexander:
            for y, u in self._d[x]:
                for z, v in self._d[y]:
                    out[x, z, u + v] = out.get((x, z, u + v), 0) ^ 1
        return sorted(k for k, v in out.items() if v)

    def boundary(self, elem: tuple[str, int]) -> list[tuple[str, int]]:
        x, i = elem
        return [(y, i + u) for y, u in self._d[x]]

    def position(self, elem: tuple[str, int]) -> tuple[int, int]:
        x, i = elem
        return -i, self.alexander[x] - i

    def mirror(self) -> "CFKInfinityWindow":
        """The dual complex: Alexander gradings negated, arrows reversed."""
        return CFKInfinityWindow(
            {x: -a for x, a in self.alexander.items()},
            [(dst, src, u) for src, dst, u in self.differential],
            self.i_min,
            self.i_max,
        )

    def _need(self, i: int) -> None:
        if not self.i_min <= i <= self.i_max:
            raise WindowTooSmall(f"U-power {i} lies outside the window [{self.i_min}, {self.i_max}]")


@dataclass
class CFKMinusData:
    generators: list[tuple[str, int, int | None]]
    vertical_arrows: list[Arrow]
    horizontal_arrows: list[Arrow]
    w0: str
    w0prime: str
    tau: int | None = None
    epsilon: int | None = None
    cfkinf: CFKInfinityWindow | None = None
    name: str = ""
    alexander: dict[str, int] = field(init=False)

    def __post_init__(self):
        self.vertical_arrows = [a if isinstance(a, Arrow) else Arrow(*a) for a in self.vertical_arrows]
        self.horizontal_arrows = [a if isinstance(a, Arrow) else Arrow(*a) for a in self.horizontal_arrows]
        self.alexander = {}
        for g in self.generators:
            name, a = g[0], g[1]
            if name in self.alexander:
                raise SchemaError(f"duplicate generator {name!r}")
            self.alexander[name] = int(a)
        validate_cfk(self)
        if self.tau is None:
            self.tau = self.alexander[self.w0]
        if self.epsilon is None:
            self.epsilon = epsilon_from_arrows(self)
        if self.cfkinf is not None:
            inv = invariants(self.cfkinf)
            if inv["tau"] != self.tau or inv["epsilon"] != self.epsilon:
                raise SchemaError(f"window invariants {inv} disagree with tau={self.tau}, epsilon={self.epsilon}")

    @property
    def names(self) -> list[str]:
        return [g[0] for g in self.generators]


def validate_cfk(cfk: CFKMinusData) -> None:
    A = cfk.alexander
    if len(A) % 2 != 1:
        raise SchemaError(f"a knot complex has an odd number of generators, got {len(A)}")
    for kind, arrows, sign, free in (("vertical", cfk.vertical_arrows, 1, cfk.w0),
                                     ("horizontal", cfk.horizontal_arrows, -1, cfk.w0prime)):
        if free not in A:
            raise SchemaError(f"distinguished generator {free!r} is not a generator")
        used: dict[str, int] = {}
        for a in arrows:
            for end in (a.src, a.dst):
                if end not in A:
                    raise SchemaError(f"{kind} arrow {a.src} -> {a.dst}: unknown generator {end!r}")
                used[end] = used.get(end, 0) + 1
            if a.src == a.dst:
                raise SchemaError(f"{kind} arrow {a.src} -> {a.dst} is a loop")
            if a.length < 1:
                raise SchemaError(f"{kind} arrow {a.src} -> {a.dst} must have length >= 1")
            if sign * (A[a.src] - A[a.dst]) != a.length:
                raise SchemaError(f"{kind} arrow {a.src} -> {a.dst}: length {a.length} does not match the Alexander gradings")
        for g in A:
            want = 0 if g == free else 1
            if used.get(g, 0) != want:
                raise SchemaError(
                    f"generator {g!r} lies on {used.get(g, 0)} {kind} arrows, expected {want}"
                )
    if cfk.tau is not None and cfk.tau != A[cfk.w0]:
        raise SchemaError(f"tau={cfk.tau} but A(w0)={A[cfk.w0]}")
    if A[cfk.w0prime] != -A[cfk.w0]:
        raise SchemaError(f"A(w0')={A[cfk.w0prime]} must equal -tau={-A[cfk.w0]}")
    if cfk.epsilon is not None:
        if cfk.epsilon not in (-1, 0, 1):
            raise SchemaError(f"epsilon must be -1, 0 or 1, got {cfk.epsilon}")
        if cfk.epsilon != epsilon_from_arrows(cfk):
            raise SchemaError(f"epsilon={cfk.epsilon} disagrees with the horizontal arrow at w0")


def epsilon_from_arrows(cfk: CFKMinusData) -> int:
    """epsilon read off the horizontal arrow touching w0 (0 when w0 = w0')."""
    if cfk.w0 == cfk.w0prime:
        return 0
    for a in cfk.horizontal_arrows:
        if a.dst == cfk.w0:
            return 1
        if a.src == cfk.w0:
            return -1
    raise SchemaError("w0 lies on no horizontal arrow")


def build_cfa_knot_exterior(cfk: CFKMinusData, r: int) -> TypeAStructure:
    """Chain-graph of the type A invariant of the r-framed knot exterior.

    Filled vertices are the knot generators.  Each vertical arrow of length l
    adds hollow vertices k<i>_1..k<i>_l, each horizontal arrow hollow
    vertices l<i>_1..l<i>_l, and the unstable chain adds g1..g<|2tau - r|>.
    """
    gens: list[tuple[str, int]] = [(g, 1) for g in cfk.names]
    edges: list[tuple[str, str, str]] = []
    for i, a in enumerate(cfk.vertical_arrows, 1):
        k = [f"k{i}_{j}" for j in range(1, a.length + 1)]
        gens += [(v, 2) for v in k]
        edges.append((a.src, "3", k[0]))
        for j in range(1, a.length):
            edges.append((k[j], "21", k[j - 1]))
        edges.append((a.dst, "321", k[-1]))
    for i, a in enumerate(cfk.horizontal_arrows, 1):
        lam = [f"l{i}_{j}" for j in range(1, a.length + 1)]
        gens += [(v, 2) for v in lam]
        edges.append((a.src, "1", lam[0]))
        for j in range(1, a.length):
            edges.append((lam[j - 1], "21", lam[j]))
        edges.append((lam[-1], "2", a.dst))
    t = cfk.tau
    d = abs(2 * t - r)
    gam = [f"g{j}" for j in range(1, d + 1)]
    gens += [(v, 2) for v in gam]
    if r < 2 * t:
        edges.append((cfk.w0, "3", gam[0]))
        for j in range(1, d):
            edges.append((gam[j], "21", gam[j - 1]))
        edges.append((cfk.w0prime, "1", gam[-1]))
    elif r > 2 * t:
        edges.append((cfk.w0, "321", gam[0]))
        for j in range(1, d):
            edges.append((gam[j - 1], "21", gam[j]))
        edges.append((gam[-1], "2", cfk.w0prime))
    else:
        edges.append((cfk.w0, "32", cfk.w0prime))
    return TypeAStructure(gens, edges)


# -- region complexes ------------------------------------------------------------

def _matrix(rows: Sequence, cols: Sequence, entries: Iterable[tuple]) -> np.ndarray:
    ri = {x: k for k, x in enumerate(rows)}
    ci = {x: k for k, x in enumerate(cols)}
    mat = np.zeros((len(rows), len(cols)), dtype=np.uint8)
    for r, c in entries:
        if r in ri and c in ci:
            mat[ri[r], ci[c]] ^= 1
    return mat


def gf2_nullspace(mat: np.ndarray) -> np.ndarray:
    """Basis of the kernel of ``mat`` over F2, one vector per row."""
    m, n = mat.shape
    a = mat.copy() % 2
    pivots = []
    row = 0
    for col in range(n):
        if row == m:
            break
        hits = np.nonzero(a[row:, col])[0]
        if hits.size == 0:
            continue
        p = row + hits[0]
        if p != row:
            a[[row, p]] = a[[p, row]]
        others = np.nonzero(a[:, col])[0]
        others = others[others != row]
        if others.size:
            a[others] ^= a[row]
        pivots.append(col)
        row += 1
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((len(free), n), dtype=np.uint8)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for r, pc in enumerate(pivots):
            if a[r, f]:
                basis[k, pc] = 1
    return basis


def _complex_matrix(W: CFKInfinityWindow, elems: Sequence) -> np.ndarray:
    """d restricted to ``elems`` (entries leaving the set are dropped)."""
    entries = [(t, s) for s in elems for t in W.boundary(s)]
    return _matrix(elems, elems, entries)


def induced_map_nonzero(W: CFKInfinityWindow, source: Sequence, target: Sequence, f) -> bool:
    """Whether the chain map f: source -> target is nonzero on homology.

    ``f`` sends an element of ``source`` to a list of elements of ``target``.
    """
    if not source or not target:
        return False
    cycles = gf2_nullspace(_complex_matrix(W, source))
    if cycles.shape[0] == 0:
        return False
    fmat = _matrix(target, source, [(t, s) for s in source for t in f(s)])
    images = (fmat.astype(np.int64) @ cycles.T.astype(np.int64)) % 2
    dmat = _complex_matrix(W, target)
    base = gf2_rank(dmat)
    return gf2_rank(np.concatenate([dmat, images.astype(np.uint8)], axis=1)) > base


def _levels(W: CFKInfinityWindow) -> range:
    vals = list(W.alexander.values())
    return range(min(vals) - 1, max(vals) + 2)


def vertical_complex(W: CFKInfinityWindow) -> list[tuple[str, int]]:
    W._need(0)
    return [(x, 0) for x in W.alexander]


def compute_tau(W: CFKInfinityWindow) -> int:
    vert = vertical_complex(W)
    for s in _levels(W):
        sub = [e for e in vert if W.alexander[e[0]] <= s]
        if induced_map_nonzero(W, sub, vert, lambda e: [e]):
            return s
    raise SchemaError("the vertical complex has no homology")


def a_complex(W: CFKInfinityWindow, s: int) -> list[tuple[str, int]]:
    """Elements of the quotient complex with max(I, A - s) = 0."""
    out = []
    for x, a in W.alexander.items():
        if a <= s:
            out.append((x, 0))
        if a - s > 0:
            W._need(a - s)
            out.append((x, a - s))
    return out


def a_prime_complex(W: CFKInfinityWindow, s: int) -> list[tuple[str, int]]:
    """Elements with min(I, A - s) = 0."""
    out = []
    for x, a in W.alexander.items():
        if a >= s:
            out.append((x, 0))
        if a - s < 0:
            W._need(a - s)
            out.append((x, a - s))
    return out


def compute_nu(W: CFKInfinityWindow) -> int:
    vert = vertical_complex(W)
    for s in _levels(W):
        src = a_complex(W, s)
        if induced_map_nonzero(W, src, vert, lambda e: [e] if e[1] == 0 else []):
            return s
    raise SchemaError("no level maps onto the homology of the vertical complex")


def compute_nu_prime(W: CFKInfinityWindow) -> int:
    vert = vertical_complex(W)
    for s in reversed(_levels(W)):
        tgt = a_prime_complex(W, s)
        keep = {e for e in tgt if e[1] == 0}
        if induced_map_nonzero(W, vert, tgt, lambda e: [e] if e in keep else []):
            return s
    raise SchemaError("no level carries the homology of the vertical complex")


def invariants(W: CFKInfinityWindow) -> dict[str, int]:
    tau, nu, nu_prime = compute_tau(W), compute_nu(W), compute_nu_prime(W)
    eps = 2 * tau - nu - nu_prime
    if eps not in (-1, 0, 1):
        raise SchemaError(f"epsilon = {eps} is outside {{-1, 0, 1}}; the window is not a knot complex")
    return {"tau": tau, "nu": nu, "nu_prime": nu_prime, "epsilon": eps}


def compute_epsilon(W: CFKInfinityWindow) -> int:
    return invariants(W)["epsilon"]


def window_from_arrows(cfk: CFKMinusData, margin: int | None = None) -> CFKInfinityWindow:
    """The window built from the arrows alone: vertical arrows carry U^0,
    a horizontal arrow of length l carries U^l."""
    diff = [(a.src, a.dst, 0) for a in cfk.vertical_arrows]
    diff += [(a.src, a.dst, a.length) for a in cfk.horizontal_arrows]
    if margin is None:
        return CFKInfinityWindow(dict(cfk.alexander), diff)
    return CFKInfinityWindow(dict(cfk.alexander), diff, -margin, margin)
