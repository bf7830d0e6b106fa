"""Labeled graphs with optional loops and the operators used to assemble
extremal constructions: complement, blow-up, composition, tensor product
and disjoint union, together with a catalogue of named graphs, canonical
forms for small graphs, twin detection and graph6 interchange.

Loops are first class: a loop marks a vertex whose blow-up copies form a
clique, and complementation flips loops along with edges.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce

from .masks import pair_slots, slot_count

CANONICAL_LIMIT = 10
GRAPH6_LIMIT = 62
PALEY_ORDERS = (5, 9, 13, 17, 29)
CAYLEY2_LIMIT = 16


@dataclass(frozen=True)
class LabeledGraph:
    """Undirected graph on vertices 0..n-1 with adjacency rows as bitmasks.

    Bit v of rows[u] is set iff u and v are adjacent; the diagonal bit
    rows[u] >> u marks a loop at u.  Instances are immutable and hashable.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("graph needs at least one vertex")
        if len(self.rows) != self.n:
            raise ValueError("row count does not match vertex count")
        limit = 1 << self.n
        for u, row in enumerate(self.rows):
            if not 0 <= row < limit:
                raise ValueError(f"adjacency row {u} out of range")
            bits = row
            while bits:
                v = (bits & -bits).bit_length() - 1
                bits &= bits - 1
                if not (self.rows[v] >> u) & 1:
                    raise ValueError(f"adjacency not symmetric at ({u}, {v})")

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def has_loop(self, u: int) -> bool:
        return bool((self.rows[u] >> u) & 1)

    @property
    def is_loopless(self) -> bool:
        return all(not self.has_loop(u) for u in range(self.n))

    def degree(self, u: int) -> int:
        """Number of neighbors other than u itself."""
        return (self.rows[u] & ~(1 << u)).bit_count()

    def edges(self) -> list[tuple[int, int]]:
        """Off-diagonal edges as (u, v) with u < v."""
        out = []
        for u in range(self.n):
            bits = self.rows[u] >> (u + 1)
            v = u + 1
            while bits:
                if bits & 1:
                    out.append((u, v))
                bits >>= 1
                v += 1
        return out

    def loops(self) -> list[int]:
        return [u for u in range(self.n) if self.has_loop(u)]

    def edge_count(self) -> int:
        return len(self.edges())

    def __repr__(self):
        tag = "" if self.is_loopless else f", loops={self.loops()}"
        return f"LabeledGraph(n={self.n}, edges={self.edge_count()}{tag})"


def from_edges(n: int, edges=(), loops=()) -> LabeledGraph:
    rows = [0] * n
    for u, v in edges:
        if u == v:
            raise ValueError("use loops= for diagonal entries")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    for u in loops:
        rows[u] |= 1 << u
    return LabeledGraph(n, tuple(rows))


def graph_from_mask(t: int, mask: int, loop_bits: int = 0) -> LabeledGraph:
    """Build the order-t graph encoded by an edge-slot mask."""
    edges = [pair for k, pair in enumerate(pair_slots(t)) if (mask >> k) & 1]
    loops = [v for v in range(t) if (loop_bits >> v) & 1]
    return from_edges(t, edges, loops)


def mask_of_vertices(G: LabeledGraph, vertices) -> int:
    """Edge-slot mask induced by an ordered vertex tuple."""
    mask = 0
    rows = G.rows
    for k, (i, j) in enumerate(pair_slots(len(vertices))):
        if (rows[vertices[i]] >> vertices[j]) & 1:
            mask |= 1 << k
    return mask


def mask_of(G: LabeledGraph) -> int:
    """Edge-slot mask of a loopless graph in its own labeling."""
    return mask_of_vertices(G, range(G.n))


def complement(G: LabeledGraph) -> LabeledGraph:
    """Flip every adjacency, loops included."""
    full = (1 << G.n) - 1
    return LabeledGraph(G.n, tuple(row ^ full for row in G.rows))


def blow_up(G: LabeledGraph, m: int) -> LabeledGraph:
    """Replace each vertex by m copies; copies of a looped vertex form a
    clique, copies of a loopless vertex stay independent.  The result is
    always loopless."""
    if m < 1:
        raise ValueError("blow-up factor must be at least 1")
    n = G.n
    block = (1 << m) - 1
    level = []
    for g in range(n):
        row = 0
        bits = G.rows[g]
        while bits:
            g2 = (bits & -bits).bit_length() - 1
            bits &= bits - 1
            row |= block << (g2 * m)
        level.append(row)
    rows = []
    for g in range(n):
        for h in range(m):
            rows.append(level[g] & ~(1 << (g * m + h)))
    return LabeledGraph(n * m, tuple(rows))


def compose(G: LabeledGraph, H: LabeledGraph) -> LabeledGraph:
    """Substitute a copy of H for every vertex of G: (g, h) ~ (g', h') iff
    g ~ g', or g = g' and h ~ h'.  Both arguments must be loopless."""
    if not G.is_loopless or not H.is_loopless:
        raise ValueError("composition is defined for loopless graphs")
    nh = H.n
    block = (1 << nh) - 1
    outer = []
    for g in range(G.n):
        row = 0
        bits = G.rows[g]
        while bits:
            g2 = (bits & -bits).bit_length() - 1
            bits &= bits - 1
            row |= block << (g2 * nh)
        outer.append(row)
    rows = []
    for g in range(G.n):
        base = outer[g]
        shift = g * nh
        for h in range(H.n):
            rows.append(base | (H.rows[h] << shift))
    return LabeledGraph(G.n * nh, tuple(rows))


def tensor(G: LabeledGraph, H: LabeledGraph, *more: LabeledGraph) -> LabeledGraph:
    """Xor product: (g, h) ~ (g', h') iff exactly one of g ~ g', h ~ h'
    holds, the diagonal (loop) entries following the same rule."""
    if more:
        return reduce(tensor, (G, H) + more)
    nh = H.n
    hfull = (1 << nh) - 1
    rows = []
    for g in range(G.n):
        grow = G.rows[g]
        for h in range(H.n):
            hrow = H.rows[h]
            row = 0
            for g2 in range(G.n):
                blockrow = hrow ^ hfull if (grow >> g2) & 1 else hrow
                row |= blockrow << (g2 * nh)
            rows.append(row)
    return LabeledGraph(G.n * nh, tuple(rows))


def disjoint_union(G: LabeledGraph, H: LabeledGraph, *more: LabeledGraph) -> LabeledGraph:
    if more:
        return reduce(disjoint_union, (G, H) + more)
    rows = list(G.rows) + [row << G.n for row in H.rows]
    return LabeledGraph(G.n + H.n, tuple(rows))


# Fixed 4- and 5-vertex graphs referenced by name in profile bases and the
# construction language.
_FIXED_EDGES = {
    "K4": [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
    "A4": [],
    "S4": [(0, 1), (0, 2), (0, 3)],
    "T4": [(1, 2), (2, 3), (3, 1)],
    "C4": [(0, 1), (1, 3), (3, 2), (2, 0)],
    "M4": [(1, 2), (3, 0)],
    "V4": [(3, 1), (3, 2)],
    "Q4": [(1, 2), (2, 0), (0, 1), (3, 0)],
    "D4": [(0, 1), (0, 2), (0, 3), (2, 3), (3, 1)],
    "E4": [(1, 2)],
    "P4": [(0, 1), (1, 2), (2, 3)],
    "bull": [(3, 1), (3, 2), (1, 2), (1, 0), (3, 4)],
}
_FIXED_ORDER = {name: (5 if name == "bull" else 4) for name in _FIXED_EDGES}


def _complete(n: int) -> LabeledGraph:
    return from_edges(n, itertools.combinations(range(n), 2))


def _cycle(n: int) -> LabeledGraph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def _path(n: int) -> LabeledGraph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def _complete_multipartite(sizes) -> LabeledGraph:
    sizes = list(sizes)
    if not sizes or any(s < 1 for s in sizes):
        raise ValueError("part sizes must be positive")
    n = sum(sizes)
    bounds = list(itertools.accumulate(sizes))
    part = []
    for v in range(n):
        part.append(next(i for i, b in enumerate(bounds) if v < b))
    return from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if part[u] != part[v]])


def _paley(q: int) -> LabeledGraph:
    if q not in PALEY_ORDERS:
        raise ValueError(f"paley order must be one of {PALEY_ORDERS}")
    if q == 9:
        # GF(9) as GF(3)[x] / (x^2 + 1); element (a, b) is a + b x.
        elems = [(a, b) for a in range(3) for b in range(3)]
        idx = {e: i for i, e in enumerate(elems)}
        squares = set()
        for a, b in elems[1:]:
            squares.add(((a * a - b * b) % 3, (2 * a * b) % 3))
        edges = []
        for x in elems:
            for y in elems:
                if idx[x] < idx[y]:
                    diff = ((x[0] - y[0]) % 3, (x[1] - y[1]) % 3)
                    if diff in squares:
                        edges.append((idx[x], idx[y]))
        return from_edges(9, edges)
    squares = {x * x % q for x in range(1, q)}
    return from_edges(q, [(u, v) for u in range(q) for v in range(u + 1, q) if (u - v) % q in squares])


def _cayley2(n: int, weights) -> LabeledGraph:
    """Cayley graph of the group of n-bit vectors under xor, connecting u, v
    iff the Hamming weight of u xor v lies in the weight set.  Weight 0 puts
    a loop at every vertex."""
    if not 1 <= n <= CAYLEY2_LIMIT:
        raise ValueError(f"cayley2 dimension must be in 1..{CAYLEY2_LIMIT}")
    wset = set(weights)
    if not wset or not all(isinstance(w, int) and 0 <= w <= n for w in wset):
        raise ValueError("weights must be integers in 0..n")
    size = 1 << n
    gens = [g for g in range(size) if g.bit_count() in wset]
    rows = []
    for u in range(size):
        row = 0
        for g in gens:
            row |= 1 << (u ^ g)
        rows.append(row)
    return LabeledGraph(size, tuple(rows))


def build_named(name: str, params=()) -> LabeledGraph:
    """Construct a catalogue graph: K/A/C/P/loopK families with a size
    parameter, kpart/paley/cayley2 with their own parameters, or one of the
    fixed 4- and 5-vertex names."""
    params = list(params)
    if name in _FIXED_EDGES:
        if params:
            raise ValueError(f"{name} takes no parameters")
        return from_edges(_FIXED_ORDER[name], _FIXED_EDGES[name])
    if name in ("K", "A", "C", "P", "loopK"):
        if len(params) != 1 or not isinstance(params[0], int) or params[0] < 1:
            raise ValueError(f"{name} takes one positive integer size")
        n = params[0]
        if name == "K":
            return _complete(n)
        if name == "A":
            return from_edges(n)
        if name == "C":
            return _cycle(n)
        if name == "P":
            return _path(n)
        return from_edges(n, itertools.combinations(range(n), 2), loops=range(n))
    if name == "kpart":
        return _complete_multipartite(params)
    if name == "paley":
        if len(params) != 1:
            raise ValueError("paley takes one parameter")
        return _paley(params[0])
    if name == "cayley2":
        if len(params) < 2:
            raise ValueError("cayley2 takes a dimension and at least one weight")
        return _cayley2(params[0], params[1:])
    raise ValueError(f"unknown graph name {name!r}")


@dataclass(frozen=True)
class CanonicalCode:
    """Isomorphism certificate: the lexicographically minimal row-by-row
    adjacency code over all relabelings, plus the automorphism count.
    Row j packs the loop bit of the j-th placed vertex followed by its
    adjacency to the previously placed vertices."""

    n: int
    bits: tuple[int, ...]
    aut_count: int


def _row_code(rows, v: int, chosen) -> int:
    code = (rows[v] >> v) & 1
    for u in chosen:
        code = (code << 1) | ((rows[v] >> u) & 1)
    return code


def canonical_form(G: LabeledGraph) -> CanonicalCode:
    """Exhaustive canonical labeling for graphs on at most 10 vertices."""
    n = G.n
    if n > CANONICAL_LIMIT:
        raise ValueError(f"canonical forms are limited to {CANONICAL_LIMIT} vertices")
    rows = G.rows
    verts = list(range(n))

    def greedy(chosen, used):
        # complete the current placement by always taking a minimal next row
        out = []
        current = list(chosen)
        while len(current) < n:
            best_v = None
            best_r = None
            for v in verts:
                if used & (1 << v):
                    continue
                r = _row_code(rows, v, current)
                if best_r is None or r < best_r:
                    best_r, best_v = r, v
            out.append(best_r)
            used |= 1 << best_v
            current.append(best_v)
        return out

    best = [_row_code(rows, v, range(v)) for v in verts]

    def search(chosen, used, depth):
        nonlocal best
        if depth == n:
            return
        for v in verts:
            if used & (1 << v):
                continue
            r = _row_code(rows, v, chosen)
            if r > best[depth]:
                continue
            chosen.append(v)
            if r < best[depth]:
                best = best[:depth] + [r] + greedy(chosen, used | (1 << v))
            search(chosen, used | (1 << v), depth + 1)
            chosen.pop()

    search([], 0, 0)

    count = 0

    def count_matches(chosen, used, depth):
        nonlocal count
        if depth == n:
            count += 1
            return
        for v in verts:
            if used & (1 << v):
                continue
            if _row_code(rows, v, chosen) == best[depth]:
                chosen.append(v)
                count_matches(chosen, used | (1 << v), depth + 1)
                chosen.pop()

    count_matches([], 0, 0)
    return CanonicalCode(n=n, bits=tuple(best), aut_count=count)


def is_twin_free(G: LabeledGraph) -> bool:
    """No two vertices x, y with N(x) - {y} = N(y) - {x}; loopless only."""
    if not G.is_loopless:
        raise ValueError("twin detection is defined for loopless graphs")
    for u in range(G.n):
        for v in range(u + 1, G.n):
            if G.rows[u] & ~(1 << v) == G.rows[v] & ~(1 << u):
                return False
    return True


def graph6_encode(G: LabeledGraph) -> str:
    """Standard graph6 string for a loopless graph on at most 62 vertices."""
    if not G.is_loopless:
        raise ValueError("graph6 encodes loopless graphs only")
    if G.n > GRAPH6_LIMIT:
        raise ValueError(f"graph6 support is limited to {GRAPH6_LIMIT} vertices")
    bits = []
    for j in range(1, G.n):
        for i in range(j):
            bits.append(1 if G.has_edge(i, j) else 0)
    while len(bits) % 6:
        bits.append(0)
    chars = [chr(G.n + 63)]
    for k in range(0, len(bits), 6):
        value = 0
        for b in bits[k : k + 6]:
            value = (value << 1) | b
        chars.append(chr(value + 63))
    return "".join(chars)


def graph6_decode(text: str) -> LabeledGraph:
    if not text:
        raise ValueError("empty graph6 string")
    data = [ord(c) - 63 for c in text]
    if any(not 0 <= d < 64 for d in data):
        raise ValueError("graph6 characters must be in range 63..126")
    n = data[0]
    if not 1 <= n <= GRAPH6_LIMIT:
        raise ValueError(f"graph6 order must be in 1..{GRAPH6_LIMIT}")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(data) - 1 != need:
        raise ValueError("graph6 string has the wrong length")
    bits = []
    for d in data[1:]:
        for k in range(5, -1, -1):
            bits.append((d >> k) & 1)
    m = n * (n - 1) // 2
    if any(bits[m:]):
        raise ValueError("graph6 padding bits must be zero")
    edges = []
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                edges.append((i, j))
            pos += 1
    return from_edges(n, edges)
