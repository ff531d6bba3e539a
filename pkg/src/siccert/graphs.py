"""Bit-matrix graphs, the graph6 codec, and structural predicates.

Graphs are immutable: a vertex count plus one adjacency bitmask per
vertex.  Vertex sets are plain ints used as bitmasks, so all the
set algebra is &, |, ~ and bit_count().
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

MAX_VERTICES = 64
GRAPH6_MAX = 62


class Graph6Error(ValueError):
    """Raised on malformed graph6 input; carries the offending byte offset."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class CapacityError(RuntimeError):
    """Raised when an enumeration exceeds its configured cap."""


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of mask, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1 with bitmask rows."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} outside 1..{MAX_VERTICES}")
        if len(self.rows) != self.n:
            raise ValueError("row count does not match vertex count")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {i} has bits beyond vertex range")
            if row >> i & 1:
                raise ValueError(f"self-loop at vertex {i}")
        for i in range(self.n):
            for j in iter_bits(self.rows[i]):
                if not self.rows[j] >> i & 1:
                    raise ValueError(f"adjacency not symmetric at ({i},{j})")

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) outside vertex range")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(n, tuple(rows))

    @staticmethod
    def empty(n: int) -> "Graph":
        return Graph(n, (0,) * n)

    @staticmethod
    def complete(n: int) -> "Graph":
        full = (1 << n) - 1
        return Graph(n, tuple(full ^ (1 << i) for i in range(n)))

    @staticmethod
    def cycle(n: int) -> "Graph":
        return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @staticmethod
    def path(n: int) -> "Graph":
        return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in iter_bits(self.rows[u] >> (u + 1) << (u + 1)):
                yield (u, v)

    def edge_count(self) -> int:
        return sum(self.degree(v) for v in range(self.n)) // 2

    def vertex_mask(self) -> int:
        return (1 << self.n) - 1


# ---------------------------------------------------------------------------
# graph6 codec (short form only, n <= 62)
# ---------------------------------------------------------------------------

def parse_graph6(text: str) -> Graph:
    """Decode a short-form graph6 string.

    Bits are the upper triangle in column-major order, packed into
    6-bit groups offset by 63.  Strict: length must match, padding
    bits must be zero.
    """
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise Graph6Error("empty graph6 string", 0)
    for k, ch in enumerate(s):
        o = ord(ch)
        if not 63 <= o <= 126:
            raise Graph6Error(f"character {ch!r} outside graph6 range 63..126", k)
    n = ord(s[0]) - 63
    if n == 63:
        raise Graph6Error("long-form graph6 (n > 62) not supported", 0)
    if not 1 <= n <= GRAPH6_MAX:
        raise Graph6Error(f"vertex count {n} outside 1..{GRAPH6_MAX}", 0)
    nbits = n * (n - 1) // 2
    expect = 1 + (nbits + 5) // 6
    if len(s) != expect:
        off = min(len(s), expect)
        raise Graph6Error(
            f"length {len(s)} does not match {expect} for n={n}", off)
    rows = [0] * n
    bit = 0
    for k in range(1, len(s)):
        group = ord(s[k]) - 63
        for b in range(5, -1, -1):
            if group >> b & 1:
                if bit >= nbits:
                    raise Graph6Error("nonzero padding bits", k)
                # column-major upper triangle: bit index -> (i, j), i < j
                i, j = _bit_to_pair(bit, n)
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            bit += 1
    return Graph(n, tuple(rows))


def _bit_to_pair(bit: int, n: int) -> tuple[int, int]:
    j = 1
    while bit >= j:
        bit -= j
        j += 1
    return bit, j


def encode_graph6(g: Graph) -> str:
    """Encode a graph as its canonical short-form graph6 string."""
    if g.n > GRAPH6_MAX:
        raise Graph6Error(f"graph6 short form supports n <= {GRAPH6_MAX}, got {g.n}")
    out = [chr(63 + g.n)]
    group = 0
    nb = 0
    for j in range(1, g.n):
        for i in range(j):
            group = group << 1 | (g.rows[i] >> j & 1)
            nb += 1
            if nb == 6:
                out.append(chr(63 + group))
                group = 0
                nb = 0
    if nb:
        out.append(chr(63 + (group << (6 - nb))))
    return "".join(out)


# ---------------------------------------------------------------------------
# structural predicates
# ---------------------------------------------------------------------------

def is_square_free(g: Graph) -> bool:
    """True iff no two distinct vertices share two or more neighbors."""
    rows = g.rows
    for u in range(g.n):
        ru = rows[u]
        for v in range(u + 1, g.n):
            if (ru & rows[v]).bit_count() >= 2:
                return False
    return True


def is_connected(g: Graph) -> bool:
    seen = 1
    frontier = 1
    full = g.vertex_mask()
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= g.rows[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen == full


def connected_components(g: Graph) -> list[int]:
    """Component vertex masks, ordered by lowest contained vertex."""
    comps = []
    todo = g.vertex_mask()
    while todo:
        start = todo & -todo
        seen = start
        frontier = start
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= g.rows[v]
            frontier = nxt & ~seen
            seen |= frontier
        comps.append(seen)
        todo &= ~seen
    return comps


def is_independent(g: Graph, s: int) -> bool:
    for v in iter_bits(s):
        if g.rows[v] & s:
            return False
    return True


# ---------------------------------------------------------------------------
# maximal independent sets
# ---------------------------------------------------------------------------

def maximal_independent_sets(g: Graph, cap: int = 100_000) -> list[int]:
    """Inclusion-maximal independent sets as bitmasks, ascending.

    Bron-Kerbosch with pivoting on the complement graph: maximal
    independent sets of g are maximal cliques of its complement.
    The pivot is the candidate with the most candidate neighbors,
    ties broken by lowest index.  Raises CapacityError past cap.
    """
    full = g.vertex_mask()
    comp = tuple((full ^ g.rows[v]) & ~(1 << v) for v in range(g.n))
    out: list[int] = []

    def extend(r: int, p: int, x: int):
        if not p and not x:
            out.append(r)
            if len(out) > cap:
                raise CapacityError(
                    f"more than {cap} maximal independent sets")
            return
        px = p | x
        pivot = -1
        best = -1
        for u in iter_bits(px):
            d = (comp[u] & p).bit_count()
            if d > best:
                best = d
                pivot = u
        for v in iter_bits(p & ~comp[pivot]):
            bit = 1 << v
            extend(r | bit, p & comp[v], x & comp[v])
            p &= ~bit
            x |= bit

    extend(0, full, 0)
    out.sort()
    return out


def max_weight_independent_set(g: Graph, weights) -> tuple[int, object]:
    """Exact maximum-weight independent set for nonnegative weights.

    Branch and bound over bitmask candidates; returns (mask, weight).
    Weight type only needs +, comparison, zero (Fraction or int work).
    Deterministic: vertices are tried in descending weight order,
    ties by index, so the returned mask is reproducible.
    """
    order = sorted(range(g.n), key=lambda v: (-weights[v], v))
    zero = weights[0] - weights[0]
    best_mask = 0
    best_val = zero

    def rec(idx: int, avail: int, cur_mask: int, cur_val):
        nonlocal best_mask, best_val
        if cur_val > best_val:
            best_val = cur_val
            best_mask = cur_mask
        bound = cur_val
        for k in range(idx, g.n):
            if avail >> order[k] & 1:
                bound = bound + weights[order[k]]
        if bound <= best_val:
            return
        for k in range(idx, g.n):
            v = order[k]
            if avail >> v & 1:
                rec(k + 1, avail & ~(g.rows[v] | (1 << v)),
                    cur_mask | (1 << v), cur_val + weights[v])
                avail &= ~(1 << v)

    rec(0, g.vertex_mask(), 0, zero)
    return best_mask, best_val


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def cone(g: Graph) -> Graph:
    """Add one vertex adjacent to every vertex of g."""
    if g.n + 1 > MAX_VERTICES:
        raise ValueError(f"cone would exceed {MAX_VERTICES} vertices")
    apex = 1 << g.n
    rows = tuple(r | apex for r in g.rows) + (g.vertex_mask(),)
    return Graph(g.n + 1, rows)


def complement(g: Graph) -> Graph:
    full = g.vertex_mask()
    return Graph(g.n, tuple((full ^ r) & ~(1 << v) for v, r in enumerate(g.rows)))


def induced_subgraph(g: Graph, s: int) -> Graph:
    """Subgraph induced by the vertex bitmask s, relabeled 0..k-1."""
    verts = list(iter_bits(s))
    if not verts:
        raise ValueError("induced subgraph needs at least one vertex")
    pos = {v: i for i, v in enumerate(verts)}
    rows = []
    for v in verts:
        row = 0
        for u in iter_bits(g.rows[v] & s):
            row |= 1 << pos[u]
        rows.append(row)
    return Graph(len(verts), tuple(rows))
