"""Compact undirected simple graphs on at most 62 vertices.

Vertices are dense 0-based indices.  The adjacency structure is a tuple of
integer bitmasks, one row per vertex, so neighborhood algebra (intersection,
containment, degree) is single-word bit arithmetic.  The 62-vertex cap keeps
graph6 headers to one byte; the searches here never need more than 19.

All operations are pure: they return new Graph values and never mutate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

MAX_VERTICES = 62

# A VertexSet is a plain int bitmask over 0..n-1 of some host graph.
VertexSet = int
# An Edge is a pair (u, v) with u < v.
Edge = tuple


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph: vertex count plus one neighborhood bitmask per vertex."""

    n: int
    adj: tuple

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} outside 1..{MAX_VERTICES}")
        if not isinstance(self.adj, tuple):
            object.__setattr__(self, "adj", tuple(self.adj))
        if len(self.adj) != self.n:
            raise ValueError(f"adjacency has {len(self.adj)} rows, expected {self.n}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"row {v} has bits >= n")
            if (row >> v) & 1:
                raise ValueError(f"vertex {v} adjacent to itself")
        for v in range(self.n):
            for u in bits(self.adj[v]):
                if not (self.adj[u] >> v) & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def edges(self) -> Iterator[Edge]:
        for v in range(self.n):
            for u in bits(self.adj[v] & ((1 << v) - 1)):
                yield (u, v)

    def edge_count(self) -> int:
        return sum(popcount(row) for row in self.adj) // 2

    def non_edges(self) -> Iterator[Edge]:
        for v in range(self.n):
            missing = ~self.adj[v] & ((1 << v) - 1)
            for u in bits(missing):
                yield (u, v)


def from_edges(n: int, edges) -> Graph:
    rows = [0] * n
    for u, v in edges:
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << v) for v in range(n)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return from_edges(n, [(v, (v + 1) % n) for v in range(n)])


def path_graph(n: int) -> Graph:
    return from_edges(n, [(v, v + 1) for v in range(n - 1)])


def complete_multipartite(*parts: int) -> Graph:
    n = sum(parts)
    rows = []
    start = 0
    full = (1 << n) - 1
    for size in parts:
        part_mask = ((1 << size) - 1) << start
        rows.extend([full & ~part_mask] * size)
        start += size
    return Graph(n, tuple(rows))


def petersen_graph() -> Graph:
    outer = [(v, (v + 1) % 5) for v in range(5)]
    inner = [(5 + v, 5 + (v + 2) % 5) for v in range(5)]
    spokes = [(v, 5 + v) for v in range(5)]
    return from_edges(10, outer + inner + spokes)


def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    return Graph(g.n, tuple((full & ~row) & ~(1 << v) for v, row in enumerate(g.adj)))


def relabel(g: Graph, perm) -> Graph:
    """Apply a permutation (perm[old] = new) to the vertex labels."""
    rows = [0] * g.n
    for v, row in enumerate(g.adj):
        moved = 0
        for u in bits(row):
            moved |= 1 << perm[u]
        rows[perm[v]] = moved
    return Graph(g.n, tuple(rows))


def join(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union plus all cross edges; g2's vertices are shifted by g1.n."""
    n = g1.n + g2.n
    if n > MAX_VERTICES:
        raise ValueError(f"join of {g1.n}+{g2.n} vertices exceeds {MAX_VERTICES}")
    mask1 = g1.vertex_mask
    shifted_full = ((1 << g2.n) - 1) << g1.n
    rows = [row | shifted_full for row in g1.adj]
    rows += [(row << g1.n) | mask1 for row in g2.adj]
    return Graph(n, tuple(rows))


def join_complete(p: int, g: Graph) -> Graph:
    """K_p + g; p = 0 returns g unchanged."""
    if p < 0:
        raise ValueError("p must be nonnegative")
    if p == 0:
        return g
    return join(complete_graph(p), g)


def remove_vertices(g: Graph, a: VertexSet) -> Graph:
    """Induced subgraph on V minus a, reindexed in increasing original order."""
    a &= g.vertex_mask
    keep = g.vertex_mask & ~a
    if keep == 0:
        raise ValueError("cannot remove all vertices")
    old_order = list(bits(keep))
    new_index = {old: new for new, old in enumerate(old_order)}
    rows = []
    for old in old_order:
        row = 0
        for u in bits(g.adj[old] & keep):
            row |= 1 << new_index[u]
        rows.append(row)
    return Graph(len(old_order), tuple(rows))


def add_vertex(g: Graph, nbrs: VertexSet) -> Graph:
    """Append a new vertex with neighborhood nbrs; its index is the old n."""
    if g.n + 1 > MAX_VERTICES:
        raise ValueError(f"cannot grow past {MAX_VERTICES} vertices")
    if nbrs & ~g.vertex_mask:
        raise ValueError("neighbor bits outside host graph")
    new_bit = 1 << g.n
    rows = [row | new_bit if (nbrs >> v) & 1 else row for v, row in enumerate(g.adj)]
    rows.append(nbrs)
    return Graph(g.n + 1, tuple(rows))


def duplicate_vertex(g: Graph, v: int) -> Graph:
    """Add a twin v' with N(v') = N(v); v' is not adjacent to v."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    return add_vertex(g, g.adj[v])


def edge_in(g: Graph, mask: VertexSet) -> bool:
    """True iff g has at least one edge with both endpoints inside mask."""
    for v in bits(mask):
        if g.adj[v] & mask:
            return True
    return False


def has_k4(g: Graph) -> bool:
    """True iff some edge's common neighborhood contains an edge."""
    for u, v in g.edges():
        if edge_in(g, g.adj[u] & g.adj[v]):
            return True
    return False


def is_sperner(g: Graph) -> bool:
    """True iff some ordered pair u != v has N(u) a subset of N(v).

    Adjacent pairs can never witness this: v is in N(u) but never in N(v).
    """
    if g.n < 2:
        return False
    for v in range(g.n):
        row_v = g.adj[v]
        for u in range(g.n):
            if u != v and g.adj[u] & ~row_v == 0:
                return True
    return False


def is_maximal_k4_free(g: Graph) -> bool:
    """True iff filling in any non-edge creates a K4.

    Requires a K4-free input; the equivalent test per non-edge {u,v} is
    whether N(u) and N(v) share an edge.
    """
    if has_k4(g):
        raise ValueError("input already contains K4")
    for u, v in g.non_edges():
        if not edge_in(g, g.adj[u] & g.adj[v]):
            return False
    return True


def is_plus_k3(g: Graph) -> bool:
    """True iff filling in any non-edge creates a new triangle.

    Equivalently every non-adjacent pair has a common neighbor; complete
    graphs qualify vacuously.
    """
    for u, v in g.non_edges():
        if g.adj[u] & g.adj[v] == 0:
            return False
    return True


class Graph6Error(ValueError):
    """Malformed graph6 input; offset is the index of the offending byte."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def encode_graph6(g: Graph) -> bytes:
    """Standard graph6: one header byte n+63, then the upper triangle in
    column order packed 6 bits per byte, each byte offset by 63."""
    out = [g.n + 63]
    acc = 0
    nbits = 0
    for v in range(1, g.n):
        col = g.adj[v]
        for u in range(v):
            acc = (acc << 1) | ((col >> u) & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = 0
                nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def decode_graph6(data: bytes) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    if not data:
        raise Graph6Error("empty input", 0)
    n = data[0] - 63
    if not 1 <= n <= MAX_VERTICES:
        raise Graph6Error(f"unsupported vertex count {n}", 0)
    npairs = n * (n - 1) // 2
    nbytes = (npairs + 5) // 6
    if len(data) != 1 + nbytes:
        raise Graph6Error(
            f"body has {len(data) - 1} bytes, expected {nbytes}", min(len(data), 1 + nbytes)
        )
    rows = [0] * n
    idx = 0
    pairs = [(u, v) for v in range(1, n) for u in range(v)]
    for i, byte in enumerate(data[1:], start=1):
        if not 63 <= byte <= 126:
            raise Graph6Error(f"byte {byte} outside graph6 range", i)
        chunk = byte - 63
        for k in range(5, -1, -1):
            bit = (chunk >> k) & 1
            if idx < npairs:
                if bit:
                    u, v = pairs[idx]
                    rows[u] |= 1 << v
                    rows[v] |= 1 << u
                idx += 1
            elif bit:
                raise Graph6Error("nonzero padding bits", i)
    return Graph(n, tuple(rows))
