"""Arrowing deciders and their brute-force oracles.

Edge arrowing G -> (3,3) asks whether every 2-coloring of E(G) contains a
monochromatic triangle; vertex arrowing (3,3) and (2,3,3) ask the analogous
question for vertex partitions.  The deciders search for a good coloring by
backtracking with unit propagation on triangles: once two edges (vertices)
of a triangle share a color, the third is forced.  Exhaustive oracles with
no propagation at all provide independent ground truth for testing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, bits, complement, edge_in, join_complete, popcount
from .invariants import triangle_index

ORACLE_EDGE_CAP = 25
ORACLE_VERTEX_CAP = 16


@dataclass(frozen=True)
class EdgeColoring:
    """Colors in {0,1}, aligned with the edges tuple."""

    edges: tuple
    colors: tuple


@dataclass(frozen=True)
class VertexColoring:
    """Per-vertex colors in 1..s."""

    colors: tuple


def coloring_is_good_edge(g: Graph, coloring: EdgeColoring) -> bool:
    """No monochromatic triangle, and the coloring covers exactly E(g)."""
    if sorted(coloring.edges) != sorted(g.edges()):
        return False
    color_of = dict(zip(coloring.edges, coloring.colors))
    for a, b, c in triangle_index(g).triangles:
        if color_of[(a, b)] == color_of[(a, c)] == color_of[(b, c)]:
            return False
    return True


def coloring_is_good_vertex(g: Graph, coloring: VertexColoring, sizes: tuple) -> bool:
    """No class i contains a K_{sizes[i]}; classes are 1-based colors."""
    if len(coloring.colors) != g.n:
        return False
    for i, a in enumerate(sizes, start=1):
        mask = 0
        for v, c in enumerate(coloring.colors):
            if c == i:
                mask |= 1 << v
        if a == 2:
            if edge_in(g, mask):
                return False
        elif a == 3:
            if _triangle_in(g, mask):
                return False
        else:
            raise ValueError(f"unsupported clique size {a}")
    return True


def _triangle_in(g: Graph, mask: int) -> bool:
    for v in bits(mask):
        row = g.adj[v] & mask
        for u in bits(row & ((1 << v) - 1)):
            if g.adj[u] & row:
                return True
    return False


def edge_33_witness(g: Graph):
    """A 2-edge-coloring without monochromatic triangles, or None if g arrows."""
    tri = triangle_index(g)
    all_edges = tuple(g.edges())
    if not tri.triangles:
        return EdgeColoring(all_edges, (0,) * len(all_edges))
    # only edges lying in triangles are constrained; sort them by triangle
    # count descending so propagation bites early
    branch = sorted(
        tri.edge_triangles, key=lambda e: (-len(tri.edge_triangles[e]), e)
    )
    eid = {e: i for i, e in enumerate(branch)}
    cotri = [[] for _ in branch]
    for a, b, c in tri.triangles:
        i, j, k = eid[(a, b)], eid[(a, c)], eid[(b, c)]
        cotri[i].append((j, k))
        cotri[j].append((i, k))
        cotri[k].append((i, j))
    m = len(branch)
    color = [-1] * m
    trail = []

    def assign(i0, c0):
        stack = [(i0, c0)]
        while stack:
            i, c = stack.pop()
            if color[i] >= 0:
                if color[i] != c:
                    return False
                continue
            color[i] = c
            trail.append(i)
            for j, k in cotri[i]:
                cj, ck = color[j], color[k]
                if cj == c:
                    if ck == c:
                        return False
                    if ck < 0:
                        stack.append((k, 1 - c))
                elif ck == c and cj < 0:
                    stack.append((j, 1 - c))
        return True

    def undo(mark):
        while len(trail) > mark:
            color[trail.pop()] = -1

    def solve(first):
        i = 0
        while i < m and color[i] >= 0:
            i += 1
        if i == m:
            return True
        # swapping the two colors is a symmetry, so the first branch
        # point only ever takes color 0
        for c in (0,) if first else (0, 1):
            mark = len(trail)
            if assign(i, c) and solve(False):
                return True
            undo(mark)
        return False

    if not solve(True):
        return None
    assigned = {branch[i]: color[i] for i in range(m)}
    return EdgeColoring(all_edges, tuple(assigned.get(e, 0) for e in all_edges))


def arrows_edge_33(g: Graph) -> bool:
    return edge_33_witness(g) is None


def arrows_edge_33_joined(p: int, g: Graph) -> bool:
    return arrows_edge_33(join_complete(p, g))


def _split_33(g: Graph):
    """Partition V(g) into two triangle-free masks, or None."""
    tri = triangle_index(g).triangles
    if not tri:
        return (g.vertex_mask, 0)
    in_tri = {}
    for t in tri:
        for v in t:
            in_tri[v] = in_tri.get(v, 0) + 1
    branch = sorted(in_tri, key=lambda v: (-in_tri[v], v))
    vid = {v: i for i, v in enumerate(branch)}
    cotri = [[] for _ in branch]
    for a, b, c in tri:
        i, j, k = vid[a], vid[b], vid[c]
        cotri[i].append((j, k))
        cotri[j].append((i, k))
        cotri[k].append((i, j))
    m = len(branch)
    color = [-1] * m
    trail = []

    def assign(i0, c0):
        stack = [(i0, c0)]
        while stack:
            i, c = stack.pop()
            if color[i] >= 0:
                if color[i] != c:
                    return False
                continue
            color[i] = c
            trail.append(i)
            for j, k in cotri[i]:
                cj, ck = color[j], color[k]
                if cj == c:
                    if ck == c:
                        return False
                    if ck < 0:
                        stack.append((k, 1 - c))
                elif ck == c and cj < 0:
                    stack.append((j, 1 - c))
        return True

    def undo(mark):
        while len(trail) > mark:
            color[trail.pop()] = -1

    def solve(first):
        i = 0
        while i < m and color[i] >= 0:
            i += 1
        if i == m:
            return True
        for c in (0,) if first else (0, 1):
            mark = len(trail)
            if assign(i, c) and solve(False):
                return True
            undo(mark)
        return False

    if not solve(True):
        return None
    part0 = 0
    for i, v in enumerate(branch):
        if color[i] == 0:
            part0 |= 1 << v
    free = g.vertex_mask & ~sum(1 << v for v in branch)
    return (part0 | free, g.vertex_mask & ~(part0 | free))


def arrows_vertex_33(g: Graph) -> bool:
    return _split_33(g) is None


def vertex_33_witness(g: Graph):
    split = _split_33(g)
    if split is None:
        return None
    part1, _ = split
    return VertexColoring(tuple(1 if (part1 >> v) & 1 else 2 for v in range(g.n)))


def maximal_independent_sets(g: Graph):
    """All maximal independent sets as masks: pivoting Bron-Kerbosch on the
    complement, deterministic vertex order."""
    cadj = complement(g).adj

    def bk(r, p, x):
        if p == 0 and x == 0:
            yield r
            return
        pivot, pivot_count = -1, -1
        for u in bits(p | x):
            c = popcount(cadj[u] & p)
            if c > pivot_count:
                pivot, pivot_count = u, c
        for v in bits(p & ~cadj[pivot]):
            yield from bk(r | (1 << v), p & cadj[v], x & cadj[v])
            p ^= 1 << v
            x |= 1 << v

    yield from bk(0, g.vertex_mask, 0)


def _partition_233(g: Graph):
    """(independent, triangle-free, triangle-free) masks, or None.

    Only maximal independent first parts need checking: any good partition
    stays good when vertices move into a larger independent part.
    """
    if not triangle_index(g).triangles:
        return (0, g.vertex_mask, 0)
    full = g.vertex_mask
    for a in maximal_independent_sets(g):
        if a == full:
            return (a, 0, 0)
        kept = [v for v in range(g.n) if not (a >> v) & 1]
        rest = _induced(g, kept)
        split = _split_33(rest)
        if split is not None:
            part2 = 0
            for i, v in enumerate(kept):
                if (split[0] >> i) & 1:
                    part2 |= 1 << v
            return (a, part2, full & ~(a | part2))
    return None


def _induced(g: Graph, kept) -> Graph:
    index = {v: i for i, v in enumerate(kept)}
    rows = []
    for v in kept:
        row = 0
        for u in bits(g.adj[v]):
            if u in index:
                row |= 1 << index[u]
        rows.append(row)
    return Graph(len(kept), tuple(rows))


def arrows_vertex_233(g: Graph) -> bool:
    return _partition_233(g) is None


def vertex_233_witness(g: Graph):
    parts = _partition_233(g)
    if parts is None:
        return None
    colors = [0] * g.n
    for i, mask in enumerate(parts, start=1):
        for v in bits(mask):
            colors[v] = i
    return VertexColoring(tuple(colors))


def oracle_edge_33(g: Graph) -> bool:
    """Ground truth by exhaustive evaluation of all 2^|E| colorings.

    Colorings are integers over the edge list in g.edges() order, evaluated
    in vectorized chunks; the only shortcut is stopping at the first good
    coloring.
    """
    edges = list(g.edges())
    m = len(edges)
    if m > ORACLE_EDGE_CAP:
        raise ValueError(f"edge count {m} above oracle cap {ORACLE_EDGE_CAP}")
    eid = {e: i for i, e in enumerate(edges)}
    tri_masks = []
    for a, b, c in triangle_index(g).triangles:
        tri_masks.append(
            (1 << eid[(a, b)]) | (1 << eid[(a, c)]) | (1 << eid[(b, c)])
        )
    if not tri_masks:
        return False
    chunk = 1 << 20
    for start in range(0, 1 << m, chunk):
        stop = min(start + chunk, 1 << m)
        colorings = np.arange(start, stop, dtype=np.int64)
        good = np.ones(stop - start, dtype=bool)
        for t in tri_masks:
            hit = colorings & t
            good &= (hit != t) & (hit != 0)
            if not good.any():
                break
        if good.any():
            return False
    return True


def oracle_vertex(g: Graph, sizes) -> bool:
    """Ground truth for vertex arrowing: try every assignment of V(g) into
    len(sizes) classes, class i forbidding K_{sizes[i]}."""
    if g.n > ORACLE_VERTEX_CAP:
        raise ValueError(f"order {g.n} above oracle cap {ORACLE_VERTEX_CAP}")
    sizes = tuple(sizes)
    for a in sizes:
        if a not in (2, 3):
            raise ValueError(f"unsupported clique size {a}")
    k = len(sizes)
    masks = [0] * k

    def rec(v):
        if v == g.n:
            return True  # all classes stayed clean: a good coloring exists
        for i in range(k):
            masks[i] |= 1 << v
            ok = (
                not edge_in(g, masks[i])
                if sizes[i] == 2
                else not _triangle_in(g, masks[i])
            )
            if ok and rec(v + 1):
                return True
            masks[i] ^= 1 << v
        return False

    return not rec(0)
