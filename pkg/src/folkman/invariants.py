"""Exact graph invariants: clique number, independence number, chromatic
number, degree statistics and triangle indexing.

Everything here is exact; the searches depend on these as ground truth, so
there are no heuristic shortcuts.  Sizes stay small (n <= 19 in the pipeline),
which keeps bitset branch-and-bound comfortably fast.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, VertexSet, bits, complement, popcount


@dataclass(frozen=True)
class DegreeProfile:
    min_degree: int
    max_degree: int
    edge_count: int
    degrees: tuple  # multiset, sorted ascending

    def __post_init__(self):
        if self.min_degree > self.max_degree:
            raise ValueError("min degree above max degree")
        if sum(self.degrees) != 2 * self.edge_count:
            raise ValueError("degree sum does not match edge count")


@dataclass(frozen=True, eq=False)
class TriangleIndex:
    triangles: tuple  # (a, b, c) with a < b < c, lexicographically sorted
    edge_triangles: dict  # (u, v) with u < v -> tuple of triangle indices


def _degree_sorted_adj(g: Graph) -> list:
    """Relabel rows by descending degree (ties by index) for deterministic
    branch-and-bound; invariants do not depend on labels."""
    order = sorted(range(g.n), key=lambda v: (-popcount(g.adj[v]), v))
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    rows = [0] * g.n
    for v in range(g.n):
        moved = 0
        for u in bits(g.adj[v]):
            moved |= 1 << pos[u]
        rows[pos[v]] = moved
    return rows


def clique_number(g: Graph) -> int:
    adj = _degree_sorted_adj(g)
    best = 0

    def color_order(cand):
        # greedy coloring of the candidate set; the color index bounds the
        # largest clique extension through each vertex
        order, bounds = [], []
        color = 0
        rest = cand
        while rest:
            color += 1
            avail = rest
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                avail ^= low
                rest ^= low
                order.append(v)
                bounds.append(color)
                avail &= ~adj[v]
        return order, bounds

    def expand(cand, size):
        nonlocal best
        order, bounds = color_order(cand)
        for i in range(len(order) - 1, -1, -1):
            if size + bounds[i] <= best:
                return
            v = order[i]
            sub = cand & adj[v]
            if sub:
                expand(sub, size + 1)
            elif size + 1 > best:
                best = size + 1
            cand ^= 1 << v

    expand((1 << g.n) - 1, 0)
    return best


def independence_number(g: Graph) -> int:
    return clique_number(complement(g))


def _greedy_upper(adj, n: int) -> int:
    order = sorted(range(n), key=lambda v: (-popcount(adj[v]), v))
    color_of = {}
    used = 0
    for v in order:
        forbidden = 0
        for u in bits(adj[v]):
            if u in color_of:
                forbidden |= 1 << color_of[u]
        c = 0
        while (forbidden >> c) & 1:
            c += 1
        color_of[v] = c
        used = max(used, c + 1)
    return used


def _colorable(adj, n: int, k: int) -> bool:
    """Exact k-colorability by saturation-first backtracking."""
    if k >= n:
        return True
    if k <= 0:
        return False
    color_of = [-1] * n
    nbr_colors = [0] * n

    def rec(done, max_used):
        if done == n:
            return True
        pick, pick_key = -1, None
        for v in range(n):
            if color_of[v] < 0:
                key = (popcount(nbr_colors[v]), popcount(adj[v]), -v)
                if pick_key is None or key > pick_key:
                    pick, pick_key = v, key
        limit = min(k, max_used + 1)  # new colors introduced in order
        avail = ~nbr_colors[pick] & ((1 << limit) - 1)
        while avail:
            low = avail & -avail
            c = low.bit_length() - 1
            avail ^= low
            color_of[pick] = c
            touched = []
            for u in bits(adj[pick]):
                if color_of[u] < 0 and not (nbr_colors[u] >> c) & 1:
                    nbr_colors[u] |= 1 << c
                    touched.append(u)
            if rec(done + 1, max(max_used, c + 1)):
                return True
            color_of[pick] = -1
            for u in touched:
                nbr_colors[u] ^= 1 << c
        return False

    return rec(0, 0)


def chromatic_number(g: Graph) -> int:
    adj = _degree_sorted_adj(g)
    lower = clique_number(g)
    upper = _greedy_upper(adj, g.n)
    for k in range(lower, upper):
        if _colorable(adj, g.n, k):
            return k
    return upper


def chromatic_at_least(g: Graph, t: int) -> bool:
    """Decide chi(g) >= t without always computing chi exactly."""
    if t <= 1:
        return True
    if clique_number(g) >= t:
        return True
    adj = _degree_sorted_adj(g)
    if _greedy_upper(adj, g.n) < t:
        return False
    return not _colorable(adj, g.n, t - 1)


def degree_profile(g: Graph) -> DegreeProfile:
    degrees = sorted(popcount(row) for row in g.adj)
    return DegreeProfile(
        min_degree=degrees[0],
        max_degree=degrees[-1],
        edge_count=sum(degrees) // 2,
        degrees=tuple(degrees),
    )


def triangle_index(g: Graph) -> TriangleIndex:
    triangles = []
    edge_map = {}
    for u, v in g.edges():
        common = g.adj[u] & g.adj[v]
        for w in bits(common):
            if w > v:
                triangles.append((u, v, w))
    triangles.sort()
    for idx, (a, b, c) in enumerate(triangles):
        for e in ((a, b), (a, c), (b, c)):
            edge_map.setdefault(e, []).append(idx)
    return TriangleIndex(
        triangles=tuple(triangles),
        edge_triangles={e: tuple(ts) for e, ts in edge_map.items()},
    )


def is_k3_free_subset(g: Graph, s: VertexSet) -> bool:
    s &= g.vertex_mask
    for v in bits(s):
        row = g.adj[v] & s
        for u in bits(row & ((1 << v) - 1)):
            if g.adj[u] & row:
                return False
    return True
