"""Shared test plumbing: brute-force reference oracles, the packaged
small-graph streams, and hypothesis strategies."""

from __future__ import annotations

import gzip
import itertools
import json
from pathlib import Path

import hypothesis.strategies as st

from folkman.graph import Graph, decode_graph6

REPO_ROOT = Path(__file__).resolve().parent.parent
SMALL_GRAPHS = REPO_ROOT / "data" / "small_graphs"
FROZEN_PATH = Path(__file__).resolve().parent / "data" / "frozen.json"

# unlabeled graph counts by order, for stream self-checks
KNOWN_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044, 8: 12346, 9: 274668}


def stream_order(n: int):
    with gzip.open(SMALL_GRAPHS / f"graphs{n}.g6.gz") as fh:
        for line in fh:
            yield decode_graph6(line.strip())


def load_order(n: int) -> list:
    return list(stream_order(n))


def load_frozen() -> dict:
    return json.loads(FROZEN_PATH.read_text())


def graph_from_mask(n: int, word: int) -> Graph:
    rows = [0] * n
    k = 0
    for v in range(n):
        for u in range(v):
            if (word >> k) & 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
            k += 1
    return Graph(n, tuple(rows))


def all_labeled_graphs(n: int):
    for word in range(1 << (n * (n - 1) // 2)):
        yield graph_from_mask(n, word)


@st.composite
def graphs(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    word = draw(st.integers(0, (1 << (n * (n - 1) // 2)) - 1))
    return graph_from_mask(n, word)


# ---------------------------------------------------------------------------
# brute-force reference oracles (subset scans and permutation counting only)


def brute_alpha(g: Graph) -> int:
    best = 0
    for mask in range(1 << g.n):
        ok = True
        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            if g.adj[v] & mask:
                ok = False
                break
        if ok:
            best = max(best, bin(mask).count("1"))
    return best


def brute_omega(g: Graph) -> int:
    best = 0
    for mask in range(1 << g.n):
        ok = True
        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            if (mask & ~(1 << v)) & ~g.adj[v]:
                ok = False
                break
        if ok:
            best = max(best, bin(mask).count("1"))
    return best


def brute_chi(g: Graph) -> int:
    if g.n == 0:
        return 0

    def colorable(k: int) -> bool:
        colors = [0] * g.n

        def rec(v: int) -> bool:
            if v == g.n:
                return True
            for c in range(k):
                if all(not (g.adj[v] >> u) & 1 or colors[u] != c for u in range(v)):
                    colors[v] = c
                    if rec(v + 1):
                        return True
            return False

        return rec(0)

    k = 1
    while not colorable(k):
        k += 1
    return k


def brute_aut(g: Graph) -> int:
    count = 0
    for perm in itertools.permutations(range(g.n)):
        if all(((g.adj[u] >> v) & 1) == ((g.adj[perm[u]] >> perm[v]) & 1)
               for u in range(g.n) for v in range(u)):
            count += 1
    return count


def brute_triangles(g: Graph) -> int:
    return sum(1 for a, b, c in itertools.combinations(range(g.n), 3)
               if (g.adj[a] >> b) & 1 and (g.adj[a] >> c) & 1 and (g.adj[b] >> c) & 1)


def brute_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n:
        return False
    for perm in itertools.permutations(range(g.n)):
        if all(((g.adj[u] >> v) & 1) == ((h.adj[perm[u]] >> perm[v]) & 1)
               for u in range(g.n) for v in range(u)):
            return True
    return False


def brute_maximal_triangle_free_subsets(g: Graph) -> set:
    def triangle_free(mask: int) -> bool:
        verts = [v for v in range(g.n) if (mask >> v) & 1]
        return all(not ((g.adj[a] >> b) & 1 and (g.adj[a] >> c) & 1
                        and (g.adj[b] >> c) & 1)
                   for a, b, c in itertools.combinations(verts, 3))

    out = set()
    for mask in range(1 << g.n):
        if not triangle_free(mask):
            continue
        if all(not triangle_free(mask | (1 << v))
               for v in range(g.n) if not (mask >> v) & 1):
            out.add(mask)
    return out
