"""Canonical labeling and isomorph rejection.

Individualization-refinement search: refine an ordered partition of the
vertices to equitability, branch on the first smallest non-singleton cell,
and take as canonical representative the lexicographically smallest graph6
string over all leaves.  The leaf count at the optimum equals |Aut(G)|:
minimal leaves correspond one-to-one to automorphisms.

Two prunings keep the tree small and preserve both the minimum and the
count: subtrees whose invariant trace already exceeds the best known prefix
cannot contain the minimum, and sibling branches lying in one orbit of the
automorphisms discovered so far explore identical subtrees, so the first
result is reused.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, bits, decode_graph6, popcount


@dataclass(frozen=True)
class CanonicalForm:
    graph6: bytes
    aut_size: int


def _refine(adj, cells):
    """Split cells by neighbor counts against every cell until equitable.

    Sub-cells are ordered by their count signature, which is label-invariant,
    so the refined partition order is canonical.
    """
    cells = list(cells)
    while True:
        snapshot = tuple(cells)
        new_cells = []
        split = False
        for cell in cells:
            if cell & (cell - 1) == 0:
                new_cells.append(cell)
                continue
            groups = {}
            for v in bits(cell):
                sig = tuple(popcount(adj[v] & m) for m in snapshot)
                if sig in groups:
                    groups[sig] |= 1 << v
                else:
                    groups[sig] = 1 << v
            if len(groups) == 1:
                new_cells.append(cell)
            else:
                split = True
                for sig in sorted(groups):
                    new_cells.append(groups[sig])
        if not split:
            return new_cells
        cells = new_cells


def _leaf_label(cells):
    return [c.bit_length() - 1 for c in cells]


def _leaf_int(adj, lab):
    """Pack the relabeled upper triangle in graph6 bit order; smaller int
    means lexicographically smaller graph6 string."""
    x = 0
    for j in range(1, len(lab)):
        row = adj[lab[j]]
        for i in range(j):
            x = (x << 1) | ((row >> lab[i]) & 1)
    return x


def _int_to_graph6(n: int, x: int) -> bytes:
    npairs = n * (n - 1) // 2
    nbytes = (npairs + 5) // 6
    x <<= (-npairs) % 6
    out = [n + 63]
    for k in range(nbytes - 1, -1, -1):
        out.append(((x >> (6 * k)) & 63) + 63)
    return bytes(out)


class _Search:
    def __init__(self, g: Graph):
        self.adj = g.adj
        self.n = g.n
        self.gens = []  # discovered automorphisms, perm[v] = image of v
        self.best_trace = None
        self.best_int = None
        self.best_lab = None

    def run(self):
        result = self._node(tuple(_refine(self.adj, [(1 << self.n) - 1])), (), ())
        trace, leaf, count, lab = result
        return _int_to_graph6(self.n, leaf), count

    def _node(self, cells, trace, base):
        sizes = tuple(sorted(popcount(c) for c in cells))
        trace = trace + (sizes,)
        if self.best_trace is not None:
            if trace > self.best_trace[: len(trace)]:
                return None
        if sizes[-1] == 1:
            return self._leaf(cells, trace)
        target_pos = min(
            (i for i, c in enumerate(cells) if c & (c - 1)),
            key=lambda i: popcount(cells[i]),
        )
        target = cells[target_pos]
        merged = None
        have = None
        processed = []
        for v in bits(target):
            reused = self._orbit_match(v, processed, base)
            if reused is not None:
                result = reused[1]
            else:
                child = list(cells)
                child[target_pos : target_pos + 1] = [1 << v, target ^ (1 << v)]
                result = self._node(
                    tuple(_refine(self.adj, child)), trace, base + (v,)
                )
                processed.append((v, result))
            if result is None:
                continue
            if merged is None or result[:2] < merged[:2]:
                merged = result
            elif result[:2] == merged[:2]:
                merged = (merged[0], merged[1], merged[2] + result[2], merged[3])
        return merged

    def _leaf(self, cells, trace):
        lab = _leaf_label(cells)
        leaf = _leaf_int(self.adj, lab)
        if self.best_trace is None or (trace, leaf) < (self.best_trace, self.best_int):
            self.best_trace, self.best_int, self.best_lab = trace, leaf, lab
            return (trace, leaf, 1, lab)
        if (trace, leaf) == (self.best_trace, self.best_int):
            gamma = [0] * self.n
            for i in range(self.n):
                gamma[lab[i]] = self.best_lab[i]
            self.gens.append(tuple(gamma))
            return (trace, leaf, 1, lab)
        return None

    def _orbit_match(self, v, processed, base):
        """Return a processed sibling whose orbit (under automorphisms fixing
        the current base pointwise) contains v, if any."""
        if not processed or not self.gens:
            return None
        usable = [p for p in self.gens if all(p[b] == b for b in base)]
        if not usable:
            return None
        orbit = 1 << v
        frontier = [v]
        seen_targets = {u for u, _ in processed}
        while frontier:
            u = frontier.pop()
            for p in usable:
                w = p[u]
                if not (orbit >> w) & 1:
                    orbit |= 1 << w
                    if w in seen_targets:
                        for entry in processed:
                            if entry[0] == w:
                                return entry
                    frontier.append(w)
        return None


def canonical_form(g: Graph) -> CanonicalForm:
    graph6, count = _Search(g).run()
    return CanonicalForm(graph6=graph6, aut_size=count)


def canonical_graph(g: Graph) -> Graph:
    """The canonically relabeled copy of g."""
    return decode_graph6(canonical_form(g).graph6)


def dedup_stream(graphs, jobs: int = 1):
    """One representative per isomorphism class, sorted by canonical bytes.

    The representative is the canonical relabeling itself, so the output is
    independent of input order and of how the input was sharded.
    """
    keys = set()
    if jobs > 1:
        import multiprocessing

        with multiprocessing.Pool(jobs) as pool:
            for key in pool.imap_unordered(_canon_key, list(graphs), chunksize=256):
                keys.add(key)
    else:
        for g in graphs:
            keys.add(canonical_form(g).graph6)
    return [decode_graph6(k) for k in sorted(keys)]


def _canon_key(g: Graph) -> bytes:
    return canonical_form(g).graph6
