"""The maximal-K4-free extension search.

Given a stream of host graphs H on n-s vertices, extend each by s new
independent vertices whose neighborhoods are maximal triangle-free subsets
of V(H) chosen under the admissibility conditions, screen the results for
maximality and the Sperner property, then deduplicate and filter by
chromatic number and edge arrowing.  A separate branch generates the
Sperner members by vertex duplication, and an edge-removal closure recovers
the common-neighborhood-closed subgraphs used as the next stage's hosts.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass

from .arrowing import arrows_edge_33_joined
from .canon import canonical_form
from .graph import (
    Graph,
    bits,
    decode_graph6,
    duplicate_vertex,
    edge_in,
    encode_graph6,
    has_k4,
    is_maximal_k4_free,
    is_plus_k3,
    is_sperner,
    popcount,
    remove_vertices,
)
from .invariants import chromatic_at_least, independence_number

FAMILY_SCAN_CAP = 20
MIN_DEGREE_TARGET = 8  # minimum degree every finished graph must reach in pruned runs


@dataclass(frozen=True)
class SetFamily:
    """All maximal triangle-free vertex subsets of the host, as masks."""

    host: Graph
    members: tuple


@dataclass(frozen=True)
class Selection:
    """An admissible choice of s family members (indices, ascending)."""

    family: SetFamily
    indices: tuple

    def masks(self):
        return tuple(self.family.members[i] for i in self.indices)


@dataclass(frozen=True)
class SearchParams:
    n: int
    p: int
    s: int
    degree_prune: bool = False
    arrow_filter: bool = True

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("s must be at least 1")
        if self.n - self.s < 1:
            raise ValueError("host order n - s must be at least 1")
        if self.p < 0:
            raise ValueError("p must be nonnegative")


def maximal_k3_free_family(h: Graph) -> SetFamily:
    """Exhaustive scan of all 2^n subsets; n is capped, every pipeline host
    has at most 15 vertices."""
    if h.n > FAMILY_SCAN_CAP:
        raise ValueError(f"host order {h.n} above scan cap {FAMILY_SCAN_CAP}")
    n, adj = h.n, h.adj
    size = 1 << n
    tf = bytearray(size)
    tf[0] = 1
    for m in range(1, size):
        low = m & -m
        v = low.bit_length() - 1
        rest = m ^ low
        if not tf[rest]:
            continue
        # adding v closes a triangle iff two of its neighbors in rest are
        # adjacent to each other
        nb = adj[v] & rest
        ok = 1
        for u in bits(nb):
            if adj[u] & nb:
                ok = 0
                break
        tf[m] = ok
    members = []
    for m in range(size):
        if not tf[m]:
            continue
        maximal = True
        for v in range(n):
            if not (m >> v) & 1 and tf[m | (1 << v)]:
                maximal = False
                break
        if maximal:
            members.append(m)
    return SetFamily(host=h, members=tuple(members))


def degree_target_pointwise(h: Graph, masks) -> bool:
    """Every host vertex ends with degree >= MIN_DEGREE_TARGET in the
    extended graph: its host degree plus the number of chosen neighborhoods
    containing it."""
    for v in range(h.n):
        c = sum(1 for m in masks if (m >> v) & 1)
        if popcount(h.adj[v]) + c < MIN_DEGREE_TARGET:
            return False
    return True


def degree_target_subfamilies(h: Graph, masks, s: int) -> bool:
    """Equivalent subfamily form: for every subfamily of the chosen
    neighborhoods and every host vertex outside its union, the host degree
    is at least MIN_DEGREE_TARGET - s + |subfamily|."""
    t = len(masks)
    for bm in range(1 << t):
        union = 0
        size = 0
        for i in range(t):
            if (bm >> i) & 1:
                union |= masks[i]
                size += 1
        for v in range(h.n):
            if not (union >> v) & 1:
                if popcount(h.adj[v]) < MIN_DEGREE_TARGET - s + size:
                    return False
    return True


def admissible_selections(fam: SetFamily, params: SearchParams):
    """Stream every s-subset of the family passing the admissibility
    conditions: members distinct from all host neighborhoods, pairwise
    intersections containing an edge, and the independence bound on every
    subfamily (with the degree conditions when pruning is on)."""
    h = fam.host
    s = params.s
    if independence_number(h) > s:
        return
    if params.degree_prune and min(popcount(r) for r in h.adj) < MIN_DEGREE_TARGET - s:
        # a host vertex of degree < target - s stays short even if every
        # added vertex picks it
        return
    nbhds = set(h.adj)
    allowed = [i for i, m in enumerate(fam.members) if m not in nbhds]
    if params.degree_prune:
        allowed = [i for i in allowed if popcount(fam.members[i]) >= MIN_DEGREE_TARGET]
    t = len(allowed)
    if t < s:
        return
    masks = [fam.members[i] for i in allowed]
    compat = [0] * t
    for i in range(t):
        for j in range(i + 1, t):
            if edge_in(h, masks[i] & masks[j]):
                compat[i] |= 1 << j
                compat[j] |= 1 << i
    alpha_memo = {}
    full = h.vertex_mask

    def alpha_bound_ok(union, removed_count):
        if union == full:
            alpha = 0
        else:
            alpha = alpha_memo.get(union)
            if alpha is None:
                alpha = independence_number(remove_vertices(h, union))
                alpha_memo[union] = alpha
        return alpha <= s - removed_count

    def extend(chosen, cand, subset_unions):
        if len(chosen) == s:
            sel_masks = [masks[i] for i in chosen]
            if params.degree_prune and not degree_target_pointwise(h, sel_masks):
                return
            yield Selection(fam, tuple(allowed[i] for i in chosen))
            return
        need = s - len(chosen)
        while cand:
            low = cand & -cand
            i = low.bit_length() - 1
            cand ^= low
            if popcount(cand) + 1 < need:
                return
            # the independence bound must already hold for every subfamily
            # containing the new member, else no completion can fix it
            new_unions = [(u | masks[i], k + 1) for u, k in subset_unions]
            if all(alpha_bound_ok(u, k) for u, k in new_unions):
                yield from extend(
                    chosen + [i], cand & compat[i], subset_unions + new_unions
                )

    yield from extend([], (1 << t) - 1, [(0, 0)])


def build_candidate(sel: Selection):
    """Materialize the extension; reject unless non-Sperner and maximal
    K4-free (rejection is the normal outcome, not an error)."""
    h = sel.family.host
    masks = sel.masks()
    n = h.n + len(masks)
    rows = list(h.adj)
    for j, m in enumerate(masks):
        new_bit = 1 << (h.n + j)
        for v in bits(m):
            rows[v] |= new_bit
        rows.append(m)
    g = Graph(n, tuple(rows))
    if is_sperner(g):
        return None
    if not is_maximal_k4_free(g):
        return None
    return g


class _HostWorker:
    def __init__(self, params: SearchParams):
        self.params = params

    def __call__(self, h: Graph):
        _check_host(h, self.params)
        out = []
        fam = maximal_k3_free_family(h)
        for sel in admissible_selections(fam, self.params):
            g = build_candidate(sel)
            if g is not None:
                out.append(encode_graph6(g))
        return out


def _check_host(h: Graph, params: SearchParams):
    if h.n != params.n - params.s:
        raise ValueError(
            f"host has {h.n} vertices, stage needs {params.n - params.s}"
        )
    if has_k4(h):
        raise ValueError("host contains K4")


def run_algorithm1(a, params: SearchParams, jobs: int = 1, chi_sink=None):
    """Extend every host, then dedup, then the chromatic filter, then the
    arrowing filter, in that order; returns the surviving graphs in
    canonical order plus the per-step counters.

    When `chi_sink` is a list, the graphs that survive the chromatic filter
    (before the arrowing filter runs) are appended to it."""
    counters = {
        "generated": 0,
        "after_dedup": 0,
        "after_chi": 0,
        "after_arrow": 0,
    }
    worker = _HostWorker(params)
    raw = []
    if jobs > 1:
        with multiprocessing.Pool(jobs) as pool:
            for chunk in pool.imap_unordered(worker, a, chunksize=16):
                raw.extend(chunk)
    else:
        for h in a:
            raw.extend(worker(h))
    counters["generated"] = len(raw)
    keys = sorted({canonical_form(decode_graph6(line)).graph6 for line in raw})
    counters["after_dedup"] = len(keys)
    survivors = [decode_graph6(k) for k in keys]
    threshold = 6 - params.p
    survivors = [g for g in survivors if chromatic_at_least(g, threshold)]
    counters["after_chi"] = len(survivors)
    if chi_sink is not None:
        chi_sink.extend(survivors)
    if params.arrow_filter:
        survivors = [g for g in survivors if arrows_edge_33_joined(params.p, g)]
    counters["after_arrow"] = len(survivors)
    return survivors, counters


def sperner_branch(lmax_prev, params: SearchParams):
    """The Sperner members on n vertices: duplicate every vertex of every
    maximal K4-free graph on n-1 vertices, then apply the same filters."""
    keys = set()
    for h in lmax_prev:
        if h.n != params.n - 1:
            raise ValueError(f"input has {h.n} vertices, expected {params.n - 1}")
        if has_k4(h):
            raise ValueError("input contains K4")
        for v in range(h.n):
            g = duplicate_vertex(h, v)
            if independence_number(g) != params.s:
                continue
            if not is_maximal_k4_free(g):
                continue
            if not chromatic_at_least(g, 6 - params.p):
                continue
            if params.arrow_filter and not arrows_edge_33_joined(params.p, g):
                continue
            keys.add(canonical_form(g).graph6)
    return [decode_graph6(k) for k in sorted(keys)]


def plus_k3_subgraphs(lmax, target_alpha_max: int, p: int,
                      plus_k3_only: bool = True):
    """Edge-removal closure: all subgraphs of the inputs (same vertex set)
    that still arrow under the K_p join and keep independence number within
    the target, reported when they have the new-triangle property (or
    unconditionally when `plus_k3_only` is off).

    Arrowing and the independence bound are monotone along edge removal, so
    failing either prunes the whole branch; the new-triangle property is
    not, so it only filters output.
    """
    seen = set()
    result = {}
    stack = []
    for g in lmax:
        key = canonical_form(g).graph6
        if key in seen:
            continue
        seen.add(key)
        if independence_number(g) > target_alpha_max:
            continue
        if not arrows_edge_33_joined(p, g):
            continue
        stack.append((key, decode_graph6(key)))
    while stack:
        key, g = stack.pop()
        if not plus_k3_only or is_plus_k3(g):
            result[key] = g
        for u, v in g.edges():
            g2 = _remove_edge(g, u, v)
            key2 = canonical_form(g2).graph6
            if key2 in seen:
                continue
            seen.add(key2)
            if independence_number(g2) > target_alpha_max:
                continue
            if not arrows_edge_33_joined(p, g2):
                continue
            stack.append((key2, decode_graph6(key2)))
    return [result[k] for k in sorted(result)]


def _remove_edge(g: Graph, u: int, v: int) -> Graph:
    rows = list(g.adj)
    rows[u] &= ~(1 << v)
    rows[v] &= ~(1 << u)
    return Graph(g.n, tuple(rows))
