import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

import folkman.extender as extender
from folkman.canon import canonical_form, dedup_stream
from folkman.extender import (
    SearchParams,
    admissible_selections,
    build_candidate,
    degree_target_pointwise,
    degree_target_subfamilies,
    maximal_k3_free_family,
    plus_k3_subgraphs,
    run_algorithm1,
    sperner_branch,
)
from folkman.graph import (
    Graph,
    complete_graph,
    complete_multipartite,
    cycle_graph,
    empty_graph,
    has_k4,
    is_maximal_k4_free,
    is_plus_k3,
    is_sperner,
    remove_vertices,
)
from folkman.invariants import clique_number, independence_number
from helpers import (
    brute_maximal_triangle_free_subsets,
    graph_from_mask,
    graphs,
    stream_order,
)

octahedron = complete_multipartite(2, 2, 2)

# with a large enough join the chromatic and arrowing filters pass anything
# with an edge, so the algorithm output is exactly the maximal non-Sperner
# family and can be checked against plain enumeration
TRIVIALIZING_P = 4


def k4_free_hosts(order, s):
    return [h for h in stream_order(order)
            if clique_number(h) < 4 and is_plus_k3(h)
            and independence_number(h) <= s]


def brute_lmax_non_sperner(n, s):
    return sorted(canonical_form(g).graph6 for g in stream_order(n)
                  if not has_k4(g) and not is_sperner(g)
                  and is_maximal_k4_free(g) and independence_number(g) == s)


def brute_lmax_sperner(n, s):
    return sorted(canonical_form(g).graph6 for g in stream_order(n)
                  if not has_k4(g) and is_sperner(g)
                  and is_maximal_k4_free(g) and independence_number(g) == s)


@given(graphs(max_n=8))
def test_family_matches_brute(g):
    fam = maximal_k3_free_family(g)
    assert set(fam.members) == brute_maximal_triangle_free_subsets(g)


def test_family_scan_cap():
    with pytest.raises(ValueError):
        maximal_k3_free_family(empty_graph(21))


def test_search_params_validation():
    with pytest.raises(ValueError):
        SearchParams(n=5, p=0, s=0)
    with pytest.raises(ValueError):
        SearchParams(n=5, p=0, s=5)
    with pytest.raises(ValueError):
        SearchParams(n=5, p=-1, s=2)


@given(graphs(max_n=7), st.data())
def test_degree_target_forms_agree(g, data):
    count = data.draw(st.integers(1, 4))
    masks = [data.draw(st.integers(0, (1 << g.n) - 1)) for _ in range(count)]
    assert degree_target_pointwise(g, masks) == \
        degree_target_subfamilies(g, masks, count)


def test_k2_host_produces_k3():
    out, counters = run_algorithm1([complete_graph(2)],
                                   SearchParams(3, TRIVIALIZING_P, 1))
    assert out == [complete_graph(3)]
    assert counters == {"generated": 1, "after_dedup": 1,
                        "after_chi": 1, "after_arrow": 1}


def test_octahedron_emerges_in_sperner_branch():
    # antipodal vertices of the octahedron share a neighborhood, so it is
    # Sperner and must come from vertex duplication, not the extension path
    max5 = [g for g in stream_order(5)
            if not has_k4(g) and is_maximal_k4_free(g)]
    out = sperner_branch(max5, SearchParams(6, TRIVIALIZING_P, 2))
    assert canonical_form(octahedron).graph6 in {
        canonical_form(g).graph6 for g in out}


@pytest.mark.parametrize("n,s", [(5, 1), (5, 2), (6, 2), (6, 3),
                                 (7, 2), (7, 3), (8, 2), (8, 3)])
def test_extension_matches_brute_enumeration(n, s):
    hosts = k4_free_hosts(n - s, s)
    out, counters = run_algorithm1(hosts, SearchParams(n, TRIVIALIZING_P, s))
    assert sorted(canonical_form(g).graph6 for g in out) == \
        brute_lmax_non_sperner(n, s)
    chain = [counters[k] for k in
             ("generated", "after_dedup", "after_chi", "after_arrow")]
    assert chain == sorted(chain, reverse=True)


def test_candidate_invariants():
    params = SearchParams(7, TRIVIALIZING_P, 2)
    seen = 0
    for h in k4_free_hosts(5, 2):
        fam = maximal_k3_free_family(h)
        for sel in admissible_selections(fam, params):
            g = build_candidate(sel)
            if g is None:
                continue
            seen += 1
            assert g.n == 7
            assert not has_k4(g)
            assert not is_sperner(g)
            assert is_maximal_k4_free(g)
            assert independence_number(g) == 2
            # removing the added vertices recovers the host
            assert remove_vertices(g, 0b1100000) == h
    assert seen > 0


def test_selection_members_distinct_from_neighborhoods():
    for h in k4_free_hosts(5, 2):
        fam = maximal_k3_free_family(h)
        for sel in admissible_selections(fam, SearchParams(7, TRIVIALIZING_P, 2)):
            for m in sel.masks():
                assert m not in set(h.adj)


def test_host_with_large_alpha_yields_nothing():
    # the empty-subfamily independence bound: alpha(H) <= s
    fam = maximal_k3_free_family(cycle_graph(5))
    assert list(admissible_selections(fam, SearchParams(6, TRIVIALIZING_P, 1))) == []


def test_degree_prune_selects_min_degree_subset(monkeypatch):
    # at a toy degree target the pruned run must equal the plain run
    # restricted to outputs whose minimum degree meets the target
    monkeypatch.setattr(extender, "MIN_DEGREE_TARGET", 4)
    for n, s in ((6, 2), (7, 2), (7, 3)):
        hosts = k4_free_hosts(n - s, s)
        plain, _ = run_algorithm1(hosts, SearchParams(n, TRIVIALIZING_P, s))
        pruned, _ = run_algorithm1(
            hosts, SearchParams(n, TRIVIALIZING_P, s, degree_prune=True))
        want = [g for g in plain if min(g.degree(v) for v in range(g.n)) >= 4]
        assert pruned == want


def test_degree_prune_default_target_is_8():
    hosts = k4_free_hosts(5, 2)
    pruned, _ = run_algorithm1(
        hosts, SearchParams(7, TRIVIALIZING_P, 2, degree_prune=True))
    assert pruned == []  # no 7-vertex K4-free graph has minimum degree 8


def test_arrow_filter_off_keeps_chi_set():
    hosts = k4_free_hosts(4, 2)
    on, c_on = run_algorithm1(hosts, SearchParams(6, TRIVIALIZING_P, 2))
    off, c_off = run_algorithm1(
        hosts, SearchParams(6, TRIVIALIZING_P, 2, arrow_filter=False))
    assert c_off["after_chi"] == c_on["after_chi"]
    assert len(off) == c_off["after_chi"]


def test_chi_sink_captures_pre_arrow_set():
    hosts = k4_free_hosts(4, 2)
    sink = []
    out, counters = run_algorithm1(hosts, SearchParams(6, 0, 2), chi_sink=sink)
    assert len(sink) == counters["after_chi"]
    assert set(out) <= set(sink)


def test_run_algorithm1_jobs_agree():
    hosts = k4_free_hosts(5, 2)
    a = run_algorithm1(hosts, SearchParams(7, TRIVIALIZING_P, 2), jobs=1)
    b = run_algorithm1(hosts, SearchParams(7, TRIVIALIZING_P, 2), jobs=2)
    assert a == b


def test_host_order_checked():
    with pytest.raises(ValueError):
        run_algorithm1([complete_graph(3)], SearchParams(7, TRIVIALIZING_P, 2))


def test_host_with_k4_rejected():
    with pytest.raises(ValueError):
        run_algorithm1([complete_graph(5)], SearchParams(7, TRIVIALIZING_P, 2))


@pytest.mark.parametrize("s", [2, 3, 4])
def test_sperner_branch_matches_brute(s):
    max6 = [g for g in stream_order(6)
            if not has_k4(g) and is_maximal_k4_free(g)]
    got = sorted(canonical_form(g).graph6
                 for g in sperner_branch(max6, SearchParams(7, TRIVIALIZING_P, s)))
    assert got == brute_lmax_sperner(7, s)


def test_sperner_branch_input_validation():
    params = SearchParams(7, TRIVIALIZING_P, 2)
    with pytest.raises(ValueError):
        sperner_branch([complete_graph(3)], params)
    with pytest.raises(ValueError):
        sperner_branch([complete_graph(6)], params)


def brute_octahedron_subgraphs(plus_k3_only):
    # all spanning subgraphs of the octahedron that keep alpha <= 2 and an
    # edge (the trivializing join arrows iff an edge exists)
    edges = list(octahedron.edges())
    keys = set()
    for mask in range(1 << len(edges)):
        rows = [0] * 6
        for i, (u, v) in enumerate(edges):
            if (mask >> i) & 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        g = Graph(6, tuple(rows))
        if g.edge_count() == 0 or independence_number(g) > 2:
            continue
        if plus_k3_only and not is_plus_k3(g):
            continue
        keys.add(canonical_form(g).graph6)
    return sorted(keys)


@pytest.mark.parametrize("plus_k3_only", [True, False])
def test_plus_k3_closure_matches_brute(plus_k3_only):
    out = plus_k3_subgraphs([octahedron], target_alpha_max=2,
                            p=TRIVIALIZING_P, plus_k3_only=plus_k3_only)
    assert sorted(canonical_form(g).graph6 for g in out) == \
        brute_octahedron_subgraphs(plus_k3_only)


def test_plus_k3_closure_idempotent():
    first = plus_k3_subgraphs([octahedron], target_alpha_max=2, p=TRIVIALIZING_P)
    again = plus_k3_subgraphs(first, target_alpha_max=2, p=TRIVIALIZING_P)
    assert [canonical_form(g).graph6 for g in first] == \
        [canonical_form(g).graph6 for g in again]


def test_plus_k3_closure_dedups_isomorphic_roots():
    twisted = remove_vertices(complete_multipartite(2, 2, 2, 1), 0b1000000)
    one = plus_k3_subgraphs([octahedron], target_alpha_max=2, p=TRIVIALIZING_P)
    two = plus_k3_subgraphs([octahedron, twisted], target_alpha_max=2,
                            p=TRIVIALIZING_P)
    assert [g for g in one] == [g for g in two]
