import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from folkman.canon import canonical_form, canonical_graph, dedup_stream
from folkman.graph import (
    complete_graph,
    cycle_graph,
    decode_graph6,
    encode_graph6,
    path_graph,
    petersen_graph,
    relabel,
)
from helpers import (
    all_labeled_graphs,
    brute_aut,
    brute_isomorphic,
    graphs,
    load_order,
    KNOWN_COUNTS,
)


@given(graphs(), st.data())
def test_permutation_invariance(g, data):
    perm = data.draw(st.permutations(range(g.n)))
    assert canonical_form(g) == canonical_form(relabel(g, perm))


@given(graphs(max_n=6))
def test_canonical_graph_is_isomorphic(g):
    c = canonical_graph(g)
    assert brute_isomorphic(g, c)
    assert encode_graph6(c) == canonical_form(g).graph6


@given(graphs())
def test_canonical_form_idempotent(g):
    form = canonical_form(g)
    assert canonical_form(decode_graph6(form.graph6)) == form


def test_aut_size_exhaustive_through_order_5():
    for n in range(1, 6):
        for g in load_order(n):
            assert canonical_form(g).aut_size == brute_aut(g)


@given(graphs(max_n=6))
def test_aut_size_random(g):
    assert canonical_form(g).aut_size == brute_aut(g)


@pytest.mark.parametrize("g,count", [
    (cycle_graph(5), 10),
    (complete_graph(4), 24),
    (path_graph(4), 2),
    (petersen_graph(), 120),
])
def test_known_aut_sizes(g, count):
    assert canonical_form(g).aut_size == count


@pytest.mark.parametrize("n", [4, 5])
def test_unlabeled_counts(n):
    keys = {canonical_form(g).graph6 for g in all_labeled_graphs(n)}
    assert len(keys) == KNOWN_COUNTS[n]


def test_dedup_stream_basics():
    c5 = cycle_graph(5)
    twisted = relabel(c5, (2, 4, 1, 3, 0))
    out = dedup_stream([c5, twisted, complete_graph(4), c5])
    assert len(out) == 2
    # output is canonically encoded and sorted
    keys = [encode_graph6(g) for g in out]
    assert keys == sorted(canonical_form(g).graph6 for g in out)


@given(st.lists(graphs(max_n=7), max_size=12))
def test_dedup_jobs_agree(batch):
    serial = dedup_stream(batch, jobs=1)
    parallel = dedup_stream(batch, jobs=2)
    assert [encode_graph6(g) for g in serial] == [encode_graph6(g) for g in parallel]


@given(st.lists(graphs(max_n=7), max_size=12))
def test_dedup_idempotent(batch):
    once = dedup_stream(batch)
    twice = dedup_stream(once)
    assert once == twice


@settings(max_examples=30)
@given(st.lists(graphs(max_n=6), min_size=1, max_size=8), st.data())
def test_dedup_invariant_under_relabeling(batch, data):
    shuffled = [relabel(g, data.draw(st.permutations(range(g.n)))) for g in batch]
    a = [encode_graph6(g) for g in dedup_stream(batch)]
    b = [encode_graph6(g) for g in dedup_stream(shuffled)]
    assert a == b
