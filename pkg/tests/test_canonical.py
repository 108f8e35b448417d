import itertools
import random

from alphax import (
    Graph,
    are_isomorphic,
    canonical_form,
    canonical_graph,
    make_complete,
    make_complete_bipartite,
    make_path,
)
from conftest import random_graph

PUBLISHED_GRAPH_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156}


def all_labeled_graphs(n):
    pairs = list(itertools.combinations(range(n), 2))
    for bitsel in range(1 << len(pairs)):
        yield Graph(n, [pairs[i] for i in range(len(pairs)) if bitsel >> i & 1])


def brute_force_key(g: Graph) -> tuple:
    best = None
    for perm in itertools.permutations(range(g.n)):
        h = g.relabel(list(perm))
        key = h.rows
        if best is None or key < best:
            best = key
    return best


def test_p4_labelings_single_form():
    forms = {
        canonical_form(make_path(4).relabel(list(p)))
        for p in itertools.permutations(range(4))
    }
    assert len(forms) == 1


def test_distinct_for_nonisomorphic():
    assert canonical_form(make_path(4)) != canonical_form(make_complete_bipartite(1, 3))
    assert canonical_form(make_complete(3)) != canonical_form(make_path(3))


def test_exact_classification_up_to_5_against_brute_force():
    # group all labeled graphs by the permutation-brute-force key: the
    # canonical form must be constant within each class and distinct across
    for n in range(1, 6):
        by_bf = {}
        for g in all_labeled_graphs(n):
            by_bf.setdefault(brute_force_key(g), set()).add(canonical_form(g))
        assert len(by_bf) == PUBLISHED_GRAPH_COUNTS[n]
        forms_per_class = [forms for forms in by_bf.values()]
        assert all(len(forms) == 1 for forms in forms_per_class)
        distinct = set().union(*forms_per_class)
        assert len(distinct) == len(by_bf)


def test_exact_class_count_n6():
    forms = {canonical_form(g) for g in all_labeled_graphs(6)}
    assert len(forms) == PUBLISHED_GRAPH_COUNTS[6]


def test_invariance_random_n7(rng):
    for _ in range(60):
        g = random_graph(7, rng.random(), rng)
        base = canonical_form(g)
        for _ in range(8):
            perm = list(range(7))
            rng.shuffle(perm)
            assert canonical_form(g.relabel(perm)) == base


def test_canonical_graph_is_stable_relabeling(rng):
    for _ in range(40):
        g = random_graph(6, 0.5, rng)
        perm = list(range(6))
        rng.shuffle(perm)
        h = g.relabel(perm)
        assert are_isomorphic(g, h)
        assert canonical_graph(g) == canonical_graph(h)
        assert are_isomorphic(canonical_graph(g), g)


def test_empty_and_tiny():
    assert canonical_form(Graph(0)) == canonical_form(Graph(0))
    assert canonical_form(Graph(1)) != canonical_form(Graph(0))
    assert canonical_form(Graph(2)) != canonical_form(make_complete(2))
