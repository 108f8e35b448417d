import dataclasses
import random

import pytest

from alphax import (
    CapacityError,
    Family,
    GraphStream,
    canonical_form,
    edge_density_profile,
    enumerate_graphs,
    f_inequality,
    is_minor_free,
    join_quotient_index,
    make_complete_bipartite,
    merge_reports,
    minor_closure_oracle,
    parse_graph6,
    quadrangle_book,
    search_extremal,
    stream_from_graph6_file,
    write_graph6,
)
from alphax.canonical import are_isomorphic
from alphax.graphs import friendship

ALL_GRAPHS = [1, 1, 2, 4, 11, 34, 156, 1044, 12346]       # per order 0..8
CONNECTED_GRAPHS = [1, 1, 1, 2, 6, 21, 112, 853, 11117]


@pytest.mark.parametrize("n", range(1, 8))
def test_counts_match_published(n):
    assert len(enumerate_graphs(n)) == ALL_GRAPHS[n]
    assert len(enumerate_graphs(n, connected_only=True)) == CONNECTED_GRAPHS[n]


def test_no_duplicate_classes():
    for n in range(1, 8):
        forms = [canonical_form(g) for g in enumerate_graphs(n)]
        assert len(forms) == len(set(forms))


def test_generation_deterministic():
    a = list(enumerate_graphs(6))
    b = list(enumerate_graphs(6))
    assert a == b


def test_generation_domain_errors():
    with pytest.raises(ValueError):
        enumerate_graphs(0)
    with pytest.raises(CapacityError) as exc:
        enumerate_graphs(10)
    assert "graph6" in str(exc.value)


def test_shards_partition_the_stream():
    full = set(enumerate_graphs(6).graphs)
    parts = [set(enumerate_graphs(6, shard=(i, 3)).graphs) for i in range(3)]
    assert set.union(*parts) == full
    assert sum(len(p) for p in parts) == len(full)
    with pytest.raises(ValueError):
        enumerate_graphs(5, shard=(3, 3))


def test_stream_from_file(tmp_path):
    graphs = enumerate_graphs(5).graphs[:10]
    path = tmp_path / "five.g6"
    path.write_text("\n".join(write_graph6(g) for g in graphs) + "\n")
    stream = stream_from_graph6_file(str(path))
    assert stream.order == 5 and stream.graphs == graphs
    mixed = tmp_path / "mixed.g6"
    mixed.write_text("D?{\nC~\n")
    with pytest.raises(ValueError):
        stream_from_graph6_file(str(mixed))


def test_family_parsing():
    assert str(Family.parse("fs(2)")) == "fs(2)"
    assert Family.parse("qt(1)").pattern() == quadrangle_book(1)
    with pytest.raises(ValueError):
        Family.parse("xy(1)")
    with pytest.raises(ValueError):
        Family("fs", 0)


def test_search_small_star():
    r = search_extremal(4, 0.5, Family("fs", 1))
    assert r.total_graphs == 11
    assert r.minor_free_count == 6  # forests on four vertices
    assert abs(r.max_rho - 2.0) < 1e-10
    assert r.matches_construction and r.unique
    assert are_isomorphic(make_complete_bipartite(1, 3), parse_graph6(r.argmax_graph6))


def test_search_small_quadrangle():
    r = search_extremal(5, 0.5, Family("qt", 1))
    assert r.matches_construction and r.unique
    assert are_isomorphic(friendship(2), parse_graph6(r.argmax_graph6))


def test_search_excludes_pattern_itself():
    r = search_extremal(3, 0.5, Family("fs", 1))
    assert r.minor_free_count == 3  # all four 3-vertex graphs except K_3
    assert r.matches_construction  # the 2-star is the construction and argmax


def test_search_rejects_closed_alpha():
    with pytest.raises(ValueError):
        search_extremal(4, 0.0, Family("fs", 1))
    with pytest.raises(ValueError):
        search_extremal(4, 1.0, Family("fs", 1))


def test_search_stable_under_stream_permutation():
    fam = Family("fs", 1)
    base = enumerate_graphs(6)
    ref = search_extremal(6, 0.3, fam, base)
    rng = random.Random(5)
    graphs = list(base.graphs)
    for _ in range(3):
        rng.shuffle(graphs)
        stream = GraphStream(order=6, source="generated", graphs=tuple(graphs))
        got = search_extremal(6, 0.3, fam, stream)
        assert dataclasses.replace(got, wall_time=0.0) == dataclasses.replace(
            ref, wall_time=0.0)


def test_search_matches_closed_form_when_construction_wins():
    for n in range(4, 7):
        r = search_extremal(n, 0.5, Family("fs", 1))
        if r.matches_construction:
            assert abs(r.max_rho - join_quotient_index(n, 1, 0.5)) <= 1e-9
            assert f_inequality(r.max_rho, n, 1, 0.5)


def test_merge_matches_unsharded():
    fam = Family("qt", 1)
    direct = search_extremal(6, 0.5, fam)
    parts = [search_extremal(6, 0.5, fam, enumerate_graphs(6, shard=(i, 3)))
             for i in range(3)]
    merged = merge_reports(parts)
    assert dataclasses.replace(merged, wall_time=0.0) == dataclasses.replace(
        direct, wall_time=0.0)
    with pytest.raises(ValueError):
        merge_reports([])
    with pytest.raises(ValueError):
        merge_reports([direct, search_extremal(5, 0.5, fam)])


def test_minor_free_cache_consistency():
    fam = Family("fs", 1)
    for g in enumerate_graphs(5):
        expected = not minor_closure_oracle(g, friendship(1))
        assert is_minor_free(g, fam) == expected
        assert is_minor_free(g, fam) == expected  # second call hits the cache


def test_edge_density_profiles():
    for n in range(2, 7):
        p = edge_density_profile(n, Family("fs", 1))
        assert p.max_edges == n - 1  # forests
        assert p.max_edges_per_vertex == (n - 1) / n
    p = edge_density_profile(5, Family("qt", 1))
    # independent oracle: densest 5-vertex graph with no 4-cycle minor
    best = max(
        (g.edge_count() for g in enumerate_graphs(5)
         if not minor_closure_oracle(g, quadrangle_book(1))),
    )
    assert p.max_edges == best == 6
