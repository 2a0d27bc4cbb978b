import random

import pytest

from cylcomp.errors import BudgetExceeded
from cylcomp.wl import (colored_graph_from_edges, export_colored_graph,
                        import_colored_graph, relabel, wl_distinguish,
                        wl_refine)


def path_graph(n):
    return colored_graph_from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    return colored_graph_from_edges(
        n, [(i, (i + 1) % n) for i in range(n)])


def test_edgeless_stabilizes_immediately():
    coloring = wl_refine(colored_graph_from_edges(5, []), 1)
    assert coloring.iteration_number == 0
    assert coloring.class_counts[-1] == 1


def test_path_vs_triangle_distinguished_at_zero():
    result = wl_distinguish(path_graph(3), cycle_graph(3), 1)
    assert result.distinguished_round == 0


def test_refinement_monotone_and_stable():
    graph = path_graph(9)
    coloring = wl_refine(graph, 1)
    counts = coloring.class_counts
    assert all(a <= b for a, b in zip(counts, counts[1:]))
    assert coloring.stabilized


def test_iteration_number_bounded():
    rng = random.Random(0)
    for _ in range(10):
        n = rng.randint(3, 8)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < 0.4]
        graph = colored_graph_from_edges(n, edges)
        for k in (1, 2):
            coloring = wl_refine(graph, k)
            assert coloring.iteration_number <= n ** k - 1


def test_isomorphic_relabelings_never_distinguished():
    rng = random.Random(1)
    cases = [(1, 40), (2, 18), (3, 9)]
    for k, n in cases:
        for _ in range(6):
            edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                     if rng.random() < 0.3]
            graph = colored_graph_from_edges(n, edges)
            perm = list(range(n))
            rng.shuffle(perm)
            twin = relabel(graph, perm)
            assert wl_distinguish(graph, twin, k).distinguished_round is None


def test_distinguishing_round_monotone_in_dimension():
    # C6 vs two triangles: classic pair, distinguished by 2-WL not 1-WL
    c6 = cycle_graph(6)
    two_triangles = colored_graph_from_edges(
        6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    r1 = wl_distinguish(c6, two_triangles, 1)
    r2 = wl_distinguish(c6, two_triangles, 2)
    r3 = wl_distinguish(c6, two_triangles, 3)
    assert r1.distinguished_round is None
    assert r2.distinguished
    assert r3.distinguished
    assert r3.distinguished_round <= r2.distinguished_round


def test_budget_enforced():
    with pytest.raises(BudgetExceeded):
        wl_refine(path_graph(10), 3, budget=10)


def test_colored_graph_file_round_trip():
    graph = colored_graph_from_edges(4, [(0, 1), (2, 3)], [5, 5, 7, 7])
    text = export_colored_graph(graph)
    assert text.splitlines()[0] == "cgraph 4 2"
    back = import_colored_graph(text)
    assert back.colors == graph.colors
    assert back.edges() == graph.edges()


def test_determinism_of_color_streams():
    graph = cycle_graph(8)
    a = wl_refine(graph, 2)
    b = wl_refine(graph, 2)
    assert a.rounds == b.rounds
