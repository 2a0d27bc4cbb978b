import pytest

from cylcomp.compression import (class_counts, compression_saturated,
                                 cylinder_vertex_key, expected_class_counts,
                                 identity_compression, induce_compression,
                                 observation_class_counts)
from cylcomp.cylinder import CylinderGraph, build_cylinder, edge, export_graph
from cylcomp.errors import IncompatiblePartition
from cylcomp.params import make_explicit_parameters
from conftest import TOY_PARAMS, build_toy


def test_cylinder_shape_k3():
    params = make_explicit_parameters(3, 1, (48, 120, 80), 240, 5)
    graph = build_cylinder(params)
    assert graph.num_vertices == 3 * 250
    for v in graph.vertices:
        expected = 3 if v[1] in (1, graph.width) else 4
        assert graph.degree(v) == expected
    # horizontal plus vertical edges
    assert graph.num_edges == 3 * (graph.width - 1) + 3 * graph.width


def test_cylinder_is_grid_for_two_rows():
    graph = CylinderGraph(2, 10)
    for a in range(1, 11):
        vertical = [e for e in graph.edges
                    if graph.is_vertical(e) and e[0][1] == a]
        assert len(vertical) == 1
    corner = graph.degree((1, 1))
    assert corner == 2
    assert graph.degree((1, 5)) == 3


def test_adjacency_order_left_right_up_down():
    graph = CylinderGraph(3, 6)
    assert graph.adjacency[(2, 3)] == [(2, 2), (2, 4), (1, 3), (3, 3)]
    assert graph.adjacency[(1, 1)] == [(1, 2), (3, 1), (2, 1)]


def test_identity_compression_counts():
    graph = CylinderGraph(3, 6)
    comp = identity_compression(graph)
    assert class_counts(comp) == (graph.num_vertices, graph.num_edges)


@pytest.mark.parametrize("spec", TOY_PARAMS)
def test_induced_equals_closed_form(spec):
    cc = build_toy(*spec)
    partition = {v: cylinder_vertex_key(cc.params, v)
                 for v in cc.graph.vertices}
    induced = induce_compression(cc.graph, partition)
    assert induced.vertex_class == cc.compression.vertex_class
    assert induced.edge_class == cc.compression.edge_class


@pytest.mark.parametrize("spec", TOY_PARAMS)
def test_class_counts_match_formula(spec):
    cc = build_toy(*spec)
    assert class_counts(cc.compression) == expected_class_counts(cc.params)
    if compression_saturated(cc.params):
        assert class_counts(cc.compression) == \
            observation_class_counts(cc.params)
    # the vertex-count formula is exact regardless of saturation
    assert class_counts(cc.compression)[0] == \
        observation_class_counts(cc.params)[0]


def test_one_period_middle_leaves_crossings_split():
    # with L equal to the modulus there is no chain to merge the two
    # part-crossing edges, so they stay in separate classes
    cc = build_toy(2, 1, (3, 3), 3, 1)
    assert not compression_saturated(cc.params)
    left = edge((1, 1), (1, 2))
    right = edge((1, 4), (1, 5))
    assert cc.compression.edge_class[left] != cc.compression.edge_class[right]


def test_toy_vertex_count_value():
    cc = build_toy(2, 1, (6, 15), 30, 3)
    vertices, edges = class_counts(cc.compression)
    assert vertices == 2 * 2 * 3 + 6 + 15 == 33
    # three vertical edge classes between the rows: gcd(6, 15) = 3
    verticals = {cc.compression.edge_class[e] for e in cc.graph.edges
                 if cc.graph.is_vertical(e) and 4 <= e[0][1] <= 33}
    assert len(verticals) == 3


def test_edge_classes_never_mix_rows_or_orientation():
    cc = build_toy(3, 1, (6, 10, 15), 30, 2)
    for members in cc.compression.edge_members:
        orientations = {cc.graph.is_vertical(e) for e in members}
        assert len(orientations) == 1
        rows = {frozenset((e[0][0], e[1][0])) for e in members}
        assert len(rows) == 1


def test_ear_vertices_singletons_middle_periodic():
    cc = build_toy(2, 1, (6, 15), 30, 3)
    comp = cc.compression
    r, length = 3, 30
    for i in (1, 2):
        classes = {comp.vertex_class[(i, a)] for a in range(r + 1, r + length + 1)}
        assert len(classes) == cc.params.moduli[i - 1]
    for v in [(1, 1), (2, 3), (1, 34), (2, 36)]:
        assert len(comp.vertex_members[comp.vertex_class[v]]) == 1


def test_crossing_edges_equivalent():
    cc = build_toy(2, 1, (6, 15), 30, 3)
    left = edge((1, 3), (1, 4))
    right = edge((1, 33), (1, 34))
    assert cc.compression.edge_class[left] == cc.compression.edge_class[right]


def test_incompatible_partition_adjacent():
    graph = CylinderGraph(2, 6)
    partition = {v: 0 if v in ((1, 1), (1, 2)) else v for v in graph.vertices}
    with pytest.raises(IncompatiblePartition):
        induce_compression(graph, partition)


def test_incompatible_partition_degrees():
    graph = CylinderGraph(2, 6)
    partition = {v: 0 if v in ((1, 1), (1, 3)) else v for v in graph.vertices}
    with pytest.raises(IncompatiblePartition):
        induce_compression(graph, partition)


def test_recipe_scale_variable_count_bound():
    from cylcomp.params import derive_parameters
    n, k, c = 15, 3, 1
    params = derive_parameters(n, k, c)
    _, edge_classes = expected_class_counts(params)
    assert 2 * k * k * n ** (c + 1) <= edge_classes <= 40 * k * k * (2 * n) ** (c + 1)


def test_export_graph_header():
    graph = CylinderGraph(2, 4)
    text = export_graph(graph)
    assert text.splitlines()[0] == "graph 2 4"
    assert f"{graph.num_edges + 1}" not in ""  # smoke: line count below
    assert len(text.splitlines()) == 1 + graph.num_edges


def test_export_compression_sections():
    from cylcomp.compression import export_compression
    cc = build_toy(2, 1, (3, 3), 3, 1)
    text = export_compression(cc.compression)
    lines = text.splitlines()
    assert lines[0] == "vertices"
    assert "edges" in lines
    assert len(lines) == 2 + cc.graph.num_vertices + cc.graph.num_edges
