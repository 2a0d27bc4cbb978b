"""Graph compressions: compatible vertex classes and induced edge classes.

A vertex equivalence is compatible when equivalent vertices are non-adjacent
and share a degree.  It induces an edge equivalence: identify the i-th
incident edges of equivalent vertices and close transitively.  On the
cylinder the closed form is periodic: middle vertices of row i are
identified modulo m_i, horizontal edge classes repeat modulo m_i along the
row (with the two part-crossing edges falling into one class), and vertical
classes between adjacent rows repeat modulo gcd(m_i, m_{i+1}).
"""

from dataclasses import dataclass, field

from .cylinder import build_cylinder, edge
from .errors import IncompatiblePartition


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass
class GraphCompression:
    graph: object
    vertex_class: dict
    edge_class: dict
    vertex_members: list = field(default_factory=list)
    edge_members: list = field(default_factory=list)

    def __post_init__(self):
        if not self.vertex_members:
            n = 1 + max(self.vertex_class.values())
            self.vertex_members = [[] for _ in range(n)]
            for v in self.graph.vertices:
                self.vertex_members[self.vertex_class[v]].append(v)
        if not self.edge_members:
            n = 1 + max(self.edge_class.values())
            self.edge_members = [[] for _ in range(n)]
            for e in self.graph.edges:
                self.edge_members[self.edge_class[e]].append(e)

    @property
    def num_vertex_classes(self):
        return len(self.vertex_members)

    @property
    def num_edge_classes(self):
        return len(self.edge_members)

    def vclass(self, v):
        return self.vertex_class[v]

    def eclass(self, e):
        return self.edge_class[e]

    def vclass_of_set(self, vertices):
        return {self.vertex_class[v] for v in vertices}

    def vertex_partition(self):
        return {frozenset(members) for members in self.vertex_members}

    def edge_partition(self):
        return {frozenset(members) for members in self.edge_members}


def _dense_vertex_ids(graph, key_of):
    ids, members = {}, []
    vertex_class = {}
    for v in graph.vertices:
        key = key_of(v)
        if key not in ids:
            ids[key] = len(ids)
            members.append([])
        vertex_class[v] = ids[key]
        members[ids[key]].append(v)
    return vertex_class, members


def _dense_edge_ids(graph, key_of):
    ids, members = {}, []
    edge_class = {}
    for e in graph.edges:
        key = key_of(e)
        if key not in ids:
            ids[key] = len(ids)
            members.append([])
        edge_class[e] = ids[key]
        members[ids[key]].append(e)
    return edge_class, members


def induce_compression(graph, vertex_eq):
    """Build the compression induced by a vertex partition.

    `vertex_eq` maps each vertex to an arbitrary class key (or is an iterable
    of vertex groups).  Raises IncompatiblePartition if two equivalent
    vertices are adjacent or have different degrees.
    """
    if not isinstance(vertex_eq, dict):
        mapping = {}
        for idx, group in enumerate(vertex_eq):
            for v in group:
                mapping[v] = idx
        vertex_eq = mapping

    groups = {}
    for v in graph.vertices:
        groups.setdefault(vertex_eq[v], []).append(v)
    for members in groups.values():
        rep = members[0]
        for v in members[1:]:
            if graph.degree(v) != graph.degree(rep):
                raise IncompatiblePartition(rep, v, "unequal degrees")
            if v in graph.adjacency[rep]:
                raise IncompatiblePartition(rep, v, "adjacent vertices identified")

    uf = _UnionFind(graph.num_edges)
    for members in groups.values():
        rep = members[0]
        rep_edges = [graph.edge_index[e] for e in graph.incident_edges(rep)]
        for v in members[1:]:
            for pos, e in enumerate(graph.incident_edges(v)):
                uf.union(rep_edges[pos], graph.edge_index[e])

    vertex_class, vmembers = _dense_vertex_ids(graph, lambda v: vertex_eq[v])
    edge_class, emembers = _dense_edge_ids(
        graph, lambda e: uf.find(graph.edge_index[e]))
    return GraphCompression(graph, vertex_class, edge_class, vmembers, emembers)


def cylinder_vertex_key(params, v):
    """Class key of a cylinder vertex: ears are singletons, middles periodic."""
    i, a = v
    r, length = params.ear_length, params.middle_length
    if r + 1 <= a <= r + length:
        return ("m", i, a % params.modulus(i))
    return ("s", i, a)


def _vertical_column_classes(params, i):
    """Reachability classes of middle columns under steps m_i and m_{i+1}.

    The closure identifies vertical edges whose columns differ by a row
    modulus with both columns inside the middle part; at full scale this
    collapses to residues modulo gcd(m_i, m_{i+1}), but short middles can
    leave residue classes split.
    """
    r, length = params.ear_length, params.middle_length
    columns = list(range(r + 1, r + length + 1))
    uf = _UnionFind(len(columns))
    for step in (params.modulus(i), params.modulus(i + 1)):
        for idx, a in enumerate(columns):
            if a + step <= r + length:
                uf.union(idx, idx + step)
    return {a: uf.find(idx) for idx, a in enumerate(columns)}


def cylinder_edge_key(params, e, vertical_classes=None):
    u, v = e
    r, length = params.ear_length, params.middle_length
    if u[1] == v[1]:  # vertical, between adjacent rows
        i, a = min(u[0], v[0]), u[1]
        if params.k > 2 and {u[0], v[0]} == {1, params.k}:
            i = params.k
        if r + 1 <= a <= r + length:
            if vertical_classes is not None:
                return ("t", i, vertical_classes[i][a])
            return ("t", i, _vertical_column_classes(params, i)[a])
        return ("ts", i, a)
    i, x = u[0], min(u[1], v[1])  # horizontal, keyed by left column
    m = params.modulus(i)
    if r <= x <= r + length:
        if length >= 2 * m:
            return ("h", i, x % m)
        # a one-period middle leaves no chain to merge horizontal edges
        return ("h1", i, x)
    return ("hs", i, x)


def cylinder_compression(params, graph=None):
    """Closed-form compression of the cylinder for the given parameters."""
    graph = graph or build_cylinder(params)
    pairs = [1] if params.k == 2 else range(1, params.k + 1)
    vertical_classes = {i: _vertical_column_classes(params, i) for i in pairs}
    vertex_class, vmembers = _dense_vertex_ids(
        graph, lambda v: cylinder_vertex_key(params, v))
    edge_class, emembers = _dense_edge_ids(
        graph, lambda e: cylinder_edge_key(params, e, vertical_classes))
    return GraphCompression(graph, vertex_class, edge_class, vmembers, emembers)


def identity_compression(graph):
    vertex_class, vmembers = _dense_vertex_ids(graph, lambda v: v)
    edge_class, emembers = _dense_edge_ids(graph, lambda e: e)
    return GraphCompression(graph, vertex_class, edge_class, vmembers, emembers)


def class_counts(compression):
    return compression.num_vertex_classes, compression.num_edge_classes


def expected_class_counts(params):
    """Closed-form class counts for the cylinder compression.

    Vertices: 2kr singletons in the ears plus m_i middle classes per row.
    Edges, per row: 2(r-1) horizontal singletons inside the ears plus m_i
    periodic classes (or L+1 unmerged ones over a one-period middle); per
    adjacent row pair: 2r vertical singletons plus one class per column
    reachability class, which is gcd(m_i, m_{i+1}) at full scale.  A 2-row
    cylinder has one row pair.
    """
    k, r, length = params.k, params.ear_length, params.middle_length
    vertices = 2 * k * r + sum(params.moduli)
    horizontal = k * 2 * (r - 1)
    for m in params.moduli:
        horizontal += m if length >= 2 * m else length + 1
    pairs = [1] if k == 2 else range(1, k + 1)
    vertical = sum(
        2 * r + len(set(_vertical_column_classes(params, i).values()))
        for i in pairs)
    return vertices, horizontal + vertical


def observation_class_counts(params):
    """The itemized full-scale count: 2kr + sum(m_i) vertex classes and
    (4r-2)k + sum(m_i + gcd(m_i, m_{i+1})) edge classes, counting one row
    pair when k = 2.  Exact whenever the compression is saturated."""
    k, r = params.k, params.ear_length
    vertices = 2 * k * r + sum(params.moduli)
    pairs = [1] if k == 2 else list(range(1, k + 1))
    edges = (2 * (r - 1)) * k + sum(params.moduli) \
        + sum(2 * r + params.pair_gcd(i) for i in pairs)
    return vertices, edges


def compression_saturated(params):
    """True when every periodic class is fully merged: each row modulus fits
    at least twice into the middle and every vertical residue class is
    connected by modulus steps."""
    if any(params.middle_length < 2 * m for m in params.moduli):
        return False
    pairs = [1] if params.k == 2 else range(1, params.k + 1)
    return all(
        len(set(_vertical_column_classes(params, i).values())) ==
        params.pair_gcd(i)
        for i in pairs)


@dataclass
class CompressedCylinder:
    """A cylinder bundled with its parameters and closed-form compression."""
    params: object
    graph: object
    compression: object

    @classmethod
    def build(cls, params):
        graph = build_cylinder(params)
        return cls(params, graph, cylinder_compression(params, graph))

    @property
    def width(self):
        return self.params.width

    @property
    def k(self):
        return self.params.k


def export_compression(compression):
    """Two sections mapping vertices and edges to class ids."""
    lines = ["vertices"]
    for v in compression.graph.vertices:
        lines.append(f"{v[0]},{v[1]} {compression.vertex_class[v]}")
    lines.append("edges")
    for u, v in compression.graph.edges:
        lines.append(
            f"{u[0]},{u[1]} {v[0]},{v[1]} {compression.edge_class[(u, v)]}")
    return "\n".join(lines) + "\n"
