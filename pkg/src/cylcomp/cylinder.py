"""Cylinder graphs: k rows of L + 2r columns, each column a cycle.

Vertices are (row, col), both 1-based.  Adjacency lists are ordered
(left, right, up, down) with absent directions skipped at the boundary
columns; for k = 2 the column cycle degenerates to a single vertical edge
and the order becomes (left, right, vertical).  Row arithmetic is cyclic.
"""

from .errors import InvalidRange


def edge(u, v):
    """Canonical (sorted) form of an undirected edge."""
    return (u, v) if u <= v else (v, u)


class Graph:
    """Finite simple graph with ordered adjacency lists.

    `vertices` fixes the canonical vertex order; `adjacency[v]` fixes the
    neighbor order at v.  Edges are enumerated in first-occurrence order
    (vertex order major, adjacency position minor), which downstream code
    relies on for deterministic numbering.
    """

    def __init__(self, vertices, adjacency):
        self.vertices = list(vertices)
        self.adjacency = adjacency
        self.edges = []
        seen = set()
        for u in self.vertices:
            for v in adjacency[u]:
                e = edge(u, v)
                if e not in seen:
                    seen.add(e)
                    self.edges.append(e)
        self.edge_index = {e: i for i, e in enumerate(self.edges)}

    def degree(self, v):
        return len(self.adjacency[v])

    def incident_edges(self, v):
        return [edge(v, w) for w in self.adjacency[v]]

    def neighbor_position(self, u, v):
        return self.adjacency[u].index(v)

    @property
    def num_vertices(self):
        return len(self.vertices)

    @property
    def num_edges(self):
        return len(self.edges)


class CylinderGraph(Graph):
    def __init__(self, k, width):
        if k < 2:
            raise InvalidRange("cylinder needs at least 2 rows")
        if width < 2:
            raise InvalidRange("cylinder needs at least 2 columns")
        self.k = k
        self.width = width
        vertices = [(i, a) for i in range(1, k + 1) for a in range(1, width + 1)]
        adjacency = {}
        for i, a in vertices:
            nbrs = []
            if a > 1:
                nbrs.append((i, a - 1))
            if a < width:
                nbrs.append((i, a + 1))
            if k == 2:
                nbrs.append((3 - i, a))
            else:
                nbrs.append(((i - 2) % k + 1, a))  # up
                nbrs.append((i % k + 1, a))        # down
            adjacency[(i, a)] = nbrs
        super().__init__(vertices, adjacency)

    def is_vertical(self, e):
        return e[0][1] == e[1][1]

    def column_edges(self, a):
        """Vertical edges of column a, in row order."""
        if self.k == 2:
            return [edge((1, a), (2, a))]
        return [edge((i, a), (i % self.k + 1, a)) for i in range(1, self.k + 1)]

    def right_edge(self, v):
        i, a = v
        return edge(v, (i, a + 1)) if a < self.width else None

    def left_edge(self, v):
        i, a = v
        return edge(v, (i, a - 1)) if a > 1 else None


def build_cylinder(params):
    return CylinderGraph(params.k, params.width)


def export_graph(graph):
    """Plain-text edge list with a `graph <k> <width>` header."""
    lines = [f"graph {graph.k} {graph.width}"]
    for (u, v) in graph.edges:
        lines.append(f"{u[0]},{u[1]} {v[0]},{v[1]}")
    return "\n".join(lines) + "\n"
