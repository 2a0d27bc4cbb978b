"""CFI gadget graphs over ordered base graphs, plain and compressed.

Each base vertex of degree d becomes the 2^(d-1) even-parity vectors over
its incident edge positions; copies of adjacent base vertices are joined
when their coordinate sum at the shared edge's positions matches the charge
of that edge.  With a compatible, order-consistent vertex equivalence and a
class-constant charge function, identifying (u, a) with (v, a) for u ~ v
yields the compressed variant.
"""

from dataclasses import dataclass
from itertools import product

from .cylinder import edge
from .errors import DegreeTooLarge, NotCompressible, OrderInconsistent
from .wl import ColoredGraph, colored_graph_from_edges

MAX_CFI_DEGREE = 20


@dataclass
class CfiFunction:
    base: object
    values: dict       # edge -> 0/1

    def __call__(self, e):
        return self.values.get(e, 0)

    def is_compressible(self, compression):
        """Constant on every edge class of the compression."""
        for members in compression.edge_members:
            if len({self(e) for e in members}) > 1:
                return False
        return True


def _even_vectors(d):
    return [bits for bits in product((0, 1), repeat=d) if sum(bits) % 2 == 0]


@dataclass
class CfiGraph(ColoredGraph):
    base: object = None
    charge: object = None
    copies: list = None       # index -> (base vertex, parity vector)

    def copy_index(self):
        return {vw: i for i, vw in enumerate(self.copies)}


def build_cfi(base, charge):
    """The CFI graph of an ordered base graph under an edge charge.

    Copies of v are the even vectors over positions of v's adjacency list;
    (u, a) ~ (v, b) are joined iff a[pos of v in u] + b[pos of u in v]
    equals the charge of {u, v}.  Vertex colors name the base vertex.
    """
    if isinstance(charge, dict):
        charge = CfiFunction(base, charge)
    copies = []
    for v in base.vertices:
        d = base.degree(v)
        if d > MAX_CFI_DEGREE:
            raise DegreeTooLarge(f"vertex {v} has degree {d}")
        copies.extend((v, bits) for bits in _even_vectors(d))
    index = {vw: i for i, vw in enumerate(copies)}
    color_of = {v: ci for ci, v in enumerate(base.vertices)}
    edges = []
    for (u, v) in base.edges:
        pu = base.neighbor_position(u, v)
        pv = base.neighbor_position(v, u)
        want = charge(edge(u, v))
        for a in _even_vectors(base.degree(u)):
            for b in _even_vectors(base.degree(v)):
                if (a[pu] + b[pv]) % 2 == want:
                    edges.append((index[(u, a)], index[(v, b)]))
    plain = colored_graph_from_edges(
        len(copies), edges, [color_of[v] for (v, _) in copies])
    return CfiGraph(plain.n, plain.adjacency, plain.colors,
                    base=base, charge=charge, copies=copies)


def check_order_consistency(base, compression):
    """Edges between a fixed ordered pair of vertex classes must attach at
    one fixed adjacency position on each side; this is what lets copies be
    identified coordinatewise."""
    position = {}
    for (u, v) in base.edges:
        for (a, b) in ((u, v), (v, u)):
            key = (compression.vertex_class[a], compression.vertex_class[b])
            pos = base.neighbor_position(a, b)
            if position.setdefault(key, pos) != pos:
                raise OrderInconsistent(
                    f"edges between classes {key} attach at positions "
                    f"{position[key]} and {pos}")


def compress_cfi(cfi, compression):
    """Quotient of a CFI graph: (u, a) ~ (v, a) whenever u ~ v in the base.

    Colors become the index of the minimum base vertex in each class.
    """
    base = cfi.base
    check_order_consistency(base, compression)
    if not cfi.charge.is_compressible(compression):
        raise NotCompressible("charge function not constant on edge classes")

    class_ids = {}
    quotient_of = []
    colors = []
    rank = {v: i for i, v in enumerate(base.vertices)}
    for (v, bits) in cfi.copies:
        key = (compression.vertex_class[v], bits)
        if key not in class_ids:
            class_ids[key] = len(class_ids)
            members = compression.vertex_members[compression.vertex_class[v]]
            colors.append(rank[min(members)])
        quotient_of.append(class_ids[key])
    edges = set()
    for u in range(cfi.n):
        for v in cfi.adjacency[u]:
            if quotient_of[u] != quotient_of[v]:
                qe = (min(quotient_of[u], quotient_of[v]),
                      max(quotient_of[u], quotient_of[v]))
                edges.add(qe)
    return colored_graph_from_edges(len(class_ids), sorted(edges), colors)


def make_charge_functions(cc):
    """The all-zero charge and the single-twist charge at vertex (1, 1).

    The twisted edge is the right-going edge at (1, 1), which is a singleton
    class whenever the ear has width at least 2; both functions are then
    constant on edge classes.
    """
    graph = cc.graph
    zero = CfiFunction(graph, {})
    twist_edge = edge((1, 1), (1, 2))
    if len(cc.compression.edge_members[cc.compression.edge_class[twist_edge]]) != 1:
        raise NotCompressible(
            "right edge of (1,1) is not a singleton class; need ear width >= 2")
    one = CfiFunction(graph, {twist_edge: 1})
    return zero, one


def compressed_cfi_pair(cc):
    """The two compressed CFI graphs whose distinguishability the cylinder
    game controls."""
    f, g = make_charge_functions(cc)
    G = compress_cfi(build_cfi(cc.graph, f), cc.compression)
    H = compress_cfi(build_cfi(cc.graph, g), cc.compression)
    return G, H
