"""Edge-robber variant: twistings and the vertex-to-edge translation.

A twisting is a directed edge set with even out-count at every vertex; it
twists an edge when it contains exactly one of its two directions.  The
edge robber answers a signal with a compressed twisting that twists exactly
its current edge and its destination edge while fixing every vertex in a
cop class.  A vertex-robber move through singleton-class territory
translates directly: orient the move's edges outward from every interior
vertex, special-casing the robber's old and new edges.
"""

from dataclasses import dataclass

from ..cylinder import edge
from .engine import Violation


@dataclass(frozen=True)
class Twisting:
    arcs: frozenset  # directed pairs (u, v)

    def out_count(self, v):
        return sum(1 for (a, _) in self.arcs if a == v)

    def twisted_edges(self):
        twisted = set()
        for (u, v) in self.arcs:
            if (v, u) not in self.arcs:
                twisted.add(edge(u, v))
        return twisted


def validate_twisting(compression, cop_vertices, twisting, twist_pair):
    """Check evenness, compressed closure, the twisted pair, and cop fixing."""
    graph = compression.graph
    arcs = twisting.arcs
    for (u, v) in arcs:
        if v not in graph.adjacency.get(u, ()):
            return Violation("twist", f"arc {(u, v)} is not an edge")

    out = {}
    for (u, v) in arcs:
        out[u] = out.get(u, 0) + 1
    for u, count in out.items():
        if count % 2 != 0:
            return Violation("twist-even", f"odd out-count at {u}")

    for (u, v) in arcs:
        pos = graph.neighbor_position(u, v)
        for u2 in compression.vertex_members[compression.vertex_class[u]]:
            v2 = graph.adjacency[u2][pos]
            if (u2, v2) not in arcs:
                return Violation("twist-closure",
                                 f"orbit of {(u, v)} leaves the twisting")

    if twisting.twisted_edges() != set(twist_pair):
        return Violation("twist-pair",
                         f"twisted set is {sorted(twisting.twisted_edges())}")

    cop_classes = {compression.vertex_class[p] for p in cop_vertices}
    for u in out:
        if compression.vertex_class[u] in cop_classes:
            return Violation("twist-fix", f"vertex {u} in a cop class moved")
    return None


def _outgoing(v, e):
    u = e[0] if e[1] == v else e[1]
    return (v, u)


def vr_move_to_twisting(compression, move, robber_edge, target_edges):
    """Translate a vertex-robber move into a twisting.

    `robber_edge` is the edge robber's current edge (incident to the move's
    source) and `target_edges` two candidate destination edges incident to
    the target; all three must be singleton-class as must both endpoints.
    Returns (twisting, destination_edge).
    """
    M = move.edges
    w1, w2 = move.source, move.target
    e1 = robber_edge
    vertices = {v for e in M for v in e}
    adjacent = w2 in compression.graph.adjacency[w1]
    bridge = edge(w1, w2) if adjacent else None

    if e1 != bridge:
        e2 = next(e for e in target_edges if e != bridge)
        arcs = set()
        for v in vertices - {w1, w2}:
            for e in M:
                if v in e:
                    arcs.add(_outgoing(v, e))
        for w, skip in ((w1, e1), (w2, e2)):
            for e in M:
                if w in e and e != skip:
                    arcs.add(_outgoing(w, e))
            if skip not in M:
                arcs.add(_outgoing(w, skip))
        return Twisting(frozenset(arcs)), e2

    # the robber's edge is exactly the move's bridge {w1, w2}
    e2 = next(e for e in target_edges if e != e1)
    arcs = set()
    for v in vertices - {w1, w2}:
        for e in M:
            if v in e:
                arcs.add(_outgoing(v, e))
    for e in M:
        if w1 in e and e != e1:
            arcs.add(_outgoing(w1, e))
    if e1 not in M:
        arcs.add(_outgoing(w1, e1))
    for e in M:
        if w2 in e and e not in (e1, e2):
            arcs.add(_outgoing(w2, e))
    if e1 in M:
        arcs.add(_outgoing(w2, e1))
    if e2 not in M:
        arcs.add(_outgoing(w2, e2))
    return Twisting(frozenset(arcs)), e2


def singleton_incident_edges(compression, v):
    """Incident edges of v forming singleton classes, in adjacency order."""
    out = []
    for e in compression.graph.incident_edges(v):
        if len(compression.edge_members[compression.edge_class[e]]) == 1:
            out.append(e)
    return out


def edge_robber_caught(compression, cop_vertices, robber_edge):
    cop_classes = {compression.vertex_class[p] for p in cop_vertices}
    return all(compression.vertex_class[v] in cop_classes for v in robber_edge)


def translate_vr_transcript(cc, transcript):
    """Replay a vertex-robber transcript as an edge-robber game.

    Returns (rounds survived, list of per-round twisting violations); a
    surviving vertex robber on singleton territory must yield a clean
    edge-robber run of equal length.
    """
    from .engine import CompressibleMove

    compression = cc.compression
    positions = [None] * transcript.num_cops
    robber_vertex = transcript.start
    candidates = singleton_incident_edges(compression, robber_vertex)
    if len(candidates) < 2:
        raise ValueError(f"start vertex {robber_vertex} lacks singleton edges")
    robber_edge = candidates[0]
    violations = []
    survived = 0

    for rec in transcript.rounds:
        positions[rec.lifted] = None
        landed = [p for p in positions if p is not None]
        if not rec.move_edges:
            break
        move = CompressibleMove(frozenset(rec.move_edges), robber_vertex,
                                rec.robber)
        targets = singleton_incident_edges(compression, rec.robber)
        if len(targets) < 2:
            raise ValueError(f"target {rec.robber} lacks singleton edges")
        twisting, dest = vr_move_to_twisting(
            compression, move, robber_edge, targets[:2])
        violation = validate_twisting(
            compression, landed, twisting, (robber_edge, dest))
        if violation is not None:
            violations.append((rec.round, violation))
        robber_vertex = rec.robber
        robber_edge = dest
        positions[rec.lifted] = rec.signal
        if edge_robber_caught(compression,
                              [p for p in positions if p is not None],
                              robber_edge):
            break
        survived = rec.round
    return survived, violations
