"""Compressible-move construction by parity algebra over edge classes.

A move is a union of whole edge classes, so its effect on vertex parities is
determined in the quotient: each edge class flips the parity of the vertex
classes it meets an odd number of times.  Finding a move from w1 to w2 that
avoids the cops is then a linear system over GF(2): pick allowed classes
whose combined parity flip is exactly {class(w1), class(w2)}.
"""


class MoveSolver:
    def __init__(self, cc):
        self.cc = cc
        self._basis_cache = {}
        comp = cc.compression
        self.incident_vclasses = []   # per edge class: vertex classes touched
        self.flip_masks = []          # per edge class: parity flips as bitmask
        for eid, members in enumerate(comp.edge_members):
            touched = set()
            per_vertex = {}
            for (u, v) in members:
                for w in (u, v):
                    per_vertex[w] = per_vertex.get(w, 0) + 1
                    touched.add(comp.vertex_class[w])
            mask = 0
            for cid in touched:
                rep = comp.vertex_members[cid][0]
                if per_vertex.get(rep, 0) % 2 == 1:
                    mask |= 1 << cid
            self.incident_vclasses.append(frozenset(touched))
            self.flip_masks.append(mask)

    def _basis(self, forbidden):
        """Row-reduced span of the allowed classes' flip vectors.

        The basis depends only on the forbidden vertex classes, so it is
        cached; a round's many candidate targets then share one elimination.
        """
        key = frozenset(forbidden)
        cached = self._basis_cache.get(key)
        if cached is not None:
            return cached
        basis = {}   # pivot bit -> (mask, eclass combination mask)
        for eid in range(len(self.flip_masks)):
            if self.incident_vclasses[eid] & forbidden:
                continue
            mask, combo = self.flip_masks[eid], 1 << eid
            while mask:
                pivot = mask & -mask
                if pivot in basis:
                    bmask, bcombo = basis[pivot]
                    mask ^= bmask
                    combo ^= bcombo
                else:
                    basis[pivot] = (mask, combo)
                    break
        if len(self._basis_cache) > 64:
            self._basis_cache.clear()
        self._basis_cache[key] = basis
        return basis

    def find_move(self, cop_vertices, w1, w2):
        """Edge set of a compressible move from w1 to w2, or None.

        Solves for a set of edge classes avoiding the cops' vertex classes
        whose parity flips land exactly on the classes of w1 and w2.
        """
        comp = self.cc.compression
        c1, c2 = comp.vertex_class[w1], comp.vertex_class[w2]
        if c1 == c2:
            return None
        forbidden = {comp.vertex_class[v] for v in cop_vertices}
        if c1 in forbidden or c2 in forbidden:
            return None
        target = (1 << c1) | (1 << c2)
        basis = self._basis(forbidden)

        mask, combo = target, 0
        while mask:
            pivot = mask & -mask
            if pivot not in basis:
                return None
            bmask, bcombo = basis[pivot]
            mask ^= bmask
            combo ^= bcombo

        edges = set()
        eid = 0
        while combo:
            if combo & 1:
                edges.update(comp.edge_members[eid])
            combo >>= 1
            eid += 1
        return frozenset(edges)
