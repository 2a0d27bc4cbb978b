"""Width-(k+3) refutations of compressed cylinder Tseitin formulas.

The refutation is built as a decision DAG that sweeps the cylinder column by
column.  Querying the right-going edges of column 1 splits the contradiction
onto either column 1 itself or the remaining sub-cylinder; sweeping a column
queries each vertex's unseen edges in row order, forgetting a vertex's left
edge once its parity constraint is confirmed satisfied, so at most k+3
variables are ever held.  Arriving branches whose assignment violates a
vertex constraint terminate at that vertex class's falsified axiom.
"""

import sys

from .decision_dag import DagNode, DecisionDag, decision_dag_to_resolution
from .cylinder import edge
from .resolution import eliminate_weakening
from .tseitin import compressed_cylinder_tseitin


class _SweepBuilder:
    def __init__(self, cc, instance, tau):
        self.cc = cc
        self.graph = cc.graph
        self.comp = cc.compression
        self.instance = instance
        self.tau = tau
        self.nodes = []
        self.memo = {}
        self.clause_at = {}
        for idx, clause in enumerate(tau.clauses):
            key = frozenset((abs(l), 0 if l > 0 else 1) for l in clause)
            self.clause_at[(tau.clause_origin[idx], key)] = idx

    # -- small helpers --------------------------------------------------

    def var(self, e):
        return self.comp.edge_class[e] + 1

    def right_var(self, i, j):
        return self.var(edge((i, j), (i, j + 1)))

    def vertical_var(self, i, j):
        """Class variable of the column-j edge leaving row i downward."""
        k = self.cc.k
        if k == 2:
            return self.var(edge((1, j), (2, j)))
        return self.var(edge((i, j), (i % k + 1, j)))

    def vertex_vars(self, v):
        return [self.var(e) for e in self.graph.incident_edges(v)]

    def charge(self, v):
        return self.instance.charge.get(v, 0)

    def violated(self, v, rho):
        total = sum(rho[x] for x in self.vertex_vars(v)) % 2
        return total != self.charge(v)

    def make_leaf(self, v, rho):
        local = {x: rho[x] for x in self.vertex_vars(v)}
        cid = self.comp.vertex_class[v]
        idx = self.clause_at[(cid, frozenset(local.items()))]
        self.nodes.append(DagNode(local, output=idx))
        return len(self.nodes) - 1

    def query(self, x, rho, continuation):
        """Query variable x, or follow the recorded value if already set.

        `continuation(bit, rho_with_x)` builds and returns the child for
        each answer.
        """
        if x in rho:
            return continuation(rho[x], rho)
        zero = continuation(0, {**rho, x: 0})
        one = continuation(1, {**rho, x: 1})
        self.nodes.append(DagNode(dict(rho), query=x, children=(zero, one)))
        return len(self.nodes) - 1

    def memoized(self, key, rho, build):
        full_key = (key, frozenset(rho.items()))
        if full_key not in self.memo:
            self.memo[full_key] = build(dict(rho))
        return self.memo[full_key]

    # -- column scripts --------------------------------------------------

    def enter_column(self, j, rho):
        if j == 1:
            return self.memoized(("start",), rho, self._first_column)
        if j == self.cc.width:
            return self.memoized(("colcase", j), rho,
                                 lambda r: self.column_case(j, r))
        return self.memoized(("sweep", j), rho,
                             lambda r: self.sweep_column(j, r))

    def _first_column(self, rho):
        k = self.cc.k
        right_vars = [self.right_var(i, 1) for i in range(1, k + 1)]

        def ask(pos, rho):
            if pos == len(right_vars):
                parity = sum(rho[x] for x in right_vars) % 2
                if parity == 0:  # contradiction stays on column 1
                    return self.memoized(("colcase", 1), rho,
                                         lambda r: self.column_case(1, r))
                return self.enter_column(2, rho)
            return self.query(right_vars[pos], rho,
                              lambda _b, r: ask(pos + 1, r))

        return ask(0, rho)

    def column_case(self, j, rho):
        """Derive the contradiction sitting on column j (first or last)."""
        k = self.cc.k
        if k == 2:
            v_var = self.vertical_var(1, j)

            def after_v(_b, r):
                if self.violated((1, j), r):
                    return self.make_leaf((1, j), r)
                assert self.violated((2, j), r), "column parity bookkeeping"
                return self.make_leaf((2, j), r)

            return self.query(v_var, rho, after_v)

        up_var = self.vertical_var(k, j)    # edge between rows k and 1
        down_var = self.vertical_var(1, j)

        def after_first(_b, r):
            def after_second(_b2, r2):
                if self.violated((1, j), r2):
                    return self.make_leaf((1, j), r2)
                return self.chain_rows(j, 2, r2)
            return self.query(down_var, r, after_second)

        return self.query(up_var, rho, after_first)

    def chain_rows(self, j, i, rho):
        """Column-case rows 2..k: query the next vertical, check vertex (i, j)."""
        k = self.cc.k
        if i == k:
            assert self.violated((k, j), rho), "column parity bookkeeping"
            return self.make_leaf((k, j), rho)

        def after(_b, r):
            if self.violated((i, j), r):
                return self.make_leaf((i, j), r)
            nxt = dict(r)
            nxt.pop(self.horizontal_var(i, j), None)
            nxt.pop(self.vertical_var(i - 1, j), None)
            return self.memoized(("chain", j, i + 1), nxt,
                                 lambda r2: self.chain_rows(j, i + 1, r2))

        return self.query(self.vertical_var(i, j), rho, after)

    def horizontal_var(self, i, j):
        """The one horizontal edge of (i, j) inside a boundary column."""
        if j == 1:
            return self.right_var(i, 1)
        return self.var(edge((i, j - 1), (i, j)))

    def sweep_column(self, j, rho):
        k = self.cc.k
        left = {i: self.var(edge((i, j - 1), (i, j))) for i in range(1, k + 1)}
        assert sum(rho[x] for x in left.values()) % 2 == 1, "sweep parity"
        if k == 2:
            return self._sweep_two_rows(j, rho, left)

        up_var = self.vertical_var(k, j)
        down_var = self.vertical_var(1, j)

        def row1_r(_b, r):
            def checked(_b2, r2):
                if self.violated((1, j), r2):
                    return self.make_leaf((1, j), r2)
                nxt = dict(r2)
                del nxt[left[1]]
                return self.memoized(("sweeprow", j, 2), nxt,
                                     lambda r3: self.sweep_row(j, 2, r3, left))
            return self.query(self.right_var(1, j), r, checked)

        return self.query(up_var, rho,
                          lambda _b, r: self.query(down_var, r, row1_r))

    def sweep_row(self, j, i, rho, left):
        k = self.cc.k
        if i == k:
            def last(_b, r):
                if self.violated((k, j), r):
                    return self.make_leaf((k, j), r)
                nxt = {self.right_var(row, j): r[self.right_var(row, j)]
                       for row in range(1, k + 1)}
                return self.enter_column(j + 1, nxt)
            return self.query(self.right_var(k, j), rho, last)

        def mid(_b, r):
            def checked(_b2, r2):
                if self.violated((i, j), r2):
                    return self.make_leaf((i, j), r2)
                nxt = dict(r2)
                del nxt[left[i]]
                del nxt[self.vertical_var(i - 1, j)]
                return self.memoized(("sweeprow", j, i + 1), nxt,
                                     lambda r3: self.sweep_row(j, i + 1, r3, left))
            return self.query(self.vertical_var(i, j), r, checked)

        return self.query(self.right_var(i, j), rho, mid)

    def _sweep_two_rows(self, j, rho, left):
        v_var = self.vertical_var(1, j)

        def row1(_b, r):
            def checked(_b2, r2):
                if self.violated((1, j), r2):
                    return self.make_leaf((1, j), r2)
                nxt = dict(r2)
                del nxt[left[1]]
                return self.memoized(("sweeprow", j, 2), nxt, row2)
            return self.query(self.right_var(1, j), r, checked)

        def row2(r):
            def checked(_b, r2):
                if self.violated((2, j), r2):
                    return self.make_leaf((2, j), r2)
                nxt = {self.right_var(row, j): r2[self.right_var(row, j)]
                       for row in (1, 2)}
                return self.enter_column(j + 1, nxt)
            return self.query(self.right_var(2, j), r, checked)

        return self.query(v_var, rho, row1)


def build_sweep_dag(cc, odd_vertex=(1, 1)):
    """Decision DAG solving the falsified-clause search for the compressed
    Tseitin formula; returns (dag, instance, formula)."""
    instance, tau = compressed_cylinder_tseitin(cc, odd_vertex)
    builder = _SweepBuilder(cc, instance, tau)
    limit = sys.getrecursionlimit()
    needed = 50 * cc.width + 10_000
    try:
        if needed > limit:
            sys.setrecursionlimit(needed)
        root = builder.enter_column(1, {})
    finally:
        sys.setrecursionlimit(limit)
    return DecisionDag(builder.nodes, root=root), instance, tau


def small_width_refutation(cc, odd_vertex=(1, 1)):
    """Checker-ready refutation of the compressed Tseitin formula with width
    at most k+3; returns (proof, formula)."""
    dag, _instance, tau = build_sweep_dag(cc, odd_vertex)
    proof = decision_dag_to_resolution(dag, tau)
    return eliminate_weakening(proof), tau
