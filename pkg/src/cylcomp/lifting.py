"""Gadget lifting: XOR and indexing substitutions with proof transport.

Lifted variables live in per-source-variable blocks laid out contiguously
(x pointers, then y values, then chaining variables for the 3-CNF of the
big OR), recorded in a block map so that restrictions and renamings reduce
to index arithmetic.  Refutations travel upward along two routes: XOR lifts
go through the decision-DAG view, querying a whole block in place of each
source query; indexing lifts replay the proof clause by clause, carrying the
indexed family C_J of every derived clause.
"""

import sys
from dataclasses import dataclass
from itertools import product
from math import log2

from .decision_dag import (DagNode, DecisionDag, decision_dag_to_resolution,
                           resolution_to_decision_dag)
from .errors import ExpansionBudget, InvalidRange, InvalidTree
from .resolution import (Axiom, Resolve, ResolutionProof, eliminate_weakening)
from .tseitin import Cnf

DEFAULT_CLAUSE_BUDGET = 2_000_000


@dataclass(frozen=True)
class BlockVariableMap:
    """Variable layout of a lifted formula: per block i (1-based), the x
    pointers, y values, and chaining variables, contiguously."""
    num_blocks: int
    gadget_size: int
    x_per_block: int
    ext_per_block: int

    @property
    def block_len(self):
        return self.x_per_block + self.gadget_size + self.ext_per_block

    @property
    def num_vars(self):
        return self.num_blocks * self.block_len

    def _base(self, i):
        return (i - 1) * self.block_len

    def x(self, i, j):
        return self._base(i) + j

    def y(self, i, j):
        return self._base(i) + self.x_per_block + j

    def ext(self, i, t):
        return self._base(i) + self.x_per_block + self.gadget_size + t

    def block_of(self, var):
        return (var - 1) // self.block_len + 1

    def kind_of(self, var):
        offset = (var - 1) % self.block_len
        if offset < self.x_per_block:
            return ("x", offset + 1)
        offset -= self.x_per_block
        if offset < self.gadget_size:
            return ("y", offset + 1)
        return ("ext", offset - self.gadget_size + 1)

    def names(self):
        table = {}
        for i in range(1, self.num_blocks + 1):
            for j in range(1, self.x_per_block + 1):
                table[self.x(i, j)] = f"x[{i},{j}]"
            for j in range(1, self.gadget_size + 1):
                table[self.y(i, j)] = f"y[{i},{j}]"
            for t in range(1, self.ext_per_block + 1):
                table[self.ext(i, t)] = f"s[{i},{t}]"
        return table


def _sorted_lits(clause):
    return sorted(clause, key=lambda l: (abs(l), l < 0))


# -- XOR lift -------------------------------------------------------------------


def xor_block_map(num_vars, size):
    return BlockVariableMap(num_vars, size, 0, 0)


def _xor_patterns(size, parity):
    return [bits for bits in product((0, 1), repeat=size)
            if sum(bits) % 2 == parity]


def xor_lift(cnf, size, budget=DEFAULT_CLAUSE_BUDGET):
    """Substitute each variable by an XOR of `size` fresh variables.

    A clause of width w expands into 2^((size-1)w) clauses of width
    size*w: one per combination of falsifying block assignments.
    """
    if size < 2:
        raise InvalidRange("xor gadget needs size >= 2")
    bmap = xor_block_map(cnf.num_vars, size)
    total = sum(2 ** ((size - 1) * len(c)) for c in cnf.clauses)
    if total > budget:
        raise ExpansionBudget(f"{total} clauses exceed budget {budget}")
    clauses, origin = [], []
    for idx, clause in enumerate(cnf.clauses):
        lits = _sorted_lits(clause)
        per_literal = []
        for lit in lits:
            # z^b is falsified when the block's parity is 1-b
            falsifying = _xor_patterns(size, 0 if lit > 0 else 1)
            per_literal.append((abs(lit), falsifying))
        for combo in product(*(pats for (_, pats) in per_literal)):
            lifted = set()
            for (i, _), bits in zip(per_literal, combo):
                for j, b in enumerate(bits, start=1):
                    lifted.add(bmap.y(i, j) if b == 0 else -bmap.y(i, j))
            clauses.append(frozenset(lifted))
            origin.append((idx, combo))
    lifted_cnf = Cnf(bmap.num_vars, clauses, names=bmap.names(),
                     clause_origin=origin)
    return lifted_cnf, bmap


def xor_value(bits):
    return sum(bits) % 2


def pull_back_xor(bmap, assignment):
    """Total lifted assignment -> source assignment via block parities."""
    out = {}
    for i in range(1, bmap.num_blocks + 1):
        out[i] = sum(assignment[bmap.y(i, j)]
                     for j in range(1, bmap.gadget_size + 1)) % 2
    return out


# -- indexing lift ---------------------------------------------------------------


def _chain_clauses(literals, next_var):
    """3-CNF of a long disjunction via chaining variables.

    Returns (clauses, number of fresh variables used); fresh variables are
    next_var, next_var+1, ...
    """
    m = len(literals)
    if m <= 3:
        return [frozenset(literals)], 0
    clauses = []
    s = next_var
    clauses.append(frozenset([literals[0], literals[1], s]))
    used = 1
    for t in range(2, m - 2):
        clauses.append(frozenset([-s, literals[t], s + 1]))
        s += 1
        used += 1
    clauses.append(frozenset([-s, literals[m - 2], literals[m - 1]]))
    return clauses, used


def ind_block_map(num_vars, size):
    ext = max(0, size - 3)
    return BlockVariableMap(num_vars, size, size, ext)


def ind_lift(cnf, size, budget=DEFAULT_CLAUSE_BUDGET):
    """Indexing substitution: z_i becomes the conjunction over j of
    (x[i,j] -> y[i,j]), plus a 3-CNF forcing some x[i,j] to hold.

    Every width-w clause contributes one width-2w clause per pointer tuple
    J in [size]^w; block i adds at most `size` encoder clauses.
    """
    if size < 1:
        raise InvalidRange("indexing gadget needs size >= 1")
    bmap = ind_block_map(cnf.num_vars, size)
    total = sum(size ** len(c) for c in cnf.clauses) + cnf.num_vars * size
    if total > budget:
        raise ExpansionBudget(f"{total} clauses exceed budget {budget}")
    clauses, origin = [], []
    for idx, clause in enumerate(cnf.clauses):
        lits = _sorted_lits(clause)
        for J in product(range(1, size + 1), repeat=len(lits)):
            lifted = set()
            for lit, j in zip(lits, J):
                i = abs(lit)
                lifted.add(-bmap.x(i, j))
                lifted.add(bmap.y(i, j) if lit > 0 else -bmap.y(i, j))
            clauses.append(frozenset(lifted))
            origin.append((idx, J))
    for i in range(1, cnf.num_vars + 1):
        ors = [bmap.x(i, j) for j in range(1, size + 1)]
        encoded, _ = _chain_clauses(ors, bmap.ext(i, 1))
        for c in encoded:
            clauses.append(c)
            origin.append(("or", i))
    return Cnf(bmap.num_vars, clauses, names=bmap.names(),
               clause_origin=origin), bmap


def ind_lift_3cnf(cnf, size, budget=DEFAULT_CLAUSE_BUDGET):
    """All-width-3 variant: per clause C and pointer tuple J, fresh selector
    variables x[C,J] and y[C,J] mediate the implication chain
    (all pointers set) -> x[C,J] -> y[C,J] -> (some y literal of C holds)."""
    if size < 1:
        raise InvalidRange("indexing gadget needs size >= 1")
    bmap = ind_block_map(cnf.num_vars, size)
    total = sum((2 * len(c) + 3) * size ** len(c) for c in cnf.clauses)
    if total + cnf.num_vars * size > budget:
        raise ExpansionBudget("3-CNF indexing expansion exceeds budget")
    clauses = []
    names = bmap.names()
    next_var = bmap.num_vars + 1
    for i in range(1, cnf.num_vars + 1):
        ors = [bmap.x(i, j) for j in range(1, size + 1)]
        encoded, used = _chain_clauses(ors, next_var)
        for t in range(used):
            names[next_var + t] = f"or-chain[{i},{t + 1}]"
        next_var += used
        clauses.extend(encoded)
    for idx, clause in enumerate(cnf.clauses):
        lits = _sorted_lits(clause)
        for J in product(range(1, size + 1), repeat=len(lits)):
            x_cj, y_cj = next_var, next_var + 1
            names[x_cj] = f"x[C{idx},{J}]"
            names[y_cj] = f"y[C{idx},{J}]"
            next_var += 2
            trigger = [-bmap.x(abs(l), j) for l, j in zip(lits, J)] + [x_cj]
            encoded, used = _chain_clauses(trigger, next_var)
            next_var += used
            clauses.extend(encoded)
            clauses.append(frozenset([-x_cj, y_cj]))
            head = [-y_cj] + [(bmap.y(abs(l), j) if l > 0 else -bmap.y(abs(l), j))
                              for l, j in zip(lits, J)]
            encoded, used = _chain_clauses(head, next_var)
            next_var += used
            clauses.extend(encoded)
    return Cnf(next_var - 1, clauses, names=names), bmap


# -- proof simulations ------------------------------------------------------------


def simulate_xor_refutation(proof, cnf, size):
    """Refutation of the XOR lift from a refutation of the source.

    Runs through the decision-DAG view: each source query becomes a chain of
    block queries whose parity dispatches to the lifted child.  Node
    assignments lift to at most size*w variables and mid-block nodes hold
    size*(w-1)+size-1 of them, so the width is at most size*w + size - 1.
    """
    lifted_cnf, bmap = xor_lift(cnf, size)
    lifted_index = {org: i for i, org in enumerate(lifted_cnf.clause_origin)}
    dag = resolution_to_decision_dag(eliminate_weakening(proof), cnf)

    nodes = []
    memo = {}

    def lift_node(idx, bits_ctx):
        node = dag.node(idx)
        bits_ctx = {v: bits_ctx[v] for v in node.assignment}
        key = (idx, frozenset(bits_ctx.items()))
        if key in memo:
            return memo[key]
        lifted_assignment = {}
        for v, bits in bits_ctx.items():
            for j, b in enumerate(bits, start=1):
                lifted_assignment[bmap.y(v, j)] = b
        if node.children is None:
            clause = cnf.clauses[node.output]
            combo = tuple(bits_ctx[abs(l)]
                          for l in _sorted_lits(clause))
            out = lifted_index[(node.output, combo)]
            nodes.append(DagNode(lifted_assignment, output=out))
            result = len(nodes) - 1
        else:
            q = node.query

            def block_chain(j, acc, partial):
                if j > size:
                    child = node.children[xor_value(acc)]
                    return lift_node(child, {**bits_ctx, q: tuple(acc)})
                var = bmap.y(q, j)
                zero = block_chain(j + 1, acc + [0], {**partial, var: 0})
                one = block_chain(j + 1, acc + [1], {**partial, var: 1})
                nodes.append(DagNode(dict(partial), query=var,
                                     children=(zero, one)))
                return len(nodes) - 1

            result = block_chain(1, [], dict(lifted_assignment))
        memo[key] = result
        return result

    limit = sys.getrecursionlimit()
    needed = 10 * size * (dag.depth + 10) + 1000
    try:
        if needed > limit:
            sys.setrecursionlimit(needed)
        root = lift_node(dag.root, {})
    finally:
        sys.setrecursionlimit(limit)
    lifted_dag = DecisionDag(nodes, root=root)
    lifted_proof = decision_dag_to_resolution(lifted_dag, lifted_cnf)
    return eliminate_weakening(lifted_proof), lifted_cnf


def simulate_ind_refutation(proof, cnf, size):
    """Step-by-step simulation over the indexing lift.

    Keeps, for every clause C of the source proof, the family of clauses
    C_J over all pointer tuples J; a source resolution costs one resolution
    per (J, j) pair plus a chain resolving away the big OR of the pivot's
    block.
    """
    lifted_cnf, bmap = ind_lift(cnf, size)
    proof = eliminate_weakening(proof)
    steps = []

    def emit(step):
        steps.append(step)
        return len(steps) - 1

    # 1. derive the big OR of every block from its chain encoding
    or_steps = {}
    chain_clause_ids = {}
    for i, org in enumerate(lifted_cnf.clause_origin):
        if isinstance(org, tuple) and org[0] == "or":
            chain_clause_ids.setdefault(org[1], []).append(i)
    for i in range(1, cnf.num_vars + 1):
        ids = chain_clause_ids[i]
        acc = emit(Axiom(ids[0], lifted_cnf.clauses[ids[0]]))
        for nxt in ids[1:]:
            axiom = emit(Axiom(nxt, lifted_cnf.clauses[nxt]))
            # the chaining variable occurs positively in the accumulated
            # clause and negatively in the next chain clause
            pivot = next(l for l in steps[acc].clause
                         if l > 0 and -l in lifted_cnf.clauses[nxt])
            acc = emit(Resolve(acc, axiom, pivot,
                               frozenset((steps[acc].clause - {pivot})
                                         | (lifted_cnf.clauses[nxt] - {-pivot}))))
        or_steps[i] = acc

    lifted_axiom = {org: i for i, org in enumerate(lifted_cnf.clause_origin)
                    if isinstance(org, tuple) and org[0] != "or"}

    def lift_literal(lit, j):
        i = abs(lit)
        return (-bmap.x(i, j), bmap.y(i, j) if lit > 0 else -bmap.y(i, j))

    def lifted_clause(clause, J):
        lits = _sorted_lits(clause)
        out = set()
        for lit, j in zip(lits, J):
            out.update(lift_literal(lit, j))
        return frozenset(out)

    family = {}   # source step index -> {J tuple: lifted step id}
    for s_idx, step in enumerate(proof.steps):
        lits = _sorted_lits(step.clause)
        entries = {}
        if isinstance(step, Axiom):
            for J in product(range(1, size + 1), repeat=len(lits)):
                cid = lifted_axiom[(step.clause_index, J)]
                entries[J] = emit(Axiom(cid, lifted_cnf.clauses[cid]))
        else:
            pivot = step.pivot
            left_lits = _sorted_lits(proof.steps[step.left].clause)
            right_lits = _sorted_lits(proof.steps[step.right].clause)
            for J in product(range(1, size + 1), repeat=len(lits)):
                pointer = dict(zip(map(abs, lits), J))
                target = lifted_clause(step.clause, J)
                with_x = None
                for j in range(1, size + 1):
                    JL = tuple(pointer[abs(l)] if abs(l) != pivot else j
                               for l in left_lits)
                    JR = tuple(pointer[abs(l)] if abs(l) != pivot else j
                               for l in right_lits)
                    li = family[step.left][JL]
                    ri = family[step.right][JR]
                    y_pivot = bmap.y(pivot, j)
                    resolvent = frozenset(
                        (steps[li].clause - {y_pivot})
                        | (steps[ri].clause - {-y_pivot}))
                    mid = emit(Resolve(li, ri, y_pivot, resolvent))
                    if with_x is None:
                        with_x = or_steps[pivot]
                    x_pivot = bmap.x(pivot, j)
                    combined = frozenset(
                        (steps[with_x].clause - {x_pivot})
                        | (steps[mid].clause - {-x_pivot}))
                    with_x = emit(Resolve(with_x, mid, x_pivot, combined))
                entries[J] = with_x
                assert steps[with_x].clause == target, "family invariant"
        family[s_idx] = entries
    assert steps[-1].clause == frozenset()
    return ResolutionProof(steps), lifted_cnf


# -- decision-tree extraction -------------------------------------------------


def full_composed_tree(cnf, size, budget=18):
    """The complete decision tree over all lifted variables solving the
    XOR-composed search problem; a convenient worst-case input."""
    if cnf.num_vars * size > budget:
        raise ExpansionBudget(
            f"full tree over {cnf.num_vars * size} variables is too large")
    bmap = xor_block_map(cnf.num_vars, size)
    variables = [bmap.y(i, j) for i in range(1, cnf.num_vars + 1)
                 for j in range(1, size + 1)]
    nodes = []

    def build(assignment, depth):
        if depth == len(variables):
            source = pull_back_xor(bmap, assignment)
            out = next(i for i, c in enumerate(cnf.clauses)
                       if all(source[abs(l)] == (0 if l > 0 else 1) for l in c))
            nodes.append(DagNode(dict(assignment), output=out))
            return len(nodes) - 1
        var = variables[depth]
        zero = build({**assignment, var: 0}, depth + 1)
        one = build({**assignment, var: 1}, depth + 1)
        nodes.append(DagNode(dict(assignment), query=var, children=(zero, one)))
        return len(nodes) - 1

    root = build({}, 0)
    return DecisionDag(nodes, root=root), bmap


def validate_composed_tree(tree, cnf, bmap):
    """Soundness of a tree for the XOR-composed search problem: every leaf's
    clause must have all its blocks fully assigned with falsifying parity."""
    if not tree.is_tree():
        raise InvalidTree("underlying graph is not a tree")
    size = bmap.gadget_size
    for idx in tree.topological_order():
        node = tree.node(idx)
        if node.children is not None:
            if node.query in node.assignment:
                raise InvalidTree(f"node {idx} queries a fixed variable")
            continue
        clause = cnf.clauses[node.output]
        for lit in clause:
            i = abs(lit)
            bits = [node.assignment.get(bmap.y(i, j)) for j in range(1, size + 1)]
            if None in bits:
                raise InvalidTree(f"leaf {idx}: block {i} not fully assigned")
            if xor_value(bits) != (0 if lit > 0 else 1):
                raise InvalidTree(f"leaf {idx}: block {i} does not falsify")


def extract_decision_tree(tree, size, outputs=None):
    """Pull a tree for the composed problem back to the source problem.

    Walks the composed tree keeping a source-variable bookkeeping
    assignment; block queries are followed into the smaller subtree until a
    block has one unset variable left, at which point the source variable is
    either forced or queried.  Width divides by size-1 and depth is at most
    log2 of the input size.
    """
    if size < 2:
        raise InvalidRange("xor gadget needs size >= 2")
    subtree = {}
    for idx in reversed(tree.topological_order()):
        node = tree.node(idx)
        if node.children is None:
            subtree[idx] = 1
        else:
            subtree[idx] = 1 + sum(subtree[c] for c in node.children)

    def block_of(var):
        return (var - 1) // size + 1

    def pos_of(var):
        return (var - 1) % size + 1

    def block_stars(assignment, i):
        return [j for j in range(1, size + 1)
                if (i - 1) * size + j not in assignment]

    def others_parity(assignment, i, skip_j):
        return sum(assignment.get((i - 1) * size + j, 0)
                   for j in range(1, size + 1) if j != skip_j) % 2

    nodes = []

    def updated_sigma(sigma, rho_child, queried_i=None, answer=None):
        out = {}
        for i, val in sigma.items():
            if len(block_stars(rho_child, i)) <= 1:
                out[i] = val
        if queried_i is not None and len(block_stars(rho_child, queried_i)) <= 1:
            out[queried_i] = answer
        return out

    def walk(idx, sigma):
        node = tree.node(idx)
        if node.children is None:
            nodes.append(DagNode(dict(sigma), output=node.output))
            return len(nodes) - 1
        i, j = block_of(node.query), pos_of(node.query)
        stars = block_stars(node.assignment, i)
        if len(stars) >= 2:
            child = min(node.children, key=lambda c: (subtree[c], c))
            rho_child = tree.node(child).assignment
            return walk(child, updated_sigma(sigma, rho_child))
        if sigma.get(i) is not None:
            bit = sigma[i] ^ others_parity(node.assignment, i, j)
            child = node.children[bit]
            rho_child = tree.node(child).assignment
            return walk(child, updated_sigma(sigma, rho_child))
        children = []
        for answer in (0, 1):
            bit = answer ^ others_parity(node.assignment, i, j)
            child = node.children[bit]
            rho_child = tree.node(child).assignment
            children.append(
                walk(child, updated_sigma(sigma, rho_child, i, answer)))
        nodes.append(DagNode(dict(sigma), query=i, children=tuple(children)))
        return len(nodes) - 1

    root = walk(tree.root, {})
    return DecisionDag(nodes, root=root)


def extraction_bounds(input_width, input_size, size):
    """The promised width and depth of an extracted tree."""
    return input_width / (size - 1), int(log2(input_size))


def width_from_size_bound(s, m):
    """Least w with s * (2/(m+1))^(w+1) < 1: the width forced on a source
    refutation by a size-s refutation of its indexing lift."""
    w = 0
    while s * (2.0 / (m + 1)) ** (w + 1) >= 1:
        w += 1
    return w
