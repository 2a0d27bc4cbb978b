"""Decision DAGs for the falsified-clause search problem.

Nodes carry partial assignments; internal nodes query an unset variable and
children may forget arbitrary values; leaves name a clause their assignment
falsifies.  A width-w decision DAG corresponds to a width-w resolution
refutation over the same skeleton: the clause of a node is the unique widest
clause falsified by exactly the extensions of its assignment.
"""

from dataclasses import dataclass

from .errors import InvalidDag
from .resolution import (Axiom, Resolve, ResolutionProof, Weaken,
                         eliminate_weakening, resolve_clauses)


@dataclass
class DagNode:
    assignment: dict              # var -> 0/1; unassigned variables are stars
    query: int = None             # internal nodes
    children: tuple = None        # (zero_child, one_child) node ids
    output: int = None            # leaves: clause index


@dataclass
class DecisionDag:
    nodes: list
    root: int = 0

    def node(self, idx):
        return self.nodes[idx]

    @property
    def size(self):
        return len(self.nodes)

    @property
    def width(self):
        return max((len(n.assignment) for n in self.nodes), default=0)

    @property
    def depth(self):
        memo = {}
        order = self.topological_order()
        for idx in reversed(order):
            node = self.nodes[idx]
            if node.children is None:
                memo[idx] = 0
            else:
                memo[idx] = 1 + max(memo[c] for c in node.children)
        return memo[self.root]

    def topological_order(self):
        """Parents before children; only nodes reachable from the root."""
        order, state = [], {}
        stack = [(self.root, False)]
        while stack:
            idx, done = stack.pop()
            if done:
                order.append(idx)
                continue
            if state.get(idx) is not None:
                continue
            state[idx] = True
            stack.append((idx, True))
            node = self.nodes[idx]
            if node.children is not None:
                for child in node.children:
                    stack.append((child, False))
        order.reverse()
        return order

    def is_tree(self):
        seen = set()
        for idx in self.topological_order():
            node = self.nodes[idx]
            if node.children is None:
                continue
            for child in node.children:
                if child in seen:
                    return False
                seen.add(child)
        return True


def clause_of_assignment(assignment):
    """The widest clause falsified by every extension of the assignment."""
    return frozenset(v if b == 0 else -v for v, b in assignment.items())


def falsifying_assignment(clause):
    return {abs(lit): (0 if lit > 0 else 1) for lit in clause}


def validate_decision_dag(dag, cnf):
    """Check the three structural conditions; raise InvalidDag on failure."""
    if dag.node(dag.root).assignment:
        raise InvalidDag("root assignment must be all-star")
    for idx in dag.topological_order():
        node = dag.node(idx)
        if node.children is None:
            if node.output is None:
                raise InvalidDag(f"leaf {idx} has no output")
            clause = cnf.clauses[node.output]
            for lit in clause:
                var, bad = abs(lit), (1 if lit > 0 else 0)
                if node.assignment.get(var) != 1 - bad:
                    raise InvalidDag(
                        f"leaf {idx} does not falsify clause {node.output}")
        else:
            if node.query is None or len(node.children) != 2:
                raise InvalidDag(f"node {idx} is not a binary query node")
            if node.query in node.assignment:
                raise InvalidDag(f"node {idx} queries an assigned variable")
            for bit, child_idx in enumerate(node.children):
                child = dag.node(child_idx)
                for var, val in child.assignment.items():
                    if var == node.query:
                        if val != bit:
                            raise InvalidDag(
                                f"child of {idx} contradicts query answer")
                    elif node.assignment.get(var) != val:
                        raise InvalidDag(
                            f"child of {idx} invents value for {var}")


def decision_dag_to_resolution(dag, cnf):
    """Folklore direction: same skeleton, same width, plus removable weakenings."""
    steps = []
    step_of = {}

    def emit(step):
        steps.append(step)
        return len(steps) - 1

    for idx in reversed(dag.topological_order()):
        node = dag.node(idx)
        target = clause_of_assignment(node.assignment)
        if node.children is None:
            axiom = cnf.clauses[node.output]
            sid = emit(Axiom(node.output, axiom))
            if axiom != target:
                sid = emit(Weaken(sid, target))
        else:
            pivot = node.query
            zero_id = step_of[node.children[0]]
            one_id = step_of[node.children[1]]
            zero_clause = steps[zero_id].clause
            one_clause = steps[one_id].clause
            if pivot in zero_clause and -pivot in one_clause:
                resolvent = resolve_clauses(zero_clause, one_clause, pivot)
                sid = emit(Resolve(zero_id, one_id, pivot, resolvent))
                if resolvent != target:
                    sid = emit(Weaken(sid, target))
            elif pivot not in zero_clause:
                sid = zero_id if zero_clause == target else emit(
                    Weaken(zero_id, target))
            else:
                sid = one_id if one_clause == target else emit(
                    Weaken(one_id, target))
        step_of[idx] = sid
    root_sid = step_of[dag.root]
    if root_sid != len(steps) - 1:
        steps.append(Weaken(root_sid, steps[root_sid].clause))
    return ResolutionProof(steps)


def resolution_to_decision_dag(proof, cnf):
    """Folklore direction: weakenings are eliminated first."""
    proof = eliminate_weakening(proof)
    nodes = []
    for step in proof.steps:
        assignment = falsifying_assignment(step.clause)
        if isinstance(step, Axiom):
            nodes.append(DagNode(assignment, output=step.clause_index))
        else:
            zero_child = step.left   # clause with the positive pivot: pivot=0 side
            one_child = step.right
            nodes.append(DagNode(assignment, query=step.pivot,
                                 children=(zero_child, one_child)))
    dag = DecisionDag(nodes, root=len(nodes) - 1)
    validate_decision_dag(dag, cnf)
    return dag
