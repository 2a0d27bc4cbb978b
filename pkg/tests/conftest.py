import random

import pytest

from cylcomp.compression import CompressedCylinder
from cylcomp.decision_dag import DagNode, DecisionDag
from cylcomp.lifting import xor_block_map, xor_value
from cylcomp.params import make_explicit_parameters
from cylcomp.tseitin import Cnf, brute_force_satisfiable

# the toy zoo: small enough to enumerate, varied enough to exercise both
# parities of k, degenerate ears, and property-P1-satisfying moduli
TOY_PARAMS = [
    (2, 1, (3, 3), 3, 1),
    (2, 1, (3, 6), 6, 2),
    (2, 1, (6, 15), 30, 3),
    (3, 1, (3, 3, 3), 3, 1),
    (3, 1, (6, 10, 15), 30, 2),
    (3, 1, (48, 120, 80), 240, 5),
]


def build_toy(k, c, moduli, length, ear):
    return CompressedCylinder.build(
        make_explicit_parameters(k, c, moduli, length, ear))


@pytest.fixture(scope="session")
def toy_cylinders():
    return [build_toy(*spec) for spec in TOY_PARAMS]


@pytest.fixture(scope="session")
def toy_k2():
    return build_toy(2, 1, (6, 15), 30, 3)


@pytest.fixture(scope="session")
def toy_k2_small():
    return build_toy(2, 1, (3, 3), 3, 1)


@pytest.fixture(scope="session")
def toy_k3():
    return build_toy(3, 1, (48, 120, 80), 240, 5)


@pytest.fixture(scope="session")
def toy_k3_small():
    return build_toy(3, 1, (3, 3, 3), 3, 1)


def random_cnf(rng, num_vars, num_clauses, max_width):
    clauses = []
    for _ in range(num_clauses):
        width = rng.randint(1, max_width)
        variables = rng.sample(range(1, num_vars + 1), min(width, num_vars))
        clauses.append(frozenset(
            v if rng.random() < 0.5 else -v for v in variables))
    return Cnf(num_vars, clauses)


def random_unsat_cnf(rng, num_vars, num_clauses, max_width):
    while True:
        cnf = random_cnf(rng, num_vars, num_clauses, max_width)
        if not brute_force_satisfiable(cnf):
            return cnf


def random_composed_tree(cnf, size, seed, stop_probability=0.6):
    """A random pruned decision tree solving the XOR-composed search problem
    of an unsatisfiable source formula."""
    bmap = xor_block_map(cnf.num_vars, size)
    rng = random.Random(seed)
    variables = [bmap.y(i, j) for i in range(1, cnf.num_vars + 1)
                 for j in range(1, size + 1)]
    nodes = []

    def falsified(assignment):
        for idx, clause in enumerate(cnf.clauses):
            good = True
            for lit in clause:
                bits = [assignment.get(bmap.y(abs(lit), j))
                        for j in range(1, size + 1)]
                if None in bits or xor_value(bits) != (0 if lit > 0 else 1):
                    good = False
                    break
            if good:
                return idx
        return None

    def build(assignment):
        out = falsified(assignment)
        unassigned = [v for v in variables if v not in assignment]
        if out is not None and (not unassigned or rng.random() < stop_probability):
            nodes.append(DagNode(dict(assignment), output=out))
            return len(nodes) - 1
        var = rng.choice(unassigned)
        zero = build({**assignment, var: 0})
        one = build({**assignment, var: 1})
        nodes.append(DagNode(dict(assignment), query=var, children=(zero, one)))
        return len(nodes) - 1

    root = build({})
    return DecisionDag(nodes, root=root), bmap
