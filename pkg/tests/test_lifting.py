import random
from itertools import product
from math import log2

import pytest

from cylcomp.decision_dag import validate_decision_dag
from cylcomp.errors import ExpansionBudget, InvalidRange
from cylcomp.lifting import (extract_decision_tree, full_composed_tree,
                             ind_block_map, ind_lift, ind_lift_3cnf,
                             pull_back_xor, simulate_ind_refutation,
                             simulate_xor_refutation, validate_composed_tree,
                             width_from_size_bound, xor_block_map, xor_lift)
from cylcomp.resolution import (Axiom, Resolve, ResolutionProof,
                                check_refutation)
from cylcomp.tseitin import Cnf, brute_force_satisfiable
from conftest import random_composed_tree, random_unsat_cnf

UNIT = Cnf(1, [frozenset([1]), frozenset([-1])])
UNIT_PROOF = ResolutionProof([
    Axiom(0, frozenset([1])),
    Axiom(1, frozenset([-1])),
    Resolve(0, 1, 1, frozenset()),
])


def test_xor_expansion_of_two_literal_clause():
    # (x4 or not-x5) under a size-2 XOR block per variable
    cnf = Cnf(5, [frozenset([4, -5])])
    lifted, bmap = xor_lift(cnf, 2)
    y41, y42 = bmap.y(4, 1), bmap.y(4, 2)
    y51, y52 = bmap.y(5, 1), bmap.y(5, 2)
    expected = {
        frozenset([y41, y42, y51, -y52]),
        frozenset([y41, y42, -y51, y52]),
        frozenset([-y41, -y42, y51, -y52]),
        frozenset([-y41, -y42, -y51, y52]),
    }
    assert set(lifted.clauses) == expected
    assert lifted.clause_count == 4
    assert lifted.width == 4


def test_xor_rejects_degenerate_size():
    with pytest.raises(InvalidRange):
        xor_lift(UNIT, 1)


def test_xor_falsification_pulls_back():
    rng = random.Random(2)
    for w, size in product((1, 2, 3), (2, 3)):
        cnf = Cnf(w, [frozenset(v if rng.random() < 0.5 else -v
                                for v in range(1, w + 1))])
        lifted, bmap = xor_lift(cnf, size)
        total_vars = bmap.num_vars
        for clause in lifted.clauses:
            for bits in product((0, 1), repeat=total_vars):
                assignment = dict(zip(range(1, total_vars + 1), bits))
                if any(assignment[abs(l)] == (1 if l > 0 else 0) for l in clause):
                    continue
                source = pull_back_xor(bmap, assignment)
                src_clause = cnf.clauses[0]
                assert all(source[abs(l)] == (0 if l > 0 else 1)
                           for l in src_clause)


def test_ind_lift_single_variable():
    cnf = Cnf(1, [frozenset([1])])
    lifted, bmap = ind_lift(cnf, 2)
    x1, x2, y1, y2 = bmap.x(1, 1), bmap.x(1, 2), bmap.y(1, 1), bmap.y(1, 2)
    assert set(lifted.clauses) == {
        frozenset([-x1, y1]), frozenset([-x2, y2]), frozenset([x1, x2])}


def test_ind_lift_width_doubles():
    rng = random.Random(4)
    cnf = random_unsat_cnf(rng, 4, 8, 3)
    lifted, _ = ind_lift(cnf, 4)
    body_widths = [len(c) for c, org in zip(lifted.clauses, lifted.clause_origin)
                   if not (isinstance(org, tuple) and org[0] == "or")]
    assert max(body_widths) == 2 * cnf.width


def test_ind3_all_clauses_narrow():
    rng = random.Random(6)
    cnf = random_unsat_cnf(rng, 3, 6, 3)
    for m in (2, 4):
        lifted, _ = ind_lift_3cnf(cnf, m)
        assert lifted.width <= 3
        w = cnf.width
        bound = 12 * (w * cnf.clause_count * m ** w + cnf.num_vars * m)
        assert lifted.clause_count <= bound
        assert lifted.num_vars <= bound


def test_lifts_preserve_unsatisfiability():
    rng = random.Random(8)
    for _ in range(5):
        cnf = random_unsat_cnf(rng, 3, 6, 2)
        for lifted, _ in (xor_lift(cnf, 2), ind_lift(cnf, 2)):
            assert not brute_force_satisfiable(lifted)
    # the 3-CNF variant spends variables fast; check it at unit scale
    lifted, _ = ind_lift_3cnf(UNIT, 3)
    assert lifted.num_vars <= 26
    assert not brute_force_satisfiable(lifted)
    satisfiable = Cnf(1, [frozenset([1])])
    lifted_sat, _ = ind_lift_3cnf(satisfiable, 3)
    assert brute_force_satisfiable(lifted_sat)


def test_expansion_budget():
    wide = Cnf(6, [frozenset(range(1, 7))])
    with pytest.raises(ExpansionBudget):
        xor_lift(wide, 4, budget=100)


def test_simulate_xor_unit():
    lifted_proof, lifted_cnf = simulate_xor_refutation(UNIT_PROOF, UNIT, 2)
    metrics = check_refutation(lifted_cnf, lifted_proof)
    assert metrics.width <= 2


def test_simulate_xor_width_bound_random():
    rng = random.Random(11)
    from cylcomp.narrow import small_width_refutation
    from conftest import build_toy
    cc = build_toy(2, 1, (3, 3), 3, 1)
    proof, tau = small_width_refutation(cc)
    w = check_refutation(tau, proof).width
    for size in (2, 3):
        lifted_proof, lifted_cnf = simulate_xor_refutation(proof, tau, size)
        metrics = check_refutation(lifted_cnf, lifted_proof)
        assert metrics.width <= size * w + size - 1


def test_simulate_ind_unit_and_family_sizes():
    for m in (2, 3, 4):
        lifted_proof, lifted_cnf = simulate_ind_refutation(UNIT_PROOF, UNIT, m)
        metrics = check_refutation(lifted_cnf, lifted_proof)
        assert metrics.size <= 3 * 3 * m ** 2


def test_simulate_ind_random():
    cnf = Cnf(2, [frozenset([1]), frozenset([-1, 2]), frozenset([-2])])
    proof = ResolutionProof([
        Axiom(0, frozenset([1])), Axiom(1, frozenset([-1, 2])),
        Resolve(0, 1, 1, frozenset([2])), Axiom(2, frozenset([-2])),
        Resolve(2, 3, 2, frozenset()),
    ])
    sizes = {}
    for m in (2, 3, 4):
        lifted_proof, lifted_cnf = simulate_ind_refutation(proof, cnf, m)
        metrics = check_refutation(lifted_cnf, lifted_proof)
        sizes[m] = metrics.size
        w = check_refutation(cnf, proof).width
        assert metrics.size <= 4 * proof.size * m ** (w + 1)
    assert sizes[2] < sizes[3] < sizes[4]


def test_extract_full_tree_single_variable():
    tree, bmap = full_composed_tree(UNIT, 2)
    assert tree.size == 7 and tree.width == 2
    extracted = extract_decision_tree(tree, 2)
    validate_decision_dag(extracted, UNIT)
    assert extracted.width == 1
    assert extracted.depth <= int(log2(tree.size))


def test_extract_random_trees():
    rng = random.Random(17)
    checked = 0
    for trial in range(60):
        num_vars = rng.randint(1, 3)
        size = rng.randint(2, 3)
        cnf = random_unsat_cnf(rng, num_vars, rng.randint(2, 6), num_vars)
        tree, bmap = random_composed_tree(cnf, size, seed=trial)
        validate_composed_tree(tree, cnf, bmap)
        extracted = extract_decision_tree(tree, size)
        validate_decision_dag(extracted, cnf)
        assert extracted.width <= tree.width / (size - 1)
        assert extracted.depth <= int(log2(tree.size))
        checked += 1
    assert checked == 60


def test_width_from_size_bound():
    assert width_from_size_bound(1, 3) == 0
    # larger gadgets force the width down for the same size
    assert width_from_size_bound(10 ** 6, 15) <= width_from_size_bound(10 ** 6, 3)


def test_block_map_invertible():
    for bmap in (xor_block_map(4, 3), ind_block_map(3, 5)):
        seen = set()
        for var in range(1, bmap.num_vars + 1):
            i = bmap.block_of(var)
            kind, j = bmap.kind_of(var)
            rebuilt = {"x": getattr(bmap, "x", None),
                       "y": bmap.y,
                       "ext": bmap.ext}[kind](i, j)
            assert rebuilt == var
            seen.add(var)
        assert len(seen) == bmap.num_vars
