import random

from cylcomp.lifting import ind_block_map, ind_lift, simulate_ind_refutation
from cylcomp.resolution import (Axiom, Resolve, ResolutionProof,
                                check_refutation)
from cylcomp.restriction import (apply_restriction_cnf,
                                 apply_restriction_proof,
                                 exact_width_distribution,
                                 restriction_assignment, restriction_to_text,
                                 restriction_width_tail, sample_restriction)
from cylcomp.tseitin import Cnf
from conftest import random_cnf


def as_clause_set(cnf):
    return sorted(sorted(c) for c in cnf.clauses)


def test_restriction_recovers_source():
    rng = random.Random(0)
    for seed in range(100):
        cnf = random_cnf(rng, 4, 5, 3)
        lifted, bmap = ind_lift(cnf, 3)
        rho = sample_restriction(bmap, seed)
        back = apply_restriction_cnf(lifted, bmap, rho)
        assert back.num_vars == cnf.num_vars
        assert as_clause_set(back) == as_clause_set(cnf)


def test_restriction_satisfies_encoders():
    bmap = ind_block_map(3, 5)
    lifted, _ = ind_lift(Cnf(3, [frozenset([1, 2, 3])]), 5)
    for seed in range(20):
        rho = sample_restriction(bmap, seed)
        value = restriction_assignment(bmap, rho)
        for clause, org in zip(lifted.clauses, lifted.clause_origin):
            if isinstance(org, tuple) and org[0] == "or":
                assert any(value[abs(l)] == (1 if l > 0 else 0)
                           for l in clause)


def test_restriction_deterministic_and_serializable():
    bmap = ind_block_map(4, 3)
    a = sample_restriction(bmap, 7)
    b = sample_restriction(bmap, 7)
    assert a == b
    text = restriction_to_text(a)
    assert text.splitlines()[0].startswith("block 1 ptr ")
    assert len(text.splitlines()) == 4


def test_restricted_proofs_stay_valid():
    cnf = Cnf(2, [frozenset([1]), frozenset([-1, 2]), frozenset([-2])])
    proof = ResolutionProof([
        Axiom(0, frozenset([1])), Axiom(1, frozenset([-1, 2])),
        Resolve(0, 1, 1, frozenset([2])), Axiom(2, frozenset([-2])),
        Resolve(2, 3, 2, frozenset()),
    ])
    lifted_proof, lifted_cnf = simulate_ind_refutation(proof, cnf, 3)
    lifted_metrics = check_refutation(lifted_cnf, lifted_proof)
    bmap = ind_block_map(cnf.num_vars, 3)
    for seed in range(25):
        rho = sample_restriction(bmap, seed)
        rcnf = apply_restriction_cnf(lifted_cnf, bmap, rho)
        rproof = apply_restriction_proof(lifted_proof, lifted_cnf, bmap, rho, rcnf)
        metrics = check_refutation(rcnf, rproof)
        assert metrics.depth <= lifted_metrics.depth


def test_exact_single_block_tail():
    for m in (2, 3, 4):
        bmap = ind_block_map(1, m)
        dist = exact_width_distribution(frozenset([bmap.y(1, 1)]), bmap)
        assert abs(dist.get(1, 0.0) - 1.0 / m) < 1e-12


def test_zero_block_clause_restricts_to_zero():
    bmap = ind_block_map(2, 3)
    rows = restriction_width_tail(frozenset(), bmap, trials=50, seed=0)
    assert all(row[1] == 0.0 for row in rows)


def test_tail_bound_holds():
    bmap = ind_block_map(6, 4)
    clause = frozenset(bmap.y(i, 1) for i in range(1, 7))
    rows = restriction_width_tail(clause, bmap, trials=20_000, seed=1)
    for (w, empirical, bound, low, high) in rows:
        assert low <= bound + 1e-9 or empirical <= bound


def test_gadget_size_one_is_deterministic():
    bmap = ind_block_map(3, 1)
    rho_a = sample_restriction(bmap, 1)
    rho_b = sample_restriction(bmap, 99)
    assert rho_a == rho_b  # the pointer is forced and no y values remain
    assert rho_a.pointers == (1, 1, 1)
    cnf = Cnf(3, [frozenset([1, -2]), frozenset([3])])
    lifted, bmap = ind_lift(cnf, 1)
    back = apply_restriction_cnf(lifted, bmap, rho_a)
    assert as_clause_set(back) == as_clause_set(cnf)
