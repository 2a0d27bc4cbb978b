import random

import pytest

from cylcomp.errors import NotARefutation, UnsoundStep
from cylcomp.resolution import (Axiom, ProofMetrics, Resolve, ResolutionProof,
                                Weaken, check_refutation, eliminate_weakening,
                                exhaustive_min_width, min_depth_at_width,
                                min_refutation_width, proof_to_trace,
                                semantic_replay, trace_to_proof)
from cylcomp.tseitin import Cnf, build_tseitin, single_odd_charge
from cylcomp.cylinder import Graph
from conftest import random_unsat_cnf


UNIT = Cnf(1, [frozenset([1]), frozenset([-1])])
UNIT_PROOF = ResolutionProof([
    Axiom(0, frozenset([1])),
    Axiom(1, frozenset([-1])),
    Resolve(0, 1, 1, frozenset()),
])


def test_unit_refutation_metrics():
    metrics = check_refutation(UNIT, UNIT_PROOF)
    assert metrics == ProofMetrics(size=3, width=1, depth=1)


def test_wrong_pivot_rejected():
    bad = ResolutionProof([
        Axiom(0, frozenset([1])),
        Axiom(1, frozenset([-1])),
        Resolve(1, 0, 1, frozenset()),
    ])
    with pytest.raises(UnsoundStep):
        check_refutation(UNIT, bad)


def test_wrong_resolvent_rejected():
    cnf = Cnf(2, [frozenset([1, 2]), frozenset([-1])])
    bad = ResolutionProof([
        Axiom(0, frozenset([1, 2])),
        Axiom(1, frozenset([-1])),
        Resolve(0, 1, 1, frozenset()),
    ])
    with pytest.raises(UnsoundStep):
        check_refutation(cnf, bad)


def test_not_a_refutation():
    proof = ResolutionProof([Axiom(0, frozenset([1]))])
    with pytest.raises(NotARefutation):
        check_refutation(UNIT, proof)


def test_weakening_checked_and_removed():
    cnf = Cnf(2, [frozenset([1]), frozenset([-1])])
    proof = ResolutionProof([
        Axiom(0, frozenset([1])),
        Weaken(0, frozenset([1, 2])),       # {x, y}
        Axiom(1, frozenset([-1])),
        Weaken(2, frozenset([-1, 2])),      # {-x, y}
        Resolve(1, 3, 1, frozenset([2])),   # {y}
        Axiom(1, frozenset([-1])),
        Weaken(5, frozenset([-1, -2])),     # {-x, -y}
        Axiom(0, frozenset([1])),
        Resolve(7, 6, 1, frozenset([-2])),  # {-y}
        Resolve(4, 8, 2, frozenset()),
    ])
    before = check_refutation(cnf, proof)
    assert before.width == 2
    cleaned = eliminate_weakening(proof)
    after = check_refutation(cnf, cleaned)
    assert not any(isinstance(s, Weaken) for s in cleaned.steps)
    assert after.size <= before.size
    assert after.width <= before.width
    assert after.depth <= before.depth


def test_eliminate_weakening_identity_on_clean_proof():
    cleaned = eliminate_weakening(UNIT_PROOF)
    assert cleaned.steps == UNIT_PROOF.steps


def test_semantic_replay_accepts_checked_proofs():
    assert semantic_replay(UNIT, UNIT_PROOF) is None


def test_min_width_unit():
    assert min_refutation_width(UNIT, 3) == 1


def test_min_width_four_cycle_against_exhaustive():
    vs = list(range(4))
    adj = {v: [(v - 1) % 4, (v + 1) % 4] for v in vs}
    cnf = build_tseitin(single_odd_charge(Graph(vs, adj), 0))
    saturation = min_refutation_width(cnf, 4)
    exhaustive = exhaustive_min_width(cnf)
    assert saturation == exhaustive


def test_min_width_random_against_exhaustive():
    rng = random.Random(5)
    for trial in range(15):
        cnf = random_unsat_cnf(rng, 4, rng.randint(4, 9), 3)
        assert min_refutation_width(cnf, 4) == exhaustive_min_width(cnf)


def test_min_depth_unit():
    assert min_depth_at_width(UNIT, 1, 5) == 1


def test_min_depth_monotone_in_width():
    rng = random.Random(9)
    for trial in range(8):
        cnf = random_unsat_cnf(rng, 4, rng.randint(4, 9), 3)
        wmin = min_refutation_width(cnf, 4)
        depths = [min_depth_at_width(cnf, w, 40) for w in range(wmin, 5)]
        assert all(d is not None for d in depths)
        assert all(a >= b for a, b in zip(depths, depths[1:]))


def test_trace_round_trip():
    text = proof_to_trace(UNIT, UNIT_PROOF)
    assert text.splitlines()[0] == "p res 1 3"
    back = trace_to_proof(text)
    assert back.steps == UNIT_PROOF.steps
    assert check_refutation(UNIT, back) == ProofMetrics(3, 1, 1)


def test_depth_oracle_on_smallest_compressed_formula():
    # recorded value at the sweep width; finite, no game-round assertion
    from cylcomp.tseitin import compressed_cylinder_tseitin
    from conftest import build_toy
    cc = build_toy(2, 1, (3, 3), 3, 1)
    _, tau = compressed_cylinder_tseitin(cc)
    assert min_depth_at_width(tau, 5, cap=60) == 7
