import pytest

from cylcomp.decision_dag import (DagNode, DecisionDag,
                                  decision_dag_to_resolution,
                                  resolution_to_decision_dag,
                                  validate_decision_dag)
from cylcomp.errors import InvalidDag
from cylcomp.narrow import build_sweep_dag, small_width_refutation
from cylcomp.resolution import check_refutation, eliminate_weakening
from cylcomp.tseitin import Cnf

UNIT = Cnf(1, [frozenset([1]), frozenset([-1])])


def unit_dag():
    nodes = [
        DagNode({1: 0}, output=0),
        DagNode({1: 1}, output=1),
        DagNode({}, query=1, children=(0, 1)),
    ]
    return DecisionDag(nodes, root=2)


def test_unit_dag_round_trip_preserves_shape():
    dag = unit_dag()
    validate_decision_dag(dag, UNIT)
    proof = decision_dag_to_resolution(dag, UNIT)
    metrics = check_refutation(UNIT, proof)
    assert metrics.size == 3 and metrics.width == 1
    back = resolution_to_decision_dag(proof, UNIT)
    assert back.size == dag.size
    assert back.width == dag.width


def test_leaf_must_falsify():
    nodes = [
        DagNode({1: 1}, output=0),   # assignment satisfies clause 0 = {x}
        DagNode({1: 1}, output=1),
        DagNode({}, query=1, children=(0, 1)),
    ]
    with pytest.raises(InvalidDag):
        validate_decision_dag(DecisionDag(nodes, root=2), UNIT)


def test_child_consistency_checked():
    nodes = [
        DagNode({1: 0, 2: 1}, output=0),   # invents a value for variable 2
        DagNode({1: 1}, output=1),
        DagNode({}, query=1, children=(0, 1)),
    ]
    cnf = Cnf(2, [frozenset([1]), frozenset([-1])])
    with pytest.raises(InvalidDag):
        validate_decision_dag(DecisionDag(nodes, root=2), cnf)


def test_sweep_dag_is_valid_and_narrow(toy_k2_small):
    dag, _instance, tau = build_sweep_dag(toy_k2_small)
    validate_decision_dag(dag, tau)
    assert dag.width <= toy_k2_small.k + 3


def test_sweep_round_trip_width_and_size(toy_k2_small):
    proof, tau = small_width_refutation(toy_k2_small)
    metrics = check_refutation(tau, proof)
    dag = resolution_to_decision_dag(proof, tau)
    assert dag.width == metrics.width
    assert dag.size == metrics.size
    proof2 = eliminate_weakening(decision_dag_to_resolution(dag, tau))
    metrics2 = check_refutation(tau, proof2)
    assert metrics2.width == metrics.width
    assert metrics2.size == metrics.size


def test_conversion_handles_weakened_leaves():
    # a dag whose leaf assignment strictly extends the falsifying assignment
    cnf = Cnf(2, [frozenset([1]), frozenset([-1])])
    nodes = [
        DagNode({1: 0, 2: 0}, output=0),
        DagNode({1: 1, 2: 0}, output=1),
        DagNode({2: 0}, query=1, children=(0, 1)),
        DagNode({2: 1, 1: 0}, output=0),
        DagNode({2: 1, 1: 1}, output=1),
        DagNode({2: 1}, query=1, children=(3, 4)),
        DagNode({}, query=2, children=(2, 5)),
    ]
    dag = DecisionDag(nodes, root=6)
    validate_decision_dag(dag, cnf)
    proof = decision_dag_to_resolution(dag, cnf)
    assert check_refutation(cnf, proof).width == 2
    cleaned = eliminate_weakening(proof)
    assert check_refutation(cnf, cleaned).width <= 2
