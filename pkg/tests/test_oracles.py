"""The oracles themselves against hand-checkable cases."""

from oracles import (
    algorithm_a_dense,
    block_sensitivity_packing,
    decision_tree_depth_plain,
    interpolate,
    ndeg_by_enumeration,
)


def test_interpolate_small():
    assert interpolate([0, 1, 1, 1], 2) == {1: 1, 2: 1, 3: -1}
    assert interpolate([0, 1, 1, 0], 2) == {1: 1, 2: 1, 3: -2}


def test_packing_or2():
    assert block_sensitivity_packing([0, 1, 1, 1], 2, 0) == 2
    assert block_sensitivity_packing([0, 1, 1, 1], 2, 3) == 1


def test_plain_depth():
    assert decision_tree_depth_plain([0, 1, 1, 1], 2) == 2
    assert decision_tree_depth_plain([0, 1, 0, 1], 2) == 1
    assert decision_tree_depth_plain([1, 1, 1, 1], 2) == 0


def test_ndeg_enumeration():
    assert ndeg_by_enumeration([0, 0, 0, 1], 2) == 2
    assert ndeg_by_enumeration([0, 1, 1, 1], 2) == 1
    assert ndeg_by_enumeration([0, 1, 1, 0], 2) == 1


def test_dense_evaluator_or2():
    assert algorithm_a_dense({1: 1, 2: 1, 3: -1}, 2, 0) == (0, 1, 2)
