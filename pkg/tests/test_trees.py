"""Tree truncations, KB order and path search."""

import itertools

import pytest

from ramseykit import TreeGen, Universe, bounded_subtree, find_full_path, kb_order, prefix_closure
from ramseykit.trees import EmptyTreeError, kb_compare


def tree_of(*peaks):
    return TreeGen(prefix_closure(peaks))


def test_treegen_requires_prefix_closure():
    with pytest.raises(ValueError):
        TreeGen([(0, 1)])
    t = tree_of((0, 1))
    assert () in t and (0,) in t and (0, 1) in t


def test_find_full_path_examples():
    u = Universe(4, 3)
    assert find_full_path(tree_of((0, 1, 2)), u) == (0, 1, 2)
    assert find_full_path(tree_of((1,)), u) is None
    assert find_full_path(tree_of((0, 2, 3), (1, 2)), u) == (0, 2, 3)


def test_kb_order_example():
    t = TreeGen([(), (0,), (1,), (0, 1)])
    assert kb_order(t).elements == ((0, 1), (0,), (1,), ())


def test_kb_order_empty():
    with pytest.raises(EmptyTreeError):
        kb_order(TreeGen([]))


def test_kb_order_single():
    assert kb_order(TreeGen([()])).elements == ((),)


def test_kb_prefix_chain_descends():
    t = tree_of((0, 2, 3))
    order = kb_order(t).elements
    chain = [(0, 2, 3), (0, 2), (0,), ()]
    positions = [order.index(n) for n in chain]
    assert positions == sorted(positions)


def test_kb_comparator_is_total_order():
    t = tree_of((0, 1, 3), (0, 2), (1, 2))
    nodes = list(t.nodes)
    for a, b in itertools.product(nodes, nodes):
        c = kb_compare(a, b)
        assert c == -kb_compare(b, a)
        assert (c == 0) == (a == b)
    for a, b, c in itertools.product(nodes, nodes, nodes):
        if kb_compare(a, b) <= 0 and kb_compare(b, c) <= 0:
            assert kb_compare(a, c) <= 0


def test_bounded_subtree_examples():
    t = tree_of((0, 2, 3), (1, 5))
    sub = bounded_subtree(t, (1, 3, 4))
    assert sub.nodes == prefix_closure([(0, 2, 3), (1,)])
    assert bounded_subtree(tree_of((0,)), ()).nodes == frozenset({()})
    assert bounded_subtree(TreeGen([]), (1, 2)).nodes == frozenset()


def test_bounded_subtree_full_path_soundness():
    u = Universe(5, 3)
    t = tree_of((0, 2, 3), (1, 2, 4), (0, 4))
    f = (1, 2, 4)
    p = find_full_path(bounded_subtree(t, f), u)
    assert p is not None
    assert p in t and len(p) == u.L
    assert all(a <= b for a, b in zip(p, f))
