from fractions import Fraction

import pytest

from eulerian_orientations.closedform import series_R
from eulerian_orientations.errors import DomainError, ResourceError
from eulerian_orientations.trees import (
    balanced_tree_table,
    check_forest_link,
    count_balanced_trees,
    iter_trees,
    tree_R,
)


def catalan_like(arity, k):
    # plane trees of given arity with k inner vertices
    from math import comb

    return comb(arity * k, k) // ((arity - 1) * k + 1)


@pytest.mark.parametrize("k", range(0, 4))
def test_tree_counts(k):
    # ternary trees carry a colour per leaf; binary trees a colour per edge
    assert sum(1 for _ in iter_trees("quartic", k)) == catalan_like(3, k) * 2 ** (2 * k + 1)
    assert sum(1 for _ in iter_trees("general", k)) == catalan_like(2, k) * 2 ** (2 * k)


def test_primitive_counts():
    assert [count_balanced_trees("quartic", n) for n in (2, 3)] == [3, 12]
    assert [count_balanced_trees("general", n) for n in (2, 3, 4)] == [2, 4, 20]
    R = series_R("quartic", 4)
    assert balanced_tree_table("quartic", 4) == {n: -R[n] for n in (2, 3, 4)}


@pytest.mark.parametrize("family,top", [("quartic", 4), ("general", 5)])
@pytest.mark.parametrize("u", [1, 2, -1, Fraction(1, 3)])
def test_marked_sums(family, top, u):
    Ru = tree_R(family, u, top)
    for n in range(2, top + 1):
        assert count_balanced_trees(family, n, "marked", u) == Ru[n]


def test_tree_R_at_minus_one():
    for fam in ("quartic", "general"):
        assert tree_R(fam, -1, 8) == series_R(fam, 8)


def test_errors():
    with pytest.raises(ResourceError):
        count_balanced_trees("quartic", 6)
    with pytest.raises(DomainError):
        count_balanced_trees("general", 2, "marked")
    with pytest.raises(DomainError):
        count_balanced_trees("general", 2, "weird")


def test_forest_link():
    table = check_forest_link(2)
    assert table[2][0] == table[2][1] == 2
    assert table[3] == (6, 6, 6)
    assert table[4] == (42, 42, 42)


def test_general_R_at_one():
    # R(t, 1) = t + 2t^2 + ...: w_1 = 2 contributes 2 R^2
    assert tree_R("general", 1, 3)[2] == 2
    assert count_balanced_trees("general", 2, "marked", 1) == 2
