"""Balanced trees and the series ``R(t, u)``.

Quartic family: rooted plane ternary trees whose leaves are white or
black; the charge is (white leaves) - (black leaves) and a tree of charge 1
is balanced.  General family: rooted plane binary trees whose edges are
solid or dashed; the charge is (solid) - (dashed) and charge 0 is balanced.

``R(t, u) = t + u sum_{n>=1} w_n R^(n+1)`` where ``w_n`` counts balanced trees
with ``n`` inner vertices.  ``(R - t)/u`` counts balanced trees with weight
``u + 1`` per proper balanced subtree, a proper subtree being rooted at an
inner vertex other than the root.  At ``u = -1`` this is ``t - R``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, Iterator, List, Optional, Tuple

from .closedform import Family, binom, gf_main, series_R
from .errors import ConfigurationError, DomainError, InternalError, ResourceError
from .fps import UniSeries
from .maps.graphs import signed_forest_statistic

__all__ = [
    "PlaneTree",
    "tree_R",
    "iter_trees",
    "count_balanced_trees",
    "balanced_tree_table",
    "check_forest_link",
    "TREE_SIZE_LIMIT",
]

# size statistic (white leaves / leaves) up to which trees are listed explicitly
TREE_SIZE_LIMIT = {Family.QUARTIC: 5, Family.GENERAL: 6}

WHITE, BLACK = "white", "black"
SOLID, DASHED = "solid", "dashed"


@dataclass(frozen=True)
class PlaneTree:
    """A node with its ordered children.

    ``colour`` is the leaf colour (quartic) or the colour of the edge to the
    parent (general, ``None`` at the root).
    """

    children: Tuple["PlaneTree", ...]
    colour: Optional[str] = None

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def leaves(self) -> int:
        return 1 if self.is_leaf else sum(c.leaves() for c in self.children)

    def white_leaves(self) -> int:
        if self.is_leaf:
            return int(self.colour == WHITE)
        return sum(c.white_leaves() for c in self.children)

    def inner(self) -> int:
        return 0 if self.is_leaf else 1 + sum(c.inner() for c in self.children)

    def charge(self, family: Family) -> int:
        if family is Family.QUARTIC:
            if self.is_leaf:
                return 1 if self.colour == WHITE else -1
            return sum(c.charge(family) for c in self.children)
        return sum((1 if c.colour == SOLID else -1) + c.charge(family) for c in self.children)

    def is_balanced(self, family: Family) -> bool:
        return self.charge(family) == (1 if family is Family.QUARTIC else 0)

    def proper_subtrees(self) -> Iterator["PlaneTree"]:
        """Subtrees rooted at inner vertices other than the root."""
        for c in self.children:
            if not c.is_leaf:
                yield c
                yield from c.proper_subtrees()

    def proper_balanced(self, family: Family) -> int:
        return sum(1 for s in self.proper_subtrees() if s.is_balanced(family))


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _trees(family: Family, inner: int, edge_colour: Optional[str]) -> Tuple[PlaneTree, ...]:
    arity = 3 if family is Family.QUARTIC else 2
    if inner == 0:
        if family is Family.QUARTIC:
            return (PlaneTree((), WHITE), PlaneTree((), BLACK))
        return (PlaneTree((), edge_colour),)
    child_colours = (None,) if family is Family.QUARTIC else (SOLID, DASHED)
    out: List[PlaneTree] = []
    for sizes in _compositions(inner - 1, arity):
        pools = []
        for s in sizes:
            pools.append([t for col in child_colours for t in _trees(family, s, col)])
        for kids in product(*pools):
            out.append(PlaneTree(tuple(kids), edge_colour))
    return tuple(out)


def iter_trees(family, inner: int) -> Iterator[PlaneTree]:
    """All decorated trees with ``inner`` inner vertices."""
    family = Family.parse(family)
    return iter(_trees(family, inner, None))


def _inner_for_size(family: Family, size: int) -> int:
    # balanced ternary trees with k inner vertices have k + 1 white leaves;
    # binary trees with k inner vertices have k + 1 leaves
    return size - 1


def count_balanced_trees(family, size: int, mode: str = "primitive", u=None) -> Fraction:
    """Brute-force balanced-tree counts of a given size.

    ``size`` is the number of white leaves (quartic) or leaves (general).
    ``primitive`` counts balanced trees without proper balanced subtree;
    ``marked`` returns ``sum u (u + 1)^b`` over balanced trees with ``b``
    proper balanced subtrees.
    """
    family = Family.parse(family)
    if size < 1:
        raise DomainError("size must be positive")
    if size > TREE_SIZE_LIMIT[family]:
        raise ResourceError(f"tree size {size} exceeds the exhaustive limit {TREE_SIZE_LIMIT[family]}")
    if mode not in ("primitive", "marked"):
        raise DomainError(f"unknown mode {mode!r}")
    if mode == "marked":
        if u is None:
            raise DomainError("marked mode needs a value of u")
        u = Fraction(u)
    total = Fraction(0)
    for tree in iter_trees(family, _inner_for_size(family, size)):
        if not tree.is_balanced(family):
            continue
        if family is Family.QUARTIC and tree.white_leaves() != size:
            raise InternalError("balanced ternary tree with unexpected white leaf count")
        if family is Family.GENERAL and tree.leaves() != size:
            raise InternalError("binary tree with unexpected leaf count")
        b = tree.proper_balanced(family)
        if mode == "primitive":
            total += b == 0
        else:
            total += u * (u + 1) ** b
    return total


def balanced_tree_table(family, max_size: int, mode: str = "primitive", u=None) -> Dict[int, Fraction]:
    return {n: count_balanced_trees(family, n, mode, u) for n in range(2, max_size + 1)}


def _weight(family: Family, n: int) -> int:
    if family is Family.QUARTIC:
        return binom(2 * n, n) * binom(3 * n, n) // (n + 1)
    return binom(2 * n, n) ** 2 // (n + 1)


def tree_R(family, u, order: int) -> UniSeries:
    """``R(t, u)`` modulo ``t^(order+1)`` by fixed-point iteration."""
    family = Family.parse(family)
    if order < 1:
        raise ConfigurationError("order must be at least 1")
    u = Fraction(u)
    t = UniSeries.t(order)
    R = t
    # each pass fixes one more coefficient
    for _ in range(order):
        acc = UniSeries(order, [0])
        for n in range(order - 1, 0, -1):
            acc = (acc * R) + UniSeries.constant(order, _weight(family, n))
        new = t + (acc * R * R).scale(u)
        if new == R:
            break
        R = new
    return R


def check_forest_link(N: int) -> Dict[int, Tuple[int, Fraction, Optional[Fraction]]]:
    """Compare signed forest sums with the series prediction.

    For ``n`` faces, ``2 <= n <= N + 2``, the signed sum over quartic maps
    with ``n + 1`` faces is predicted to be ``2 [t^n](t - R) / (n + 1)``,
    which equals ``6 q_(n-2) / (n + 1)`` once ``n >= 3``.  Returns
    ``{n: (brute force, prediction from R, prediction from q)}``.
    """
    if N < 0:
        raise DomainError("N must be non-negative")
    R = series_R(Family.QUARTIC, N + 3)
    Q = gf_main(Family.QUARTIC, max(N, 1))
    out = {}
    for n in range(2, N + 3):
        brute = signed_forest_statistic(n)
        from_r = Fraction(2) * (int(n == 1) - R[n]) / (n + 1)
        from_q = Fraction(6) * Q[n - 2] / (n + 1) if n >= 3 else None
        out[n] = (brute, from_r, from_q)
    return out
