"""Graph invariants of the underlying multigraph of a map."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, List, Optional, Tuple

from .. import config
from ..errors import DomainError
from .combmap import CombMap
from .generate import enumerate_rooted_maps, quartic_maps

__all__ = ["tutte_polynomial", "tutte_sum_33", "signed_forest_statistic", "predicted_forest_statistic"]

Edge = Tuple[int, int]


def _connected(u: int, v: int, edges: Iterable[Edge]) -> bool:
    parent = {}

    def find(a):
        while parent.get(a, a) != a:
            a = parent[a]
        return a

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return find(u) == find(v)


def _canonical(edges: Iterable[Edge]) -> Tuple[Edge, ...]:
    return tuple(sorted((min(a, b), max(a, b)) for a, b in edges))


@lru_cache(maxsize=None)
def _tutte(edges: Tuple[Edge, ...], x: Fraction, y: Fraction) -> Fraction:
    if not edges:
        return Fraction(1)
    (u, v), rest = edges[0], edges[1:]
    if u == v:
        return y * _tutte(rest, x, y)
    contracted = _canonical((u if a == v else a, u if b == v else b) for a, b in rest)
    if not _connected(u, v, rest):
        return x * _tutte(contracted, x, y)
    return _tutte(rest, x, y) + _tutte(contracted, x, y)


def tutte_polynomial(m: CombMap, x, y) -> Fraction:
    """``T_M(x, y)`` by deletion and contraction; loops give ``y``, bridges ``x``."""
    return _tutte(_canonical(m.endpoints()) if not m.is_atomic else (), Fraction(x), Fraction(y))


def tutte_sum_33(n_edges: int, max_edges: Optional[int] = None) -> Fraction:
    """Sum of ``T_M(3, 3)`` over rooted planar maps with ``n_edges`` edges."""
    return sum(
        (tutte_polynomial(m, 3, 3) for m in enumerate_rooted_maps(n_edges, max_edges=max_edges)),
        Fraction(0),
    )


def _forest_sum(m: CombMap) -> int:
    """Sum of ``(-1)^(cc(F) - 1)`` over spanning forests avoiding the root edge."""
    root_edge = min(m.root, m.alpha[m.root])
    v = m.vertex_of
    others: List[Edge] = [(v[d], v[a]) for d, a in m.edges() if d != root_edge]
    total = 0
    V = m.n_vertices
    for k in range(0, min(len(others), V - 1) + 1):
        for subset in combinations(others, k):
            if _is_forest(subset, V):
                total += (-1) ** (V - k - 1)
    return total


def _is_forest(edges: Iterable[Edge], n_vertices: int) -> bool:
    parent = list(range(n_vertices))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def signed_forest_statistic(n_faces: int, max_edges: Optional[int] = None) -> int:
    """Signed forest count over quartic maps with ``n_faces + 1`` faces.

    Such maps have ``n_faces - 1`` vertices and ``2 (n_faces - 1)`` edges.
    """
    if n_faces < 2:
        raise DomainError("quartic maps have at least 3 faces")
    n_vertices = n_faces - 1
    limit = config.max_edges() if max_edges is None else max_edges
    config.require(2 * n_vertices, limit, "edge count")
    return sum(_forest_sum(m) for m in quartic_maps(n_vertices, max_edges=limit))


def predicted_forest_statistic(n_faces: int, q_coefficient) -> Fraction:
    """``6 q / (n + 1)`` where ``q`` counts quartic Eulerian orientations with ``n`` faces."""
    return Fraction(6 * q_coefficient, n_faces + 1)
