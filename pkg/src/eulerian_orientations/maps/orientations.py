"""Eulerian orientations, labelled maps and the duality between them.

An orientation is stored as the set of *tail* darts: dart ``d`` belongs to
it when its edge is oriented from the origin of ``d`` towards the origin of
``alpha(d)``.  An edge with neither dart in the set is unoriented.

Duality sends an Eulerian orientation of ``M`` to a labelling of the
vertices of ``dual(M)``, which are the faces of ``M``.  Crossing an edge
from its right to its left raises the label by one::

        left face     label l + 1
        -----d----->
        right face    label l

The root face of ``M`` (right of the root dart) gets label 0, hence the
root edge of the dual is labelled 0 -> 1.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

from ..errors import DomainError
from .combmap import ATOMIC, CombMap, dual, dual_inverse
from .generate import bipartite_maps, enumerate_rooted_maps, eulerian_maps, quartic_maps

__all__ = [
    "Direction",
    "Mode",
    "Orientation",
    "LabelledMap",
    "ATOMIC_LABELLED",
    "iter_eulerian_orientations",
    "count_eulerian_orientations",
    "aggregate_eo_count",
    "orientation_duality",
    "orientation_from_labels",
    "labellings",
    "enumerate_labelled_maps",
]


class Direction(enum.Enum):
    FORWARD = 1
    BACKWARD = -1
    NONE = 0


class Mode(str, enum.Enum):
    TOTAL = "total"
    PARTIAL = "partial"
    QUARTIC = "quartic-root-forced"

    @classmethod
    def parse(cls, value) -> "Mode":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise DomainError(f"unknown orientation mode {value!r}") from None


@dataclass(frozen=True)
class Orientation:
    base: CombMap
    tails: FrozenSet[int]

    def direction(self, d: int) -> Direction:
        """Direction of the edge of ``d`` relative to ``d``."""
        if d in self.tails:
            return Direction.FORWARD
        if self.base.alpha[d] in self.tails:
            return Direction.BACKWARD
        return Direction.NONE

    def directions(self) -> List[Direction]:
        """One entry per edge, in the order of ``base.edges()``."""
        return [self.direction(d) for d, _ in self.base.edges()]

    @property
    def is_total(self) -> bool:
        return len(self.tails) == self.base.n_edges

    def imbalance(self) -> List[int]:
        """Outdegree minus indegree at each vertex."""
        m = self.base
        out = [0] * m.n_vertices
        v = m.vertex_of if not m.is_atomic else ()
        for d in self.tails:
            out[v[d]] += 1
            out[v[m.alpha[d]]] -= 1
        return out

    def is_eulerian(self) -> bool:
        return not any(self.imbalance())

    def validate(self) -> List[str]:
        m = self.base
        problems = []
        for d in self.tails:
            if not 0 <= d < m.n_darts:
                problems.append(f"dart {d} out of range")
            elif m.alpha[d] in self.tails:
                problems.append(f"edge of dart {d} oriented both ways")
        if not problems and not self.is_eulerian():
            problems.append("some vertex has indegree different from outdegree")
        return problems


@dataclass(frozen=True)
class LabelledMap:
    """A map with integer vertex labels, indexed like ``base.vertices``."""

    base: CombMap
    labels: Tuple[int, ...]

    def label(self, d: int) -> int:
        """Label of the origin of dart ``d``."""
        return self.labels[self.base.vertex_of[d]]

    def validate(self) -> List[str]:
        m = self.base
        if m.is_atomic:
            return [] if self.labels == (0,) else ["atomic map must carry the single label 0"]
        problems = []
        if len(self.labels) != m.n_vertices:
            return ["one label per vertex is required"]
        for d, a in m.edges():
            if abs(self.label(d) - self.label(a)) != 1:
                problems.append(f"edge ({d} {a}) has labels {self.label(d)}, {self.label(a)}")
        if self.label(m.root) != 0 or self.label(m.alpha[m.root]) != 1:
            problems.append("root edge is not labelled 0 -> 1")
        return problems

    def local_minima(self) -> List[int]:
        """Vertices whose neighbours all carry larger labels."""
        m = self.base
        if m.is_atomic:
            return [0]
        low = [True] * m.n_vertices
        for d in range(m.n_darts):
            if self.label(m.alpha[d]) < self.label(d):
                low[m.vertex_of[d]] = False
        return [i for i, f in enumerate(low) if f]

    def canonical(self) -> "LabelledMap":
        if self.base.is_atomic:
            return self
        new = self.base.canonical_labelling()
        base = self.base.relabel(new)
        labels = [0] * base.n_vertices
        for d in range(self.base.n_darts):
            labels[base.vertex_of[new[d]]] = self.label(d)
        return LabelledMap(base, tuple(labels))


ATOMIC_LABELLED = LabelledMap(ATOMIC, (0,))


# ---------------------------------------------------------------------------
# orientations


def iter_eulerian_orientations(m: CombMap, mode="total") -> Iterator[Orientation]:
    """Every orientation of ``m`` allowed by ``mode``.

    ``total`` and ``quartic-root-forced`` orient every edge with the root
    dart as a tail; the latter also insists that ``m`` is quartic.
    ``partial`` allows unoriented edges and does not constrain the root.
    """
    mode = Mode.parse(mode)
    if m.is_atomic:
        if mode is Mode.QUARTIC:
            raise DomainError("the atomic map is not quartic")
        yield Orientation(m, frozenset())
        return
    if mode is Mode.QUARTIC and any(k != 4 for k in m.vertex_degrees()):
        raise DomainError("map is not quartic")
    edges = m.edges()
    v = m.vertex_of
    ends = [(v[d], v[a]) for d, a in edges]
    choices = (1, -1, 0) if mode is Mode.PARTIAL else (1, -1)
    forced = None
    if mode is not Mode.PARTIAL:
        forced = next(i for i, (d, a) in enumerate(edges) if m.root in (d, a))
    for assignment in itertools.product(choices, repeat=len(edges)):
        if forced is not None:
            want = 1 if edges[forced][0] == m.root else -1
            if assignment[forced] != want:
                continue
        bal = [0] * m.n_vertices
        for (x, y), s in zip(ends, assignment):
            bal[x] += s
            bal[y] -= s
        if any(bal):
            continue
        tails = frozenset(d if s == 1 else a for (d, a), s in zip(edges, assignment) if s)
        yield Orientation(m, tails)


def count_eulerian_orientations(m: CombMap, mode="total") -> int:
    return sum(1 for _ in iter_eulerian_orientations(m, mode))


def aggregate_eo_count(kind: str, size: int) -> int:
    """Brute-force totals: ``general`` (edges), ``quartic`` (vertices), ``partial`` (edges)."""
    if kind == "general":
        return sum(count_eulerian_orientations(m, "total") for m in eulerian_maps(size))
    if kind == "quartic":
        return sum(count_eulerian_orientations(m, "quartic-root-forced") for m in quartic_maps(size))
    if kind == "partial":
        return sum(count_eulerian_orientations(m, "partial") for m in enumerate_rooted_maps(size))
    raise DomainError(f"unknown aggregate {kind!r}")


# ---------------------------------------------------------------------------
# duality with labelled maps


def orientation_duality(eo: Orientation) -> LabelledMap:
    """Labelled map dual to a total Eulerian orientation."""
    m = eo.base
    if m.is_atomic:
        return ATOMIC_LABELLED
    if not eo.is_total:
        raise DomainError("orientation leaves some edge unoriented")
    if m.root not in eo.tails:
        raise DomainError("root edge must be oriented away from the root vertex")
    L = dual(m)
    vL = L.vertex_of
    labels: List[Optional[int]] = [None] * L.n_vertices
    labels[vL[m.root]] = 0
    stack = [vL[m.root]]
    darts_at = L.vertices
    while stack:
        u = stack.pop()
        for d in darts_at[u]:
            step = 1 if d in eo.tails else -1
            w = vL[m.alpha[d]]
            want = labels[u] + step
            if labels[w] is None:
                labels[w] = want
                stack.append(w)
            elif labels[w] != want:
                raise DomainError("orientation is not Eulerian")
    return LabelledMap(L, tuple(labels))


def orientation_from_labels(lm: LabelledMap) -> Orientation:
    """Inverse of :func:`orientation_duality`."""
    problems = lm.validate()
    if problems:
        raise DomainError("; ".join(problems))
    if lm.base.is_atomic:
        return Orientation(ATOMIC, frozenset())
    m = dual_inverse(lm.base)
    tails = frozenset(d for d in range(m.n_darts) if lm.label(m.alpha[d]) == lm.label(d) + 1)
    return Orientation(m, tails)


def labellings(
    m: CombMap, allowed: Optional[Dict[int, Tuple[int, ...]]] = None
) -> Iterator[Tuple[int, ...]]:
    """All valid labellings of ``m`` (root edge 0 -> 1, adjacent labels differ by one).

    ``allowed`` optionally restricts the labels of given vertices.
    """
    if m.is_atomic:
        if allowed is None or 0 in allowed.get(0, (0,)):
            yield (0,)
        return
    if not m.is_bipartite():
        return
    adj = m._adjacency()
    r0, r1 = m.vertex_of[m.root], m.vertex_of[m.alpha[m.root]]
    order = [r0, r1]
    seen = {r0, r1}
    i = 0
    while i < len(order):
        for w in adj[order[i]]:
            if w not in seen:
                seen.add(w)
                order.append(w)
        i += 1
    labels: List[Optional[int]] = [None] * m.n_vertices

    def ok(u: int, value: int) -> bool:
        if allowed is not None and u in allowed and value not in allowed[u]:
            return False
        return all(labels[w] is None or abs(labels[w] - value) == 1 for w in adj[u])

    def rec(k: int) -> Iterator[Tuple[int, ...]]:
        if k == len(order):
            yield tuple(labels)
            return
        u = order[k]
        if k == 0:
            cands = (0,)
        elif k == 1:
            cands = (1,)
        else:
            base = next(labels[w] for w in adj[u] if labels[w] is not None)
            cands = (base - 1, base + 1)
        for value in cands:
            if ok(u, value):
                labels[u] = value
                yield from rec(k + 1)
                labels[u] = None

    yield from rec(0)


def enumerate_labelled_maps(n_edges: int, **map_filters) -> Iterator[LabelledMap]:
    """Every labelled map with ``n_edges`` edges (the atomic one when zero).

    Extra keyword arguments restrict the underlying bipartite maps, e.g.
    ``face_degrees={4}`` for labelled quadrangulations.
    """
    if n_edges == 0:
        yield ATOMIC_LABELLED
        return
    source = enumerate_rooted_maps(n_edges, **map_filters) if map_filters else bipartite_maps(n_edges)
    for m in source:
        for labels in labellings(m):
            yield LabelledMap(m, labels)
