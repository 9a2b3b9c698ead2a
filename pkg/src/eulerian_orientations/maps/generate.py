"""Exhaustive generation of rooted planar maps.

A rooted map has no non-trivial automorphism, so it is determined by its
canonical labelling (see :meth:`CombMap.canonical_labelling`).  The search
below builds canonically labelled rotation systems dart by dart: when dart
``d`` is processed, ``alpha(d)`` and then ``sigma(d)`` are either a dart
already labelled or the next fresh label.  Each rooted map is produced once
and no isomorphism test is needed.

Vertex degrees are pruned during the search by tracking the partial
``sigma`` chains.  Face-degree constraints are handled on the dual.
"""

from __future__ import annotations

from typing import Callable, Container, Iterator, Optional, Union

from .. import config
from .combmap import ATOMIC, CombMap, dual_inverse

__all__ = [
    "EVEN",
    "enumerate_rooted_maps",
    "count_rooted_maps",
    "quartic_maps",
    "eulerian_maps",
    "bipartite_maps",
    "quadrangulations",
]

DegreeRule = Union[None, Container[int], Callable[[int], bool]]


class _Even:
    def __contains__(self, k: int) -> bool:
        return k % 2 == 0

    def __repr__(self) -> str:
        return "EVEN"


EVEN = _Even()


def _as_test(rule: DegreeRule) -> Callable[[int], bool]:
    if rule is None:
        return lambda k: True
    if callable(rule) and not hasattr(rule, "__contains__"):
        return rule
    return lambda k: k in rule


def _max_allowed(test: Callable[[int], bool], limit: int) -> int:
    for k in range(limit, 0, -1):
        if test(k):
            return k
    return 0


def _search(n_edges: int, vtest, rtest, planar: bool) -> Iterator[CombMap]:
    n = 2 * n_edges
    vmax = _max_allowed(vtest, n)
    rmax = _max_allowed(rtest, n)
    if rmax == 0:
        return
    sigma = [-1] * n
    alpha = [-1] * n
    has_pre = [False] * n
    # partial sigma chains: head -> tail, tail -> head, head -> length
    tail_of = [-1] * n
    head_of = [-1] * n
    length = [0] * n
    rooted = [False] * n

    def fresh(x: int) -> None:
        tail_of[x] = head_of[x] = x
        length[x] = 1
        rooted[x] = x == 0

    fresh(0)
    closed = [0]  # number of completed vertices

    def link(d: int, e: int) -> Optional[tuple]:
        """Set sigma[d] = e if the degree rules allow it; return undo data."""
        h = head_of[d]
        if h == e:
            k = length[h]
            if not (rtest(k) if rooted[h] else vtest(k)):
                return None
            sigma[d] = e
            has_pre[e] = True
            closed[0] += 1
            return ("close",)
        k = length[h] + length[e]
        root_chain = rooted[h] or rooted[e]
        if k > (rmax if root_chain else vmax):
            return None
        t = tail_of[e]
        saved = (h, e, t, length[h], rooted[h])
        sigma[d] = e
        has_pre[e] = True
        tail_of[h] = t
        head_of[t] = h
        length[h] = k
        rooted[h] = root_chain
        return ("merge", saved)

    def unlink(d: int, e: int, undo: tuple) -> None:
        sigma[d] = -1
        has_pre[e] = False
        if undo[0] == "close":
            closed[0] -= 1
            return
        h, e_, t, len_h, rooted_h = undo[1]
        tail_of[h] = d
        head_of[d] = h
        head_of[t] = e_
        tail_of[e_] = t
        length[h] = len_h
        rooted[h] = rooted_h

    def finish() -> Optional[CombMap]:
        if planar:
            faces = 0
            seen = [False] * n
            for s in range(n):
                if not seen[s]:
                    faces += 1
                    x = s
                    while not seen[x]:
                        seen[x] = True
                        x = sigma[alpha[x]]
            if closed[0] - n_edges + faces != 2:
                return None
        return CombMap(tuple(sigma), tuple(alpha), 0)

    def step_sigma(d: int, L: int) -> Iterator[CombMap]:
        if L < n:
            fresh(L)
            undo = link(d, L)
            if undo is not None:
                yield from step(d + 1, L + 1)
                unlink(d, L, undo)
        for e in range(L):
            if not has_pre[e]:
                undo = link(d, e)
                if undo is not None:
                    yield from step(d + 1, L)
                    unlink(d, e, undo)

    def step(d: int, L: int) -> Iterator[CombMap]:
        if d == n:
            m = finish()
            if m is not None:
                yield m
            return
        if d >= L:
            return  # the darts seen so far form a closed component
        if alpha[d] >= 0:
            yield from step_sigma(d, L)
            return
        if L < n:
            alpha[d], alpha[L] = L, d
            fresh(L)
            yield from step_sigma(d, L + 1)
            alpha[d] = alpha[L] = -1
        for e in range(d + 1, L):
            if alpha[e] < 0:
                alpha[d], alpha[e] = e, d
                yield from step_sigma(d, L)
                alpha[d] = alpha[e] = -1

    yield from step(0, 1)


def enumerate_rooted_maps(
    n_edges: int,
    filter: Optional[Callable[[CombMap], bool]] = None,
    *,
    vertex_degrees: DegreeRule = None,
    root_vertex_degrees: DegreeRule = None,
    face_degrees: DegreeRule = None,
    root_face_degrees: DegreeRule = None,
    max_edges: Optional[int] = None,
    planar: bool = True,
) -> Iterator[CombMap]:
    """Yield every rooted planar map with ``n_edges`` edges, once each.

    Degree rules are sets (or any container, or a predicate) of allowed
    degrees; the root rules default to the general ones.  When only face
    rules are given the search runs on dual maps.  ``filter`` is applied last.
    Maps are yielded in canonical labelling.  ``planar=False`` keeps all
    genera, which is only useful for testing the search.
    """
    if n_edges < 0:
        raise ValueError("n_edges must be non-negative")
    config.require(n_edges, config.max_edges() if max_edges is None else max_edges, "edge count")
    if root_vertex_degrees is None:
        root_vertex_degrees = vertex_degrees
    if root_face_degrees is None:
        root_face_degrees = face_degrees
    vt, rvt = _as_test(vertex_degrees), _as_test(root_vertex_degrees)
    ft, rft = _as_test(face_degrees), _as_test(root_face_degrees)

    if n_edges == 0:
        if rvt(0) and rft(0) and (filter is None or filter(ATOMIC)):
            yield ATOMIC
        return

    on_dual = face_degrees is not None and vertex_degrees is None and root_vertex_degrees is None
    if on_dual:
        for d in _search(n_edges, ft, rft, planar):
            m = dual_inverse(d).canonical()
            if filter is None or filter(m):
                yield m
        return
    check_faces = face_degrees is not None or root_face_degrees is not None
    for m in _search(n_edges, vt, rvt, planar):
        if check_faces:
            fdeg = m.face_degrees()
            rf = m.root_face
            if not all((rft if i == rf else ft)(k) for i, k in enumerate(fdeg)):
                continue
        if filter is None or filter(m):
            yield m


def count_rooted_maps(n_edges: int, **kwargs) -> int:
    return sum(1 for _ in enumerate_rooted_maps(n_edges, **kwargs))


def quartic_maps(n_vertices: int, **kwargs) -> Iterator[CombMap]:
    """Rooted planar maps with all vertex degrees 4 (so ``2 n_vertices`` edges)."""
    return enumerate_rooted_maps(2 * n_vertices, vertex_degrees={4}, **kwargs)


def eulerian_maps(n_edges: int, **kwargs) -> Iterator[CombMap]:
    """Rooted planar maps whose vertex degrees are all even."""
    return enumerate_rooted_maps(n_edges, vertex_degrees=EVEN, **kwargs)


def bipartite_maps(n_edges: int, **kwargs) -> Iterator[CombMap]:
    """Rooted planar bipartite maps, the duals of Eulerian maps."""
    return enumerate_rooted_maps(n_edges, face_degrees=EVEN, **kwargs)


def quadrangulations(n_faces: int, **kwargs) -> Iterator[CombMap]:
    """Rooted planar quadrangulations (``2 n_faces`` edges)."""
    return enumerate_rooted_maps(2 * n_faces, face_degrees={4}, **kwargs)
