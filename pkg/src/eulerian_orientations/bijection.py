"""Labelled maps and mobile-maps.

``phi`` puts a black vertex in every face of a labelled map and joins it to
the corners that are followed, clockwise around the face, by a smaller
label.  ``psi`` undoes this: inside every face of a mobile-map each white
corner labelled ``l`` sends an edge to the next corner labelled ``l - 1`` in
anticlockwise order, or to a new vertex when ``l`` is the face minimum.

Everything is computed on rotation systems.  In a mobile-map produced by
``phi`` the labelled-map dart ``d`` (when it descends) becomes a white dart
``W_d = 2i`` and a black dart ``B_d = 2i + 1``.  Within a corner of a white
vertex the labelled-map darts are ordered anticlockwise as::

    mobile dart | outgoing | incoming (farthest source first) | mobile dart
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from .errors import DomainError, InternalError
from .maps.combmap import CombMap, dual_inverse
from .maps.orientations import (
    LabelledMap,
    Orientation,
    enumerate_labelled_maps,
    orientation_duality,
)

__all__ = [
    "MobileMap",
    "phi",
    "psi",
    "phi4",
    "subdivide",
    "is_colourful",
    "colourful_pair",
    "colourful_target",
    "iter_labelled_quadrangulations",
    "quartic_to_partial",
    "vfe_statistics",
    "canonical_orientation",
]


@dataclass(frozen=True)
class MobileMap:
    """Bipartite map with white (labelled) and black vertices, indexed like ``base.vertices``."""

    base: CombMap
    white: Tuple[bool, ...]
    labels: Tuple[Optional[int], ...]

    def is_white_dart(self, d: int) -> bool:
        return self.white[self.base.vertex_of[d]]

    def label(self, d: int) -> Optional[int]:
        return self.labels[self.base.vertex_of[d]]

    @property
    def n_black(self) -> int:
        return sum(1 for w in self.white if not w)

    @property
    def n_white(self) -> int:
        return sum(1 for w in self.white if w)

    def validate(self) -> List[str]:
        m = self.base
        if m.is_atomic:
            return ["a mobile-map has at least one edge"]
        problems = []
        if len(self.white) != m.n_vertices or len(self.labels) != m.n_vertices:
            return ["colour and label tuples must have one entry per vertex"]
        for d, a in m.edges():
            if self.is_white_dart(d) == self.is_white_dart(a):
                problems.append(f"edge ({d} {a}) does not join black to white")
        for v, (w, lab) in enumerate(zip(self.white, self.labels)):
            if w and lab is None:
                problems.append(f"white vertex {v} has no label")
        if problems:
            return problems
        if not self.is_white_dart(m.root) or self.label(m.root) != 1:
            problems.append("root vertex must be white with label 1")
        # clockwise around a black vertex is sigma^-1
        for v, cyc in enumerate(m.vertices):
            if self.white[v]:
                continue
            for b in cyc:
                here = self.label(m.alpha[b])
                after = self.label(m.alpha[m.sigma_inv[b]])
                if after < here - 1:
                    problems.append(f"black vertex {v}: clockwise labels {here}, {after}")
        return problems

    def canonical(self) -> "MobileMap":
        new = self.base.canonical_labelling()
        base = self.base.relabel(new)
        white = [False] * base.n_vertices
        labels: List[Optional[int]] = [None] * base.n_vertices
        for d in range(self.base.n_darts):
            v = base.vertex_of[new[d]]
            white[v] = self.is_white_dart(d)
            labels[v] = self.label(d)
        return MobileMap(base, tuple(white), tuple(labels))


def _check_labelled(lm: LabelledMap) -> None:
    problems = lm.validate()
    if problems:
        raise DomainError("; ".join(problems))


def phi(lm: LabelledMap) -> MobileMap:
    """The mobile-map of a labelled map with at least one edge."""
    m = lm.base
    if m.is_atomic:
        raise DomainError("phi is not defined on the atomic map")
    _check_labelled(lm)
    lab = [lm.label(d) for d in range(m.n_darts)]
    selected = [d for d in range(m.n_darts) if lab[m.alpha[d]] == lab[d] - 1]
    index = {d: i for i, d in enumerate(selected)}
    phi_inv = [0] * m.n_darts
    for d, e in enumerate(m.phi):
        phi_inv[e] = d
    n = 2 * len(selected)
    sigma = [0] * n
    alpha = [0] * n
    for d in selected:
        w = 2 * index[d]
        alpha[w], alpha[w + 1] = w + 1, w
        e = m.sigma[d]
        while e not in index:
            e = m.sigma[e]
        sigma[w] = 2 * index[e]
        e = phi_inv[d]
        while e not in index:
            e = phi_inv[e]
        sigma[w + 1] = 2 * index[e] + 1
    base = CombMap(tuple(sigma), tuple(alpha), 2 * index[m.alpha[m.root]])
    white = tuple(cyc[0] % 2 == 0 for cyc in base.vertices)
    labels = tuple(lab[selected[cyc[0] // 2]] if cyc[0] % 2 == 0 else None for cyc in base.vertices)
    out = MobileMap(base, white, labels)
    stats = vfe_statistics(lm, out)
    if stats[0] != stats[1]:
        raise InternalError(f"vertex/face statistics violated: {stats}")
    return out


def vfe_statistics(lm: LabelledMap, mob: MobileMap) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """``(black, white, edges, faces)`` of the mobile and the values predicted from ``lm``."""
    L = lm.base
    minima = len(lm.local_minima())
    predicted = (L.n_faces, L.n_vertices - minima, L.n_edges, minima)
    actual = (mob.n_black, mob.n_white, mob.base.n_edges, mob.base.n_faces)
    return actual, predicted


def psi(mob: MobileMap) -> LabelledMap:
    """Inverse of :func:`phi`."""
    problems = mob.validate()
    if problems:
        raise DomainError("; ".join(problems))
    m = mob.base
    whites = [d for d in range(m.n_darts) if mob.is_white_dart(d)]
    widx = {x: i for i, x in enumerate(whites)}
    n_edges = len(whites)

    def out_dart(x: int) -> int:
        return 2 * widx[x]

    def in_dart(x: int) -> int:
        return 2 * widx[x] + 1

    dart_label = [0] * (2 * n_edges)
    incoming: Dict[int, List[Tuple[int, int]]] = {x: [] for x in whites}
    centres: List[Tuple[List[int], int]] = []
    for cyc in m.faces:
        corners = [d for d in reversed(cyc) if mob.is_white_dart(d)]
        labs = [mob.label(x) for x in corners]
        low = min(labs)
        k = len(corners)
        centre: List[int] = []
        for i, x in enumerate(corners):
            dart_label[out_dart(x)] = labs[i]
            if labs[i] == low:
                centre.append(in_dart(x))
                dart_label[in_dart(x)] = low - 1
                continue
            for step in range(1, k):
                if labs[(i + step) % k] == labs[i] - 1:
                    target = corners[(i + step) % k]
                    incoming[target].append((step, in_dart(x)))
                    dart_label[in_dart(x)] = labs[i] - 1
                    break
            else:
                raise DomainError("face violates the mobile rule")
        centres.append((centre, low - 1))

    sigma = [0] * (2 * n_edges)

    def close(rotation: List[int]) -> None:
        for i, d in enumerate(rotation):
            sigma[d] = rotation[(i + 1) % len(rotation)]

    for v, cyc in enumerate(m.vertices):
        if not mob.white[v]:
            continue
        rotation = []
        for x in cyc:
            rotation.append(out_dart(x))
            rotation.extend(d for _, d in sorted(incoming[x], reverse=True))
        close(rotation)
    for centre, _ in centres:
        close(centre)
    alpha = [d ^ 1 for d in range(2 * n_edges)]
    base = CombMap(tuple(sigma), tuple(alpha), in_dart(m.sigma[m.root]))
    labels = tuple(dart_label[cyc[0]] for cyc in base.vertices)
    out = LabelledMap(base, labels)
    _check_labelled(out)
    return out


# ---------------------------------------------------------------------------
# quadrangulations


def subdivide(lm: LabelledMap) -> MobileMap:
    """Put a black vertex on every edge of a map labelled with increments 0, +-1."""
    m = lm.base
    if m.is_atomic:
        raise DomainError("nothing to subdivide")
    n = 2 * m.n_darts
    sigma = [0] * n
    alpha = [0] * n
    for d in range(m.n_darts):
        w, b = 2 * d, 2 * d + 1
        alpha[w], alpha[b] = b, w
        sigma[w] = 2 * m.sigma[d]
        sigma[b] = 2 * m.alpha[d] + 1
    base = CombMap(tuple(sigma), tuple(alpha), 2 * m.root)
    white = tuple(cyc[0] % 2 == 0 for cyc in base.vertices)
    labels = tuple(lm.label(cyc[0] // 2) if cyc[0] % 2 == 0 else None for cyc in base.vertices)
    return MobileMap(base, white, labels)


def _is_quadrangulation(m: CombMap) -> bool:
    return not m.is_atomic and all(k == 4 for k in m.face_degrees())


def phi4(q: LabelledMap) -> LabelledMap:
    """Erase the degree-2 black vertices of ``phi(q)``.

    The result is labelled with increments 0, +-1 and root vertex label 1;
    :meth:`LabelledMap.validate` does not apply to it.
    """
    if not _is_quadrangulation(q.base):
        raise DomainError("phi4 needs a quadrangulation")
    mob = phi(q)
    m = mob.base
    whites = [d for d in range(m.n_darts) if mob.is_white_dart(d)]
    idx = {x: i for i, x in enumerate(whites)}
    sigma = [idx[m.sigma[x]] for x in whites]
    alpha = [idx[m.alpha[m.sigma[m.alpha[x]]]] for x in whites]
    base = CombMap(tuple(sigma), tuple(alpha), idx[m.root])
    labels = tuple(mob.label(whites[cyc[0]]) for cyc in base.vertices)
    return LabelledMap(base, labels)


def is_colourful(q: LabelledMap) -> bool:
    """Every face, the outer one included, carries three distinct labels."""
    return all(len({q.label(d) for d in cyc}) == 3 for cyc in q.base.faces)


def colourful_pair(lm: LabelledMap) -> Tuple[LabelledMap, LabelledMap]:
    """The two colourful quadrangulations sent to ``lm``.

    The first comes from reversing the root edge (root labels 1 -> 0),
    the second from raising every label by one (root labels 1 -> 2).
    """
    if lm.base.is_atomic:
        raise DomainError("the atomic map has no colourful quadrangulation")
    _check_labelled(lm)
    m = lm.base
    reversed_root = LabelledMap(m.reroot(m.alpha[m.root]), lm.labels)
    shifted = LabelledMap(m, tuple(x + 1 for x in lm.labels))
    return psi(subdivide(reversed_root)), psi(subdivide(shifted))


def colourful_target(q: LabelledMap) -> LabelledMap:
    """The labelled map that a colourful quadrangulation corresponds to."""
    if not is_colourful(q):
        raise DomainError("quadrangulation is not colourful")
    n = phi4(q)
    m = n.base
    if n.label(m.alpha[m.root]) == 0:
        return LabelledMap(m.reroot(m.alpha[m.root]), n.labels)
    return LabelledMap(m, tuple(x - 1 for x in n.labels))


# ---------------------------------------------------------------------------
# quartic orientations and partial orientations


def quartic_to_partial(eo: Orientation) -> Orientation:
    """Partial Eulerian orientation with one edge per vertex of a quartic ``eo``."""
    m = eo.base
    if m.is_atomic or any(k != 4 for k in m.vertex_degrees()):
        raise DomainError("quartic_to_partial needs a quartic map")
    n = phi4(orientation_duality(eo))
    target = dual_inverse(n.base)
    tails = frozenset(d for d in range(target.n_darts) if n.label(target.alpha[d]) == n.label(d) + 1)
    return Orientation(target, tails)


def canonical_orientation(o: Orientation) -> Orientation:
    if o.base.is_atomic:
        return o
    new = o.base.canonical_labelling()
    return Orientation(o.base.relabel(new), frozenset(new[d] for d in o.tails))


def iter_labelled_quadrangulations(n_faces: int) -> Iterator[LabelledMap]:
    return enumerate_labelled_maps(2 * n_faces, face_degrees={4})
