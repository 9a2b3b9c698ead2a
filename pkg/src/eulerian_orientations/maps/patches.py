"""Patches, C-patches and D-patches by exhaustive generation.

All three are labelled maps whose outer face is the root face and carries
only the labels 0 and 1.  Inner faces are quadrangles, plus (for D-patches)
digons incident to the root vertex.  Tables are indexed like the solver:
cell ``(j, n)`` holds the coefficient of ``y^j t^n`` as a dict
``{x exponent: count}``, where ``2j`` is the outer degree and ``n`` the
number of inner quadrangles.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterator, Optional, Tuple

from .. import config
from ..errors import DomainError
from .combmap import CombMap
from .generate import enumerate_rooted_maps
from .orientations import ATOMIC_LABELLED, LabelledMap, labellings

__all__ = [
    "PatchTag",
    "PatchKind",
    "PatchInfo",
    "classify_patch",
    "iter_patches",
    "enumerate_patches",
    "example_d_patch",
]

Table = Dict[Tuple[int, int], Dict[int, int]]


class PatchTag(str, enum.Enum):
    PATCH = "patch"
    CPATCH = "c-patch"
    DPATCH = "d-patch"


@dataclass(frozen=True)
class PatchKind:
    tag: PatchTag
    colourful: bool = False

    @classmethod
    def parse(cls, tag, colourful: bool = False) -> "PatchKind":
        try:
            return cls(PatchTag(str(tag).lower()), colourful)
        except ValueError:
            raise DomainError(f"unknown patch kind {tag!r}") from None


@dataclass(frozen=True)
class PatchInfo:
    """Which patch families a labelled map belongs to, with its statistics."""

    is_patch: bool
    is_cpatch: bool
    is_dpatch: bool
    colourful: bool
    quadrangles: int
    half_outer: int
    root_degree: int
    digons: int

    def belongs(self, kind: PatchKind) -> bool:
        member = {
            PatchTag.PATCH: self.is_patch,
            PatchTag.CPATCH: self.is_cpatch,
            PatchTag.DPATCH: self.is_dpatch,
        }[kind.tag]
        return member and (self.colourful or not kind.colourful)

    def x_stat(self, kind: PatchKind) -> int:
        if kind.tag is PatchTag.CPATCH:
            return self.root_degree
        if kind.tag is PatchTag.DPATCH:
            return self.digons
        return 0


def classify_patch(lm: LabelledMap) -> PatchInfo:
    m = lm.base
    if m.is_atomic:
        return PatchInfo(True, False, True, True, 0, 0, 0, 0)
    root_face = m.root_face
    rv = m.root_vertex
    outer_ok = all(lm.label(d) in (0, 1) for d in m.faces[root_face])
    quads = digons = 0
    inner_quads_only = True
    digons_at_root = True
    colourful = True
    for f, cyc in enumerate(m.faces):
        if f == root_face:
            continue
        if len(cyc) == 4:
            quads += 1
            if len({lm.label(d) for d in cyc}) != 3:
                colourful = False
        elif len(cyc) == 2:
            digons += 1
            inner_quads_only = False
            if all(m.vertex_of[d] != rv for d in cyc):
                digons_at_root = False
        else:
            inner_quads_only = False
            digons_at_root = False
    at_root = m.vertices[rv]
    neighbours_one = all(lm.label(m.alpha[d]) == 1 for d in at_root)
    outer_corners = sum(1 for d in at_root if m.face_of[d] == root_face)
    is_patch = outer_ok and inner_quads_only
    return PatchInfo(
        is_patch=is_patch,
        is_cpatch=is_patch and neighbours_one and outer_corners == 1,
        is_dpatch=outer_ok and digons_at_root and neighbours_one,
        colourful=colourful,
        quadrangles=quads,
        half_outer=len(m.faces[root_face]) // 2,
        root_degree=len(at_root),
        digons=digons if digons_at_root else 0,
    )


def _patch_labellings(m: CombMap) -> Iterator[LabelledMap]:
    outer = {m.vertex_of[d]: (0, 1) for d in m.faces[m.root_face]}
    for labels in labellings(m, outer):
        yield LabelledMap(m, labels)


def iter_patches(kind: PatchKind, j: int, n: int, x: Optional[int] = None) -> Iterator[LabelledMap]:
    """Members of ``kind`` with outer degree ``2j`` and ``n`` inner quadrangles.

    For D-patches ``x`` is the number of inner digons and must be given;
    it is ignored otherwise.
    """
    if j == 0:
        if n == 0 and kind.tag is not PatchTag.CPATCH and not x:
            yield ATOMIC_LABELLED
        return
    digons = (x or 0) if kind.tag is PatchTag.DPATCH else 0
    edges = 2 * n + j + digons
    inner = {2, 4} if digons else {4}
    for m in enumerate_rooted_maps(edges, face_degrees=inner, root_face_degrees={2 * j}):
        for lm in _patch_labellings(m):
            info = classify_patch(lm)
            if not info.belongs(kind) or info.quadrangles != n:
                continue
            if kind.tag is PatchTag.DPATCH and info.digons != digons:
                continue
            yield lm


def enumerate_patches(
    kind: PatchKind, max_total: int = 3, max_x: int = 1, max_edges: Optional[int] = None
) -> Table:
    """Counts for every cell with ``j + n <= max_total``.

    For D-patches only digon counts ``x <= max_x`` are generated; C-patch
    polynomials are complete.  Raises :class:`ResourceError` when some
    required map size exceeds the edge ceiling.
    """
    limit = config.max_edges() if max_edges is None else max_edges
    digon_range = range(max_x + 1) if kind.tag is PatchTag.DPATCH else (None,)
    table: Table = {}
    for total in range(max_total + 1):
        for j in range(total + 1):
            n = total - j
            for x in digon_range:
                if j > 0:
                    config.require(2 * n + j + (x or 0), limit, "patch edge count")
                counts = Counter(classify_patch(lm).x_stat(kind) for lm in iter_patches(kind, j, n, x))
                for k, c in counts.items():
                    table.setdefault((j, n), {})
                    table[(j, n)][k] = table[(j, n)].get(k, 0) + c
    return table


def example_d_patch() -> LabelledMap:
    """An explicit D-patch with 6 quadrangles, 3 digons and outer degree 6.

    Start from a hexagon ``v0 a b c d e`` labelled 0 1 0 1 0 1, add the
    chord ``v0 c``, grow the quadrangle ``v0 a b c`` four times by a new
    vertex of label 0 joined to ``a`` and ``c``, and double the edge
    ``v0 a`` three times.
    """
    # vertices: 0=v0, 1=a, 2=b, 3=c, 4=d, 5=e, 6..9 inserted label-0 vertices
    labels = [0, 1, 0, 1, 0, 1, 0, 0, 0, 0]
    # anticlockwise neighbour lists; the outer face lies outside the hexagon
    # drawn anticlockwise v0, a, b, c, d, e.
    rot = {
        0: [1, 1, 1, 1, 3, 5],
        1: [2, 6, 7, 8, 9, 0, 0, 0, 0],
        2: [3, 1],
        3: [4, 0, 9, 8, 7, 6, 2],
        4: [5, 3],
        5: [0, 4],
        6: [1, 3],
        7: [1, 3],
        8: [1, 3],
        9: [1, 3],
    }
    return _from_rotation(rot, labels, root=(0, 1, 0))


def _from_rotation(rot, labels, root) -> LabelledMap:
    """Build a labelled map from anticlockwise neighbour lists.

    Parallel edges between ``u`` and ``w`` are matched in opposite cyclic
    order at the two ends, which is how they sit in a planar drawing.
    ``root = (u, w, k)`` roots on the ``k``-th edge from ``u`` to ``w``.
    """
    dart_ids = {}
    next_id = 0
    for u, nbrs in rot.items():
        seen = Counter()
        for w in nbrs:
            dart_ids[(u, w, seen[w])] = next_id
            seen[w] += 1
            next_id += 1
    n = next_id
    sigma = [0] * n
    alpha = [0] * n
    for u, nbrs in rot.items():
        seen = Counter()
        ids = []
        for w in nbrs:
            ids.append(dart_ids[(u, w, seen[w])])
            seen[w] += 1
        for i, d in enumerate(ids):
            sigma[d] = ids[(i + 1) % len(ids)]
    for (u, w, k), d in dart_ids.items():
        mult = sum(1 for x in rot[u] if x == w)
        if u == w:
            raise DomainError("loops are not supported here")
        alpha[d] = dart_ids[(w, u, mult - 1 - k)]
    m = CombMap(tuple(sigma), tuple(alpha), dart_ids[root])
    labels_by_vertex = [labels[next(u for (u, w, k), d in dart_ids.items() if d == cyc[0])] for cyc in m.vertices]
    return LabelledMap(m, tuple(labels_by_vertex))
