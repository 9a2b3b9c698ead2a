"""Rooted planar maps as rotation systems.

Darts are the integers ``0 .. 2E-1``.  ``sigma[d]`` is the next dart
anticlockwise around the origin of ``d`` and ``alpha[d]`` is the other half
of the edge of ``d``.  The face permutation is ``phi = sigma o alpha``; the
cycle of ``phi`` through ``d`` is the face lying to the right of ``d``.
The root dart leaves the root vertex just after the root corner, so the
root face is the face to the right of the root dart.

Duality keeps the dart set and ``alpha`` and sets ``sigma* = alpha o sigma^-1``
with the same root dart::

        face f (right of r)  ->  vertex of the dual, root vertex
                   |
        ----r----> |        the dual root crosses r from its right
                   v        side to its left side
        face g (left of r)

Applied twice this reverses the root edge, so duality has order 4 on rooted
maps.  The atomic map (one vertex, no edge) is the value :data:`ATOMIC`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import DomainError

__all__ = ["CombMap", "ATOMIC", "validate", "check_map", "dual", "dual_inverse", "loop_map", "link_map", "format_map", "parse_map"]


def _cycles(perm: Sequence[int]) -> List[Tuple[int, ...]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        d = start
        while not seen[d]:
            seen[d] = True
            cyc.append(d)
            d = perm[d]
        out.append(tuple(cyc))
    return out


def _inverse(perm: Sequence[int]) -> Tuple[int, ...]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(inv)


@dataclass(frozen=True)
class CombMap:
    """Rooted map ``(sigma, alpha, root)``; ``root`` is ``None`` only for the atomic map."""

    sigma: Tuple[int, ...]
    alpha: Tuple[int, ...]
    root: Optional[int]

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(self.sigma))
        object.__setattr__(self, "alpha", tuple(self.alpha))

    # -- sizes
    @property
    def n_darts(self) -> int:
        return len(self.sigma)

    @property
    def n_edges(self) -> int:
        return len(self.sigma) // 2

    @property
    def is_atomic(self) -> bool:
        return not self.sigma

    # -- derived permutations
    @cached_property
    def sigma_inv(self) -> Tuple[int, ...]:
        return _inverse(self.sigma)

    @cached_property
    def phi(self) -> Tuple[int, ...]:
        return tuple(self.sigma[self.alpha[d]] for d in range(self.n_darts))

    @cached_property
    def vertices(self) -> List[Tuple[int, ...]]:
        """Vertex cycles, listed by smallest dart; each cycle starts at its smallest dart."""
        return _cycles(self.sigma)

    @cached_property
    def faces(self) -> List[Tuple[int, ...]]:
        return _cycles(self.phi)

    @cached_property
    def vertex_of(self) -> Tuple[int, ...]:
        out = [0] * self.n_darts
        for i, cyc in enumerate(self.vertices):
            for d in cyc:
                out[d] = i
        return tuple(out)

    @cached_property
    def face_of(self) -> Tuple[int, ...]:
        out = [0] * self.n_darts
        for i, cyc in enumerate(self.faces):
            for d in cyc:
                out[d] = i
        return tuple(out)

    @property
    def n_vertices(self) -> int:
        return 1 if self.is_atomic else len(self.vertices)

    @property
    def n_faces(self) -> int:
        return 1 if self.is_atomic else len(self.faces)

    @property
    def root_vertex(self) -> int:
        return 0 if self.is_atomic else self.vertex_of[self.root]

    @property
    def root_face(self) -> int:
        return 0 if self.is_atomic else self.face_of[self.root]

    def vertex_degrees(self) -> List[int]:
        return [0] if self.is_atomic else [len(c) for c in self.vertices]

    def face_degrees(self) -> List[int]:
        return [0] if self.is_atomic else [len(c) for c in self.faces]

    def edges(self) -> List[Tuple[int, int]]:
        """Edges as dart pairs ``(d, alpha[d])`` with ``d < alpha[d]``."""
        return [(d, a) for d, a in enumerate(self.alpha) if d < a]

    def endpoints(self) -> List[Tuple[int, int]]:
        """Vertex pairs of the edges, in the order of :meth:`edges`."""
        v = self.vertex_of
        return [(v[d], v[a]) for d, a in self.edges()]

    def genus(self) -> int:
        chi = self.n_vertices - self.n_edges + self.n_faces
        return (2 - chi) // 2

    def is_bipartite(self) -> bool:
        if self.is_atomic:
            return True
        colour: Dict[int, int] = {self.root_vertex: 0}
        stack = [self.root_vertex]
        adj = self._adjacency()
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in colour:
                    colour[w] = 1 - colour[u]
                    stack.append(w)
                elif colour[w] == colour[u]:
                    return False
        return True

    def _adjacency(self) -> List[List[int]]:
        adj: List[List[int]] = [[] for _ in range(self.n_vertices)]
        v = self.vertex_of
        for d in range(self.n_darts):
            adj[v[d]].append(v[self.alpha[d]])
        return adj

    # -- canonical form
    def canonical_labelling(self) -> Tuple[int, ...]:
        """Relabelling ``old -> new`` obtained by exploring from the root.

        Darts are numbered in order of discovery, visiting ``alpha(d)`` and
        then ``sigma(d)`` for each dart ``d`` in label order.
        """
        if self.is_atomic:
            return ()
        new = [-1] * self.n_darts
        order = [self.root]
        new[self.root] = 0
        i = 0
        while i < len(order):
            d = order[i]
            for e in (self.alpha[d], self.sigma[d]):
                if new[e] < 0:
                    new[e] = len(order)
                    order.append(e)
            i += 1
        if len(order) != self.n_darts:
            raise DomainError("map is not connected")
        return tuple(new)

    def relabel(self, new: Sequence[int]) -> "CombMap":
        """Apply the dart relabelling ``old -> new``."""
        n = self.n_darts
        sigma = [0] * n
        alpha = [0] * n
        for d in range(n):
            sigma[new[d]] = new[self.sigma[d]]
            alpha[new[d]] = new[self.alpha[d]]
        return CombMap(tuple(sigma), tuple(alpha), None if self.root is None else new[self.root])

    def canonical(self) -> "CombMap":
        if self.is_atomic:
            return self
        return self.relabel(self.canonical_labelling())

    def is_canonical(self) -> bool:
        return self.is_atomic or self.canonical_labelling() == tuple(range(self.n_darts))

    def reroot(self, dart: int) -> "CombMap":
        return CombMap(self.sigma, self.alpha, dart)

    def __str__(self) -> str:
        return format_map(self)


ATOMIC = CombMap((), (), None)


def loop_map() -> CombMap:
    """One vertex carrying one loop."""
    return CombMap((1, 0), (1, 0), 0)


def link_map() -> CombMap:
    """One edge joining two vertices."""
    return CombMap((0, 1), (1, 0), 0)


def validate(m: CombMap) -> List[str]:
    """Named invariant violations of ``m`` (empty list when valid)."""
    if m.is_atomic:
        return [] if m.root is None else ["root on atomic map"]
    n = m.n_darts
    problems = []
    if len(m.alpha) != n:
        return ["length mismatch between sigma and alpha"]
    if sorted(m.sigma) != list(range(n)):
        problems.append("sigma is not a permutation")
    if sorted(m.alpha) != list(range(n)):
        problems.append("alpha is not a permutation")
    if problems:
        return problems
    if any(m.alpha[m.alpha[d]] != d for d in range(n)):
        problems.append("alpha is not an involution")
    if any(m.alpha[d] == d for d in range(n)):
        problems.append("alpha has a fixed point")
    if m.root is None or not (0 <= m.root < n):
        problems.append("root is not a dart")
    if problems:
        return problems
    seen = {0}
    stack = [0]
    while stack:
        d = stack.pop()
        for e in (m.sigma[d], m.alpha[d], m.sigma_inv[d]):
            if e not in seen:
                seen.add(e)
                stack.append(e)
    if len(seen) != n:
        problems.append("not transitive: the map is disconnected")
        return problems
    if m.n_vertices - m.n_edges + m.n_faces != 2:
        problems.append(f"genus {m.genus()}: Euler relation fails")
    return problems


def check_map(m: CombMap) -> CombMap:
    problems = validate(m)
    if problems:
        raise DomainError("; ".join(problems))
    return m


def dual(m: CombMap) -> CombMap:
    """Dual map: vertices become faces; rooted on the same dart."""
    if m.is_atomic:
        return m
    si = m.sigma_inv
    sigma = tuple(m.alpha[si[d]] for d in range(m.n_darts))
    return CombMap(sigma, m.alpha, m.root)


def dual_inverse(m: CombMap) -> CombMap:
    """Inverse of :func:`dual`."""
    if m.is_atomic:
        return m
    si = m.sigma_inv
    sigma = tuple(si[m.alpha[d]] for d in range(m.n_darts))
    return CombMap(sigma, m.alpha, m.root)


# ---------------------------------------------------------------------------
# exchange format:  E; (sigma cycles); (alpha pairs); root


def format_map(m: CombMap) -> str:
    if m.is_atomic:
        return "0; ; ; -"
    cycles = " ".join("(" + " ".join(map(str, c)) + ")" for c in m.vertices)
    pairs = " ".join(f"({d} {a})" for d, a in m.edges())
    return f"{m.n_edges}; {cycles}; {pairs}; {m.root}"


def _parse_groups(text: str) -> List[List[int]]:
    out = []
    text = text.strip()
    while text:
        if not text.startswith("("):
            raise DomainError(f"malformed cycle list near {text[:20]!r}")
        end = text.index(")")
        out.append([int(tok) for tok in text[1:end].split()])
        text = text[end + 1 :].strip()
    return out


def parse_map(line: str) -> CombMap:
    parts = [p.strip() for p in line.split(";")]
    if len(parts) < 4:
        raise DomainError("expected 'E; sigma-cycles; alpha-pairs; root'")
    E = int(parts[0])
    if E == 0:
        return ATOMIC
    sigma = [-1] * (2 * E)
    alpha = [-1] * (2 * E)
    for cyc in _parse_groups(parts[1]):
        for i, d in enumerate(cyc):
            sigma[d] = cyc[(i + 1) % len(cyc)]
    for pair in _parse_groups(parts[2]):
        if len(pair) != 2:
            raise DomainError("alpha groups must be pairs")
        a, b = pair
        alpha[a], alpha[b] = b, a
    if -1 in sigma or -1 in alpha:
        raise DomainError("some dart is missing from sigma or alpha")
    return CombMap(tuple(sigma), tuple(alpha), int(parts[3]))
