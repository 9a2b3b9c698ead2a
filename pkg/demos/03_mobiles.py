"""Labelled maps, mobile-maps and colourful quadrangulations on small cases."""

from collections import Counter

from eulerian_orientations.bijection import colourful_pair, is_colourful, iter_labelled_quadrangulations, phi, psi
from eulerian_orientations.maps import enumerate_labelled_maps, format_map

lms = list(enumerate_labelled_maps(2))
print(len(lms), "labelled maps with 2 edges")

lm = lms[-1]
mob = phi(lm)
print("labelled map:", format_map(lm.base), "labels", lm.labels)
print("mobile-map:  ", format_map(mob.base), "labels", mob.labels)
assert psi(mob).canonical() == lm.canonical()

# every labelled map is hit by exactly two colourful quadrangulations
for n in (1, 2, 3):
    colourful = sum(1 for q in iter_labelled_quadrangulations(n) if is_colourful(q))
    print(f"{n} faces: {colourful} colourful quadrangulations, "
          f"{sum(1 for _ in enumerate_labelled_maps(n))} labelled maps")

hits = Counter(q.canonical() for lm in enumerate_labelled_maps(2) for q in colourful_pair(lm))
print("each colourful quadrangulation hit once:", set(hits.values()) == {1})
