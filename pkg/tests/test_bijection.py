from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eulerian_orientations.bijection import (
    MobileMap,
    canonical_orientation,
    colourful_pair,
    colourful_target,
    is_colourful,
    iter_labelled_quadrangulations,
    phi,
    phi4,
    psi,
    quartic_to_partial,
    subdivide,
    vfe_statistics,
)
from eulerian_orientations.closedform import gf_main
from eulerian_orientations.errors import DomainError
from eulerian_orientations.maps import (
    ATOMIC_LABELLED,
    LabelledMap,
    enumerate_rooted_maps,
    iter_eulerian_orientations,
    quartic_maps,
)


def nonempty(labelled_maps):
    return [lm for n in (1, 2, 3) for lm in labelled_maps[n]]


def test_phi_psi_roundtrip(labelled_maps):
    for lm in nonempty(labelled_maps):
        mob = phi(lm)
        assert not mob.validate()
        actual, predicted = vfe_statistics(lm, mob)
        assert actual == predicted
        back = psi(mob)
        assert back.canonical() == lm.canonical()
        assert phi(back).canonical() == mob.canonical()


def test_phi_is_injective(labelled_maps):
    images = [phi(lm).canonical() for lm in nonempty(labelled_maps)]
    assert len(set(images)) == len(images)


def test_phi_rejects_bad_input():
    with pytest.raises(DomainError):
        phi(ATOMIC_LABELLED)
    m = next(enumerate_rooted_maps(1, face_degrees={2}))
    with pytest.raises(DomainError):
        phi(LabelledMap(m, (0, 0)))


def test_mobile_validation_catches_rule_violation(labelled_maps):
    lm = max(labelled_maps[3], key=lambda l: max(l.labels) - min(l.labels))
    mob = phi(lm)
    broken = MobileMap(mob.base, mob.white, tuple(None if x is None else 5 * x for x in mob.labels))
    assert broken.validate()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_colourful_count_is_twice_g(n):
    count = sum(1 for q in iter_labelled_quadrangulations(n) if is_colourful(q))
    assert count == 2 * gf_main("general", n)[n]


@pytest.mark.parametrize("n", [1, 2])
def test_colourful_pairs_partition(labelled_maps, n):
    hits = Counter()
    for lm in labelled_maps[n]:
        a, b = colourful_pair(lm)
        assert is_colourful(a) and is_colourful(b)
        assert colourful_target(a).canonical() == lm.canonical()
        assert colourful_target(b).canonical() == lm.canonical()
        hits[a.canonical()] += 1
        hits[b.canonical()] += 1
    target = {q.canonical() for q in iter_labelled_quadrangulations(n) if is_colourful(q)}
    assert set(hits) == target and set(hits.values()) == {1}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_phi4_refinement(n):
    images = set()
    for q in iter_labelled_quadrangulations(n):
        m = phi4(q)
        assert m.base.n_edges == n
        assert m.base.n_faces == len(q.local_minima())
        # faces with two distinct labels become edges with equal ends
        flat = sum(1 for c in q.base.faces if len({q.label(d) for d in c}) == 2)
        assert flat == sum(1 for d, a in m.base.edges() if m.label(d) == m.label(a))
        images.add(m.canonical())
    assert len(images) == sum(1 for _ in iter_labelled_quadrangulations(n))


def test_subdivide_shape(labelled_maps):
    for lm in labelled_maps[2]:
        mob = subdivide(lm)
        assert mob.n_black == lm.base.n_edges
        assert mob.n_white == lm.base.n_vertices


def test_quartic_to_partial_is_bijective():
    for v, total in ((1, 4), (2, 35)):
        images = set()
        for m in quartic_maps(v):
            for eo in iter_eulerian_orientations(m, "quartic-root-forced"):
                p = quartic_to_partial(eo)
                assert not p.validate()
                assert p.base.n_edges == v
                images.add(canonical_orientation(p))
        assert len(images) == total


def test_quartic_to_partial_rejects_other_maps():
    loop = next(enumerate_rooted_maps(1, vertex_degrees={2}))
    eo = next(iter_eulerian_orientations(loop))
    with pytest.raises(DomainError):
        quartic_to_partial(eo)
