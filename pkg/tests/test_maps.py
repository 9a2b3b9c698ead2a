from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eulerian_orientations.errors import DomainError, ResourceError
from eulerian_orientations.maps import (
    ATOMIC,
    EVEN,
    CombMap,
    Orientation,
    PatchKind,
    aggregate_eo_count,
    bipartite_maps,
    classify_patch,
    count_eulerian_orientations,
    count_rooted_maps,
    dual,
    dual_inverse,
    enumerate_labelled_maps,
    enumerate_patches,
    enumerate_rooted_maps,
    eulerian_maps,
    example_d_patch,
    format_map,
    iter_eulerian_orientations,
    link_map,
    loop_map,
    orientation_duality,
    orientation_from_labels,
    parse_map,
    quadrangulations,
    quartic_maps,
    signed_forest_statistic,
    tutte_polynomial,
    tutte_sum_33,
    validate,
)


def tutte_count(n):
    """Rooted planar maps with n edges: 2 3^n (2n)! / (n! (n+2)!)."""
    return 2 * 3**n * factorial(2 * n) // (factorial(n) * factorial(n + 2))


def bipartite_count(n):
    """Rooted planar bipartite maps with n edges: 3 2^(n-1) C(2n, n) / ((n+1)(n+2))."""
    return 3 * 2 ** (n - 1) * comb(2 * n, n) // ((n + 1) * (n + 2))


ALL_MAPS = {n: list(enumerate_rooted_maps(n)) for n in range(0, 4)}


@pytest.mark.parametrize("n", range(1, 6))
def test_rooted_map_counts(n):
    assert count_rooted_maps(n) == tutte_count(n)


def test_counts_by_family():
    assert [sum(1 for _ in quartic_maps(v)) for v in (1, 2)] == [tutte_count(1), tutte_count(2)]
    assert [sum(1 for _ in quadrangulations(f)) for f in (1, 2, 3)] == [tutte_count(f) for f in (1, 2, 3)]
    assert [sum(1 for _ in bipartite_maps(n)) for n in (1, 2, 3, 4)] == [bipartite_count(n) for n in (1, 2, 3, 4)]
    assert [sum(1 for _ in eulerian_maps(n)) for n in (1, 2, 3, 4)] == [bipartite_count(n) for n in (1, 2, 3, 4)]


def test_all_genera_counts():
    # rooted one-face-free maps of any genus (OEIS A000698 shifted)
    assert [count_rooted_maps(n, planar=False) for n in range(1, 5)] == [2, 10, 74, 706]


def test_enumeration_is_canonical_and_distinct():
    for n, maps in ALL_MAPS.items():
        assert len(set(maps)) == len(maps)
        assert all(m.is_canonical() for m in maps)
        assert all(not validate(m) for m in maps)


def test_atomic_map():
    assert ALL_MAPS[0] == [ATOMIC]
    assert ATOMIC.n_vertices == 1 and ATOMIC.n_faces == 1 and ATOMIC.n_edges == 0
    assert parse_map(format_map(ATOMIC)) == ATOMIC
    assert dual(ATOMIC) == ATOMIC


def test_small_maps():
    assert loop_map().n_vertices == 1 and loop_map().n_faces == 2
    assert link_map().n_vertices == 2 and link_map().n_faces == 1
    assert dual(loop_map()).canonical() == link_map().canonical()


def maps_strategy():
    return st.sampled_from([m for n in (1, 2, 3) for m in ALL_MAPS[n]])


@given(maps_strategy(), st.data())
def test_rerooting_and_duality(m, data):
    d = data.draw(st.integers(0, m.n_darts - 1))
    r = m.reroot(d)
    assert r.canonical() in ALL_MAPS[m.n_edges]
    D = dual(m)
    assert D.n_vertices == m.n_faces and D.n_faces == m.n_vertices
    assert sorted(D.vertex_degrees()) == sorted(m.face_degrees())
    assert dual_inverse(D) == m
    assert dual(dual(dual(dual(m)))) == m


@given(maps_strategy())
def test_format_roundtrip(m):
    assert parse_map(format_map(m)) == m


def test_parse_rejects_garbage():
    with pytest.raises(DomainError):
        parse_map("1; (0 1); (0 1)")
    with pytest.raises(DomainError):
        parse_map("2; (0 1 2); (0 1); 0")


def test_validate_reports_problems():
    assert "alpha has a fixed point" in validate(CombMap((0, 1), (0, 1), 0))
    bad = CombMap((1, 0, 3, 2), (1, 0, 3, 2), 0)
    assert any("disconnected" in p for p in validate(bad))
    torus = CombMap((1, 2, 3, 0), (2, 3, 0, 1), 0)
    assert any("genus 1" in p for p in validate(torus))


def test_edge_ceiling():
    with pytest.raises(ResourceError):
        next(enumerate_rooted_maps(7))
    assert count_rooted_maps(2, max_edges=2) == 9


def test_orientation_counts_small():
    # the root edge is oriented away from the root in total mode
    assert count_eulerian_orientations(loop_map()) == 1
    assert count_eulerian_orientations(loop_map(), "partial") == 3
    assert count_eulerian_orientations(link_map()) == 0
    assert count_eulerian_orientations(link_map(), "partial") == 1


def test_aggregate_counts():
    assert [aggregate_eo_count("general", n) for n in (1, 2, 3)] == [1, 5, 33]
    assert [aggregate_eo_count("quartic", n) for n in (1, 2)] == [4, 35]
    assert [aggregate_eo_count("partial", n) for n in (1, 2)] == [4, 35]
    with pytest.raises(DomainError):
        aggregate_eo_count("cubic", 1)


def test_orientations_are_eulerian():
    for m in ALL_MAPS[3]:
        for o in iter_eulerian_orientations(m):
            assert not o.validate()
            assert o.is_total
        for o in iter_eulerian_orientations(m, "partial"):
            assert not o.validate()


def test_orientation_duality_roundtrip():
    for n in (1, 2, 3):
        for m in eulerian_maps(n):
            for o in iter_eulerian_orientations(m):
                if m.root not in o.tails:
                    continue
                lm = orientation_duality(o)
                assert not lm.validate()
                assert orientation_from_labels(lm) == o


def test_labelled_map_counts():
    # labelled maps with n edges correspond to Eulerian orientations with n edges
    assert [sum(1 for _ in enumerate_labelled_maps(n)) for n in range(5)] == [1, 1, 5, 33, 252]


def test_duality_rejects_non_eulerian():
    m = loop_map()
    with pytest.raises(DomainError):
        orientation_duality(Orientation(m, frozenset()))


def test_tutte_polynomial():
    assert tutte_polynomial(loop_map(), 2, 5) == 5
    assert tutte_polynomial(link_map(), 2, 5) == 2
    # the triangle has T = x^2 + x + y
    simple = [m for m in enumerate_rooted_maps(3) if m.n_vertices == 3 and len({frozenset(e) for e in m.endpoints()}) == 3]
    tri = next(m for m in simple if all(a != b for a, b in m.endpoints()))
    assert tutte_polynomial(tri, 2, 7) == 4 + 2 + 7
    # a digon with a pendant edge has T = x (x + y)
    pendant = next(m for m in enumerate_rooted_maps(3) if m.n_vertices == 3 and m.n_faces == 2 and m not in simple)
    assert tutte_polynomial(pendant, 2, 7) == 18
    assert tutte_polynomial(ATOMIC, 3, 3) == 1
    # T(1, 1) counts spanning trees; T(2, 2) = 2^E
    for m in ALL_MAPS[3]:
        assert tutte_polynomial(m, 2, 2) == 8


def test_tutte_sums():
    assert [tutte_sum_33(n) for n in (1, 2, 3)] == [6, 78, 1326]


def test_signed_forest_statistic():
    assert signed_forest_statistic(2) == 2
    assert signed_forest_statistic(3) == 6
    with pytest.raises(DomainError):
        signed_forest_statistic(1)


def test_patch_tables_small():
    table = enumerate_patches(PatchKind.parse("patch"), 2, 0)
    assert table[(0, 0)] == {0: 1}
    assert table[(1, 0)] == {0: 1}
    colourful = enumerate_patches(PatchKind.parse("c-patch", True), 2, 2)
    assert colourful.get((0, 0), {}) == {}


def test_example_d_patch():
    lm = example_d_patch()
    assert not lm.validate()
    assert not validate(lm.base)
    info = classify_patch(lm)
    assert info.is_dpatch and not info.is_cpatch
    assert (info.quadrangles, info.half_outer, info.digons) == (6, 3, 3)
    assert info.x_stat(PatchKind.parse("d-patch")) == 3
