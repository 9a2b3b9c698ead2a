import pytest

from eulerian_orientations.closedform import explicit_triple, gf_main
from eulerian_orientations.errors import ConfigurationError
from eulerian_orientations.fesolver import SystemKind, cross_validate, extract_Q, quartic_window, residuals, solve


@pytest.fixture(scope="module", params=["quartic", "colourful"])
def solution(request):
    return solve(request.param, 6)


def test_residuals_vanish(solution):
    assert all(not cells for cells in residuals(solution).values())


def test_against_closed_form(solution):
    family = "quartic" if solution.kind is SystemKind.QUARTIC else "general"
    N = solution.order
    closed = explicit_triple(family, 2 * N + 1, max(solution.C.x_window[1], 2 * N + 2))
    report = cross_validate(solution, closed)
    assert report["identical"], report["max_mismatch"]
    assert report["compared"] > 0


def test_extracted_series(solution):
    Q = extract_Q(solution)
    if solution.kind is SystemKind.QUARTIC:
        want = gf_main("quartic", Q.order)
        assert all(Q[n] == want[n] for n in range(1, Q.order + 1))
    else:
        G = gf_main("general", Q.order)
        assert all(Q[n] == 2 * G[n] for n in range(1, Q.order + 1))


def test_cross_validate_detects_corruption():
    sol = solve("colourful", 4)
    closed = explicit_triple("general", 9, 10)
    bad = closed.__class__(closed.family, closed.P, closed.C + closed.C.one(closed.order, closed.C.x_window).shift_t(3).shift_y(1), closed.D)
    assert not cross_validate(sol, bad)["identical"]


def test_kind_parsing():
    assert SystemKind.parse("colorful") is SystemKind.COLOURFUL
    with pytest.raises(ValueError):
        SystemKind.parse("cubic")
    with pytest.raises(ConfigurationError):
        solve("quartic", -1)


def test_quartic_window_grows():
    assert quartic_window(4) < quartic_window(8)
