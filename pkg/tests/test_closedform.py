from fractions import Fraction

import pytest

from eulerian_orientations.closedform import (
    Family,
    binom,
    cat_lagrange_coefficient,
    check_cat_identity,
    check_omega_ode,
    check_R_ode,
    check_vandermonde,
    explicit_triple,
    gf_main,
    omega,
    series_R,
)
from eulerian_orientations.errors import ConfigurationError
from eulerian_orientations.fps import UniSeries, reversion_lagrange


def test_family_parse():
    assert Family.parse("Quartic") is Family.QUARTIC
    assert Family.parse(Family.GENERAL) is Family.GENERAL
    with pytest.raises(ValueError):
        Family.parse("cubic")


@pytest.mark.parametrize("family", ["quartic", "general"])
def test_R_inverts_omega(family):
    W = omega(family, 25)
    R = series_R(family, 25)
    assert W.compose(R) == UniSeries.t(25)
    # Lagrange inversion is an independent route to the same series
    assert reversion_lagrange(W) == R


def test_omega_coefficients():
    Wq = omega("quartic", 4)
    assert [Wq[n] for n in range(5)] == [0, 1, 3, 30, 420]
    Wg = omega("general", 4)
    assert [Wg[n] for n in range(5)] == [0, 1, 2, 12, 100]


def test_main_series_from_R():
    # Q = (t - 3t^2 - R)/(3t^2) and G = (t - 2t^2 - R)/(4t^2)
    R = series_R("quartic", 7)
    Q = gf_main("quartic", 5)
    assert all(Q[n] == -R[n + 2] / 3 for n in range(1, 6))
    R = series_R("general", 7)
    G = gf_main("general", 5)
    assert all(G[n] == -R[n + 2] / 4 for n in range(1, 6))


def test_configuration_errors():
    with pytest.raises(ConfigurationError):
        gf_main("quartic", 0)
    with pytest.raises(ConfigurationError):
        check_vandermonde(2, 0, 3)


def test_cat_lagrange_coefficients():
    for n in range(6):
        for j in range(n + 1):
            a, b = cat_lagrange_coefficient(n, j)
            assert a == b


def test_identities_small():
    assert check_cat_identity(8)[0]
    assert all(check_vandermonde(k, l, n) for k in range(6) for l in range(6) for n in range(k + 1))
    for fam in ("quartic", "general"):
        assert check_omega_ode(fam, 12).valuation() is None
        assert check_R_ode(fam, 12).valuation() is None


def test_explicit_triple_shape():
    tri = explicit_triple("general", 6)
    # scaled P: the cell (1, n + 2) holds 2 g_n
    assert tri.P.coeff(0, 1, 0) == 1
    assert [tri.P.coeff(1, n + 2, 0) for n in range(4)] == [1, 2, 10, 66]
    assert tri.order == 6


def test_binom():
    assert binom(6, 3) == 20
    assert binom(3, 5) == 0
