from fractions import Fraction

import mpmath
import pytest

from eulerian_orientations.asym import (
    constants,
    growth_report,
    growth_rows,
    omega_hypergeometric,
    omega_near_radius,
    rho_lambda_formula,
    rho_omega_formula,
    singular_slope_fit,
)
from eulerian_orientations.errors import ConfigurationError, DomainError


def test_constants_consistent():
    for fam in ("quartic", "general"):
        c = constants(fam, 200)
        with mpmath.workprec(200):
            assert abs(c.mu * c.rho - 1) < mpmath.mpf(10) ** -55
    with pytest.raises(ConfigurationError):
        constants("quartic", 10)


def test_radius_formulas():
    with mpmath.workprec(256):
        assert abs(rho_lambda_formula(Fraction(2, 3)) - constants("quartic").rho) < mpmath.mpf(10) ** -60
        assert abs(rho_omega_formula(0) - constants("general").rho) < mpmath.mpf(10) ** -60


@pytest.mark.parametrize("family", ["quartic", "general"])
def test_omega_sum_within_error_bound(family):
    v = omega_near_radius(family, "1e-2", 128)
    r = (Fraction(1, 27) if family == "quartic" else Fraction(1, 16)) * Fraction(99, 100)
    exact = omega_hypergeometric(family, r, 200)
    with mpmath.workprec(200):
        assert abs(v.value - exact) <= v.error
    assert v.error < mpmath.mpf(2) ** -60


def test_omega_value_tends_to_rho():
    v = omega_near_radius("general", "1e-3", 128)
    assert abs(v.value - constants("general").rho) < 1e-2


def test_omega_domain():
    with pytest.raises(DomainError):
        omega_near_radius("quartic", 0)
    with pytest.raises(DomainError):
        singular_slope_fit("quartic", ("1e-4", "1e-3"))


def test_growth_rows():
    rows = growth_rows("quartic", 30)
    assert len(rows) == 30
    assert rows[0][1] == 1 and rows[1][1] == -3
    assert all(r < 0 for _, r, _, _ in rows[1:])
    text = growth_report("general", 5)
    assert text.splitlines()[0] == "n,r_n,ratio,normalized"
    assert text.splitlines()[2].startswith("2,-2,")
    with pytest.raises(DomainError):
        growth_rows("general", 0)
