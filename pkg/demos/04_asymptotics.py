"""Growth of the coefficients of R and the singular expansion of Omega."""

import mpmath

from eulerian_orientations.asym import constants, growth_rows, omega_near_radius, singular_slope_fit

for family in ("quartic", "general"):
    c = constants(family, 128)
    print(family, "rho =", mpmath.nstr(c.rho, 20), " mu =", mpmath.nstr(c.mu, 20))
    rows = growth_rows(family, 200, 128)
    # the ratio creeps towards mu; the normalised column drifts like 1/log n
    for n, r_n, ratio, norm in rows[9::40]:
        print(f"  n={n:3}  ratio={mpmath.nstr(mpmath.mpf(ratio), 10):>12}  normalised={mpmath.nstr(mpmath.mpf(norm), 8)}")
    v = omega_near_radius(family, "1e-3", 128)
    print("  Omega(r_c (1 - 1e-3)) =", mpmath.nstr(v.value, 20), f"({v.terms} terms)")
    s = singular_slope_fit(family, ("1e-3", "1e-4"), 128)
    print("  slope fit", mpmath.nstr(s, 10), "vs", mpmath.nstr(c.slope, 10))
