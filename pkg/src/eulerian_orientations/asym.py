"""Numerical checks of the singular behaviour of ``Omega`` and ``R``.

``Omega(r) = sum_n w_n r^(n+1)`` has radius ``1/27`` (quartic) or ``1/16``
(general), where it takes the value ``rho``, the radius of ``R``.  Near
that point::

    Omega(r_c (1 - eps)) = rho + s eps log(eps) + O(eps)

The partial sums used to estimate ``s`` are computed in fixed point with a
proven error bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import mpmath

from . import config
from .closedform import Family, series_R
from .errors import ConfigurationError, DomainError, ResourceError

__all__ = [
    "AsymConstants",
    "constants",
    "rho_lambda_formula",
    "rho_omega_formula",
    "OmegaValue",
    "omega_near_radius",
    "omega_hypergeometric",
    "singular_slope_fit",
    "growth_rows",
    "growth_report",
]

_RADIUS = {Family.QUARTIC: Fraction(1, 27), Family.GENERAL: Fraction(1, 16)}
MAX_TERMS = 20_000_000


@dataclass(frozen=True)
class AsymConstants:
    family: Family
    precision_bits: int
    rho: mpmath.mpf
    mu: mpmath.mpf
    kappa: Fraction
    slope: mpmath.mpf


def constants(family, precision_bits: Optional[int] = None) -> AsymConstants:
    family = Family.parse(family)
    bits = config.precision_bits() if precision_bits is None else precision_bits
    if bits < 64:
        raise ConfigurationError("precision_bits must be at least 64")
    with mpmath.workprec(bits):
        pi = mpmath.pi
        if family is Family.QUARTIC:
            rho = mpmath.sqrt(3) / (12 * pi)
            mu = 4 * mpmath.sqrt(3) * pi
            slope = mpmath.sqrt(3) / (54 * pi)
            kappa = Fraction(1, 18)
        else:
            rho = 1 / (4 * pi)
            mu = 4 * pi
            slope = 1 / (16 * pi)
            kappa = Fraction(1, 16)
        return AsymConstants(family, bits, +rho, +mu, kappa, +slope)


def rho_lambda_formula(lam, precision_bits: int = 256) -> mpmath.mpf:
    """``sin(l pi/4) / (8 l pi cos(l pi/4)^3)``; the quartic radius at ``l = 2/3``."""
    with mpmath.workprec(precision_bits):
        lam = mpmath.mpf(lam) if not isinstance(lam, Fraction) else mpmath.mpf(lam.numerator) / lam.denominator
        x = lam * mpmath.pi / 4
        return +(mpmath.sin(x) / (8 * lam * mpmath.pi * mpmath.cos(x) ** 3))


def rho_omega_formula(w, precision_bits: int = 256) -> mpmath.mpf:
    """``sqrt(2 - w) / (4 arccos(w/2) (2 + w)^(3/2))``; the general radius at ``w = 0``."""
    with mpmath.workprec(precision_bits):
        w = mpmath.mpf(w)
        return +(mpmath.sqrt(2 - w) / (4 * mpmath.acos(w / 2) * (2 + w) ** mpmath.mpf(1.5)))


def omega_hypergeometric(family, r, precision_bits: int = 256) -> mpmath.mpf:
    """``Omega(r)`` through mpmath's Gauss function (independent of the sums below)."""
    family = Family.parse(family)
    with mpmath.workprec(precision_bits):
        r = mpmath.mpf(r) if not isinstance(r, Fraction) else mpmath.mpf(r.numerator) / r.denominator
        if family is Family.QUARTIC:
            return +(r * mpmath.hyp2f1(mpmath.mpf(1) / 3, mpmath.mpf(2) / 3, 2, 27 * r))
        return +(r * mpmath.hyp2f1(mpmath.mpf(1) / 2, mpmath.mpf(1) / 2, 2, 16 * r))


@dataclass(frozen=True)
class OmegaValue:
    """``Omega`` at ``r_c (1 - eps)``: ``value`` is within ``error`` of the truth."""

    eps: Fraction
    value: mpmath.mpf
    error: mpmath.mpf
    terms: int


def _ratio(family: Family, n: int) -> Tuple[int, int]:
    """``w_(n+1) r_c / w_n`` as a fraction."""
    if family is Family.QUARTIC:
        return (3 * n + 1) * (3 * n + 2), 9 * (n + 1) * (n + 2)
    return (2 * n + 1) ** 2, 4 * (n + 1) * (n + 2)


def omega_near_radius(family, eps, precision_bits: Optional[int] = None) -> OmegaValue:
    """Sum the series of ``Omega`` at ``r_c (1 - eps)`` until the tail is below ``2^-(bits/2)``.

    Terms are kept as integers scaled by ``2^W`` and rounded down, so term
    ``n`` is low by less than ``n + 1`` units; every term ratio is below
    ``1 - eps``, so the tail after term ``K`` is at most ``T_(K+1) / eps``.
    """
    family = Family.parse(family)
    bits = config.precision_bits() if precision_bits is None else precision_bits
    eps = Fraction(str(eps)) if not isinstance(eps, Fraction) else eps
    if not 0 < eps < 1:
        raise DomainError("eps must lie in (0, 1)")
    target_bits = bits // 2
    W = bits + 64
    one_minus = 1 - eps
    a, b = one_minus.numerator, one_minus.denominator
    r_c = _RADIUS[family]
    scale = 1 << W
    term = scale * a * r_c.numerator // (b * r_c.denominator)  # w_0 r
    total = 0
    n = 0
    # tail bound test: T_(n+1)/eps < 2^-target, i.e. T * den(eps) < num(eps) * 2^(W - target)
    limit = eps.numerator << (W - target_bits)
    while True:
        total += term
        p, q = _ratio(family, n)
        term = term * p * a // (q * b)
        n += 1
        if term * eps.denominator < limit:
            break
        if n > MAX_TERMS:
            raise ResourceError(f"tail bound not reached after {MAX_TERMS} terms")
    tail_units = Fraction(term * eps.denominator, eps.numerator) + 1
    rounding_units = n * (n + 1) // 2 + 1
    err_units = tail_units + rounding_units
    with mpmath.workprec(W + 16):
        value = mpmath.mpf(total) / scale
        error = mpmath.mpf(err_units.numerator) / err_units.denominator / scale
    if error > mpmath.ldexp(1, -target_bits + 1):
        raise ResourceError("rounding error exceeds the requested precision")
    return OmegaValue(eps, value, error, n)


def singular_slope_fit(family, eps_pair: Sequence = ("1e-3", "1e-4"), precision_bits: Optional[int] = None):
    """Fit ``s`` in ``Omega = rho + s eps log eps + a eps`` from two values of ``eps``."""
    family = Family.parse(family)
    e1, e2 = (Fraction(str(e)) if not isinstance(e, Fraction) else e for e in eps_pair)
    if not (0 < e2 < e1 <= Fraction(1, 100)):
        raise DomainError("need 0 < eps2 < eps1 <= 1e-2")
    bits = config.precision_bits() if precision_bits is None else precision_bits
    c = constants(family, bits)
    v1 = omega_near_radius(family, e1, bits)
    v2 = omega_near_radius(family, e2, bits)
    with mpmath.workprec(bits):
        f1 = mpmath.mpf(e1.numerator) / e1.denominator
        f2 = mpmath.mpf(e2.numerator) / e2.denominator
        y1 = (v1.value - c.rho) / f1
        y2 = (v2.value - c.rho) / f2
        return +((y1 - y2) / (mpmath.log(f1) - mpmath.log(f2)))


def _sig(x, digits: int = 20) -> str:
    return mpmath.nstr(x, digits, min_fixed=-math.inf, max_fixed=math.inf) if x else "0"


def growth_rows(family, n_max: int, precision_bits: Optional[int] = None) -> List[Tuple[int, int, str, str]]:
    """``(n, r_n, r_(n+1)/r_n, n^2 log(n)^2 |r_n| / mu^n)`` for ``1 <= n <= n_max``."""
    family = Family.parse(family)
    if not 1 <= n_max <= 2000:
        raise DomainError("n_max must lie in [1, 2000]")
    R = series_R(family, n_max + 1)
    coeffs = R.integers()
    bits = config.precision_bits() if precision_bits is None else precision_bits
    rows = []
    with mpmath.workprec(bits):
        mu = constants(family, bits).mu
        log_mu = mpmath.log(mu)
        for n in range(1, n_max + 1):
            r_n = coeffs[n]
            ratio = mpmath.mpf(coeffs[n + 1]) / r_n
            norm = (mpmath.mpf(n) ** 2 * mpmath.log(n) ** 2) * abs(mpmath.mpf(r_n)) * mpmath.exp(-n * log_mu)
            rows.append((n, r_n, _sig(ratio), _sig(norm)))
    return rows


def growth_report(family, n_max: int, precision_bits: Optional[int] = None) -> str:
    """CSV text with header ``n,r_n,ratio,normalized``."""
    lines = ["n,r_n,ratio,normalized"]
    lines += [f"{n},{r},{ratio},{norm}" for n, r, ratio, norm in growth_rows(family, n_max, precision_bits)]
    return "\n".join(lines) + "\n"
