"""Closed-form series for the quartic and general families.

Both families are driven by a hypergeometric series ``Omega`` and its
compositional inverse ``R``:

* quartic:  ``Omega(r) = sum_n 1/(n+1) C(2n,n) C(3n,n) r^(n+1)`` and
  ``Q(t) = (t - 3t^2 - R(t)) / (3t^2)`` counts quartic Eulerian
  orientations by vertices;
* general:  ``Omega(r) = sum_n 1/(n+1) C(2n,n)^2 r^(n+1)`` and
  ``G(t) = (t - 2t^2 - R(t)) / (4t^2)`` counts Eulerian orientations by
  edges.

:func:`explicit_triple` evaluates the patch series in the scaled variables
``Pc(t,y) = t P(t,ty)``, ``Cc(t,x,y) = C(t,x,ty)`` and ``Dc(t,x,y) = D(t,x,ty)``.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .errors import ConfigurationError, InternalError
from .fps import TotalOrderSeries, UniSeries, XLaurent, reversion

__all__ = [
    "Family",
    "ClosedTriple",
    "omega",
    "series_R",
    "gf_main",
    "explicit_triple",
    "check_cat_identity",
    "cat_lagrange_coefficient",
    "check_vandermonde",
    "check_omega_ode",
    "check_R_ode",
    "binom",
]


class Family(enum.Enum):
    QUARTIC = "quartic"
    GENERAL = "general"

    @classmethod
    def parse(cls, value) -> "Family":
        if isinstance(value, Family):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ConfigurationError(f"unknown family {value!r}") from None


# (c, m) with  c Omega + r (m r - 1) Omega'' = 0, and the t^2 factor in Q/G
_ODE = {Family.QUARTIC: (6, 27), Family.GENERAL: (4, 16)}
_LINEAR = {Family.QUARTIC: 3, Family.GENERAL: 2}
_DIVISOR = {Family.QUARTIC: 3, Family.GENERAL: 4}


@functools.lru_cache(maxsize=None)
def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero outside ``0 <= k <= n``."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def _omega_coeff(family: Family, n: int) -> int:
    """``[r^(n+1)] Omega``."""
    if family is Family.QUARTIC:
        return binom(2 * n, n) * binom(3 * n, n) // (n + 1)
    return binom(2 * n, n) ** 2 // (n + 1)


def omega(family, order: int) -> UniSeries:
    family = Family.parse(family)
    if order < 1:
        raise ConfigurationError("order must be at least 1")
    return UniSeries(order, [0] + [_omega_coeff(family, n) for n in range(order)])


@functools.lru_cache(maxsize=8)
def _series_R_cached(family: Family, order: int) -> UniSeries:
    R = reversion(omega(family, order))
    if not R.is_integral():
        raise InternalError("R has a non-integral coefficient")
    return R


def series_R(family, order: int) -> UniSeries:
    """The series ``R`` with ``Omega(R(t)) = t``; integrality is asserted."""
    family = Family.parse(family)
    if order < 1:
        raise ConfigurationError("order must be at least 1")
    return _series_R_cached(family, order)


def gf_main(family, order: int) -> UniSeries:
    """``Q(t)`` (quartic, by vertices) or ``G(t)`` (general, by edges)."""
    family = Family.parse(family)
    if order < 1:
        raise ConfigurationError("order must be at least 1")
    R = series_R(family, order + 2)
    c = _LINEAR[family]
    numer = UniSeries.t(order + 2) - UniSeries(order + 2, [0, 0, c]) - R
    if numer.num[0] or numer.num[1] or numer.num[2]:
        raise InternalError("t - c t^2 - R does not vanish to order 2")
    out = numer.shift(-2).scale(Fraction(1, _DIVISOR[family])).truncate(order)
    if not out.is_integral():
        raise InternalError("counting series has a non-integral coefficient")
    return out


# ---------------------------------------------------------------------------
# explicit triple


@dataclass(frozen=True)
class ClosedTriple:
    """The scaled patch series of a family."""

    family: Family
    P: TotalOrderSeries
    C: TotalOrderSeries
    D: TotalOrderSeries

    @property
    def order(self) -> int:
        return self.P.order


def _P_weight(family: Family, n: int, j: int) -> Fraction:
    if family is Family.QUARTIC:
        return Fraction(binom(2 * n - j, n) * binom(3 * n - j, n), n + 1)
    return Fraction(binom(2 * n, n) * binom(2 * n - j, n), n + 1)


def _C_poly(family: Family, n: int, j: int) -> List[int]:
    """Coefficients of ``x^(i+1)`` (index i) inside the C exponent, without 1/(n+1)."""
    if family is Family.QUARTIC:
        return [binom(2 * n - j, n) * binom(3 * n - i - j, n) for i in range(0, 2 * n - j + 1)]
    return [binom(2 * n - i, n) * binom(2 * n - j, n) for i in range(0, n + 1)]


def _D_poly(family: Family, n: int, j: int, xmax: int) -> List[int]:
    """Coefficients of ``x^i`` (index i) inside the D exponent, without 1/(n+1)."""
    if family is Family.QUARTIC:
        return [binom(2 * n - j, n) * binom(3 * n + i - j + 1, 2 * n - j) for i in range(0, xmax + 1)]
    return [binom(2 * n - j, n) * binom(2 * n + i + 1, n) for i in range(0, xmax + 1)]


def D_poly_rational(family, n: int, j: int, xmax: int) -> XLaurent:
    """Second evaluation path for the quartic D-kernel via its rational form.

    ``sum_i C(3n+i-j+1, 2n-j) x^i = 1/(x^(n+1) (1-x)^(2n-j+1))
    - sum_{l=0}^{n} C(3n-l-j, 2n-j) / x^(l+1)``, expanded up to ``x^xmax``.
    For the general family the analogous form uses ``C(2n+i+1, n)``.
    Returns the kernel including the ``C(2n-j,n)`` factor.
    """
    family = Family.parse(family)
    if family is Family.QUARTIC:
        a = 2 * n - j  # (1-x)^-(a+1)
        shift = n + 1
        sub = {-(l + 1): binom(3 * n - l - j, 2 * n - j) for l in range(0, n + 1)}
    else:
        a = n
        shift = n + 1
        sub = {-(l + 1): binom(2 * n - l, n) for l in range(0, n + 1)}
    # x^-shift (1-x)^-(a+1) = sum_k C(a+k, a) x^(k - shift)
    terms: Dict[int, int] = {}
    for k in range(0, xmax + shift + 1):
        terms[k - shift] = binom(a + k, a)
    for e, c in sub.items():
        terms[e] = terms.get(e, 0) - c
    for e in list(terms):
        if e < 0:
            if terms[e] != 0:
                raise InternalError("rational form leaves a pole")
            del terms[e]
    outer = binom(2 * n - j, n)
    return XLaurent.from_dict({e: outer * c for e, c in terms.items() if e <= xmax})


def _R_powers(R: UniSeries, kmax: int) -> List[UniSeries]:
    powers = [UniSeries.constant(R.order, 1)]
    for _ in range(kmax):
        powers.append(powers[-1] * R)
    return powers


def explicit_triple(family, order: int, x_max: int | None = None) -> ClosedTriple:
    """Scaled series ``(Pc, Cc, Dc)`` truncated at total (y,t)-degree ``order``.

    ``x_max`` bounds the x-exponents kept (default ``order + 1``).  The
    returned series all share the window ``[0, x_max]``.
    """
    family = Family.parse(family)
    if order < 1:
        raise ConfigurationError("order must be at least 1")
    if x_max is None:
        x_max = order + 1
    if x_max < order:
        raise ConfigurationError("x window must reach at least the order")
    N = order
    window = (0, x_max)
    R = series_R(family, N)
    Rp = _R_powers(R, N)

    # Pc:  [y^j t^m] = sum_{n: j<=n<=m-1} w(n,j) [t^m] R^(n+1)
    p_cells: Dict[Tuple[int, int], XLaurent] = {}
    for j in range(0, N + 1):
        for m in range(0, N - j + 1):
            s = Fraction(0)
            for n in range(j, m):
                s += _P_weight(family, n, j) * Rp[n + 1][m]
            if s:
                p_cells[(j, m)] = XLaurent.constant(s)
    P = TotalOrderSeries(N, window, p_cells)

    # exponents of Cc and Dc: cell (j+1, m) collects n from j to m-1
    t_cells: Dict[Tuple[int, int], XLaurent] = {}
    s_cells: Dict[Tuple[int, int], XLaurent] = {}
    for j in range(0, N):
        for m in range(0, N - j):
            acc_t: Dict[int, Fraction] = {}
            acc_s: Dict[int, Fraction] = {}
            for n in range(j, m):
                r = Rp[n + 1][m]
                if not r:
                    continue
                w = r / (n + 1)
                for i, c in enumerate(_C_poly(family, n, j)):
                    if c and i + 1 <= x_max:
                        acc_t[i + 1] = acc_t.get(i + 1, 0) + w * c
                for i, c in enumerate(_D_poly(family, n, j, x_max)):
                    if c:
                        acc_s[i] = acc_s.get(i, 0) + w * c
            if acc_t:
                t_cells[(j + 1, m)] = XLaurent.from_dict(acc_t)
            if acc_s:
                s_cells[(j + 1, m)] = XLaurent.from_dict(acc_s)
    T = TotalOrderSeries(N, window, t_cells)
    S = TotalOrderSeries(N, window, s_cells)
    one = TotalOrderSeries.one(N, window)
    C = one - (-T).exp()
    D = S.exp()
    return ClosedTriple(family, P, C, D)


# ---------------------------------------------------------------------------
# identities


def cat_series(order: int) -> UniSeries:
    """Catalan generating function ``sum_n C(2n,n)/(n+1) u^n``."""
    return UniSeries(order, [binom(2 * n, n) // (n + 1) for n in range(order + 1)])


def check_cat_identity(order: int) -> Tuple[bool, TotalOrderSeries]:
    """Check ``exp(A(u,z)) (1 - z u Cat(u)) = 1`` to total degree ``order``.

    Uses ``y`` for ``z`` and ``t`` for ``u``.  Returns ``(ok, residual)``,
    where the residual is the product minus one.
    """
    if order < 1:
        raise ConfigurationError("order must be at least 1")
    N = order
    window = (0, 0)
    A_cells = {}
    for n in range(0, N):
        for j in range(0, n + 1):
            if j + 1 + n + 1 <= N:
                A_cells[(j + 1, n + 1)] = XLaurent.constant(Fraction(binom(2 * n - j, n), n + 1))
    A = TotalOrderSeries(N, window, A_cells)
    cat = cat_series(N)
    f_cells = {(0, 0): XLaurent.constant(1)}
    for n in range(0, N):
        # - z u Cat(u):  y^1 t^(n+1)
        if n + 2 <= N:
            f_cells[(1, n + 1)] = XLaurent.constant(-cat[n])
    factor = TotalOrderSeries(N, window, f_cells)
    residual = A.exp() * factor - TotalOrderSeries.one(N, window)
    return residual.is_zero(), residual


def cat_lagrange_coefficient(n: int, j: int) -> Tuple[Fraction, Fraction]:
    """``([u^(n+1)] (u Cat(u))^(j+1), (j+1)/(n+1) C(2n-j, n))``."""
    cat = cat_series(n + 1)
    uc = cat.shift(1)
    power = uc ** (j + 1)
    return power[n + 1], Fraction(j + 1, n + 1) * binom(2 * n - j, n)


def check_vandermonde(k: int, l: int, n: int) -> bool:
    """``sum_{i=0}^{k-n} C(k-i, n) C(l+i, l) == C(k+l+1, n+l+1)``."""
    if not (0 <= n <= k) or l < 0:
        raise ConfigurationError("need 0 <= n <= k and l >= 0")
    lhs = sum(binom(k - i, n) * binom(l + i, l) for i in range(0, k - n + 1))
    return lhs == binom(k + l + 1, n + l + 1)


def check_omega_ode(family, order: int) -> UniSeries:
    """Residual ``c Omega + r (m r - 1) Omega''`` to order ``order``."""
    family = Family.parse(family)
    if order < 3:
        raise ConfigurationError("order must be at least 3")
    c, m = _ODE[family]
    M = order + 2
    W = omega(family, M)
    W2 = W.derivative().derivative()
    poly = UniSeries(M, [0, -1, m])
    res = W.scale(c) + poly * W2
    return res.truncate(order)


def check_R_ode(family, order: int) -> UniSeries:
    """Residual ``R (m R - 1) R'' - c t R'^3`` to order ``order``."""
    family = Family.parse(family)
    if order < 3:
        raise ConfigurationError("order must be at least 3")
    c, m = _ODE[family]
    M = order + 2
    R = series_R(family, M)
    R1 = R.derivative()
    R2 = R1.derivative()
    lhs = R * (R.scale(m) - UniSeries.constant(M, 1)) * R2
    rhs = (R1 * R1 * R1).shift(1).scale(c)
    return (lhs - rhs).truncate(order)
