"""Fixed-point solvers for the patch systems.

Quartic system (labelled quadrangulations)::

    P = (1/y) [x^1] C
    D = 1 / (1 - C(t, 1/(1-x), y))
    D = 1 + y [x>=0] ( D (x^-1 P(t, t/x) + [y^1] D) )
    [y^1] D = 1/(1-x) (1 + 2t [y^2] D - t ([y^1] D)^2)
    Q = [y^1] P - 1

Colourful system (colourful labelled quadrangulations)::

    P = (1/y) [x^1] C
    D = 1 / (1 - C(t, 1/(1-x), y))
    C = x y [x>=0] ( P(t, t x) D(t, 1/x, y) ),     P(t, 0) = 1
    Q^c = [y^1] P - 1

Coefficients ``p_{j,n}, c_{j,n}(x), d_{j,n}(x)`` of ``y^j t^n`` are filled in
level by level (level = ``j + n``).  Every read of a coefficient goes through
a table that refuses undetermined entries, so a wrong schedule fails loudly.

The quartic system loses x-precision in ``D``: each use of ``x^-(i+1) P``
shifts exponents down, and recovering ``c_{j,n}`` from ``C(1/(1-x))`` needs
``D`` up to ``x^(1+4n)``.  The solver therefore keeps a wider window than
the order alone suggests and records, per cell, the largest exponent of
``d_{j,n}`` that is exact.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Tuple

from .closedform import ClosedTriple, Family
from .errors import ConfigurationError, InternalError
from .fps import TotalOrderSeries, UniSeries, XLaurent

__all__ = [
    "SystemKind",
    "SolvedTriple",
    "solve",
    "extract_Q",
    "cross_validate",
    "residuals",
    "quartic_window",
]

Cell = Tuple[int, int]
_ONE = XLaurent.constant(1)
_ZERO = XLaurent.zero()


class SystemKind(enum.Enum):
    QUARTIC = "quartic"
    COLOURFUL = "colourful"

    @classmethod
    def parse(cls, value) -> "SystemKind":
        if isinstance(value, SystemKind):
            return value
        v = str(value).lower()
        if v == "colorful":
            v = "colourful"
        try:
            return cls(v)
        except ValueError:
            raise ConfigurationError(f"unknown system {value!r}") from None


class _Table:
    """Coefficient store that rejects reads of undetermined cells."""

    def __init__(self, name: str):
        self.name = name
        self._data: Dict[Cell, XLaurent] = {}

    def __getitem__(self, cell: Cell) -> XLaurent:
        try:
            return self._data[cell]
        except KeyError:
            raise InternalError(f"{self.name}{cell} read before it was determined") from None

    def __setitem__(self, cell: Cell, value: XLaurent) -> None:
        if cell in self._data:
            raise InternalError(f"{self.name}{cell} written twice")
        self._data[cell] = value

    def __contains__(self, cell: Cell) -> bool:
        return cell in self._data

    def items(self):
        return self._data.items()


@dataclass(frozen=True)
class SolvedTriple:
    """Solution of a patch system up to total order ``order``.

    ``P`` is exact for ``j + n <= p_order``; ``C`` is exact (polynomial) for
    ``j + n <= order``; ``d_{j,n}`` is exact for exponents up to
    ``d_trusted[(j, n)]``.
    """

    kind: SystemKind
    order: int
    P: TotalOrderSeries
    C: TotalOrderSeries
    D: TotalOrderSeries
    d_trusted: Dict[Cell, int] = field(default_factory=dict)

    @property
    def p_order(self) -> int:
        return self.P.order


def quartic_window(order: int, margin: int = 2) -> int:
    """Smallest x-window maximum for which the quartic solver is exact to ``order``.

    At level ``L`` the entries of ``D`` are exact up to ``X - L(L-1)/2`` and the
    C-recovery needs exponents up to ``4L - 3``.
    """
    need = order + 2
    for L in range(1, order + 1):
        need = max(need, L * (L - 1) // 2 + 4 * L - 3 + margin)
    return need


def solve(kind, order: int, x_max: int | None = None) -> SolvedTriple:
    """Solve the quartic or colourful system up to total order ``order``."""
    kind = SystemKind.parse(kind)
    if order < 0:
        raise ConfigurationError("order must be nonnegative")
    if kind is SystemKind.QUARTIC:
        return _solve_quartic(order, x_max)
    return _solve_colourful(order, x_max)


def _prefix_sum(v: XLaurent, xmax: int) -> XLaurent:
    """Multiply a power series in x by ``1/(1-x)``, truncated at ``xmax``."""
    if not v.num:
        return v
    if v.lo < 0:
        raise InternalError("prefix sum of a Laurent polynomial")
    acc = []
    run = 0
    coeffs = [0] * v.lo + list(v.num)
    for k in range(xmax + 1):
        if k < len(coeffs):
            run += coeffs[k]
        acc.append(run)
    return XLaurent(0, acc, v.den)


def _lin(terms: Iterable[Tuple[XLaurent, XLaurent]], lo: int, hi: int) -> XLaurent:
    total = _ZERO
    for a, b in terms:
        if a.num and b.num:
            total = total + (a * b).truncate(lo, hi)
    return total


def _solve_quartic(N: int, x_max: int | None) -> SolvedTriple:
    need = quartic_window(N)
    X = need if x_max is None else x_max
    if X < need:
        raise ConfigurationError(f"quartic solver at order {N} needs x window max >= {need}, got {X}")
    p = _Table("p")
    c = _Table("c")
    d = _Table("d")
    e = _Table("e")  # coefficients of 1/D
    acc: Dict[int, int] = {}  # exact x-range per level

    d[0, 0] = _ONE
    e[0, 0] = _ONE
    c[0, 0] = _ZERO
    acc[0] = X
    # Level L determines d and c at level L and p at level L - 1.
    for L in range(1, N + 1):
        acc[L] = X - L * (L - 1) // 2
        # d_{j, L-j} for j = L down to 2
        for j in range(L, 1, -1):
            n = L - j
            terms: List[Tuple[XLaurent, XLaurent]] = []
            for n1 in range(0, n + 1):
                s = n - n1
                # [t^s] x^-1 P(t, t/x) = sum_{i+m=s} p_{i,m} x^-(i+1)
                ps = XLaurent.from_dict({-(i + 1): p[i, s - i].coeff(0) for i in range(0, s + 1)})
                terms.append((d[j - 1, n1], ps))
                terms.append((d[j - 1, n1], d[1, n - n1]))
            d[j, n] = _lin(terms, -X, X).nonneg()
        # d_{1, L-1} from the initial condition
        n = L - 1
        inner = _ONE if n == 0 else _ZERO
        if n >= 1:
            inner = inner + d[2, n - 1].scale(2)
            for a in range(0, n):
                inner = inner - (d[1, a] * d[1, n - 1 - a]).truncate(0, X)
        d[1, n] = _prefix_sum(inner, X)
        d[0, L] = _ZERO
        # e = 1/D at level L, then F = 1 - 1/D = -e, then C and P
        for j in range(0, L + 1):
            n = L - j
            terms = []
            for a in range(1, j + 1):
                for b in range(0, n + 1):
                    terms.append((d[a, b], e[j - a, n - b]))
            e[j, n] = -_lin(terms, 0, X)
        for j in range(0, L + 1):
            n = L - j
            if j == 0:
                cj = _ZERO
            else:
                f = -e[j, n]
                deg = 1 + 4 * n
                cj = f.unsubst_geometric(deg)
                check_to = min(acc[L], X)
                if cj.subst_geometric(check_to) != f.truncate(0, check_to):
                    raise InternalError(f"c{(j, n)} exceeds the degree bound {deg}")
                p[j - 1, n] = XLaurent.constant(cj.coeff(1))
            c[j, n] = cj

    p_order = N - 1 if N >= 1 else 0
    window = (-X, X)
    P = TotalOrderSeries(max(p_order, 0), window, {cell: v for cell, v in p.items() if sum(cell) <= p_order})
    if N == 0:
        P = TotalOrderSeries(0, window, {(0, 0): _ONE})
    C = TotalOrderSeries(N, window, {cell: v for cell, v in c.items() if sum(cell) <= N})
    D = TotalOrderSeries(N, window, {cell: v for cell, v in d.items() if sum(cell) <= N})
    trusted = {(j, n): acc[j + n] for j in range(N + 1) for n in range(N + 1 - j)}
    return SolvedTriple(SystemKind.QUARTIC, N, P, C, D, trusted)


def _solve_colourful(N: int, x_max: int | None) -> SolvedTriple:
    X = N + 1 if x_max is None else x_max
    if X < N + 1:
        raise ConfigurationError(f"colourful solver at order {N} needs x window max >= {N + 1}, got {X}")
    p = _Table("p")
    c = _Table("c")
    d = _Table("d")
    f = _Table("f")  # C(t, 1/(1-x), y)

    p[0, 0] = _ONE
    c[0, 0] = _ZERO
    d[0, 0] = _ONE
    f[0, 0] = _ZERO
    for L in range(1, N + 1):
        # C at level L
        for j in range(0, L + 1):
            n = L - j
            if j == 0:
                c[j, n] = _ZERO
                continue
            terms = []
            for n1 in range(0, n + 1):
                dd = d[j - 1, n1].reflect()
                for i in range(0, n - n1 + 1):
                    m = n - n1 - i
                    pim = p[i, m]
                    if pim.num:
                        terms.append((pim, dd.shift(i)))
            c[j, n] = _lin(terms, -X, X).nonneg().shift(1)
        # D at level L
        for j in range(0, L + 1):
            n = L - j
            f[j, n] = c[j, n].subst_geometric(X)
        for j in range(0, L + 1):
            n = L - j
            if j == 0:
                d[j, n] = _ZERO
                continue
            terms = []
            for a in range(1, j + 1):
                for b in range(0, n + 1):
                    terms.append((f[a, b], d[j - a, n - b]))
            d[j, n] = _lin(terms, 0, X)
        # P at level L
        for j in range(0, L + 1):
            n = L - j
            if j == 0:
                p[j, n] = _ZERO
                continue
            s = Fraction(0)
            for n1 in range(0, n + 1):
                dj = d[j, n1]
                for i in range(0, n - n1 + 1):
                    pim = p[i, n - n1 - i].coeff(0)
                    if pim:
                        s += pim * dj.coeff(i)
            p[j, n] = XLaurent.constant(s)
    window = (-X, X)
    P = TotalOrderSeries(N, window, dict(p.items()))
    C = TotalOrderSeries(N, window, dict(c.items()))
    D = TotalOrderSeries(N, window, dict(d.items()))
    trusted = {(j, n): X for j in range(N + 1) for n in range(N + 1 - j)}
    return SolvedTriple(SystemKind.COLOURFUL, N, P, C, D, trusted)


def extract_Q(sol: SolvedTriple) -> UniSeries:
    """``[y^1] P - 1`` as a series in t, valid up to ``t^(p_order - 1)``."""
    M = sol.p_order - 1
    if M < 0:
        raise ConfigurationError("solution order too small to extract Q")
    coeffs = [sol.P.coeff(1, n) for n in range(0, M + 1)]
    coeffs[0] -= 1
    return UniSeries.from_coeffs(coeffs, M)


# ---------------------------------------------------------------------------
# verification


def _trusted_diff(a: TotalOrderSeries, b: TotalOrderSeries, cells: Iterable[Cell], limit) -> List[Tuple[int, int, int]]:
    """Exponents ``(j, n, k)`` where ``a`` and ``b`` differ, for ``k <= limit(cell)``."""
    bad = []
    for cell in cells:
        hi = limit(cell)
        if hi is None:
            continue
        level = cell[0] + cell[1]
        va = a[cell] if level <= a.order else _ZERO
        vb = b[cell] if level <= b.order else _ZERO
        diff = va - vb
        if diff.num:
            for k, _ in diff.truncate(diff.lo, hi).items():
                bad.append((cell[0], cell[1], k))
    return bad


def residuals(sol: SolvedTriple) -> Dict[str, List[Tuple[int, int, int]]]:
    """Substitute the triple back into its system with generic series operations.

    Returns, per equation, the list of ``(j, n, k)`` where the two sides differ
    inside the region where the solution is exact.  Empty lists mean success.
    """
    N = sol.order
    X = sol.D.x_window[1]
    window = sol.D.x_window
    P = sol.P.with_truncation(order=N)
    C, D = sol.C, sol.D
    one = TotalOrderSeries.one(N, window)
    trusted = sol.d_trusted
    out: Dict[str, List[Tuple[int, int, int]]] = {}

    def cells(order):
        return [(j, n) for j in range(order + 1) for n in range(order + 1 - j)]

    # P = (1/y) [x^1] C; the division by y costs one order
    rhs = C.coeff_x(1).shift_y(-1)
    out["P=[x^1]C/y"] = _trusted_diff(P, rhs, cells(min(sol.p_order, N - 1)), lambda cell: X)

    # D (1 - C(1/(1-x))) = 1
    F = C.subst_geometric()
    lhs = D * (one - F)
    out["D=1/(1-C(1/(1-x)))"] = _trusted_diff(lhs, one, cells(N), lambda cell: trusted[cell])

    if sol.kind is SystemKind.QUARTIC:
        D1 = D.coeff_y(1)
        D2 = D.coeff_y(2)
        kernel = P.compose_P("t_over_x").shift_x(-1) + D1
        rhs = one + (D * kernel).nonneg_part_x().shift_y(1)
        out["D=1+y[x>=0](...)"] = _trusted_diff(D, rhs, cells(N), lambda cell: trusted[cell])
        # initial condition, as (1-x) D1 = 1 + 2t D2 - t D1^2 on the y^0 cells
        lhs = D1 - D1.shift_x(1)
        rhs = one + D2.shift_t(1).scale(2) - (D1 * D1).shift_t(1)
        lim = lambda cell: trusted.get((1, cell[1]), None) if cell[0] == 0 and cell[1] <= N - 1 else None
        out["initial condition"] = _trusted_diff(lhs, rhs, cells(N), lim)
    else:
        rhs = (P.compose_P("t_times_x") * D.reflect_x()).nonneg_part_x().shift_y(1).shift_x(1)
        out["C=xy[x>=0](...)"] = _trusted_diff(C, rhs, cells(N), lambda cell: X)
        out["P(t,0)=1"] = [] if all(P.coeff(0, n) == (1 if n == 0 else 0) for n in range(N + 1)) and P[0, 0] == _ONE else [(0, 0, 0)]
    return out


def cross_validate(sol: SolvedTriple, closed: ClosedTriple) -> Dict[str, object]:
    """Compare a solved triple with the closed forms after the natural scaling.

    ``Pc = t P(t, t y)``, ``Cc = C(t, x, t y)``, ``Dc = D(t, x, t y)``: the
    unscaled cell ``(j, n)`` of C and D sits at ``(j, n + j)`` and that of P at
    ``(j, n + j + 1)``.  Cells are compared only where both sides are exact.
    Returns ``{"identical": bool, "mismatches": [...], "max_mismatch": ...,
    "compared": int}``.
    """
    N = sol.order
    M = closed.order
    xmax_closed = closed.D.x_window[1]
    mismatches: List[Tuple[str, int, int, int]] = []
    compared = 0

    def compare(name, a: XLaurent, b: XLaurent, hi, cell):
        nonlocal compared
        diff = a.truncate(-10**9, hi) - b.truncate(-10**9, hi)
        compared += 1
        for k, _ in diff.items():
            mismatches.append((name, cell[0], cell[1], k))

    for j in range(0, N + 1):
        for n in range(0, N + 1 - j):
            if j + n <= sol.p_order and 2 * j + n + 1 <= M:
                compare("P", sol.P[j, n], closed.P[j, n + j + 1], 0, (j, n))
            if 2 * j + n <= M:
                compare("C", sol.C[j, n], closed.C[j, n + j], xmax_closed, (j, n))
                compare("D", sol.D[j, n], closed.D[j, n + j], min(xmax_closed, sol.d_trusted[(j, n)]), (j, n))
    return {
        "identical": not mismatches,
        "mismatches": mismatches,
        "max_mismatch": max(mismatches, key=lambda m: (m[1] + m[2], m[3])) if mismatches else None,
        "compared": compared,
    }
