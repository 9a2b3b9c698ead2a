"""Exact truncated power series.

Two containers are provided:

``UniSeries``
    a univariate series ``f_0 + f_1 t + ... + f_N t^N`` over the rationals.

``TotalOrderSeries``
    a series in ``y`` and ``t`` truncated at total degree ``j + n <= N``
    whose coefficients are Laurent polynomials in ``x`` kept inside a fixed
    exponent window.  Each coefficient is an :class:`XLaurent`.

Coefficient vectors are stored as integer numerators over one common
denominator.  Products of integer vectors use Kronecker substitution: the
vectors are packed into two big integers, multiplied once, and unpacked.
With ``gmpy2`` installed the big multiplication runs through GMP.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

from .errors import ConfigurationError, DomainError, InternalError

try:  # pragma: no cover - exercised implicitly
    import gmpy2 as _gmpy2
except ImportError:  # pragma: no cover
    _gmpy2 = None

__all__ = [
    "XLaurent",
    "TotalOrderSeries",
    "UniSeries",
    "convolve",
    "ring_ops",
    "exp_log",
    "x_manipulate",
    "laurent_compose_P",
    "reversion",
    "reversion_lagrange",
    "to_json",
    "from_json",
]

# ---------------------------------------------------------------------------
# integer vector kernels

_SCHOOLBOOK_LEN = 8
_GMP_BITS = 1 << 15


def _max_abs(v: Sequence[int]) -> int:
    return max(max(v), -min(v))


def _pack(v: Sequence[int], nbytes: int) -> int:
    pos = bytearray()
    neg = bytearray()
    zero = bytes(nbytes)
    for c in v:
        if c >= 0:
            pos += c.to_bytes(nbytes, "little")
            neg += zero
        else:
            pos += zero
            neg += (-c).to_bytes(nbytes, "little")
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def convolve(a: Sequence[int], b: Sequence[int]) -> List[int]:
    """Full product of two integer coefficient vectors."""
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        return []
    if min(la, lb) <= _SCHOOLBOOK_LEN:
        if la < lb:
            a, b, la, lb = b, a, lb, la
        out = [0] * (la + lb - 1)
        for i, bi in enumerate(b):
            if bi:
                for k, ak in enumerate(a):
                    out[i + k] += ak * bi
        return out
    ma, mb = _max_abs(a), _max_abs(b)
    if ma == 0 or mb == 0:
        return [0] * (la + lb - 1)
    bound = ma * mb * min(la, lb)
    nbytes = (bound.bit_length() + 1) // 8 + 1
    pa = _pack(a, nbytes)
    pb = _pack(b, nbytes)
    if _gmpy2 is not None and nbytes * 8 * (la + lb) > _GMP_BITS:
        prod = int(_gmpy2.mpz(pa) * _gmpy2.mpz(pb))
    else:
        prod = pa * pb
    length = la + lb - 1
    half = 1 << (8 * nbytes - 1)
    offset = int.from_bytes((bytes(nbytes - 1) + b"\x80") * length, "little")
    raw = (prod + offset).to_bytes(nbytes * length, "little")
    frm = int.from_bytes
    return [frm(raw[i : i + nbytes], "little") - half for i in range(0, nbytes * length, nbytes)]


def _vec_gcd(v: Iterable[int], start: int = 0) -> int:
    g = start
    for c in v:
        if c:
            g = math.gcd(g, c)
            if g == 1:
                return 1
    return g


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


def _frac_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def _parse_frac(s: str) -> Fraction:
    return Fraction(s)


# ---------------------------------------------------------------------------
# Laurent polynomials in x


class XLaurent:
    """Laurent polynomial ``sum_k c_k x^k`` with rational coefficients.

    Stored as ``num[i] / den`` for exponent ``lo + i``.  Instances are
    immutable and normalised: no leading or trailing zeros, ``den > 0`` and
    ``gcd(num, den) == 1``.  The zero polynomial has an empty vector.
    """

    __slots__ = ("lo", "num", "den")

    def __init__(self, lo: int, num: Sequence[int], den: int = 1):
        num = list(num)
        if den < 0:
            den = -den
            num = [-c for c in num]
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        start = 0
        end = len(num)
        while start < end and not num[start]:
            start += 1
        while end > start and not num[end - 1]:
            end -= 1
        if start == end:
            self.lo, self.num, self.den = 0, (), 1
            return
        num = num[start:end]
        if den != 1:
            g = _vec_gcd(num, den)
            if g != 1:
                num = [c // g for c in num]
                den //= g
        self.lo = lo + start
        self.num = tuple(num)
        self.den = den

    # -- construction
    @classmethod
    def zero(cls) -> "XLaurent":
        return _ZERO

    @classmethod
    def constant(cls, c) -> "XLaurent":
        return cls.monomial(0, c)

    @classmethod
    def monomial(cls, k: int, c=1) -> "XLaurent":
        c = Fraction(c)
        return cls(k, (c.numerator,), c.denominator)

    @classmethod
    def from_coeffs(cls, lo: int, coeffs: Iterable) -> "XLaurent":
        fr = [Fraction(c) for c in coeffs]
        if not fr:
            return _ZERO
        den = 1
        for c in fr:
            den = _lcm(den, c.denominator)
        return cls(lo, [c.numerator * (den // c.denominator) for c in fr], den)

    @classmethod
    def from_dict(cls, d: Mapping[int, object]) -> "XLaurent":
        items = {k: Fraction(v) for k, v in d.items() if v}
        if not items:
            return _ZERO
        lo, hi = min(items), max(items)
        return cls.from_coeffs(lo, [items.get(k, 0) for k in range(lo, hi + 1)])

    # -- inspection
    @property
    def hi(self) -> int:
        return self.lo + len(self.num) - 1

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def coeff(self, k: int) -> Fraction:
        i = k - self.lo
        if 0 <= i < len(self.num):
            return Fraction(self.num[i], self.den)
        return Fraction(0)

    def items(self) -> Iterator[Tuple[int, Fraction]]:
        for i, c in enumerate(self.num):
            if c:
                yield self.lo + i, Fraction(c, self.den)

    def to_dict(self) -> Dict[int, Fraction]:
        return dict(self.items())

    def __eq__(self, other) -> bool:
        if isinstance(other, XLaurent):
            return self.num == other.num and self.den == other.den and (not self.num or self.lo == other.lo)
        if isinstance(other, (int, Fraction)):
            return self == XLaurent.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.lo if self.num else 0, self.num, self.den))

    def __repr__(self) -> str:
        if not self.num:
            return "XLaurent(0)"
        terms = " + ".join(f"{c}*x^{k}" for k, c in self.items())
        return f"XLaurent({terms})"

    # -- arithmetic
    def _aligned(self, other: "XLaurent") -> Tuple[int, List[int], List[int], int]:
        den = _lcm(self.den, other.den)
        fa, fb = den // self.den, den // other.den
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        a = [0] * (hi - lo + 1)
        b = [0] * (hi - lo + 1)
        off = self.lo - lo
        for i, c in enumerate(self.num):
            a[off + i] = c * fa
        off = other.lo - lo
        for i, c in enumerate(other.num):
            b[off + i] = c * fb
        return lo, a, b, den

    def __add__(self, other: "XLaurent") -> "XLaurent":
        if not other.num:
            return self
        if not self.num:
            return other
        lo, a, b, den = self._aligned(other)
        return XLaurent(lo, [p + q for p, q in zip(a, b)], den)

    def __sub__(self, other: "XLaurent") -> "XLaurent":
        if not other.num:
            return self
        lo, a, b, den = self._aligned(other)
        return XLaurent(lo, [p - q for p, q in zip(a, b)], den)

    def __neg__(self) -> "XLaurent":
        return XLaurent(self.lo, [-c for c in self.num], self.den)

    def __mul__(self, other) -> "XLaurent":
        if isinstance(other, XLaurent):
            if not self.num or not other.num:
                return _ZERO
            return XLaurent(self.lo + other.lo, convolve(self.num, other.num), self.den * other.den)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c) -> "XLaurent":
        c = Fraction(c)
        if not c or not self.num:
            return _ZERO
        return XLaurent(self.lo, [x * c.numerator for x in self.num], self.den * c.denominator)

    def shift(self, k: int) -> "XLaurent":
        """Multiply by ``x^k``."""
        if not self.num or k == 0:
            return self
        return XLaurent(self.lo + k, self.num, self.den)

    def truncate(self, lo: int, hi: int) -> "XLaurent":
        """Drop every exponent outside ``[lo, hi]``."""
        if not self.num or (self.lo >= lo and self.hi <= hi):
            return self
        a = max(lo, self.lo)
        b = min(hi, self.hi)
        if a > b:
            return _ZERO
        return XLaurent(a, self.num[a - self.lo : b - self.lo + 1], self.den)

    def nonneg(self) -> "XLaurent":
        return self.truncate(0, max(self.hi, 0))

    def reflect(self) -> "XLaurent":
        """Substitute ``x -> 1/x``."""
        if not self.num:
            return self
        return XLaurent(-self.hi, self.num[::-1], self.den)

    def subst_geometric(self, xmax: int) -> "XLaurent":
        """Substitute ``x -> 1/(1-x)``, truncating above ``x^xmax``."""
        if not self.num:
            return self
        if self.lo < 0:
            raise DomainError("substitution x -> 1/(1-x) needs nonnegative exponents")
        if xmax < 0:
            return _ZERO
        size = xmax + 1
        acc = [0] * size
        # Horner in y = 1/(1-x); multiplying by y is a prefix sum.
        for k in range(self.hi, -1, -1):
            if k != self.hi:
                run = 0
                for i in range(size):
                    run += acc[i]
                    acc[i] = run
            i = k - self.lo
            if 0 <= i < len(self.num):
                acc[0] += self.num[i]
        return XLaurent(0, acc, self.den)

    def unsubst_geometric(self, degree: int) -> "XLaurent":
        """Inverse of :meth:`subst_geometric` on polynomials of bounded degree.

        Returns the unique polynomial ``c`` with ``deg c <= degree`` such that
        ``c(1/(1-x))`` agrees with ``self`` modulo ``x^(degree+1)``.
        """
        if self.num and self.lo < 0:
            raise DomainError("unsubstitution needs nonnegative exponents")
        d = degree
        f = [0] * (d + 1)
        for i, c in enumerate(self.num):
            k = self.lo + i
            if k <= d:
                f[k] = c
        # p(x) = (1-x)^d f(x) mod x^(d+1)
        binom = [math.comb(d, i) * (-1) ** i for i in range(d + 1)]
        p = convolve(f, binom)[: d + 1]
        # c_k = (-1)^(d-k) sum_i p_i C(i, d-k)
        out = [0] * (d + 1)
        for k in range(d + 1):
            m = d - k
            s = 0
            for i in range(m, d + 1):
                if p[i]:
                    s += p[i] * math.comb(i, m)
            out[k] = -s if m & 1 else s
        return XLaurent(0, out, self.den)


_ZERO = XLaurent.__new__(XLaurent)
_ZERO.lo, _ZERO.num, _ZERO.den = 0, (), 1
_ONE = XLaurent(0, (1,), 1)


def _sum_products(pairs: Iterable[Tuple[XLaurent, XLaurent, int]], lo: int, hi: int) -> XLaurent:
    """Sum of ``m * a * b`` over the given triples, truncated to ``[lo, hi]``."""
    acc: Dict[int, List[int]] = {}
    for a, b, m in pairs:
        if not a.num or not b.num:
            continue
        start = a.lo + b.lo
        if start > hi or a.hi + b.hi < lo:
            continue
        prod = convolve(a.num, b.num)
        den = a.den * b.den
        slot = acc.get(den)
        if slot is None:
            slot = acc[den] = [0] * (hi - lo + 1)
        i0 = max(lo - start, 0)
        i1 = min(hi - start, len(prod) - 1)
        off = start - lo
        if m == 1:
            for i in range(i0, i1 + 1):
                slot[off + i] += prod[i]
        else:
            for i in range(i0, i1 + 1):
                slot[off + i] += m * prod[i]
    if not acc:
        return _ZERO
    if len(acc) == 1:
        (den, vec), = acc.items()
        return XLaurent(lo, vec, den)
    common = 1
    for den in acc:
        common = _lcm(common, den)
    total = [0] * (hi - lo + 1)
    for den, vec in acc.items():
        f = common // den
        for i, c in enumerate(vec):
            if c:
                total[i] += c * f
    return XLaurent(lo, total, common)


# ---------------------------------------------------------------------------
# series in (y, t) with total-degree truncation

Cell = Tuple[int, int]


class TotalOrderSeries:
    """Truncated series ``sum_{j+n<=N} a_{j,n}(x) y^j t^n``.

    ``x_window = (xmin, xmax)`` bounds the stored x-exponents.  Only nonzero
    cells are stored.  Values are immutable.
    """

    __slots__ = ("order", "x_window", "_cells")

    def __init__(self, order: int, x_window: Tuple[int, int], cells: Mapping[Cell, XLaurent] | None = None):
        if order < 0:
            raise ConfigurationError("order must be nonnegative")
        xmin, xmax = x_window
        if xmin > xmax:
            raise ConfigurationError("empty x window")
        self.order = order
        self.x_window = (xmin, xmax)
        store: Dict[Cell, XLaurent] = {}
        if cells:
            for (j, n), v in cells.items():
                if j < 0 or n < 0:
                    raise DomainError("negative y or t exponent")
                if j + n > order:
                    continue
                v = v.truncate(xmin, xmax)
                if v.num:
                    store[(j, n)] = v
        self._cells = store

    # -- construction
    @classmethod
    def zero(cls, order: int, x_window: Tuple[int, int]) -> "TotalOrderSeries":
        return cls(order, x_window)

    @classmethod
    def one(cls, order: int, x_window: Tuple[int, int]) -> "TotalOrderSeries":
        return cls(order, x_window, {(0, 0): _ONE})

    @classmethod
    def monomial(cls, order: int, x_window: Tuple[int, int], j: int, n: int, k: int = 0, c=1) -> "TotalOrderSeries":
        return cls(order, x_window, {(j, n): XLaurent.monomial(k, c)})

    @classmethod
    def from_terms(cls, order: int, x_window: Tuple[int, int], terms: Mapping[Tuple[int, int, int], object]) -> "TotalOrderSeries":
        """Build from ``{(j, n, k): coefficient}``."""
        buckets: Dict[Cell, Dict[int, object]] = {}
        for (j, n, k), c in terms.items():
            buckets.setdefault((j, n), {})[k] = c
        return cls(order, x_window, {cell: XLaurent.from_dict(d) for cell, d in buckets.items()})

    @classmethod
    def default_window(cls, order: int) -> Tuple[int, int]:
        return (-(order + 1), order + 1)

    # -- inspection
    def __getitem__(self, cell: Cell) -> XLaurent:
        j, n = cell
        if j < 0 or n < 0:
            return _ZERO
        if j + n > self.order:
            raise IndexError(f"cell {cell} beyond truncation order {self.order}")
        return self._cells.get((j, n), _ZERO)

    def coeff(self, j: int, n: int, k: int = 0) -> Fraction:
        return self[j, n].coeff(k)

    def cells(self) -> Iterator[Tuple[Cell, XLaurent]]:
        return iter(sorted(self._cells.items()))

    def terms(self) -> Dict[Tuple[int, int, int], Fraction]:
        return {(j, n, k): c for (j, n), v in self._cells.items() for k, c in v.items()}

    def is_zero(self) -> bool:
        return not self._cells

    def __eq__(self, other) -> bool:
        if not isinstance(other, TotalOrderSeries):
            return NotImplemented
        return self.order == other.order and self.x_window == other.x_window and self._cells == other._cells

    def __hash__(self) -> int:
        return hash((self.order, self.x_window, frozenset(self._cells.items())))

    def __repr__(self) -> str:
        return f"TotalOrderSeries(order={self.order}, x_window={self.x_window}, cells={len(self._cells)})"

    def x_range(self) -> Tuple[int, int] | None:
        """Smallest and largest x-exponent actually present."""
        if not self._cells:
            return None
        return min(v.lo for v in self._cells.values()), max(v.hi for v in self._cells.values())

    def _like(self, cells: Mapping[Cell, XLaurent]) -> "TotalOrderSeries":
        return TotalOrderSeries(self.order, self.x_window, cells)

    def _check(self, other: "TotalOrderSeries") -> None:
        if not isinstance(other, TotalOrderSeries):
            raise TypeError("expected a TotalOrderSeries")
        if self.order != other.order or self.x_window != other.x_window:
            raise ConfigurationError(
                f"mismatched truncation: order {self.order} vs {other.order}, "
                f"window {self.x_window} vs {other.x_window}"
            )

    def with_truncation(self, order: int | None = None, x_window: Tuple[int, int] | None = None) -> "TotalOrderSeries":
        """Re-truncate (or widen the declared bounds of) the series."""
        return TotalOrderSeries(self.order if order is None else order, self.x_window if x_window is None else x_window, self._cells)

    # -- ring operations
    def __add__(self, other: "TotalOrderSeries") -> "TotalOrderSeries":
        self._check(other)
        out = dict(self._cells)
        for cell, v in other._cells.items():
            out[cell] = out[cell] + v if cell in out else v
        return self._like(out)

    def __sub__(self, other: "TotalOrderSeries") -> "TotalOrderSeries":
        return self + (-other)

    def __neg__(self) -> "TotalOrderSeries":
        return self._like({c: -v for c, v in self._cells.items()})

    def scale(self, c) -> "TotalOrderSeries":
        return self._like({cell: v.scale(c) for cell, v in self._cells.items()})

    def __mul__(self, other) -> "TotalOrderSeries":
        if not isinstance(other, TotalOrderSeries):
            return self.scale(other)
        self._check(other)
        N = self.order
        lo, hi = self.x_window
        by_deg: Dict[int, List[Tuple[Cell, XLaurent]]] = {}
        for cell, v in other._cells.items():
            by_deg.setdefault(cell[0] + cell[1], []).append((cell, v))
        jobs: Dict[Cell, List[Tuple[XLaurent, XLaurent, int]]] = {}
        for (j1, n1), a in self._cells.items():
            d1 = j1 + n1
            for d2 in range(0, N - d1 + 1):
                for (j2, n2), b in by_deg.get(d2, ()):
                    jobs.setdefault((j1 + j2, n1 + n2), []).append((a, b, 1))
        return self._like({cell: _sum_products(p, lo, hi) for cell, p in jobs.items()})

    __rmul__ = __mul__

    # -- homogeneous-degree helpers for exp, log and reciprocals
    def _by_degree(self) -> List[List[Tuple[Cell, XLaurent]]]:
        out: List[List[Tuple[Cell, XLaurent]]] = [[] for _ in range(self.order + 1)]
        for cell, v in self._cells.items():
            out[cell[0] + cell[1]].append((cell, v))
        return out

    def exp(self) -> "TotalOrderSeries":
        """``exp(s)`` via ``k F_k = sum_m m s_m F_{k-m}`` on total degree."""
        if self[0, 0].num:
            raise DomainError("exp needs a zero constant term")
        N = self.order
        lo, hi = self.x_window
        s = self._by_degree()
        F: List[Dict[Cell, XLaurent]] = [{(0, 0): _ONE.truncate(lo, hi)}] + [dict() for _ in range(N)]
        for k in range(1, N + 1):
            jobs: Dict[Cell, List[Tuple[XLaurent, XLaurent, int]]] = {}
            for m in range(1, k + 1):
                for (j1, n1), a in s[m]:
                    for (j2, n2), b in F[k - m].items():
                        jobs.setdefault((j1 + j2, n1 + n2), []).append((a, b, m))
            inv = Fraction(1, k)
            for cell, p in jobs.items():
                v = _sum_products(p, lo, hi).scale(inv)
                if v.num:
                    F[k][cell] = v
        cells: Dict[Cell, XLaurent] = {}
        for part in F:
            cells.update(part)
        return self._like(cells)

    def log(self) -> "TotalOrderSeries":
        """``log(s)`` for ``s`` with constant term exactly 1."""
        if self[0, 0] != _ONE:
            raise DomainError("log needs constant term 1")
        N = self.order
        lo, hi = self.x_window
        s = self._by_degree()
        L: List[Dict[Cell, XLaurent]] = [dict() for _ in range(N + 1)]
        for k in range(1, N + 1):
            jobs: Dict[Cell, List[Tuple[XLaurent, XLaurent, int]]] = {}
            for cell, v in s[k]:
                jobs.setdefault(cell, []).append((v, _ONE, k))
            for m in range(1, k):
                for (j1, n1), a in L[m].items():
                    for (j2, n2), b in s[k - m]:
                        jobs.setdefault((j1 + j2, n1 + n2), []).append((a, b, -m))
            inv = Fraction(1, k)
            for cell, p in jobs.items():
                v = _sum_products(p, lo, hi).scale(inv)
                if v.num:
                    L[k][cell] = v
        cells: Dict[Cell, XLaurent] = {}
        for part in L:
            cells.update(part)
        return self._like(cells)

    def reciprocal_one_minus(self) -> "TotalOrderSeries":
        """``1/(1 - s)`` for ``s`` with zero constant term."""
        if self[0, 0].num:
            raise DomainError("1/(1-s) needs a zero constant term")
        N = self.order
        lo, hi = self.x_window
        s = self._by_degree()
        G: List[Dict[Cell, XLaurent]] = [{(0, 0): _ONE.truncate(lo, hi)}] + [dict() for _ in range(N)]
        for k in range(1, N + 1):
            jobs: Dict[Cell, List[Tuple[XLaurent, XLaurent, int]]] = {}
            for m in range(1, k + 1):
                for (j1, n1), a in s[m]:
                    for (j2, n2), b in G[k - m].items():
                        jobs.setdefault((j1 + j2, n1 + n2), []).append((a, b, 1))
            for cell, p in jobs.items():
                v = _sum_products(p, lo, hi)
                if v.num:
                    G[k][cell] = v
        cells: Dict[Cell, XLaurent] = {}
        for part in G:
            cells.update(part)
        return self._like(cells)

    def reciprocal(self) -> "TotalOrderSeries":
        """``1/s`` for ``s`` with constant term exactly 1."""
        if self[0, 0] != _ONE:
            raise DomainError("reciprocal needs constant term 1")
        return (TotalOrderSeries.one(self.order, self.x_window) - self).reciprocal_one_minus()

    # -- x manipulations
    def coeff_x(self, k: int) -> "TotalOrderSeries":
        """The (y,t)-series multiplying ``x^k``."""
        return self._like({cell: XLaurent.constant(c) for cell, v in self._cells.items() if (c := v.coeff(k))})

    def nonneg_part_x(self) -> "TotalOrderSeries":
        return self._like({cell: v.nonneg() for cell, v in self._cells.items()})

    def neg_part_x(self) -> "TotalOrderSeries":
        return self._like({cell: v.truncate(v.lo, -1) for cell, v in self._cells.items()})

    def subst_geometric(self) -> "TotalOrderSeries":
        """Substitute ``x -> 1/(1-x)`` (input must be polynomial in x)."""
        xmax = self.x_window[1]
        return self._like({cell: v.subst_geometric(xmax) for cell, v in self._cells.items()})

    def reflect_x(self) -> "TotalOrderSeries":
        """Substitute ``x -> 1/x``."""
        return self._like({cell: v.reflect() for cell, v in self._cells.items()})

    def shift_x(self, k: int) -> "TotalOrderSeries":
        return self._like({cell: v.shift(k) for cell, v in self._cells.items()})

    # -- y and t manipulations
    def shift_y(self, k: int) -> "TotalOrderSeries":
        """Multiply by ``y^k`` (``k`` may be negative; negative powers are dropped)."""
        return self._like({(j + k, n): v for (j, n), v in self._cells.items() if j + k >= 0})

    def shift_t(self, k: int) -> "TotalOrderSeries":
        return self._like({(j, n + k): v for (j, n), v in self._cells.items() if n + k >= 0})

    def coeff_y(self, k: int) -> "TotalOrderSeries":
        """The series in (t, x) multiplying ``y^k``, placed at ``j = 0``."""
        return self._like({(0, n): v for (j, n), v in self._cells.items() if j == k})

    def compose_P(self, mode: str) -> "TotalOrderSeries":
        """Map ``y^i t^m`` to ``t^(i+m) x^(-i)`` (``t_over_x``) or ``x^i`` (``t_times_x``)."""
        if mode not in ("t_over_x", "t_times_x"):
            raise ConfigurationError(f"unknown mode {mode!r}")
        sign = -1 if mode == "t_over_x" else 1
        out: Dict[Cell, Dict[int, Fraction]] = {}
        for (i, m), v in self._cells.items():
            if v.lo != 0 or v.hi != 0:
                raise DomainError("compose_P needs a series free of x")
            out.setdefault((0, i + m), {})[sign * i] = v.coeff(0)
        return self._like({cell: XLaurent.from_dict(d) for cell, d in out.items()})

    # -- evaluation helpers
    def map_cells(self, fn: Callable[[Cell, XLaurent], XLaurent]) -> "TotalOrderSeries":
        return self._like({cell: fn(cell, v) for cell, v in self._cells.items()})


# ---------------------------------------------------------------------------
# functional wrappers matching the operation names used across the package


def ring_ops(a: TotalOrderSeries, b: TotalOrderSeries, op: str) -> TotalOrderSeries:
    """``a + b``, ``a - b`` or ``a * b``."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ConfigurationError(f"unknown ring operation {op!r}")


def exp_log(s: TotalOrderSeries, op: str) -> TotalOrderSeries:
    if op == "exp":
        return s.exp()
    if op == "log":
        return s.log()
    raise ConfigurationError(f"unknown operation {op!r}")


def x_manipulate(s: TotalOrderSeries, op: str, k: int | None = None) -> TotalOrderSeries:
    """Dispatch for ``coeff_x``, ``nonneg_part_x``, ``subst_x_to_1_over_1_minus_x``
    and ``reciprocal_1_minus``."""
    if op == "coeff_x":
        if k is None:
            raise ConfigurationError("coeff_x needs an exponent")
        return s.coeff_x(k)
    if op == "nonneg_part_x":
        return s.nonneg_part_x()
    if op == "subst_x_to_1_over_1_minus_x":
        return s.subst_geometric()
    if op == "reciprocal_1_minus":
        return s.reciprocal_one_minus()
    raise ConfigurationError(f"unknown operation {op!r}")


def laurent_compose_P(p: TotalOrderSeries, mode: str) -> TotalOrderSeries:
    return p.compose_P(mode)


# ---------------------------------------------------------------------------
# univariate series


class UniSeries:
    """Truncated series ``f_0 + ... + f_N t^N`` with rational coefficients."""

    __slots__ = ("order", "num", "den")

    def __init__(self, order: int, num: Sequence[int], den: int = 1):
        if order < 0:
            raise ConfigurationError("order must be nonnegative")
        num = list(num[: order + 1])
        num += [0] * (order + 1 - len(num))
        if den < 0:
            den, num = -den, [-c for c in num]
        if den != 1:
            g = _vec_gcd(num, den)
            if g != 1:
                num = [c // g for c in num]
                den //= g
        self.order = order
        self.num = tuple(num)
        self.den = den

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, order: int | None = None) -> "UniSeries":
        fr = [Fraction(c) for c in coeffs]
        if order is None:
            order = len(fr) - 1
        den = 1
        for c in fr:
            den = _lcm(den, c.denominator)
        return cls(order, [c.numerator * (den // c.denominator) for c in fr], den)

    @classmethod
    def t(cls, order: int) -> "UniSeries":
        return cls(order, [0, 1])

    @classmethod
    def constant(cls, order: int, c=1) -> "UniSeries":
        return cls.from_coeffs([c], order)

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def __getitem__(self, n: int) -> Fraction:
        if n < 0:
            return Fraction(0)
        if n > self.order:
            raise IndexError(f"coefficient {n} beyond truncation order {self.order}")
        return Fraction(self.num[n], self.den)

    def __len__(self) -> int:
        return self.order + 1

    def is_integral(self) -> bool:
        return self.den == 1

    def integers(self) -> List[int]:
        if self.den != 1:
            raise DomainError("series has non-integer coefficients")
        return list(self.num)

    def valuation(self) -> int | None:
        for i, c in enumerate(self.num):
            if c:
                return i
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniSeries):
            return NotImplemented
        return self.order == other.order and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.order, self.num, self.den))

    def __repr__(self) -> str:
        shown = ", ".join(str(c) for c in self.coeffs[:8])
        more = ", ..." if self.order >= 8 else ""
        return f"UniSeries(order={self.order}, [{shown}{more}])"

    def truncate(self, order: int) -> "UniSeries":
        return UniSeries(order, self.num[: order + 1], self.den)

    def _check(self, other: "UniSeries") -> None:
        if not isinstance(other, UniSeries):
            raise TypeError("expected a UniSeries")
        if self.order != other.order:
            raise ConfigurationError(f"mismatched orders {self.order} and {other.order}")

    def __add__(self, other: "UniSeries") -> "UniSeries":
        self._check(other)
        den = _lcm(self.den, other.den)
        fa, fb = den // self.den, den // other.den
        return UniSeries(self.order, [a * fa + b * fb for a, b in zip(self.num, other.num)], den)

    def __neg__(self) -> "UniSeries":
        return UniSeries(self.order, [-c for c in self.num], self.den)

    def __sub__(self, other: "UniSeries") -> "UniSeries":
        return self + (-other)

    def scale(self, c) -> "UniSeries":
        c = Fraction(c)
        return UniSeries(self.order, [a * c.numerator for a in self.num], self.den * c.denominator)

    def __mul__(self, other) -> "UniSeries":
        if not isinstance(other, UniSeries):
            return self.scale(other)
        self._check(other)
        return UniSeries(self.order, _short_product(self.num, other.num, self.order + 1), self.den * other.den)

    __rmul__ = __mul__

    def shift(self, k: int) -> "UniSeries":
        """Multiply by ``t^k``; negative ``k`` divides and requires divisibility."""
        if k >= 0:
            return UniSeries(self.order, [0] * k + list(self.num), self.den)
        if any(self.num[:-k]):
            raise DomainError(f"series is not divisible by t^{-k}")
        return UniSeries(self.order, list(self.num[-k:]), self.den)

    def derivative(self) -> "UniSeries":
        """Derivative, keeping the same truncation order (top coefficient unknown, set to 0)."""
        return UniSeries(self.order, [i * c for i, c in enumerate(self.num)][1:], self.den)

    def inverse(self) -> "UniSeries":
        """Multiplicative inverse by Newton iteration (needs nonzero constant term)."""
        if not self.num[0]:
            raise DomainError("series with zero constant term has no inverse")
        c0 = Fraction(self.num[0], self.den)
        g = UniSeries.constant(0, 1 / c0)
        prec = 1
        while prec < self.order + 1:
            prec = min(2 * prec, self.order + 1)
            f = self.truncate(prec - 1)
            g = g.truncate(prec - 1)
            two = UniSeries.constant(prec - 1, 2)
            g = g * (two - f * g)
        return g.truncate(self.order)

    def __pow__(self, k: int) -> "UniSeries":
        if k < 0:
            return self.inverse() ** (-k)
        result = UniSeries.constant(self.order, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def compose(self, g: "UniSeries") -> "UniSeries":
        """``self(g)`` for ``g`` with zero constant term."""
        self._check(g)
        if g.num[0]:
            raise DomainError("composition needs g(0) = 0")
        return _compose(self, g)

    def __call__(self, g: "UniSeries") -> "UniSeries":
        return self.compose(g)


def _short_product(a: Sequence[int], b: Sequence[int], length: int) -> List[int]:
    ea = len(a)
    while ea and not a[ea - 1]:
        ea -= 1
    eb = len(b)
    while eb and not b[eb - 1]:
        eb -= 1
    a = a[: min(ea, length)]
    b = b[: min(eb, length)]
    return convolve(a, b)[:length]


def _compose(f: UniSeries, g: UniSeries) -> UniSeries:
    """Baby-step giant-step composition with integer numerators."""
    N = f.order
    deg = N
    while deg > 0 and not f.num[deg]:
        deg -= 1
    if deg == 0:
        return UniSeries(N, [f.num[0]], f.den)
    k = max(1, math.isqrt(deg + 1))
    gd = g.den
    # g^i stored with denominator gd^i
    powers: List[List[int]] = [[1], list(g.num)]
    for _ in range(2, k + 1):
        powers.append(_short_product(powers[-1], g.num, N + 1))
    giant = powers[k]
    nblocks = deg // k + 1
    result: List[int] = [0]
    result_den = 1
    for b in range(nblocks - 1, -1, -1):
        block = [0] * (N + 1)
        for j in range(k):
            idx = b * k + j
            if idx > deg:
                break
            c = f.num[idx]
            if not c:
                continue
            c *= gd ** (k - 1 - j)
            for i, v in enumerate(powers[j]):
                if v:
                    block[i] += c * v
        block_den = gd ** (k - 1)
        if b == nblocks - 1:
            result, result_den = block, block_den
            continue
        # result <- result * giant + block, common denominator bookkeeping
        prod = _short_product(result, giant, N + 1)
        prod_den = result_den * gd**k
        common = _lcm(prod_den, block_den)
        fa, fb = common // prod_den, common // block_den
        prod += [0] * (N + 1 - len(prod))
        result = [p * fa + q * fb for p, q in zip(prod, block)]
        result_den = common
        g_ = math.gcd(_vec_gcd(result), result_den)
        if g_ > 1:
            result = [c // g_ for c in result]
            result_den //= g_
    return UniSeries(N, result, result_den * f.den)


def reversion(f: UniSeries) -> UniSeries:
    """Compositional inverse ``g`` with ``f(g(t)) = t`` modulo ``t^(N+1)``.

    Newton iteration ``g <- g - (f(g) - t) g'``: the derivative of the current
    approximation stands in for ``1/f'(g)`` and still doubles the precision
    (minus one) at every step.
    """
    if f.num[0]:
        raise DomainError("reversion needs f(0) = 0")
    if f.order < 1 or not f.num[1]:
        raise DomainError("reversion needs f'(0) != 0")
    N = f.order
    a1 = Fraction(f.num[1], f.den)
    g = UniSeries.from_coeffs([0, 1 / a1])
    prec = 2  # g is correct modulo t^prec
    while prec < N + 1:
        prec = min(2 * prec - 1, N + 1)
        M = prec - 1
        gm = g.truncate(M)
        fm = f.truncate(M)
        err = fm.compose(gm) - UniSeries.t(M)
        g = gm - err * gm.derivative()
    return g.truncate(N)


def reversion_lagrange(f: UniSeries) -> UniSeries:
    """Reversion by Lagrange inversion, ``[t^n] g = (1/n) [z^(n-1)] (z/f)^n``."""
    if f.num[0]:
        raise DomainError("reversion needs f(0) = 0")
    if f.order < 1 or not f.num[1]:
        raise DomainError("reversion needs f'(0) != 0")
    N = f.order
    phi = f.shift(-1).inverse()  # z / f(z), known to order N-1
    phi = phi.truncate(N - 1) if N >= 1 else phi
    out = [Fraction(0)]
    power = UniSeries.constant(N - 1, 1)
    for n in range(1, N + 1):
        power = power * phi
        out.append(power[n - 1] / n)
    return UniSeries.from_coeffs(out, N)


# ---------------------------------------------------------------------------
# canonical JSON


def to_json(s: TotalOrderSeries | UniSeries) -> dict:
    """Canonical JSON-ready dictionary.  Rationals are written ``"num/den"``."""
    if isinstance(s, UniSeries):
        entries = [
            {"j": 0, "n": n, "x": [[0, _frac_str(c)]]}
            for n, c in enumerate(s.coeffs)
            if c
        ]
        return {"kind": "uni", "order": s.order, "entries": entries}
    entries = [
        {"j": j, "n": n, "x": [[k, _frac_str(c)] for k, c in v.items()]}
        for (j, n), v in s.cells()
    ]
    return {"kind": "total", "order": s.order, "x_window": list(s.x_window), "entries": entries}


def from_json(data: dict | str) -> TotalOrderSeries | UniSeries:
    if isinstance(data, str):
        data = json.loads(data)
    order = int(data["order"])
    if data.get("kind", "total") == "uni":
        coeffs = [Fraction(0)] * (order + 1)
        for e in data["entries"]:
            if int(e["j"]) != 0:
                raise DomainError("univariate series entry with nonzero j")
            for k, c in e["x"]:
                if int(k) != 0:
                    raise DomainError("univariate series entry with x exponent")
                coeffs[int(e["n"])] = _parse_frac(c)
        return UniSeries.from_coeffs(coeffs, order)
    window = tuple(data.get("x_window", TotalOrderSeries.default_window(order)))
    cells = {}
    for e in data["entries"]:
        cells[(int(e["j"]), int(e["n"]))] = XLaurent.from_dict({int(k): _parse_frac(c) for k, c in e["x"]})
    return TotalOrderSeries(order, window, cells)


def dumps(s: TotalOrderSeries | UniSeries) -> str:
    return json.dumps(to_json(s), sort_keys=True, separators=(",", ":"))
