"""Outward-rounded interval arithmetic and interval linear algebra.

Every operation returns an enclosure: for any members of the input
intervals, the exact real result of the operation lies in the returned
interval. Directed rounding is emulated in software by nudging computed
endpoints to adjacent representable floats with ``math.nextafter``, so all
values stay immutable and operations are pure (safe under any threading).

The linear-algebra bounds (``op_norm_ub``, ``m_lb``, ``inverse_enclosure``)
are the workhorses behind every certified constant: an upper bound on the
Euclidean operator norm over an interval matrix, a lower bound on the
minimal expansion factor, and a validated matrix inverse via a
midpoint-inverse plus Neumann-series remainder.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

__all__ = [
    "Interval",
    "IntervalMatrix",
    "IntervalDomainError",
    "NotInvertibleError",
    "interval_arith",
    "interval_elementary",
    "op_norm_ub",
    "m_lb",
    "inverse_enclosure",
    "vec_norm_ub",
    "PI",
    "TWO_PI",
]

_INF = math.inf


class IntervalDomainError(ValueError):
    """Operation applied outside its domain (division by zero interval, ...)."""


class NotInvertibleError(ArithmeticError):
    """Interval matrix could not be certified invertible."""


def _down(x: float) -> float:
    return math.nextafter(x, -_INF)


def _up(x: float) -> float:
    return math.nextafter(x, _INF)


def _down2(x: float) -> float:
    # two representable steps: margin for libm results that are only
    # faithfully (not correctly) rounded
    return math.nextafter(math.nextafter(x, -_INF), -_INF)


def _up2(x: float) -> float:
    return math.nextafter(math.nextafter(x, _INF), _INF)


class Interval:
    """Closed interval [lo, hi] with outward-rounded arithmetic."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: float, hi: float | None = None):
        lo = float(lo)
        hi = lo if hi is None else float(hi)
        if math.isnan(lo) or math.isnan(hi):
            raise IntervalDomainError("NaN endpoint rejected")
        if lo > hi:
            raise IntervalDomainError(f"invalid interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):
        raise AttributeError("Interval is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def point(cls, v: float) -> "Interval":
        return cls(v, v)

    @classmethod
    def symmetric(cls, r: float) -> "Interval":
        r = abs(float(r))
        return cls(-r, r)

    @staticmethod
    def coerce(v) -> "Interval":
        return v if isinstance(v, Interval) else Interval(float(v))

    # -- queries ------------------------------------------------------

    @property
    def mid(self) -> float:
        m = 0.5 * (self.lo + self.hi)
        if not math.isfinite(m):
            m = 0.5 * self.lo + 0.5 * self.hi
        return m

    @property
    def rad(self) -> float:
        # upper bound of the half-width relative to mid
        m = self.mid
        return max(_up(self.hi - m), _up(m - self.lo), 0.0)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mag(self) -> float:
        """max |x| over the interval."""
        return max(abs(self.lo), abs(self.hi))

    @property
    def mig(self) -> float:
        """min |x| over the interval (0 if the interval contains 0)."""
        if self.lo <= 0.0 <= self.hi:
            return 0.0
        return min(abs(self.lo), abs(self.hi))

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def hull(self, other: "Interval") -> "Interval":
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def intersect(self, other: "Interval") -> "Interval":
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo > hi:
            raise IntervalDomainError("empty intersection")
        return Interval(lo, hi)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Interval) and self.lo == other.lo and self.hi == other.hi
        )

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    def __repr__(self) -> str:
        return f"Interval({self.lo!r}, {self.hi!r})"

    # -- arithmetic ---------------------------------------------------

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __add__(self, other) -> "Interval":
        o = Interval.coerce(other)
        return Interval(_down(self.lo + o.lo), _up(self.hi + o.hi))

    __radd__ = __add__

    def __sub__(self, other) -> "Interval":
        o = Interval.coerce(other)
        return Interval(_down(self.lo - o.hi), _up(self.hi - o.lo))

    def __rsub__(self, other) -> "Interval":
        return Interval.coerce(other) - self

    def __mul__(self, other) -> "Interval":
        o = Interval.coerce(other)
        p = (
            self.lo * o.lo,
            self.lo * o.hi,
            self.hi * o.lo,
            self.hi * o.hi,
        )
        return Interval(_down(min(p)), _up(max(p)))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Interval":
        o = Interval.coerce(other)
        if o.lo <= 0.0 <= o.hi:
            raise IntervalDomainError(f"division by interval containing zero: {o}")
        p = (
            self.lo / o.lo,
            self.lo / o.hi,
            self.hi / o.lo,
            self.hi / o.hi,
        )
        return Interval(_down(min(p)), _up(max(p)))

    def __rtruediv__(self, other) -> "Interval":
        return Interval.coerce(other) / self

    def __abs__(self) -> "Interval":
        return Interval(self.mig, self.mag)

    # -- elementary functions ------------------------------------------

    def sqrt(self) -> "Interval":
        if self.lo < 0.0:
            raise IntervalDomainError(f"sqrt of interval with negative part: {self}")
        # IEEE sqrt is correctly rounded, one step suffices
        return Interval(max(0.0, _down(math.sqrt(self.lo))), _up(math.sqrt(self.hi)))

    def pow_int(self, n: int) -> "Interval":
        if n < 0 or n != int(n):
            raise IntervalDomainError("pow_int requires a non-negative integer power")
        n = int(n)
        if n == 0:
            return Interval(1.0, 1.0)
        base = abs(self) if n % 2 == 0 else self
        # binary exponentiation on sound interval products
        result = Interval(1.0, 1.0)
        acc = base
        k = n
        while k:
            if k & 1:
                result = result * acc
            k >>= 1
            if k:
                acc = acc * acc
        if n % 2 == 0 and result.lo < 0.0:
            result = Interval(0.0, result.hi)
        return result

    def cos(self) -> "Interval":
        return _cos_enclosure(self)

    def sin(self) -> "Interval":
        return _sin_enclosure(self)


# math.pi underestimates the true pi, so [pi, nextafter(pi)] contains it;
# doubling is exact in binary
PI = Interval(math.pi, _up(math.pi))
TWO_PI = Interval(2.0 * PI.lo, 2.0 * PI.hi)


def _clamp_unit(lo: float, hi: float) -> Interval:
    # intersection with [-1, 1] is sound: the true range is a subset of both
    return Interval(max(lo, -1.0), min(hi, 1.0))


def _cos_enclosure(a: Interval) -> Interval:
    if a.hi - a.lo >= TWO_PI.hi:
        return Interval(-1.0, 1.0)
    lo = min(_down2(math.cos(a.lo)), _down2(math.cos(a.hi)))
    hi = max(_up2(math.cos(a.lo)), _up2(math.cos(a.hi)))
    # extrema of cos at k*pi: +1 for even k, -1 for odd k
    k_first = math.floor(a.lo / math.pi) - 1
    k_last = math.floor(a.hi / math.pi) + 1
    for k in range(k_first, k_last + 1):
        kpi = k * PI
        if kpi.hi >= a.lo and kpi.lo <= a.hi:  # possibly inside: widen (sound)
            if k % 2 == 0:
                hi = 1.0
            else:
                lo = -1.0
    return _clamp_unit(lo, hi)


def _sin_enclosure(a: Interval) -> Interval:
    if a.hi - a.lo >= TWO_PI.hi:
        return Interval(-1.0, 1.0)
    lo = min(_down2(math.sin(a.lo)), _down2(math.sin(a.hi)))
    hi = max(_up2(math.sin(a.lo)), _up2(math.sin(a.hi)))
    # extrema of sin at (k + 1/2)*pi: +1 for even k, -1 for odd k
    k_first = math.floor(a.lo / math.pi - 0.5) - 1
    k_last = math.floor(a.hi / math.pi - 0.5) + 1
    for k in range(k_first, k_last + 1):
        tk = (2 * k + 1) * PI * 0.5
        if tk.hi >= a.lo and tk.lo <= a.hi:
            if k % 2 == 0:
                hi = 1.0
            else:
                lo = -1.0
    return _clamp_unit(lo, hi)


def interval_arith(a: Interval, b: Interval, op: str) -> Interval:
    """Dispatch {add, sub, mul, div} on intervals."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def interval_elementary(a: Interval, fn: str, n: int | None = None) -> Interval:
    """Dispatch {sin, cos, sqrt, pow_int} on an interval."""
    if fn == "sin":
        return a.sin()
    if fn == "cos":
        return a.cos()
    if fn == "sqrt":
        return a.sqrt()
    if fn == "pow_int":
        if n is None:
            raise ValueError("pow_int needs the integer power n")
        return a.pow_int(n)
    raise ValueError(f"unknown fn {fn!r}")


# ---------------------------------------------------------------------------
# interval matrices
# ---------------------------------------------------------------------------


class IntervalMatrix:
    """Dense matrix of intervals; entry-wise containment semantics."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Iterable[Interval]]):
        rows = tuple(tuple(Interval.coerce(v) for v in row) for row in data)
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        ncol = len(rows[0])
        if any(len(r) != ncol for r in rows):
            raise ValueError("ragged rows")
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", ncol)
        object.__setattr__(self, "data", rows)

    def __setattr__(self, name, value):
        raise AttributeError("IntervalMatrix is immutable")

    @classmethod
    def from_point(cls, m) -> "IntervalMatrix":
        return cls([[Interval.point(float(v)) for v in row] for row in m])

    @classmethod
    def identity(cls, n: int) -> "IntervalMatrix":
        return cls(
            [
                [Interval.point(1.0 if i == j else 0.0) for j in range(n)]
                for i in range(n)
            ]
        )

    def __getitem__(self, idx) -> Interval:
        i, j = idx
        return self.data[i][j]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntervalMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash(self.data)

    def __repr__(self) -> str:
        return f"IntervalMatrix({self.rows}x{self.cols})"

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def transpose(self) -> "IntervalMatrix":
        return IntervalMatrix(
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def __add__(self, other: "IntervalMatrix") -> "IntervalMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntervalMatrix(
            [
                [self.data[i][j] + other.data[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ]
        )

    def __sub__(self, other: "IntervalMatrix") -> "IntervalMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntervalMatrix(
            [
                [self.data[i][j] - other.data[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ]
        )

    def __matmul__(self, other):
        if isinstance(other, IntervalMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            out = []
            for i in range(self.rows):
                row = []
                for j in range(other.cols):
                    acc = Interval.point(0.0)
                    for k in range(self.cols):
                        acc = acc + self.data[i][k] * other.data[k][j]
                    row.append(acc)
                out.append(row)
            return IntervalMatrix(out)
        # interval (or float) vector
        vec = tuple(Interval.coerce(v) for v in other)
        if self.cols != len(vec):
            raise ValueError("shape mismatch")
        out_v = []
        for i in range(self.rows):
            acc = Interval.point(0.0)
            for k in range(self.cols):
                acc = acc + self.data[i][k] * vec[k]
            out_v.append(acc)
        return tuple(out_v)

    def scale(self, c) -> "IntervalMatrix":
        ci = Interval.coerce(c)
        return IntervalMatrix([[v * ci for v in row] for row in self.data])

    def hull(self, other: "IntervalMatrix") -> "IntervalMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntervalMatrix(
            [
                [self.data[i][j].hull(other.data[i][j]) for j in range(self.cols)]
                for i in range(self.rows)
            ]
        )

    def block(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "IntervalMatrix":
        """Sub-matrix on the given row/column index lists."""
        return IntervalMatrix(
            [[self.data[i][j] for j in col_idx] for i in row_idx]
        )

    def contains_point(self, m) -> bool:
        for i in range(self.rows):
            for j in range(self.cols):
                if not self.data[i][j].contains(float(m[i][j])):
                    return False
        return True

    def mid_list(self) -> list[list[float]]:
        return [[v.mid for v in row] for row in self.data]

    def mag_list(self) -> list[list[float]]:
        return [[v.mag for v in row] for row in self.data]


def hull_many(mats: Sequence[IntervalMatrix]) -> IntervalMatrix:
    acc = mats[0]
    for m in mats[1:]:
        acc = acc.hull(m)
    return acc


def vec_norm_ub(entries: Sequence[Interval]) -> float:
    """Upper bound of sup ||v||_2 over an interval vector (exact to rounding)."""
    acc = Interval.point(0.0)
    for e in entries:
        m = Interval.point(Interval.coerce(e).mag)
        acc = acc + m * m
    return acc.sqrt().hi


def _vec_norm_lb(entries: Sequence[Interval]) -> float:
    acc = Interval.point(0.0)
    for e in entries:
        m = Interval.point(Interval.coerce(e).mig)
        acc = acc + m * m
    return acc.sqrt().lo


def _gram_gershgorin_rows(a: IntervalMatrix, transpose_first: bool):
    """Row data (diagonal interval, off-diagonal magnitude sum) of A^T A or A A^T."""
    g = (a.transpose() @ a) if transpose_first else (a @ a.transpose())
    n = g.rows
    rows = []
    for i in range(n):
        off = Interval.point(0.0)
        for j in range(n):
            if j != i:
                off = off + Interval.point(g.data[i][j].mag)
        rows.append((g.data[i][i], off))
    return rows


def op_norm_ub(a: IntervalMatrix) -> float:
    """Upper bound of sup over point matrices in `a` of the Euclidean operator norm.

    Single-row/column blocks use the exact vector 2-norm of entry-wise
    absolute maxima. General blocks use sqrt of a Gershgorin upper bound
    on lambda_max of the interval Gram matrix A^T A.
    """
    if a.rows == 1:
        return vec_norm_ub(a.data[0])
    if a.cols == 1:
        return vec_norm_ub([a.data[i][0] for i in range(a.rows)])
    best = _INF
    for transpose_first in (True, False):
        bound = 0.0
        for diag, off in _gram_gershgorin_rows(a, transpose_first):
            bound = max(bound, (Interval.point(diag.hi) + off).hi)
        best = min(best, Interval(max(bound, 0.0)).sqrt().hi)
    return best


def m_lb(a: IntervalMatrix) -> float:
    """Lower bound of inf over point matrices of m(A) = min ||Ax||/||x||.

    Exact for 1x1 blocks (mignitude). Otherwise sqrt of a Gershgorin lower
    bound on lambda_min of the interval Gram matrix A^T A; 0 when no
    positive bound is certified.
    """
    if a.rows < a.cols:
        return 0.0  # a wide matrix has nontrivial kernel directions
    if a.rows == 1 and a.cols == 1:
        return a.data[0][0].mig
    if a.cols == 1:
        return _vec_norm_lb([a.data[i][0] for i in range(a.rows)])
    lam_min = _INF
    for diag, off in _gram_gershgorin_rows(a, True):
        lam_min = min(lam_min, (Interval.point(diag.lo) - off).lo)
    if lam_min <= 0.0:
        return 0.0
    return Interval.point(lam_min).sqrt().lo


def _inf_norm_ub(a: IntervalMatrix) -> float:
    worst = 0.0
    for i in range(a.rows):
        acc = Interval.point(0.0)
        for j in range(a.cols):
            acc = acc + Interval.point(a.data[i][j].mag)
        worst = max(worst, acc.hi)
    return worst


def inverse_enclosure(a: IntervalMatrix) -> IntervalMatrix:
    """Certified enclosure of A^{-1} for every point matrix A in `a`.

    Uses the float inverse Y of the midpoint matrix and the Neumann-series
    bound: if q = ||I - Y A||_inf < 1 then A^{-1} = (I + E + E^2 + ...) Y
    with E = I - Y A, and the degree >= 2 tail is entry-wise within
    q^2/(1-q).
    """
    import numpy as np

    if a.rows != a.cols:
        raise ValueError("inverse of a non-square matrix")
    n = a.rows
    mid = np.array(a.mid_list(), dtype=float)
    try:
        y = np.linalg.inv(mid)
    except np.linalg.LinAlgError as exc:
        raise NotInvertibleError("midpoint matrix numerically singular") from exc
    if not np.all(np.isfinite(y)):
        raise NotInvertibleError("midpoint inverse not finite")
    y_int = IntervalMatrix.from_point(y)
    e = IntervalMatrix.identity(n) - (y_int @ a)
    q = _inf_norm_ub(e)
    if q >= 1.0:
        raise NotInvertibleError(f"not invertible as enclosed (||I - Y A|| bound {q:.3g} >= 1)")
    tail = (Interval.point(q) * Interval.point(q) / (1.0 - Interval.point(q))).hi
    correction = IntervalMatrix(
        [
            [
                (Interval(1.0) if i == j else Interval(0.0))
                + e.data[i][j]
                + Interval(-tail, tail)
                for j in range(n)
            ]
            for i in range(n)
        ]
    )
    return correction @ y_int
