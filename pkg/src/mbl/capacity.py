"""Exact capacities bc/a and the quadratic surds governing their limits.

The capacity of a sorted triple (a, b, c) is the rational bc/a.  Along any
branch of the subtree preserving a these capacities decrease to the
irrational value 2/(3 + sqrt(9 - 4/a^2)), so deciding orderings near the
limit needs sign-exact arithmetic on numbers of the form q + s*sqrt(r).
Differences there shrink below 10^-40; floating point never enters any
decision, only human-readable previews.
"""

from __future__ import annotations

import decimal
import math
from fractions import Fraction

from .errors import VerificationError
from .markov import MarkovTriple, SubtreeSpec, is_markov_number, wedge

#: Capacities are plain rationals; the alias marks intent in signatures.
Capacity = Fraction

_Rational = (int, Fraction)


def _fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _rational_sqrt(r: Fraction) -> Fraction | None:
    """sqrt(r) if r is the square of a rational, else None."""
    pn = math.isqrt(r.numerator)
    pd = math.isqrt(r.denominator)
    if pn * pn == r.numerator and pd * pd == r.denominator:
        return Fraction(pn, pd)
    return None


def _sign_simple(q: Fraction, s: Fraction, r: Fraction) -> int:
    """Sign of q + s*sqrt(r), assuming sqrt(r) irrational whenever s != 0."""
    if s == 0:
        return (q > 0) - (q < 0)
    if q == 0:
        return 1 if s > 0 else -1
    if (q > 0) == (s > 0):
        return 1 if q > 0 else -1
    t = q * q - s * s * r  # opposite signs: squaring decides
    if t == 0:
        return 0
    if q > 0:
        return 1 if t > 0 else -1
    return -1 if t > 0 else 1


class QuadraticValue:
    """An exact number q + s*sqrt(r) with rational q, s and rational r >= 0.

    Canonical form folds a perfect-square radicand into the rational part, so
    `s != 0` implies sqrt(r) is irrational.  Comparisons are sign-exact: a
    comparison against a rational needs one squaring, one between two surds
    with different radicands needs two, with explicit sign bookkeeping.
    """

    __slots__ = ("_q", "_s", "_r")

    def __init__(self, q=0, s=0, r=0):
        q, s, r = _fraction(q), _fraction(s), _fraction(r)
        if r < 0:
            raise ValueError(f"negative radicand {r}")
        if s == 0 or r == 0:
            q, s, r = q, Fraction(0), Fraction(0)
        else:
            root = _rational_sqrt(r)
            if root is not None:
                q, s, r = q + s * root, Fraction(0), Fraction(0)
        self._q, self._s, self._r = q, s, r

    @classmethod
    def from_rational(cls, x) -> "QuadraticValue":
        return cls(_fraction(x))

    @classmethod
    def sqrt(cls, r) -> "QuadraticValue":
        return cls(0, 1, _fraction(r))

    @property
    def q(self) -> Fraction:
        return self._q

    @property
    def s(self) -> Fraction:
        return self._s

    @property
    def r(self) -> Fraction:
        return self._r

    @property
    def is_rational(self) -> bool:
        return self._s == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self._q

    def sign(self) -> int:
        return _sign_simple(self._q, self._s, self._r)

    def compare(self, other) -> int:
        """Exact trichotomy against a rational or another QuadraticValue."""
        if isinstance(other, _Rational):
            other = QuadraticValue.from_rational(other)
        d = self._q - other._q
        su = _sign_simple(d, self._s, self._r)
        sv = _sign_simple(Fraction(0), other._s, other._r)
        if su != sv:
            return 1 if su > sv else -1
        if su == 0:
            return 0
        # same strict sign: u^2 - v^2 is again a simple surd
        t = _sign_simple(
            d * d + self._s * self._s * self._r - other._s * other._s * other._r,
            2 * d * self._s,
            self._r,
        )
        return t if su > 0 else -t

    def _coerce_same_radical(self, other) -> "tuple[Fraction, Fraction]":
        """Express other's surd part in terms of this radicand, or raise."""
        if other._s == 0:
            return other._q, Fraction(0)
        if self._s == 0:
            raise ValueError("rational value has no radicand to match")
        ratio = _rational_sqrt(other._r / self._r)
        if ratio is None:
            raise ValueError(
                f"incompatible radicands {self._r} and {other._r}; "
                "only same-family surds combine exactly"
            )
        return other._q, other._s * ratio

    def __add__(self, other):
        if isinstance(other, _Rational):
            return QuadraticValue(self._q + other, self._s, self._r)
        if isinstance(other, QuadraticValue):
            if self._s == 0:
                return QuadraticValue(other._q + self._q, other._s, other._r)
            oq, os = self._coerce_same_radical(other)
            return QuadraticValue(self._q + oq, self._s + os, self._r)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return QuadraticValue(-self._q, -self._s, self._r)

    def __sub__(self, other):
        if isinstance(other, _Rational):
            return QuadraticValue(self._q - other, self._s, self._r)
        if isinstance(other, QuadraticValue):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _Rational):
            return QuadraticValue(self._q * other, self._s * other, self._r)
        if isinstance(other, QuadraticValue):
            if other._s == 0:
                return self * other._q
            if self._s == 0:
                return other * self._q
            oq, os = self._coerce_same_radical(other)
            return QuadraticValue(
                self._q * oq + self._s * os * self._r,
                self._q * os + self._s * oq,
                self._r,
            )
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _Rational):
            d = _fraction(other)
            return QuadraticValue(self._q / d, self._s / d, self._r)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (QuadraticValue, *_Rational)):
            return self.compare(other) == 0
        return NotImplemented

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def decimal(self, digits: int = 12) -> str:
        """Correctly rounded decimal preview; display only, never re-used."""
        ctx = decimal.Context(prec=digits + 20)
        val = ctx.divide(decimal.Decimal(self._q.numerator),
                         decimal.Decimal(self._q.denominator))
        if self._s != 0:
            root = ctx.sqrt(
                ctx.divide(decimal.Decimal(self._r.numerator),
                           decimal.Decimal(self._r.denominator))
            )
            srat = ctx.divide(decimal.Decimal(self._s.numerator),
                              decimal.Decimal(self._s.denominator))
            val = ctx.add(val, ctx.multiply(srat, root))
        return str(decimal.Context(prec=digits).plus(val))

    def __str__(self) -> str:
        if self.is_rational:
            return str(self._q)
        mag = abs(self._s)
        surd = f"sqrt({self._r})" if mag == 1 else f"{mag}*sqrt({self._r})"
        if self._q == 0:
            return surd if self._s > 0 else f"-{surd}"
        op = "+" if self._s > 0 else "-"
        return f"{self._q} {op} {surd}"

    def __repr__(self) -> str:
        return f"QuadraticValue({self._q!r}, {self._s!r}, {self._r!r})"

    def to_json(self) -> dict:
        def pair(x: Fraction) -> dict:
            return {"num": str(x.numerator), "den": str(x.denominator)}

        return {"q": pair(self._q), "s": pair(self._s), "r": pair(self._r)}

    @classmethod
    def from_json(cls, obj: dict) -> "QuadraticValue":
        def un(d: dict) -> Fraction:
            return Fraction(int(d["num"]), int(d["den"]))

        return cls(un(obj["q"]), un(obj["s"]), un(obj["r"]))


def compare(x, y) -> int:
    """Exact three-way comparison of rationals and QuadraticValues."""
    if not isinstance(x, QuadraticValue):
        x = QuadraticValue.from_rational(x)
    return x.compare(y)


def capacity_to_json(x: Fraction) -> dict:
    return {"num": str(x.numerator), "den": str(x.denominator)}


def capacity_from_json(obj: dict) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))


def width(t: MarkovTriple) -> Capacity:
    """bc/a for the sorted triple; equals 1 only at (1,1,1)."""
    return Fraction(t.b * t.c, t.a)


def surd_identity_check(t: MarkovTriple) -> bool:
    """Integer form of bc/a = 2/(3 + sqrt(9 - 4/c^2 - 4/b^2)).

    Holds iff (2a - 3bc)^2 = 9 b^2 c^2 - 4 b^2 - 4 c^2 and 2a >= 3bc; the
    squared identity follows from the Markov equation alone, so the sign
    condition (a is the larger root) carries the content.  It fails exactly
    at (1,1,1).
    """
    a, b, c = t
    lhs = (2 * a - 3 * b * c) ** 2
    rhs = 9 * b * b * c * c - 4 * b * b - 4 * c * c
    return lhs == rhs and 2 * a >= 3 * b * c


def width_as_surd(t: MarkovTriple) -> QuadraticValue:
    """2/(3 + sqrt(9 - 4/c^2 - 4/b^2)), rationalized; must equal width(t).

    Rejects (1,1,1): its maximal entry is the smaller quadratic root, which
    breaks the squaring step behind the identity (2a - 3bc = -1 < 0 there).
    """
    if t == MarkovTriple(1, 1, 1):
        raise ValueError(
            "(1,1,1) is excluded: 2a - 3bc = -1 < 0, so the closed form "
            "2/(3+sqrt(9-4/c^2-4/b^2)) picks the wrong root"
        )
    b, c = t.b, t.c
    rad = Fraction(9) - Fraction(4, c * c) - Fraction(4, b * b)
    den = Fraction(9) - rad  # = 4/c^2 + 4/b^2 > 0
    value = QuadraticValue(Fraction(6) / den, Fraction(-2) / den, rad)
    if value.compare(width(t)) != 0:
        raise VerificationError(f"surd form of {t} disagrees with bc/a")
    return value


def _require_markov_number(a: int) -> None:
    if not is_markov_number(a):
        raise ValueError(f"{a} is not a Markov number")


def lagrange_number(a: int) -> QuadraticValue:
    """sqrt(9 - 4/a^2) for a Markov number a, normalized to sqrt(9a^2-4)/a."""
    _require_markov_number(a)
    return QuadraticValue(0, Fraction(1, a), 9 * a * a - 4)


def limit_point(a: int) -> QuadraticValue:
    """2/(3 + sqrt(9 - 4/a^2)), rationalized: (3a^2 - a*sqrt(9a^2-4))/2.

    This is the accumulation point of the capacities along any branch
    preserving a; it lies strictly between 1/3 and 1/2.
    """
    _require_markov_number(a)
    return QuadraticValue(Fraction(3 * a * a, 2), Fraction(-a, 2), 9 * a * a - 4)


def convergence_trace(
    branch: SubtreeSpec, count: int, side: str = "alternating"
) -> list[tuple[MarkovTriple, Capacity, QuadraticValue]]:
    """Capacities and exact gaps along a decreasing sequence of the subtree.

    `side` picks the sequence: "alternating" interleaves the two branches in
    tree order, "left"/"right" follow a single branch.  Gaps are
    width - limit_point(preserved); they must come out positive and strictly
    decreasing, which is re-checked here exactly.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if side not in ("alternating", "left", "right"):
        raise ValueError(f"unknown side {side!r}")
    limit = limit_point(branch.preserved)
    nodes = wedge(branch, count)
    is_chain = len(nodes) == count + 1  # degenerate apexes yield one column
    if side == "alternating":
        chosen = [n.triple for n in nodes[:count]]
    elif is_chain:
        chosen = [n.triple for n in nodes[1 : count + 1]]
    else:
        offset = 0 if side == "left" else 1
        chosen = [nodes[1 + 2 * i + offset].triple for i in range(count)]
    trace = []
    previous_gap = None
    for triple in chosen:
        w = width(triple)
        gap = QuadraticValue.from_rational(w) - limit
        if gap.sign() <= 0:
            raise VerificationError(f"gap at {triple} is not positive")
        if previous_gap is not None and gap.compare(previous_gap) >= 0:
            raise VerificationError(f"gap at {triple} fails to decrease")
        trace.append((triple, w, gap))
        previous_gap = gap
    return trace
