"""Exact kernel: integer polynomials, Sturm root isolation and Smith valuations.

Rationals are :class:`fractions.Fraction`; nothing in here touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Iterable, Sequence

from .errors import InvalidInput

__all__ = [
    "IntPolynomial",
    "RootInterval",
    "RootList",
    "SmithProfile",
    "isolate_real_roots",
    "refine",
    "smith_valuations",
    "sturm_sequence",
    "count_real_roots",
    "padic_valuation",
    "eval_interval",
]


def _as_int(x) -> int:
    if isinstance(x, int):
        return x
    q = Fraction(x)
    if q.denominator != 1:
        raise InvalidInput(f"non-integer coefficient {x!r}")
    return q.numerator


def _sign(x) -> int:
    return (x > 0) - (x < 0)


# --- rational polynomial helpers (ascending coefficient lists of Fractions) ---

def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def qpoly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    a = _trim([Fraction(x) for x in a])
    b = _trim([Fraction(x) for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    while len(a) >= len(b):
        c = a[-1] / lb
        shift = len(a) - len(b)
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] -= c * bi
        a.pop()
        _trim(a)
    return _trim(q), a


def qpoly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def qpoly_gcd(a: Sequence, b: Sequence) -> list:
    """Monic gcd over Q."""
    a = _trim([Fraction(x) for x in a])
    b = _trim([Fraction(x) for x in b])
    while b:
        a, b = b, qpoly_divmod(a, b)[1]
    if not a:
        return []
    lc = a[-1]
    return [x / lc for x in a]


def qpoly_xgcd(a: Sequence, b: Sequence) -> tuple[list, list, list]:
    """Return (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = _trim([Fraction(x) for x in a]), _trim([Fraction(x) for x in b])
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = qpoly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _qsub(s0, qpoly_mul(q, s1))
        t0, t1 = t1, _qsub(t0, qpoly_mul(q, t1))
    lc = r0[-1]
    return [x / lc for x in r0], [x / lc for x in s0], [x / lc for x in t0]


def _qsub(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    return _trim(out)


def eval_interval(coeffs: Sequence, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Enclosure of {p(x) : lo <= x <= hi} by interval Horner evaluation."""
    rlo = rhi = Fraction(0)
    for c in reversed(coeffs):
        prods = (rlo * lo, rlo * hi, rhi * lo, rhi * hi)
        rlo, rhi = min(prods) + c, max(prods) + c
    return rlo, rhi


class IntPolynomial:
    """Polynomial with integer coefficients, stored in ascending order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [_as_int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def from_rational(cls, coeffs: Sequence) -> "IntPolynomial":
        """Positive rational multiple with coprime integer coefficients."""
        q = [Fraction(x) for x in coeffs]
        den = lcm(*(x.denominator for x in q)) if q else 1
        ints = [int(x * den) for x in q]
        g = 0
        for x in ints:
            g = gcd(g, x)
        return cls([x // g for x in ints] if g else ints)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.leading == 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == IntPolynomial([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("IntPolynomial", self.coeffs))

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __add__(self, other):
        other = _coerce_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_coerce_poly(other))

    def __rsub__(self, other):
        return _coerce_poly(other) - self

    def __mul__(self, other):
        other = _coerce_poly(other)
        if self.is_zero or other.is_zero:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        if self.is_zero:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            mag = abs(c)
            body = f"{mag}" if (mag != 1 or i == 0) else ""
            body = f"{body}*{mono}" if body and mono else (body or mono)
            terms.append(("-" if c < 0 else "+", body))
        head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return head + "".join(f" {s} {b}" for s, b in terms[1:])

    def squarefree_part(self) -> "IntPolynomial":
        if self.degree <= 0:
            return self
        g = qpoly_gcd(self.coeffs, self.derivative().coeffs)
        if len(g) <= 1:
            return self
        q, r = qpoly_divmod(self.coeffs, g)
        assert not r
        out = IntPolynomial.from_rational(q)
        return out if _sign(out.leading) == _sign(self.leading) else -out

    def is_squarefree(self) -> bool:
        return self.degree <= 0 or len(qpoly_gcd(self.coeffs, self.derivative().coeffs)) <= 1


def _coerce_poly(x) -> IntPolynomial:
    if isinstance(x, IntPolynomial):
        return x
    return IntPolynomial([x])


# --- Sturm sequences ---

def sturm_sequence(f: IntPolynomial) -> list[IntPolynomial]:
    """Canonical Sturm chain, each member rescaled by a positive constant."""
    if f.is_zero:
        raise InvalidInput("zero polynomial")
    seq = [f, f.derivative()]
    while not seq[-1].is_zero and seq[-1].degree > 0:
        _, r = qpoly_divmod(seq[-2].coeffs, seq[-1].coeffs)
        if not r:
            break
        seq.append(-IntPolynomial.from_rational(r))
    return [p for p in seq if not p.is_zero]


def _variations(signs: Iterable[int]) -> int:
    last = 0
    count = 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            count += 1
        last = s
    return count


def _variations_at(seq: Sequence[IntPolynomial], x) -> int:
    if x == "+inf":
        return _variations(_sign(p.leading) for p in seq)
    if x == "-inf":
        return _variations(_sign(p.leading) * (-1) ** p.degree for p in seq)
    return _variations(_sign(p(x)) for p in seq)


def count_real_roots(f: IntPolynomial, lo=None, hi=None) -> int:
    """Distinct real roots of f in (lo, hi]; None means the corresponding infinity."""
    seq = sturm_sequence(f.squarefree_part())
    a = "-inf" if lo is None else Fraction(lo)
    b = "+inf" if hi is None else Fraction(hi)
    return _variations_at(seq, a) - _variations_at(seq, b)


def _root_bound(f: IntPolynomial) -> int:
    lc = abs(f.leading)
    m = max(abs(c) for c in f.coeffs[:-1]) if f.degree > 0 else 0
    return 1 + -(-m // lc)


@dataclass(frozen=True)
class RootInterval:
    """Open interval (lo, hi) holding exactly one real root of ``poly``.

    ``index`` counts roots from 1 in increasing order. The endpoints are never roots.
    ``exact`` is set once bisection happens to land on a rational root.
    """

    lo: Fraction
    hi: Fraction
    index: int
    poly: IntPolynomial
    exact: Fraction | None = None

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return self.exact if self.exact is not None else (self.lo + self.hi) / 2

    def __float__(self):
        return float(self.midpoint)


class RootList(list):
    """List of :class:`RootInterval` remembering whether the input was squarefree."""

    def __init__(self, items=(), squarefree_input: bool = True):
        super().__init__(items)
        self.squarefree_input = squarefree_input


def _split_point(g: IntPolynomial, lo: Fraction, hi: Fraction) -> Fraction:
    mid = (lo + hi) / 2
    if g(mid) != 0:
        return mid
    k = 2
    while True:
        cand = mid + (hi - lo) / 2**k
        if g(cand) != 0:
            return cand
        k += 1


def isolate_real_roots(f: IntPolynomial) -> RootList:
    """Isolate every real root of f in disjoint rational intervals, ordered by root."""
    if not isinstance(f, IntPolynomial):
        f = IntPolynomial(f)
    if f.is_zero:
        raise InvalidInput("cannot isolate roots of the zero polynomial")
    g = f.squarefree_part()
    squarefree = g.degree == f.degree
    if g.degree <= 0:
        return RootList([], squarefree)
    seq = sturm_sequence(g)
    bound = Fraction(_root_bound(g))
    found = []
    stack = [(-bound, bound, _variations_at(seq, -bound), _variations_at(seq, bound))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1:
            found.append((lo, hi))
            continue
        mid = _split_point(g, lo, hi)
        vm = _variations_at(seq, mid)
        stack.append((lo, mid, vlo, vm))
        stack.append((mid, hi, vm, vhi))
    found.sort()
    return RootList(
        (RootInterval(lo, hi, i + 1, g) for i, (lo, hi) in enumerate(found)), squarefree
    )


def refine(interval: RootInterval, width) -> RootInterval:
    """Bisect until the interval is no wider than ``width``."""
    width = Fraction(width)
    if width <= 0:
        raise InvalidInput("refinement width must be positive")
    if interval.width <= width:
        return interval
    g = interval.poly
    lo, hi = interval.lo, interval.hi
    if interval.exact is not None:
        w = min(width / 2, interval.width / 4)
        return replace(interval, lo=interval.exact - w, hi=interval.exact + w)
    slo = _sign(g(lo))
    while hi - lo > width:
        mid = (lo + hi) / 2
        sm = _sign(g(mid))
        if sm == 0:
            w = min(width / 2, (hi - lo) / 4)
            return replace(interval, lo=mid - w, hi=mid + w, exact=mid)
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return replace(interval, lo=lo, hi=hi)


# --- valuations and Smith profiles ---

def padic_valuation(x, q: int) -> int:
    x = Fraction(x)
    if x == 0:
        raise InvalidInput("valuation of zero")
    v = 0
    n, d = x.numerator, x.denominator
    while n % q == 0:
        n //= q
        v += 1
    while d % q == 0:
        d //= q
        v -= 1
    return v


@dataclass(frozen=True)
class SmithProfile:
    """Valuations a_1 <= ... <= a_p of the invariant factors at one prime."""

    valuations: tuple[int, ...]

    def __iter__(self):
        return iter(self.valuations)

    def __len__(self):
        return len(self.valuations)

    @property
    def total(self) -> int:
        return sum(self.valuations)


def _valuation_function(nu) -> Callable:
    if isinstance(nu, int):
        return lambda x: padic_valuation(x, nu)
    if hasattr(nu, "valuation"):
        return nu.valuation
    if callable(nu):
        return nu
    raise InvalidInput(f"cannot interpret {nu!r} as a prime")


def _field_entry(x):
    return Fraction(x) if isinstance(x, (int, Fraction)) else x


def smith_valuations(M: Sequence[Sequence], nu) -> SmithProfile:
    """Invariant-factor valuations of a nonsingular square matrix over the local ring at nu.

    ``nu`` is a rational prime, a prime ideal (anything with a ``valuation`` method)
    or a valuation function. Entries only need field arithmetic: pivoting on an entry
    of minimal valuation keeps every elimination multiplier integral at nu.
    """
    val = _valuation_function(nu)
    A = [[_field_entry(x) for x in row] for row in M]
    n = len(A)
    if any(len(row) != n for row in A):
        raise InvalidInput("matrix must be square")
    out = []
    for k in range(n):
        best = None
        for i in range(k, n):
            for j in range(k, n):
                if A[i][j] != 0:
                    v = val(A[i][j])
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            raise InvalidInput("singular matrix")
        v, i, j = best
        A[k], A[i] = A[i], A[k]
        for row in A:
            row[k], row[j] = row[j], row[k]
        piv = A[k][k]
        for i in range(k + 1, n):
            if A[i][k] != 0:
                m = A[i][k] / piv
                for j in range(k, n):
                    A[i][j] = A[i][j] - m * A[k][j]
        # column k is now clear below the pivot, so the column operations only touch row k
        for j in range(k + 1, n):
            A[k][j] = 0
        out.append(v)
    return SmithProfile(tuple(sorted(out)))
