"""Quadratic extensions k(sqrt d): local splitting, relative discriminants, squares and roots in k."""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import isqrt

import mpmath
import sympy

from .errors import InvalidInput, Unsupported
from .exact import IntPolynomial
from .ideals import OkIdeal, PrimeIdeal, factor_prime, unit_ideal
from .numberfield import FieldElement, NumberField

__all__ = [
    "QuadraticExtension",
    "splitting_in_quadratic",
    "relative_discriminant_quadratic",
    "is_square_in_field",
    "count_roots_in_field",
    "dyadic_square_depth",
]

SPLIT, INERT, RAMIFIED = "split", "inert", "ramified"


def _integral_multiple(d: FieldElement) -> FieldElement:
    """d times the square of its denominator: same square class, integral."""
    m = d.denominator
    return d * (m * m)


def dyadic_square_depth(P: PrimeIdeal, u: FieldElement) -> int:
    """Largest j <= 2e+1 with u congruent to a square mod P^j, for a P-unit u integral above 2.

    Even depths below 2e can always be improved by a residue-field square root, odd
    ones cannot; at depth 2e the last step is an Artin-Schreier equation over the
    residue field, settled by enumeration.
    """
    e = P.e
    F = P.residue_field
    rho = P.anti_uniformizer
    pi = P.uniformizer
    c = P.residue(pi * rho)
    x = P.lift(F.sqrt_char2(P.residue(u)))
    while True:
        diff = u - x * x
        if diff.is_zero():
            return 2 * e + 1
        j = P.valuation(diff)
        if j >= 2 * e + 1:
            return 2 * e + 1
        if j == 2 * e:
            break
        if j % 2:
            return j
        r = P.residue(diff * rho**j)
        z = F.sqrt_char2(F.mul(r, F.inv(F.pow(c, j))))
        x = x + P.lift(z) * pi ** (j // 2)
    r = P.residue((u - x * x) * rho ** (2 * e))
    X = P.residue(x)
    T = P.residue(rho**e * 2)
    ce = F.pow(c, e)
    lin = F.mul(F.mul(X, T), ce)
    quad = F.mul(ce, ce)
    for z in F.elements():
        val = F.add(F.add(F.mul(F.mul(z, z), quad), F.mul(z, lin)), r)
        if not val:
            return 2 * e + 1
    return 2 * e


def _local_data(P: PrimeIdeal, d: FieldElement) -> tuple[str, int]:
    """(splitting type, discriminant exponent) of k(sqrt d) at the finite prime P."""
    d = _integral_multiple(d)
    v = P.valuation(d)
    if P.q != 2:
        if v % 2:
            return RAMIFIED, 1
        u = d * P.anti_uniformizer**v
        return (SPLIT if P.residue_field.is_square(P.residue(u)) else INERT), 0
    e = P.e
    if v % 2:
        return RAMIFIED, 2 * e + 1
    u = d * P.anti_uniformizer**v
    t = dyadic_square_depth(P, u)
    if t >= 2 * e + 1:
        return SPLIT, 0
    if t == 2 * e:
        return INERT, 0
    return RAMIFIED, 2 * e - t + 1


class QuadraticExtension:
    """L = k(sqrt d), equivalently k[x]/(x^2 - b x + c) with d = b^2 - 4c."""

    def __init__(self, base: NumberField, radicand=None, *, b=None, c=None, check: bool = True):
        self.base = base
        if radicand is not None:
            d = base(radicand)
            self.b = base.zero()
            self.c = d / -4
        else:
            if b is None or c is None:
                raise InvalidInput("give a radicand or both polynomial coefficients")
            self.b, self.c = base(b), base(c)
            d = self.b * self.b - self.c * 4
        if d.is_zero():
            raise InvalidInput("radicand must be nonzero")
        self.d = d
        if check and is_square_in_field(base, d) is not None:
            raise InvalidInput("radicand is a square in the base field")
        self._local = {}

    @classmethod
    def from_poly(cls, base: NumberField, b, c, **kw) -> "QuadraticExtension":
        """From x^2 - b x + c."""
        return cls(base, b=b, c=c, **kw)

    @classmethod
    def from_monic(cls, base: NumberField, B, C, **kw) -> "QuadraticExtension":
        """From x^2 + B x + C."""
        return cls(base, b=-base(B), c=C, **kw)

    @property
    def radicand(self) -> FieldElement:
        return self.d

    def splitting(self, place) -> str:
        return splitting_in_quadratic(self, place)

    def discriminant_exponents(self) -> dict[PrimeIdeal, int]:
        return _discriminant_exponents(self)

    def relative_discriminant(self) -> OkIdeal:
        return relative_discriminant_quadratic(self)

    def is_unramified_at_finite_primes(self) -> bool:
        return not self.discriminant_exponents()

    def same_as(self, other: "QuadraticExtension") -> bool:
        return is_square_in_field(self.base, self.d * other.d) is not None

    def __repr__(self):
        return f"QuadraticExtension(d={self.d!r})"


def splitting_in_quadratic(L: QuadraticExtension, place) -> str:
    k = L.base
    if isinstance(place, PrimeIdeal):
        if place.field != k:
            raise InvalidInput("prime belongs to a different field")
        if place not in L._local:
            L._local[place] = _local_data(place, L.d)
        return L._local[place][0]
    if isinstance(place, int) and not isinstance(place, bool):
        s = k.sign_at_place(L.d, place)
        return SPLIT if s > 0 else RAMIFIED
    raise InvalidInput(f"cannot interpret {place!r} as a place")


def _candidate_rational_primes(d: FieldElement) -> list[int]:
    n = abs(_integral_multiple(d).norm())
    qs = set(sympy.factorint(int(n))) if n > 1 else set()
    qs.add(2)
    return sorted(qs)


def _discriminant_exponents(L: QuadraticExtension) -> dict[PrimeIdeal, int]:
    k = L.base
    if not k.is_maximal:
        raise Unsupported("relative discriminant needs a maximal integral basis")
    if "_disc" in L.__dict__:
        return L._disc
    out = {}
    for q in _candidate_rational_primes(L.d):
        for P in factor_prime(k, q):
            if P not in L._local:
                L._local[P] = _local_data(P, L.d)
            exp = L._local[P][1]
            if exp:
                out[P] = exp
    L._disc = out
    return out


def relative_discriminant_quadratic(L: QuadraticExtension) -> OkIdeal:
    ideal = unit_ideal(L.base)
    for P, exp in _discriminant_exponents(L).items():
        ideal = ideal * P.ideal**exp
    return ideal


# --- exact square roots and roots of polynomials in k ---

def _degree_one_primes(k: NumberField, count: int, avoid: int = 1):
    """Rational primes q (odd, good) with a root r of f mod q; yields (q, r)."""
    bad = abs(k.poly_discriminant) * abs(avoid)
    found = 0
    for q in sympy.primerange(3, 10**7):
        if bad % q == 0:
            continue
        for r in range(q):
            if k.poly(r) % q == 0:
                yield q, r
                found += 1
                if found >= count:
                    return


def _reduce_at(a: FieldElement, q: int, r: int):
    """Image of a under theta -> r mod q, or None if a is not q-integral."""
    total = 0
    for i, x in enumerate(a.c):
        if x.denominator % q == 0:
            return None
        total += x.numerator * pow(x.denominator, -1, q) * pow(r, i, q)
    return total % q


def _reconstruction_denominator(k: NumberField) -> int:
    return k.index if k.is_maximal else abs(k.poly_discriminant)


class _Reconstructor:
    """Recover power-basis coordinates from images under all embeddings."""

    def __init__(self, k: NumberField, dps: int):
        self.k = k
        self.dps = dps
        with mpmath.workdps(dps + 10):
            emb = k.embeddings(dps)
            n = k.degree
            V = mpmath.matrix([[z**j for j in range(n)] for z in emb])
            self.Vinv = V**-1
        self.den = _reconstruction_denominator(k)

    def __call__(self, values, scale: int = 1) -> FieldElement | None:
        k = self.k
        with mpmath.workdps(self.dps + 10):
            c = self.Vinv * mpmath.matrix(values)
            tol = mpmath.mpf(10) ** (-(self.dps // 3))
            out = []
            D = self.den * scale
            for j in range(k.degree):
                x = mpmath.re(c[j]) * D
                r = mpmath.nint(x)
                if abs(x - r) > tol or abs(mpmath.im(c[j])) * D > tol:
                    return None
                out.append(Fraction(int(r), D))
        return FieldElement(k, out)


def _numeric_place_pairs(k: NumberField) -> int:
    return k.r1 + k.r2


def is_square_in_field(k: NumberField, d) -> FieldElement | None:
    """A square root of d in k, or None. Both answers are certified exactly."""
    d = k(d)
    if d.is_zero():
        raise InvalidInput("is_square_in_field needs d != 0")
    if d.is_rational():
        r = d.c[0]
        if r > 0:
            a, b = isqrt(r.numerator), isqrt(r.denominator)
            if a * a == r.numerator and b * b == r.denominator:
                return k(Fraction(a, b))
    for i in range(1, k.r1 + 1):
        if k.sign_at_place(d, i) < 0:
            return None
    m = d.denominator
    D = d * (m * m)
    # a non-residue at a degree-one prime certifies a non-square
    for q, r in _degree_one_primes(k, 40, avoid=m * _reconstruction_denominator(k)):
        a = _reduce_at(D, q, r)
        if a is not None and a and pow(a, (q - 1) // 2, q) == q - 1:
            return None
    for dps in (60, 120, 240, 480, 960):
        root = _numeric_sqrt(k, D, dps)
        if root is not None:
            return root / m
    for q, r in _degree_one_primes(k, 400, avoid=m * _reconstruction_denominator(k)):
        a = _reduce_at(D, q, r)
        if a is not None and a and pow(a, (q - 1) // 2, q) == q - 1:
            return None
    raise Unsupported("could not decide whether the element is a square")


def _numeric_sqrt(k: NumberField, D: FieldElement, dps: int) -> FieldElement | None:
    rec = _Reconstructor(k, dps)
    with mpmath.workdps(dps + 10):
        vals = D.numeric(dps)
        roots = [mpmath.sqrt(v) for v in vals]
    m = _numeric_place_pairs(k)
    for signs in product((1, -1), repeat=max(m - 1, 0)):
        signs = (1,) + signs
        ys = []
        with mpmath.workdps(dps + 10):
            for i in range(k.r1):
                ys.append(signs[i] * roots[i])
            for j in range(k.r2):
                z = signs[k.r1 + j] * roots[k.r1 + 2 * j]
                ys += [z, mpmath.conj(z)]
        cand = rec(ys)
        if cand is not None and cand * cand == D:
            return cand
    return None


def count_roots_in_field(k: NumberField, g) -> int:
    """Number of distinct roots of g lying in k."""
    if not isinstance(g, IntPolynomial):
        g = IntPolynomial(g)
    if g.is_zero:
        raise InvalidInput("count_roots_in_field needs a nonzero polynomial")
    x = sympy.Symbol("x")
    _, factors = sympy.factor_list(sympy.Poly(list(reversed(g.coeffs)), x))
    total = 0
    for h, _mult in factors:
        h = IntPolynomial([int(c) for c in reversed(h.all_coeffs())])
        if h.degree == 1:
            total += 1
        elif h.degree >= 2 and k.degree % h.degree == 0:
            total += len(_roots_of_irreducible(k, h))
    return total


def _root_upper_bound(k: NumberField, h: IntPolynomial) -> int:
    disc = _poly_disc(h) * h.leading
    best = h.degree
    for q, _r in _degree_one_primes(k, 30, avoid=disc):
        cnt = sum(1 for a in range(q) if h(a) % q == 0)
        best = min(best, cnt)
        if best == 0:
            break
    return best


def _poly_disc(h: IntPolynomial) -> int:
    x = sympy.Symbol("x")
    return int(sympy.discriminant(sympy.Poly(list(reversed(h.coeffs)), x)))


def _roots_of_irreducible(k: NumberField, h: IntPolynomial) -> list[FieldElement]:
    bound = _root_upper_bound(k, h)
    if bound == 0:
        return []
    lc = h.leading
    found: list[FieldElement] = []
    for dps in (50, 150, 450):
        rec = _Reconstructor(k, dps)
        with mpmath.workdps(dps + 10):
            hroots = mpmath.polyroots([int(c) for c in reversed(h.coeffs)], maxsteps=400, extraprec=4 * dps)
            eps = mpmath.mpf(10) ** (-(dps // 2))
            real = [mpmath.re(z) for z in hroots if abs(mpmath.im(z)) < eps]
        choices = [real] * k.r1 + [hroots] * k.r2
        for pick in product(*choices):
            ys = []
            with mpmath.workdps(dps + 10):
                for i in range(k.r1):
                    ys.append(pick[i] * lc)
                for j in range(k.r2):
                    z = pick[k.r1 + j] * lc
                    ys += [z, mpmath.conj(z)]
            cand = rec(ys)
            if cand is None:
                continue
            cand = cand / lc
            if cand in found:
                continue
            val = k.zero()
            for c in reversed(h.coeffs):
                val = val * cand + c
            if val.is_zero():
                found.append(cand)
                if len(found) == bound:
                    return found
    return found
