"""Number fields Q[x]/(f), their elements and exact signs at real places."""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import isqrt, lcm
from typing import Iterable, Sequence

import mpmath
import sympy
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor, gf_gcd, gf_mul, gf_from_int_poly

from .errors import InvalidBasis, InvalidInput
from .exact import (
    IntPolynomial,
    RootInterval,
    eval_interval,
    isolate_real_roots,
    qpoly_divmod,
    qpoly_mul,
    qpoly_xgcd,
    refine,
)
from .linalg import det, inverse

__all__ = ["NumberField", "FieldElement", "build_field", "sign_at_place", "squarefree_kernel"]


def squarefree_kernel(n: int) -> int:
    """Signed squarefree part of a nonzero integer."""
    if n == 0:
        raise InvalidInput("zero has no squarefree part")
    s = -1 if n < 0 else 1
    for q, e in sympy.factorint(abs(n)).items():
        if e % 2:
            s *= q
    return s


def _poly_discriminant(f: IntPolynomial) -> int:
    x = sympy.Symbol("x")
    return int(sympy.discriminant(sympy.Poly(list(reversed(f.coeffs)), x)))


def _gf(coeffs_ascending, q):
    return gf_from_int_poly([int(c) for c in reversed(coeffs_ascending)], q)


def dedekind_maximal_at(f: IntPolynomial, q: int) -> bool:
    """Dedekind's criterion: is Z[x]/(f) maximal at the prime q?"""
    fq = _gf(f.coeffs, q)
    _, factors = gf_factor(fq, q, ZZ)
    g = [1]
    h = [1]
    for fac, e in factors:
        fac = [int(c) for c in fac]
        g = gf_mul(g, fac, q, ZZ)
        for _ in range(e - 1):
            h = gf_mul(h, fac, q, ZZ)
    # lift g*h to Z (coefficients in [0, q)) and form (g*h - f)/q
    gz = sympy.Poly([int(c) for c in g], sympy.Symbol("x"))
    hz = sympy.Poly([int(c) for c in h], sympy.Symbol("x"))
    fz = sympy.Poly(list(reversed(f.coeffs)), sympy.Symbol("x"))
    F = (gz * hz - fz)
    Fc = [int(c) // q for c in F.all_coeffs()]
    Fq = gf_from_int_poly(Fc, q)
    d = gf_gcd(gf_gcd(Fq, g, q, ZZ), h, q, ZZ)
    return len(d) <= 1


class NumberField:
    """k = Q(theta) with theta a root of the monic irreducible ``poly``.

    ``basis`` rows hold the power-basis coordinates of an integral basis.
    Real places are numbered from 1 in increasing order of the corresponding root.
    """

    def __init__(self, poly, basis: Sequence[Sequence] | None = None):
        if not isinstance(poly, IntPolynomial):
            poly = IntPolynomial(poly)
        if poly.degree < 1:
            raise InvalidInput("defining polynomial must have positive degree")
        if not poly.is_monic:
            raise InvalidInput("defining polynomial must be monic")
        x = sympy.Symbol("x")
        if poly.degree > 1 and not sympy.Poly(list(reversed(poly.coeffs)), x).is_irreducible:
            raise InvalidInput(f"{poly} is reducible over Q")
        self.poly = poly
        self.degree = n = poly.degree
        self.poly_discriminant = _poly_discriminant(poly) if n > 1 else 1
        self.bad_primes: frozenset[int] = frozenset()
        if basis is None and n == 2:
            self._init_quadratic()
        else:
            self._init_general(basis)
        self._basis_inv = inverse(self.basis)
        self._places = isolate_real_roots(poly)
        self.r1 = len(self._places)
        self.r2 = (n - self.r1) // 2
        self._refined = list(self._places)

    # -- construction helpers --

    def _init_quadratic(self):
        b, _ = self.poly.coeffs[1], self.poly.coeffs[0]
        D = self.poly_discriminant
        s = squarefree_kernel(D)
        m = isqrt(D // s)
        # sqrt(s) = (2 theta + b) / m
        if s % 4 == 1:
            delta, disc = 1, s
            omega = [Fraction(m + b, 2 * m), Fraction(1, m)]
        else:
            delta, disc = 0, 4 * s
            omega = [Fraction(b, m), Fraction(2, m)]
        self.basis = ((Fraction(1), Fraction(0)), tuple(omega))
        self.discriminant = disc
        self.maximality = "certified"
        self.quadratic_data = (disc, delta)
        # omega = (delta + sqrt(disc))/2 has minimal polynomial x^2 - delta x + (delta^2 - disc)/4
        self._gen_poly = IntPolynomial([(delta * delta - disc) // 4, -delta, 1])

    def _init_general(self, basis):
        n = self.degree
        self.quadratic_data = None
        self._gen_poly = self.poly
        if basis is None:
            self.basis = tuple(
                tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)
            )
            self.discriminant = self.poly_discriminant
            bad = set()
            for q, e in sympy.factorint(abs(self.poly_discriminant)).items():
                if e >= 2 and not dedekind_maximal_at(self.poly, q):
                    bad.add(q)
            self.bad_primes = frozenset(bad)
            self.maximality = "uncertified" if bad else "certified"
            return
        B = tuple(tuple(Fraction(x) for x in row) for row in basis)
        if len(B) != n or any(len(r) != n for r in B):
            raise InvalidBasis(f"integral basis must be {n} x {n}")
        d = det(B)
        if d == 0:
            raise InvalidBasis("integral basis is singular")
        self.basis = B
        Binv = inverse(B)
        disc = Fraction(self.poly_discriminant) * d * d
        if disc.denominator != 1:
            raise InvalidBasis("basis discriminant is not an integer")
        self.discriminant = int(disc)
        index2 = Fraction(self.poly_discriminant, 1) / disc
        if index2.denominator != 1 or isqrt(int(index2)) ** 2 != int(index2):
            raise InvalidBasis("basis does not contain the power order")
        index = isqrt(int(index2))
        self._basis_inv = Binv
        # closure: 1 and theta in the span, products stay in the span
        elems = [FieldElement(self, row) for row in B]
        theta = FieldElement(self, [0, 1] + [0] * (n - 2))
        checks = [FieldElement(self, [1] + [0] * (n - 1)), theta]
        checks += [a * b for i, a in enumerate(elems) for b in elems[i:]]
        for c in checks:
            if any(x.denominator != 1 for x in c.coordinates):
                raise InvalidBasis("supplied basis is not closed under multiplication")
        self.bad_primes = frozenset(sympy.factorint(index)) if index > 1 else frozenset()
        bad_uncertified = any(
            e >= 2 and (q in self.bad_primes or not dedekind_maximal_at(self.poly, q))
            for q, e in sympy.factorint(abs(self.discriminant)).items()
        )
        self.maximality = "supplied" if bad_uncertified else "certified"

    # -- basic data --

    @property
    def is_maximal(self) -> bool:
        return self.maximality in ("certified", "supplied")

    @property
    def signature(self) -> tuple[int, int]:
        return self.r1, self.r2

    @property
    def real_places(self) -> list[RootInterval]:
        return list(self._places)

    @property
    def is_totally_real(self) -> bool:
        return self.r1 == self.degree

    @property
    def index(self) -> int:
        return isqrt(abs(self.poly_discriminant // self.discriminant))

    @cached_property
    def gen(self) -> "FieldElement":
        """Generator whose monogenic order is used for Dedekind factorization."""
        if self.quadratic_data is not None:
            return FieldElement(self, self.basis[1])
        return self.theta

    @property
    def gen_poly(self) -> IntPolynomial:
        return self._gen_poly

    @cached_property
    def theta(self) -> "FieldElement":
        n = self.degree
        return FieldElement(self, [0, 1] + [0] * (n - 2) if n > 1 else [self.poly.coeffs[0] * -1])

    def one(self) -> "FieldElement":
        return FieldElement(self, [1] + [0] * (self.degree - 1))

    def zero(self) -> "FieldElement":
        return FieldElement(self, [0] * self.degree)

    def __call__(self, x) -> "FieldElement":
        """Coerce an int, Fraction, coefficient list (power basis) or element."""
        if isinstance(x, FieldElement):
            if x.field is not self:
                raise InvalidInput("element belongs to a different field")
            return x
        if isinstance(x, (int, Fraction)):
            return FieldElement(self, [x] + [0] * (self.degree - 1))
        return FieldElement(self, x)

    def from_basis(self, coords: Sequence) -> "FieldElement":
        """Element with the given coordinates on the integral basis."""
        n = self.degree
        c = [sum((Fraction(coords[i]) * self.basis[i][j] for i in range(n)), Fraction(0)) for j in range(n)]
        return FieldElement(self, c)

    def integral_basis(self) -> list["FieldElement"]:
        return [FieldElement(self, row) for row in self.basis]

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.poly == other.poly and self.basis == other.basis

    def __hash__(self):
        return hash((self.poly, self.basis))

    def __repr__(self):
        return f"NumberField({self.poly}, disc={self.discriminant})"

    # -- real places --

    def _check_place(self, i: int) -> None:
        if not isinstance(i, int) or not 1 <= i <= self.r1:
            raise InvalidInput(f"place {i!r} is not a real place (field has {self.r1})")

    def place_interval(self, i: int, width=None) -> RootInterval:
        self._check_place(i)
        iv = self._refined[i - 1]
        if width is not None and iv.width > width:
            iv = refine(iv, width)
            self._refined[i - 1] = iv
        return iv

    def sign_at_place(self, a: "FieldElement", i: int) -> int:
        self._check_place(i)
        a = self(a)
        if a.is_zero():
            return 0
        coeffs = a.c
        iv = self._refined[i - 1]
        while True:
            if iv.exact is not None:
                v = sum(c * iv.exact**k for k, c in enumerate(coeffs))
                return (v > 0) - (v < 0)
            lo, hi = eval_interval(coeffs, iv.lo, iv.hi)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            iv = refine(iv, iv.width / 4)
            self._refined[i - 1] = iv

    def signs(self, a: "FieldElement", places: Iterable[int] | None = None) -> tuple[int, ...]:
        places = range(1, self.r1 + 1) if places is None else places
        return tuple(self.sign_at_place(a, i) for i in places)

    # -- numerical embeddings (used only to propose candidates that are then verified) --

    def embeddings(self, dps: int = 40) -> list:
        """Images of theta: real places in order, then each complex pair (upper, lower)."""
        cache = self.__dict__.setdefault("_emb_cache", {})
        if dps in cache:
            return cache[dps]
        with mpmath.workdps(dps + 10):
            width = Fraction(1, 2 ** int(dps * 3.33 + 20))
            out = [mpmath.mpf(self.place_interval(i, width).midpoint.numerator)
                   / self.place_interval(i, width).midpoint.denominator for i in range(1, self.r1 + 1)]
            if self.r2:
                roots = mpmath.polyroots(
                    [int(c) for c in reversed(self.poly.coeffs)], maxsteps=200, extraprec=4 * dps + 50
                )
                upper = sorted(
                    (r for r in roots if mpmath.im(r) > mpmath.mpf(10) ** (-dps // 2)),
                    key=lambda r: (float(mpmath.re(r)), float(mpmath.im(r))),
                )
                if len(upper) != self.r2:
                    raise InvalidInput("could not separate the complex roots")
                for r in upper:
                    out += [r, mpmath.conj(r)]
        cache[dps] = out
        return out


class FieldElement:
    """Element of a number field, stored on the power basis."""

    __slots__ = ("field", "c")

    def __init__(self, field: NumberField, coeffs: Sequence):
        n = field.degree
        c = [Fraction(x) for x in coeffs]
        if len(c) > n:
            _, r = qpoly_divmod(c, field.poly.coeffs)
            c = r
        c = c + [Fraction(0)] * (n - len(c))
        self.field = field
        self.c = tuple(c)

    # -- coordinates --

    @property
    def coordinates(self) -> tuple[Fraction, ...]:
        """Coordinates on the integral basis."""
        Binv = self.field._basis_inv
        n = self.field.degree
        return tuple(sum((self.c[i] * Binv[i][j] for i in range(n)), Fraction(0)) for j in range(n))

    def gen_coordinates(self) -> tuple[Fraction, ...]:
        """Coordinates on 1, g, ..., g^(n-1) where g is the field's Dedekind generator."""
        if self.field.quadratic_data is not None:
            return self.coordinates
        return self.c

    @property
    def denominator(self) -> int:
        return lcm(*(x.denominator for x in self.coordinates))

    def is_zero(self) -> bool:
        return not any(self.c)

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.charpoly())

    # -- arithmetic --

    def _coerce(self, other) -> "FieldElement | None":
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise InvalidInput("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, [a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, [-a for a in self.c])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, [a - b for a, b in zip(self.c, o.c)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, [a * other for a in self.c])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, qpoly_mul(list(self.c), list(o.c)))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a number field")
        g, s, _ = qpoly_xgcd(list(self.c), list(self.field.poly.coeffs))
        if len(g) != 1:
            raise InvalidInput("element is not invertible")
        return FieldElement(self.field, s)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, [a / other for a in self.c])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other) if isinstance(other, (int, Fraction, FieldElement)) else None
        if o is None:
            return NotImplemented
        return self.c == o.c

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        terms = []
        for k, a in enumerate(self.c):
            if a:
                terms.append(f"{a}" if k == 0 else f"{a}*t" if k == 1 else f"{a}*t^{k}")
        return " + ".join(terms) or "0"

    # -- invariants --

    def multiplication_matrix(self) -> list[list[Fraction]]:
        """Columns are the power-basis coordinates of self * theta^j."""
        n = self.field.degree
        cols = []
        x = self
        theta = self.field.theta
        for j in range(n):
            cols.append(x.c)
            if j + 1 < n:
                x = x * theta
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def norm(self) -> Fraction:
        return Fraction(det(self.multiplication_matrix()))

    def trace(self) -> Fraction:
        M = self.multiplication_matrix()
        return sum((M[i][i] for i in range(len(M))), Fraction(0))

    def charpoly(self) -> list[Fraction]:
        """Characteristic polynomial, ascending coefficients, monic (Faddeev-LeVerrier)."""
        M = self.multiplication_matrix()
        n = len(M)
        coeffs = [Fraction(0)] * (n + 1)
        coeffs[n] = Fraction(1)
        Mk = [[Fraction(0)] * n for _ in range(n)]
        for k in range(1, n + 1):
            # Mk = M * (M_{k-1} + c_{n-k+1} I)
            A = [[Mk[i][j] + (coeffs[n - k + 1] if i == j else 0) for j in range(n)] for i in range(n)]
            Mk = [[sum(M[i][t] * A[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
            coeffs[n - k] = -sum(Mk[i][i] for i in range(n)) / k
        return coeffs

    def sign(self, place: int) -> int:
        return self.field.sign_at_place(self, place)

    def numeric(self, dps: int = 40) -> list:
        """Images under all embeddings (see :meth:`NumberField.embeddings`)."""
        emb = self.field.embeddings(dps)
        with mpmath.workdps(dps + 10):
            return [mpmath.polyval([mpmath.mpf(a.numerator) / a.denominator for a in reversed(self.c)], z)
                    for z in emb]


def build_field(f, basis: Sequence[Sequence] | None = None) -> NumberField:
    return NumberField(f, basis)


def sign_at_place(a: FieldElement, i: int) -> int:
    return a.field.sign_at_place(a, i)
