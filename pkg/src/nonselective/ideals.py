"""Integral ideals in HNF, prime ideals via Dedekind's criterion, valuations and residue fields."""
from __future__ import annotations

from functools import cached_property
from math import lcm, prod
from typing import Iterable, Sequence

import sympy
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor, gf_from_int_poly, gf_mul, gf_pow_mod, gf_rem

from .errors import InvalidInput, UnsupportedPrime
from .exact import IntPolynomial, padic_valuation
from .linalg import fp_kernel, hnf_columns
from .numberfield import FieldElement, NumberField

__all__ = ["OkIdeal", "PrimeIdeal", "ResidueField", "factor_prime", "primes_up_to", "unit_ideal"]


def _int_coords(a: FieldElement) -> list[int]:
    c = a.coordinates
    if any(x.denominator != 1 for x in c):
        raise InvalidInput(f"{a!r} is not integral")
    return [int(x) for x in c]


class OkIdeal:
    """Nonzero integral ideal of O_k, stored as an upper-triangular column HNF.

    Column j of ``hnf`` holds integral-basis coordinates of the j-th Z-basis vector.
    """

    __slots__ = ("field", "hnf")

    def __init__(self, field: NumberField, hnf: Sequence[Sequence[int]]):
        self.field = field
        self.hnf = tuple(tuple(int(x) for x in row) for row in hnf)

    @classmethod
    def from_generators(cls, field: NumberField, gens: Iterable) -> "OkIdeal":
        basis = field.integral_basis()
        vecs = []
        for g in gens:
            g = field(g)
            vecs += [_int_coords(g * w) for w in basis]
        return cls(field, hnf_columns(vecs, field.degree))

    @property
    def norm(self) -> int:
        return prod(self.hnf[i][i] for i in range(len(self.hnf)))

    def basis_elements(self) -> list[FieldElement]:
        n = self.field.degree
        return [self.field.from_basis([self.hnf[i][j] for i in range(n)]) for j in range(n)]

    def __contains__(self, a) -> bool:
        a = self.field(a)
        c = a.coordinates
        if any(x.denominator != 1 for x in c):
            return False
        rem = [int(x) for x in c]
        n = len(rem)
        for j in range(n - 1, -1, -1):
            h = self.hnf[j][j]
            if rem[j] % h:
                return False
            t = rem[j] // h
            for i in range(j + 1):
                rem[i] -= t * self.hnf[i][j]
        return True

    def __mul__(self, other: "OkIdeal") -> "OkIdeal":
        if isinstance(other, PrimeIdeal):
            other = other.ideal
        gens = [a * b for a in self.basis_elements() for b in other.basis_elements()]
        vecs = [_int_coords(g) for g in gens]
        return OkIdeal(self.field, hnf_columns(vecs, self.field.degree))

    def __pow__(self, e: int) -> "OkIdeal":
        if e < 0:
            raise InvalidInput("negative powers of integral ideals are not integral")
        out = unit_ideal(self.field)
        for _ in range(e):
            out = out * self
        return out

    def is_unit(self) -> bool:
        return self.norm == 1

    def __eq__(self, other):
        return isinstance(other, OkIdeal) and self.field == other.field and self.hnf == other.hnf

    def __hash__(self):
        return hash(self.hnf)

    def __repr__(self):
        return f"OkIdeal(norm={self.norm}, hnf={self.hnf})"


def unit_ideal(field: NumberField) -> OkIdeal:
    n = field.degree
    return OkIdeal(field, [[int(i == j) for j in range(n)] for i in range(n)])


class ResidueField:
    """F_q[x]/(g) for an irreducible g mod q; elements are descending coefficient lists."""

    def __init__(self, q: int, g: Sequence[int]):
        self.q = q
        self.g = gf_from_int_poly([int(c) for c in reversed(list(g))], q)
        self.degree = len(self.g) - 1
        self.size = q ** self.degree

    def reduce(self, coeffs_ascending: Sequence[int]) -> tuple[int, ...]:
        p = gf_from_int_poly([int(c) for c in reversed(list(coeffs_ascending))], self.q)
        return tuple(int(c) for c in gf_rem(p, self.g, self.q, ZZ))

    def mul(self, a, b):
        return tuple(int(c) for c in gf_rem(gf_mul(list(a), list(b), self.q, ZZ), self.g, self.q, ZZ))

    def add(self, a, b):
        n = max(len(a), len(b))
        a = (0,) * (n - len(a)) + tuple(a)
        b = (0,) * (n - len(b)) + tuple(b)
        out = [(x + y) % self.q for x, y in zip(a, b)]
        while out and out[0] == 0:
            out.pop(0)
        return tuple(out)

    def pow(self, a, e: int):
        if e == 0:
            return (1,)
        return tuple(int(c) for c in gf_pow_mod(list(a), e, self.g, self.q, ZZ))

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("zero in residue field")
        return self.pow(a, self.size - 2)

    def is_square(self, a) -> bool:
        if not a or self.q == 2:
            return True
        return self.pow(a, (self.size - 1) // 2) == (1,)

    def sqrt_char2(self, a):
        """The unique square root in characteristic 2."""
        return self.pow(a, self.size // 2)

    def elements(self):
        from itertools import product

        for digits in product(range(self.q), repeat=self.degree):
            out = list(digits)
            while out and out[0] == 0:
                out.pop(0)
            yield tuple(out)


class PrimeIdeal:
    """Prime ideal (q, g(gen)) of O_k with ramification index e and residue degree f.

    ``gen`` is the field's Dedekind generator; ``poly`` is the lifted factor g.
    """

    def __init__(self, field: NumberField, q: int, poly: IntPolynomial, e: int, f: int):
        self.field = field
        self.q = q
        self.poly = poly
        self.e = e
        self.f = f

    @property
    def residue_char(self) -> int:
        return self.q

    @property
    def ramification_index(self) -> int:
        return self.e

    @property
    def residue_degree(self) -> int:
        return self.f

    @property
    def norm(self) -> int:
        return self.q**self.f

    @cached_property
    def generator(self) -> FieldElement:
        """g(gen), the second element of the two-element representation."""
        gen = self.field.gen
        out = self.field.zero()
        for c in reversed(self.poly.coeffs):
            out = out * gen + c
        return out

    @property
    def two_element_rep(self) -> tuple[int, FieldElement]:
        return self.q, self.generator

    @cached_property
    def ideal(self) -> OkIdeal:
        return OkIdeal.from_generators(self.field, [self.field(self.q), self.generator])

    @cached_property
    def tau(self) -> FieldElement:
        """Integral tau outside qO_k with tau * p inside qO_k, so v_p(tau/q) = -1."""
        k = self.field
        g = self.generator
        basis = k.integral_basis()
        cols = [_int_coords(g * w) for w in basis]
        rows = [[cols[j][i] for j in range(k.degree)] for i in range(k.degree)]
        ker = fp_kernel(rows, self.q, k.degree)
        if not ker:
            raise InvalidInput("prime ideal data inconsistent with the field")
        return k.from_basis(ker[0])

    @cached_property
    def residue_field(self) -> ResidueField:
        return ResidueField(self.q, [c % self.q for c in self.poly.coeffs])

    def _int_valuation(self, b: FieldElement) -> int:
        v = 0
        tau = self.tau
        q = self.q
        while True:
            c = (b * tau).coordinates
            if any(x.numerator % q for x in c):
                return v
            b = (b * tau) / q
            v += 1

    def valuation(self, a) -> int:
        a = self.field(a)
        if a.is_zero():
            raise InvalidInput("valuation of zero")
        m = a.denominator
        b = a * m
        return self._int_valuation(b) - self.e * padic_valuation(m, self.q)

    @cached_property
    def uniformizer(self) -> FieldElement:
        if self.e == 1:
            return self.field(self.q)
        g = self.generator
        return g if self.valuation(g) == 1 else g + self.q

    @property
    def anti_uniformizer(self) -> FieldElement:
        """tau / q: valuation -1 here and nonnegative at every other prime."""
        return self.tau / self.q

    def residue(self, a) -> tuple[int, ...]:
        """Image in O_k/p of an element integral at every prime above q."""
        a = self.field(a)
        c = a.gen_coordinates()
        den = lcm(*(x.denominator for x in c))
        if den % self.q == 0:
            raise InvalidInput("element is not integral above q")
        inv = pow(den, -1, self.q)
        ints = [(x.numerator * (den // x.denominator) * inv) % self.q for x in c]
        return self.residue_field.reduce(ints)

    def lift(self, r: Sequence[int]) -> FieldElement:
        """An element of O_k reducing to the residue ``r`` (descending coefficients)."""
        gen = self.field.gen
        out = self.field.zero()
        for c in r:
            out = out * gen + int(c)
        return out

    def unit_part(self, a) -> tuple[int, FieldElement]:
        """(v, u) with u = a * (tau/q)^v integral above q when a is; v_p(u) = 0."""
        a = self.field(a)
        v = self.valuation(a)
        return v, a * self.anti_uniformizer**v

    @property
    def sort_key(self):
        return (self.norm, self.q, self.poly.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, PrimeIdeal)
            and self.field == other.field
            and self.q == other.q
            and self.poly == other.poly
        )

    def __hash__(self):
        return hash((self.q, self.poly))

    def __repr__(self):
        return f"PrimeIdeal(q={self.q}, g={self.poly}, e={self.e}, f={self.f})"

    def label(self) -> str:
        return f"{self.q}:{','.join(str(c) for c in self.poly.coeffs)}"


def factor_prime(k: NumberField, q: int) -> list[PrimeIdeal]:
    """Factor qO_k by Dedekind's criterion, in a deterministic order."""
    if not sympy.isprime(q):
        raise InvalidInput(f"{q} is not prime")
    if q in k.bad_primes:
        raise UnsupportedPrime(f"Dedekind's criterion does not apply at {q} for this basis")
    g = gf_from_int_poly([int(c) for c in reversed(k.gen_poly.coeffs)], q)
    _, factors = gf_factor(g, q, ZZ)
    out = []
    for fac, e in factors:
        coeffs = [int(c) for c in reversed(fac)]
        out.append(PrimeIdeal(k, q, IntPolynomial(coeffs), e, len(fac) - 1))
    out.sort(key=lambda P: (P.f, P.e, P.poly.coeffs))
    return out


def prime_above(k: NumberField, label: str) -> PrimeIdeal:
    """Look up a prime from a ``q:c0,c1,...`` label (ascending coefficients of g mod q)."""
    try:
        qs, _, ps = label.partition(":")
        q = int(qs)
        coeffs = [int(c) % q for c in ps.split(",")] if ps else None
    except ValueError as exc:
        raise InvalidInput(f"bad prime label {label!r}") from exc
    primes = factor_prime(k, q)
    if coeffs is None:
        if len(primes) != 1:
            raise InvalidInput(f"{q} is not prime in this field; give a generator")
        return primes[0]
    target = IntPolynomial(coeffs)
    for P in primes:
        if P.poly == target:
            return P
    raise InvalidInput(f"no prime above {q} with generator {ps}")


def primes_up_to(k: NumberField, bound: int, start: int = 2) -> list[PrimeIdeal]:
    """Primes of norm in [start, bound], sorted by (norm, q, generator); bad primes skipped."""
    out = []
    for q in sympy.primerange(2, bound + 1):
        if q in k.bad_primes:
            continue
        for P in factor_prime(k, q):
            if start <= P.norm <= bound:
                out.append(P)
    out.sort(key=lambda P: P.sort_key)
    return out
