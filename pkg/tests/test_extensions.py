from itertools import product
from math import prod

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from nonselective.errors import InvalidInput
from nonselective.exact import IntPolynomial
from nonselective.extensions import (
    INERT,
    RAMIFIED,
    SPLIT,
    QuadraticExtension,
    count_roots_in_field,
    is_square_in_field,
    splitting_in_quadratic,
)
from nonselective.ideals import factor_prime
from nonselective.numberfield import squarefree_kernel

from conftest import EX1, EX2, field, quad


def qdisc(n):
    s = squarefree_kernel(n)
    return s if s % 4 == 1 else 4 * s


def test_square_roots_found():
    k = quad(3)
    r = is_square_in_field(k, k([7, 4]))
    assert r is not None and r * r == k([7, 4])
    assert is_square_in_field(k, k(2)) is None
    assert is_square_in_field(k, k(3)) is not None


elements = st.lists(st.integers(-25, 25), min_size=5, max_size=5)


@settings(max_examples=30, deadline=None)
@given(elements)
def test_squares_recognised_in_quintic(a):
    k = field(*EX1)
    x = k(a)
    if x.is_zero():
        return
    r = is_square_in_field(k, x * x)
    assert r is not None and (r == x or r == -x)
    # odd degree: 3 is not a square, so neither is 3 x^2
    assert is_square_in_field(k, x * x * 3) is None


def test_count_roots():
    assert count_roots_in_field(quad(3), IntPolynomial([-3, 0, 1])) == 2
    assert count_roots_in_field(quad(3), IntPolynomial([-2, 0, 0, 1])) == 0
    assert count_roots_in_field(field(*EX1), IntPolynomial(EX1)) == 1
    assert count_roots_in_field(field(*EX2), IntPolynomial(EX2)) == 1
    # cyclic cubic: all three roots lie in the field
    assert count_roots_in_field(field(1, -2, -1, 1), IntPolynomial([1, -2, -1, 1])) == 3


def test_square_radicand_rejected():
    with pytest.raises(InvalidInput):
        QuadraticExtension(quad(3), 12)


@pytest.mark.parametrize("m, d", [(3, -1), (10, -1), (10, 2), (10, 5), (15, -1), (15, 5), (2, -1), (5, -1), (6, -3), (7, 5)])
def test_discriminant_norm_matches_biquadratic_formula(m, d):
    """N(d_{L/k}) = d(Q(sqrt d)) d(Q(sqrt md)) / d(Q(sqrt m)) for L = Q(sqrt m, sqrt d)."""
    k = quad(m)
    if is_square_in_field(k, k(d)) is not None:
        pytest.skip("degenerate")
    L = QuadraticExtension(k, d)
    norm = prod(P.norm**e for P, e in L.discriminant_exponents().items())
    assert norm == abs(qdisc(d) * qdisc(m * d)) // abs(qdisc(m))


def _is_square_mod(k, P, d, m):
    """Brute force: is d congruent to a square modulo P^m? (8 O_k lies inside P^m here)."""
    I = P.ideal**m
    basis = k.integral_basis()
    for x, y in product(range(8), repeat=2):
        z = basis[0] * x + basis[1] * y
        if (z * z - d) in I:
            return True
    return False


@pytest.mark.parametrize("m", [2, 3, 5, 6, 7, 10, 11, 13, 17, 21, 33])
def test_dyadic_splitting_brute_force(m):
    k = quad(m)
    w = k.integral_basis()[1]
    for P in factor_prime(k, 2):
        e = P.e
        for a, b in product(range(-3, 4), repeat=2):
            d = k(a) + w * b
            if d.is_zero() or P.valuation(d) != 0 or is_square_in_field(k, d) is not None:
                continue
            got = splitting_in_quadratic(QuadraticExtension(k, d), P)
            if _is_square_mod(k, P, d, 2 * e + 1):
                want = SPLIT
            elif _is_square_mod(k, P, d, 2 * e):
                want = INERT
            else:
                want = RAMIFIED
            assert got == want, (m, a, b, P.label())


@pytest.mark.parametrize("m", [3, 10, 15])
def test_odd_splitting_by_residue_symbol(m):
    k = quad(m)
    w = k.integral_basis()[1]
    for q in sympy.primerange(3, 40):
        for P in factor_prime(k, q):
            for a, b in product(range(-2, 3), repeat=2):
                d = k(a) + w * b
                if d.is_zero() or is_square_in_field(k, d) is not None:
                    continue
                got = splitting_in_quadratic(QuadraticExtension(k, d), P)
                v = P.valuation(d)
                if v % 2:
                    assert got == RAMIFIED
                elif v == 0:
                    sq = P.residue_field.is_square(P.residue(d))
                    assert got == (SPLIT if sq else INERT)


def test_real_place_splitting():
    k = quad(3)
    L = QuadraticExtension(k, k.theta)  # sqrt(sqrt 3): negative at place 1
    assert splitting_in_quadratic(L, 1) == RAMIFIED
    assert splitting_in_quadratic(L, 2) == SPLIT


def test_unramified_extensions_of_small_fields():
    assert QuadraticExtension(quad(3), -1).is_unramified_at_finite_primes()
    assert QuadraticExtension(quad(10), 2).is_unramified_at_finite_primes()
    assert QuadraticExtension(quad(10), 5).is_unramified_at_finite_primes()
    assert not QuadraticExtension(quad(10), -1).is_unramified_at_finite_primes()
