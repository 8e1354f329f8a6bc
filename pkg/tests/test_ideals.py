import pytest
import sympy
from hypothesis import given, settings, strategies as st

from nonselective.errors import InvalidInput, UnsupportedPrime
from nonselective.exact import IntPolynomial
from nonselective.ideals import OkIdeal, factor_prime, prime_above, primes_up_to, unit_ideal
from nonselective.numberfield import NumberField

from conftest import EX1, EX2, field, quad
from oracles import legendre, vq


@pytest.mark.parametrize("coeffs", [EX1, EX2, (-10, 0, 1), (-2, 0, 0, 1)])
@pytest.mark.parametrize("q", [2, 3, 5, 7, 11, 13])
def test_fundamental_identity(coeffs, q):
    k = field(*coeffs)
    ps = factor_prime(k, q)
    assert sum(P.e * P.f for P in ps) == k.degree
    prod = unit_ideal(k)
    for P in ps:
        prod = prod * P.ideal**P.e
    assert prod == OkIdeal.from_generators(k, [k(q)])


@pytest.mark.parametrize("D", [5, 8, 12, 13, 40, 21, 24, 28])
def test_quadratic_splitting_matches_kronecker(D):
    k = NumberField(IntPolynomial([-D, 0, 1]) if D % 4 else IntPolynomial([-D // 4, 0, 1]))
    for q in sympy.primerange(3, 80):
        ps = factor_prime(k, q)
        ref = legendre(k.discriminant, q)
        got = 0 if ps[0].e == 2 else (1 if len(ps) == 2 else -1)
        assert got == ref, q


def test_valuation_and_uniformizer():
    k = quad(10)
    (P2,) = factor_prime(k, 2)
    assert P2.e == 2
    assert P2.valuation(k(2)) == 2
    assert P2.valuation(P2.uniformizer) == 1
    assert P2.valuation(k(1) / 2) == -2


elements = st.lists(st.integers(-40, 40), min_size=5, max_size=5)


@settings(max_examples=40, deadline=None)
@given(elements, st.sampled_from([2, 3, 5, 7, 11]))
def test_norm_valuation_formula(a, q):
    k = field(*EX1)
    x = k(a)
    if x.is_zero():
        return
    assert vq(x.norm(), q) == sum(P.f * P.valuation(x) for P in factor_prime(k, q))


@settings(max_examples=40, deadline=None)
@given(elements, elements)
def test_residue_map_is_a_ring_map(a, b):
    k = field(*EX2)
    for P in factor_prime(k, 3):
        F = P.residue_field
        x, y = k(a), k(b)
        assert P.residue(x * y) == F.mul(P.residue(x), P.residue(y))
        assert P.residue(x + y) == F.add(P.residue(x), P.residue(y))


def test_labels_round_trip():
    k = field(*EX1)
    for P in primes_up_to(k, 60):
        assert prime_above(k, P.label()) == P


def test_primes_up_to_sorted_by_norm():
    k = quad(10)
    norms = [P.norm for P in primes_up_to(k, 200)]
    assert norms == sorted(norms)


def test_bad_prime_refused():
    k = NumberField(IntPolynomial([-8, -2, -1, 1]))
    with pytest.raises(UnsupportedPrime):
        factor_prime(k, 2)


def test_bad_label():
    with pytest.raises(InvalidInput):
        prime_above(quad(10), "x:1")
