from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nonselective.errors import InvalidBasis, InvalidInput
from nonselective.exact import IntPolynomial
from nonselective.numberfield import NumberField, squarefree_kernel

from conftest import EX1, EX2, field, quad
from oracles import real_roots_numeric


@pytest.mark.parametrize("n, disc", [(2, 8), (3, 12), (5, 5), (10, 40), (13, 13), (-1, -4), (-5, -20), (-3, -3)])
def test_quadratic_discriminants(n, disc):
    k = quad(n)
    assert k.discriminant == disc
    assert k.maximality == "certified"


def test_quadratic_basis_half_integral():
    k = quad(5)
    w = k.integral_basis()[1]
    assert w * w == w + 1  # golden ratio


def test_published_quintic_discriminants():
    # values printed with the examples
    assert field(*EX1).discriminant == 1123541
    assert field(*EX2).discriminant == 15216977
    assert field(*EX1).maximality == "certified"
    assert field(*EX1).is_totally_real and field(*EX2).is_totally_real


def test_nonmaximal_equation_order_flagged():
    f = IntPolynomial([-8, -2, -1, 1])  # index 2 at the prime 2
    k = NumberField(f)
    assert k.maximality == "uncertified" and 2 in k.bad_primes
    basis = [[1, 0, 0], [0, 1, 0], [0, Fraction(1, 2), Fraction(1, 2)]]
    k2 = NumberField(f, basis)
    # -503 is squarefree, so the supplied basis is certified maximal
    assert k2.maximality == "certified" and k2.discriminant == -503


def test_bad_basis_rejected():
    with pytest.raises(InvalidBasis):
        NumberField(IntPolynomial([-8, -2, -1, 1]), [[1, 0, 0], [0, 1, 0], [0, 0, Fraction(1, 3)]])


def test_reducible_polynomial_rejected():
    with pytest.raises(InvalidInput):
        NumberField(IntPolynomial([-4, 0, 1]))


def test_signs_at_places():
    k = quad(3)
    t = k.theta
    assert [k.sign_at_place(t, i) for i in (1, 2)] == [-1, 1]
    assert k.sign_at_place(t * t - 3 + Fraction(1, 10**30), 1) == 1


def test_places_numbered_by_increasing_root():
    k = field(*EX1)
    ref = real_roots_numeric(list(EX1))
    num = [float(x) for x in k.embeddings()[: k.r1]]
    assert num == pytest.approx(ref, abs=1e-12)
    assert ref[0] == pytest.approx(-1.7870, abs=1e-4)


@pytest.mark.parametrize("n", [2, 10, 5, -7])
def test_squarefree_kernel(n):
    assert squarefree_kernel(n * 36) == n


elements = st.lists(st.integers(-30, 30), min_size=5, max_size=5)


@settings(max_examples=60, deadline=None)
@given(elements, elements)
def test_field_arithmetic(a, b):
    k = field(*EX1)
    x, y = k(a), k(b)
    assert (x + y) - y == x
    assert x * y == y * x
    if not y.is_zero():
        assert (x * y) / y == x
        assert (x * y).norm() == x.norm() * y.norm()
    assert (x + y).trace() == x.trace() + y.trace()


@settings(max_examples=40, deadline=None)
@given(elements)
def test_signs_agree_with_numeric_embeddings(a):
    k = field(*EX2)
    x = k(a)
    if x.is_zero():
        return
    vals = x.numeric(60)
    for i in range(1, k.r1 + 1):
        v = vals[i - 1]
        if abs(v) > 1e-20:
            assert k.sign_at_place(x, i) == (1 if v > 0 else -1)


def test_charpoly_of_generator_is_defining_polynomial():
    k = field(*EX1)
    cp = k.theta.charpoly()
    assert [int(c) for c in cp] == list(EX1)


def test_negative_powers():
    k = quad(2)
    u = k([1, 1])
    assert u**-1 == k([-1, 1])
    assert u**3 * u**-3 == k.one()
