from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nonselective.errors import InvalidInput
from nonselective.exact import (
    IntPolynomial,
    count_real_roots,
    isolate_real_roots,
    padic_valuation,
    qpoly_divmod,
    qpoly_gcd,
    qpoly_mul,
    refine,
    smith_valuations,
)

from oracles import invariant_factors, real_roots_numeric, vq

small_ints = st.integers(-20, 20)
polys = st.lists(small_ints, min_size=2, max_size=7).filter(lambda c: c[-1] != 0)


def test_polynomial_basics():
    f = IntPolynomial([-2, 0, 1])
    assert f.degree == 2 and f(3) == 7 and f.is_monic()
    assert (f * f).coeffs == (4, 0, -4, 0, 1)
    assert f.derivative().coeffs == (0, 2)
    assert IntPolynomial([2, 4, 0, 0]).coeffs == (2, 4)
    assert IntPolynomial.from_rational([Fraction(1, 2), Fraction(3, 4)]).coeffs == (2, 3)


def test_squarefree_part():
    f = IntPolynomial([1, -1]) * IntPolynomial([1, -1]) * IntPolynomial([2, 1])
    g = f.squarefree_part()
    assert g.degree == 2 and g.is_squarefree()
    assert not f.is_squarefree()


def test_isolate_known_roots():
    roots = isolate_real_roots(IntPolynomial([-2, 0, 1]))
    assert len(roots) == 2
    assert roots[0].hi <= 0 <= roots[1].lo
    r = refine(roots[1], Fraction(1, 10**12))
    assert r.width <= Fraction(1, 10**12)
    assert r.lo**2 < 2 < r.hi**2


def test_rational_root_is_caught_exactly():
    roots = isolate_real_roots(IntPolynomial([0, -1, 0, 1]))  # x^3 - x
    assert [float(refine(r, Fraction(1, 1000)).midpoint) for r in roots] == pytest.approx([-1, 0, 1], abs=1e-3)


def test_zero_polynomial_rejected():
    with pytest.raises(InvalidInput):
        isolate_real_roots(IntPolynomial([]))


def test_repeated_roots_flagged():
    f = IntPolynomial([1, -2, 1])
    roots = isolate_real_roots(f)
    assert len(roots) == 1 and not roots.squarefree_input


@settings(max_examples=120, deadline=None)
@given(polys)
def test_sturm_matches_numeric_roots(c):
    f = IntPolynomial(c)
    if f.degree < 1:
        return
    ref = sorted(set(round(x, 6) for x in real_roots_numeric(list(f.squarefree_part().coeffs))))
    roots = isolate_real_roots(f)
    assert len(roots) == len(ref) == count_real_roots(f.squarefree_part())
    for iv, x in zip(roots, ref):
        assert float(iv.lo) - 1e-6 <= x <= float(iv.hi) + 1e-6


@settings(max_examples=120, deadline=None)
@given(st.lists(small_ints, min_size=1, max_size=5), st.lists(small_ints, min_size=1, max_size=4))
def test_divmod_identity(a, b):
    if not any(b):
        return
    q, r = qpoly_divmod(a, b)
    prod = qpoly_mul(q, b)
    n = max(len(prod), len(r), len(a))
    pad = lambda v: [Fraction(x) for x in v] + [Fraction(0)] * (n - len(v))
    assert [x + y for x, y in zip(pad(prod), pad(r))] == pad(a)


def test_gcd_of_products():
    g = qpoly_gcd(qpoly_mul([1, 1], [2, 1]), qpoly_mul([1, 1], [3, 1]))
    assert [Fraction(x) / g[-1] for x in g] == [1, 1]


@given(st.integers(1, 10**6), st.integers(1, 10**6), st.sampled_from([2, 3, 5, 7]))
def test_padic_valuation_additive(a, b, q):
    assert padic_valuation(Fraction(a, b), q) == padic_valuation(a, q) - padic_valuation(b, q)
    assert padic_valuation(a * b, q) == padic_valuation(a, q) + padic_valuation(b, q)


def test_smith_valuations_examples():
    assert smith_valuations([[2, 0], [1, 2]], 2).valuations == (0, 2)
    assert smith_valuations([[4, 0], [0, 1]], 2).valuations == (0, 2)
    assert smith_valuations([[Fraction(1, 2), 0], [0, 2]], 2).valuations == (-1, 1)


mats = st.lists(st.lists(st.integers(-12, 12), min_size=3, max_size=3), min_size=3, max_size=3)


@settings(max_examples=150, deadline=None)
@given(mats, st.sampled_from([2, 3, 5]))
def test_smith_valuations_match_minors(M, q):
    divs = invariant_factors(M)
    if len(divs) < 3:
        return
    assert smith_valuations(M, q).valuations == tuple(vq(d, q) for d in divs)
