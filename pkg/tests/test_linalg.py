from fractions import Fraction

from hypothesis import given, settings, strategies as st

from nonselective.linalg import FpQuotient, det, fp_kernel, fp_rank, fp_solve, inverse, matmul, smith_form

from oracles import invariant_factors

int_rows = st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=1, max_size=4)


def test_det_and_inverse():
    M = [[2, 1], [7, 4]]
    assert det(M) == 1
    assert matmul(M, inverse(M)) == [[1, 0], [0, 1]]
    assert inverse([[2, 0], [0, 4]]) == [[Fraction(1, 2), 0], [0, Fraction(1, 4)]]


@settings(max_examples=150, deadline=None)
@given(int_rows)
def test_smith_form_matches_minors(rows):
    diag, V = smith_form(rows, 3)
    nonzero = [d for d in diag if d]
    ref = invariant_factors(rows)
    assert [abs(d) for d in nonzero] == ref
    assert abs(det(V)) == 1


@settings(max_examples=100, deadline=None)
@given(int_rows)
def test_smith_transform_kills_relations(rows):
    diag, V = smith_form(rows, 3)
    for r in rows:
        image = [sum(r[i] * V[i][j] for i in range(3)) for j in range(3)]
        for x, d in zip(image, diag):
            assert (x == 0) if d == 0 else (x % d == 0)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(0, 4), min_size=4, max_size=4), min_size=1, max_size=4), st.sampled_from([2, 3, 5]))
def test_kernel_rank_nullity(rows, p):
    ker = fp_kernel(rows, p, 4)
    assert len(ker) + fp_rank(rows, p) == 4
    for x in ker:
        assert all(sum(a * b for a, b in zip(r, x)) % p == 0 for r in rows)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(0, 2), min_size=3, max_size=3), min_size=1, max_size=3),
       st.lists(st.integers(0, 2), min_size=3, max_size=3))
def test_solve_consistent_system(rows, x0):
    rhs = [sum(a * b for a, b in zip(r, x0)) % 3 for r in rows]
    x = fp_solve(rows, rhs, 3)
    assert x is not None
    assert [sum(a * b for a, b in zip(r, x)) % 3 for r in rows] == rhs


def test_solve_inconsistent():
    assert fp_solve([[1, 0], [1, 0]], [0, 1], 2) is None


def test_quotient_projection():
    Q = FpQuotient(2, 3, [[1, 1, 0]])
    assert Q.rank == 2
    assert Q.project([1, 1, 0]) == (0, 0)
    assert Q.project([1, 0, 0]) == Q.project([0, 1, 0])
    assert Q.project([0, 0, 1]) != (0, 0)
