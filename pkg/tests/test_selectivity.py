import random
from itertools import combinations

import pytest

from nonselective.classgroups import build_GB
from nonselective.errors import InvalidInput, ValidationError
from nonselective.extensions import INERT, QuadraticExtension, splitting_in_quadratic
from nonselective.ideals import prime_above, primes_up_to
from nonselective.lattices import abstract_frame, build_parameter_frame, enumerate_orders, twist_at_prime
from nonselective.selectivity import (
    AlgebraSpec,
    CharacterModel,
    QuadraticOrderSpec,
    build_nonselective_family,
    check_family_nonselective,
    compute_sB_tB,
    embeddable_characters,
    embeds_in_algebra,
    is_in_kB,
    max_family_bound,
    max_nonselective_size,
    selectivity_verdict,
    selects,
    separating_prime,
    validate_algebra,
)

from conftest import quad


def _setup(n, real=(), finite=()):
    k = quad(n)
    spec = AlgebraSpec(k, 2, tuple(prime_above(k, f) for f in finite), real)
    G = build_GB(k, spec)
    return k, spec, G


def test_validate_examples():
    k = quad(10)
    assert validate_algebra(AlgebraSpec(k, 2)).ok
    rep = validate_algebra(AlgebraSpec(k, 2, (), (1,)))
    assert [c for c, _ in rep.errors] == ["parity"]
    with pytest.raises(ValidationError):
        validate_algebra(AlgebraSpec(k, 2, (), (1,)), strict=True)
    rep = validate_algebra(AlgebraSpec(k, 2, (prime_above(k, "3:1,1"),), (1,)))
    assert rep.ok and rep.facts["no-selective-orders"]
    assert [c for c, _ in validate_algebra(AlgebraSpec(k, 2, (), (1, 2))).errors] == ["totally-definite"]
    assert [c for c, _ in validate_algebra(AlgebraSpec(k, 3, (), (1,))).errors] == ["odd-degree-nonsplit"]


def test_embeds_examples():
    k, spec, G = _setup(3, (1, 2))
    assert embeds_in_algebra(QuadraticExtension(k, -1), spec)
    assert not embeds_in_algebra(QuadraticExtension(k, 2), spec)


def test_embeds_invariant_under_square_multiples():
    rng = random.Random(7)
    k, spec, G = _setup(15, (1,), ("2:1,1",))
    for _ in range(100):
        d = k([rng.randint(-9, 9), rng.randint(-9, 9)])
        s = k([rng.randint(-9, 9), rng.randint(-9, 9)])
        if d.is_zero() or s.is_zero() or d.is_rational() and d.c[0] > 0 and int(d.c[0] ** 0.5) ** 2 == d.c[0]:
            continue
        try:
            L = QuadraticExtension(k, d)
        except InvalidInput:
            continue
        assert embeds_in_algebra(L, spec) == embeds_in_algebra(QuadraticExtension(k, d * s * s), spec)


def test_is_in_kB_examples():
    k, spec, G = _setup(3, (1, 2))
    assert is_in_kB(QuadraticExtension(k, -1), spec, G).chi == (1,)
    assert is_in_kB(QuadraticExtension(k, 5), spec, G) is None  # ramified at 5


@pytest.mark.parametrize("n", [3, 6, 7, 15, 21, 30])
def test_totally_positive_unit_radicand(n):
    from nonselective.classgroups import fundamental_unit

    k = quad(n)
    u = fundamental_unit(k).fundamental_unit
    if u.norm() < 0:
        pytest.skip("no totally positive non-square unit of this shape")
    spec = AlgebraSpec(k, 2, (), (1,))  # parity is not needed for membership
    G = build_GB(k, spec)
    L = QuadraticExtension(k, u)
    chi = is_in_kB(L, spec, G)
    assert (chi is None) == (not L.is_unramified_at_finite_primes())
    if chi is not None:
        # the character was cross-checked against 50 primes; re-check directly
        for P in primes_up_to(k, 150):
            g = G.artin(P)
            want = int(splitting_in_quadratic(L, P) == INERT)
            assert sum(a * b for a, b in zip(chi.chi, g)) % 2 == want


def test_verdicts():
    k, spec, G = _setup(3, (1, 2))
    L = QuadraticExtension(k, -1)
    assert selectivity_verdict(QuadraticOrderSpec.maximal(L), spec, G).selective
    inert = next(P for P in primes_up_to(k, 50) if splitting_in_quadratic(L, P) == INERT)
    v = selectivity_verdict(QuadraticOrderSpec.from_conductor(L, {inert: 1}), spec, G)
    assert not v.selective and v.reasons[-1][0] == "conductor-splits"
    k2, spec2, G2 = _setup(10, (1,), ("31:14,1",))
    v = selectivity_verdict(QuadraticOrderSpec.maximal(QuadraticExtension(k2, -1)), spec2, G2)
    assert v.tag == "NotSelective" and v.reasons[0][0] == "finite-ramification"


def test_ramified_conductor_prime_flagged():
    k, spec, G = _setup(3, (1, 2))
    L = QuadraticExtension(k, -1)
    P3 = prime_above(k, "3")
    v = selectivity_verdict(QuadraticOrderSpec.from_conductor(L, {P3: 1}), spec, G)
    status = splitting_in_quadratic(L, P3)
    assert v.selective == (status == "split")


def test_conductor_from_generator():
    k = quad(3)
    omega = QuadraticOrderSpec.from_generator(k, 0, 4)  # u = 2i
    assert {P.label(): e for P, e in omega.conductor.items()} == {"2:1,1": 4}


def test_selects_and_fraction():
    k, spec, G = _setup(15, (1, 2))
    fr = build_parameter_frame(k, G, embeddable_characters(G, spec), spec)
    seen = 0
    for d in (-1, -3, -5, 5):
        try:
            L = QuadraticExtension(k, d)
        except InvalidInput:
            continue
        v = selectivity_verdict(QuadraticOrderSpec.maximal(L), spec, G)
        if not v.selective:
            continue
        R0 = fr.reference()
        assert selects(v, R0, R0)
        n = sum(selects(v, R0, E) for E in enumerate_orders(fr))
        assert n == 2 ** (fr.t_B - 1)
        inert = next(P for P in primes_up_to(k, 100) if splitting_in_quadratic(L, P) == INERT)
        assert not selects(v, R0, twist_at_prime(R0, inert, 1))
        seen += 1
    assert seen >= 1


def test_sB_tB_values():
    assert compute_sB_tB(_setup(10)[2], _setup(10)[1]) == (1, 1)
    assert compute_sB_tB(_setup(15, (1, 2))[2], _setup(15, (1, 2))[1]) == (2, 2)
    M = CharacterModel.with_ranks(3, 2, 2)
    assert compute_sB_tB(M) == (2, 2)


def test_max_family_bound():
    assert max_family_bound(2, 2, 1) == 2
    assert max_family_bound(2, 4, 4) == 1
    assert max_family_bound(3, 3, 2) == 12
    with pytest.raises(InvalidInput):
        max_family_bound(2, 1, 2)


def test_family_examples():
    M = CharacterModel.with_ranks(2, 3, 1)
    fr = abstract_frame(M, embeddable_characters(M, None))
    fam = build_nonselective_family(fr, anchors=[1])
    assert len(fam) == 4 and all(l.gamma[0] == 1 for l in fam.labels)
    assert check_family_nonselective(fam)
    assert not check_family_nonselective([fr.label([0, 0, 0]), fr.label([1, 0, 0])])
    assert check_family_nonselective([fr.label([0, 1, 1])])
    full = CharacterModel.with_ranks(2, 2, 2)
    assert len(build_nonselective_family(abstract_frame(full, embeddable_characters(full, None)))) == 1


@pytest.mark.parametrize("p, t, s", [(2, 2, 1), (2, 3, 2), (3, 2, 1), (3, 2, 0)])
def test_max_nonselective_size_methods_agree(p, t, s):
    M = CharacterModel.with_ranks(p, t, s)
    fr = abstract_frame(M, embeddable_characters(M, None))
    a = max_nonselective_size(fr, "subsets")
    b = max_nonselective_size(fr, "clique")
    assert a == b == p ** (t - s)


def test_separating_prime():
    k, spec, G = _setup(15, (1, 2))
    fr = build_parameter_frame(k, G, embeddable_characters(G, spec), spec)
    chars = embeddable_characters(G, spec)
    for c1, c2 in combinations(chars, 2):
        for a, b in ((c1, c2), (c2, c1)):
            P = separating_prime(a, b, fr, k)
            g = G.artin(P)
            assert sum(x * y for x, y in zip(a, g)) % 2 == 0
            assert sum(x * y for x, y in zip(b, g)) % 2 == 1
            assert P.norm < 500
    with pytest.raises(InvalidInput):
        separating_prime(chars[0], chars[0], fr, k)


def test_odd_p_split_all_characters():
    k = quad(79)
    spec = AlgebraSpec(k, 3)
    G = build_GB(k, spec)
    t, s = compute_sB_tB(G, spec)
    assert t == s == 1
