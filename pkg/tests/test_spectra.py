import pytest

from nonselective.classgroups import build_GB, load_fixture
from nonselective.errors import InvalidInput
from nonselective.ideals import prime_above
from nonselective.lattices import build_parameter_frame
from nonselective.selectivity import AlgebraSpec, NonselectiveFamily, build_nonselective_family, embeddable_characters
from nonselective.spectra import (
    CERTIFIED,
    INCONCLUSIVE,
    NOT_APPLICABLE,
    division_algebra_isospectral_scan,
    hilbert_eq_narrow,
    signature_profile,
    vigneras_certificate,
)

from conftest import field, quad


def _family(k, spec, fixture=None):
    G = build_GB(k, spec, fixture=fixture)
    chars = embeddable_characters(G, spec)
    fr = build_parameter_frame(k, G, chars, spec)
    return build_nonselective_family(fr)


def test_profiles(ex1):
    assert signature_profile(AlgebraSpec(ex1, 2, (), (1, 2, 3, 4))) == (4, 1, 0)
    assert signature_profile(AlgebraSpec(quad(10), 2)) == (0, 2, 0)
    k = field(-2, 0, 0, 1)
    assert signature_profile(AlgebraSpec(k, 2)) == (0, 1, 1)
    with pytest.raises(InvalidInput):
        signature_profile(AlgebraSpec(quad(10), 3))


def test_hilbert_equals_narrow(data_dir, ex1):
    assert hilbert_eq_narrow(quad(10))
    assert not hilbert_eq_narrow(quad(3))
    assert not hilbert_eq_narrow(ex1, fixture=load_fixture(data_dir / "example_5_1.fixture"))


def test_certificate_example(data_dir, ex1):
    spec = AlgebraSpec(ex1, 2, (), (1, 2, 3, 4))
    fam = _family(ex1, spec, load_fixture(data_dir / "example_5_1.fixture"))
    cert = vigneras_certificate(spec, fam, fam.labels[:2])
    assert (cert.isospectral, cert.nonisometric) == (CERTIFIED, CERTIFIED)
    assert cert.profile == (4, 1, 0)
    assert "isospectral=certified" in cert.render()


def test_certificate_split_algebra():
    k = quad(15)
    spec = AlgebraSpec(k, 2)
    G = build_GB(k, spec)
    fr = build_parameter_frame(k, G, embeddable_characters(G, spec), spec)
    fam = NonselectiveFamily(fr, [fr.label([0]), fr.label([1])], ())
    cert = vigneras_certificate(spec, fam, fam.labels[:2])
    assert cert.isospectral == NOT_APPLICABLE


def test_certificate_quadratic_base_inconclusive():
    k = quad(10)
    spec = AlgebraSpec(k, 2, (prime_above(k, "31:14,1"),), (1,))
    fam = _family(k, spec)
    assert len(fam) == 2
    cert = vigneras_certificate(spec, fam, fam.labels[:2])
    assert cert.isospectral == CERTIFIED
    assert cert.nonisometric == INCONCLUSIVE


def test_certificate_rejects_foreign_pair():
    k = quad(10)
    spec = AlgebraSpec(k, 2, (prime_above(k, "31:14,1"),), (1,))
    fam = _family(k, spec)
    other = _family(k, spec)
    with pytest.raises(InvalidInput):
        vigneras_certificate(spec, fam, (other.labels[0], other.labels[1]))


def test_scan_reports_pairs():
    rep = division_algebra_isospectral_scan(quad(10))
    assert rep.hilbert_eq_narrow
    with_pairs = [e for e in rep.entries if e.t_B >= 1]
    assert with_pairs and all(e.pair is not None and e.s_B == 0 for e in with_pairs)
    assert all(e.pair is None for e in rep.entries if e.t_B == 0)
    assert any(e.ramified_real == () and len(e.ramified_finite) == 2 and e.pair for e in rep.entries)


def test_scan_declines_when_narrow_differs():
    rep = division_algebra_isospectral_scan(quad(3))
    assert not rep.hilbert_eq_narrow and rep.entries == []


def test_profile_sums():
    k = quad(15)
    for real in [(), (1,), (2,), (1, 2)]:
        r, s, r2 = signature_profile(AlgebraSpec(k, 2, (), real))
        assert r + s == k.r1
