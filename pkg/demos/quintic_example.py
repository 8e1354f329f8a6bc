"""
Nonselective maximal orders over a quintic field
================================================

Runs the first bundled quintic example end to end: class data from the
fixture, the group G_B, a parameter frame, a nonselective family and the
arithmetic certificate for the resulting pair.
"""

from nonselective import AlgebraSpec, build_GB, load_fixture
from nonselective.exact import IntPolynomial
from nonselective.lattices import build_parameter_frame, enumerate_orders
from nonselective.numberfield import NumberField
from nonselective.paper_examples import EXAMPLE_5_1, data_dir
from nonselective.selectivity import (
    build_nonselective_family,
    compute_sB_tB,
    embeddable_characters,
    max_family_bound,
    max_nonselective_size,
)
from nonselective.spectra import vigneras_certificate

k = NumberField(IntPolynomial(list(EXAMPLE_5_1.field)))
print("disc k =", k.discriminant, " signature", (k.r1, k.r2))

# the fixture carries h, h+ and the ray class group modulo the four real places
fx = load_fixture(data_dir() / "example_5_1.fixture")
fx.validate(k)

# quaternion algebra ramified at real places 1..4 and nowhere else
spec = AlgebraSpec(k, 2, (), (1, 2, 3, 4))
G = build_GB(k, spec, fixture=fx)
t, s = compute_sB_tB(G, spec)
print("t_B =", t, " s_B =", s)

emb = embeddable_characters(G, spec)
frame = build_parameter_frame(k, G, emb, spec)
print("frame primes:", ", ".join(P.label() for P in frame.primes))
print("all labels:", " ".join(str(e) for e in enumerate_orders(frame)))

fam = build_nonselective_family(frame)
print("family:", " ".join(str(e) for e in fam.labels))
print("bound (p-1)^s p^(t-s) =", max_family_bound(2, t, s), " exhaustive max =", max_nonselective_size(frame))

cert = vigneras_certificate(spec, fam, fam.labels[:2])
print()
print(cert.render())
