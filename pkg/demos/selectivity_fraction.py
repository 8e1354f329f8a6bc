"""
Selectivity in a split quaternion algebra
=========================================

Over Q(sqrt 10) the class number is 2 and M_2(k) has two types of maximal
orders. A quadratic order whose field is the Hilbert class field sits in
exactly one of them; any other order sits in both.
"""

from nonselective.classgroups import build_GB
from nonselective.extensions import QuadraticExtension
from nonselective.exact import IntPolynomial
from nonselective.lattices import build_parameter_frame, enumerate_orders
from nonselective.numberfield import NumberField
from nonselective.selectivity import (
    AlgebraSpec,
    QuadraticOrderSpec,
    compute_sB_tB,
    embeddable_characters,
    selectivity_verdict,
    selects,
)

k = NumberField(IntPolynomial([-10, 0, 1]))
spec = AlgebraSpec(k, 2)
G = build_GB(k, spec)
print("(t_B, s_B) =", compute_sB_tB(G, spec))

frame = build_parameter_frame(k, G, embeddable_characters(G, spec), spec)
labels = enumerate_orders(frame)

for d in (-1, 2, 5, -2, 3):
    L = QuadraticExtension(k, k(d))
    v = selectivity_verdict(QuadraticOrderSpec.maximal(L), spec, G)
    if v.selective:
        hits = sum(selects(v, labels[0], E) for E in labels)
        print(f"L = k(sqrt {d}):  {v.tag}, embeds into {hits}/{len(labels)} types")
    else:
        print(f"L = k(sqrt {d}):  {v.tag}")
    for cond, status, detail in v.reasons:
        print(f"    {cond}: {status}  {detail}")
