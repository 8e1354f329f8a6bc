"""
Class numbers of real quadratic fields, two ways
================================================

Class groups from reduced ideals and the narrow class group as a ray class
group modulo both real places, compared against counting reduced forms.
"""

from nonselective.classgroups import class_group, fundamental_unit, narrow_class_group
from nonselective.exact import IntPolynomial
from nonselective.numberfield import NumberField
from nonselective.quadratic import form_class_numbers, is_fundamental_discriminant


def field_of(D):
    # Z[(1+sqrt D)/2] when D = 1 mod 4, else Z[sqrt(D/4)]
    return NumberField(IntPolynomial([-D, 0, 1] if D % 4 == 1 else [-(D // 4), 0, 1]))


print(f"{'D':>5} {'h':>3} {'h+':>3} {'forms':>7}  unit")
for D in range(5, 120):
    if not is_fundamental_discriminant(D):
        continue
    k = field_of(D)
    u = fundamental_unit(k)
    h = class_group(k).h
    hp = narrow_class_group(k, u).order
    print(f"{D:>5} {h:>3} {hp:>3} {str(form_class_numbers(D)):>7}  {u.fundamental_unit}")
