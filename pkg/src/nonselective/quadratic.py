"""Quadratic fields: reduced ideals, fundamental units and ray class groups mod real places.

An ideal [a, (-b + sqrt D)/2] with a > 0 and 4a | b^2 - D is written as the pair (a, b).
Reduction steps multiply the ideal by an explicit field element, and the signs of
those elements are tracked so that narrow and ray classes come out exactly.
"""
from __future__ import annotations

from collections import deque
from math import isqrt, pi, sqrt
from typing import NamedTuple, Sequence

from .errors import InvalidInput, Unsupported
from .ideals import OkIdeal, PrimeIdeal, primes_up_to
from .linalg import FpQuotient, smith_form
from .numberfield import FieldElement, NumberField

__all__ = [
    "QIdeal",
    "QuadraticInfrastructure",
    "RayClassGroup",
    "form_class_numbers",
    "is_fundamental_discriminant",
]


class QIdeal(NamedTuple):
    a: int
    b: int


def is_fundamental_discriminant(D: int) -> bool:
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return _squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def _squarefree(n: int) -> bool:
    n = abs(n)
    f = 2
    while f * f <= n:
        if n % (f * f) == 0:
            return False
        f += 1
    return True


class QuadraticInfrastructure:
    def __init__(self, k: NumberField):
        if k.quadratic_data is None:
            raise Unsupported("quadratic infrastructure needs a quadratic field")
        self.k = k
        self.D, self.delta = k.quadratic_data
        self.real = self.D > 0
        self.s = isqrt(self.D) if self.real else 0
        self.sqrtD = k.gen * 2 - self.delta
        # sign of sqrt(D) at each real place
        self.root_signs = tuple(k.sign_at_place(self.sqrtD, i) for i in range(1, k.r1 + 1))

    # -- conversions --

    def element(self, x, y, den=1) -> FieldElement:
        """(x + y sqrt D) / den."""
        return (self.sqrtD * y + x) / den

    def from_okideal(self, I: OkIdeal) -> tuple[QIdeal, int]:
        """(J, m) with I = m J and J primitive."""
        (h00, h01), (_, h11) = I.hnf
        if h00 % h11 or h01 % h11:
            raise InvalidInput("not an ideal of the maximal order")
        a, c = h00 // h11, h01 // h11
        b = -(2 * c + self.delta)
        return QIdeal(a, b), h11

    def to_okideal(self, J: QIdeal) -> OkIdeal:
        a, b = J
        # (-b + sqrt D)/2 = (-b - delta)/2 + omega
        return OkIdeal(self.k, [[a, (-b - self.delta) // 2 % a], [0, 1]])

    def of_prime(self, P: PrimeIdeal) -> tuple[QIdeal, int]:
        return self.from_okideal(P.ideal)

    def unit(self) -> QIdeal:
        return QIdeal(1, -self.delta)

    def multiply(self, J1: QIdeal, J2: QIdeal) -> tuple[QIdeal, int]:
        return self.from_okideal(self.to_okideal(J1) * self.to_okideal(J2))

    # -- reduction --

    def _lambda_bits(self, a: int, b: int) -> tuple[int, ...]:
        """Sign bits (1 = negative) of (-b - sqrt D)/(2a) at the real places."""
        bits = []
        for r in self.root_signs:
            if r > 0:
                positive = b < 0 and b * b > self.D
            else:
                positive = b < 0 or b * b < self.D
            bits.append(0 if positive else 1)
        return tuple(bits)

    def is_reduced(self, J: QIdeal) -> bool:
        a, b = J
        if self.real:
            s = self.s
            return 0 < b <= s and 2 * a + b >= s + 1 and 2 * a - b <= s
        c = (b * b - self.D) // (4 * a)
        return -a < b <= a <= c and not (a == c and b < 0)

    def rho(self, J: QIdeal) -> tuple[QIdeal, tuple[int, ...]]:
        """One reduction step J -> lambda J with lambda = (-b - sqrt D)/(2a)."""
        a, b = J
        c = (b * b - self.D) // (4 * a)
        a2 = abs(c)
        bits = self._lambda_bits(a, b)
        if self.real:
            if a2 > self.s:
                b2 = (-b) % (2 * a2)
                if b2 > a2:
                    b2 -= 2 * a2
            else:
                b2 = self.s - ((self.s + b) % (2 * a2))
        else:
            b2 = (-b) % (2 * a2)
            if b2 > a2:
                b2 -= 2 * a2
        return QIdeal(a2, b2), bits

    def lam(self, J: QIdeal) -> FieldElement:
        a, b = J
        return self.element(-b, -1, 2 * a)

    def _normalize_imaginary(self, J: QIdeal) -> QIdeal:
        a, b = J
        b2 = b % (2 * a)
        if b2 > a:
            b2 -= 2 * a
        return QIdeal(a, b2)

    def reduce(self, J: QIdeal) -> tuple[QIdeal, tuple[int, ...]]:
        """(J_red, bits) with J_red = mu J and bits the signs of mu."""
        bits = (0,) * len(self.root_signs)
        if not self.real:
            J = self._normalize_imaginary(J)
            while not self.is_reduced(J):
                J, _ = self.rho(J)
            return J, bits
        steps = 0
        while not self.is_reduced(J):
            J, lb = self.rho(J)
            bits = tuple(x ^ y for x, y in zip(bits, lb))
            steps += 1
            if steps > 10 * (self.D + 10):
                raise RuntimeError("reduction did not terminate")
        return J, bits

    def cycle(self, J: QIdeal) -> list[tuple[QIdeal, tuple[int, ...]]]:
        """Reduced ideals of the cycle through reduced J, with signs of the multipliers."""
        out = [(J, (0,) * len(self.root_signs))]
        if not self.real:
            return out
        cur, bits = J, out[0][1]
        while True:
            cur, lb = self.rho(cur)
            bits = tuple(x ^ y for x, y in zip(bits, lb))
            if cur == J:
                self._period_bits = bits
                return out
            out.append((cur, bits))

    def canonical(self, J: QIdeal) -> tuple[QIdeal, tuple[int, ...]]:
        """Smallest (a, b) equivalent to J, with signs of the multiplier from J."""
        Jr, bits = self.reduce(J)
        if not self.real:
            return Jr, bits
        cyc = self.cycle(Jr)
        best, cb = min(cyc, key=lambda t: t[0])
        return best, tuple(x ^ y for x, y in zip(bits, cb))

    def fundamental_unit(self) -> FieldElement:
        if not self.real:
            raise Unsupported("imaginary quadratic fields have no fundamental unit of infinite order")
        J, _ = self.reduce(self.unit())
        eps = self.k.one()
        cur = J
        while True:
            eps = eps * self.lam(cur)
            cur, _ = self.rho(cur)
            if cur == J:
                break
        k = self.k
        if k.sign_at_place(eps, 2) < 0:
            eps = -eps
        if k.sign_at_place(eps - 1, 2) < 0:
            eps = eps.inverse()
        return eps

    def minkowski_bound(self) -> int:
        if self.real:
            return int(sqrt(self.D) / 2) + 1
        return int(2 / pi * sqrt(-self.D)) + 1


class RayClassGroup:
    """Cl_S for S a set of real places (S empty gives the class group).

    Elements are enumerated by closure from the primes below the Minkowski bound and
    the sign classes; relations are the edges of that closure.
    """

    def __init__(self, k: NumberField, modulus: Sequence[int] = (), unit: FieldElement | None = None):
        self.infra = Q = QuadraticInfrastructure(k)
        self.k = k
        self.modulus = tuple(sorted(set(modulus)))
        for v in self.modulus:
            k._check_place(v)
        self._pos = {v: i for i, v in enumerate(self.modulus)}
        if Q.real:
            unit = unit if unit is not None else Q.fundamental_unit()
            rows = [[1] * len(self.modulus), [int(k.sign_at_place(unit, v) < 0) for v in self.modulus]]
        else:
            rows = []
        self.unit = unit
        self._signs = FpQuotient(2, len(self.modulus), rows)
        bound = Q.minkowski_bound()
        self.primes = [P for P in primes_up_to(k, bound) if P.norm <= bound]
        self._build()

    # -- element keys --

    def _restrict(self, bits: Sequence[int]) -> tuple[int, ...]:
        return tuple(bits[v - 1] for v in self.modulus)

    def _key(self, J: QIdeal, raw: Sequence[int]) -> tuple:
        return (J.a, J.b) + self._signs.project(raw)

    def _normal(self, J: QIdeal, raw: Sequence[int]) -> tuple[QIdeal, tuple[int, ...]]:
        J0, bits = self.infra.canonical(J)
        raw = tuple((x + y) % 2 for x, y in zip(raw, self._restrict(bits)))
        return J0, raw

    def _mul_prime(self, J: QIdeal, raw, P: PrimeIdeal):
        J3, _m = self.infra.multiply(J, self.infra.of_prime(P)[0])
        return self._normal(J3, raw)

    def _build(self):
        Q = self.infra
        ns = len(self.modulus)
        gens = [("prime", P) for P in self.primes] + [("sign", v) for v in self.modulus]
        self.generators = gens
        ng = len(gens)
        start = self._normal(Q.unit(), (0,) * ns)
        key0 = self._key(*start)
        elems = {key0: (start, [0] * ng)}
        order = [key0]
        relations = []
        queue = deque([key0])
        while queue:
            key = queue.popleft()
            (J, raw), vec = elems[key]
            for gi, (kind, g) in enumerate(gens):
                if kind == "prime":
                    J2, raw2 = self._mul_prime(J, raw, g)
                else:
                    raw2 = list(raw)
                    raw2[self._pos[g]] ^= 1
                    J2, raw2 = J, tuple(raw2)
                key2 = self._key(J2, raw2)
                step = list(vec)
                step[gi] += 1
                if key2 not in elems:
                    elems[key2] = ((J2, raw2), step)
                    order.append(key2)
                    queue.append(key2)
                else:
                    rel = [x - y for x, y in zip(step, elems[key2][1])]
                    if any(rel):
                        relations.append(rel)
        self._elems = elems
        self._order = order
        diag, V = smith_form(relations, ng) if ng else ([], [])
        if any(d == 0 for d in diag):
            raise RuntimeError("relation lattice is not of full rank")
        self._keep = [i for i, d in enumerate(diag) if d != 1]
        self.elementary_divisors = [diag[i] for i in self._keep]
        self._V = V

    @property
    def order(self) -> int:
        out = 1
        for d in self.elementary_divisors:
            out *= d
        return out

    def __len__(self):
        return len(self._order)

    def _dlog_key(self, key) -> tuple[int, ...]:
        vec = self._elems[key][1]
        ng = len(vec)
        return tuple(
            sum(vec[r] * self._V[r][i] for r in range(ng)) % d
            for i, d in zip(self._keep, self.elementary_divisors)
        )

    def class_of(self, ideal, twist: Sequence[int] = ()) -> tuple:
        """Element key of an ideal, optionally times sign classes at the places in ``twist``."""
        Q = self.infra
        if isinstance(ideal, PrimeIdeal):
            ideal = ideal.ideal
        if isinstance(ideal, FieldElement):
            ideal = OkIdeal.from_generators(self.k, [ideal])
        if isinstance(ideal, OkIdeal):
            J, _m = Q.from_okideal(ideal)
        else:
            J = QIdeal(*ideal)
        raw = [0] * len(self.modulus)
        for v in twist:
            if v in self._pos:
                raw[self._pos[v]] ^= 1
        return self._key(*self._normal(J, tuple(raw)))

    def dlog(self, ideal, twist: Sequence[int] = ()) -> tuple[int, ...]:
        return self._dlog_key(self.class_of(ideal, twist))

    def sign_class(self, place: int) -> tuple[int, ...]:
        """Class of the idele that is -1 at ``place`` and 1 elsewhere."""
        if place not in self._pos:
            return (0,) * len(self.elementary_divisors)
        return self.dlog(self.infra.unit(), twist=(place,))

    def principal_dlog(self, alpha: FieldElement) -> tuple[int, ...]:
        """dlog of the principal ideal (alpha); zero exactly when alpha is positive on S up to units."""
        return self.dlog(alpha)


# --- independent oracle: cycles of reduced indefinite binary quadratic forms ---

def form_class_numbers(D: int) -> tuple[int, int]:
    """(h, h_plus) for the real quadratic field of discriminant D > 0, via forms.

    Counts proper classes of primitive forms of discriminant D as cycles of reduced
    forms; h = h_plus when (-1, b, c) lies in the principal cycle, else h_plus / 2.
    """
    if D <= 0 or isqrt(D) ** 2 == D:
        raise InvalidInput("need a positive non-square discriminant")
    s = isqrt(D)
    forms = []
    for b in range(1, s + 1):
        if (b - D) % 2:
            continue
        N = (b * b - D) // 4
        for a_abs in range(1, abs(N) + 1):
            if N % a_abs:
                continue
            if not (2 * a_abs + b >= s + 1 and 2 * a_abs - b <= s):
                continue
            for a in (a_abs, -a_abs):
                c = N // a
                if _gcd3(a, b, c) == 1:
                    forms.append((a, b, c))
    forms_set = set(forms)

    def step(f):
        a, b, c = f
        m = 2 * abs(c)
        b2 = s - ((s + b) % m)
        if b2 <= s - m:
            b2 += m
        a2 = c
        c2 = (b2 * b2 - D) // (4 * a2)
        return (a2, b2, c2)

    seen = set()
    cycles = []
    for f in sorted(forms_set):
        if f in seen:
            continue
        cyc = []
        g = f
        while g not in seen:
            seen.add(g)
            cyc.append(g)
            g = step(g)
            if g not in forms_set:
                raise RuntimeError(f"reduction left the reduced set at {g}")
        cycles.append(cyc)
    h_plus = len(cycles)
    principal = next(c for c in cycles if any(f[0] == 1 for f in c))
    h = h_plus if any(f[0] == -1 for f in principal) else h_plus // 2
    return h, h_plus


def _gcd3(a, b, c) -> int:
    from math import gcd

    return gcd(gcd(abs(a), abs(b)), abs(c))
