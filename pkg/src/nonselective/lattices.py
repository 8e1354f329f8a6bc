"""Type distance of local lattices, order labels and the parameter frame of generator primes.

Maximal orders are labelled by deviation vectors gamma from a reference order: the
label gamma differs from the reference by gamma_i steps at the i-th frame prime, and
its G_B class relative to the reference is sum gamma_i * artin(nu_i).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .errors import InvalidInput, SearchExhausted
from .exact import smith_valuations
from .ideals import PrimeIdeal, primes_up_to
from .linalg import fp_rank, inverse, matmul

__all__ = [
    "LocalLatticePair",
    "type_distance",
    "OrderLabel",
    "ParameterFrame",
    "distance_class",
    "twist_at_prime",
    "build_parameter_frame",
    "enumerate_orders",
    "DEFAULT_SEARCH_START",
    "DEFAULT_SEARCH_CAP",
]

DEFAULT_SEARCH_START = 10**3
DEFAULT_SEARCH_CAP = 10**6


@dataclass(frozen=True)
class LocalLatticePair:
    nu: object
    M1: tuple
    M2: tuple

    def __init__(self, nu, M1, M2):
        object.__setattr__(self, "nu", nu)
        object.__setattr__(self, "M1", tuple(tuple(r) for r in M1))
        object.__setattr__(self, "M2", tuple(tuple(r) for r in M2))


def type_distance(pair: LocalLatticePair, p: int) -> int:
    """Sum of the invariant-factor valuations of M1^-1 M2 at nu, reduced mod p."""
    try:
        T = matmul(inverse(pair.M1), [list(r) for r in pair.M2])
    except InvalidInput:
        raise InvalidInput("type distance needs nonsingular lattice matrices") from None
    return smith_valuations(T, pair.nu).total % p


@dataclass(frozen=True)
class OrderLabel:
    """gamma plus optional extra single-prime deviations (label, j, class)."""

    gamma: tuple[int, ...]
    frame: "ParameterFrame" = field(compare=False, repr=False, hash=False)
    twists: tuple = ()

    def offset(self) -> tuple[int, ...]:
        """G_B class of this order relative to the reference order."""
        fr = self.frame
        out = [0] * fr.t_B
        for g, basis in zip(self.gamma, fr.artin_basis):
            for i, x in enumerate(basis):
                out[i] += g * x
        for _lab, j, cls in self.twists:
            for i, x in enumerate(cls):
                out[i] += j * x
        return tuple(x % fr.p for x in out)

    def __str__(self):
        s = "(" + ",".join(map(str, self.gamma)) + ")"
        for lab, j, _ in self.twists:
            s += f"+{j}@{lab}"
        return s


@dataclass(eq=False)
class ParameterFrame:
    p: int
    t_B: int
    s_B: int
    primes: list  # PrimeIdeal, or None entries in the abstract model
    artin_basis: list[tuple[int, ...]]
    characters: list[tuple[int, ...]]
    fields: list = field(default_factory=list)
    group: object = None
    spec: object = None

    def label(self, gamma: Sequence[int]) -> OrderLabel:
        if len(gamma) != self.t_B:
            raise InvalidInput(f"label needs {self.t_B} coordinates")
        return OrderLabel(tuple(int(g) % self.p for g in gamma), self)

    def reference(self) -> OrderLabel:
        return self.label([0] * self.t_B)


def _check_frame(frame: ParameterFrame, *labels: OrderLabel) -> None:
    for a in labels:
        if a.frame is not frame:
            raise InvalidInput("labels belong to different frames")


def distance_class(frame: ParameterFrame, a: OrderLabel, b: OrderLabel) -> tuple[int, ...]:
    _check_frame(frame, a, b)
    oa, ob = a.offset(), b.offset()
    return tuple((y - x) % frame.p for x, y in zip(oa, ob))


def twist_at_prime(label: OrderLabel, nu: PrimeIdeal, j: int) -> OrderLabel:
    """The order obtained by conjugating with diag(pi^j-pattern) at nu only."""
    fr = label.frame
    if not 1 <= j <= fr.p - 1:
        raise InvalidInput(f"twist exponent must lie in 1..{fr.p - 1}")
    spec = fr.spec
    if spec is not None and nu in set(spec.ramified_finite):
        raise InvalidInput("cannot twist at a prime ramified in B")
    for i, P in enumerate(fr.primes):
        if P is not None and P == nu:
            g = list(label.gamma)
            g[i] = (g[i] + j) % fr.p
            return OrderLabel(tuple(g), fr, label.twists)
    cls = fr.group.artin(nu)
    return OrderLabel(label.gamma, fr, label.twists + ((nu.label(), j, cls),))


def _chi(chi: Sequence[int], g: Sequence[int], p: int) -> int:
    return sum(a * b for a, b in zip(chi, g)) % p


def independent_characters(chars: Sequence[Sequence[int]], p: int) -> list[tuple[int, ...]]:
    """Greedy basis of the span of ``chars``, taken from the list itself in order."""
    out: list[tuple[int, ...]] = []
    for c in chars:
        if fp_rank(out + [list(c)], p) > len(out):
            out.append(tuple(c))
    return out


def _slot_for(g, chosen, chars, s, t, p):
    """Lowest unfilled slot that the class g can fill, or None."""
    vals = [_chi(c, g, p) for c in chars]
    for i in range(s):
        if chosen[i] is None and vals[i] != 0 and all(vals[j] == 0 for j in range(s) if j != i):
            return i
    if any(vals):
        return None
    tail = [list(x) for x in chosen[s:] if x is not None]
    if fp_rank(tail + [list(g)], p) > len(tail):
        for i in range(s, t):
            if chosen[i] is None:
                return i
    return None


def build_parameter_frame(k, G, embeddable=(), spec=None, *, fields=None,
                          start: int = DEFAULT_SEARCH_START, cap: int = DEFAULT_SEARCH_CAP) -> ParameterFrame:
    """Search primes in increasing norm for generators nu_1..nu_t of G_B.

    ``embeddable`` lists characters (vectors) of embeddable degree-p subfields; an
    independent subset of them becomes L_1..L_s. nu_i for i <= s is inert in L_i only;
    nu_i for i > s splits in every L_j.
    """
    p, t = G.p, G.rank
    chars = independent_characters([tuple(c) for c in embeddable], p)
    s = len(chars)
    if fields is not None and len(fields) != len(list(embeddable)):
        raise InvalidInput("one field per embeddable character expected")
    chosen_fields = []
    if fields is not None:
        emb = [tuple(c) for c in embeddable]
        chosen_fields = [fields[emb.index(c)] for c in chars]
    if t == 0:
        return ParameterFrame(p, 0, 0, [], [], [], [], G, spec)
    ram = set(spec.ramified_finite) if spec is not None else set()
    chosen = [None] * t
    primes = [None] * t
    bound = min(start, cap)
    lo = 2
    examined = 0
    while True:
        for P in primes_up_to(k, bound, start=lo):
            if P in ram:
                continue
            examined += 1
            g = G.artin(P)
            i = _slot_for(g, chosen, chars, s, t, p)
            if i is None:
                continue
            chosen[i] = tuple(g)
            primes[i] = P
            if all(c is not None for c in chosen):
                frame = ParameterFrame(p, t, s, primes, chosen, chars, chosen_fields, G, spec)
                _cross_check_fields(frame)
                return frame
        if bound >= cap:
            raise SearchExhausted(
                f"no complete frame among primes of norm <= {cap}",
                {"cap": cap, "primes_examined": examined, "slots_filled": sum(c is not None for c in chosen), "t_B": t},
            )
        lo = bound + 1
        bound = min(2 * bound, cap)


def _cross_check_fields(frame: ParameterFrame) -> None:
    """With explicit L_i, nu_i must be inert in L_i and split in the other L_j."""
    from .extensions import INERT, SPLIT, splitting_in_quadratic

    for j, L in enumerate(frame.fields):
        if L is None:
            continue
        for i, P in enumerate(frame.primes):
            want = INERT if i == j else SPLIT
            got = splitting_in_quadratic(L, P)
            if got != want:
                raise InvalidInput(
                    f"frame prime {P.label()} is {got} in L_{j + 1}, expected {want}; character and field disagree"
                )


def abstract_frame(G, embeddable=(), spec=None) -> ParameterFrame:
    """Frame for a group given only by coordinates: basis classes chosen by linear algebra."""
    p, t = G.p, G.rank
    chars = independent_characters([tuple(c) for c in embeddable], p)
    s = len(chars)
    chosen = [None] * t
    for g in product(range(p), repeat=t):
        if not any(g):
            continue
        i = _slot_for(g, chosen, chars, s, t, p)
        if i is not None:
            chosen[i] = g
        if all(c is not None for c in chosen):
            break
    return ParameterFrame(p, t, s, [None] * t, chosen, chars, [], G, spec)


def enumerate_orders(frame: ParameterFrame) -> list[OrderLabel]:
    return [frame.label(g) for g in product(range(frame.p), repeat=frame.t_B)]
