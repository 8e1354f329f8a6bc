"""Selectivity of quadratic orders, embeddable characters, and nonselective families."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Sequence

import networkx as nx

from .errors import InvalidInput, MissingFixture, SearchExhausted, Unsupported, ValidationError
from .extensions import INERT, RAMIFIED, SPLIT, QuadraticExtension, splitting_in_quadratic
from .ideals import OkIdeal, PrimeIdeal, factor_prime, primes_up_to, unit_ideal
from .lattices import (
    DEFAULT_SEARCH_CAP,
    DEFAULT_SEARCH_START,
    OrderLabel,
    ParameterFrame,
    distance_class,
)
from .linalg import fp_rank, fp_solve
from .numberfield import NumberField

__all__ = [
    "AlgebraSpec",
    "ValidationReport",
    "validate_algebra",
    "embeds_in_algebra",
    "EmbeddableCharacter",
    "embeddable_characters",
    "is_in_kB",
    "QuadraticOrderSpec",
    "SelectivityVerdict",
    "selectivity_verdict",
    "selects",
    "compute_sB_tB",
    "NonselectiveFamily",
    "build_nonselective_family",
    "max_family_bound",
    "check_family_nonselective",
    "max_nonselective_size",
    "separating_prime",
    "CharacterModel",
]


@dataclass(frozen=True)
class AlgebraSpec:
    base: NumberField
    p: int
    ramified_finite: tuple = ()
    ramified_real: tuple = ()

    def __init__(self, base, p, ramified_finite=(), ramified_real=()):
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "p", int(p))
        object.__setattr__(self, "ramified_finite", tuple(ramified_finite))
        object.__setattr__(self, "ramified_real", tuple(sorted(set(ramified_real))))

    @property
    def is_division(self) -> bool:
        return bool(self.ramified_finite or self.ramified_real)

    @property
    def is_totally_definite(self) -> bool:
        k = self.base
        return k.is_totally_real and len(self.ramified_real) == k.r1 and k.r1 > 0


@dataclass
class ValidationReport:
    ok: bool
    errors: list[tuple[str, str]] = field(default_factory=list)
    facts: dict = field(default_factory=dict)

    def raise_for_errors(self) -> None:
        if self.errors:
            code, msg = self.errors[0]
            err = ValidationError(f"{code}: {msg}")
            err.code = code
            raise err


def validate_algebra(spec: AlgebraSpec, strict: bool = False) -> ValidationReport:
    """Check the standing hypotheses on B; ``strict`` raises on the first violation."""
    errors = []
    k = spec.base
    if spec.p < 2 or any(spec.p % d == 0 for d in range(2, int(spec.p**0.5) + 1)):
        errors.append(("bad-degree", f"{spec.p} is not prime"))
    for v in spec.ramified_real:
        if not isinstance(v, int) or not 1 <= v <= k.r1:
            errors.append(("bad-place", f"{v!r} is not a real place"))
    for P in spec.ramified_finite:
        if not isinstance(P, PrimeIdeal) or P.field != k:
            errors.append(("bad-prime", f"{P!r} is not a prime of the base field"))
    if spec.p == 2:
        if (len(spec.ramified_finite) + len(spec.ramified_real)) % 2:
            errors.append(("parity", "a quaternion algebra is ramified at an even number of places"))
        if spec.is_totally_definite:
            errors.append(("totally-definite", "B is ramified at every real place of a totally real field"))
    elif spec.ramified_finite or spec.ramified_real:
        errors.append(("odd-degree-nonsplit", "for odd p only the split algebra M_p(k) is supported"))
    facts = {
        "split": not spec.is_division,
        "no-selective-orders": bool(spec.ramified_finite),
        "selectivity-possible": not spec.ramified_finite,
    }
    report = ValidationReport(not errors, errors, facts)
    if strict:
        report.raise_for_errors()
    return report


def embeds_in_algebra(L: QuadraticExtension, spec: AlgebraSpec) -> bool:
    """L embeds in B iff no place ramified in B splits in L."""
    if spec.p != 2:
        return True
    k = spec.base
    if any(k.sign_at_place(L.d, v) > 0 for v in spec.ramified_real):
        return False
    return all(splitting_in_quadratic(L, P) != SPLIT for P in spec.ramified_finite)


@dataclass(frozen=True)
class EmbeddableCharacter:
    chi: tuple[int, ...]
    realization: QuadraticExtension | None = field(default=None, compare=False)
    embeddable: bool = True

    def __call__(self, g: Sequence[int], p: int = 2) -> int:
        return sum(a * b for a, b in zip(self.chi, g)) % p


class CharacterModel:
    """An abstract G_B: coordinates only, with a prescribed set of embeddable characters."""

    def __init__(self, p: int, t: int, embeddable: Sequence[Sequence[int]]):
        self.p = p
        self.rank = t
        self.embeddable = [tuple(int(x) % p for x in c) for c in embeddable]
        self.provenance = "model"
        self.info = {}

    @classmethod
    def with_ranks(cls, p: int, t: int, s: int) -> "CharacterModel":
        """Model whose embeddable characters are the nonzero combinations of e_1*, ..., e_s*."""
        if not 0 <= s <= t:
            raise InvalidInput("need 0 <= s <= t")
        chars = []
        for coeffs in product(range(p), repeat=s):
            if any(coeffs):
                chars.append(tuple(coeffs) + (0,) * (t - s))
        return cls(p, t, chars)

    @property
    def t_B(self):
        return self.rank

    @property
    def has_artin(self):
        return False

    def artin(self, P):
        raise MissingFixture("abstract character model has no primes")

    def sign_class(self, v):
        return (0,) * self.rank


def _all_characters(p: int, t: int):
    for c in product(range(p), repeat=t):
        if any(c):
            yield c


def embeddable_characters(G, spec: AlgebraSpec | None) -> list[tuple[int, ...]]:
    """Nonzero characters of G_B whose degree-p subfields embed in B."""
    if isinstance(G, CharacterModel):
        return list(G.embeddable)
    p, t = G.p, G.rank
    if p != 2:
        return list(_all_characters(p, t))
    if spec is not None and spec.ramified_finite:
        return []
    real = spec.ramified_real if spec is not None else ()
    signs = [G.sign_class(v) for v in real]
    out = []
    for c in _all_characters(2, t):
        if all(sum(a * b for a, b in zip(c, s)) % 2 == 1 for s in signs):
            out.append(c)
    return out


def compute_sB_tB(G, spec: AlgebraSpec | None = None) -> tuple[int, int]:
    chars = embeddable_characters(G, spec)
    return G.rank, fp_rank([list(c) for c in chars], G.p) if chars else 0


def _character_of(L: QuadraticExtension, G, spec: AlgebraSpec, n_check: int = 50) -> tuple[int, ...]:
    """Solve for chi with chi(artin(P)) = [P inert in L] and chi(sign_class(v)) = [d < 0 at v]."""
    k = spec.base
    t = G.rank
    rows, rhs = [], []
    for v in spec.ramified_real:
        rows.append(list(G.sign_class(v)))
        rhs.append(int(k.sign_at_place(L.d, v) < 0))
    checks = []
    if G.has_artin and t:
        bound = 200
        ram = set(spec.ramified_finite)
        while fp_rank(rows, 2) < t or len(checks) < n_check:
            for P in primes_up_to(k, bound, start=bound // 2 + 1 if bound > 200 else 2):
                if P in ram:
                    continue
                s = splitting_in_quadratic(L, P)
                if s == RAMIFIED:
                    continue
                g = list(G.artin(P))
                if fp_rank(rows, 2) < t:
                    rows.append(g)
                    rhs.append(int(s == INERT))
                else:
                    checks.append((g, int(s == INERT)))
                if fp_rank(rows, 2) >= t and len(checks) >= n_check:
                    break
            bound *= 2
            if bound > DEFAULT_SEARCH_CAP:
                break
    if t and fp_rank(rows, 2) < t:
        raise MissingFixture("not enough Artin data to determine the character of L")
    chi = fp_solve(rows, rhs, 2) if t else []
    if chi is None:
        raise InvalidInput("splitting data of L is inconsistent with G_B; L is not inside k_B")
    for g, y in checks:
        if sum(a * b for a, b in zip(chi, g)) % 2 != y:
            raise InvalidInput("character of L fails cross-validation on test primes")
    return tuple(chi)


def is_in_kB(L: QuadraticExtension, spec: AlgebraSpec, G) -> EmbeddableCharacter | None:
    """The character of G_B cut out by L when L lies in k_B, else None."""
    if spec.p != 2:
        raise Unsupported("quadratic subfields of k_B only arise for p = 2")
    k = spec.base
    if not L.is_unramified_at_finite_primes():
        return None
    for v in range(1, k.r1 + 1):
        if v not in spec.ramified_real and k.sign_at_place(L.d, v) < 0:
            return None
    for P in spec.ramified_finite:
        if splitting_in_quadratic(L, P) != SPLIT:
            return None
    chi = _character_of(L, G, spec)
    if not any(chi):
        return None
    return EmbeddableCharacter(chi, L, embeds_in_algebra(L, spec))


@dataclass
class QuadraticOrderSpec:
    """An order Omega of L given by its conductor (prime -> exponent) over O_k."""

    L: QuadraticExtension
    conductor: dict = field(default_factory=dict)

    @classmethod
    def maximal(cls, L: QuadraticExtension) -> "QuadraticOrderSpec":
        return cls(L, {})

    @classmethod
    def from_conductor(cls, L: QuadraticExtension, conductor) -> "QuadraticOrderSpec":
        if isinstance(conductor, OkIdeal):
            conductor = _factor_ideal(conductor)
        elif isinstance(conductor, PrimeIdeal):
            conductor = {conductor: 1}
        if any(e < 0 for e in conductor.values()):
            raise InvalidInput("conductor must be integral")
        return cls(L, {P: e for P, e in conductor.items() if e})

    @classmethod
    def from_generator(cls, k: NumberField, b, c) -> "QuadraticOrderSpec":
        """Omega = O_k[u] with u a root of x^2 - b x + c, b and c integral."""
        b, c = k(b), k(c)
        for x in (b, c):
            if any(y.denominator != 1 for y in x.coordinates):
                raise InvalidInput("generator must be integral over O_k")
        L = QuadraticExtension(k, b=b, c=c)
        disc = L.d
        dL = L.discriminant_exponents()
        from .extensions import _candidate_rational_primes

        cond = {}
        for q in _candidate_rational_primes(disc):
            for P in factor_prime(k, q):
                two_f = P.valuation(disc) - dL.get(P, 0)
                if two_f < 0 or two_f % 2:
                    raise Unsupported(f"cannot derive the conductor at {P.label()}")
                if two_f:
                    cond[P] = two_f // 2
        return cls(L, cond)

    def conductor_ideal(self) -> OkIdeal:
        out = unit_ideal(self.L.base)
        for P, e in self.conductor.items():
            out = out * P.ideal**e
        return out

    @property
    def conductor_primes(self) -> list[PrimeIdeal]:
        return sorted(self.conductor, key=lambda P: P.sort_key)


def _factor_ideal(I: OkIdeal) -> dict:
    import sympy

    out = {}
    if I.norm == 1:
        return out
    for q in sympy.factorint(I.norm):
        for P in factor_prime(I.field, q):
            e = 0
            J = P.ideal
            while all(x in J for x in I.basis_elements()):
                e += 1
                J = J * P.ideal
            if e:
                out[P] = e
    return out


@dataclass
class SelectivityVerdict:
    tag: str  # "Selective" | "NotSelective"
    chi_L: EmbeddableCharacter | None
    reasons: list[tuple[str, str, str]]  # (condition, status, detail)
    p: int = 2

    @property
    def selective(self) -> bool:
        return self.tag == "Selective"


def selectivity_verdict(omega: QuadraticOrderSpec, spec: AlgebraSpec, G) -> SelectivityVerdict:
    """Omega is selective iff L lies in k_B and every prime dividing its conductor splits in L."""
    reasons = []
    L = omega.L
    if spec.p != 2:
        raise Unsupported("quadratic orders are only meaningful for quaternion algebras")
    if spec.ramified_finite:
        reasons.append(("finite-ramification", "fail", "B is ramified at a finite prime; B has no selective orders"))
        return SelectivityVerdict("NotSelective", None, reasons)
    if not embeds_in_algebra(L, spec):
        reasons.append(("embeds", "fail", "L does not embed in B"))
        return SelectivityVerdict("NotSelective", None, reasons)
    reasons.append(("embeds", "pass", "every place ramified in B is non-split in L"))
    chi = is_in_kB(L, spec, G)
    if chi is None:
        reasons.append(("L-in-kB", "fail", "L is not contained in k_B"))
        return SelectivityVerdict("NotSelective", None, reasons)
    reasons.append(("L-in-kB", "pass", "L is unramified outside B's real ramification, character " + str(chi.chi)))
    ok = True
    for P in omega.conductor_primes:
        s = splitting_in_quadratic(L, P)
        if s != SPLIT:
            ok = False
            note = " (ramified in L; treated as not split)" if s == RAMIFIED else ""
            reasons.append(("conductor-splits", "fail", f"{P.label()} divides the conductor and is {s}{note}"))
    if ok:
        reasons.append(("conductor-splits", "pass", "every prime dividing the conductor splits in L"))
        return SelectivityVerdict("Selective", chi, reasons)
    return SelectivityVerdict("NotSelective", None, reasons)


def selects(verdict: SelectivityVerdict, R0: OrderLabel, E: OrderLabel) -> bool:
    if not verdict.selective:
        raise InvalidInput("selects needs a Selective verdict")
    fr = R0.frame
    d = distance_class(fr, R0, E)
    return verdict.chi_L(d, fr.p) == 0


# --- families ---

@dataclass
class NonselectiveFamily:
    frame: ParameterFrame
    labels: list[OrderLabel]
    anchors: tuple[int, ...]

    def __len__(self):
        return len(self.labels)


def build_nonselective_family(frame: ParameterFrame, anchors: Sequence[int] | None = None) -> NonselectiveFamily:
    s, t, p = frame.s_B, frame.t_B, frame.p
    anchors = tuple(anchors) if anchors is not None else (0,) * s
    if len(anchors) != s:
        raise InvalidInput(f"need {s} anchors, got {len(anchors)}")
    anchors = tuple(int(a) % p for a in anchors)
    labels = [frame.label(anchors + tail) for tail in product(range(p), repeat=t - s)]
    fam = NonselectiveFamily(frame, labels, anchors)
    if not check_family_nonselective(fam, frame.group, frame.spec):
        raise RuntimeError("constructed family failed the nonselectivity check")
    return fam


def max_family_bound(p: int, t_B: int, s_B: int) -> int:
    if not 0 <= s_B <= t_B:
        raise InvalidInput("need 0 <= s_B <= t_B")
    return (p - 1) ** s_B * p ** (t_B - s_B)


def _pair_ok(chars, d, p) -> bool:
    return all(sum(a * b for a, b in zip(c, d)) % p == 0 for c in chars)


def check_family_nonselective(family, G=None, spec=None) -> bool:
    """Every embeddable character is trivial on every pairwise distance class."""
    labels = family.labels if isinstance(family, NonselectiveFamily) else list(family)
    if not labels:
        return True
    fr = labels[0].frame
    G = G if G is not None else fr.group
    spec = spec if spec is not None else fr.spec
    chars = embeddable_characters(G, spec)
    for a, b in combinations(labels, 2):
        if not _pair_ok(chars, distance_class(fr, a, b), fr.p):
            return False
    return True


def max_nonselective_size(frame: ParameterFrame, method: str = "auto") -> int:
    """Largest nonselective set of labels, by literal subset enumeration or clique search."""
    labels = [frame.label(g) for g in product(range(frame.p), repeat=frame.t_B)]
    chars = embeddable_characters(frame.group, frame.spec)
    n = len(labels)
    if method == "auto":
        method = "subsets" if n <= 16 else "clique"
    ok = [[_pair_ok(chars, distance_class(frame, a, b), frame.p) for b in labels] for a in labels]
    if method == "subsets":
        best = 1
        for mask in range(1, 1 << n):
            size = bin(mask).count("1")
            if size <= best:
                continue
            members = [i for i in range(n) if mask >> i & 1]
            if all(ok[i][j] for x, i in enumerate(members) for j in members[x + 1:]):
                best = size
        return best
    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from((i, j) for i in range(n) for j in range(i + 1, n) if ok[i][j])
    clique, _ = nx.max_weight_clique(graph, weight=None)
    return len(clique)


def separating_prime(chi1, chi2, frame: ParameterFrame, k: NumberField | None = None,
                     cap: int = DEFAULT_SEARCH_CAP) -> PrimeIdeal:
    """A prime splitting in the field of chi1 but not in that of chi2."""
    c1 = tuple(chi1.chi if isinstance(chi1, EmbeddableCharacter) else chi1)
    c2 = tuple(chi2.chi if isinstance(chi2, EmbeddableCharacter) else chi2)
    p = frame.p
    if fp_rank([list(c1), list(c2)], p) < 2:
        raise InvalidInput("characters cut out the same field")

    def good(g):
        return sum(a * b for a, b in zip(c1, g)) % p == 0 and sum(a * b for a, b in zip(c2, g)) % p != 0

    for P, g in zip(frame.primes, frame.artin_basis):
        if P is not None and good(g):
            return P
    if k is None:
        raise InvalidInput("no frame prime separates the characters; give the field to search")
    ram = set(frame.spec.ramified_finite) if frame.spec is not None else set()
    bound, lo = DEFAULT_SEARCH_START, 2
    while True:
        for P in primes_up_to(k, bound, start=lo):
            if P not in ram and good(frame.group.artin(P)):
                return P
        if bound >= cap:
            raise SearchExhausted(f"no separating prime of norm <= {cap}", {"cap": cap})
        lo, bound = bound + 1, min(2 * bound, cap)
