"""Arithmetic conditions behind isospectral, nonisometric quotients of hyperbolic space.

Nothing geometric is computed; each certificate line records which arithmetic
condition was checked and how it came out.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .classgroups import Fixture, UnitData, build_GB, class_group, fundamental_unit, narrow_class_group
from .errors import InvalidInput, MissingFixture
from .extensions import count_roots_in_field
from .ideals import primes_up_to
from .lattices import abstract_frame, build_parameter_frame, distance_class
from .numberfield import NumberField
from .selectivity import (
    AlgebraSpec,
    NonselectiveFamily,
    build_nonselective_family,
    check_family_nonselective,
    compute_sB_tB,
    embeddable_characters,
    validate_algebra,
)

CERTIFIED = "certified"
NOT_APPLICABLE = "not-applicable"
INCONCLUSIVE = "inconclusive"

# justification tags attached to certificate lines
WHY_NONSELECTIVE = "nonselective pair => equal multiplicities of every reduced trace"
WHY_DIVISION = "division algebra needed for a cocompact arithmetic group"
WHY_INDEFINITE = "an unramified real place gives a nontrivial symmetric space"
WHY_AUT = "trivial Aut(k/Q) and distinct types => no Q-algebra isomorphism"
WHY_PROFILE = "r + s = r1 real places, r2 complex"


def signature_profile(spec: AlgebraSpec) -> tuple[int, int, int]:
    """(ramified real places, unramified real places, complex places) of B over R."""
    if spec.p != 2:
        raise InvalidInput("signature profile is only defined for quaternion algebras (not applicable)")
    k = spec.base
    r = len(spec.ramified_real)
    return r, k.r1 - r, k.r2


def hilbert_eq_narrow(k: NumberField, units: UnitData | None = None, fixture: Fixture | None = None) -> bool:
    """Whether the Hilbert class field equals the narrow class field, i.e. h+ = h."""
    if fixture is not None:
        hp = fixture.h_plus
        if hp is None:
            raise MissingFixture("fixture lacks the narrow class number")
        return hp == fixture.h
    if k.quadratic_data is None:
        raise MissingFixture("class data for this field must come from a fixture")
    if k.r1 == 0:
        return True
    if units is None:
        units = fundamental_unit(k)
    h = class_group(k).h
    hp = narrow_class_group(k, units).order
    if k.is_totally_real:
        assert hp == h * 2**units.m_k
    return hp == h


@dataclass
class SpectralCertificate:
    isospectral: str
    nonisometric: str
    facts: list[tuple[str, str, str]] = field(default_factory=list)
    profile: tuple[int, int, int] | None = None
    pair: tuple[str, str] | None = None

    def render(self) -> str:
        lines = []
        for cond, status, why in self.facts:
            lines.append(f"{cond}: {status}  [{why}]")
        if self.profile is not None:
            r, s, r2 = self.profile
            lines.append(
                f"ambient space: {s} hyperbolic plane(s) x {r2} hyperbolic 3-space(s); compact factors: {r}"
            )
        lines.append("")
        lines += self.machine_lines()
        return "\n".join(lines) + "\n"

    def machine_lines(self) -> list[str]:
        out = [f"isospectral={self.isospectral}", f"nonisometric={self.nonisometric}"]
        if self.profile is not None:
            out.append("profile={},{},{}".format(*self.profile))
        if self.pair is not None:
            out.append(f"pair={self.pair[0]};{self.pair[1]}")
        return out


def vigneras_certificate(spec: AlgebraSpec, family: NonselectiveFamily, pair) -> SpectralCertificate:
    a, b = pair
    if a not in family.labels or b not in family.labels:
        raise InvalidInput("the pair must come from the family")
    facts = []
    if spec.p != 2:
        facts.append(("quaternion algebra", "fail", "only p = 2 has a hyperbolic interpretation"))
        return SpectralCertificate(NOT_APPLICABLE, INCONCLUSIVE, facts, None, (str(a), str(b)))
    profile = signature_profile(spec)
    if not spec.is_division:
        facts.append(("division algebra", "fail", WHY_DIVISION))
        return SpectralCertificate(NOT_APPLICABLE, INCONCLUSIVE, facts, profile, (str(a), str(b)))
    facts.append(("division algebra", "pass", WHY_DIVISION))
    if spec.is_totally_definite:
        facts.append(("not totally definite", "fail", WHY_INDEFINITE))
        return SpectralCertificate(NOT_APPLICABLE, INCONCLUSIVE, facts, profile, (str(a), str(b)))
    facts.append(("not totally definite", "pass", WHY_INDEFINITE))

    # re-check from scratch rather than trusting the family's construction
    fr = family.frame
    ok = check_family_nonselective([a, b], fr.group, spec)
    facts.append(("pair nonselective", "pass" if ok else "fail", WHY_NONSELECTIVE))
    iso = CERTIFIED if ok else NOT_APPLICABLE

    k = spec.base
    autos = count_roots_in_field(k, k.poly)
    distinct = any(distance_class(fr, a, b))
    facts.append(("distinct types", "pass" if distinct else "fail", "distance class is nonzero in G_B"))
    facts.append((f"|Aut(k/Q)| = {autos}", "pass" if autos == 1 else "fail", WHY_AUT))
    noniso = CERTIFIED if autos == 1 and distinct else INCONCLUSIVE
    facts.append(("profile", "info", WHY_PROFILE))
    return SpectralCertificate(iso, noniso, facts, profile, (str(a), str(b)))


@dataclass
class ScanEntry:
    ramified_real: tuple[int, ...]
    ramified_finite: tuple[str, ...]
    t_B: int
    s_B: int
    pair: tuple[str, str] | None
    note: str = ""


@dataclass
class ScanReport:
    hilbert_eq_narrow: bool
    entries: list[ScanEntry]
    declined: str = ""


def _candidate_specs(k: NumberField, max_norm: int, max_finite: int):
    """Even ramification sets with at most ``max_finite`` finite primes of norm <= max_norm."""
    primes = list(primes_up_to(k, max_norm))
    places = list(range(1, k.r1 + 1))
    for nf in range(max_finite + 1):
        for fin in combinations(primes, nf):
            for nr in range(len(places) + 1):
                if (nf + nr) % 2 or nf + nr == 0:
                    continue
                for real in combinations(places, nr):
                    yield AlgebraSpec(k, 2, fin, real)


def division_algebra_isospectral_scan(k: NumberField, units: UnitData | None = None, fixture: Fixture | None = None,
                                      *, candidates=None, max_norm: int = 50, max_finite: int = 2) -> ScanReport:
    """For each candidate ramification set, report a nonselective pair when the type number exceeds 1."""
    hen = hilbert_eq_narrow(k, units, fixture)
    if not hen:
        return ScanReport(False, [], "h+ != h: the Hilbert and narrow class fields differ")
    entries = []
    specs = candidates if candidates is not None else _candidate_specs(k, max_norm, max_finite)
    for spec in specs:
        report = validate_algebra(spec)
        if not report.ok:
            continue
        G = build_GB(k, spec, fixture=fixture)
        t, s = compute_sB_tB(G, spec)
        fin = tuple(P.label() for P in spec.ramified_finite)
        if t == 0:
            entries.append(ScanEntry(spec.ramified_real, fin, 0, s, None, "type number one"))
            continue
        emb = embeddable_characters(G, spec)
        fr = build_parameter_frame(k, G, emb, spec) if G.has_artin else abstract_frame(G, emb, spec)
        fam = build_nonselective_family(fr)
        pair = (str(fam.labels[0]), str(fam.labels[1])) if len(fam) >= 2 else None
        entries.append(ScanEntry(spec.ramified_real, fin, t, s, pair))
    return ScanReport(True, entries)
