"""Units, class groups, ray class groups mod real places, fixtures, and the group G_B."""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from pathlib import Path
from typing import Callable, Mapping, Sequence

from . import textformat
from .errors import FixtureError, MissingFixture, Unsupported
from .extensions import INERT, RAMIFIED, QuadraticExtension, is_square_in_field
from .ideals import OkIdeal, PrimeIdeal
from .linalg import FpQuotient, fp_rank
from .numberfield import FieldElement, NumberField
from .quadratic import QuadraticInfrastructure, RayClassGroup

__all__ = [
    "UnitData",
    "ClassGroupData",
    "NarrowClassData",
    "Fixture",
    "GBGroup",
    "fundamental_unit",
    "class_group",
    "narrow_class_group",
    "build_GB",
    "artin_class",
    "load_fixture",
]


@dataclass(frozen=True)
class UnitData:
    fundamental_unit: FieldElement | None
    unit_norm: int
    signature_matrix: tuple[tuple[int, ...], ...]
    provenance: str = "computed"

    def signature_rank(self, places: Sequence[int] | None = None) -> int:
        cols = range(len(self.signature_matrix[0])) if places is None else [v - 1 for v in places]
        rows = [[int(r[c] < 0) for c in cols] for r in self.signature_matrix]
        return fp_rank(rows, 2)

    @property
    def m_k(self) -> int:
        """log_2 of [totally positive units : squares of units]."""
        return len(self.signature_matrix[0]) - self.signature_rank()


def _quadratic_only(k: NumberField, what: str) -> None:
    if k.quadratic_data is None:
        raise Unsupported(f"{what} is computed only for quadratic fields; supply a fixture")


def fundamental_unit(k: NumberField) -> UnitData:
    _quadratic_only(k, "the fundamental unit")
    if k.r1 != 2:
        raise Unsupported("imaginary quadratic fields have no fundamental unit")
    eps = QuadraticInfrastructure(k).fundamental_unit()
    rows = ((-1, -1), tuple(k.sign_at_place(eps, i) for i in (1, 2)))
    return UnitData(eps, int(eps.norm()), rows)


@dataclass
class ClassGroupData:
    elementary_divisors: list[int]
    generators: list[OkIdeal]
    dlog: Callable
    provenance: str = "computed"

    @property
    def h(self) -> int:
        out = 1
        for d in self.elementary_divisors:
            out *= d
        return out


@dataclass
class NarrowClassData:
    modulus: tuple[int, ...]
    elementary_divisors: list[int]
    h: int
    dlog: Callable | None = None
    infinite_sign_classes: dict = field(default_factory=dict)
    provenance: str = "computed"

    @property
    def order(self) -> int:
        out = 1
        for d in self.elementary_divisors:
            out *= d
        return out


@lru_cache(maxsize=64)
def _ray(k: NumberField, modulus: tuple[int, ...]) -> RayClassGroup:
    return RayClassGroup(k, modulus)


def class_group(k: NumberField) -> ClassGroupData:
    _quadratic_only(k, "the class group")
    G = _ray(k, ())
    gens = [P.ideal for kind, P in G.generators if kind == "prime"]
    return ClassGroupData(list(G.elementary_divisors), gens, G.dlog)


def narrow_class_group(k: NumberField, units: UnitData | None = None, modulus=None, fixture=None) -> NarrowClassData:
    modulus = tuple(sorted(range(1, k.r1 + 1) if modulus is None else set(modulus)))
    if fixture is not None:
        divs = fixture.divisors_for(modulus, k.r1)
        return NarrowClassData(modulus, divs, fixture.h, None, {}, "fixture")
    _quadratic_only(k, "the narrow class group")
    G = _ray(k, modulus)
    h = _ray(k, ()).order
    signs = {v: G.sign_class(v) for v in modulus}
    return NarrowClassData(modulus, list(G.elementary_divisors), h, G.dlog, signs)


# --- fixtures ---

def _p_rank(divisors: Sequence[int], p: int) -> int:
    return sum(1 for d in divisors if d % p == 0)


def _order(divisors: Sequence[int]) -> int:
    out = 1
    for d in divisors:
        out *= d
    return out


@dataclass
class Fixture:
    """Published class data for a field where it is not computed here."""

    h: int
    divisors: dict[tuple[int, ...], list[int]]
    source: str = ""
    field_coeffs: list[int] | None = None
    kb_radicands: list[list] = field(default_factory=list)
    artin: dict[str, tuple[int, ...]] = field(default_factory=dict)
    sign_classes: dict[int, tuple[int, ...]] = field(default_factory=dict)
    unit_signatures: list[list[int]] = field(default_factory=list)
    path: str | None = None

    @classmethod
    def from_mapping(cls, data: Mapping, path: str | None = None) -> "Fixture":
        if "h" not in data:
            raise FixtureError(f"{path or 'fixture'}: missing key 'h'")
        divisors: dict = {}
        artin = {}
        signs = {}
        for key, value in data.items():
            if key == "narrow":
                divisors["narrow"] = [int(x) for x in value]
            elif key == "wide":
                divisors[()] = [int(x) for x in value]
            elif key.startswith("ray."):
                places = tuple(sorted(int(x) for x in key[4:].split(".") if x))
                divisors[places] = [int(x) for x in value]
            elif key.startswith("artin."):
                artin[key[6:]] = tuple(int(x) for x in value)
            elif key.startswith("sign_class."):
                signs[int(key[11:])] = tuple(int(x) for x in value)
        return cls(
            h=int(data["h"]),
            divisors=divisors,
            source=str(data.get("source", "")),
            field_coeffs=list(data["field"]) if "field" in data else None,
            kb_radicands=[list(r) for r in data.get("kb_radicands", [])],
            artin=artin,
            sign_classes=signs,
            unit_signatures=[list(r) for r in data.get("unit_signatures", [])],
            path=path,
        )

    def divisors_for(self, modulus: Sequence[int], r1: int) -> list[int]:
        modulus = tuple(sorted(modulus))
        if modulus in self.divisors:
            return list(self.divisors[modulus])
        if modulus == tuple(range(1, r1 + 1)) and "narrow" in self.divisors:
            return list(self.divisors["narrow"])
        if not modulus and self.h == 1:
            return []
        name = "ray." + ".".join(map(str, modulus)) if modulus else "wide"
        raise MissingFixture(f"fixture {self.path or ''} has no class data for modulus {name}")

    @property
    def h_plus(self) -> int | None:
        return _order(self.divisors["narrow"]) if "narrow" in self.divisors else None

    def validate(self, k: NumberField | None = None) -> None:
        """Check that the published orders fit together; raise FixtureError otherwise."""
        where = self.path or "fixture"
        if self.h < 1:
            raise FixtureError(f"{where}: class number must be positive")
        if k is not None and self.field_coeffs is not None and list(k.poly.coeffs) != list(self.field_coeffs):
            raise FixtureError(f"{where}: fixture is for a different field")
        r1 = k.r1 if k is not None else None
        hp = self.h_plus
        for mod, divs in self.divisors.items():
            n = _order(divs)
            if any(d < 1 for d in divs):
                raise FixtureError(f"{where}: elementary divisors must be positive")
            if any(divs[i + 1] % divs[i] for i in range(len(divs) - 1)):
                raise FixtureError(f"{where}: divisor mismatch, {divs} is not a divisor chain")
            places = range(1, (r1 or 0) + 1) if mod == "narrow" else mod
            nplaces = len(places) if mod != "narrow" or r1 is not None else None
            if n % self.h:
                raise FixtureError(f"{where}: divisor mismatch, h = {self.h} does not divide {n}")
            ratio = n // self.h
            if ratio & (ratio - 1):
                raise FixtureError(f"{where}: divisor mismatch, [{n} : h] is not a power of 2")
            if nplaces is not None and ratio > 2 ** nplaces:
                raise FixtureError(f"{where}: divisor mismatch, index {ratio} too large for the modulus")
            if hp is not None and mod != "narrow" and hp % n:
                raise FixtureError(
                    f"{where}: divisor mismatch, ray class number {n} does not divide h+ = {hp}"
                )
        if self.unit_signatures and k is not None:
            for row in self.unit_signatures:
                if len(row) != k.r1 or any(x not in (-1, 1) for x in row):
                    raise FixtureError(f"{where}: unit signature rows must be +-1 vectors of length r1")
            if hp is not None and k.is_totally_real:
                rank = fp_rank([[int(x < 0) for x in r] for r in self.unit_signatures], 2)
                if hp != self.h * 2 ** (k.r1 - rank):
                    raise FixtureError(f"{where}: divisor mismatch, h+ != h * 2^(r1 - signature rank)")

    def radicand_elements(self, k: NumberField) -> list[FieldElement]:
        return [k(r) for r in self.kb_radicands]


def _read_checksums(path: Path) -> dict[str, str]:
    sums = {}
    if path.exists():
        for line in path.read_text().splitlines():
            parts = line.split()
            if len(parts) == 2:
                sums[parts[1]] = parts[0]
    return sums


def load_fixture(path, verify_checksum: bool = True) -> Fixture:
    path = Path(path)
    if not path.exists():
        raise MissingFixture(f"fixture file not found: {path}")
    raw = path.read_bytes()
    if verify_checksum:
        sums = _read_checksums(path.parent / "SHA256SUMS")
        want = sums.get(path.name)
        if want is not None and hashlib.sha256(raw).hexdigest() != want:
            raise FixtureError(f"{path}: checksum error (file differs from SHA256SUMS)")
    data = textformat.loads(raw.decode(), source=str(path))
    return Fixture.from_mapping(data, str(path))


# --- G_B ---

class GBGroup:
    """The elementary abelian group G_B, given by coordinates in (Z/p)^t."""

    def __init__(self, p: int, rank: int, artin: Callable | None, sign_class: Callable,
                 provenance: str, info: dict | None = None):
        self.p = p
        self.rank = rank
        self._artin = artin
        self._sign = sign_class
        self.provenance = provenance
        self.info = dict(info or {})

    @property
    def t_B(self) -> int:
        return self.rank

    @property
    def order(self) -> int:
        return self.p**self.rank

    @property
    def has_artin(self) -> bool:
        return self._artin is not None

    def artin(self, P: PrimeIdeal) -> tuple[int, ...]:
        if self._artin is None:
            raise MissingFixture("no Artin classes available for this group (fixture lacks them)")
        return tuple(x % self.p for x in self._artin(P))

    def sign_class(self, place: int) -> tuple[int, ...]:
        return tuple(x % self.p for x in self._sign(place))

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def add(self, a, b) -> tuple[int, ...]:
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def scale(self, c: int, a) -> tuple[int, ...]:
        return tuple((c * x) % self.p for x in a)

    def elements(self):
        from itertools import product

        return product(range(self.p), repeat=self.rank)

    def __repr__(self):
        return f"GBGroup(p={self.p}, t_B={self.rank}, provenance={self.provenance})"


def _gb_from_ray(p, ray_dlog, divisors, ram_finite, sign_fn, provenance, info) -> GBGroup:
    idx = [i for i, d in enumerate(divisors) if d % p == 0]

    def proj(v):
        return [v[i] % p for i in idx]

    quot = FpQuotient(p, len(idx), [proj(ray_dlog(P)) for P in ram_finite])
    return GBGroup(
        p,
        quot.rank,
        lambda P: quot.project(proj(ray_dlog(P))),
        lambda v: quot.project(proj(sign_fn(v))),
        provenance,
        info,
    )


def _kummer_gb(k: NumberField, spec, fixture: Fixture) -> GBGroup:
    """G_B from radicands d_1..d_t with k_B = k(sqrt d_1, ..., sqrt d_t); coordinates are the characters."""
    ds = fixture.radicand_elements(k)
    where = fixture.path or "fixture"
    S = set(spec.ramified_real)
    exts = []
    for i, d in enumerate(ds, 1):
        L = QuadraticExtension(k, d, check=False)
        for v in range(1, k.r1 + 1):
            if v not in S and k.sign_at_place(d, v) < 0:
                raise FixtureError(f"{where}: radicand {i} is ramified at real place {v} outside B's ramification")
        if not L.is_unramified_at_finite_primes():
            raise FixtureError(f"{where}: radicand {i} is ramified at a finite prime")
        exts.append(L)
    for r in range(1, len(ds) + 1):
        for combo in combinations(range(len(ds)), r):
            prod_ = k.one()
            for j in combo:
                prod_ = prod_ * ds[j]
            if is_square_in_field(k, prod_) is not None:
                raise FixtureError(f"{where}: radicands are not independent modulo squares")

    def artin(P):
        out = []
        for L in exts:
            s = L.splitting(P)
            if s == RAMIFIED:
                raise FixtureError(f"{where}: radicand ramified at {P}")
            out.append(int(s == INERT))
        return tuple(out)

    for P in spec.ramified_finite:
        if any(artin(P)):
            raise FixtureError(f"{where}: a finite prime ramified in B does not split in k_B")

    def sign(v):
        if v not in S:
            return (0,) * len(ds)
        return tuple(int(k.sign_at_place(d, v) < 0) for d in ds)

    return GBGroup(2, len(ds), artin, sign, "fixture", {"model": "kummer", "extensions": exts})


def build_GB(k: NumberField, spec, data=None, fixture: Fixture | None = None) -> GBGroup:
    """G_B = Cl_S / (p-th powers, classes of finite primes ramified in B), S = real ramification."""
    p = spec.p
    S = tuple(sorted(spec.ramified_real)) if p == 2 else ()
    ram = list(spec.ramified_finite) if p == 2 else []
    if fixture is None and k.quadratic_data is not None:
        ray = _ray(k, S)
        return _gb_from_ray(
            p, ray.dlog, ray.elementary_divisors, ram, ray.sign_class, "computed",
            {"ray_divisors": list(ray.elementary_divisors), "h": _ray(k, ()).order},
        )
    if fixture is None:
        raise MissingFixture("class data for this field must come from a fixture")
    fixture.validate(k)
    divs = fixture.divisors_for(S, k.r1)
    ray_rank = _p_rank(divs, p)
    info = {"ray_divisors": divs, "h": fixture.h, "source": fixture.source}
    if p == 2 and fixture.kb_radicands:
        G = _kummer_gb(k, spec, fixture)
        if not ram and G.rank != ray_rank:
            raise FixtureError(
                f"{fixture.path or 'fixture'}: divisor mismatch, {G.rank} radicands but the ray group has 2-rank {ray_rank}"
            )
        if ram and G.rank > ray_rank:
            raise FixtureError(f"{fixture.path or 'fixture'}: more radicands than the ray group allows")
        G.info.update(info)
        return G
    if ram and not fixture.artin:
        raise MissingFixture("finite ramification needs Artin classes or radicands in the fixture")
    rank = ray_rank
    artin = None
    if fixture.artin:
        table = fixture.artin
        rank = len(next(iter(table.values())))

        def artin(P):
            try:
                return table[P.label()]
            except KeyError:
                raise MissingFixture(f"fixture has no Artin class for the prime {P.label()}") from None

    signs = fixture.sign_classes

    def sign(v):
        if v not in S:
            return (0,) * rank
        if v not in signs:
            raise MissingFixture(f"fixture has no sign class for real place {v}")
        return signs[v]

    return GBGroup(p, rank, artin, sign, "fixture", info)


def artin_class(G: GBGroup, nu: PrimeIdeal) -> tuple[int, ...]:
    return G.artin(nu)
