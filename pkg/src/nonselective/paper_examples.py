"""Regression pipelines for the two bundled quintic examples."""
from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from itertools import combinations
from pathlib import Path

from .classgroups import build_GB, load_fixture
from .exact import IntPolynomial
from .extensions import QuadraticExtension, is_square_in_field
from .lattices import build_parameter_frame
from .numberfield import NumberField
from .selectivity import (
    AlgebraSpec,
    build_nonselective_family,
    check_family_nonselective,
    compute_sB_tB,
    embeddable_characters,
    embeds_in_algebra,
    is_in_kB,
    max_family_bound,
)

RAMIFIED_REAL = (1, 2, 3, 4)


@dataclass(frozen=True)
class ExampleData:
    name: str
    field: tuple[int, ...]
    disc: int
    h: int
    h_plus: int
    t_B: int
    s_B: int
    family: int
    # radicands of k_B as printed, ascending in t
    printed_radicands: tuple[tuple[int, ...], ...]
    # the embeddable quadratic extensions as x^2 + B x + C, ascending in t
    embeddable_polys: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]


EXAMPLE_5_1 = ExampleData(
    "example_5_1",
    (6, 13, 0, -8, -1, 1),
    1123541, 1, 4, 2, 1, 2,
    ((-23, -8, 15, 3, 2), (5, 6, -5, -2, 1)),
    (((-36, -4, 20, 2, -2), (352, 112, -226, -45, 31)),),
)

EXAMPLE_5_2 = ExampleData(
    "example_5_2",
    (-1, 8, 2, -9, -2, 1),
    15216977, 2, 8, 3, 2, 2,
    ((1, -8, 6, 3, -1), (0, -15, 12, 6, -2), (0, 3, -5, 1)),
    (
        ((82, -486, 144, 262, -68), (5691, 31823, 505, -52678, 12611)),
        ((-172, 10, 20, 126, -32), (3602, 30325, 6749, -57172, 13375)),
    ),
)

EXAMPLES = (EXAMPLE_5_1, EXAMPLE_5_2)


def data_dir() -> Path:
    return Path(str(resources.files("nonselective") / "data"))


@dataclass
class Check:
    name: str
    expected: object
    got: object
    gating: bool = True

    @property
    def ok(self) -> bool:
        return self.expected == self.got


def square_classes(k: NumberField, radicands):
    """All nonempty products of the radicands, with the subset that produced each."""
    out = []
    for r in range(1, len(radicands) + 1):
        for combo in combinations(range(len(radicands)), r):
            d = k.one()
            for i in combo:
                d = d * radicands[i]
            out.append((combo, d))
    return out


def all_negative(k: NumberField, d, places=RAMIFIED_REAL) -> bool:
    return all(k.sign_at_place(d, v) < 0 for v in places)


def same_square_class(k: NumberField, a, b) -> bool:
    return is_square_in_field(k, a * b) is not None


def printed_radicand_check(ex: ExampleData, k: NumberField | None = None) -> tuple[int, bool]:
    """Among the square classes of the printed radicands: how many are negative at every
    ramified real place, and whether those match the embeddable extensions one to one."""
    k = k or NumberField(IntPolynomial(list(ex.field)))
    rads = [k(list(r)) for r in ex.printed_radicands]
    neg = [d for _, d in square_classes(k, rads) if all_negative(k, d)]
    targets = [QuadraticExtension.from_monic(k, list(B), list(C), check=False).d for B, C in ex.embeddable_polys]
    match = len(neg) == len(targets) and all(any(same_square_class(k, d, t) for d in neg) for t in targets)
    return len(neg), match


def run_example(ex: ExampleData, directory: Path | None = None, verify_checksum: bool = True) -> list[Check]:
    directory = Path(directory) if directory is not None else data_dir()
    fixture = load_fixture(directory / f"{ex.name}.fixture", verify_checksum=verify_checksum)
    k = NumberField(IntPolynomial(list(ex.field)))
    fixture.validate(k)
    checks = [
        Check("field discriminant", ex.disc, k.discriminant),
        Check("maximal order certified", "certified", k.maximality),
        Check("class number h", ex.h, fixture.h),
        Check("narrow class number h+", ex.h_plus, fixture.h_plus),
    ]
    spec = AlgebraSpec(k, 2, (), RAMIFIED_REAL)
    G = build_GB(k, spec, fixture=fixture)
    t, s = compute_sB_tB(G, spec)
    checks += [Check("t_B", ex.t_B, t), Check("s_B", ex.s_B, s)]
    chars = embeddable_characters(G, spec)
    frame = build_parameter_frame(k, G, chars, spec)
    fam = build_nonselective_family(frame)
    checks += [
        Check("family cardinality", ex.family, len(fam)),
        Check("family bound", ex.family, max_family_bound(2, t, s)),
        Check("family nonselective", True, check_family_nonselective(fam, G, spec)),
    ]
    found = []
    for i, (B, C) in enumerate(ex.embeddable_polys, 1):
        L = QuadraticExtension.from_monic(k, list(B), list(C))
        chi = is_in_kB(L, spec, G)
        checks.append(Check(f"L_{i} inside k_B", True, chi is not None))
        checks.append(Check(f"L_{i} embeds in B", True, embeds_in_algebra(L, spec)))
        if chi is not None:
            found.append(chi.chi)
    checks.append(Check("embeddable extensions are distinct", len(found), len(set(found))))
    n_neg, match = printed_radicand_check(ex, k)
    checks.append(Check("printed radicands: all-negative square classes", len(ex.embeddable_polys), n_neg, gating=False))
    checks.append(Check("printed radicands: classes match L", True, match, gating=False))
    return checks
