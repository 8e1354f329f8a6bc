"""Command-line front end.

Exit codes: 0 success, 1 invalid input (or a failed regression), 2 missing fixture,
3 prime search exhausted.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import textformat
from .cache import ClassDataCache
from .classgroups import Fixture, build_GB, class_group, fundamental_unit, load_fixture, narrow_class_group
from .errors import InvalidInput, MissingFixture, NonselectiveError
from .exact import IntPolynomial
from .extensions import QuadraticExtension
from .ideals import prime_above
from .lattices import DEFAULT_SEARCH_CAP, abstract_frame, build_parameter_frame, enumerate_orders
from .numberfield import NumberField
from .selectivity import (
    AlgebraSpec,
    QuadraticOrderSpec,
    build_nonselective_family,
    compute_sB_tB,
    embeddable_characters,
    max_family_bound,
    selectivity_verdict,
    selects,
    validate_algebra,
)
from .spectra import vigneras_certificate

COMPUTED = "computed"
FIXTURE = "fixture"


# --- configuration ---

@dataclass
class JobConfig:
    coeffs: list[int]
    basis: list | None = None
    p: int = 2
    ramify_real: tuple[int, ...] = ()
    ramify_finite: tuple[str, ...] = ()
    fixture: str | None = None
    anchors: tuple[int, ...] | None = None
    cache_dir: str | None = None
    max_prime_norm: int = DEFAULT_SEARCH_CAP
    source: str = "<args>"


def _int_list(text: str, what: str) -> tuple[int, ...]:
    text = text.strip().strip("[]")
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InvalidInput(f"{what}: expected comma separated integers, got {text!r}") from None


def _prime_list(values) -> tuple[str, ...]:
    out = []
    for v in values or ():
        out += [s.strip() for s in v.split(";") if s.strip()]
    return tuple(out)


def load_config(args) -> JobConfig:
    """Merge a field file (key = value lines) with command-line flags; flags win."""
    data: dict = {}
    source = "<args>"
    if args.field:
        path = Path(args.field)
        if not path.exists():
            raise InvalidInput(f"field file not found: {path}")
        text = path.read_text()
        data = textformat.loads(text, source=str(path))
        source = str(path)
        if "field" not in data:
            raise textformat.FormatError("missing key 'field'", 1, source)
        for key in ("field", "ramify_real", "basis"):
            if key in data and not isinstance(data[key], (list, tuple)):
                raise textformat.FormatError(f"{key} must be a list", textformat.line_of(text, key), source)
    elif getattr(args, "coeffs", None):
        data["field"] = list(_int_list(args.coeffs, "--coeffs"))
    else:
        raise InvalidInput("give --field FILE or --coeffs c0,c1,...")
    cfg = JobConfig(
        coeffs=[int(c) for c in data["field"]],
        basis=data.get("basis"),
        p=int(data.get("p", 2)),
        ramify_real=tuple(int(v) for v in data.get("ramify_real", ())),
        ramify_finite=tuple(data.get("ramify_finite", ())),
        fixture=data.get("fixture"),
        source=source,
    )
    if cfg.fixture and args.field:
        cfg.fixture = str((Path(args.field).parent / cfg.fixture))
    if args.p is not None:
        cfg.p = args.p
    if args.ramify_real is not None:
        cfg.ramify_real = _int_list(args.ramify_real, "--ramify-real")
    if args.ramify_finite:
        cfg.ramify_finite = _prime_list(args.ramify_finite)
    if args.fixture:
        cfg.fixture = args.fixture
    if args.anchors is not None:
        cfg.anchors = _int_list(args.anchors, "--anchors")
    cfg.cache_dir = args.cache_dir
    if args.max_prime_norm is not None:
        cfg.max_prime_norm = args.max_prime_norm
    return cfg


@dataclass
class Job:
    config: JobConfig
    k: NumberField
    spec: AlgebraSpec
    fixture: Fixture | None


def prepare(cfg: JobConfig) -> Job:
    k = NumberField(IntPolynomial(cfg.coeffs), cfg.basis)
    primes = tuple(prime_above(k, lab) for lab in cfg.ramify_finite)
    spec = AlgebraSpec(k, cfg.p, primes, cfg.ramify_real)
    fixture = load_fixture(cfg.fixture) if cfg.fixture else None
    return Job(cfg, k, spec, fixture)


# --- reports ---

@dataclass
class Report:
    lines: list[tuple[str, object, str | None]] = field(default_factory=list)
    text: list[str] = field(default_factory=list)

    def add(self, key, value, provenance=None):
        self.lines.append((key, value, provenance))

    def note(self, line: str):
        self.text.append(line)

    def render(self, machine: bool = False) -> str:
        out = []
        for key, value, prov in self.lines:
            if isinstance(value, (list, tuple)):
                value = ",".join(str(v) for v in value)
            if machine:
                out.append(f"{key}={value}")
                if prov:
                    out.append(f"{key}.provenance={prov}")
            else:
                out.append(f"{key}: {value}" + (f"  [{prov}]" if prov else ""))
        if not machine:
            out += self.text
        return "\n".join(out) + "\n"


def _field_section(rep: Report, job: Job) -> None:
    k = job.k
    rep.add("field", list(job.config.coeffs))
    rep.add("degree", k.degree)
    rep.add("discriminant", k.discriminant, COMPUTED)
    rep.add("maximal_order", k.maximality, COMPUTED)
    rep.add("signature", f"{k.r1},{k.r2}", COMPUTED)
    rep.add("p", job.spec.p)
    rep.add("ramified_real", list(job.spec.ramified_real))
    rep.add("ramified_finite", ";".join(P.label() for P in job.spec.ramified_finite))


def _validate(rep: Report, job: Job) -> None:
    v = validate_algebra(job.spec)
    for code, msg in v.errors:
        if code == "totally-definite":
            rep.note(f"warning: {msg}")
        else:
            rep.add("validation", code)
            raise InvalidInput(msg)
    if v.facts["no-selective-orders"]:
        rep.note("B is ramified at a finite prime, so it has no selective orders")


def _group(job: Job):
    G = build_GB(job.k, job.spec, fixture=job.fixture)
    return G, G.provenance


def _frame(job: Job, G):
    chars = embeddable_characters(G, job.spec)
    if G.has_artin:
        return build_parameter_frame(job.k, G, chars, job.spec, cap=job.config.max_prime_norm)
    return abstract_frame(G, chars, job.spec)


def _family_section(rep: Report, job: Job, G, prov):
    t, s = compute_sB_tB(G, job.spec)
    rep.add("t_B", t, prov)
    rep.add("s_B", s, prov)
    rep.add("type_number", job.spec.p**t, prov)
    fr = _frame(job, G)
    if G.has_artin:
        rep.add("frame_primes", ";".join(P.label() for P in fr.primes), COMPUTED)
    else:
        rep.note("frame: abstract (no Artin classes available)")
    fam = build_nonselective_family(fr, job.config.anchors)
    rep.add("family_size", len(fam), prov)
    rep.add("family", [str(x) for x in fam.labels])
    rep.add("family_bound", max_family_bound(job.spec.p, t, s), prov)
    return fr, fam


def cmd_analyze(job: Job, certify: bool = False) -> Report:
    rep = Report()
    _field_section(rep, job)
    _validate(rep, job)
    G, prov = _group(job)
    rep.add("class_data", prov)
    if "h" in G.info:
        rep.add("h", G.info["h"], prov)
    fr, fam = _family_section(rep, job, G, prov)
    if certify:
        _certificate(rep, job, fam)
    return rep


def _certificate(rep: Report, job: Job, fam) -> None:
    if job.spec.p != 2 or len(fam) < 2:
        rep.add("isospectral", "not-applicable")
        rep.add("nonisometric", "inconclusive")
        rep.note("no pair of distinct orders in the family" if job.spec.p == 2 else "odd p has no hyperbolic interpretation")
        return
    cert = vigneras_certificate(job.spec, fam, fam.labels[:2])
    rep.add("pair", ";".join(cert.pair))
    rep.add("isospectral", cert.isospectral)
    rep.add("nonisometric", cert.nonisometric)
    if cert.profile is not None:
        rep.add("profile", list(cert.profile))
    for cond, status, why in cert.facts:
        rep.note(f"  {cond}: {status}  [{why}]")


def cmd_family(job: Job) -> Report:
    rep = Report()
    _validate(rep, job)
    G, prov = _group(job)
    _family_section(rep, job, G, prov)
    return rep


def cmd_certify(job: Job) -> Report:
    rep = Report()
    _validate(rep, job)
    G, prov = _group(job)
    _, fam = _family_section(rep, job, G, prov)
    _certificate(rep, job, fam)
    return rep


def _parse_conductor(k, text: str | None) -> dict:
    out = {}
    for item in _prime_list([text] if text else []):
        lab, _, e = item.partition("^")
        out[prime_above(k, lab)] = int(e) if e else 1
    return out


def cmd_selectivity(job: Job, args) -> Report:
    rep = Report()
    k = job.k
    _validate(rep, job)
    if args.radicand:
        L = QuadraticExtension(k, list(_int_list(args.radicand, "--radicand")))
        omega = QuadraticOrderSpec.from_conductor(L, _parse_conductor(k, args.conductor))
    elif args.omega_b is not None and args.omega_c is not None:
        omega = QuadraticOrderSpec.from_generator(k, list(_int_list(args.omega_b, "--omega-b")),
                                                  list(_int_list(args.omega_c, "--omega-c")))
    else:
        raise InvalidInput("give --radicand (with optional --conductor) or --omega-b and --omega-c")
    G, prov = _group(job)
    rep.add("t_B", G.rank, prov)
    rep.add("conductor", [f"{P.label()}^{e}" for P, e in sorted(omega.conductor.items(), key=lambda x: x[0].sort_key)])
    verdict = selectivity_verdict(omega, job.spec, G)
    rep.add("verdict", verdict.tag)
    for cond, status, detail in verdict.reasons:
        rep.note(f"  {cond}: {status} ({detail})")
    if verdict.selective:
        rep.add("chi_L", list(verdict.chi_L.chi))
        fr = _frame(job, G)
        labels = enumerate_orders(fr)
        ref = fr.reference()
        n = sum(selects(verdict, ref, E) for E in labels)
        rep.add("selected", f"{n}/{len(labels)}")
        rep.note(f"selected fraction: 1/{job.spec.p} of classes")
    return rep


def cmd_class_data(job: Job, cache_dir: str | None) -> Report:
    rep = Report()
    k = job.k
    if k.quadratic_data is None:
        if job.fixture is None:
            raise MissingFixture("class data for non-quadratic fields must come from a fixture")
        rep.add("h", job.fixture.h, FIXTURE)
        rep.add("h_plus", job.fixture.h_plus, FIXTURE)
        return rep
    modulus = tuple(sorted(job.spec.ramified_real)) if job.config.ramify_real else tuple(range(1, k.r1 + 1))
    cache = ClassDataCache(cache_dir) if cache_dir else None
    data = cache.get(k.discriminant, modulus) if cache else None
    rep.add("cache", "hit" if data is not None else ("miss" if cache else "off"))
    if data is None:
        cl = class_group(k)
        data = {"disc": k.discriminant, "h": cl.h, "class_group": list(cl.elementary_divisors)}
        if k.r1:
            units = fundamental_unit(k)
            nar = narrow_class_group(k, units, modulus)
            data.update({
                "modulus": list(modulus),
                "ray_divisors": list(nar.elementary_divisors),
                "ray_order": nar.order,
                "unit_norm": units.unit_norm,
                "fundamental_unit": [str(x) for x in units.fundamental_unit.coordinates],
            })
        else:
            rep.note("imaginary quadratic field: class group only (no units path)")
        if cache:
            cache.put(k.discriminant, modulus, data)
    for key, value in data.items():
        rep.add(key, value, COMPUTED)
    return rep


def cmd_verify_paper_examples(directory: str | None = None) -> tuple[Report, bool]:
    from .paper_examples import EXAMPLES, run_example

    rep = Report()
    ok = True
    for ex in EXAMPLES:
        for chk in run_example(ex, directory):
            status = "PASS" if chk.ok else ("FAIL" if chk.gating else "MISMATCH (published data; not gating)")
            rep.note(f"{ex.name}: {chk.name}: expected {chk.expected}, got {chk.got}: {status}")
            if chk.gating and not chk.ok:
                ok = False
    rep.add("result", "pass" if ok else "fail")
    return rep, ok


# --- entry point ---

def _common(sp):
    sp.add_argument("--field", help="field file (key = value lines)")
    sp.add_argument("--coeffs", help="defining polynomial, ascending coefficients")
    sp.add_argument("--p", type=int)
    sp.add_argument("--ramify-real", help="ramified real places, e.g. 1,2,3,4")
    sp.add_argument("--ramify-finite", action="append", help="ramified prime q:c0,c1,... (repeat or separate with ';')")
    sp.add_argument("--fixture", help="class data fixture file")
    sp.add_argument("--anchors", help="family anchors c1,...,cs")
    sp.add_argument("--cache-dir")
    sp.add_argument("--max-prime-norm", type=int)
    sp.add_argument("--machine", action="store_true", help="key=value output")


class _Parser(argparse.ArgumentParser):
    # usage errors are invalid input (exit 1); exit code 2 is reserved for missing fixtures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nonselective", description="Selectivity of orders and nonselective families.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("analyze", "family", "certify", "class-data"):
        sp = sub.add_parser(name)
        _common(sp)
        if name == "analyze":
            sp.add_argument("--certify", action="store_true")
    sp = sub.add_parser("selectivity")
    _common(sp)
    sp.add_argument("--radicand", help="L = k(sqrt d), d in power-basis coordinates")
    sp.add_argument("--conductor", help="conductor primes q:c0,c1^e;...")
    sp.add_argument("--omega-b", help="Omega = O_k[u], u^2 - b u + c = 0")
    sp.add_argument("--omega-c")
    sp = sub.add_parser("verify-paper-examples")
    sp.add_argument("--data-dir", help="directory holding the fixtures and SHA256SUMS")
    sp.add_argument("--machine", action="store_true")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return int(exc.code or 0)
    try:
        if args.command == "verify-paper-examples":
            rep, ok = cmd_verify_paper_examples(args.data_dir)
            sys.stdout.write(rep.render(args.machine))
            return 0 if ok else 1
        job = prepare(load_config(args))
        if args.command == "analyze":
            rep = cmd_analyze(job, certify=args.certify)
        elif args.command == "family":
            rep = cmd_family(job)
        elif args.command == "certify":
            rep = cmd_certify(job)
        elif args.command == "selectivity":
            rep = cmd_selectivity(job, args)
        else:
            rep = cmd_class_data(job, args.cache_dir)
    except NonselectiveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        for key, value in getattr(exc, "diagnostics", {}).items():
            print(f"  {key}: {value}", file=sys.stderr)
        return exc.exit_code
    sys.stdout.write(rep.render(args.machine))
    return 0


if __name__ == "__main__":
    sys.exit(main())
