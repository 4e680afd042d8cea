"""Command-line front end: tables, verification suites, reports, figures.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
All output is deterministic for a given invocation: exact rationals are
rendered as "p/q" plus a 12-significant-digit decimal preview; previews
never feed back into any computation.
"""

from __future__ import annotations

import argparse
import csv
import decimal
import io
import json
import math
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import oeis, svg
from .capacity import (
    QuadraticValue,
    capacity_to_json,
    compare,
    convergence_trace,
    lagrange_number,
    limit_point,
    surd_identity_check,
    width,
    width_as_surd,
)
from .errors import VerificationError
from .lattice import (
    LatticePolygon,
    UnimodularMap,
    central_point,
    check_alg_lemma,
    check_width_inequality_failure,
    inscribed_right_triangle,
    lattice_width,
    lattice_width_equals_capacity,
    shear_normalize,
    vianna_triangle,
)
from .markov import (
    MarkovTriple,
    MutationKind,
    SubtreeSpec,
    brute_force_triples,
    enumerate_triples,
    fibonacci,
    mutate,
    pell,
    uniqueness_check,
    wedge,
)
from .ordering import (
    ChainValues,
    alternating_order,
    check_nn_inequality,
    find_irregularities,
    ordered_prefix_complete_above,
    scan_window,
    spectrum_rows,
    verify_chain_inequalities,
    verify_swap_pattern,
    _context,
)

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2
EXIT_IO = 3

_PAPER_TABLE = ((2, 1, 1), (5, 2, 1), (13, 5, 1), (29, 5, 2), (433, 29, 5))


@dataclass
class RunConfig:
    command: str
    fmt: str = "text"
    out: str | None = None
    max_bound: int = 10_000
    n_max: int = 450
    depth: int = 3
    k: int = 4
    n: int = 10
    count: int = 10
    triple: MarkovTriple | None = None
    preserve: int | None = None
    threshold: Fraction | None = None
    eps: Fraction | None = None
    delta: Fraction = Fraction(1, 4)
    side: str = "alternating"
    figure: str | None = None
    polygon: str | None = None
    bfile: str | None = None
    kind: str = "all"
    suites: tuple[str, ...] = ()
    cache_dir: str | None = None
    offline: bool = False
    fetch: bool = False
    fixture: bool = False


def _parse_triple(text: str) -> MarkovTriple:
    try:
        values = [int(part) for part in text.split(",")]
    except ValueError:
        raise ValueError(f"--triple expects integers a,b,c, got {text!r}") from None
    if len(values) != 3:
        raise ValueError(f"--triple expects three entries, got {text!r}")
    return MarkovTriple.from_values(*values)


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"expected an exact rational like 'p/q', got {text!r}") from None


def _preview(value, digits: int = 12) -> str:
    if isinstance(value, QuadraticValue):
        return value.decimal(digits)
    value = Fraction(value)
    ctx = decimal.Context(prec=digits)
    return str(
        ctx.divide(decimal.Decimal(value.numerator), decimal.Decimal(value.denominator))
    )


@dataclass
class Table:
    """One command's tabular output plus its exact JSON payload."""

    columns: list[str]
    rows: list[list[str]]
    payload: dict
    notes: list[str] = field(default_factory=list)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.payload, indent=2, sort_keys=True) + "\n"
        if fmt == "csv":
            buffer = io.StringIO()
            writer = csv.writer(buffer, lineterminator="\n")
            writer.writerow(self.columns)
            writer.writerows(self.rows)
            return buffer.getvalue()
        widths = [
            max(len(self.columns[i]), *(len(r[i]) for r in self.rows)) if self.rows
            else len(self.columns[i])
            for i in range(len(self.columns))
        ]
        lines = [
            "  ".join(c.ljust(w) for c, w in zip(self.columns, widths)).rstrip()
        ]
        lines.append("  ".join("-" * w for w in widths))
        for row in self.rows:
            lines.append(
                "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
            )
        lines.extend(f"# {note}" for note in self.notes)
        return "\n".join(lines) + "\n"


def _emit(config: RunConfig, data: str | bytes) -> None:
    if config.out:
        mode = "wb" if isinstance(data, bytes) else "w"
        with open(config.out, mode) as handle:
            handle.write(data)
        return
    if isinstance(data, bytes):
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        sys.stdout.write(data)


def cmd_widths(config: RunConfig) -> int:
    triples = (
        [config.triple]
        if config.triple is not None
        else [MarkovTriple(*t) for t in _PAPER_TABLE]
    )
    rows, payload_rows = [], []
    for t in triples:
        w = width(t)
        rows.append([str(t), str(w), _preview(w)])
        payload_rows.append(
            {"triple": t.to_json(), "width": capacity_to_json(w), "preview": _preview(w)}
        )
    table = Table(["triple", "width", "decimal"], rows,
                  {"command": "widths", "rows": payload_rows})
    _emit(config, table.render(config.fmt))
    return EXIT_OK


def cmd_triples(config: RunConfig) -> int:
    nodes = enumerate_triples(config.max_bound)
    rows, payload_rows = [], []
    for node in nodes:
        rows.append([str(node.triple), str(node.depth), str(width(node.triple))])
        payload_rows.append(
            {
                "triple": node.triple.to_json(),
                "depth": node.depth,
                "width": capacity_to_json(width(node.triple)),
            }
        )
    table = Table(
        ["triple", "depth", "width"],
        rows,
        {"command": "triples", "max_bound": str(config.max_bound), "rows": payload_rows},
    )
    _emit(config, table.render(config.fmt))
    return EXIT_OK


def cmd_subtree(config: RunConfig) -> int:
    if config.triple is None:
        raise ValueError("subtree needs --triple")
    preserved = config.preserve if config.preserve is not None else config.triple.a
    spec = SubtreeSpec.rooted(preserved, config.triple)
    nodes = wedge(spec, config.depth)
    rows, payload_rows = [], []
    for node in nodes:
        w = width(node.triple)
        rows.append([str(node.depth), str(node.triple), str(w), _preview(w)])
        payload_rows.append(
            {
                "depth": node.depth,
                "triple": node.triple.to_json(),
                "width": capacity_to_json(w),
            }
        )
    table = Table(
        ["depth", "triple", "width", "decimal"],
        rows,
        {
            "command": "subtree",
            "preserved": str(spec.preserved),
            "apex": spec.apex.to_json(),
            "rows": payload_rows,
        },
    )
    _emit(config, table.render(config.fmt))
    return EXIT_OK


def cmd_order(config: RunConfig) -> int:
    if config.triple is None:
        raise ValueError("order needs --triple (used as the apex)")
    sequence = alternating_order(config.triple, config.depth)
    rows, payload_rows = [], []
    for rank, (t, w) in enumerate(sequence, start=1):
        rows.append([str(rank), str(t), str(w), _preview(w)])
        payload_rows.append(
            {"rank": rank, "triple": t.to_json(), "width": capacity_to_json(w)}
        )
    table = Table(
        ["rank", "triple", "width", "decimal"],
        rows,
        {"command": "order", "apex": config.triple.to_json(), "rows": payload_rows},
    )
    _emit(config, table.render(config.fmt))
    return EXIT_OK


def _load_fixture() -> dict:
    from importlib import resources

    blob = (resources.files("mbl") / "data" / "irregularities_450.json").read_text()
    return json.loads(blob)


def cmd_irregularities(config: RunConfig) -> int:
    records = find_irregularities(config.n_max)
    rows, payload_rows = [], []
    for rec in records:
        ok = verify_swap_pattern(rec)
        rows.append([str(rec.n), str(rec.span), str(rec.n_prime),
                     "yes" if ok else "NO", rec.kind])
        payload_rows.append({**rec.to_json(), "swap_verified": ok})
    table = Table(
        ["n", "span", "n_prime", "swap_verified", "kind"],
        rows,
        {"command": "irregularities", "n_max": config.n_max, "rows": payload_rows},
        notes=["b values for rows 1 and 2 use the second-smallest-member "
               "convention; those rows never violate the inequality"],
    )
    status = EXIT_OK
    if not all(r["swap_verified"] for r in payload_rows):
        status = EXIT_VERIFICATION
    if config.fixture:
        fixture = _load_fixture()
        if config.n_max != fixture["n_max"]:
            raise ValueError(
                f"--fixture catalogue covers n_max={fixture['n_max']}, "
                f"got --n-max {config.n_max}"
            )
        got_1 = [rec.n for rec in records if rec.span == 1]
        got_2 = [rec.n for rec in records if rec.span == 2]
        match = got_1 == fixture["span_1"] and got_2 == fixture["span_2"]
        table.payload["fixture_match"] = match
        table.notes.append(f"fixture match: {match}")
        if not match:
            status = EXIT_VERIFICATION
    _emit(config, table.render(config.fmt))
    return status


def cmd_triangle(config: RunConfig) -> int:
    if config.triple is None:
        raise ValueError("triangle needs --triple")
    tri = vianna_triangle(config.triple)
    center = central_point(tri)
    value, xi = lattice_width(tri.polygon())
    payload = {
        "command": "triangle",
        "triple": config.triple.to_json(),
        "vertices": tri.polygon().to_json(),
        "ell": str(tri.ell),
        "h": str(tri.h),
        "t": str(tri.t),
        "lam": str(tri.lam),
        "u": tri.u,
        "edges": [
            {"direction": list(e.direction), "affine_length": str(e.length)}
            for e in tri.edge_data
        ],
        "central_point": [str(center.x), str(center.y)],
        "lattice_width": capacity_to_json(value),
        "minimizer": list(xi),
    }
    rows = [
        ["vertices", " ".join(f"({p.x},{p.y})" for p in tri.vertices)],
        ["ell", str(tri.ell)],
        ["h", str(tri.h)],
        ["apex abscissa t", str(tri.t)],
        ["lam", str(tri.lam)],
        ["edge lengths", " ".join(str(e.length) for e in tri.edge_data)],
        ["central point", f"({center.x}, {center.y})"],
        ["lattice width", f"{value} at xi={xi}"],
    ]
    table = Table(["quantity", "value"], rows, payload)
    _emit(config, table.render(config.fmt))
    return EXIT_OK


def cmd_width(config: RunConfig) -> int:
    if (config.triple is None) == (config.polygon is None):
        raise ValueError("width needs exactly one of --triple or --polygon")
    if config.triple is not None:
        polygon = vianna_triangle(config.triple).polygon()
        source = {"triple": config.triple.to_json()}
    else:
        try:
            with open(config.polygon, "r") as handle:
                polygon = LatticePolygon.from_json(json.load(handle))
        except OSError:
            raise
        except (json.JSONDecodeError, TypeError) as exc:
            raise ValueError(f"bad polygon file {config.polygon}: {exc}") from None
        source = {"polygon_file": config.polygon}
    value, xi = lattice_width(polygon)
    payload = {
        "command": "width",
        **source,
        "vertices": polygon.to_json(),
        "lattice_width": capacity_to_json(value),
        "minimizer": list(xi),
        "preview": _preview(value),
    }
    rows = [[str(value), f"({xi[0]},{xi[1]})", _preview(value)]]
    table = Table(["lattice_width", "minimizer", "decimal"], rows, payload)
    _emit(config, table.render(config.fmt))
    return EXIT_OK


def cmd_limits(config: RunConfig) -> int:
    rows_data = spectrum_rows(config.n, k=config.k)
    rows, payload_rows = [], []
    for row in rows_data:
        lam = lagrange_number(row.m)
        rows.append(
            [
                str(row.n),
                str(row.m),
                str(row.b) + ("*" if row.degenerate else ""),
                str(lam),
                str(row.limit),
                _preview(row.limit),
            ]
        )
        payload_rows.append(
            {
                **row.to_json(),
                "lagrange": lam.to_json(),
                "preview": _preview(row.limit),
            }
        )
    table = Table(
        ["n", "m", "b", "lagrange", "limit", "decimal"],
        rows,
        {"command": "limits", "rows": payload_rows},
        notes=["* b for rows 1 and 2 follows the second-smallest-member "
               "convention (values 2 and 5)"],
    )
    _emit(config, table.render(config.fmt))
    return EXIT_OK


def cmd_plot(config: RunConfig) -> int:
    figure = config.figure
    if figure == "order5":
        triple = config.triple or MarkovTriple(5, 2, 1)
        data = svg.figure_subtree(triple, config.depth)
    elif figure == "numberline":
        data = svg.figure_numberline(config.n, k=config.k)
    elif figure == "triangle":
        if config.triple is None:
            raise ValueError("plot --figure triangle needs --triple")
        data = svg.figure_triangle(config.triple, config.delta)
    else:
        raise ValueError(f"unknown figure {config.figure!r}")
    _emit(config, data)
    return EXIT_OK


def cmd_ingest(config: RunConfig) -> int:
    kinds = list(oeis.SEQUENCE_IDS) if config.kind == "all" else [config.kind]
    if config.fetch and config.offline:
        raise ValueError("--fetch and --offline are mutually exclusive")
    if config.fetch:
        for kind in kinds:
            oeis.fetch_bfile(kind, cache_dir=config.cache_dir)
    rows, payload_rows, all_ok = [], [], True
    for kind in kinds:
        report = oeis.cross_check(
            kind, config.n, path=config.bfile, cache_dir=config.cache_dir
        )
        all_ok = all_ok and report.ok
        rows.append(
            [
                kind,
                report.sequence_id,
                str(report.n),
                report.source,
                "ok" if report.ok else
                f"MISMATCH at {report.first_mismatch[0]}",
            ]
        )
        payload_rows.append(report.to_json())
    table = Table(
        ["kind", "sequence", "n", "source", "status"],
        rows,
        {"command": "ingest", "rows": payload_rows},
    )
    _emit(config, table.render(config.fmt))
    return EXIT_OK if all_ok else EXIT_VERIFICATION


def _check(checks: list, name: str, passed: bool, witness: str = "") -> None:
    checks.append({"name": name, "passed": bool(passed), "witness": witness})


def _suite_markov(config: RunConfig) -> list[dict]:
    checks: list[dict] = []
    bound = min(config.max_bound, 10_000)
    nodes = enumerate_triples(bound)
    closure = involution = monotone = coprime = True
    witness = ""
    for node in nodes:
        t = node.triple
        for kind in MutationKind:
            child = mutate(t, kind)  # construction re-checks the equation
            if not any(mutate(child, back) == t for back in MutationKind):
                involution = False
                witness = f"{t} {kind.name}"
        if not (
            mutate(t, MutationKind.ELIMINATE_MIN).a > t.a
            and mutate(t, MutationKind.ELIMINATE_MID).a > t.a
        ):
            monotone = False
            witness = str(t)
        degenerate = t.as_tuple() in ((1, 1, 1), (2, 1, 1))
        if not degenerate and not mutate(t, MutationKind.ELIMINATE_MAX).a < t.a:
            monotone = False
            witness = str(t)
        if math.gcd(t.a, t.b) != 1 or math.gcd(t.b, t.c) != 1 or math.gcd(t.a, t.c) != 1:
            coprime = False
            witness = str(t)
    _check(checks, "mutation-closure", closure)
    _check(checks, "mutation-involution", involution, witness)
    _check(checks, "mutation-monotonicity", monotone, witness)
    _check(checks, "pairwise-coprimality", coprime, witness)
    small = min(config.max_bound, 600)
    brute = brute_force_triples(small)
    walked = [n.triple.as_tuple() for n in enumerate_triples(small)]
    _check(checks, "brute-force-equivalence", brute == walked, f"bound {small}")
    _check(checks, "uniqueness", uniqueness_check(config.max_bound),
           f"bound {config.max_bound}")
    return checks


def _suite_capacity(config: RunConfig) -> list[dict]:
    checks: list[dict] = []
    bound = min(config.max_bound, 10 ** 6)
    root = MarkovTriple(1, 1, 1)
    bounds_ok = identity_ok = True
    witness = ""
    for node in enumerate_triples(bound):
        t = node.triple
        w = width(t)
        if t == root:
            if w != 1 or surd_identity_check(t):
                bounds_ok = False
                witness = str(t)
            continue
        if not (Fraction(1, 3) < w <= Fraction(1, 2)):
            bounds_ok = False
            witness = str(t)
        if t.a <= 10_000 and not (
            surd_identity_check(t) and width_as_surd(t) == w
        ):
            identity_ok = False
            witness = str(t)
    _check(checks, "width-bounds", bounds_ok, witness)
    _check(checks, "surd-identity", identity_ok, witness)
    gaps_ok = True
    try:
        convergence_trace(SubtreeSpec.rooted(1, MarkovTriple(2, 1, 1)), 10)
        convergence_trace(SubtreeSpec.rooted(2, MarkovTriple(2, 1, 1)), 10)
        for side in ("left", "right", "alternating"):
            convergence_trace(SubtreeSpec.rooted(5, MarkovTriple(5, 2, 1)), 10, side)
    except VerificationError as exc:
        gaps_ok = False
        witness = str(exc)
    _check(checks, "limit-gaps", gaps_ok, witness)
    sane = (
        compare(lagrange_number(2), QuadraticValue.sqrt(8)) == 0
        and compare(limit_point(1), QuadraticValue(Fraction(3, 2), Fraction(-1, 2), 5)) == 0
        and compare(limit_point(1), Fraction(1, 3)) > 0
    )
    _check(checks, "spectrum-values", sane)
    return checks


def _suite_ordering(config: RunConfig) -> list[dict]:
    checks: list[dict] = []
    apex_bound = min(config.max_bound, 10_000)
    interleave = chain_ok = descent = True
    witness = ""
    for node in enumerate_triples(apex_bound):
        t = node.triple
        if t.a >= 5:
            cv = ChainValues.build(t, 10)
            merged = [x for pair in zip(cv.g, cv.f) for x in pair]
            if any(x >= y for x, y in zip(merged, merged[1:])):
                interleave = False
                witness = str(t)
            if not verify_chain_inequalities(t.a, t.b, t.c, 8):
                chain_ok = False
                witness = str(t)
        try:
            alternating_order(t, 8)
        except VerificationError as exc:
            descent = False
            witness = str(exc)
    _check(checks, "chain-interleaving", interleave, witness)
    _check(checks, "chain-inequalities", chain_ok, witness)
    _check(checks, "alternating-descent", descent, witness)
    if config.n_max >= 34:
        rows = spectrum_rows(34)
        anchors = (
            rows[32].m == pell(15)
            and rows[33].m == fibonacci(27)
            and rows[32].b == pell(17)
            and rows[33].b == fibonacci(29)
        )
        _check(checks, "row-anchors", anchors)
    prefix_ok = True
    numbers, _ = _context(min(config.n_max, 32) + 16)
    for n in range(1, min(config.n_max, 32) + 1):
        for n_prime in scan_window(n, numbers):
            if not check_nn_inequality(n, n_prime):
                prefix_ok = False
                witness = f"(n,n')=({n},{n_prime})"
    _check(checks, "regular-prefix", prefix_ok, witness)
    records = find_irregularities(config.n_max)
    swaps_ok = all(verify_swap_pattern(rec) for rec in records)
    _check(checks, "swap-patterns", swaps_ok, f"{len(records)} records")
    if config.fixture and config.n_max == 450:
        fixture = _load_fixture()
        got_1 = [rec.n for rec in records if rec.span == 1]
        got_2 = [rec.n for rec in records if rec.span == 2]
        _check(checks, "catalogue-fixture",
               got_1 == fixture["span_1"] and got_2 == fixture["span_2"])
    return checks


def _suite_lattice(config: RunConfig) -> list[dict]:
    checks: list[dict] = []
    bound = min(config.max_bound, 10_000)
    root = MarkovTriple(1, 1, 1)
    aff = invariants = shear_ok = alg = True
    witness = ""
    for node in enumerate_triples(bound):
        t = node.triple
        if not lattice_width_equals_capacity(t):
            aff = False
            witness = str(t)
        tri = vianna_triangle(t)  # construction re-checks the invariants
        if tri.ell < 1:
            invariants = False
            witness = str(t)
        central_point(tri)  # raises if the 1/3-point fails
        if t != root:
            normalized, _ = shear_normalize(tri)
            before, _ = lattice_width(tri.polygon())
            after, _ = lattice_width(normalized.polygon())
            if before != after or not inscribed_right_triangle(
                normalized, normalized.h / 8
            ):
                shear_ok = False
                witness = str(t)
            if not check_width_inequality_failure(t):
                aff = False
                witness = str(t)
        if check_alg_lemma(t) == (t == root):
            alg = False
            witness = str(t)
    _check(checks, "lattice-width-equals-capacity", aff, witness)
    _check(checks, "triangle-invariants", invariants, witness)
    _check(checks, "shear-and-inscribed", shear_ok, witness)
    _check(checks, "alg-lemma", alg, witness)
    rng = random.Random(20240813)
    unimodular = True
    for t in (MarkovTriple(5, 2, 1), MarkovTriple(29, 5, 2)):
        polygon = vianna_triangle(t).polygon()
        base, _ = lattice_width(polygon)
        for _ in range(20):
            mapped = _random_unimodular(rng).apply(polygon)
            got, _ = lattice_width(mapped)
            if got != base:
                unimodular = False
                witness = str(t)
    _check(checks, "unimodular-invariance", unimodular, witness)
    return checks


def _random_unimodular(rng: random.Random) -> UnimodularMap:
    m = (1, 0, 0, 1)
    for _ in range(rng.randint(2, 6)):
        k = rng.randint(-3, 3)
        which = rng.randint(0, 1)
        if which == 0:  # shear (1 k; 0 1)
            m = (m[0], m[1] + k * m[0], m[2], m[3] + k * m[2])
        else:  # shear (1 0; k 1)
            m = (m[0] + k * m[1], m[1], m[2] + k * m[3], m[3])
    if rng.randint(0, 1):
        m = (m[1], m[0], m[3], m[2])  # swap columns: determinant -1
    return UnimodularMap(
        m[0], m[1], m[2], m[3],
        Fraction(rng.randint(-5, 5)), Fraction(rng.randint(-5, 5)),
    )


def _suite_ingest(config: RunConfig) -> list[dict]:
    checks: list[dict] = []
    for kind, n in (("markov", 500), ("fibonacci", 1000), ("pell", 1000)):
        report = oeis.cross_check(
            kind, n, path=config.bfile, cache_dir=config.cache_dir
        )
        _check(checks, f"cross-check-{kind}", report.ok,
               "" if report.ok else str(report.first_mismatch))
    markov_bfile = oeis.load_bfile("markov", cache_dir=config.cache_dir)
    anchors = (
        markov_bfile.entries[33] == pell(15)
        and markov_bfile.entries[34] == fibonacci(27)
    )
    _check(checks, "pinned-anchors", anchors)
    return checks


_SUITES = {
    "markov": _suite_markov,
    "capacity": _suite_capacity,
    "ordering": _suite_ordering,
    "lattice": _suite_lattice,
    "ingest": _suite_ingest,
}


def cmd_verify(config: RunConfig) -> int:
    names = config.suites or tuple(_SUITES)
    report = {"command": "verify", "suites": {}, "passed": True}
    lines = []
    for name in names:
        if name not in _SUITES:
            raise ValueError(f"unknown suite {name!r}")
        checks = _SUITES[name](config)
        passed = all(c["passed"] for c in checks)
        report["suites"][name] = {"passed": passed, "checks": checks}
        report["passed"] = report["passed"] and passed
        for c in checks:
            status = "PASS" if c["passed"] else "FAIL"
            suffix = f"  [{c['witness']}]" if c["witness"] and not c["passed"] else ""
            lines.append(f"{status}  {name}:{c['name']}{suffix}")
    lines.append("all suites passed" if report["passed"] else "FAILURES above")
    if config.fmt == "json":
        _emit(config, json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        _emit(config, "\n".join(lines) + "\n")
    return EXIT_OK if report["passed"] else EXIT_VERIFICATION


def cmd_complete(config: RunConfig) -> int:
    if config.threshold is None:
        raise ValueError("complete needs --threshold p/q (must exceed 1/3)")
    report = ordered_prefix_complete_above(config.threshold, config.n_max)
    if config.fmt == "json":
        _emit(config, report.to_json_str() + "\n")
    else:
        lines = [
            f"threshold = {report.threshold} (~{_preview(report.threshold, 6)})",
            f"n_max = {report.n_max}",
            f"records: {len(report.records)} "
            f"(span-1 at {[r.n for r in report.records if r.span == 1]}, "
            f"span-2 at {[r.n for r in report.records if r.span == 2]})",
            f"sequences with limit above threshold: {report.active_sequences}",
            f"tail: {len(report.tail_exact)} exact leading-capacity checks, "
            f"monotone bound from index {report.tail_bound_index} "
            f"(m = {report.tail_bound_m})",
            f"certified: {report.certified}",
        ]
        lines.extend(f"condition: {c}" for c in report.conditions)
        lines.extend(f"FAILURE: {f}" for f in report.failures)
        _emit(config, "\n".join(lines) + "\n")
    return EXIT_OK if report.certified else EXIT_VERIFICATION


_COMMANDS = {
    "widths": cmd_widths,
    "triples": cmd_triples,
    "subtree": cmd_subtree,
    "order": cmd_order,
    "irregularities": cmd_irregularities,
    "triangle": cmd_triangle,
    "width": cmd_width,
    "limits": cmd_limits,
    "complete": cmd_complete,
    "verify": cmd_verify,
    "plot": cmd_plot,
    "ingest": cmd_ingest,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mbl",
        description="Exact computations on Markov triples, their capacities, "
        "and the associated base triangles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.add_argument("--format", dest="fmt", default="text",
                       choices=("text", "json", "csv"))
        p.add_argument("--out", default=None)
        return p

    p = add("widths", "capacity table bc/a")
    p.add_argument("--triple", default=None)

    p = add("triples", "enumerate triples up to a bound")
    p.add_argument("--max-bound", type=int, default=1000)

    p = add("subtree", "bivalent subtree preserving one entry")
    p.add_argument("--triple", required=True)
    p.add_argument("--preserve", type=int, default=None)
    p.add_argument("--depth", type=int, default=3)

    p = add("order", "alternating decreasing capacity order below an apex")
    p.add_argument("--triple", required=True)
    p.add_argument("--depth", type=int, default=3)

    p = add("irregularities", "scan the juxtaposition inequality")
    p.add_argument("--n-max", type=int, default=450)
    p.add_argument("--fixture", action="store_true")

    p = add("triangle", "base triangle data for a triple")
    p.add_argument("--triple", required=True)

    p = add("width", "lattice width of a triangle or polygon file")
    p.add_argument("--triple", default=None)
    p.add_argument("--polygon", default=None)

    p = add("limits", "per-sequence limits and Lagrange values")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--k", type=int, default=4)

    p = add("complete", "certify the ordered prefix above a threshold")
    p.add_argument("--threshold", required=True)
    p.add_argument("--n-max", type=int, default=450)

    p = add("verify", "run invariant suites")
    p.add_argument("--suite", action="append", default=None,
                   choices=tuple(_SUITES), dest="suites")
    p.add_argument("--max-bound", type=int, default=10_000)
    p.add_argument("--n-max", type=int, default=60)
    p.add_argument("--fixture", action="store_true")
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--bfile", default=None)

    p = add("plot", "deterministic SVG figures")
    p.add_argument("--figure", required=True,
                   choices=("order5", "numberline", "triangle"))
    p.add_argument("--triple", default=None)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--n", type=int, default=33)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--delta", default="1/4")

    p = add("ingest", "load and cross-check sequence b-files")
    p.add_argument("--kind", default="all",
                   choices=("all",) + tuple(oeis.SEQUENCE_IDS))
    p.add_argument("--n", type=int, default=500)
    p.add_argument("--bfile", default=None)
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--offline", action="store_true")
    p.add_argument("--fetch", action="store_true")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    config = RunConfig(command=args.command)
    for name in vars(args):
        if name in ("command",):
            continue
        value = getattr(args, name)
        if value is None and name not in ("out", "triple", "polygon", "bfile",
                                          "preserve", "threshold", "suites",
                                          "cache_dir", "figure"):
            continue
        if name == "triple" and value is not None:
            value = _parse_triple(value)
        elif name == "threshold" and value is not None:
            value = _parse_rational(value)
        elif name == "delta":
            value = _parse_rational(value)
        elif name == "suites":
            value = tuple(value) if value else ()
        setattr(config, name, value)
    return config


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        return _COMMANDS[config.command](config)
    except ValueError as exc:
        print(f"mbl: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VerificationError as exc:
        print(f"mbl: verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    except OSError as exc:
        print(f"mbl: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
