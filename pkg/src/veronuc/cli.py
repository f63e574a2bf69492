"""Command-line front end.

Exit status: 0 on success, 1 when a brute-force result contradicts the
closed-form prediction, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from . import mono, vero
from .errors import VeronucError
from .gf import MAX_ORDER, is_prime, parse_field_spec

SCHEMA_VERSION = "1"
CSV_COLUMNS = ["p", "k", "q", "m", "t", "predicted_dim", "bruteforce_dim", "basis_match", "small_field"]

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class ScanGrid:
    primes: list[int]
    max_k: int
    m_range: tuple[int, int]
    t_range: tuple[int, int]
    require_q_ge_t: bool = False
    max_q: int | None = None

    def __post_init__(self):
        if not self.primes:
            raise UsageError("no primes given")
        for p in self.primes:
            if not is_prime(p):
                raise UsageError(f"{p} is not prime")
        if self.max_k < 1:
            raise UsageError("--max-k must be at least 1")
        for name, (lo, hi) in (("m", self.m_range), ("t", self.t_range)):
            if lo > hi:
                raise UsageError(f"empty {name} range {lo}-{hi}")
        if self.m_range[0] < 0 or self.t_range[0] < 1:
            raise UsageError("need m >= 0 and t >= 1")
        if self.max_q is None:
            for p in self.primes:
                if p**self.max_k > MAX_ORDER:
                    raise UsageError(f"{p}^{self.max_k} exceeds the field bound {MAX_ORDER}")
        elif not 2 <= self.max_q <= MAX_ORDER:
            raise UsageError(f"--max-q must lie in [2, {MAX_ORDER}]")

    def cells(self) -> list[tuple[int, int, int, int]]:
        out = []
        for p in self.primes:
            for k in range(1, self.max_k + 1):
                q = p**k
                if self.max_q is not None and q > self.max_q:
                    break
                for m in range(self.m_range[0], self.m_range[1] + 1):
                    for t in range(self.t_range[0], self.t_range[1] + 1):
                        if self.require_q_ge_t and q < t:
                            continue
                        out.append((p, k, m, t))
        return out


@dataclass
class Report:
    entries: list[vero.NucleusReport]
    schema_version: str = SCHEMA_VERSION
    summary: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.summary:
            self.summary = summarize(self.entries)

    @property
    def mismatches(self) -> int:
        return self.summary["mismatches"]

    def to_json(self) -> str:
        return json.dumps({
            "schema_version": self.schema_version,
            "entries": [e.to_dict() for e in self.entries],
            "summary": self.summary,
        }, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        doc = json.loads(text)
        return cls(entries=[vero.NucleusReport.from_dict(e) for e in doc["entries"]],
                   schema_version=doc["schema_version"], summary=doc["summary"])

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for e in self.entries:
            writer.writerow({k: _csv_value(v) for k, v in e.to_dict().items()})
        return buf.getvalue()

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Report) and self.schema_version == other.schema_version
                and self.entries == other.entries and self.summary == other.summary)


def _csv_value(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    return v


def summarize(entries: Sequence[vero.NucleusReport]) -> dict:
    return {
        "entries": len(entries),
        "matches": sum(e.consistent for e in entries),
        "mismatches": sum(not e.consistent for e in entries),
        "small_field": sum(e.small_field for e in entries),
    }


def _verify_cell(cell: tuple[int, int, int, int]) -> vero.NucleusReport:
    return vero.verify(*cell)


def run_scan(grid: ScanGrid, jobs: int = 1) -> Report:
    cells = grid.cells()
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            entries = list(pool.map(_verify_cell, cells))  # map keeps grid order
    else:
        entries = [_verify_cell(c) for c in cells]
    return Report(entries)


# --- argument parsing -------------------------------------------------------------

def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _int_range(text: str) -> tuple[int, int]:
    """``"a-b"``, ``"a..b"`` or ``"a"``, inclusive."""
    parts = text.replace("..", "-").split("-")
    try:
        if len(parts) == 1:
            lo = hi = int(parts[0])
        elif len(parts) == 2:
            lo, hi = int(parts[0]), int(parts[1])
        else:
            raise ValueError
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an inclusive range like 1-3, got {text!r}")
    return lo, hi


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a prime, got {text!r}")
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="veronuc",
        description="Nuclei of Veronese varieties over GF(p^k): closed form against brute force.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_dim = sub.add_parser("dim", help="closed-form nucleus dimension and empty-case label")
    p_dim.add_argument("--m", type=_nonneg, required=True)
    p_dim.add_argument("--t", type=_nonneg, required=True)
    p_dim.add_argument("--p", type=_prime, required=True)

    p_mult = sub.add_parser("multinomial", help="multinomial coefficient, residue mod p, carry check")
    p_mult.add_argument("--t", type=_nonneg, required=True)
    p_mult.add_argument("--e", type=_int_list, required=True, help="e0,e1,...")
    p_mult.add_argument("--p", type=_prime, required=True)

    p_ver = sub.add_parser("verify", help="brute-force nucleus against the formula for one field")
    p_ver.add_argument("--field", required=True, help="p, p^k or p^k/c0,...,ck")
    p_ver.add_argument("--m", type=_nonneg, required=True)
    p_ver.add_argument("--t", type=_nonneg, required=True)
    p_ver.add_argument("--format", choices=["text", "json", "csv"], default="text")

    p_scan = sub.add_parser("scan", help="verify over a grid of fields and parameters")
    p_scan.add_argument("--primes", type=_int_list, required=True)
    p_scan.add_argument("--max-k", type=int, required=True)
    p_scan.add_argument("--m-range", type=_int_range, required=True)
    p_scan.add_argument("--t-range", type=_int_range, required=True)
    p_scan.add_argument("--max-q", type=int, help="skip fields with more elements")
    p_scan.add_argument("--require-q-ge-t", action="store_true")
    p_scan.add_argument("--jobs", type=int, default=1)
    p_scan.add_argument("--format", choices=["text", "json", "csv"], default="json")
    p_scan.add_argument("-o", "--output", help="write the report here instead of stdout")

    p_cls = sub.add_parser("classify", help="empty/non-empty nucleus table")
    p_cls.add_argument("--p", type=_prime, required=True)
    p_cls.add_argument("--m-max", type=_nonneg, required=True)
    p_cls.add_argument("--t-max", type=_nonneg, required=True)
    p_cls.add_argument("--format", choices=["text", "json"], default="text")

    p_demo = sub.add_parser("demo-projection", help="projection of V_2^3 over GF(4) from its nucleus")
    p_demo.add_argument("--format", choices=["text", "json"], default="text")
    return parser


# --- commands ------------------------------------------------------------------------

def cmd_dim(args, out) -> int:
    if args.t < 1:
        raise UsageError("--t must be at least 1")
    d = mono.nucleus_dim_formula(args.m, args.t, args.p)
    label = mono.classify_empty(args.m, args.t, args.p)
    print(f"{d} ({label})", file=out)
    return EXIT_OK


def cmd_multinomial(args, out) -> int:
    exact = mono.multinomial_exact(args.t, args.e)
    residue = mono.multinomial_mod_p(args.t, args.e, args.p)
    flag = mono.carry_free(args.t, args.e, args.p)
    print(f"{exact}, residue {residue}, carry_free {str(flag).lower()}", file=out)
    return EXIT_OK if residue == exact % args.p else EXIT_MISMATCH


def _format_entry(e: vero.NucleusReport) -> str:
    field_name = f"GF({e.p})" if e.k == 1 else f"GF({e.p}^{e.k})"
    verdict = "match" if e.consistent else "MISMATCH"
    note = " (q < t: lower bound only)" if e.small_field else ""
    return (f"{field_name} m={e.m} t={e.t}: predicted {e.predicted_dim}, "
            f"brute {e.bruteforce_dim}, {verdict}{note}")


def _emit(report: Report, fmt: str, out) -> None:
    if fmt == "json":
        print(report.to_json(), file=out)
    elif fmt == "csv":
        out.write(report.to_csv())
    else:
        for e in report.entries:
            print(_format_entry(e), file=out)
        s = report.summary
        print(f"{s['entries']} entries, {s['matches']} match, {s['mismatches']} mismatch, "
              f"{s['small_field']} small-field", file=out)


def cmd_verify(args, out) -> int:
    if args.t < 1:
        raise UsageError("--t must be at least 1")
    F = parse_field_spec(args.field)
    entry = vero.verify(F.p, F.k, args.m, args.t, field=F)
    report = Report([entry])
    if args.format == "text":
        print(_format_entry(entry), file=out)
    else:
        _emit(report, args.format, out)
    return EXIT_OK if report.mismatches == 0 else EXIT_MISMATCH


def cmd_scan(args, out) -> int:
    grid = ScanGrid(args.primes, args.max_k, args.m_range, args.t_range,
                    args.require_q_ge_t, args.max_q)
    report = run_scan(grid, jobs=max(1, args.jobs))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            _emit(report, args.format, fh)
    else:
        _emit(report, args.format, out)
    return EXIT_OK if report.mismatches == 0 else EXIT_MISMATCH


def cmd_classify(args, out) -> int:
    rows = []
    bad = 0
    for m in range(1, args.m_max + 1):
        for t in range(2, args.t_max + 1):
            label = mono.classify_empty(m, t, args.p)
            d = mono.nucleus_dim_formula(m, t, args.p)
            agree = (label == mono.EmptyCase.NON_EMPTY) == (d >= 0)
            bad += not agree
            rows.append({"m": m, "t": t, "label": str(label), "dim": d, "agree": agree})
    if args.format == "json":
        print(json.dumps({"schema_version": SCHEMA_VERSION, "p": args.p, "rows": rows}, indent=2), file=out)
    else:
        print(f"{'m':>3} {'t':>4}  {'dim':>8}  label", file=out)
        for r in rows:
            flag = "" if r["agree"] else "  <-- disagrees"
            print(f"{r['m']:>3} {r['t']:>4}  {r['dim']:>8}  {r['label']}{flag}", file=out)
    return EXIT_OK if bad == 0 else EXIT_MISMATCH


def cmd_demo_projection(args, out) -> int:
    report = vero.projection_demo()
    if args.format == "json":
        print(json.dumps(report.to_dict(), indent=2), file=out)
    else:
        print(f"field {report.field}, m={report.m}, t={report.t}", file=out)
        print(f"nucleus: single point at c_{''.join(map(str, report.nucleus_tuple))}", file=out)
        print(f"injectivity: {report.distinct_images} distinct images of {report.points} points", file=out)
        print(f"lines skew to nucleus: {report.lines_skew_to_nucleus} of {report.lines}", file=out)
        print(f"projected line spans: projective dims {sorted(set(report.projected_line_span_dims))}",
              file=out)
        print(f"variety spans dim {report.variety_span_dim}; projection spans dim "
              f"{report.projected_span_dim}", file=out)
        for name, ok in report.checks.items():
            print(f"  {'ok  ' if ok else 'FAIL'} {name}", file=out)
    return EXIT_OK if report.ok else EXIT_MISMATCH


COMMANDS = {
    "dim": cmd_dim,
    "multinomial": cmd_multinomial,
    "verify": cmd_verify,
    "scan": cmd_scan,
    "classify": cmd_classify,
    "demo-projection": cmd_demo_projection,
}


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, VeronucError, ValueError) as exc:
        print(f"veronuc {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
