"""Command line interface: ``cnum classify|scan|density|classgroup|tunnell|lvalue``.

Exit codes: 0 ok, 2 domain error (JSON on stdout), 64 usage, 74 I/O.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from . import analytic
from .arith import squarefree_mask
from .cache import GenusCache
from .certify import Options, Verdict, _check_range, classify, density_report
from .classgroup import class_group
from .errors import CnumError
from .parity import Convention

EX_OK, EX_DOMAIN, EX_USAGE, EX_IOERR = 0, 2, 64, 74

CSV_HEADER = [
    "n", "status", "rules", "s1", "s2", "g", "h2",
    "tunnell_a", "tunnell_b", "point_x", "point_y", "ms",
]


@dataclass
class ReportRecord:
    n: int
    status: str
    provenance: list[str] = field(default_factory=list)
    s1: int | None = None
    s2: int | None = None
    theorem1: int | None = None
    g: int | None = None
    h2: int | None = None
    tunnell_counts: list[int] | None = None
    point: str | None = None
    ms: float | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "ReportRecord":
        return cls(**json.loads(text))

    def csv_row(self) -> list[str]:
        def cell(v):
            return "" if v is None else str(v)

        a, b = self.tunnell_counts or (None, None)
        px, py = self.point.split(",") if self.point else (None, None)
        return [
            cell(self.n), self.status, ";".join(self.provenance), cell(self.s1),
            cell(self.s2), cell(self.g), cell(self.h2), cell(a), cell(b),
            cell(px), cell(py), cell(self.ms),
        ]

    @classmethod
    def from_csv_row(cls, row: dict[str, str]) -> "ReportRecord":
        def num(v, kind=int):
            return None if v == "" else kind(v)

        n = int(row["n"])
        s1 = num(row["s1"])
        counts = None
        if row["tunnell_a"] != "":
            counts = [int(row["tunnell_a"]), int(row["tunnell_b"])]
        point = f"{row['point_x']},{row['point_y']}" if row["point_x"] else None
        return cls(
            n=n,
            status=row["status"],
            provenance=row["rules"].split(";") if row["rules"] else [],
            s1=s1,
            s2=num(row["s2"]),
            theorem1=s1 if n % 8 in (1, 2, 3) else None,
            g=num(row["g"]),
            h2=num(row["h2"]),
            tunnell_counts=counts,
            point=point,
            ms=num(row["ms"], float),
        )


def make_record(v: Verdict, genus: tuple[int, int, int], ms: float | None = None) -> ReportRecord:
    g, _, h2 = genus
    return ReportRecord(
        n=v.n,
        status=v.status.value,
        provenance=v.rules,
        # for n = 1, 2, 3 mod 8 the s1 column carries the single decomposition sum
        s1=v.theorem1 if v.theorem1 is not None else v.s1,
        s2=v.s2,
        theorem1=v.theorem1,
        g=g,
        h2=h2,
        tunnell_counts=list(v.tunnell) if v.tunnell else None,
        point=str(v.point) if v.point else None,
        ms=ms,
    )


def _records_chunk(args):
    ns, options, known, timing = args
    fresh: dict[int, tuple[int, int, int]] = {}
    out = []
    for n in ns:
        t0 = time.perf_counter()
        v = classify(n, options)
        genus = known.get(n)
        if genus is None:
            cg = class_group(n)
            genus = fresh[n] = (cg.g, cg.h, cg.h2)
        ms = round((time.perf_counter() - t0) * 1000, 3) if timing else None
        out.append(make_record(v, genus, ms))
    return out, fresh


def scan_records(lo, hi, options=Options(), jobs=1, cache=None, timing=False, chunk=64):
    """ReportRecords for square-free n in [lo, hi], in n-order."""
    if hi < lo:
        return []
    _check_range(lo, hi)
    cache = cache if cache is not None else GenusCache()
    ns = [n for n, ok in zip(range(lo, hi + 1), squarefree_mask(lo, hi).tolist()) if ok]
    pieces = []
    for i in range(0, len(ns), chunk):
        part = ns[i : i + chunk]
        known = {n: cache.table[n] for n in part if n in cache.table}
        pieces.append((part, options, known, timing))
    records = []
    if jobs <= 1:
        results = map(_records_chunk, pieces)
        for recs, fresh in results:
            records += recs
            cache.merge(fresh)
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for recs, fresh in pool.map(_records_chunk, pieces):
                records += recs
                cache.merge(fresh)
    return records


def write_records(records, fmt: str, fh) -> None:
    if fmt == "csv":
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in records:
            w.writerow(r.csv_row())
    else:
        for r in records:
            fh.write(r.to_json() + "\n")


# --- argument handling ---------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EX_USAGE)


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cnum", description="Congruent number certification.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", help="classify one square-free n")
    c.add_argument("n", type=_positive_int)
    c.add_argument("--point-bound", type=int, default=100)
    c.add_argument("--convention", choices=["multiset", "labeled"], default="multiset")

    s = sub.add_parser("scan", help="classify every square-free n in a range")
    s.add_argument("--from", dest="lo", type=_positive_int, required=True)
    s.add_argument("--to", dest="hi", type=_positive_int, required=True)
    s.add_argument("--format", choices=["csv", "jsonl"], default="csv")
    s.add_argument("--jobs", type=_positive_int, default=1)
    s.add_argument("--convention", choices=["multiset", "labeled"], default="multiset")
    s.add_argument("--point-bound", type=int, default=100)
    s.add_argument("--out", default="-")
    s.add_argument("--timing", action="store_true", help="fill the ms column")

    d = sub.add_parser("density", help="certification counts per residue class")
    d.add_argument("--limit", type=int, required=True)
    d.add_argument("--residue", type=int, choices=[1, 2, 3, 5, 6, 7])
    d.add_argument("--format", choices=["table", "json"], default="table")
    d.add_argument("--jobs", type=_positive_int, default=1)

    g = sub.add_parser("classgroup", help="class group data of Q(sqrt(-d))")
    g.add_argument("d", type=_positive_int)
    g.add_argument("--format", choices=["table", "json"], default="json")

    t = sub.add_parser("tunnell", help="Tunnell lattice counts")
    t.add_argument("n", type=_positive_int)
    t.add_argument("--format", choices=["table", "json"], default="json")

    lv = sub.add_parser("lvalue", help="L(E_n,1) or L'(E_n,1)")
    lv.add_argument("n", type=_positive_int)
    lv.add_argument("--order", type=int, choices=[0, 1], default=0)
    lv.add_argument("--eps", type=float, default=1e-8)
    lv.add_argument("--format", choices=["table", "json"], default="json")
    return p


def _emit(obj: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(obj) + "\n")
    else:
        for k, v in obj.items():
            out.write(f"{k:>16}  {v}\n")


def _options(args) -> Options:
    return Options(convention=Convention(args.convention), point_bound=args.point_bound)


def _cmd_classify(args, out) -> int:
    cache = GenusCache()
    v = classify(args.n, _options(args))
    rec = make_record(v, cache.get(args.n))
    out.write(rec.to_json() + "\n")
    _flush_quietly(cache)
    return EX_OK


def _cmd_scan(args, out) -> int:
    cache = GenusCache()
    records = scan_records(args.lo, args.hi, _options(args), args.jobs, cache, args.timing)
    buf = io.StringIO()
    write_records(records, args.format, buf)
    try:
        if args.out == "-":
            out.write(buf.getvalue())
        else:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(buf.getvalue())
    except OSError as exc:
        print(json.dumps({"error": "io error", "message": str(exc)}), file=out)
        return EX_IOERR
    _flush_quietly(cache)
    return EX_OK


def _flush_quietly(cache: GenusCache) -> None:
    # the cache only affects timings, so a read-only location is not an error
    try:
        cache.flush()
    except OSError:
        pass


def _cmd_density(args, out) -> int:
    report = density_report(args.limit, args.residue, jobs=args.jobs)
    data = report.as_dict()
    if args.format == "json":
        out.write(json.dumps(data) + "\n")
        return EX_OK
    out.write(f"limit {data['limit']}\n")
    out.write(f"{'class':>5} {'sqfree':>8} {'congruent':>10} {'non_cong':>10} "
              f"{'conj':>8} {'unknown':>8} {'f_cong':>8} {'f_non':>8}\n")
    for row in data["classes"]:
        st, fr = row["by_status"], row["fractions"]
        out.write(
            f"{row['residue']:>5} {row['squarefree']:>8} {st.get('congruent', 0):>10} "
            f"{st.get('non_congruent', 0):>10} {st.get('conjecturally_congruent', 0):>8} "
            f"{st.get('unknown', 0):>8} {fr['congruent']:>8.4f} {fr['non_congruent']:>8.4f}\n"
        )
    return EX_OK


def _cmd_classgroup(args, out) -> int:
    cg = class_group(args.d)
    _emit(
        {
            "d": cg.d, "D": cg.D, "h": cg.h,
            "divisors": list(cg.elementary_divisors), "g": cg.g, "h2": cg.h2,
            "forms": [str(f) for f in cg.forms] if cg.h <= 64 else None,
        },
        args.format, out,
    )
    return EX_OK


def _cmd_tunnell(args, out) -> int:
    a, b = analytic.tunnell_counts(args.n)
    labels = ("A", "B") if args.n % 2 else ("C", "D")
    _emit(
        {"n": args.n, labels[0]: a, labels[1]: b,
         "nonvanishing": 2 * a != b},
        args.format, out,
    )
    return EX_OK


def _cmd_lvalue(args, out) -> int:
    value = analytic.l_value(args.n, args.order, args.eps)
    obj = {"n": args.n, "order": args.order, "value": value,
           "omega": analytic.real_period(args.n)}
    if args.order == 0:
        curly = analytic.curly_L_rank0(args.n, min(args.eps, 1e-8))
        r, dev = analytic.nearest_integer(curly)
        obj.update(curly_L=curly, nearest=r,
                   consistency="ok" if dev < analytic.CURLY_L_TOLERANCE else "fail")
        if args.n == 1:
            obj["consistency"] = "ok" if abs(curly - 1) < 1e-6 else "fail"
    _emit(obj, args.format, out)
    return EX_OK


COMMANDS = {
    "classify": _cmd_classify,
    "scan": _cmd_scan,
    "density": _cmd_density,
    "classgroup": _cmd_classgroup,
    "tunnell": _cmd_tunnell,
    "lvalue": _cmd_lvalue,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except CnumError as exc:
        out.write(json.dumps({"error": exc.code, "message": str(exc)}) + "\n")
        return EX_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
