"""``permbij`` command line: count, distribution, map, verify, series, export."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from collections import Counter
from dataclasses import dataclass

from . import genfun
from .bijections import alpha, beta, phi, psi
from .classes import ALIASES, resolve
from .errors import InvalidWordError, PreconditionError, StructureError
from .invseq import INV_STAT_NAMES, enumerate_inversion_class, inv_statistics, lehmer_code, ms_code
from .permcore import STAT_NAMES, as_permutation, avoiders, format_word, numeric_stat, parse_word, statistics
from .verify import SUITES, default_workers, run_suite

DEFAULT_MAX_N = 12
FORMATS = ("text", "json", "csv", "bfile")
BIJECTIONS = {"phi": phi, "psi": psi, "alpha": alpha, "beta": beta, "lehmer": lehmer_code, "ms": ms_code}
SERIES_KINDS = ("closed-form", "succession", "f-poly", "brute-force")


@dataclass
class CommandConfig:
    command: str
    n: int | None = None
    n_max: int | None = None
    cls: str | None = None
    bijection: str | None = None
    input: str | None = None
    stats: tuple = ()
    suite: str | None = None
    kind: str = "closed-form"
    format: str = "text"
    workers: int = 1
    max_n: int = DEFAULT_MAX_N
    output: str | None = None


class UsageError(Exception):
    pass


def _levels(cfg: CommandConfig) -> list:
    if cfg.n is not None and cfg.n_max is not None:
        raise UsageError("give --n or --n-max, not both")
    if cfg.n is not None:
        levels = [cfg.n]
    elif cfg.n_max is not None:
        levels = list(range(1, cfg.n_max + 1))
    else:
        raise UsageError("--n or --n-max is required")
    if any(k < 1 for k in levels):
        raise UsageError("n must be positive")
    return levels


def _guard(levels, cfg: CommandConfig):
    if max(levels) > cfg.max_n:
        raise UsageError(
            f"n={max(levels)} exceeds the enumeration limit {cfg.max_n}; raise it with --max-n"
        )


def _emit_table(header, rows, fmt: str) -> str:
    if fmt == "json":
        return json.dumps([dict(zip(header, r)) for r in rows])
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue().rstrip("\n")
    if fmt == "bfile":
        if len(header) != 2:
            raise UsageError("bfile output needs a single value per n")
        return genfun.bfile([r[1] for r in rows], offset=rows[0][0] if rows else 1).rstrip("\n")
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    lines = ["  ".join(str(x).rjust(w) for x, w in zip(r, widths)) for r in [header, *rows]]
    return "\n".join(lines)


def cmd_count(cfg: CommandConfig) -> str:
    kind, pats = resolve(cfg.cls or "")
    levels = _levels(cfg)
    if kind == "inv" and pats == "201,210":
        counts = [genfun.count_by_succession(k) for k in levels]  # no enumeration needed
    else:
        _guard(levels, cfg)
        counts = [
            len(avoiders(k, pats)) if kind == "perm" else len(enumerate_inversion_class(k, pats))
            for k in levels
        ]
    if cfg.n is not None and cfg.format == "text":
        return str(counts[0])
    return _emit_table(("n", "count"), list(zip(levels, counts)), cfg.format)


def cmd_distribution(cfg: CommandConfig) -> str:
    kind, pats = resolve(cfg.cls or "")
    levels = _levels(cfg)
    _guard(levels, cfg)
    names = cfg.stats or (("exc", "rlmin", "lmaxz") if kind == "perm" else ("rep", "rlmin", "zero"))
    known = STAT_NAMES if kind == "perm" else INV_STAT_NAMES
    unknown = [s for s in names if s not in known]
    if unknown:
        raise UsageError(f"unknown statistic(s) {', '.join(unknown)}; choose from {', '.join(known)}")
    rows = []
    for k in levels:
        table: Counter = Counter()
        if kind == "perm":
            for w in avoiders(k, pats):
                rec = statistics(w)
                table[tuple(numeric_stat(rec, s) for s in names)] += 1
        else:
            for e in enumerate_inversion_class(k, pats):
                rec = inv_statistics(e)
                table[tuple(getattr(rec, s) for s in names)] += 1
        rows += [(k, *key, c) for key, c in sorted(table.items())]
    if cfg.format == "bfile":
        raise UsageError("bfile output is only for count, series and export")
    return _emit_table(("n", *names, "count"), rows, cfg.format)


def cmd_map(cfg: CommandConfig) -> str:
    if not cfg.bijection or cfg.input is None:
        raise UsageError("map needs --bijection and --input")
    w = parse_word(cfg.input)
    fn = BIJECTIONS[cfg.bijection]
    image = fn(w)
    if cfg.bijection in ("lehmer", "ms"):
        src = statistics(as_permutation(w)).as_dict()
        dst = inv_statistics(image).as_dict()
    else:
        src = statistics(w).as_dict() if w else {}
        dst = statistics(image).as_dict() if image else {}
    if cfg.format == "json":
        return json.dumps({"bijection": cfg.bijection, "input": list(w), "image": list(image),
                           "input_statistics": src, "image_statistics": dst})
    if cfg.format != "text":
        raise UsageError("map supports text and json output")

    def fmt(rec):
        return "  ".join(f"{k}={v}" for k, v in rec.items())

    return "\n".join([
        format_word(image),
        "input statistics: " + fmt(src),
        "image statistics: " + fmt(dst),
    ])


def cmd_verify(cfg: CommandConfig) -> tuple:
    names = list(SUITES) if cfg.suite == "all" else [cfg.suite]
    if not cfg.suite or any(s not in SUITES for s in names):
        raise UsageError(f"--suite must be one of: all, {', '.join(SUITES)}")
    levels = _levels(cfg)
    n = max(levels)
    out, ok = [], True
    for name in names:
        if name not in ("algebraic-equation",):
            _guard([n], cfg)
        res = run_suite(name, n, cfg.workers)
        ok &= res.passed
        out.append(res.report())
    return "\n".join(out), 0 if ok else 1


def _series_values(cfg: CommandConfig) -> list:
    levels = _levels(cfg)
    top = max(levels)
    if cfg.kind == "closed-form":
        vals = genfun.closed_form_coefficients(top)[1:]
    elif cfg.kind == "succession":
        vals = genfun.succession_counts(top)
    elif cfg.kind == "f-poly":
        vals = [genfun.f_value(k) for k in range(1, top + 1)]
    elif cfg.kind == "brute-force":
        _guard([top], cfg)
        vals = [len(enumerate_inversion_class(k)) for k in range(1, top + 1)]
    else:
        raise UsageError(f"--kind must be one of {', '.join(SERIES_KINDS)}")
    return [(k, vals[k - 1]) for k in levels]


def cmd_series(cfg: CommandConfig) -> str:
    rows = _series_values(cfg)
    if cfg.format == "json":
        coeffs = [0] * (rows[-1][0] + 1)
        for k, v in rows:
            coeffs[k] = v
        return genfun.series_json(coeffs, "t")
    if cfg.format == "text":
        return " ".join(str(v) for _, v in rows)
    return _emit_table(("n", "a(n)"), rows, cfg.format)


def cmd_export(cfg: CommandConfig) -> str:
    rows = _series_values(cfg)
    body = genfun.bfile([v for _, v in rows], offset=rows[0][0])
    if cfg.output:
        with open(cfg.output, "w", encoding="ascii", newline="\n") as fh:
            fh.write(body)
        return f"wrote {len(rows)} terms to {cfg.output}"
    return body.rstrip("\n")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="permbij", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def sizes(p, n_help="single length"):
        p.add_argument("--n", type=int, help=n_help)
        p.add_argument("--n-max", type=int, help="all lengths 1..N")
        p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N,
                       help=f"safety limit for full enumeration (default {DEFAULT_MAX_N})")

    def out(p, choices=FORMATS):
        p.add_argument("--format", choices=choices, default="text")

    p = sub.add_parser("count", help="class sizes")
    p.add_argument("--class", dest="cls", required=True, help=f"alias ({', '.join(ALIASES)}) or patterns")
    sizes(p)
    out(p)

    p = sub.add_parser("distribution", help="joint statistic tables")
    p.add_argument("--class", dest="cls", required=True)
    p.add_argument("--stats", help="comma-separated statistic names")
    sizes(p)
    out(p, ("text", "json", "csv"))

    p = sub.add_parser("map", help="apply a bijection to one word")
    p.add_argument("--bijection", choices=sorted(BIJECTIONS), required=True)
    p.add_argument("--input", required=True, help='one-line notation, e.g. "3 1 2"')
    out(p, ("text", "json"))

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, help="suite name or 'all'")
    p.add_argument("--workers", type=int, default=None,
                   help="worker processes (default from PERMBIJ_WORKERS, else 1)")
    sizes(p, "largest length checked")

    for name, help_ in (("series", "counting sequence coefficients"), ("export", "write an OEIS b-file")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--kind", choices=SERIES_KINDS, default="closed-form")
        sizes(p, "last index")
        if name == "series":
            out(p)
        else:
            p.add_argument("--output", help="file to write (default stdout)")
    return ap


def config_from_args(ns: argparse.Namespace) -> CommandConfig:
    cfg = CommandConfig(command=ns.command)
    for key in ("n", "n_max", "cls", "bijection", "input", "suite", "kind", "format", "max_n", "output"):
        if hasattr(ns, key) and getattr(ns, key) is not None:
            setattr(cfg, key, getattr(ns, key))
    if getattr(ns, "stats", None):
        cfg.stats = tuple(s.strip() for s in ns.stats.split(",") if s.strip())
    workers = getattr(ns, "workers", None)
    cfg.workers = workers if workers else default_workers()
    return cfg


def run(cfg: CommandConfig) -> tuple:
    """Execute a command; returns (exit status, output text)."""
    handlers = {"count": cmd_count, "distribution": cmd_distribution, "map": cmd_map,
                "series": cmd_series, "export": cmd_export}
    if cfg.command == "verify":
        text, status = cmd_verify(cfg)
        return status, text
    return 0, handlers[cfg.command](cfg)


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        status, text = run(config_from_args(ns))
    except PreconditionError as exc:
        print(f"permbij: precondition failed (pattern {exc.pattern}): {exc}", file=sys.stderr)
        return 2
    except (InvalidWordError, StructureError, UsageError) as exc:
        print(f"permbij: {exc}", file=sys.stderr)
        return 2
    if text:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
