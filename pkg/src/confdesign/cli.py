"""Command-line front end.

Every subcommand builds a small table (column names plus rows of strings)
and renders it as JSON, CSV or Markdown.  Exact values are written as
``str(Fraction)``, i.e. ``num/den`` or a bare integer; an ``approx`` column
appears only next to irrational roots.

Exit codes: 0 when everything matches, 1 on a mismatch or a failed
computation, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

ENV_CACHE = "CONFDESIGN_CACHE"
ENV_GOLDEN = "CONFDESIGN_GOLDEN"
FORMATS = ("json", "csv", "md")


@dataclass(frozen=True)
class RunConfig:
    q_order: int = 10
    ambient_degree: int = 10
    out_dir: Optional[str] = None
    fmt: str = "json"
    threads: int = 1
    cache_dir: Optional[str] = None
    golden_dir: Optional[str] = None

    def __post_init__(self):
        if self.threads < 1:
            raise ValueError("thread count must be at least 1")
        if self.fmt not in FORMATS:
            raise ValueError(f"format must be one of {', '.join(FORMATS)}")
        if self.q_order < 1 or self.ambient_degree < 2:
            raise ValueError("truncation orders must be positive")

    @classmethod
    def load(cls, path: str) -> "RunConfig":
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise OSError(f"{path}: {exc.strerror}") from exc
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: not valid JSON ({exc.msg})") from exc
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"{path}: unknown config keys {sorted(unknown)}")
        return cls(**data)

    def cache_path(self) -> Optional[Path]:
        root = os.environ.get(ENV_CACHE) or self.cache_dir
        return Path(root) if root else None

    def golden_path(self) -> Path:
        root = os.environ.get(ENV_GOLDEN) or self.golden_dir
        if root:
            return Path(root)
        repo = Path(__file__).resolve().parents[2] / "golden"
        return repo if repo.is_dir() else Path.cwd() / "golden"


class UsageError(Exception):
    pass


@dataclass
class Table:
    command: str
    columns: Tuple[str, ...]
    rows: List[Tuple[str, ...]] = field(default_factory=list)
    meta: Dict[str, object] = field(default_factory=dict)

    def add(self, *cells) -> None:
        if len(cells) != len(self.columns):
            raise ValueError(f"row has {len(cells)} cells, expected {len(self.columns)}")
        self.rows.append(tuple(_cell(x) for x in cells))


def _cell(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (tuple, list)):
        return " ".join(_cell(y) for y in x) if x else "()"
    return str(x)


def render(table: Table, fmt: str) -> str:
    if fmt == "json":
        payload = {"command": table.command, "columns": list(table.columns),
                   "rows": [list(r) for r in table.rows], "meta": table.meta}
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(table.columns)
        w.writerows(table.rows)
        return buf.getvalue()
    lines = ["| " + " | ".join(table.columns) + " |", "|" + "---|" * len(table.columns)]
    lines += ["| " + " | ".join(r) + " |" for r in table.rows]
    if table.meta:
        lines.append("")
        lines += [f"{k}: {table.meta[k]}" for k in sorted(table.meta)]
    return "\n".join(lines) + "\n"


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _root_cells(root) -> Tuple[str, str]:
    from .realroots import QuadraticSurd, approx

    if isinstance(root, Fraction):
        return str(root), "-"
    if isinstance(root, QuadraticSurd):
        return str(root), approx(root.interval(), 8)
    return f"root of {root.minpoly} in [{root.lo}, {root.hi}]", approx((root.lo, root.hi), 8)


# ---------------------------------------------------------------------------
# subcommands


def cmd_kacdet(args, cfg: RunConfig) -> Table:
    from .virasoro import kac_det_vacuum

    content, facs = kac_det_vacuum(args.degree)
    t = Table("kacdet", ("factor", "multiplicity"), meta={"degree": args.degree, "content": str(content)})
    for f, m in facs:
        t.add(f, m)
    return t


def cmd_hwvectors(args, cfg: RunConfig) -> Table:
    from .virasoro import hw_solve

    vecs = hw_solve(args.degree, c=args.c, e=args.e, half=args.half)
    t = Table("hwvectors", ("vector", "a_modes", "b_modes", "coefficient"),
              meta={"degree": args.degree, "count": len(vecs), "half": args.half})
    for i, v in enumerate(vecs):
        for (a, b) in sorted(v):
            t.add(i, a, b, v[(a, b)])
    return t


def cmd_trace(args, cfg: RunConfig) -> Table:
    from .classify import design_vectors
    from .traces import trace_V2, trace_lowest

    vecs = design_vectors(half=args.half)
    if args.vector not in vecs:
        raise UsageError(f"unknown vector {args.vector!r}; choose from {', '.join(vecs)}")
    v = vecs[args.vector]
    if args.target == "module":
        te = trace_lowest(v, half=args.half, ambient_degree=cfg.ambient_degree)
    else:
        te = trace_V2(v, half=args.half, ambient_degree=cfg.ambient_degree)
    t = Table("trace", ("term", "coefficient"),
              meta={"vector": args.vector, "target": args.target, "half": args.half, "trace": te.to_json()})
    t.add("const", te.beta)
    for i in sorted(te.alpha):
        t.add(f"m_{i}", te.alpha[i])
    return t


def _roots_rows(t: Table, label: str, roots) -> None:
    for r in roots:
        t.add(label, *_root_cells(r))


def cmd_classify6(args, cfg: RunConfig) -> Table:
    from . import classify as cl

    cond = cl.cond6_module_half() if args.half else cl.cond6_module()
    t = Table("classify6", ("quantity", "exact", "approx"), meta={"half": args.half})
    t.add("condition", cond.condition, "-")
    t.add("dim V_2", cl.cond6_V2(half=args.half), "-")
    for h in (Fraction(1, 2), Fraction(1), Fraction(3, 2)):
        _roots_rows(t, f"c at h = {h}", cl.condition_roots(cond.condition, h))
    return t


def cmd_classify8(args, cfg: RunConfig) -> Table:
    from . import classify as cl

    cond = cl.cond8_module(args.half)
    t = Table("classify8", ("quantity", "exact", "approx"), meta={"half": args.half})
    t.add("condition", cond.condition, "-")
    d8 = cl.cond8_V2(half=args.half)
    t.add("dim V_2", d8, "-")
    for h in (Fraction(1), Fraction(3, 2)):
        _roots_rows(t, f"c at h = {h}", cl.condition_roots(cond.condition, h))
    _roots_rows(t, "d6 = d8", cl.intersection_roots(args.half))
    _roots_rows(t, "pole of dim V_2", cl.real_roots(d8.denom))
    if not args.half:
        t.add("d8(142/5)", d8.subs({"c": Fraction(142, 5)}).to_rat(), "-")
        t.add("dim V_2 at c = 36, five vectors", cl.c36_exclusion(), "-")
    return t


def _scan(cfg: RunConfig):
    from .classify import diophant_scan, scan_form

    bound = scan_form().bound()
    cache = cfg.cache_path()
    target = cache / f"diophant-{bound}.json" if cache else None
    if target is not None and target.exists():
        data = json.loads(target.read_text())
        return [(Fraction(c), int(d)) for c, d in data]
    scan = diophant_scan(workers=cfg.threads)
    if target is not None:
        try:
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_text(json.dumps([[str(c), d] for c, d in scan]))
        except OSError as exc:
            raise OSError(f"{target}: {exc.strerror}") from exc
    return scan


def cmd_diophant(args, cfg: RunConfig) -> Table:
    t = Table("diophant", ("c", "dim_V2"))
    for c, d in _scan(cfg):
        t.add(c, d)
    return t


def cmd_table1(args, cfg: RunConfig) -> Table:
    from .classify import table1

    t = Table("table1", ("c", "dim_V2", "h_1", "h_2"))
    for row in table1(_scan(cfg)):
        h1, h2 = row.h if row.h is not None else (None, None)
        t.add(row.c, row.d, h1, h2)
    return t


def cmd_extremal_char(args, cfg: RunConfig) -> Table:
    from .qforms import GRID, extremal_character, extremal_design_strength

    ch = extremal_character(args.c, max(cfg.q_order, 8))
    strength, extra = extremal_design_strength(args.c)
    t = Table("extremal-char", ("exponent", "coefficient"),
              meta={"c": args.c, "dim_V2": str(ch.dim_v2), "A": [str(a) for a in ch.A],
                    "lambdas": [str(x) for x in ch.lambdas], "design_strength": strength,
                    "extra_vanishing": list(extra)})
    for i, x in enumerate(ch.series.coeffs[:cfg.q_order]):
        t.add(Fraction(ch.series.lead + GRID * i, GRID), x)
    return t


def cmd_design_strength(args, cfg: RunConfig) -> Table:
    from .qforms import extremal_design_strength

    t = Table("design-strength", ("c", "strength", "extra_vanishing"))
    for c in args.c:
        s, extra = extremal_design_strength(c)
        t.add(c, s, list(extra))
    return t


def cmd_rootsums(args, cfg: RunConfig) -> Table:
    from .rootsys import build_roots, closed_form_sum, special_values, zonal_root_sum

    t = Table("rootsums", ("system", "R4", "R6", "reference_R6", "match"))
    if args.family:
        for l in (4, 6):
            t.meta[f"closed_form_R{l}"] = str(closed_form_sum(l, args.family))
        for n in args.ranks:
            phi = build_roots(args.family, n)
            r4, r6 = zonal_root_sum(4, phi), zonal_root_sum(6, phi)
            ok = r4 == closed_form_sum(4, args.family, n) and r6 == closed_form_sum(6, args.family, n)
            t.add(phi.label, r4, r6, closed_form_sum(6, args.family, n), ok)
        return t
    for sv in special_values():
        t.add(sv.label, sv.r4, sv.r6, sv.reference_r6, sv.matches)
    return t


def cmd_lattice_design(args, cfg: RunConfig) -> Table:
    from .lattice import bundled_lattice, design_report, load_gram, shell_enum

    lat = load_gram(args.gram) if args.gram else bundled_lattice(args.lattice)
    shell = shell_enum(lat, args.norm, workers=cfg.threads)
    rep = design_report(shell, args.tmax)
    t = Table("lattice-design", ("degree", "method", "vanishes", "witness_value"),
              meta={"lattice": lat.name, "norm": str(args.norm), "shell_size": len(shell.vectors),
                    "strength": rep.strength, "tmax": args.tmax})
    for ch in rep.checks:
        t.add(ch.degree, ch.method, ch.vanishes, ch.value)
    return t


def cmd_a1_check(args, cfg: RunConfig) -> Table:
    from .qforms import a1_identity_check

    rep = a1_identity_check(max(cfg.q_order, 2) + 1)
    t = Table("a1-check", ("order", "trivial_multiplicity", "vacuum_coefficient"),
              meta={"holds": rep.holds, "failure": rep.failure})
    for i, (a, b) in enumerate(zip(rep.trivial, rep.expected)):
        t.add(i, a, b)
    return t


# name -> argv of the golden runs; regress-all compares their JSON output
GOLDEN_RUNS: Dict[str, List[str]] = {
    "kacdet-8": ["kacdet", "--degree", "8"],
    "hwvectors-4": ["hwvectors", "--degree", "4"],
    "trace-v4-module": ["trace", "--vector", "v4", "--target", "module"],
    "trace-v4-V2": ["trace", "--vector", "v4", "--target", "V2"],
    "classify6": ["classify6"],
    "classify6-half": ["classify6", "--half"],
    "classify8": ["classify8"],
    "classify8-half": ["classify8", "--half"],
    "diophant": ["diophant"],
    "table1": ["table1"],
    "extremal-char-24": ["extremal-char", "--c", "24"],
    "design-strength": ["design-strength"],
    "rootsums": ["rootsums"],
    "lattice-design-E8-2": ["lattice-design", "--lattice", "E8", "--norm", "2"],
    "a1-check": ["a1-check"],
}


def _golden_runs(cfg: RunConfig) -> Dict[str, str]:
    base = replace(cfg, fmt="json", threads=1, q_order=10, ambient_degree=10, cache_dir=None)
    return {name: run_command(argv, base) for name, argv in GOLDEN_RUNS.items()}


def compare_golden(cfg: RunConfig) -> List[str]:
    """Diff lines for every golden run whose output changed."""
    import difflib

    root = cfg.golden_path()
    problems = []
    for name, text in _golden_runs(cfg).items():
        path = root / f"{name}.json"
        if not path.exists():
            problems.append(f"{path}: missing golden file (create it with --bless)")
            continue
        old = path.read_text()
        if old != text:
            diff = difflib.unified_diff(old.splitlines(), text.splitlines(), str(path), "current", lineterm="")
            problems.append("\n".join(diff))
    return problems


def bless_golden(cfg: RunConfig) -> List[Path]:
    root = cfg.golden_path()
    try:
        root.mkdir(parents=True, exist_ok=True)
        written = []
        for name, text in _golden_runs(cfg).items():
            path = root / f"{name}.json"
            path.write_text(text)
            written.append(path)
    except OSError as exc:
        raise OSError(f"{exc.filename or root}: {exc.strerror}") from exc
    return written


def cmd_regress_all(args, cfg: RunConfig) -> Tuple[str, int]:
    from .regress import run_all, summary_line

    if cfg.q_order < 8:
        raise UsageError("regress-all needs --truncation >= 8")
    results = run_all(workers=cfg.threads)
    lines = [summary_line(r) for r in results]
    failed = [r for r in results if not r.passed]
    if args.bless:
        paths = bless_golden(cfg)
        lines.append(f"blessed {len(paths)} golden files in {cfg.golden_path()}")
        golden = []
    else:
        golden = compare_golden(cfg)
        lines.append(f"golden files: {'all match' if not golden else f'{len(golden)} differ'}")
    if failed or golden:
        lines.append("")
        lines.append("diff report")
        lines.extend(r.report() for r in failed)
        lines.extend(golden)
    code = 1 if failed or golden else 0
    if args.fmt == "json":
        payload = {"passed": code == 0,
                   "criteria": [{"id": r.id, "name": r.name, "passed": r.passed, "error": r.error,
                                 "mismatches": [c.line() for c in r.failures()]} for r in results],
                   "golden_differences": golden}
        return json.dumps(payload, indent=2, sort_keys=True) + "\n", code
    return "\n".join(lines) + "\n", code


COMMANDS: Dict[str, Callable] = {
    "kacdet": cmd_kacdet,
    "hwvectors": cmd_hwvectors,
    "trace": cmd_trace,
    "classify6": cmd_classify6,
    "classify8": cmd_classify8,
    "diophant": cmd_diophant,
    "table1": cmd_table1,
    "extremal-char": cmd_extremal_char,
    "design-strength": cmd_design_strength,
    "rootsums": cmd_rootsums,
    "lattice-design": cmd_lattice_design,
    "a1-check": cmd_a1_check,
    "regress-all": cmd_regress_all,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON file with RunConfig fields")
    common.add_argument("--format", choices=FORMATS, dest="fmt")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    common.add_argument("--threads", type=int)
    common.add_argument("--truncation", type=int, metavar="N", help="q-series order")
    common.add_argument("--bless", action="store_true", help="rewrite golden files (regress-all)")

    p = argparse.ArgumentParser(prog="confdesign", description="Conformal design verifications.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    s = sub.add_parser("kacdet", parents=[common], help="factored Kac determinant of the vacuum module")
    s.add_argument("--degree", type=int, default=8)

    s = sub.add_parser("hwvectors", parents=[common], help="highest-weight vectors in the vacuum tensor")
    s.add_argument("--degree", type=int, default=4)
    s.add_argument("--c", type=_frac)
    s.add_argument("--e", type=_frac)
    s.add_argument("--half", action="store_true")

    s = sub.add_parser("trace", parents=[common], help="zero-mode trace of a design vector")
    s.add_argument("--vector", default="v2")
    s.add_argument("--target", choices=("module", "V2"), default="module")
    s.add_argument("--half", action="store_true")

    for name in ("classify6", "classify8"):
        s = sub.add_parser(name, parents=[common], help=f"{name[-1]}-design conditions")
        s.add_argument("--half", action="store_true")

    sub.add_parser("diophant", parents=[common], help="c with integral dim V_2")
    sub.add_parser("table1", parents=[common], help="candidate (c, dim V_2, h) table")

    s = sub.add_parser("extremal-char", parents=[common], help="extremal character")
    s.add_argument("--c", type=int, default=24)

    s = sub.add_parser("design-strength", parents=[common], help="design strength of extremal VOAs")
    s.add_argument("--c", type=int, nargs="+", default=[24, 32, 40, 48])

    s = sub.add_parser("rootsums", parents=[common], help="zonal harmonic sums over root systems")
    s.add_argument("--family", choices=("A", "B", "C", "D"))
    s.add_argument("--ranks", type=int, nargs="+", default=list(range(4, 9)))

    s = sub.add_parser("lattice-design", parents=[common], help="design strength of a lattice shell")
    s.add_argument("--lattice", default="E8")
    s.add_argument("--gram", metavar="PATH", help="Gram matrix file instead of a bundled lattice")
    s.add_argument("--norm", type=_frac, default=Fraction(2))
    s.add_argument("--tmax", type=int, default=8)

    sub.add_parser("a1-check", parents=[common], help="A_1 character identity")
    sub.add_parser("regress-all", parents=[common], help="full acceptance suite and golden comparison")
    return p


def _config(args, base: Optional[RunConfig]) -> RunConfig:
    cfg = RunConfig.load(args.config) if args.config else (base or RunConfig())
    updates = {}
    if args.fmt:
        updates["fmt"] = args.fmt
    if args.threads is not None:
        updates["threads"] = args.threads
    if args.truncation is not None:
        updates["q_order"] = args.truncation
    return replace(cfg, **updates) if updates else cfg


def execute(argv: Sequence[str], base: Optional[RunConfig] = None) -> Tuple[str, int, RunConfig, argparse.Namespace]:
    args = build_parser().parse_args(list(argv))
    try:
        cfg = _config(args, base)
    except ValueError as exc:
        raise UsageError(str(exc))
    out = COMMANDS[args.command](args, cfg)
    if isinstance(out, tuple):
        return out[0], out[1], cfg, args
    return render(out, cfg.fmt), 0, cfg, args


def run_command(argv: Sequence[str], cfg: Optional[RunConfig] = None) -> str:
    """Rendered output of one subcommand (library entry point)."""
    return execute(argv, cfg)[0]


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        text, code, cfg, args = execute(argv)
    except SystemExit as exc:  # argparse usage errors
        return int(exc.code or 0) and 2
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ArithmeticError) as exc:
        # DegenerateChargeError, BranchPointError and lattice DomainError are ValueErrors
        print(f"hypothesis violated: {exc}", file=sys.stderr)
        return 1
    target = args.out or (str(Path(cfg.out_dir) / f"{args.command}.{cfg.fmt}") if cfg.out_dir else None)
    if target:
        try:
            Path(target).parent.mkdir(parents=True, exist_ok=True)
            Path(target).write_text(text)
        except OSError as exc:
            print(f"I/O error: {target}: {exc.strerror}", file=sys.stderr)
            return 1
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
