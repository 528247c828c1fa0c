"""Command-line front end.

Exit codes: 0 success, 1 internal error, 2 usage or parse error, 3 the input
was understood but rejected (off the variety, preconditions failed, ...).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from pathlib import Path

from . import automorphisms, enumeration, families, lines, pseudo, sieve, variety
from .lines import Family, Line
from .variety import DesignError, DesignPoint, NotOnVarietyError, Rational, fmt_rational

CATALOG_ENV = "DESIGN_LINES_CATALOG"

EXIT_OK, EXIT_INTERNAL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


# argparse treats any token starting with "-" as an option unless it looks
# like a negative number; widen that to points such as "-2,1,3,-6,7"
_NEGATIVE_ARGUMENT = re.compile(r"^-\d[\d/,\-]*$")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = _NEGATIVE_ARGUMENT


# --- output ---------------------------------------------------------------


def _cell(x) -> str:
    if isinstance(x, Rational):
        return fmt_rational(x)
    if isinstance(x, bool):
        return "yes" if x else "no"
    if x is None:
        return ""
    if isinstance(x, (list, tuple)):
        return " ".join(_cell(y) for y in x)
    return str(x)


def _json_value(x):
    if isinstance(x, Rational):
        return fmt_rational(x)
    if isinstance(x, (list, tuple)):
        return [_json_value(y) for y in x]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return str(x)


def render(rows: list[dict], columns: list[str], fmt: str) -> str:
    if fmt == "json":
        return "".join(json.dumps({c: _json_value(r.get(c)) for c in columns}, sort_keys=True,
                                  ensure_ascii=False) + "\n" for r in rows)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_cell(r.get(c)) for c in columns])
        return buf.getvalue()
    table = [columns] + [[_cell(r.get(c)) for c in columns] for r in rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(columns))]
    return "".join("  ".join(s.ljust(w) for s, w in zip(row, widths)).rstrip() + "\n" for row in table)


# --- argument helpers -----------------------------------------------------


def parse_point(text: str) -> DesignPoint:
    try:
        return DesignPoint.parse(text)
    except (DesignError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse point {text!r}: {exc}") from None


def parse_line(text: str) -> Line:
    try:
        return Line.parse(text)
    except DesignError as exc:
        if "parse" in str(exc) or "wrong number" in str(exc):
            raise UsageError(str(exc)) from None
        raise


def _looks_like_line(text: str) -> bool:
    return "(" in text


def load_catalog(args) -> list[enumeration.CatalogEntry]:
    path = args.catalog or os.environ.get(CATALOG_ENV)
    if not path:
        return enumeration.bundled_catalog()
    try:
        return enumeration.load_catalog(Path(path))
    except OSError as exc:
        raise UsageError(f"cannot read catalog {path}: {exc}") from None


def _bound(args) -> tuple[int, str]:
    if args.max_r is not None:
        return args.max_r, "r"
    if args.max_v is not None:
        return args.max_v, "v"
    raise UsageError("give --max-r or --max-v")


def _planes(p: DesignPoint) -> str:
    return "".join(pl.label for pl in sorted(variety.planes_containing(p)))


# --- commands -------------------------------------------------------------


def command_classify(args):
    p = parse_point(args.point)
    variety.require_on_variety(p)
    flat = variety.is_flat(p)
    row = {
        "point": p,
        "on_variety": True,
        "Q": variety.q_value(p),
        "order": p.order,
        "shape": "flat" if flat else "bumpy",
        "planes": _planes(p),
        "tags": sorted(str(t) for t in families.classify(p)),
    }
    return [row], list(row)


def command_lines(args):
    p = parse_point(args.point)
    rows = [{"family": str(ln.family), "line": str(ln)} for ln in lines.lines_through(p)]
    return rows, ["family", "line"]


def command_enumerate(args):
    line = parse_line(args.line)
    bound, by = _bound(args)
    catalog = load_catalog(args)
    pts = enumeration.integer_points(line, bound, enumeration.FILTERS[args.filter], by=by)
    rows = []
    for p, status in enumeration.annotate(pts, catalog):
        mark = enumeration.STATUS_MARKS.get(enumeration.Status(status), "") if status != enumeration.UNCATALOGED else ""
        rows.append({"point": p, "status": status, "mark": mark})
    return rows, ["point", "status", "mark"]


def command_sieve(args):
    catalog = load_catalog(args)
    if _looks_like_line(args.target):
        line = parse_line(args.target)
        bound, by = _bound(args)
        points = enumeration.integer_points(line, bound, enumeration.FILTERS[args.filter], by=by)
    else:
        points = [parse_point(args.target)]
    rows = []
    for p in points:
        v = sieve.sieve_point(p, catalog)
        rows.append({"point": p, "outcome": str(v.outcome), "reason": v.reason, "text": v.text,
                     "catalog_status": v.catalog_status or enumeration.UNCATALOGED})
    return rows, ["point", "outcome", "reason", "text", "catalog_status"]


def command_families(args):
    if _looks_like_line(args.target):
        line = parse_line(args.target)
        row = {"line": line}
        if line.family in lines.TWO_PARAMETER:
            row["three_design_line"] = families.three_design_line(line)
        fa = families.family_a_point(line) if line.family in lines.TWO_PARAMETER + (Family.REPLICATE,) else None
        row["family_a_point"] = "whole line" if fa is families.WHOLE_LINE else fa
        for kind in ("residual", "derived"):
            try:
                row[f"{kind}_parent_line"] = families.parent_line_image(line, kind)
            except DesignError:
                row[f"{kind}_parent_line"] = None
        cols = ["line", "three_design_line", "family_a_point", "residual_parent_line", "derived_parent_line"]
        return [row], cols
    p = parse_point(args.target)
    tags = families.classify(p)
    row = {"point": p, "tags": sorted(str(t) for t in tags)}
    row["residual_parent"] = families.residual_parent(p) if families.FamilyTag.QUASI_RESIDUAL in tags else None
    try:
        row["derived_parent"] = families.derived_parent(p)
    except DesignError:
        row["derived_parent"] = None
    row["lambda3"] = families.lambda3(p) if p.v != 2 else None
    witness = families.three_design_witness(p)
    row["three_design_line"] = witness
    return [row], ["point", "tags", "residual_parent", "derived_parent", "lambda3", "three_design_line"]


def command_pell(args):
    if args.count < 1:
        raise UsageError("count must be positive")
    rows = [{"j": j, "l": l, "m": m} for j, (l, m) in enumerate(sieve.pell_solutions(args.count))]
    return rows, ["j", "l", "m"]


def command_pseudo(args):
    if args.action == "solve":
        if len(args.args) != 3:
            raise UsageError("pseudo solve needs v k lambda")
        try:
            v, k, lam = map(int, args.args)
        except ValueError:
            raise UsageError("v, k, lambda must be integers") from None
        mf = pseudo.solve(v, k, lam, method=args.method)
        point = pseudo.verify(mf)
        if args.format == "table":
            return f"# realizes {point}\n" + mf.to_text()
        rows = [{"multiplicity": c, "block": list(key)} for key, c in mf.entries.items()]
        return rows, ["multiplicity", "block"]
    if len(args.args) != 1:
        raise UsageError("pseudo verify needs a file name or -")
    src = args.args[0]
    text = sys.stdin.read() if src == "-" else Path(src).read_text(encoding="utf-8")
    report = pseudo.balance_report(pseudo.MultiplicityFunction.from_text(text))
    if not report:
        pair, got, expected = report.offending
        raise DesignError(f"unbalanced at {pair}: sum {got}, expected {expected}")
    return [{"point": report.point}], ["point"]


# golden tables

_TABLE_IV = (
    # family, coordinates of the two flat points (f, p, d = f - p), planes
    ("P", ("1", "0", "0", "p/f", "-p*d/f"), 1, ("0", "-f", "-p", "0", "-p"), 4),
    ("F0", ("-d/p", "-f*d/p", "0", "0", "0"), 2, ("1", "f", "f", "1", "p"), 5),
    ("F1", ("-p/d", "-f*p/d", "-f*p/d", "-p/d", "-f*p/d"), 3, ("1", "f", "0", "0", "-p"), 6),
)


def table_rows(name: str):
    key = name.lower()
    if key in ("i", "1", "planes"):
        rows = []
        for i in range(7):
            for j in range(i + 1, 7):
                flat = variety.plane_intersection(i, j)
                rows.append({"planes": f"Π{i}∩Π{j}", "intersection": flat.pattern(), "kind": flat.kind})
        return rows, ["planes", "intersection", "kind"]
    if key in ("iv", "4", "flat"):
        rows = []
        for fam, pt1, pl1, pt2, pl2 in _TABLE_IV:
            rows.append({"line": fam, "flat_design": "(" + ", ".join(pt1) + ")", "plane": f"Π{pl1}"})
            rows.append({"line": fam, "flat_design": "(" + ", ".join(pt2) + ")", "plane": f"Π{pl2}"})
        return rows, ["line", "flat_design", "plane"]
    if key in ("vi", "6", "pell"):
        rows = []
        for j, (l, m) in enumerate(sieve.pell_solutions(9)):
            rows.append({"j": j, "l": l, "m": m, "3l^2-2m^2": 3 * l * l - 2 * m * m})
        return rows, ["j", "l", "m", "3l^2-2m^2"]
    if key in ("f0-list", "quasi-residual"):
        line = Line.F0(Rational(3, 2), Rational(1, 2))
        pts = enumeration.integer_points(line, 39)
        cat = enumeration.bundled_catalog()
        rows = [{"point": p, "status": s,
                 "mark": "" if s == enumeration.UNCATALOGED else enumeration.STATUS_MARKS[enumeration.Status(s)]}
                for p, s in enumeration.annotate(pts, cat)]
        return rows, ["point", "status", "mark"]
    raise UsageError(f"unknown table {name!r}; choose I, IV, VI or f0-list")


def table_iv_evaluate(family: str, f: Rational, p: Rational) -> list[tuple[DesignPoint, int]]:
    """Evaluate the printed flat-design formulas at concrete ``(f, p)``."""
    d = f - p
    env = {"f": f, "p": p, "d": d, "__builtins__": {}}
    for fam, pt1, pl1, pt2, pl2 in _TABLE_IV:
        if fam == family:
            return [(DesignPoint(*(eval(c, env) for c in pt)), pl) for pt, pl in ((pt1, pl1), (pt2, pl2))]
    raise DesignError(f"no tabulated flat designs for {family}")


def command_tables(args):
    return table_rows(args.name)


def command_apply(args):
    p = parse_point(args.point)
    variety.require_on_variety(p)
    e = automorphisms.canonicalize(args.word)
    return [{"element": str(e), "image": automorphisms.apply(e, p)}], ["element", "image"]


# --- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")
    common.add_argument("--max-r", type=int, dest="max_r")
    common.add_argument("--max-v", type=int, dest="max_v")
    common.add_argument("--filter", choices=sorted(enumeration.FILTERS), default="default")
    common.add_argument("--catalog", help=f"catalog CSV (default: ${CATALOG_ENV} or the bundled one)")

    ap = _Parser(prog="designlines", description="Exact geometry of design parameter points.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("classify", parents=[common], help="variety membership, planes and family tags")
    s.add_argument("point", help="v,b,r,k,lambda (rationals as a/b)")
    s.set_defaults(run=command_classify)

    s = sub.add_parser("lines", parents=[common], help="the four lines through a bumpy point")
    s.add_argument("point")
    s.set_defaults(run=command_lines)

    s = sub.add_parser("enumerate", parents=[common], help="integral points along a line")
    s.add_argument("line", help="e.g. 'F0(3/2,1/2)'")
    s.set_defaults(run=command_enumerate)

    s = sub.add_parser("sieve", parents=[common], help="existence tests on a point or along a line")
    s.add_argument("target", help="a point, or a line together with --max-r/--max-v")
    s.set_defaults(run=command_sieve)

    s = sub.add_parser("families", parents=[common], help="family tags and parent maps")
    s.add_argument("target", help="a point or a line")
    s.set_defaults(run=command_families)

    s = sub.add_parser("pell", parents=[common], help="solutions of 3l^2 - 2m^2 = 1")
    s.add_argument("count", type=int)
    s.set_defaults(run=command_pell)

    s = sub.add_parser("pseudo", parents=[common], help="solve or verify multiplicity functions")
    s.add_argument("action", choices=("solve", "verify"))
    s.add_argument("args", nargs="+", help="v k lambda for solve; a file (or -) for verify")
    s.add_argument("--method", choices=("auto", "orbit", "full"), default="auto")
    s.set_defaults(run=command_pseudo)

    s = sub.add_parser("tables", parents=[common], help="reproduce reference tables")
    s.add_argument("name", help="I, IV, VI or f0-list")
    s.set_defaults(run=command_tables)

    s = sub.add_parser("apply", parents=[common], help="apply a group element such as 'M2 C N'")
    s.add_argument("point")
    s.add_argument("word", nargs="+")
    s.set_defaults(run=command_apply)
    return ap


def main(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = args.run(args)
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except NotOnVarietyError as exc:
        vr, lam = exc.residuals
        print(f"error: {exc.point} is not on the variety: "
              f"vr - bk = {fmt_rational(vr)}, r(k-1) - lambda(v-1) = {fmt_rational(lam)}", file=stderr)
        return EXIT_DOMAIN
    except (DesignError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_DOMAIN
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_INTERNAL
    if isinstance(result, str):
        stdout.write(result)
    else:
        rows, cols = result
        stdout.write(render(rows, cols, args.format))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
