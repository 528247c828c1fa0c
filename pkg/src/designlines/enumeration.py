"""Integral points along design lines and a small known-designs catalog."""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass
from importlib import resources
from math import ceil, floor, gcd, lcm
from pathlib import Path
from typing import Iterable, TextIO

from .lines import Line
from .variety import DesignError, DesignPoint, Rational, on_variety


@dataclass(frozen=True)
class AdmissibilityFilter:
    require_integral: bool = True
    require_positive: bool = True
    require_proper: bool = True
    require_fisher: bool = False

    def accepts(self, p: DesignPoint) -> bool:
        if self.require_integral and not p.is_integral():
            return False
        if self.require_positive and min(p.b, p.r, p.lam) < 1:
            return False
        if self.require_proper and not 2 <= p.k <= p.v - 1:
            return False
        if self.require_fisher and p.b < p.v:
            return False
        return True


DEFAULT_FILTER = AdmissibilityFilter()
STRICT_FISHER = AdmissibilityFilter(require_fisher=True)
INTEGRAL_ONLY = AdmissibilityFilter(require_positive=False, require_proper=False)

FILTERS = {"default": DEFAULT_FILTER, "strict-fisher": STRICT_FISHER, "none": INTEGRAL_ONLY}


# --- integrality lattice --------------------------------------------------


def _crt(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int] | None:
    """Combine ``x = r1 (mod m1)`` and ``x = r2 (mod m2)``; moduli need not be coprime."""
    g = gcd(m1, m2)
    if (r2 - r1) % g:
        return None
    m = lcm(m1, m2)
    # solve r1 + m1*s = r2 (mod m2)
    s = ((r2 - r1) // g * pow(m1 // g, -1, m2 // g)) % (m2 // g) if m2 // g > 1 else 0
    return (r1 + m1 * s) % m, m


def integral_progression(line: Line) -> tuple[Rational, Rational] | None:
    """``(t0, step)`` such that the integral points of ``line`` are exactly
    ``point_at(t0 + n*step)`` for integers ``n``; None if there are none.

    Coordinate ``x = x0 + t*dx`` is integral iff ``t`` lies in the progression
    ``(z - x0)/dx``. Scaling t by the lcm of all denominators turns the
    intersection of those progressions into an integer CRT problem.
    """
    origin, direction = line.parametrization()
    conds = []  # t in  a + (Z) * s
    for x0, dx in zip(origin, direction):
        if dx == 0:
            if x0.denominator != 1:
                return None
            continue
        step = 1 / abs(dx)
        conds.append((-x0 / dx, step))
    scale = lcm(*(q.denominator for a, s in conds for q in (a, s)))
    r, m = 0, 1
    for a, s in conds:
        res = _crt(r, m, int(a * scale) % int(s * scale), int(s * scale))
        if res is None:
            return None
        r, m = res
    return Rational(r, scale), Rational(m, scale)


def _axis_index(by: str) -> int:
    try:
        return ("v", "b", "r", "k", "lam").index(by)
    except ValueError:
        raise DesignError(f"cannot bound by {by!r}") from None


def integer_points(line: Line, bound: int, filt: AdmissibilityFilter = DEFAULT_FILTER, *,
                   by: str = "r", lower: int = 1) -> list[DesignPoint]:
    """Integral points of ``line`` with ``lower <= coordinate <= bound``.

    ``by`` names the bounded coordinate (``v``, ``b``, ``r``, ``k``, ``lam``)
    or ``"t"`` for the line parameter itself. When the chosen coordinate is
    constant on the line (r on the LP and L0 lines), the line parameter is
    bounded instead. Output is sorted by the line parameter.
    """
    prog = integral_progression(line)
    if prog is None:
        return []
    t0, step = prog
    origin, direction = line.parametrization()
    if by == "t":
        x0, dx = Rational(0), Rational(1)
    else:
        i = _axis_index(by)
        x0, dx = origin[i], direction[i]
        if dx == 0:
            x0, dx = Rational(0), Rational(1)
    # lower <= x0 + t*dx <= bound  ->  t interval
    ends = sorted(((lower - x0) / dx, (bound - x0) / dx))
    n_lo = ceil((ends[0] - t0) / step)
    n_hi = floor((ends[1] - t0) / step)
    out = []
    for n in range(n_lo, n_hi + 1):
        p = line.point_at(t0 + n * step)
        if filt.accepts(p):
            out.append(p)
    return out


# --- catalog --------------------------------------------------------------


class Status(str, enum.Enum):
    EXISTS = "exists"
    NONEXISTENT = "nonexistent"
    OPEN = "open"
    EXISTS_NO_SYMMETRIC_PARENT = "exists_no_symmetric_parent"

    def __str__(self) -> str:
        return self.value


UNCATALOGED = "uncataloged"

# marks used in printed parameter lists
STATUS_MARKS = {
    Status.EXISTS: "",
    Status.NONEXISTENT: "∄",
    Status.OPEN: "?",
    Status.EXISTS_NO_SYMMETRIC_PARENT: "⋪",
}

CATALOG_HEADER = ["v", "b", "r", "k", "lambda", "status", "source"]


@dataclass(frozen=True)
class CatalogEntry:
    point: DesignPoint
    status: Status
    source: str = ""


class CatalogError(DesignError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def load_catalog(source: TextIO | bytes | str | Path) -> list[CatalogEntry]:
    """Parse catalog CSV. ``source`` may be a path, bytes, or a text stream."""
    if isinstance(source, Path):
        text = source.read_text(encoding="utf-8")
    elif isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        text = source.read()
        if isinstance(text, bytes):
            text = text.decode("utf-8")

    entries: list[CatalogEntry] = []
    seen: set[tuple[int, ...]] = set()
    header_seen = False
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
            continue
        row = [c.strip() for c in row]
        if not header_seen:
            if row != CATALOG_HEADER:
                raise CatalogError(f"expected header {','.join(CATALOG_HEADER)}", lineno)
            header_seen = True
            continue
        if len(row) < 6:
            raise CatalogError(f"expected 7 fields, got {len(row)}", lineno)
        try:
            nums = [int(x) for x in row[:5]]
        except ValueError:
            raise CatalogError("parameters must be decimal integers", lineno) from None
        try:
            status = Status(row[5])
        except ValueError:
            raise CatalogError(f"unknown status {row[5]!r}", lineno) from None
        point = DesignPoint(*nums)
        if not on_variety(point):
            raise CatalogError(f"{point} fails the design equations", lineno)
        key = tuple(nums)
        if key in seen:
            raise CatalogError(f"duplicate entry {point}", lineno)
        seen.add(key)
        source_text = ",".join(row[6:]) if len(row) > 6 else ""
        entries.append(CatalogEntry(point, status, source_text))
    if not header_seen:
        raise CatalogError("missing header")
    return entries


def bundled_catalog() -> list[CatalogEntry]:
    """The small catalog shipped with the package."""
    text = resources.files("designlines").joinpath("data/crc_mini.csv").read_text(encoding="utf-8")
    return load_catalog(text)


def catalog_index(catalog: Iterable[CatalogEntry]) -> dict[tuple[int, ...], CatalogEntry]:
    return {e.point.int_tuple(): e for e in catalog}


def annotate(points: Iterable[DesignPoint], catalog: Iterable[CatalogEntry]) -> list[tuple[DesignPoint, str]]:
    index = {e.point: e for e in catalog}
    return [(p, str(index[p].status) if p in index else UNCATALOGED) for p in points]


__all__ = [
    "AdmissibilityFilter", "DEFAULT_FILTER", "STRICT_FISHER", "INTEGRAL_ONLY", "FILTERS",
    "integral_progression", "integer_points", "Status", "CatalogEntry", "CatalogError",
    "load_catalog", "bundled_catalog", "catalog_index", "annotate", "UNCATALOGED",
]
