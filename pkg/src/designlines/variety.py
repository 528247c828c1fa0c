"""Points of the block-design parameter variety.

A point is a 5-tuple ``(v, b, r, k, lam)`` of exact rationals. It lies on the
variety when ``v*r == b*k`` and ``r*(k-1) == lam*(v-1)``. Seven planes inside
the variety hold the degenerate ("flat") points; everything else is bumpy.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from numbers import Rational as _AnyRational
from typing import Iterable, Union

from gmpy2 import mpq as Rational

RationalLike = Union[int, Fraction, Rational, str]

COORDS = ("v", "b", "r", "k", "lam")


class DesignError(ValueError):
    """Base class for domain errors raised by this package."""


class NotOnVarietyError(DesignError):
    """A classification operation received a point that fails the design equations."""

    def __init__(self, point: DesignPoint):
        self.point = point
        self.residuals = design_residuals(point)
        super().__init__(
            f"{point} is not on the variety: vr-bk={fmt_rational(self.residuals[0])}, "
            f"r(k-1)-lam(v-1)={fmt_rational(self.residuals[1])}"
        )


_SIMPLE_RATIONAL = re.compile(r"\s*([+-]?\d+)(?:/(\d+))?\s*\Z")


def as_rational(x: RationalLike) -> Rational:
    """Exact rational from an int, a rational number or an ``"a/b"`` string.

    Values are stored as gmpy2 ``mpq``; they compare and hash equal to the
    corresponding ``fractions.Fraction``.
    """
    t = type(x)
    if t is Rational:
        return x
    if t is int:
        return Rational(x)
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'a/b' string")
    if isinstance(x, str):
        simple = _SIMPLE_RATIONAL.match(x)
        if simple:
            num, den = simple.groups()
            if den is None:
                return Rational(int(num))
            if int(den) == 0:
                raise ZeroDivisionError(f"zero denominator in {x!r}")
            return Rational(int(num), int(den))
        x = Fraction(x)
    if isinstance(x, _AnyRational):
        return Rational(int(x.numerator), int(x.denominator))
    if hasattr(x, "__index__"):
        return Rational(x.__index__())
    raise TypeError(f"cannot read {x!r} as a rational")


def fmt_rational(x: RationalLike) -> str:
    """Render ``x`` as ``"n"`` or ``"num/den"``."""
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class DesignPoint:
    v: Rational
    b: Rational
    r: Rational
    k: Rational
    lam: Rational

    def __init__(self, v: RationalLike, b: RationalLike, r: RationalLike,
                 k: RationalLike, lam: RationalLike):
        put = object.__setattr__
        put(self, "v", v if type(v) is Rational else as_rational(v))
        put(self, "b", b if type(b) is Rational else as_rational(b))
        put(self, "r", r if type(r) is Rational else as_rational(r))
        put(self, "k", k if type(k) is Rational else as_rational(k))
        put(self, "lam", lam if type(lam) is Rational else as_rational(lam))

    @classmethod
    def of(cls, coords: Iterable[RationalLike]) -> DesignPoint:
        coords = tuple(coords)
        if len(coords) != 5:
            raise DesignError(f"expected 5 coordinates, got {len(coords)}")
        return cls(*coords)

    @classmethod
    def parse(cls, text: str) -> DesignPoint:
        """Parse ``"v,b,r,k,lambda"``; each entry an integer or ``num/den``."""
        parts = [s.strip() for s in text.strip().strip("()").split(",")]
        if len(parts) != 5 or any(not s for s in parts):
            raise DesignError(f"cannot parse design point {text!r}")
        try:
            return cls(*parts)
        except (ValueError, ZeroDivisionError) as exc:
            raise DesignError(f"cannot parse design point {text!r}: {exc}") from None

    def as_tuple(self) -> tuple[Rational, ...]:
        return (self.v, self.b, self.r, self.k, self.lam)

    def __iter__(self):
        return iter((self.v, self.b, self.r, self.k, self.lam))

    def __getitem__(self, i: int) -> Rational:
        return self.as_tuple()[i]

    def __add__(self, other: DesignPoint) -> DesignPoint:
        return DesignPoint.of(x + y for x, y in zip(self, other))

    def __sub__(self, other: DesignPoint) -> DesignPoint:
        return DesignPoint.of(x - y for x, y in zip(self, other))

    def scale(self, t: RationalLike) -> DesignPoint:
        t = as_rational(t)
        return DesignPoint.of(t * x for x in self)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self)

    def int_tuple(self) -> tuple[int, ...]:
        if not self.is_integral():
            raise DesignError(f"{self} is not integral")
        return tuple(int(x.numerator) for x in self)

    @property
    def order(self) -> Rational:
        """The order ``n = r - lam``."""
        return self.r - self.lam

    def __str__(self) -> str:
        return ",".join(fmt_rational(x) for x in self)

    def __repr__(self) -> str:
        return f"DesignPoint({self})"


def design_residuals(p: DesignPoint) -> tuple[Rational, Rational]:
    """``(vr - bk, r(k-1) - lam(v-1))``; both zero exactly on the variety."""
    return (p.v * p.r - p.b * p.k, p.r * (p.k - 1) - p.lam * (p.v - 1))


def on_variety(p: DesignPoint) -> bool:
    return design_residuals(p) == (0, 0)


def require_on_variety(p: DesignPoint) -> None:
    if not on_variety(p):
        raise NotOnVarietyError(p)


def q_value(p: DesignPoint) -> Rational:
    """The invariant ``Q = r**2 - lam*b``."""
    return p.r * p.r - p.lam * p.b


def verify_q_equations(p: DesignPoint) -> bool:
    """Check the four identities Q v = b(r-lam), Q k = r(r-lam),
    Q(v-1) = r(b-r), Q(k-1) = lam(b-r). They hold everywhere on the variety."""
    require_on_variety(p)
    v, b, r, k, lam = p
    q = q_value(p)
    return (
        q * v == b * (r - lam)
        and q * k == r * (r - lam)
        and q * (v - 1) == r * (b - r)
        and q * (k - 1) == lam * (b - r)
    )


# Each equation is a coefficient row (v, b, r, k, lam | rhs).
_PLANE_EQUATIONS: dict[int, tuple[tuple[int, ...], ...]] = {
    0: ((0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0), (0, 0, 0, 0, 1, 0)),
    1: ((0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0), (1, 0, 0, 0, 0, 1)),
    2: ((0, 0, 1, 0, 0, 0), (0, 0, 0, 0, 1, 0), (0, 0, 0, 1, 0, 0)),
    3: ((0, 1, -1, 0, 0, 0), (0, 0, 1, 0, -1, 0), (1, 0, 0, -1, 0, 0)),
    4: ((1, 0, 0, 0, 0, 0), (0, 0, 0, 1, 0, 0), (0, 0, 1, 0, -1, 0)),
    5: ((1, 0, 0, 0, 0, 1), (0, 0, 0, 1, 0, 1), (0, 1, -1, 0, 0, 0)),
    6: ((1, 0, 0, 0, 0, 1), (0, 0, 0, 1, 0, 0), (0, 0, 1, 0, 0, 0)),
}

_PLANE_TEXT = {
    0: "b=0, r=0, lam=0",
    1: "b=0, r=0, v=1",
    2: "r=0, lam=0, k=0",
    3: "b=r=lam, v=k",
    4: "v=0, k=0, r=lam",
    5: "v=1, k=1, b=r",
    6: "v=1, k=0, r=0",
}


class PlaneId(enum.IntEnum):
    """The seven planes contained in the variety."""

    PI0 = 0
    PI1 = 1
    PI2 = 2
    PI3 = 3
    PI4 = 4
    PI5 = 5
    PI6 = 6

    @property
    def equations(self) -> tuple[tuple[int, ...], ...]:
        """Rows ``(cv, cb, cr, ck, clam, rhs)`` of the defining linear system."""
        return _PLANE_EQUATIONS[self.value]

    def as_flat(self) -> Flat:
        return solve_affine(list(self.equations))

    @property
    def description(self) -> str:
        return _PLANE_TEXT[self.value]

    @property
    def label(self) -> str:
        return f"Π{self.value}"

    def contains(self, p: DesignPoint) -> bool:
        return all(_dot(row[:5], p) == row[5] for row in self.equations)

    def __str__(self) -> str:
        return self.label


def _dot(coeffs, p) -> Rational:
    return sum((c * x for c, x in zip(coeffs, p) if c), Rational(0))


SINGULAR_POINTS = (
    DesignPoint(0, 0, 0, 0, 0),
    DesignPoint(1, 0, 0, 0, 0),
    DesignPoint(1, 0, 0, 1, 0),
)


def planes_containing(p: DesignPoint) -> frozenset[PlaneId]:
    require_on_variety(p)
    return frozenset(plane for plane in PlaneId if plane.contains(p))


def is_flat(p: DesignPoint) -> bool:
    return bool(planes_containing(p))


def is_bumpy(p: DesignPoint) -> bool:
    return not planes_containing(p)


# --- plane intersections --------------------------------------------------


@dataclass(frozen=True)
class Flat:
    """An affine flat: empty, a point, or ``point + t*direction``."""

    kind: str  # "empty" | "point" | "line" | "plane"
    point: DesignPoint | None = None
    directions: tuple[DesignPoint, ...] = ()

    @property
    def direction(self) -> DesignPoint:
        if self.kind != "line":
            raise DesignError(f"a {self.kind} has no single direction")
        return self.directions[0]

    def spanning_points(self) -> list[DesignPoint]:
        """Affinely independent points spanning the flat."""
        if self.kind == "empty":
            return []
        return [self.point] + [self.point + d for d in self.directions]

    def pattern(self) -> str:
        """Condensed quintuple in the style ``1bb1b`` / ``100k0``; ``∅`` when empty."""
        if self.kind == "empty":
            return "∅"
        if self.kind == "point":
            return "".join(fmt_rational(x) for x in self.point)
        if self.kind != "line":
            raise DesignError("only points and lines have a condensed pattern")
        lead = next(i for i, x in enumerate(self.direction) if x != 0)
        names = ("v", "b", "r", "k", "λ")
        out = []
        for i, (x0, dx) in enumerate(zip(self.point, self.direction)):
            # shift so the lead coordinate is the free variable itself
            x0 = x0 - dx * self.point[lead] / self.direction[lead]
            dx = dx / self.direction[lead]
            if dx == 0:
                out.append(fmt_rational(x0))
            elif dx == 1 and x0 == 0:
                out.append(names[lead])
            else:
                out.append(f"({fmt_rational(x0)}+{fmt_rational(dx)}{names[lead]})")
        return "".join(out)

    def contains(self, p: DesignPoint) -> bool:
        if self.kind == "empty":
            return False
        if self.kind == "point":
            return p == self.point
        if self.kind == "plane":
            raise DesignError("membership test is implemented for points and lines")
        diff = p - self.point
        lead = next(i for i, x in enumerate(self.direction) if x != 0)
        t = diff.as_tuple()[lead] / self.direction.as_tuple()[lead]
        return diff == self.direction.scale(t)


def solve_affine(rows: list[tuple[Rational, ...]]) -> Flat:
    """Solution set of a rational system, rows ``(c_1..c_5, rhs)``, as a Flat.

    Rows are scaled to integers and reduced fraction-free; rationals appear
    only when the solution is read off.
    """
    m = []
    for row in rows:
        row = [as_rational(x) for x in row]
        scale = lcm(*(x.denominator for x in row))
        m.append([x.numerator * (scale // x.denominator) for x in row])
    n = 5
    pivots: list[int] = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        a = m[r][col]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                b = m[i][col]
                row = [a * x - b * y for x, y in zip(m[i], m[r])]
                g = gcd(*row)
                m[i] = [x // g for x in row] if g > 1 else row
        pivots.append(col)
        r += 1
    if any(all(x == 0 for x in row[:n]) and row[n] != 0 for row in m):
        return Flat("empty")
    free = [c for c in range(n) if c not in pivots]
    base = [Rational(0)] * n
    for i, col in enumerate(pivots):
        base[col] = Rational(m[i][n], m[i][col])
    directions = []
    for fc in free:
        direction = [Rational(0)] * n
        direction[fc] = Rational(1)
        for i, col in enumerate(pivots):
            direction[col] = Rational(-m[i][fc], m[i][col])
        directions.append(DesignPoint.of(direction))
    kind = {0: "point", 1: "line", 2: "plane"}.get(len(free), "flat")
    return Flat(kind, DesignPoint.of(base), tuple(directions))


def plane_intersection(i: PlaneId, j: PlaneId) -> Flat:
    i, j = PlaneId(i), PlaneId(j)
    if i == j:
        raise DesignError("plane_intersection needs two distinct planes")
    return solve_affine(list(i.equations) + list(j.equations))

