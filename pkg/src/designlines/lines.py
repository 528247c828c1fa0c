"""Design lines: the replicate, P, F0, F1 families and their constant-Q limits.

Every bumpy point lies on exactly four lines. ``P``, ``F0`` and ``F1`` lines
are parametrized by Q, the replicate line by the multiplier m, the
constant-Q lines ``LP`` and ``L1`` by lambda and ``L0`` by v (lambda is
identically zero there).
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache

from .variety import (
    DesignError,
    DesignPoint,
    PlaneId,
    Rational,
    RationalLike,
    as_rational,
    fmt_rational,
    is_bumpy,
    planes_containing,
    q_value,
    require_on_variety,
)


class Family(str, enum.Enum):
    REPLICATE = "R"
    P = "P"
    F0 = "F0"
    F1 = "F1"
    LP = "LP"
    L0 = "L0"
    L1 = "L1"

    def __str__(self) -> str:
        return self.value


TWO_PARAMETER = (Family.P, Family.F0, Family.F1)
LIMIT_FAMILIES = (Family.LP, Family.L0, Family.L1)


@dataclass(frozen=True)
class Line:
    """A design line. Use the ``Line.P(f, p)``-style constructors."""

    family: Family
    f: Rational | None = None
    p: Rational | None = None
    base: DesignPoint | None = None

    def __post_init__(self):
        fam = self.family
        if fam is Family.REPLICATE:
            if self.base is None or (self.base.b, self.base.r, self.base.lam) == (0, 0, 0):
                raise DesignError("replicate line needs a base point with (b,r,lam) != 0")
        elif fam in TWO_PARAMETER:
            if self.f == 0 or self.p == 0 or self.f == self.p:
                raise DesignError(f"{fam}(f,p) requires f != 0, p != 0 and f != p")
        elif fam is Family.LP:
            if self.p == 0:
                raise DesignError("LP(p) requires p != 0")
        elif self.f == 0:
            raise DesignError(f"{fam}(f) requires f != 0")

    # constructors

    @classmethod
    def replicate(cls, base: DesignPoint) -> Line:
        return cls(Family.REPLICATE, base=base)

    @classmethod
    def P(cls, f: RationalLike, p: RationalLike) -> Line:
        return cls(Family.P, as_rational(f), as_rational(p))

    @classmethod
    def F0(cls, f: RationalLike, p: RationalLike) -> Line:
        return cls(Family.F0, as_rational(f), as_rational(p))

    @classmethod
    def F1(cls, f: RationalLike, p: RationalLike) -> Line:
        return cls(Family.F1, as_rational(f), as_rational(p))

    @classmethod
    def LP(cls, p: RationalLike) -> Line:
        return cls(Family.LP, p=as_rational(p))

    @classmethod
    def L0(cls, f: RationalLike) -> Line:
        return cls(Family.L0, f=as_rational(f))

    @classmethod
    def L1(cls, f: RationalLike) -> Line:
        return cls(Family.L1, f=as_rational(f))

    @classmethod
    def of(cls, family: Family | str, f=None, p=None) -> Line:
        family = Family(family)
        if family in TWO_PARAMETER:
            return cls(family, as_rational(f), as_rational(p))
        if family is Family.LP:
            return cls.LP(p)
        if family in (Family.L0, Family.L1):
            return cls(family, f=as_rational(f))
        raise DesignError("use Line.replicate(base) for replicate lines")

    @property
    def d(self) -> Rational:
        return self.f - self.p

    # points

    def point_at(self, t: RationalLike) -> DesignPoint:
        """The point with line parameter ``t`` (Q, m, lambda or v by family)."""
        t = as_rational(t)
        fam, f, p = self.family, self.f, self.p
        if fam is Family.REPLICATE:
            v, b, r, k, lam = self.base
            return DesignPoint(v, t * b, t * r, k, t * lam)
        if fam is Family.LP:
            return DesignPoint(0, 0, -p, 1 + t / p, t)
        if fam is Family.L0:
            return DesignPoint(t, f * t, f, 1, 0)
        if fam is Family.L1:
            return DesignPoint(t / f + 2, t + 2 * f, t + f, t / f + 1, t)
        d = f - p
        q = t
        v = q / (p * d)
        b = f * q / (p * d)
        r = q / d
        k = q / (f * d)
        lam = p * q / (f * d)
        if fam is Family.P:
            return DesignPoint(v + 1, b, r, k + p / f, lam - p * d / f)
        if fam is Family.F0:
            return DesignPoint(v - d / p, b - f * d / p, r, k, lam)
        return DesignPoint(v - p / d, b - f * p / d, r - f * p / d, k - p / d, lam - f * p / d)

    def parametrization(self) -> tuple[DesignPoint, DesignPoint]:
        """``(origin, direction)`` with ``point_at(t) == origin + t*direction``."""
        return _parametrization(self)

    def parameter_of(self, point: DesignPoint) -> Rational | None:
        """The parameter ``t`` with ``point_at(t) == point``, or None."""
        origin, direction = self.parametrization()
        diff = (point - origin).as_tuple()
        axis = next(i for i, x in enumerate(direction) if x != 0)
        t = diff[axis] / direction.as_tuple()[axis]
        return t if self.point_at(t) == point else None

    def contains(self, point: DesignPoint) -> bool:
        return self.parameter_of(point) is not None

    # text form

    def __str__(self) -> str:
        fam = self.family
        if fam is Family.REPLICATE:
            return f"R({self.base})"
        if fam in TWO_PARAMETER:
            return f"{fam}({fmt_rational(self.f)},{fmt_rational(self.p)})"
        if fam is Family.LP:
            return f"LP({fmt_rational(self.p)})"
        return f"{fam}({fmt_rational(self.f)})"

    def __repr__(self) -> str:
        return f"Line.{self}"

    @classmethod
    def parse(cls, text: str) -> Line:
        """Inverse of ``str``: ``P(f,p)``, ``F0(f,p)``, ``F1(f,p)``, ``LP(p)``,
        ``L0(f)``, ``L1(f)`` or ``R(v,b,r,k,l)``."""
        m = _LINE_RE.fullmatch(text.replace(" ", ""))
        if not m:
            raise DesignError(f"cannot parse line {text!r}")
        fam, body = Family(m.group(1).upper()), m.group(2)
        args = body.split(",")
        try:
            if fam is Family.REPLICATE:
                return cls.replicate(DesignPoint.parse(body))
            if fam in TWO_PARAMETER and len(args) == 2:
                return cls.of(fam, args[0], args[1])
            if fam is Family.LP and len(args) == 1:
                return cls.LP(args[0])
            if fam in (Family.L0, Family.L1) and len(args) == 1:
                return cls.of(fam, f=args[0])
        except (ValueError, ZeroDivisionError) as exc:
            raise DesignError(f"cannot parse line {text!r}: {exc}") from None
        raise DesignError(f"wrong number of parameters in {text!r}")


_LINE_RE = re.compile(r"(R|P|F0|F1|LP|L0|L1)\((.*)\)", re.IGNORECASE)


@lru_cache(maxsize=4096)
def _parametrization(line: Line) -> tuple[DesignPoint, DesignPoint]:
    origin = line.point_at(0)
    return origin, line.point_at(1) - origin


def point_at(line: Line, t: RationalLike) -> DesignPoint:
    return line.point_at(t)


def contains(line: Line, point: DesignPoint) -> bool:
    return line.contains(point)


def lines_through(point: DesignPoint) -> list[Line]:
    """The four lines on a bumpy point: replicate, P (or LP), F0 (or L0), F1 (or L1).

    Parameters come from the Q-forms of the (f, p) recovery formulas, which
    stay defined when v or k vanish.
    """
    require_on_variety(point)
    if not is_bumpy(point):
        raise DesignError(f"{point} is flat; it lies in {sorted(planes_containing(point))}")
    v, b, r, k, lam = point
    q = q_value(point)
    out = [Line.replicate(point)]

    f_p, p_p = q * b / (r * (b - r)), q / (b - r)
    out.append(Line.LP(-r) if b == 0 else Line.P(f_p, p_p))

    f_0, p_0 = q / (r - lam), q * lam / (r * (r - lam))
    out.append(Line.L0(f_0) if lam == 0 else Line.F0(f_0, p_0))

    f_1, p_1 = q / (r - lam), q / (b - r)
    out.append(Line.L1(f_1) if f_1 == p_1 else Line.F1(f_1, p_1))
    return out


# --- flat designs on lines ------------------------------------------------


def flat_points(line: Line) -> list[tuple[DesignPoint, PlaneId]]:
    """The flat designs on a line with the plane each lies in.

    Two for P/F0/F1 lines (the Q = 0 one first); one, in the zero plane,
    for a replicate line.
    """
    fam, f, p = line.family, line.f, line.p
    if fam is Family.REPLICATE:
        v, _, _, k, _ = line.base
        return [(DesignPoint(v, 0, 0, k, 0), PlaneId.PI0)]
    if fam not in TWO_PARAMETER:
        raise DesignError("flat points are tabulated only for replicate, P, F0 and F1 lines")
    d = f - p
    if fam is Family.P:
        return [
            (DesignPoint(1, 0, 0, p / f, -p * d / f), PlaneId.PI1),
            (DesignPoint(0, -f, -p, 0, -p), PlaneId.PI4),
        ]
    if fam is Family.F0:
        return [
            (DesignPoint(-d / p, -f * d / p, 0, 0, 0), PlaneId.PI2),
            (DesignPoint(1, f, f, 1, p), PlaneId.PI5),
        ]
    c = -f * p / d
    return [
        (DesignPoint(-p / d, c, c, -p / d, c), PlaneId.PI3),
        (DesignPoint(1, f, 0, 0, -p), PlaneId.PI6),
    ]


# --- linear relations -----------------------------------------------------


@dataclass(frozen=True)
class LinearRelation:
    """``V v + B b + R r + K k + L lam = A``."""

    V: Rational
    B: Rational
    R: Rational
    K: Rational
    L: Rational
    A: Rational

    def __init__(self, V=0, B=0, R=0, K=0, L=0, A=0):
        for name, value in zip("VBRKLA", (V, B, R, K, L, A)):
            object.__setattr__(self, name, as_rational(value))
        if not any((self.V, self.B, self.R, self.K, self.L)):
            raise DesignError("a linear relation needs a nonzero coefficient")

    @property
    def coefficients(self) -> tuple[Rational, ...]:
        return (self.V, self.B, self.R, self.K, self.L)

    def lhs(self, point: DesignPoint) -> Rational:
        return sum((c * x for c, x in zip(self.coefficients, point)), Rational(0))

    def holds_at(self, point: DesignPoint) -> bool:
        return self.lhs(point) == self.A

    def __str__(self) -> str:
        terms = [f"{fmt_rational(c)}*{n}" for c, n in zip(self.coefficients, ("v", "b", "r", "k", "lam")) if c]
        return " + ".join(terms) + f" = {fmt_rational(self.A)}"


def relation_on_line(rel: LinearRelation, line: Line) -> bool:
    """Does ``rel`` hold identically along the line?"""
    if line.family in LIMIT_FAMILIES:
        raise DesignError("relations along the constant-Q lines are not considered")
    origin, direction = line.parametrization()
    slope = sum((c * x for c, x in zip(rel.coefficients, direction)), Rational(0))
    return slope == 0 and rel.holds_at(origin)


@dataclass(frozen=True)
class RelationPattern:
    family: Family
    flat_type: int  # plane index of the flat design that forces the relation
    description: str

    def matches(self, rel: LinearRelation) -> bool:
        V, B, R, K, L, A = rel.V, rel.B, rel.R, rel.K, rel.L, rel.A
        return {
            (Family.P, 1): K == 0 and L == 0 and A == V,
            (Family.F0, 2): V == 0 and B == 0 and A == 0,
            (Family.F1, 3): K == -V and L == -B - R and A == 0,
            (Family.P, 4): B == 0 and L == -R and A == 0,
            (Family.F0, 5): R == -B and L == 0 and A == V + K,
            (Family.F1, 6): B == 0 and L == 0 and A == V,
            (Family.REPLICATE, 0): V == 0 and K == 0 and A == 0,
        }[(self.family, self.flat_type)]


# The six relation rows for P/F0/F1, plus the replicate line's zero-plane row.
TABLE_V = (
    RelationPattern(Family.P, 1, "Vv + Bb + Rr = V"),
    RelationPattern(Family.F0, 2, "Rr + Kk + L lam = 0"),
    RelationPattern(Family.F1, 3, "Vv + Bb + Rr - Vk - (B+R) lam = 0"),
    RelationPattern(Family.P, 4, "Vv + Rr + Kk - R lam = 0"),
    RelationPattern(Family.F0, 5, "Vv + Bb - Br + Kk = V + K"),
    RelationPattern(Family.F1, 6, "Vv + Rr + Kk = V"),
)
REPLICATE_PATTERN = RelationPattern(Family.REPLICATE, 0, "Bb + Rr + L lam = 0")


def matching_patterns(rel: LinearRelation, family: Family) -> list[RelationPattern]:
    rows = (REPLICATE_PATTERN,) if family is Family.REPLICATE else TABLE_V
    return [row for row in rows if row.family is family and row.matches(rel)]


def table_v_propagation(rel: LinearRelation, line: Line, witness: DesignPoint) -> bool:
    """Decide ``rel`` along ``line`` from a single bumpy witness.

    When ``rel`` has the coefficient shape of a tabulated row for the line's
    family, it already holds at a flat point of the line, so holding at the
    witness makes it hold everywhere. Relations outside every tabulated shape
    are reported False.
    """
    if line.family in LIMIT_FAMILIES:
        raise DesignError("relations along the constant-Q lines are not considered")
    if not line.contains(witness):
        raise DesignError(f"witness {witness} is not on {line}")
    if not is_bumpy(witness):
        raise DesignError(f"witness {witness} is flat")
    return bool(matching_patterns(rel, line.family)) and rel.holds_at(witness)
