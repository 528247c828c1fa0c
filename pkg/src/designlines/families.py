"""Named families of parameter points and the maps between their lines."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .lines import TWO_PARAMETER, Family, Line, lines_through
from .sieve import Verdict, wilson_t7
from .variety import (
    DesignError,
    DesignPoint,
    Rational,
    RationalLike,
    as_rational,
    is_bumpy,
    require_on_variety,
)


class FamilyTag(str, enum.Enum):
    SYMMETRIC = "symmetric"
    METIS = "metis"
    HADAMARD = "hadamard"
    QUASI_RESIDUAL = "quasi_residual"
    QUASI_DERIVED = "quasi_derived"
    FAMILY_A = "family_a"
    AFFINE_CANDIDATE = "affine_candidate"
    THREE_DESIGN_COMPATIBLE = "three_design_compatible"

    def __str__(self) -> str:
        return self.value


def is_symmetric(p: DesignPoint) -> bool:
    return p.b == p.v


def is_metis(p: DesignPoint) -> bool:
    return p.v == p.r + p.k + 1


def is_quasi_residual(p: DesignPoint) -> bool:
    return p.r == p.k + p.lam


def is_quasi_derived(p: DesignPoint) -> bool:
    return p.k == p.lam + 1


def is_family_a(p: DesignPoint) -> bool:
    return p.b == 4 * (p.r - p.lam)


def _divides(a: Rational, b: Rational) -> bool:
    return a != 0 and a.denominator == 1 and b.denominator == 1 and b.numerator % a.numerator == 0


def is_affine_candidate(p: DesignPoint) -> bool:
    """Necessary parameter conditions for an affine design: quasi-residual, k | v, v | k^2."""
    return is_quasi_residual(p) and _divides(p.k, p.v) and _divides(p.v, p.k * p.k)


def three_design_witness(p: DesignPoint) -> Line | None:
    """A line through ``p`` on which lambda_3 is linear, provided lambda_3 at
    ``p`` is a nonnegative integer and ``k >= 3``."""
    if not p.is_integral() or p.k < 3 or p.v == 2 or not is_bumpy(p):
        return None
    l3 = lambda3(p)
    if l3 < 0 or l3.denominator != 1:
        return None
    for line in lines_through(p):
        if line.family in TWO_PARAMETER and three_design_line(line):
            return line
    return None


def classify(p: DesignPoint) -> set[FamilyTag]:
    require_on_variety(p)
    tags = set()
    if is_symmetric(p):
        tags.add(FamilyTag.SYMMETRIC)
    if is_metis(p):
        tags.add(FamilyTag.METIS)
    if is_symmetric(p) and is_metis(p):
        tags.add(FamilyTag.HADAMARD)
    if is_quasi_residual(p):
        tags.add(FamilyTag.QUASI_RESIDUAL)
    if is_quasi_derived(p):
        tags.add(FamilyTag.QUASI_DERIVED)
    if is_family_a(p):
        tags.add(FamilyTag.FAMILY_A)
    if is_affine_candidate(p):
        tags.add(FamilyTag.AFFINE_CANDIDATE)
    if three_design_witness(p) is not None:
        tags.add(FamilyTag.THREE_DESIGN_COMPATIBLE)
    return tags


# --- Metis ----------------------------------------------------------------


def metis_f1_parameter(f: RationalLike) -> Rational:
    """``p`` of the F1 line through Metis designs with Fisher factor ``f``."""
    f = as_rational(f)
    if f == 0 or f == -1:
        raise DesignError("f must differ from 0 and -1")
    return f / (f + 1)


# --- residual and derived parents -----------------------------------------


def residual_parent(p: DesignPoint) -> DesignPoint:
    """The would-be symmetric design ``(b+1, b+1, r, r, lam)`` having ``p`` as residual."""
    if not is_quasi_residual(p):
        raise DesignError(f"{p} is not quasi-residual (r != k + lam)")
    return DesignPoint(p.b + 1, p.b + 1, p.r, p.r, p.lam)


def derived_parent(p: DesignPoint) -> DesignPoint:
    """The would-be symmetric design ``(b+1, b+1, v, v, k)`` having ``p`` as derived design."""
    if not is_quasi_derived(p):
        raise DesignError(f"{p} is not quasi-derived (k != lam + 1)")
    if p.v != p.r + 1:
        raise DesignError(f"{p} does not satisfy v = r + 1")
    return DesignPoint(p.b + 1, p.b + 1, p.v, p.v, p.k)


def parent_line_image(line: Line, kind: str) -> Line:
    """Line carrying the parents of the points of ``line``.

    residual:  F0(f, f-1) -> F0(1, (f-1)/f),  P(f, f-1) -> F1(1, (f-1)/f)
    derived:   P(f, 1)    -> F0(1, 1/f),      F1(f, 1)  -> F1(1, 1/f)

    The closed form is checked by mapping two points of ``line``.
    """
    fam, f, p = line.family, line.f, line.p
    if kind == "residual":
        if fam not in (Family.P, Family.F0) or p != f - 1:
            raise DesignError(f"{line} is not of the form P(f,f-1) or F0(f,f-1)")
        image = Line.F0(1, p / f) if fam is Family.F0 else Line.F1(1, p / f)
        parent = residual_parent
    elif kind == "derived":
        if fam not in (Family.P, Family.F1) or p != 1:
            raise DesignError(f"{line} is not of the form P(f,1) or F1(f,1)")
        image = Line.F0(1, 1 / f) if fam is Family.P else Line.F1(1, 1 / f)
        parent = derived_parent
    else:
        raise DesignError(f"unknown parent kind {kind!r}")
    checked = 0
    for t in range(1, 40):
        pt = line.point_at(t)
        if not image.contains(parent(pt)):
            raise AssertionError(f"{parent(pt)} (parent of {pt}) not on {image}")
        checked += 1
        if checked == 2:
            break
    return image


# --- 3-designs ------------------------------------------------------------


def lambda3(p: DesignPoint) -> Rational:
    """Triple count ``lam (k-2)/(v-2)`` a 3-design with these parameters would have."""
    if p.v == 2:
        raise DesignError("lambda_3 undefined for v = 2")
    return p.lam * (p.k - 2) / (p.v - 2)


def three_design_line(line: Line) -> bool:
    """Is lambda_3 linear along ``line``? P: p = f/2, F0: p = -f, F1: p = 2f."""
    fam, f, p = line.family, line.f, line.p
    if fam is Family.P:
        return p == f / 2
    if fam is Family.F0:
        return p == -f
    if fam is Family.F1:
        return p == 2 * f
    raise DesignError("three_design_line applies to P, F0 and F1 lines")


def hadamard3_derive(p: DesignPoint) -> DesignPoint:
    """Parameters of the design on a block of a Hadamard 3-design on P(2,1).

    ``(2l+2, 4l+2, 2l+1, l+1, l)`` with ``l`` odd maps to
    ``(l'+2, 4l'+4, 2l'+2, l'/2+1, l')`` where ``l' = l - 1``.
    """
    lam = p.lam
    if lam.denominator != 1 or p != DesignPoint(2 * lam + 2, 4 * lam + 2, 2 * lam + 1, lam + 1, lam):
        raise DesignError(f"{p} is not an integral point of P(2,1)")
    if lam % 2 == 0:
        raise DesignError("lambda must be odd")
    lp = lam - 1
    return DesignPoint(lp + 2, 4 * lp + 4, 2 * lp + 2, lp / 2 + 1, lp)


# --- family (A) -----------------------------------------------------------


class _WholeLine:
    def __repr__(self) -> str:
        return "WHOLE_LINE"


WHOLE_LINE = _WholeLine()


def family_a_point(line: Line):
    """The point of ``line`` with ``b = 4(r - lam)``.

    Returns a DesignPoint, None when no point qualifies (lines with f = 2p,
    replicate lines on non-members), or WHOLE_LINE when every point does.
    """
    if line.family not in TWO_PARAMETER + (Family.REPLICATE,):
        raise DesignError("family_a_point applies to replicate, P, F0 and F1 lines")
    origin, direction = line.parametrization()

    def g(x: DesignPoint) -> Rational:
        return x.b - 4 * (x.r - x.lam)

    slope, const = g(direction), g(origin)
    if line.family is Family.REPLICATE:
        return WHOLE_LINE if is_family_a(line.base) else None
    if slope == 0:
        return WHOLE_LINE if const == 0 else None
    return line.point_at(-const / slope)


# --- association-scheme family --------------------------------------------


def cb_design(m: int) -> DesignPoint:
    """``(m^2, 3m^2, m^2-1, (m^2-1)/3, (m^2-4)/3)``, quasi-derived, on F1(3,1)."""
    if m < 2:
        raise DesignError("m must be >= 2")
    if m % 3 == 0:
        raise DesignError("3 | m gives non-integral parameters")
    s = m * m
    return DesignPoint(s, 3 * s, s - 1, (s - 1) // 3, (s - 4) // 3)


# --- difference-family lines ----------------------------------------------


@dataclass(frozen=True)
class DifferenceFamilyLine:
    """An F0 or F1 line parametrized by block size ``k``."""

    line: Line
    half_p_integral: bool  # 2p is an integer
    f_integral: bool

    @property
    def wilson_compatible(self) -> bool:
        return self.half_p_integral and self.f_integral

    def at_k(self, k: RationalLike) -> DesignPoint:
        k = as_rational(k)
        f, p = self.line.f, self.line.p
        d = f - p
        # F0: Q = fdk; F1: Q = fdk + fp
        q = f * d * k if self.line.family is Family.F0 else f * d * k + f * p
        return self.line.point_at(q)

    def wilson(self, k: int) -> Verdict:
        pt = self.at_k(k)
        if not pt.is_integral():
            raise DesignError(f"{pt} is not integral")
        v, _, _, kk, lam = pt.int_tuple()
        return wilson_t7(v, kk, lam)


def difference_family_line(family: Family | str, f: RationalLike, p: RationalLike) -> DifferenceFamilyLine:
    family = Family(family)
    if family not in (Family.F0, Family.F1):
        raise DesignError("difference-family lines are F0 or F1 lines")
    line = Line.of(family, f, p)
    return DifferenceFamilyLine(line, (2 * line.p).denominator == 1, line.f.denominator == 1)


__all__ = [
    "FamilyTag", "classify", "metis_f1_parameter", "residual_parent", "derived_parent",
    "parent_line_image", "lambda3", "three_design_line", "three_design_witness",
    "hadamard3_derive", "family_a_point", "WHOLE_LINE", "cb_design",
    "difference_family_line", "DifferenceFamilyLine",
]
