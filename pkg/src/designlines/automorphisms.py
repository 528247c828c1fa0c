"""Affine automorphisms of the variety.

The group is a direct product of the multiples ``M_m`` and the copy of S3
generated by complementation ``C`` and the switch ``N``. Elements act on the
right, so the word ``"CN"`` means: complement first, then apply ``N``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .lines import Family, Line
from .variety import (
    DesignError,
    DesignPoint,
    PlaneId,
    Rational,
    RationalLike,
    SINGULAR_POINTS,
    as_rational,
    fmt_rational,
)

CANONICAL_WORDS = ("", "C", "N", "CN", "NC", "CNC")


def apply_complement(p: DesignPoint) -> DesignPoint:
    v, b, r, k, lam = p
    return DesignPoint(v, b, b - r, v - k, b - 2 * r + lam)


def apply_multiple(p: DesignPoint, m: RationalLike) -> DesignPoint:
    m = as_rational(m)
    v, b, r, k, lam = p
    return DesignPoint(v, m * b, m * r, k, m * lam)


def apply_n(p: DesignPoint) -> DesignPoint:
    v, b, r, k, lam = p
    return DesignPoint(1 - k, lam, r, 1 - v, b)


_LETTER_MAPS = {"C": apply_complement, "N": apply_n}


def _apply_word(word: str, p: DesignPoint) -> DesignPoint:
    for letter in word:
        p = _LETTER_MAPS[letter](p)
    return p


def _singular_permutation(word: str) -> tuple[int, ...]:
    # image index of each singular point; S3 acts faithfully on them
    return tuple(SINGULAR_POINTS.index(_apply_word(word, g)) for g in SINGULAR_POINTS)


_WORD_OF_PERMUTATION = {_singular_permutation(w): w for w in CANONICAL_WORDS}
assert len(_WORD_OF_PERMUTATION) == 6

# right multiplication by a letter, read off the action on singular points
_STEP = {
    (w, letter): _WORD_OF_PERMUTATION[_singular_permutation(w + letter)]
    for w in CANONICAL_WORDS
    for letter in "CN"
}


def reduce_word(word: str) -> str:
    """Canonical representative of a word in C and N."""
    w = ""
    for letter in word:
        try:
            w = _STEP[w, letter]
        except KeyError:
            raise DesignError(f"word {word!r} may only contain C and N") from None
    return w


@dataclass(frozen=True)
class AffineElement:
    """``M_m`` times a canonical S3 word; ``m`` is a nonzero rational."""

    m: Rational = Rational(1)
    word: str = ""

    def __post_init__(self):
        object.__setattr__(self, "m", as_rational(self.m))
        if self.m == 0:
            raise DesignError("multiplier must be nonzero")
        if self.word not in CANONICAL_WORDS:
            raise DesignError(f"{self.word!r} is not a canonical word; use canonicalize()")

    def __call__(self, p: DesignPoint) -> DesignPoint:
        return apply(self, p)

    def __mul__(self, other: AffineElement) -> AffineElement:
        """``self * other`` acts as ``self`` first, then ``other``."""
        return AffineElement(self.m * other.m, reduce_word(self.word + other.word))

    def inverse(self) -> AffineElement:
        return AffineElement(1 / self.m, reduce_word(self.word[::-1]))

    def matrix(self) -> tuple[list[list[Rational]], DesignPoint]:
        """``(A, g)`` with ``p -> p A + g`` for row vectors ``p``."""
        g = apply(self, DesignPoint(0, 0, 0, 0, 0))
        rows = []
        for i in range(5):
            e = [0] * 5
            e[i] = 1
            rows.append(list(apply(self, DesignPoint.of(e)) - g))
        return rows, g

    def __str__(self) -> str:
        parts = []
        if self.m != 1:
            parts.append(f"M{fmt_rational(self.m)}")
        parts.extend(self.word)
        return "·".join(parts) or "id"


IDENTITY = AffineElement()
C = AffineElement(1, "C")
N = AffineElement(1, "N")


def M(m: RationalLike) -> AffineElement:
    return AffineElement(m, "")


def apply(e: AffineElement, p: DesignPoint) -> DesignPoint:
    p = _apply_word(e.word, p)
    return apply_multiple(p, e.m) if e.m != 1 else p


Token = Union[str, int, Rational, AffineElement]


def canonicalize(word: Iterable[Token] | str) -> AffineElement:
    """Reduce a word over C, N and multiples to ``(m, canonical S3 word)``.

    Tokens are ``"C"``, ``"N"``, ``"M<m>"`` strings, bare numbers (multiples)
    or AffineElements. Multiples are central, so they collect into one factor.
    """
    if isinstance(word, str):
        word = word.replace("·", " ").split() if " " in word or "·" in word else list(word)
    m = Rational(1)
    letters = []
    for tok in word:
        if isinstance(tok, AffineElement):
            m *= tok.m
            letters.append(tok.word)
        elif isinstance(tok, str) and tok in ("C", "N"):
            letters.append(tok)
        elif isinstance(tok, str) and tok.startswith("M"):
            m *= as_rational(tok[1:])
        elif isinstance(tok, str) and tok in ("id", ""):
            continue
        else:
            m *= as_rational(tok)
        if m == 0:
            raise DesignError("zero multiplier in word")
    return AffineElement(m, reduce_word("".join(letters)))


# --- induced actions ------------------------------------------------------

def plane_permutation(e: AffineElement) -> dict[PlaneId, PlaneId]:
    """Image of each plane under ``e``, found by mapping spanning points."""
    perm = {}
    for plane in PlaneId:
        images = [apply(e, x) for x in plane.as_flat().spanning_points()]
        (target,) = [pl for pl in PlaneId if all(pl.contains(y) for y in images)]
        perm[plane] = target
    return perm


def cycles(perm: dict[PlaneId, PlaneId]) -> list[tuple[int, ...]]:
    """Nontrivial cycles of a plane permutation, as tuples of plane indices."""
    seen, out = set(), []
    for start in sorted(perm):
        if start in seen or perm[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(int(x))
            x = perm[x]
        out.append(tuple(cyc))
    return out


_LIMIT_AS_TWO_PARAMETER = {
    Family.LP: lambda ln: (Family.P, Rational(0), ln.p),
    Family.L0: lambda ln: (Family.F0, ln.f, Rational(0)),
    Family.L1: lambda ln: (Family.F1, ln.f, ln.f),
}


def _from_two_parameter(family: Family, f: Rational, p: Rational) -> Line:
    # constant-Q limits: LP(p) = P(0,p), L0(f) = F0(f,0), L1(f) = F1(f,f)
    if family is Family.P and f == 0:
        return Line.LP(p)
    if family is Family.F0 and p == 0:
        return Line.L0(f)
    if family is Family.F1 and f == p:
        return Line.L1(f)
    return Line.of(family, f, p)


def _letter_on_line(letter: str, line: Line) -> Line:
    if line.family is Family.REPLICATE:
        return Line.replicate(_LETTER_MAPS[letter](line.base))
    fam, f, p = line.family, line.f, line.p
    if fam in _LIMIT_AS_TWO_PARAMETER:
        fam, f, p = _LIMIT_AS_TWO_PARAMETER[fam](line)
    if letter == "C":
        fam = {Family.P: Family.P, Family.F0: Family.F1, Family.F1: Family.F0}[fam]
        return _from_two_parameter(fam, f, f - p)
    fam = {Family.P: Family.F0, Family.F0: Family.P, Family.F1: Family.F1}[fam]
    return _from_two_parameter(fam, -p, -f)


def line_image(e: AffineElement, line: Line) -> Line:
    """The image of a line under ``e``."""
    for letter in e.word:
        line = _letter_on_line(letter, line)
    if e.m == 1:
        return line
    if line.family is Family.REPLICATE:
        return Line.replicate(apply_multiple(line.base, e.m))
    m = e.m
    if line.family is Family.LP:
        return Line.LP(m * line.p)
    if line.family in (Family.L0, Family.L1):
        return Line.of(line.family, f=m * line.f)
    return Line.of(line.family, m * line.f, m * line.p)


__all__ = [
    "AffineElement", "C", "N", "M", "IDENTITY", "CANONICAL_WORDS",
    "apply", "apply_complement", "apply_multiple", "apply_n", "canonicalize",
    "line_image", "plane_permutation", "cycles", "reduce_word",
]
