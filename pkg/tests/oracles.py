"""Brute-force reference computations, written without the library.

Running this file regenerates the frozen data in tests/golden that depends
on slow searches:

    python tests/oracles.py
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations, permutations, product
from math import gcd, isqrt
from pathlib import Path

GOLDEN = Path(__file__).parent / "golden"

TERNARY_BOUND = 12
TERNARY_HEIGHT = 200


def design_ok(v, b, r, k, lam) -> bool:
    return v * r == b * k and r * (k - 1) == lam * (v - 1)


def ternary_brute(a: int, b: int, c: int, height: int) -> bool:
    """Is there (x, y, z) != 0 with |x|,|y| <= height and a x^2 + b y^2 + c z^2 = 0?

    z is solved for, so its size is not limited; x = y = 0 forces z = 0.
    """
    squares = [x * x for x in range(height + 1)]
    for x2 in squares:
        ax = a * x2
        for y2 in squares:
            if x2 == 0 and y2 == 0:
                continue
            num = -(ax + b * y2)
            if num % c:
                continue
            z2 = num // c
            if z2 >= 0 and isqrt(z2) ** 2 == z2:
                return True
    return False


def canonical_triple(a: int, b: int, c: int) -> tuple[int, int, int]:
    """Representative of (a, b, c) up to permutation and overall sign."""
    return min(min(t, tuple(-x for x in t)) for t in permutations((a, b, c)))


def ternary_triples(bound: int = TERNARY_BOUND) -> list[tuple[int, int, int]]:
    nz = [x for x in range(-bound, bound + 1) if x]
    return sorted({canonical_triple(*t) for t in product(nz, repeat=3)})


def pell_brute(limit: int) -> list[int]:
    """All m <= limit with (2m^2 + 1)/3 a perfect square."""
    out = []
    for m in range(1, limit + 1):
        n = 2 * m * m + 1
        if n % 3 == 0 and isqrt(n // 3) ** 2 == n // 3:
            out.append(m)
    return out


def integral_params_brute(point_at, denominators: int, t_range: tuple[int, int]) -> list[Fraction]:
    """Parameters t = n/denominators in a window whose point is integral."""
    lo, hi = t_range
    out = []
    for n in range(lo * denominators, hi * denominators + 1):
        t = Fraction(n, denominators)
        try:
            pt = point_at(t)
        except ZeroDivisionError:
            continue
        if all(Fraction(x).denominator == 1 for x in pt):
            out.append(t)
    return out


def pair_sums(v: int, blocks: dict) -> dict:
    """Weight on each pair of points, summed block by block."""
    sums = {pr: 0 for pr in combinations(range(v), 2)}
    for block, c in blocks.items():
        s = sorted(block)
        for i in range(len(s)):
            for j in range(i + 1, len(s)):
                sums[(s[i], s[j])] += c
    return sums


def _det(m: list[list[int]]) -> int:
    """Exact determinant by fraction-free expansion along the first row."""
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * _det([row[:j] + row[j + 1:] for row in m[1:]]) for j in range(len(m)))


def _minor_gcds(rows: list[list[int]]) -> tuple[int, int]:
    """(rank, gcd of the nonzero maximal minors) of a small integer matrix."""
    n, m = len(rows), len(rows[0])
    for size in range(min(n, m), 0, -1):
        g = 0
        for ri in combinations(range(n), size):
            for ci in combinations(range(m), size):
                g = gcd(g, _det([[rows[i][j] for j in ci] for i in ri]))
        if g:
            return size, g
    return 0, 0


def integer_solvable(a: list[list[int]], b: list[int]) -> bool:
    """A x = b has an integer solution iff A and [A | b] have the same rank
    and the same gcd of maximal nonzero minors."""
    aug = [row + [bi] for row, bi in zip(a, b)]
    return _minor_gcds(a) == _minor_gcds(aug)


def regenerate() -> None:
    GOLDEN.mkdir(exist_ok=True)
    triples = ternary_triples()
    solvable = [list(t) for t in triples if ternary_brute(*t, TERNARY_HEIGHT)]
    data = {"coefficient_bound": TERNARY_BOUND, "height": TERNARY_HEIGHT,
            "triples": len(triples), "solvable": solvable}
    (GOLDEN / "ternary_height200.json").write_text(json.dumps(data) + "\n")
    (GOLDEN / "pell_m_upto_2e5.json").write_text(json.dumps(pell_brute(200_000)) + "\n")


if __name__ == "__main__":
    regenerate()
