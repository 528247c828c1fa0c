from __future__ import annotations

import csv
import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from designlines.variety import DesignPoint  # noqa: E402

GOLDEN = Path(__file__).parent / "golden"


def read_golden(name: str) -> list[dict]:
    with open(GOLDEN / name, encoding="utf-8") as fh:
        return list(csv.DictReader(line for line in fh if not line.startswith("#")))


def golden_eval(expr: str, env: dict) -> Fraction:
    """Evaluate an arithmetic formula from a golden file over exact rationals."""
    return eval(expr, {"__builtins__": {}}, env)


def pattern_relation(row: dict, rng):
    """A random relation with the coefficient shape of a row of golden/table_v.csv."""
    from designlines.lines import LinearRelation

    free = {name: Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for name in "VBRKL"}
    coeffs = {name: golden_eval(row[name], free) for name in "VBRKL"}
    if not any(coeffs.values()):
        coeffs["V" if row["V"] == "V" else "R"] = Fraction(1)
        coeffs = {name: golden_eval(row[name], {**free, **coeffs}) for name in "VBRKL"}
    return LinearRelation(**coeffs, A=golden_eval(row["A"], coeffs))


# --- random rational data -------------------------------------------------

small_fractions = st.builds(
    Fraction,
    st.integers(min_value=-30, max_value=30),
    st.integers(min_value=1, max_value=12),
)
nonzero_fractions = small_fractions.filter(lambda x: x != 0)


@st.composite
def variety_points(draw) -> DesignPoint:
    """A rational point of the variety built from (v, k, lam) with k not 0, 1.

    r and b are solved from the two defining equations directly.
    """
    v = draw(small_fractions)
    k = draw(small_fractions.filter(lambda x: x not in (0, 1)))
    lam = draw(small_fractions)
    r = lam * (v - 1) / (k - 1)
    b = v * r / k
    return DesignPoint(v, b, r, k, lam)


@st.composite
def line_parameters(draw) -> tuple[Fraction, Fraction]:
    f = draw(nonzero_fractions)
    p = draw(nonzero_fractions.filter(lambda x: x != f))
    return f, p


def random_fraction(rng: random.Random, num: int = 40, den: int = 12) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def random_nonzero(rng: random.Random, *avoid: Fraction) -> Fraction:
    while True:
        x = random_fraction(rng)
        if x != 0 and x not in avoid:
            return x


def random_variety_point(rng: random.Random) -> DesignPoint:
    while True:
        v, k, lam = random_fraction(rng), random_fraction(rng), random_fraction(rng)
        if k in (0, 1):
            continue
        r = lam * (v - 1) / (k - 1)
        return DesignPoint(v, v * r / k, r, k, lam)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240607)


# --- acceptance report ----------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
