"""Integer multiplicity functions on k-subsets with constant pair sums.

A multiplicity function assigns an integer (possibly negative) to each
k-subset of ``{0, ..., v-1}``. When every pair of points is covered with the
same total weight ``lam`` the function realizes the parameter point
``(v, sum of weights, r, k, lam)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Mapping

from .variety import DesignError, DesignPoint

Block = tuple[int, ...]

MAX_COLUMNS = 100_000


@dataclass(frozen=True)
class MultiplicityFunction:
    v: int
    k: int
    entries: Mapping[Block, int] = field(default_factory=dict)

    def __post_init__(self):
        if not 1 <= self.k <= self.v:
            raise DesignError(f"need v >= k >= 1, got v={self.v}, k={self.k}")
        clean: dict[Block, int] = {}
        for key, c in self.entries.items():
            block = tuple(sorted(key))
            if len(block) != self.k or len(set(block)) != self.k:
                raise DesignError(f"{key} is not a {self.k}-subset")
            if block[0] < 0 or block[-1] >= self.v:
                raise DesignError(f"{key} leaves the ground set 0..{self.v - 1}")
            if block in clean:
                raise DesignError(f"block {block} listed twice")
            if int(c) != c:
                raise DesignError(f"multiplicity {c!r} is not an integer")
            if c:
                clean[block] = int(c)
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    @classmethod
    def from_blocks(cls, v: int, k: int, blocks: Iterable[Iterable[int]], c: int = 1) -> "MultiplicityFunction":
        entries: dict[Block, int] = {}
        for b in blocks:
            key = tuple(sorted(b))
            entries[key] = entries.get(key, 0) + c
        return cls(v, k, entries)

    def total(self) -> int:
        return sum(self.entries.values())

    def support(self) -> int:
        return len(self.entries)

    def __sub__(self, other: "MultiplicityFunction") -> "MultiplicityFunction":
        if (self.v, self.k) != (other.v, other.k):
            raise DesignError("ground sets or block sizes differ")
        out = dict(self.entries)
        for key, c in other.entries.items():
            out[key] = out.get(key, 0) - c
        return MultiplicityFunction(self.v, self.k, out)

    def to_text(self) -> str:
        lines = [f"{self.v} {self.k}"]
        lines += [f"{c}: {' '.join(map(str, key))}" for key, c in self.entries.items()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "MultiplicityFunction":
        rows = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        if not rows:
            raise DesignError("empty multiplicity function text")
        try:
            v, k = map(int, rows[0].split())
        except ValueError:
            raise DesignError(f"bad header {rows[0]!r}; expected 'v k'") from None
        entries: dict[Block, int] = {}
        for ln in rows[1:]:
            head, sep, tail = ln.partition(":")
            if not sep:
                raise DesignError(f"bad line {ln!r}; expected 'c: i1 ... ik'")
            try:
                key = tuple(sorted(int(x) for x in tail.split()))
                c = int(head)
            except ValueError:
                raise DesignError(f"bad line {ln!r}") from None
            if key in entries:
                raise DesignError(f"block {key} listed twice")
            entries[key] = c
        return cls(v, k, entries)


# --- verification ---------------------------------------------------------


@dataclass(frozen=True)
class BalanceReport:
    point: DesignPoint | None
    offending: tuple | None = None  # ((x, y), sum at that pair, expected sum) or ((x,), ...)

    def __bool__(self) -> bool:
        return self.point is not None


def balance_report(mf: MultiplicityFunction) -> BalanceReport:
    v, k = mf.v, mf.k
    point_sum = [0] * v
    pair_sum: dict[tuple[int, int], int] = {}
    for block, c in mf.entries.items():
        for x in block:
            point_sum[x] += c
        for pr in combinations(block, 2):
            pair_sum[pr] = pair_sum.get(pr, 0) + c
    lam = None
    for pr in combinations(range(v), 2):
        s = pair_sum.get(pr, 0)
        if lam is None:
            lam = s
        elif s != lam:
            return BalanceReport(None, (pr, s, lam))
    if k == 1:
        for x in range(1, v):
            if point_sum[x] != point_sum[0]:
                return BalanceReport(None, ((x,), point_sum[x], point_sum[0]))
    lam = 0 if lam is None else lam
    return BalanceReport(DesignPoint(v, mf.total(), point_sum[0], k, lam))


def verify(mf: MultiplicityFunction) -> DesignPoint | None:
    """The parameter point realized by ``mf``, or None if pair sums differ.

    Use :func:`balance_report` to see which pair breaks the balance.
    """
    return balance_report(mf).point


# --- divisibility conditions ----------------------------------------------


def gj_conditions(v: int, k: int, lam: int) -> bool:
    """``(k-1) | lam(v-1)`` and ``k(k-1) | lam v(v-1)``."""
    if not (v >= k >= 2 and lam >= 1):
        raise DesignError(f"need v >= k >= 2 and lam >= 1, got ({v},{k},{lam})")
    return (lam * (v - 1)) % (k - 1) == 0 and (lam * v * (v - 1)) % (k * (k - 1)) == 0


def target_point(v: int, k: int, lam: int) -> DesignPoint:
    return DesignPoint(v, lam * v * (v - 1) // (k * (k - 1)), lam * (v - 1) // (k - 1), k, lam)


# --- integer lattice solver -----------------------------------------------


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _axpy(a: int, u: dict, b: int, w: dict) -> dict:
    """Sparse ``a*u + b*w``."""
    out = {i: a * x for i, x in u.items()} if a else {}
    if b:
        for i, x in w.items():
            s = out.get(i, 0) + b * x
            if s:
                out[i] = s
            else:
                out.pop(i, None)
    return out


class EchelonLattice:
    """Row-echelon (Hermite-style) basis of the lattice spanned by integer
    vectors added so far, each basis vector tracking the integer combination
    of inputs that produces it.

    Vectors are sparse dicts ``row -> value``; pivots are the smallest row
    index present, kept positive.
    """

    def __init__(self):
        self.basis: dict[int, tuple[dict, dict]] = {}

    def add(self, vec: dict, label) -> bool:
        """Insert an input vector; True if the lattice changed."""
        w, cw = dict(vec), {label: 1}
        changed = False
        while w:
            i = min(w)
            if i not in self.basis:
                if w[i] < 0:
                    w, cw = _axpy(-1, w, 0, {}), _axpy(-1, cw, 0, {})
                self.basis[i] = (w, cw)
                return True
            u, cu = self.basis[i]
            a, b = u[i], w[i]
            g, x, y = _xgcd(a, b)
            if g < 0:
                g, x, y = -g, -x, -y
            if b % a:
                # unimodular 2x2 step: new pivot row has pivot gcd(a, b)
                self.basis[i] = (_axpy(x, u, y, w), _axpy(x, cu, y, cw))
                changed = True
            w, cw = _axpy(a // g, w, -(b // g), u), _axpy(a // g, cw, -(b // g), cu)
        return changed

    def express(self, target: dict) -> dict | None:
        """Integer combination of inputs equal to ``target``, or None."""
        t = dict(target)
        combo: dict = {}
        while t:
            i = min(t)
            if i not in self.basis:
                return None
            u, cu = self.basis[i]
            q, rem = divmod(t[i], u[i])
            if rem:
                return None
            t = _axpy(1, t, -q, u)
            combo = _axpy(1, combo, q, cu)
        return combo

    @property
    def rank(self) -> int:
        return len(self.basis)


def solve_integer_system(columns: Iterable[tuple[object, dict]], target: dict) -> dict | None:
    """Integer ``x`` with ``sum x_j * column_j = target``; columns are
    ``(label, sparse vector)`` pairs. Stops as soon as ``target`` lies in the
    lattice spanned by the columns seen so far."""
    lat = EchelonLattice()
    for label, col in columns:
        if lat.add(col, label):
            combo = lat.express(target)
            if combo is not None:
                return combo
    return lat.express(target)


# --- pair-constraint systems ----------------------------------------------


def _pair_index(v: int) -> dict[tuple[int, int], int]:
    return {pr: i for i, pr in enumerate(combinations(range(v), 2))}


def _solve_full(v: int, k: int, lam: int) -> MultiplicityFunction | None:
    idx = _pair_index(v)

    def columns():
        for block in combinations(range(v), k):
            yield block, {idx[pr]: 1 for pr in combinations(block, 2)}

    combo = solve_integer_system(columns(), {i: lam for i in idx.values()})
    return None if combo is None else MultiplicityFunction(v, k, combo)


def cyclic_orbits(v: int, k: int) -> list[list[Block]]:
    """Orbits of k-subsets of Z_v under ``x -> x+1``, each listed from its
    lexicographically least member."""
    seen: set[Block] = set()
    orbits = []
    for block in combinations(range(v), k):
        if block in seen:
            continue
        orbit = []
        cur = block
        while cur not in seen:
            seen.add(cur)
            orbit.append(cur)
            cur = tuple(sorted((x + 1) % v for x in cur))
        orbits.append(orbit)
    return orbits


def _solve_orbit(v: int, k: int, lam: int) -> MultiplicityFunction | None:
    """Look for a solution constant on cyclic orbits. Pairs fall into orbits
    by difference ``d = 1..v//2``; one equation per pair orbit, taken at the
    representative pair ``{0, d}``."""
    orbits = cyclic_orbits(v, k)
    ndiff = v // 2

    def columns():
        for j, orbit in enumerate(orbits):
            col: dict[int, int] = {}
            for block in orbit:
                if block[0] != 0:
                    continue
                for y in block[1:]:
                    if y <= ndiff:
                        col[y - 1] = col.get(y - 1, 0) + 1
            if col:
                yield j, col

    combo = solve_integer_system(columns(), {d: lam for d in range(ndiff)})
    if combo is None:
        return None
    entries = {block: c for j, c in combo.items() for block in orbits[j]}
    return MultiplicityFunction(v, k, entries)


def solve(v: int, k: int, lam: int, method: str = "auto") -> MultiplicityFunction:
    """A multiplicity function on k-subsets of ``{0..v-1}`` with every pair
    sum equal to ``lam``.

    ``method``: ``"orbit"`` (cyclic ansatz only), ``"full"`` (the whole
    pair-by-block system), or ``"auto"`` (orbit first, then full).
    """
    if not gj_conditions(v, k, lam):
        raise DesignError(f"divisibility conditions fail for ({v},{k},{lam})")
    if comb(v, k) > MAX_COLUMNS:
        raise DesignError(f"C({v},{k}) = {comb(v, k)} exceeds the bound {MAX_COLUMNS}")
    if method not in ("auto", "orbit", "full"):
        raise DesignError(f"unknown method {method!r}")
    mf = None
    if method in ("auto", "orbit"):
        mf = _solve_orbit(v, k, lam)
        if mf is None and method == "orbit":
            raise DesignError(f"no cyclically invariant solution for ({v},{k},{lam})")
    if mf is None:
        mf = _solve_full(v, k, lam)
    if mf is None:
        raise DesignError(f"pair system has no integer solution for ({v},{k},{lam})")
    got = verify(mf)
    if got != target_point(v, k, lam):
        raise AssertionError(f"solver produced {got}, expected {target_point(v, k, lam)}")
    return mf


__all__ = [
    "MultiplicityFunction", "BalanceReport", "balance_report", "verify", "gj_conditions",
    "target_point", "solve", "solve_integer_system", "EchelonLattice", "cyclic_orbits",
]
