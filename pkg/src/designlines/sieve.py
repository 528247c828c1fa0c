"""Existence sieve for integral parameter points.

Nonexistence: Bruck-Ryser-Chowla (with Schutzenberger's even-v case), the
Hall-Connor transfer for quasi-residual designs with lambda = 2, and Fisher's
inequality. Existence: Wilson's difference-family criterion over F_q.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from math import gcd, isqrt, lcm
from typing import Iterable, Mapping

from sympy import factorint
from sympy.ntheory import is_quad_residue

from .variety import DesignError, DesignPoint, Rational, require_on_variety


# Witness searches stop after this many candidate pairs; solvability itself
# is always decided exactly.
WITNESS_SEARCH_LIMIT = 4_000_000


class Outcome(enum.Enum):
    RULED_OUT = "ruled_out"
    NOT_RULED_OUT = "not_ruled_out"
    EXISTS_BY_CRITERION = "exists_by_criterion"
    INAPPLICABLE = "inapplicable"

    def __str__(self) -> str:
        return self.value


_RANK = {
    Outcome.RULED_OUT: 3,
    Outcome.EXISTS_BY_CRITERION: 2,
    Outcome.NOT_RULED_OUT: 1,
    Outcome.INAPPLICABLE: 0,
}


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    reason: str
    text: str = ""
    certificate: object = None
    chain: tuple[Verdict, ...] = ()
    catalog_status: str | None = None

    def __post_init__(self):
        if self.outcome in (Outcome.RULED_OUT, Outcome.EXISTS_BY_CRITERION) and not self.reason:
            raise ValueError(f"{self.outcome} verdicts must carry a reason")

    @property
    def ruled_out(self) -> bool:
        return self.outcome is Outcome.RULED_OUT

    def as_dict(self) -> dict:
        out = {"outcome": str(self.outcome), "reason": self.reason, "text": self.text}
        if self.certificate is not None:
            out["certificate"] = _plain(self.certificate)
        if self.catalog_status is not None:
            out["catalog_status"] = self.catalog_status
        if self.chain:
            out["chain"] = [v.as_dict() for v in self.chain]
        return out


def _plain(x):
    if isinstance(x, Rational):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(y) for y in x]
    if isinstance(x, DesignPoint):
        return str(x)
    return x


class CatalogContradiction(DesignError):
    """Catalog data disagrees with a theorem-backed verdict."""


# --- integer primitives ---------------------------------------------------


def is_square(n: int) -> bool:
    if n < 0:
        raise ValueError("is_square needs n >= 0")
    return isqrt(n) ** 2 == n


def is_prime_power(n: int) -> tuple[int, int] | None:
    """``(prime, exponent)`` when ``n`` is a prime power, else None."""
    if n < 2:
        raise ValueError("is_prime_power needs n >= 2")
    fac = factorint(n)
    if len(fac) != 1:
        return None
    ((p, e),) = fac.items()
    return int(p), int(e)


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """``(core, root)`` with ``n == core * root**2`` and ``core`` squarefree (sign kept)."""
    if n == 0:
        raise ValueError("0 has no squarefree decomposition")
    core, root = (1 if n > 0 else -1), 1
    for p, e in factorint(abs(n)).items():
        root *= p ** (e // 2)
        if e % 2:
            core *= p
    return core, root


# --- Legendre's theorem ---------------------------------------------------


def _legendre_reduce(a: int, b: int, c: int):
    """Reduce ``a x^2 + b y^2 + c z^2`` to squarefree, pairwise coprime form.

    Returns ``(a, b, c, scale)`` where ``scale[i]`` is the rational factor
    with original variable = scale * reduced variable (before clearing
    denominators).
    """
    scale = [Rational(1)] * 3
    coef = [a, b, c]
    changed = True
    while changed:
        changed = False
        # squarefree parts: a = a' s^2 absorbs s into the variable
        for i in range(3):
            core, root = squarefree_decomposition(coef[i])
            if root != 1:
                coef[i] = core
                scale[i] /= root
                changed = True
        g = gcd(*coef)
        if g > 1:
            coef = [x // g for x in coef]
            changed = True
        # a prime p dividing two coefficients: p | z, substitute z = p z'
        # and divide through by p; the third coefficient picks up p
        for i, j, m in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
            g = gcd(coef[i], coef[j])
            if g > 1:
                coef[i] //= g
                coef[j] //= g
                coef[m] *= g
                scale[m] *= g
                changed = True
                break
    return coef[0], coef[1], coef[2], scale


def _legendre_condition(a: int, b: int, c: int) -> bool:
    # reduced form: solvable iff mixed signs and -bc, -ca, -ab are squares
    # modulo |a|, |b|, |c| respectively
    if (a > 0) == (b > 0) == (c > 0):
        return False
    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
        m = abs(x)
        if m > 1 and not is_quad_residue((-y * z) % m, m):
            return False
    return True


def _search_reduced_witness(a: int, b: int, c: int) -> tuple[int, int, int] | None:
    # Holzer-Mordell: some solution has x^2 <= |bc|, y^2 <= |ca|, z^2 <= |ab|
    bounds = [isqrt(abs(b * c)), isqrt(abs(c * a)), isqrt(abs(a * b))]
    coef = [a, b, c]
    # loop over the two smallest boxes, solve for the third variable
    order = sorted(range(3), key=lambda i: bounds[i])
    i, j, t = order
    if (bounds[i] + 1) * (bounds[j] + 1) > WITNESS_SEARCH_LIMIT:
        return None
    for xi in range(bounds[i] + 1):
        for xj in range(bounds[j] + 1):
            if xi == 0 and xj == 0:
                continue
            num = -(coef[i] * xi * xi + coef[j] * xj * xj)
            if num % coef[t]:
                continue
            sq = num // coef[t]
            if sq < 0 or not is_square(sq):
                continue
            sol = [0, 0, 0]
            sol[i], sol[j], sol[t] = xi, xj, isqrt(sq)
            return tuple(sol)
    return None


def ternary_solvable(a: int, b: int, c: int) -> tuple[bool, tuple[int, int, int] | None]:
    """Does ``a x^2 + b y^2 + c z^2 = 0`` have a nontrivial integer solution?

    Decided by Legendre's criterion on the reduced form. The second item is a
    primitive witness when one was found inside the Holzer box (None if the
    form is unsolvable or the box exceeds ``WITNESS_SEARCH_LIMIT``).
    """
    if a * b * c == 0:
        raise ValueError("coefficients must be nonzero")
    ra, rb, rc, scale = _legendre_reduce(a, b, c)
    if not _legendre_condition(ra, rb, rc):
        return False, None
    reduced = _search_reduced_witness(ra, rb, rc)
    if reduced is None:
        return True, None
    vals = [s * x for s, x in zip(scale, reduced)]
    den = lcm(*(v.denominator for v in vals))
    sol = [int(v * den) for v in vals]
    g = gcd(*sol)
    sol = tuple(x // g for x in sol)
    assert a * sol[0] ** 2 + b * sol[1] ** 2 + c * sol[2] ** 2 == 0
    return True, sol


# --- symmetric designs ----------------------------------------------------


def _proper_integral(p: DesignPoint) -> bool:
    return p.is_integral() and p.lam >= 1 and 2 <= p.k <= p.v - 1


def brc(p: DesignPoint) -> Verdict:
    """Bruck-Ryser-Chowla test for symmetric parameters ``(v, k, lam)``."""
    require_on_variety(p)
    if p.b != p.v:
        return Verdict(Outcome.INAPPLICABLE, "brc", "not symmetric (b != v)")
    if not _proper_integral(p):
        return Verdict(Outcome.INAPPLICABLE, "brc", "not an integral proper point")
    v, _, _, k, lam = p.int_tuple()
    n = k - lam
    if v % 2 == 0:
        if is_square(n):
            return Verdict(Outcome.NOT_RULED_OUT, "brc-even", f"order n={n} is a square",
                           certificate={"n": n, "sqrt": isqrt(n)})
        return Verdict(Outcome.RULED_OUT, "brc-even",
                       f"v={v} even and order n={n} is not a square", certificate={"n": n})
    sign = -1 if ((v - 1) // 2) % 2 else 1
    ok, wit = ternary_solvable(1, -n, -sign * lam)
    form = f"x^2 = {n} y^2 {'+' if sign > 0 else '-'} {lam} z^2"
    if ok:
        return Verdict(Outcome.NOT_RULED_OUT, "brc-odd", f"{form} is solvable",
                       certificate={"form": (1, -n, -sign * lam), "witness": wit})
    return Verdict(Outcome.RULED_OUT, "brc-odd", f"{form} has no nontrivial solution",
                   certificate={"form": (1, -n, -sign * lam)})


def hall_connor(p: DesignPoint) -> Verdict:
    """Quasi-residual designs with lambda = 2 embed in a symmetric parent
    ``(b+1, b+1, r, r, 2)``; a ruled-out parent rules the point out."""
    require_on_variety(p)
    if not _proper_integral(p) or p.lam != 2 or p.r != p.k + p.lam:
        return Verdict(Outcome.INAPPLICABLE, "hall-connor", "needs an integral quasi-residual point with lambda=2")
    parent = DesignPoint(p.b + 1, p.b + 1, p.r, p.r, 2)
    pv = brc(parent)
    text = f"parent {parent}: {pv.text} (simple-design convention)"
    if pv.ruled_out:
        return Verdict(Outcome.RULED_OUT, "hall-connor", text, certificate={"parent": parent}, chain=(pv,))
    return Verdict(Outcome.NOT_RULED_OUT, "hall-connor", text, certificate={"parent": parent}, chain=(pv,))


def wilson_t7(q: int, k: int, lam: int) -> Verdict:
    """Wilson's criterion for a ``(q, k, lam)`` difference family in F_q."""
    if k < 2 or lam < 1:
        raise ValueError("wilson_t7 needs k >= 2 and lam >= 1")
    if (2 * lam) % k and (2 * lam) % (k - 1):
        return Verdict(Outcome.INAPPLICABLE, "wilson", "2*lambda is a multiple of neither k nor k-1")
    pp = is_prime_power(q) if q >= 2 else None
    if pp is None:
        return Verdict(Outcome.NOT_RULED_OUT, "wilson", f"{q} is not a prime power")
    if q < k:
        return Verdict(Outcome.NOT_RULED_OUT, "wilson", f"q={q} < k={k}")
    if (lam * (q - 1)) % (k * (k - 1)):
        return Verdict(Outcome.NOT_RULED_OUT, "wilson", "k(k-1) does not divide lambda(q-1)")
    return Verdict(Outcome.EXISTS_BY_CRITERION, "wilson",
                   f"({q},{k},{lam}) difference family in GF({pp[0]}^{pp[1]})",
                   certificate={"prime": pp[0], "exponent": pp[1]})


# --- the 3l^2 - 2m^2 = 1 family -------------------------------------------


def pell_solutions(count: int) -> list[tuple[int, int]]:
    """First ``count`` positive solutions ``(l, m)`` of ``3 l^2 - 2 m^2 = 1``."""
    if count < 1:
        raise ValueError("count must be >= 1")
    out = [(1, 1)]
    while len(out) < count:
        l, m = out[-1]
        out.append((5 * l + 4 * m, 6 * l + 5 * m))
    return out


def cb_parent_check(m: int) -> Verdict:
    """Symmetric source ``(3m^2+1, m^2, (m^2-1)/3)`` of the association-scheme
    quasi-derived family."""
    if m < 2:
        raise ValueError("m must be >= 2")
    if m % 3 == 0:
        raise DesignError("3 | m gives non-integral parameters")
    v, k, lam = 3 * m * m + 1, m * m, (m * m - 1) // 3
    n = k - lam
    if m % 2 == 0:
        x, y, z = 1, 1, m
        # order n and lambda: n X^2 + lam Y^2 = Z^2
        assert n * x * x + lam * y * y == z * z
        return Verdict(Outcome.NOT_RULED_OUT, "brc-odd",
                       f"({v},{k},{lam}): Z^2 = {n} X^2 + {lam} Y^2 solved by X=Y=1, Z={m}",
                       certificate=(x, y, z))
    if is_square(n):
        return Verdict(Outcome.NOT_RULED_OUT, "brc-even", f"({v},{k},{lam}): order {n} = {isqrt(n)}^2",
                       certificate={"l": isqrt(n), "m": m})
    return Verdict(Outcome.RULED_OUT, "brc-even", f"({v},{k},{lam}): order {n} is not a square",
                   certificate={"n": n})


# --- aggregate ------------------------------------------------------------


def merge(verdicts: Iterable[Verdict]) -> Verdict:
    """Strongest verdict wins; ties keep the first. All go in the chain."""
    verdicts = tuple(verdicts)
    best = max(verdicts, key=lambda v: _RANK[v.outcome], default=None)
    if best is None or best.outcome in (Outcome.INAPPLICABLE, Outcome.NOT_RULED_OUT):
        ran = [v.reason for v in verdicts if v.outcome is Outcome.NOT_RULED_OUT]
        text = f"passes {', '.join(ran)}" if ran else "no test rules it out"
        return Verdict(Outcome.NOT_RULED_OUT, "sieve", text, chain=verdicts)
    return replace(best, chain=verdicts)


def _catalog_lookup(catalog, point: DesignPoint):
    if catalog is None or not point.is_integral():
        return None
    if isinstance(catalog, Mapping):
        return catalog.get(point.int_tuple())
    for entry in catalog:
        if entry.point == point:
            return entry
    return None


def sieve_point(p: DesignPoint, catalog=None) -> Verdict:
    """Run every applicable test on ``p`` and merge the results.

    ``catalog`` is an iterable of catalog entries or a mapping from integer
    tuples to entries; its status is attached as ``catalog_status``.
    """
    require_on_variety(p)
    chain: list[Verdict] = []
    if not p.is_integral():
        chain.append(Verdict(Outcome.RULED_OUT, "integrality", "parameters are not all integers"))
    elif min(p.b, p.r, p.lam) < 1 or p.v < 1:
        chain.append(Verdict(Outcome.RULED_OUT, "positivity", "needs v, b, r, lambda >= 1"))
    elif not 2 <= p.k <= p.v - 1:
        chain.append(Verdict(Outcome.INAPPLICABLE, "proper", "block size outside 2..v-1 (trivial design)"))
    else:
        if p.b < p.v:
            chain.append(Verdict(Outcome.RULED_OUT, "fisher", f"b={p.b} < v={p.v}"))
        else:
            chain.append(Verdict(Outcome.NOT_RULED_OUT, "fisher", "b >= v"))
        if p.b == p.v:
            chain.append(brc(p))
        if p.lam == 2 and p.r == p.k + p.lam:
            chain.append(hall_connor(p))
        v, _, _, k, lam = p.int_tuple()
        wv = wilson_t7(v, k, lam)
        if wv.outcome is not Outcome.INAPPLICABLE:
            chain.append(wv)
    verdict = merge(chain)
    entry = _catalog_lookup(catalog, p)
    if entry is None:
        return verdict
    status = str(entry.status)
    if verdict.ruled_out and status.startswith("exists"):
        raise CatalogContradiction(f"{p} catalogued as {status} but {verdict.reason}: {verdict.text}")
    if verdict.outcome is Outcome.EXISTS_BY_CRITERION and status == "nonexistent":
        raise CatalogContradiction(f"{p} catalogued nonexistent but {verdict.text}")
    return replace(verdict, catalog_status=status)


__all__ = [
    "Outcome", "Verdict", "CatalogContradiction", "is_square", "is_prime_power",
    "ternary_solvable", "brc", "hall_connor", "wilson_t7", "pell_solutions",
    "cb_parent_check", "sieve_point", "merge",
]
