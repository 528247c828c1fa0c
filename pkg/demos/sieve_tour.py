"""Run the nonexistence sieves along a couple of lines.

Run: python demos/sieve_tour.py
"""

from designlines import DesignPoint, Line, integer_points, pell_solutions, sieve_point, ternary_solvable
from designlines.families import cb_design, derived_parent
from designlines.sieve import brc

print("symmetric designs on F0(1,1/3) (parents of the 10,15,6,4,2 line):")
for pt in integer_points(Line.F0(1, "1/3"), 60):
    verdict = sieve_point(pt)
    print(f"  {str(pt):<22} {verdict.outcome}  {verdict.reason}")

print("\nBRC reduces to a ternary form; a witness certifies solvability:")
for a, b, c in [(1, 1, -3), (1, 1, -2), (1, 1, -5), (3, 5, -7)]:
    ok, witness = ternary_solvable(a, b, c)
    print(f"  {a}x^2 + {b}y^2 + {c}z^2 = 0: {'solvable, e.g. ' + str(witness) if ok else 'only the zero solution'}")

print("\nquasi-derived designs (m^2, 3m^2, ...) and their would-be parents:")
for m in (4, 5, 7, 8, 10, 11):
    d = cb_design(m)
    parent = derived_parent(d)
    print(f"  m = {m:<3} {str(d):<28} parent {str(parent):<26} {brc(parent).outcome}")

print("\nodd m-values where the parent escapes BRC, from 3l^2 - 2m^2 = 1:")
print("  " + ", ".join(str(m) for _, m in pell_solutions(6)))

print(f"\nfull verdict for the Fisher-breaking point {DesignPoint(16, 8, 3, 6, 1)}: "
      f"{sieve_point(DesignPoint(16, 8, 3, 6, 1)).outcome}")
