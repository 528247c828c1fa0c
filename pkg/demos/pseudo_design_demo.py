"""Integer-weighted block systems that balance every pair.

Run: python demos/pseudo_design_demo.py
"""

from designlines import gj_conditions, solve, verify
from designlines.pseudo import balance_report

for v, k, lam in [(7, 3, 1), (15, 5, 2), (8, 3, 1), (16, 6, 2)]:
    if not gj_conditions(v, k, lam):
        print(f"({v},{k},{lam}): divisibility conditions fail, no pseudo-design")
        continue
    mf = solve(v, k, lam)
    weights = sorted(set(mf.entries.values()))
    print(f"({v},{k},{lam}): {len(mf.entries)} weighted blocks, weights {weights}, realizes {verify(mf)}")

mf = solve(7, 3, 1)
print("\nthe (7,3,1) solution in text form:")
print(mf.to_text())

broken = mf.__class__(mf.v, mf.k, {**mf.entries, (0, 1, 2): mf.entries.get((0, 1, 2), 0) + 1})
report = balance_report(broken)
print(f"bumping one block unbalances pair {report.offending[0]}")
