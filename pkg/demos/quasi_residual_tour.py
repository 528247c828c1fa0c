"""Walk the lines through a quasi-residual point and list what lives on them.

Run: python demos/quasi_residual_tour.py
"""

from designlines import (
    C, N, DesignPoint, Line, M, apply, bundled_catalog, canonicalize, classify,
    flat_points, integer_points, line_image, lines_through, q_value,
)
from designlines.enumeration import annotate
from designlines.families import parent_line_image, residual_parent

start = DesignPoint(10, 15, 6, 4, 2)
print(f"start at {start}, Q = {q_value(start)}, tags {sorted(map(str, classify(start)))}")
print(f"a symmetric parent would be {residual_parent(start)}")

print("\nlines through it and their flat endpoints:")
for line in lines_through(start):
    ends = ", ".join(f"{pt} in {plane}" for pt, plane in flat_points(line))
    print(f"  {line}: {ends}")

# every point of F0(3/2,1/2) shares r = k + lambda, so the whole line is quasi-residual
line = Line.F0("3/2", "1/2")
print(f"\nintegral points of {line} up to r = 39, with catalog status:")
for pt, status in annotate(integer_points(line, 39), bundled_catalog()):
    print(f"  {str(pt):<22} {status}")
print(f"their would-be parents lie on {parent_line_image(line, 'residual')}")

print("\nthe same line under group elements:")
for word in (["C"], ["N"], ["C", "N"], ["M2"]):
    e = canonicalize(word)
    print(f"  {str(e):<5} sends it to {line_image(e, line)} and {start} to {apply(e, start)}")
print(f"C and N generate S3: (CN)^3 = {canonicalize('CNCNCN')}, M2*C = {M(2) * C}, N*N = {N * N}")
