"""The grid covering argument behind the 6/25 bound, checked region by region.

T is cut into 100 small triangles.  Wherever the five points sit, one of
three cases applies, and in each some triple is forced into a region of
diameter at most 4L/10 or into a parallelogram of area at most 48/100.
The region files under smalltri/data describe the shapes; the checks
re-derive every covering claim from them.

    python demos/02_cases.py
"""

from smalltri.cases import check_all

for rep in check_all():
    print(f"Case {rep.case}: {'all checks pass' if rep.passed else 'FAILED'}")
    for c in rep.checks:
        print(f"  [{'ok' if c.passed else 'xx'}] {c.name}" + (f"  -- {c.detail}" if c.detail else ""))
    for n in rep.notes:
        print("  note:", n)
