"""Dyadic and decimal rationals of the middle-third Cantor set, found by exhaustive search."""

from zicantor import IfsSpec, SmoothFamily, finiteness_search

cantor = IfsSpec.from_literals("3", "0,2")

for label, family, cap in [("dyadic", "1+i", 2**10), ("decimal", "1+i,2+i,2-i", 10**5)]:
    rep = finiteness_search(cantor, SmoothFamily.parse(family), cap)
    values = rep.values(include_integral=False)
    print(f"{label}: {len(values)} non-integer values up to height {cap}, stabilized={rep.stabilized}")
    for f in rep.non_integral:
        print(f"  {str(f.value):>6}  height {f.height:>3}  coding {f.coding.minimized()}")
    print("  growth:", ", ".join(f"{c}:{n}" for c, n in rep.growth[:6]), "...")
    print()
print(rep.caveat)
