"""Base -2+i with digits {0, 1}: dimension below one, and no rational with a 3-smooth denominator except 0."""

from zicantor import IfsSpec, SmoothFamily, coding_of, finiteness_search, live_graph, similarity_dimension

spec = IfsSpec.from_literals("-2+i", "0,1")
print(f"similarity dimension {similarity_dimension(spec):.6f}")

for cap in (3**7, 3**8):
    rep = finiteness_search(spec, SmoothFamily.parse("3"), cap)
    print(f"cap {cap}: values {[str(v) for v in rep.values()]} stabilized={rep.stabilized}")

# other denominators do carry points, e.g. the fixed point of the second map
for gamma in ("1+i", "2+i", "-3+i"):
    pts = live_graph(spec, gamma).points()
    print(f"denominator {gamma}: {[f'{p} = {coding_of(spec, p)}' for p in pts]}")
