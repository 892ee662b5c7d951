"""
Periodic complexes on a torus
=============================

Build a decomposition of the plane that repeats under a lattice, look at
its cells modulo the lattice, cut it, and watch the validator catch a bad
input.
"""

from fractions import Fraction as F

from polytrop import (
    Hyperplane,
    Lattice,
    PeriodicComplex,
    PolytropError,
    polytope_from_vertices,
    quotient,
    refine,
)

h = F(1, 2)

# four half-unit squares tile one period of Z^2
squares = [
    polytope_from_vertices([(a, b), (a + h, b), (a, b + h), (a + h, b + h)])
    for a in (0, h)
    for b in (0, h)
]
grid = PeriodicComplex.from_top_cells(squares, Lattice.standard(2))
torus = quotient(grid)
print("cells mod Z^2 by dimension:", torus.count_by_dim())

# the top cells add up to one fundamental domain
print("volume of top cells:", sum(torus.cell(c).volume for c in torus.top_ids()))

# cut along the anti-diagonal u + v = 1/2; the whole Z^2-orbit of the line is used
cut = refine(grid, [Hyperplane((1, 1), h)])
print("after the cut:", quotient(cut).count_by_dim())

# a segment as long as the period overlaps its own translate
line = Lattice.standard(1, 2)
try:
    PeriodicComplex.from_top_cells([polytope_from_vertices([(0,), (2,)])], line)
except PolytropError as e:
    print("rejected:", e.report()["violation"])
