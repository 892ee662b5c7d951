"""
Diagonal contraction
====================

Take the product of N copies of a measure and apply the difference map
(x_1, ..., x_N) -> (x_2 - x_1, ..., x_N - x_{N-1}).  The diagonal
direction is in its kernel, so a top-dimensional cell of the product
always loses dimension.  A point has no such cell.
"""

from fractions import Fraction as F

from polytrop import (
    Lattice,
    PeriodicComplex,
    PlaceTropData,
    PolytopalMeasure,
    TropSubvariety,
    find_contradiction,
    is_tropically_trivial,
    polytope_from_vertices,
    quotient,
)

h = F(1, 2)
tris = [polytope_from_vertices([(a, b), (a + h, b), (a, b + h)]) for a in (0, h) for b in (0, h)]
tris += [polytope_from_vertices([(a + h, b), (a, b + h), (a + h, b + h)]) for a in (0, h) for b in (0, h)]
plane = quotient(PeriodicComplex.from_top_cells(tris, Lattice.standard(2)))

one_triangle = PolytopalMeasure(plane, {plane.top_ids()[0]: F(2)})
x = PlaceTropData("v", TropSubvariety.from_measure(one_triangle, stabilizer_trivial=True))

for N in (2, 3):
    v = find_contradiction(x, N)
    w = v.witness
    print(f"N={N}: {v.kind}, cell of dim {w['dim']} maps to dim {w['alpha_dim']}")

vertex = next(c for c in plane.ids if plane.cell(c).dim == 0)
dot = PlaceTropData("v", TropSubvariety.from_measure(PolytopalMeasure(plane, {vertex: 1}), stabilizer_trivial=True))
print("point:", find_contradiction(dot, 2).kind)
print("tropically trivial?", is_tropically_trivial([dot]), is_tropically_trivial([x, dot]))
