"""
From a skeleton to a measure
============================

Two branches of a curve meet at a node.  The edge joining them maps onto
the segment [0, 1] of the circle R/2Z; the branch points map to its ends.
Only the edge is non-degenerate, so the canonical measure is Lebesgue
measure on [0, 1].
"""

from fractions import Fraction as F

from polytrop import (
    AffineMap,
    CanonicalSimplex,
    ExponentMap,
    Incidence,
    Lattice,
    NondegEntry,
    PeriodicComplex,
    PiecewiseAffineMap,
    SkeletonModel,
    Stratum,
    assemble_canonical,
    face_chart,
    polytope_from_vertices,
    pushforward_exact,
    quotient,
    strict_supports,
    validate_nondeg_consistency,
)


def segment(a, b):
    return polytope_from_vertices([(F(a),), (F(b),)])


def show(P):
    return "[" + ", ".join(str(v[0]) for v in P.vertices) + "]"


skeleton = SkeletonModel(
    1,
    [Stratum("node", 0), Stratum("left", 1), Stratum("right", 1)],
    [CanonicalSimplex("node", 1, 1), CanonicalSimplex("left", 0, 1), CanonicalSimplex("right", 0, 1)],
    [
        Incidence("left", "node", face_chart(0, 1, [0], 1)),
        Incidence("right", "node", face_chart(0, 1, [1], 1)),
    ],
)
fmaps = {
    "node": ExponentMap([[1]], [0]),
    "left": ExponentMap([[]], [0]),
    "right": ExponentMap([[]], [1]),
}
nondeg = {
    "node": NondegEntry(1, 0),
    "left": NondegEntry(0, 0),
    "right": NondegEntry(0, 0),
}

circle = quotient(PeriodicComplex.from_top_cells([segment(0, 1), segment(1, 2)], Lattice.standard(1, 2)))
X = assemble_canonical(skeleton, nondeg, None, fmaps, circle)
for cid, w in X.measure.positive().items():
    print("cell", show(circle.cell(cid)), "density", w)

# nothing in the data contradicts itself
print("consistency issues:", validate_nondeg_consistency(X))

# doubling onto R/4Z: the image is [0, 2], density halves, mass stays 1
big = quotient(PeriodicComplex.from_top_cells([segment(0, 2), segment(2, 4)], Lattice.standard(1, 4)))
double = PiecewiseAffineMap(circle, Lattice.standard(1, 4), {c: AffineMap([[2]], [0]) for c in circle.ids})
image = pushforward_exact(X.measure, double, big)
for cid, w in image.positive().items():
    print("pushed forward: cell", show(big.cell(cid)), "density", w)
print("mass", image.mass)
print("strict supports after the push:", len(strict_supports(image)))
