"""Lattice-periodic polytopal decompositions of R^n and their quotients R^n / Lattice.

A periodic complex is stored through one representative per lattice orbit of
cells (faces of all dimensions included).  Representatives are translated
into a canonical position so that orbit equality becomes tuple equality.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Optional, Sequence

from .errors import (
    BadPairwiseIntersection,
    CoverageGap,
    DimensionMismatch,
    LatticeMismatch,
    LatticeOverlap,
    NotCovered,
    NotFaceClosed,
    NotGammaRational,
    NotLatticeStable,
)
from .geometry import (
    Halfspace,
    Hyperplane,
    Polytope,
    all_faces,
    intersect,
    is_face_of,
    is_gamma_rational,
    polytope_from_halfspaces,
    polytope_from_vertices,
    product,
    relint_contains,
)
from .rational import (
    QVector,
    ValueGroup,
    det,
    dot,
    fmt,
    inverse,
    matvec,
    qmat,
    qvec,
    rational_gcd,
    rank,
    transpose,
    vsub,
)

__all__ = [
    "Lattice",
    "QuotientPoint",
    "PeriodicComplex",
    "QuotientComplex",
    "validate_periodic",
    "quotient",
    "refine",
    "locate",
    "common_refinement",
    "product_complex",
]


@dataclass(frozen=True)
class Lattice:
    """A full-rank lattice in Q^n; ``basis`` rows are the generators."""

    basis: tuple

    def __post_init__(self):
        B = qmat(self.basis)
        if not B or len(B) != len(B[0]):
            raise DimensionMismatch("lattice basis must be a square matrix")
        if rank(B) != len(B):
            raise ValueError("lattice basis vectors are linearly dependent")
        object.__setattr__(self, "basis", B)

    @classmethod
    def standard(cls, n: int, scale=1) -> "Lattice":
        return cls([[Fraction(scale) if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return len(self.basis)

    @cached_property
    def _coord_matrix(self):
        return inverse(transpose(self.basis))

    @property
    def covolume(self) -> Fraction:
        return abs(det(self.basis))

    def coords(self, x: Sequence) -> QVector:
        """Coordinates of x with respect to the basis."""
        return matvec(self._coord_matrix, qvec(x))

    def point(self, y: Sequence) -> QVector:
        y = qvec(y)
        return tuple(sum((y[j] * self.basis[j][i] for j in range(self.n)), Fraction(0)) for i in range(self.n))

    def __contains__(self, x: Sequence) -> bool:
        return all(c.denominator == 1 for c in self.coords(x))

    def canonical(self, x: Sequence) -> QVector:
        """Representative of x + Lattice in the half-open fundamental parallelepiped."""
        y = self.coords(x)
        return self.point([c - math.floor(c) for c in y])

    def same_as(self, other: "Lattice") -> bool:
        return self.n == other.n and all(b in other for b in self.basis) and all(
            b in self for b in other.basis
        )

    def product(self, other: "Lattice") -> "Lattice":
        n, m = self.n, other.n
        rows = [tuple(r) + (Fraction(0),) * m for r in self.basis]
        rows += [(Fraction(0),) * n + tuple(r) for r in other.basis]
        return Lattice(rows)

    def power(self, N: int) -> "Lattice":
        out = self
        for _ in range(N - 1):
            out = out.product(self)
        return out

    def to_json(self) -> list:
        return [[fmt(x) for x in row] for row in self.basis]

    @classmethod
    def from_json(cls, obj) -> "Lattice":
        return cls(qmat(obj))


@dataclass(frozen=True)
class QuotientPoint:
    """A point of R^n / Lattice, held by its canonical representative."""

    lattice: Lattice
    representative: QVector

    def __post_init__(self):
        object.__setattr__(self, "representative", self.lattice.canonical(self.representative))

    def __eq__(self, other):
        if not isinstance(other, QuotientPoint):
            return NotImplemented
        return self.lattice.same_as(other.lattice) and self.representative == other.representative

    def __hash__(self):
        return hash(self.representative)


# ---------------------------------------------------------------------------
# orbit helpers


@lru_cache(maxsize=8192)
def _coord_box(P: Polytope, lat: Lattice) -> tuple[list[Fraction], list[Fraction]]:
    ys = [lat.coords(v) for v in P.vertices]
    return [min(c) for c in zip(*ys)], [max(c) for c in zip(*ys)]


def candidate_translates(A: Polytope, B: Polytope, lat: Lattice):
    """Integer coordinate vectors t for which B + t may meet A (bounding-box test)."""
    alo, ahi = _coord_box(A, lat)
    blo, bhi = _coord_box(B, lat)
    ranges = [
        range(math.ceil(al - bh), math.floor(ah - bl) + 1)
        for al, ah, bl, bh in zip(alo, ahi, blo, bhi)
    ]
    return itertools.product(*ranges)


def canonical_cell(P: Polytope, lat: Lattice) -> Polytope:
    """Orbit representative of P: its least vertex moved into the fundamental domain."""
    v = P.vertices[0]
    t = vsub(lat.canonical(v), v)
    return P.translate(t) if any(t) else P


def _orbit_reps(cells: Iterable[Polytope], lat: Lattice) -> list[Polytope]:
    reps = {canonical_cell(P, lat) for P in cells}
    return sorted(reps)


def _lattice_points_in(P: Polytope, lat: Lattice) -> list[QVector]:
    lo, hi = _coord_box(P, lat)
    pts = []
    for y in itertools.product(*[range(math.ceil(a), math.floor(b) + 1) for a, b in zip(lo, hi)]):
        x = lat.point(y)
        if P.contains(x):
            pts.append(x)
    return pts


# ---------------------------------------------------------------------------
# complexes


@dataclass(frozen=True)
class PeriodicComplex:
    """A validated lattice-periodic Gamma-rational polytopal decomposition of R^n.

    ``cells`` holds one canonical representative per orbit, sorted by
    (dimension, vertices).  Build through :func:`validate_periodic`.
    """

    lattice: Lattice
    gamma: ValueGroup
    cells: tuple

    @property
    def ambient_dim(self) -> int:
        return self.lattice.n

    def top_cells(self) -> list[Polytope]:
        return [c for c in self.cells if c.dim == self.ambient_dim]

    def to_json(self) -> dict:
        return {
            "lattice": self.lattice.to_json(),
            "gamma": self.gamma.to_json(),
            "cells": [c.to_json() for c in self.cells],
        }

    @classmethod
    def from_json(cls, obj, validate: bool = True) -> "PeriodicComplex":
        lat = Lattice.from_json(obj["lattice"])
        gamma = ValueGroup.from_json(obj.get("gamma"))
        cells = [Polytope.from_json(c) for c in obj["cells"]]
        if validate:
            return validate_periodic(cells, lat, gamma)
        return cls.unchecked(cells, lat, gamma)

    @classmethod
    def from_top_cells(
        cls, cells: Iterable[Polytope], lat: Lattice, gamma: ValueGroup = ValueGroup(), check: bool = True
    ) -> "PeriodicComplex":
        """Close the given cells under taking faces, then validate (unless ``check`` is off)."""
        closed = [F for P in cells for F in all_faces(P)]
        if check:
            return validate_periodic(closed, lat, gamma)
        return cls.unchecked(closed, lat, gamma)

    @classmethod
    def unchecked(cls, cells: Iterable[Polytope], lat: Lattice, gamma: ValueGroup = ValueGroup()):
        """Orbit-deduplicated cells with no axiom checks.

        Useful for orbit bookkeeping on families such as the unit cube grid,
        whose closed cells are not injective modulo the lattice.
        """
        return cls(lat, gamma, tuple(_orbit_reps(cells, lat)))


def validate_periodic(cells: Sequence[Polytope], lat: Lattice, g: ValueGroup = ValueGroup()) -> PeriodicComplex:
    """Check the decomposition axioms and return the validated complex.

    Per-cell checks (lattice injectivity, Gamma-rationality) run first in input
    order, then face closure, pairwise intersections and volume accounting.
    The first violation found is raised.
    """
    cells = list(cells)
    if not cells:
        raise CoverageGap("no cells given")
    for i, P in enumerate(cells):
        if P.ambient_dim != lat.n:
            raise DimensionMismatch("cell and lattice dimensions differ", cell=i)

    for i, P in enumerate(cells):
        diff = polytope_from_vertices([vsub(v, w) for v in P.vertices for w in P.vertices])
        hits = [x for x in _lattice_points_in(diff, lat) if any(x)]
        if hits:
            raise LatticeOverlap(
                "cell meets one of its own lattice translates",
                cell=i,
                vertices=P.to_json()["vertices"],
                lattice_vector=[fmt(a) for a in min(hits)],
            )
        if not is_gamma_rational(P, g):
            bad = [fmt(h.constant) for h in P.facets + P.equations if h.constant not in g]
            raise NotGammaRational(
                "cell has a defining constant outside the value group",
                cell=i,
                vertices=P.to_json()["vertices"],
                constants=bad,
            )

    reps = _orbit_reps(cells, lat)
    known = set(reps)
    for P in reps:
        for F in all_faces(P):
            if canonical_cell(F, lat) not in known:
                raise NotFaceClosed(
                    "a face of a cell is not a cell",
                    cell=P.to_json()["vertices"],
                    face=F.to_json()["vertices"],
                )

    for i, P in enumerate(reps):
        for j in range(i, len(reps)):
            Q = reps[j]
            for t in candidate_translates(P, Q, lat):
                if i == j and not any(t):
                    continue
                Qt = Q.translate(lat.point(t))
                X = intersect(P, Qt)
                if X is not None and not (is_face_of(X, P) and is_face_of(X, Qt)):
                    raise BadPairwiseIntersection(
                        "cells meet outside a common face",
                        first=P.to_json()["vertices"],
                        second=Qt.to_json()["vertices"],
                    )

    top = [P for P in reps if P.dim == lat.n]
    total = sum((P.volume for P in top), Fraction(0))
    if total != lat.covolume:
        raise CoverageGap(
            "top-dimensional cells do not fill a fundamental domain",
            volume=fmt(total),
            covolume=fmt(lat.covolume),
        )
    return PeriodicComplex(lat, g, tuple(reps))


@dataclass(frozen=True)
class QuotientComplex:
    """Cells of R^n / Lattice, identified by their index in ``cells``."""

    base: PeriodicComplex
    cells: tuple

    @property
    def lattice(self) -> Lattice:
        return self.base.lattice

    @property
    def gamma(self) -> ValueGroup:
        return self.base.gamma

    @property
    def ambient_dim(self) -> int:
        return self.base.lattice.n

    @property
    def ids(self) -> range:
        return range(len(self.cells))

    def cell(self, cid: int) -> Polytope:
        return self.cells[cid]

    def count_by_dim(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for c in self.cells:
            out[c.dim] = out.get(c.dim, 0) + 1
        return dict(sorted(out.items()))

    def top_ids(self) -> list[int]:
        return [i for i, c in enumerate(self.cells) if c.dim == self.ambient_dim]

    @cached_property
    def _index(self) -> dict:
        return {canonical_cell(c, self.lattice): i for i, c in enumerate(self.cells)}

    def find(self, P: Polytope) -> Optional[int]:
        """Identifier of the cell whose orbit contains P, if any."""
        return self._index.get(canonical_cell(P, self.lattice))

    def to_json(self) -> dict:
        base = PeriodicComplex(self.lattice, self.gamma, self.cells).to_json()
        return {"base": base, "representatives": list(self.ids)}

    @classmethod
    def from_json(cls, obj, validate: bool = True) -> "QuotientComplex":
        if "base" not in obj:
            return quotient(PeriodicComplex.from_json(obj, validate))
        base = obj["base"]
        lat = Lattice.from_json(base["lattice"])
        gamma = ValueGroup.from_json(base.get("gamma"))
        cells = [Polytope.from_json(c) for c in base["cells"]]
        reps = [cells[i] for i in obj.get("representatives", range(len(cells)))]
        pc = validate_periodic(reps, lat, gamma) if validate else PeriodicComplex(lat, gamma, tuple(reps))
        return cls(pc, tuple(reps))


def quotient(c: PeriodicComplex) -> QuotientComplex:
    return QuotientComplex(c, tuple(c.cells))


def _cut_constants(h: Hyperplane, lat: Lattice, g: ValueGroup) -> Fraction:
    if h.constant not in g:
        raise NotGammaRational("cut constant is outside the value group", cut=h.to_json())
    pairings = [dot(h.normal, b) for b in lat.basis]
    if any(p not in g for p in pairings):
        raise NotLatticeStable(
            "lattice translates of the cut are not Gamma-rational", cut=h.to_json()
        )
    return rational_gcd(pairings)


def _split(P: Polytope, h: Hyperplane, step: Fraction) -> list[Polytope]:
    vals = [dot(h.normal, v) for v in P.vertices]
    lo, hi = min(vals), max(vals)
    k0 = math.floor((lo - h.constant) / step) + 1
    cuts = []
    k = k0
    while h.constant + k * step < hi:
        cuts.append(h.constant + k * step)
        k += 1
    pieces = [P]
    for c in cuts:
        nxt = []
        for Q in pieces:
            qv = [dot(h.normal, v) for v in Q.vertices]
            if min(qv) < c < max(qv):
                for hs in (Halfspace(h.normal, c), Halfspace(tuple(-a for a in h.normal), -c)):
                    nxt.append(polytope_from_halfspaces(Q.facets + (hs,), Q.equations, Q.ambient_dim))
            else:
                nxt.append(Q)
        pieces = nxt
    return pieces


def _from_pieces(pieces: Iterable[Polytope], lat: Lattice, g: ValueGroup) -> PeriodicComplex:
    faces_ = {canonical_cell(F, lat) for P in pieces for F in all_faces(P)}
    return PeriodicComplex(lat, g, tuple(sorted(faces_)))


def refine(c: PeriodicComplex, cuts: Sequence) -> PeriodicComplex:
    """Cut every cell by the lattice orbits of the given hyperplanes."""
    hyper = [h if isinstance(h, Hyperplane) else Hyperplane(*h) for h in cuts]
    if not hyper:
        return c
    steps = [_cut_constants(h, c.lattice, c.gamma) for h in hyper]
    pieces = c.top_cells()
    for h, step in zip(hyper, steps):
        pieces = [Q for P in pieces for Q in _split(P, h, step)]
    return _from_pieces(pieces, c.lattice, c.gamma)


def locate(qc: QuotientComplex, x) -> int:
    """Identifier of the unique cell whose relative interior contains x (mod the lattice)."""
    lat = qc.lattice
    pt = x.representative if isinstance(x, QuotientPoint) else qvec(x)
    y = lat.coords(pt)
    found = []
    for cid, P in enumerate(qc.cells):
        lo, hi = _coord_box(P, lat)
        ranges = [range(math.ceil(yi - h), math.floor(yi - l) + 1) for yi, l, h in zip(y, lo, hi)]
        for t in itertools.product(*ranges):
            if relint_contains(P.translate(lat.point(t)), pt):
                found.append(cid)
                break
    if len(found) != 1:
        raise NotCovered("point is not in exactly one open cell", point=[fmt(a) for a in pt], cells=found)
    return found[0]


def common_refinement(a: QuotientComplex, b: QuotientComplex) -> QuotientComplex:
    lat = a.lattice
    if not lat.same_as(b.lattice):
        raise LatticeMismatch("complexes live on different lattices")
    pieces = []
    for A in a.base.top_cells():
        for B in b.base.top_cells():
            for t in candidate_translates(A, B, lat):
                X = intersect(A, B.translate(lat.point(t)))
                if X is not None and X.dim == lat.n:
                    pieces.append(X)
    return quotient(_from_pieces(pieces, lat, a.gamma))


def product_complex(a: QuotientComplex, b: QuotientComplex) -> QuotientComplex:
    """Product of two quotient complexes; cell (i, j) gets id ``i * len(b.cells) + j``."""
    lat = a.lattice.product(b.lattice)
    gamma = a.gamma if a.gamma == b.gamma else ValueGroup()
    cells = tuple(product(P, Q) for P in a.cells for Q in b.cells)
    return QuotientComplex(PeriodicComplex(lat, gamma, cells), cells)


def contained_translates(inner: Polytope, outer: Polytope, lat: Lattice) -> list[QVector]:
    """Lattice vectors t with inner + t contained in outer."""
    out = []
    for t in candidate_translates(outer, inner, lat):
        shift = lat.point(t)
        if all(outer.contains(tuple(a + s for a, s in zip(v, shift))) for v in inner.vertices):
            out.append(shift)
    return out
