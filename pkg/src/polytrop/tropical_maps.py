"""Affine and piecewise-affine maps between tropical tori.

* :class:`ExponentMap` -- ``u -> M u + c`` on a canonical simplex, with an
  integer exponent matrix ``M`` and constants ``c`` in the value group.
* :class:`TropicalHom` -- the linear part of a homomorphism of tori
  ``R^n1 / L1 -> R^n2 / L2``; it must carry ``L1`` into ``L2``.
* :class:`PiecewiseAffineMap` -- one affine map per cell of a quotient complex.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import BadParams, DimensionMismatch, InconsistentOnFaces, LatticeNotPreserved
from .geometry import AffineMap, Polytope, all_faces, apply_affine, linear_image_dim
from .periodic import Lattice, QuotientComplex, QuotientPoint, canonical_cell
from .rational import (
    QVector,
    ValueGroup,
    det,
    fmt,
    inverse,
    matmul,
    matvec,
    qmat,
    qvec,
    rank,
    vadd,
    vsub,
)

__all__ = [
    "ExponentMap",
    "TropicalHom",
    "QuotientMap",
    "PiecewiseAffineMap",
    "eval_faff",
    "rank_faff",
    "image_faff",
    "induced_quotient_map",
    "product_hom",
    "alpha_map",
    "is_injective_on",
]


@dataclass(frozen=True)
class ExponentMap:
    """``u -> M u + c`` from R^r to R^n.

    >>> ExponentMap([[1, 1]], ["1"])(["1/2", "1/2"])
    (Fraction(2, 1),)
    """

    M: tuple
    c: tuple
    gamma: ValueGroup = field(default_factory=ValueGroup)

    def __post_init__(self):
        M = qmat(self.M)
        c = qvec(self.c)
        if len(M) != len(c):
            raise DimensionMismatch("M must have one row per constant")
        if any(x.denominator != 1 for row in M for x in row):
            raise ValueError("exponent matrix must be integral")
        bad = [fmt(x) for x in c if x not in self.gamma]
        if bad:
            raise ValueError(f"constants {bad} are not in the value group")
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "c", c)

    @property
    def n(self) -> int:
        return len(self.c)

    @property
    def r(self) -> int:
        return len(self.M[0]) if self.M and self.M[0] else 0

    def as_affine(self) -> AffineMap:
        return AffineMap(self.M, self.c)

    def __call__(self, u: Sequence) -> QVector:
        return eval_faff(self, u)

    def to_json(self) -> dict:
        return {
            "M": [[int(x) for x in row] for row in self.M],
            "c": [fmt(x) for x in self.c],
        }

    @classmethod
    def from_json(cls, obj, gamma: ValueGroup = ValueGroup()) -> "ExponentMap":
        M = obj["M"]
        c = obj["c"]
        if not M or not M[0]:
            M = [[] for _ in c]
        return cls(M, c, gamma)


def eval_faff(e: ExponentMap, u: Sequence) -> QVector:
    u = qvec(u)
    if len(u) != e.r:
        raise DimensionMismatch(f"expected a point of R^{e.r}, got length {len(u)}")
    return vadd(matvec(e.M, u), e.c) if e.r else e.c


def rank_faff(e: ExponentMap) -> int:
    return rank(e.M) if e.r else 0


def image_faff(e: ExponentMap, P: Polytope) -> Polytope:
    if P.ambient_dim != e.r:
        raise DimensionMismatch("polytope is not in the source space of the map")
    return apply_affine(e.as_affine(), P)


def is_injective_on(m: AffineMap, P: Polytope) -> bool:
    """Does the linear part of m kill no nonzero direction of P?"""
    if m.source_dim is not None and m.source_dim != P.ambient_dim:
        raise DimensionMismatch("map and polytope dimensions differ")
    return linear_image_dim(m.linear, P) == P.dim


# ---------------------------------------------------------------------------
# homomorphisms of tori


@dataclass(frozen=True)
class TropicalHom:
    """Linear map L with L(source) contained in target; raises LatticeNotPreserved otherwise."""

    L: tuple
    source: Lattice
    target: Lattice

    def __post_init__(self):
        L = qmat(self.L)
        if len(L) != self.target.n or any(len(row) != self.source.n for row in L):
            raise DimensionMismatch("L has the wrong shape for the given lattices")
        object.__setattr__(self, "L", L)
        for b in self.source.basis:
            if matvec(L, b) not in self.target:
                raise LatticeNotPreserved(
                    "image of a source lattice vector is not in the target lattice",
                    vector=[fmt(x) for x in b],
                )

    def __call__(self, x: Sequence) -> QVector:
        return matvec(self.L, qvec(x))

    def compose(self, inner: "TropicalHom") -> "TropicalHom":
        """self ∘ inner."""
        return TropicalHom(matmul(self.L, inner.L), inner.source, self.target)

    def as_affine(self) -> AffineMap:
        return AffineMap.linear_map(self.L)

    def to_json(self) -> dict:
        return {
            "L": [[fmt(x) for x in row] for row in self.L],
            "source_lattice": self.source.to_json(),
            "target_lattice": self.target.to_json(),
        }

    @classmethod
    def from_json(cls, obj) -> "TropicalHom":
        return cls(qmat(obj["L"]), Lattice.from_json(obj["source_lattice"]), Lattice.from_json(obj["target_lattice"]))


@dataclass(frozen=True)
class QuotientMap:
    """The homomorphism of tori induced by a :class:`TropicalHom`."""

    hom: TropicalHom

    def __call__(self, x) -> QuotientPoint:
        rep = x.representative if isinstance(x, QuotientPoint) else qvec(x)
        return QuotientPoint(self.hom.target, self.hom(rep))

    @property
    def is_finite_surjective(self) -> bool:
        L = self.hom.L
        return len(L) == len(L[0]) and det(L) != 0

    @property
    def degree(self) -> int:
        """Index of L(source) in target: the size of every fiber when finite surjective."""
        if not self.is_finite_surjective:
            raise ValueError("map is not finite surjective")
        img = abs(det(self.hom.L)) * self.hom.source.covolume
        d = img / self.hom.target.covolume
        assert d.denominator == 1
        return int(d)

    def preimages(self, y) -> list[QuotientPoint]:
        """All points of the source torus mapping to y (finite surjective maps only)."""
        D = self.degree
        tgt, src = self.hom.target, self.hom.source
        yrep = y.representative if isinstance(y, QuotientPoint) else qvec(y)
        Linv = inverse(self.hom.L)
        seen = {}
        for k in itertools.product(range(D), repeat=tgt.n):
            x = matvec(Linv, vadd(yrep, tgt.point(k)))
            q = QuotientPoint(src, x)
            seen[q.representative] = q
        return [seen[k] for k in sorted(seen)]


def induced_quotient_map(h: TropicalHom) -> QuotientMap:
    return QuotientMap(h)


def _block_diag(A: Sequence[Sequence], B: Sequence[Sequence]) -> tuple:
    na, nb = (len(A[0]) if A else 0), (len(B[0]) if B else 0)
    zero = Fraction(0)
    rows = [tuple(r) + (zero,) * nb for r in A]
    rows += [(zero,) * na + tuple(r) for r in B]
    return tuple(rows)


def product_hom(h1: TropicalHom, h2: TropicalHom) -> TropicalHom:
    return TropicalHom(
        _block_diag(h1.L, h2.L), h1.source.product(h2.source), h1.target.product(h2.target)
    )


def alpha_map(n: int, lat: Lattice, N: int) -> TropicalHom:
    """(x_1, ..., x_N) -> (x_2 - x_1, ..., x_N - x_{N-1}) on (R^n / lat)^N."""
    if N < 2 or n < 1 or lat.n != n:
        raise BadParams("need N >= 2 and a lattice of rank n")
    rows = []
    for i in range(N - 1):
        for a in range(n):
            row = [Fraction(0)] * (N * n)
            row[i * n + a] = Fraction(-1)
            row[(i + 1) * n + a] = Fraction(1)
            rows.append(tuple(row))
    return TropicalHom(tuple(rows), lat.power(N), lat.power(N - 1))


# ---------------------------------------------------------------------------
# piecewise-affine maps


@dataclass(frozen=True)
class PiecewiseAffineMap:
    """One affine map per cell of ``source``; images are read modulo ``target``."""

    source: QuotientComplex
    target: Lattice
    pieces: Mapping[int, AffineMap]

    def __post_init__(self):
        object.__setattr__(self, "pieces", dict(sorted(self.pieces.items())))
        for cid, m in self.pieces.items():
            if cid not in self.source.ids:
                raise KeyError(f"unknown source cell {cid}")
            if m.source_dim != self.source.ambient_dim or m.target_dim != self.target.n:
                raise DimensionMismatch(f"map on cell {cid} has the wrong shape")

    @classmethod
    def uniform(cls, source: QuotientComplex, target: Lattice, m: AffineMap) -> "PiecewiseAffineMap":
        return cls(source, target, {cid: m for cid in source.ids})

    def validate(self) -> None:
        """Maps on a cell and on its faces must agree modulo the target lattice."""
        lat = self.source.lattice
        for cid, m in self.pieces.items():
            sigma = self.source.cell(cid)
            for F in all_faces(sigma):
                if F == sigma:
                    continue
                fid = self.source.find(F)
                if fid is None or fid not in self.pieces:
                    continue
                shift = vsub(canonical_cell(F, lat).vertices[0], F.vertices[0])
                for v in F.vertices:
                    a = m(v)
                    b = self.pieces[fid](vadd(v, shift))
                    if vsub(a, b) not in self.target:
                        raise InconsistentOnFaces(
                            "piecewise map disagrees on a shared face", cell=cid, face=fid
                        )

    def to_json(self) -> dict:
        return {
            "target_lattice": self.target.to_json(),
            "pieces": [{"cell": cid, "map": m.to_json()} for cid, m in self.pieces.items()],
        }

    @classmethod
    def from_json(cls, obj, source: QuotientComplex) -> "PiecewiseAffineMap":
        target = Lattice.from_json(obj["target_lattice"])
        pieces = {int(p["cell"]): AffineMap.from_json(p["map"]) for p in obj["pieces"]}
        return cls(source, target, pieces)
