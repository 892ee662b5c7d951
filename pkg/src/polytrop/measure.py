"""Polytopal measures: finite sums of weighted Lebesgue push-outs.

A term ``(cell, w)`` stands for ``w * delta_cell`` where ``delta_cell`` is the
lattice-normalized Lebesgue measure on the cell, of mass
``normalized_volume(cell)``.  All weights are exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from .errors import (
    BadParams,
    CarrierMismatch,
    DegenerateWeighted,
    LatticeMismatch,
    MissingData,
    NonInjectivePiece,
    NotExpressible,
    NotSubdivisional,
    TargetNotSubdivisional,
    UnknownCell,
)
from .geometry import (
    AffineMap,
    Hyperplane,
    Polytope,
    all_faces,
    apply_affine,
    linear_image_dim,
)
from .periodic import (
    Lattice,
    PeriodicComplex,
    QuotientComplex,
    contained_translates,
    product_complex,
    quotient,
    refine,
)
from .rational import fmt, rat
from .skeleton import (
    NondegEntry,
    SkeletonModel,
    nondeg_from_json,
    nondeg_to_json,
    nondegenerate_set,
    standard_simplex,
)
from .tropical_maps import ExponentMap, PiecewiseAffineMap, TropicalHom, image_faff

__all__ = [
    "PolytopalMeasure",
    "SupportEntry",
    "SupportImage",
    "Provenance",
    "TropSubvariety",
    "delta",
    "combine",
    "product_measure",
    "tile",
    "pushforward_exact",
    "pushforward_support",
    "strict_supports",
    "assemble_canonical",
    "make_subdivisional",
]


@dataclass(frozen=True)
class PolytopalMeasure:
    carrier: QuotientComplex
    terms: Mapping[int, Fraction]

    def __post_init__(self):
        terms = {}
        for cid, w in dict(self.terms).items():
            cid, w = int(cid), rat(w)
            if cid not in self.carrier.ids:
                raise UnknownCell(f"cell {cid} is not in the carrier", cell=cid)
            if w < 0:
                raise ValueError("weights must be nonnegative")
            terms[cid] = w
        object.__setattr__(self, "terms", dict(sorted(terms.items())))

    @property
    def mass(self) -> Fraction:
        return sum((w * self.carrier.cell(c).volume for c, w in self.terms.items()), Fraction(0))

    def positive(self) -> dict[int, Fraction]:
        return {c: w for c, w in self.terms.items() if w > 0}

    def to_json(self, carrier_ref: Optional[str] = None) -> dict:
        return {
            "carrier": carrier_ref if carrier_ref is not None else self.carrier.to_json(),
            "terms": [{"cell": c, "weight": fmt(w)} for c, w in self.terms.items()],
        }

    @classmethod
    def from_json(cls, obj, carrier: Optional[QuotientComplex] = None) -> "PolytopalMeasure":
        if carrier is None:
            carrier = QuotientComplex.from_json(obj["carrier"])
        return cls(carrier, {int(t["cell"]): rat(t["weight"]) for t in obj["terms"]})


def delta(sigma: Union[int, Polytope], carrier: QuotientComplex) -> PolytopalMeasure:
    """Lebesgue push-out on one cell, given by id or as a polytope."""
    if isinstance(sigma, Polytope):
        cid = carrier.find(sigma)
        if cid is None:
            raise UnknownCell("polytope is not a cell of the carrier", vertices=sigma.to_json()["vertices"])
    else:
        cid = int(sigma)
        if cid not in carrier.ids:
            raise UnknownCell(f"cell {cid} is not in the carrier", cell=cid)
    return PolytopalMeasure(carrier, {cid: Fraction(1)})


def combine(parts: Iterable[tuple]) -> PolytopalMeasure:
    """Weighted sum of measures on one carrier; zero coefficients vanish."""
    parts = [(rat(c), m) for c, m in parts]
    if not parts:
        raise BadParams("nothing to combine")
    carrier = parts[0][1].carrier
    terms: dict[int, Fraction] = {}
    for c, m in parts:
        if m.carrier is not carrier and m.carrier != carrier:
            raise CarrierMismatch("measures live on different carriers")
        if c < 0:
            raise ValueError("coefficients must be nonnegative")
        for cid, w in m.terms.items():
            terms[cid] = terms.get(cid, Fraction(0)) + c * w
    return PolytopalMeasure(carrier, {k: w for k, w in terms.items() if w != 0})


def product_measure(m1: PolytopalMeasure, m2: PolytopalMeasure) -> PolytopalMeasure:
    carrier = product_complex(m1.carrier, m2.carrier)
    k = len(m2.carrier.cells)
    terms = {i * k + j: a * b for i, a in m1.terms.items() for j, b in m2.terms.items()}
    return PolytopalMeasure(carrier, terms)


# ---------------------------------------------------------------------------
# transport


def tile(A: Polytope, target: QuotientComplex) -> list[tuple[int, tuple]]:
    """Cells of ``target`` (with lattice shifts) of the same dimension as A lying inside A.

    Returns an empty list unless these pieces fill A up to volume.
    """
    lat = target.lattice
    pieces = []
    for cid, tau in enumerate(target.cells):
        if tau.dim != A.dim:
            continue
        for t in contained_translates(tau, A, lat):
            pieces.append((cid, t))
    total = sum((target.cell(c).volume for c, _ in pieces), Fraction(0))
    return pieces if total == A.volume else []


def _piece(f, cid: int) -> AffineMap:
    if isinstance(f, AffineMap):
        return f
    if isinstance(f, TropicalHom):
        return f.as_affine()
    if isinstance(f, PiecewiseAffineMap):
        if cid not in f.pieces:
            raise MissingData(f"no affine piece on cell {cid}", cell=cid)
        return f.pieces[cid]
    return f[cid]


def pushforward_exact(
    mu: PolytopalMeasure, f, target: QuotientComplex
) -> PolytopalMeasure:
    """Push ``mu`` forward along a cellwise-injective piecewise-affine map.

    ``f`` is a :class:`PiecewiseAffineMap`, a single :class:`AffineMap` or a
    mapping from cell id to AffineMap.  Each image ``A = f(sigma)`` must be a
    union of target cells; ``w * delta_sigma`` becomes
    ``w * vol(sigma) / vol(A)`` on each of them, so mass is preserved exactly.
    """
    if isinstance(f, PiecewiseAffineMap) and not f.target.same_as(target.lattice):
        raise LatticeMismatch("map and target complex use different lattices")
    terms: dict[int, Fraction] = {}
    for cid, w in mu.positive().items():
        sigma = mu.carrier.cell(cid)
        m = _piece(f, cid)
        if linear_image_dim(m.linear, sigma) != sigma.dim:
            raise NonInjectivePiece("map collapses a positive-weight cell", cell=cid)
        A = apply_affine(m, sigma)
        pieces = tile(A, target)
        if not pieces:
            raise TargetNotSubdivisional(
                "image of a cell is not a union of target cells",
                cell=cid,
                image=A.to_json()["vertices"],
            )
        density = w * sigma.volume / A.volume
        for tid, _ in pieces:
            terms[tid] = terms.get(tid, Fraction(0)) + density
    return PolytopalMeasure(target, terms)


@dataclass(frozen=True)
class SupportEntry:
    cell: int
    source_dim: int
    image: Polytope
    dim: int

    def to_json(self) -> dict:
        return {
            "cell": self.cell,
            "source_dim": self.source_dim,
            "image": self.image.to_json()["vertices"],
            "dim": self.dim,
        }


@dataclass(frozen=True)
class SupportImage:
    entries: tuple

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def to_json(self) -> list:
        return [e.to_json() for e in self.entries]


def pushforward_support(mu: PolytopalMeasure, f) -> SupportImage:
    """Images of the positive-weight cells; collapsing is allowed here."""
    out = []
    for cid in mu.positive():
        sigma = mu.carrier.cell(cid)
        A = apply_affine(_piece(f, cid), sigma)
        out.append(SupportEntry(cid, sigma.dim, A, A.dim))
    return SupportImage(tuple(out))


def strict_supports(mu: PolytopalMeasure, sigma: Optional[QuotientComplex] = None) -> dict[int, Fraction]:
    """Cells of ``sigma`` carrying a positive coefficient once ``mu`` is rewritten on it.

    The value attached to each cell is a witness epsilon: ``mu - eps*delta``
    stays a nonnegative combination.
    """
    if sigma is None or sigma is mu.carrier:
        return mu.positive()
    if not sigma.lattice.same_as(mu.carrier.lattice):
        raise NotExpressible("decomposition lives on a different lattice")
    coeff: dict[int, Fraction] = {}
    for cid, w in mu.positive().items():
        P = mu.carrier.cell(cid)
        pieces = tile(P, sigma)
        if not pieces:
            raise NotExpressible(
                "a positive-weight cell is not a union of cells of the decomposition",
                cell=cid,
            )
        for tid, _ in pieces:
            coeff[tid] = coeff.get(tid, Fraction(0)) + w
    return {k: v for k, v in sorted(coeff.items()) if v > 0}


# ---------------------------------------------------------------------------
# tropical subvarieties


@dataclass(frozen=True)
class Provenance:
    """Skeleton data a measure was assembled from."""

    skeleton: SkeletonModel
    nondeg: Mapping[str, NondegEntry]
    fmaps: Mapping[str, ExponentMap]
    weights: Mapping[str, Fraction]

    def to_json(self) -> dict:
        return {
            "skeleton": self.skeleton.to_json(),
            "nondeg": nondeg_to_json(self.nondeg),
            "fmaps": {k: e.to_json() for k, e in sorted(self.fmaps.items())},
            "weights": {k: fmt(w) for k, w in sorted(self.weights.items())},
        }

    @classmethod
    def from_json(cls, obj) -> "Provenance":
        sk = SkeletonModel.from_json(obj["skeleton"])
        return cls(
            sk,
            nondeg_from_json(obj["nondeg"]),
            {k: ExponentMap.from_json(v, sk.gamma) for k, v in obj["fmaps"].items()},
            {k: rat(v) for k, v in obj["weights"].items()},
        )


@dataclass(frozen=True)
class TropSubvariety:
    """A polytopal subset of a tropical torus with an optional measure on it.

    ``support`` lists the cell ids of ``complex`` making up the subset; it is
    closed under faces.
    """

    complex: QuotientComplex
    support: tuple
    measure: Optional[PolytopalMeasure] = None
    stabilizer_trivial: bool = False
    provenance: Optional[Provenance] = None

    def __post_init__(self):
        object.__setattr__(self, "support", tuple(sorted(set(int(c) for c in self.support))))
        if self.measure is not None:
            if self.measure.carrier != self.complex:
                raise CarrierMismatch("measure must live on the subvariety's complex")
            stray = [c for c in self.measure.positive() if c not in self.support]
            if stray:
                raise ValueError(f"measure charges cells outside the support: {stray}")

    @classmethod
    def from_measure(cls, mu: PolytopalMeasure, stabilizer_trivial: bool = True, provenance=None):
        """Support = closure of the positive-weight cells."""
        support = _closure(mu.carrier, mu.positive())
        return cls(mu.carrier, support, mu, stabilizer_trivial, provenance)

    @property
    def lattice(self) -> Lattice:
        return self.complex.lattice

    @property
    def n(self) -> int:
        return self.lattice.n

    @property
    def dim(self) -> int:
        return max((self.complex.cell(c).dim for c in self.support), default=-1)

    @property
    def is_point(self) -> bool:
        return len(self.support) == 1 and self.complex.cell(self.support[0]).dim == 0

    def to_json(self) -> dict:
        out = {
            "torus": {"n": self.n, "lattice": self.lattice.to_json()},
            "complex": self.complex.to_json(),
            "support": list(self.support),
            "dim": self.dim,
            "stabilizer_trivial": self.stabilizer_trivial,
        }
        if self.measure is not None:
            out["measure"] = self.measure.to_json(carrier_ref="complex")
        if self.provenance is not None:
            out["provenance"] = self.provenance.to_json()
        return out

    @classmethod
    def from_json(cls, obj) -> "TropSubvariety":
        qc = QuotientComplex.from_json(obj["complex"])
        mu = PolytopalMeasure.from_json(obj["measure"], qc) if obj.get("measure") else None
        prov = Provenance.from_json(obj["provenance"]) if obj.get("provenance") else None
        return cls(qc, tuple(obj["support"]), mu, bool(obj.get("stabilizer_trivial", False)), prov)


def _closure(qc: QuotientComplex, ids: Iterable[int]) -> tuple:
    out = set()
    for cid in ids:
        for F in all_faces(qc.cell(cid)):
            fid = qc.find(F)
            if fid is not None:
                out.add(fid)
    return tuple(sorted(out))


def assemble_canonical(
    sk: SkeletonModel,
    nd: Mapping[str, NondegEntry],
    weights: Optional[Mapping[str, object]],
    fmaps: Mapping[str, ExponentMap],
    sigma: QuotientComplex,
    stabilizer_trivial: bool = True,
) -> TropSubvariety:
    """Canonical probability measure from skeleton data.

    Each non-degenerate simplex contributes ``w_S * delta_S`` pushed forward by
    its exponent map; weights default to 1 each and the result is scaled to
    mass one.
    """
    good = nondegenerate_set(sk, nd)
    if weights is None:
        weights = {sid: Fraction(1) for sid in good}
    weights = {str(k): rat(v) for k, v in weights.items()}
    bad = sorted(k for k in weights if k not in good)
    if bad:
        raise DegenerateWeighted("weight given for a degenerate simplex", simplices=bad)
    missing = sorted(k for k in good if k not in weights)
    if missing:
        raise MissingData("no weight for a non-degenerate simplex", simplices=missing)
    if any(w <= 0 for w in weights.values()):
        raise BadParams("weights must be positive")
    if not good:
        raise BadParams("no non-degenerate simplex")
    lat = sigma.lattice

    coeff: dict[int, Fraction] = {}
    for sid in sorted(good):
        s = sk.simplex(sid)
        e = fmaps.get(sid)
        if e is None:
            raise MissingData("no exponent map for a simplex", simplex=sid)
        if e.n != lat.n or e.r != s.r:
            raise BadParams("exponent map has the wrong shape", simplex=sid)
        D = standard_simplex(s.r, s.vpi)
        A = image_faff(e, D)
        if A.dim != D.dim:
            raise NonInjectivePiece("non-degenerate simplex collapses under its exponent map", simplex=sid)
        pieces = tile(A, sigma)
        if not pieces:
            raise NotSubdivisional(
                "image of a simplex is not a union of cells",
                simplex=sid,
                image=A.to_json()["vertices"],
            )
        density = weights[sid] * D.volume / A.volume
        for tid, _ in pieces:
            coeff[tid] = coeff.get(tid, Fraction(0)) + density

    mass = sum((w * sigma.cell(c).volume for c, w in coeff.items()), Fraction(0))
    mu = PolytopalMeasure(sigma, {c: w / mass for c, w in coeff.items()})
    prov = Provenance(sk, dict(nd), {k: fmaps[k] for k in sorted(fmaps)}, weights)
    return TropSubvariety.from_measure(mu, stabilizer_trivial, prov)


def make_subdivisional(sigma0: Union[PeriodicComplex, QuotientComplex], images: Sequence[Polytope]) -> QuotientComplex:
    """Refine ``sigma0`` until every image is a union of cells.

    Cuts along the affine span and the facet hyperplanes of each image.
    """
    base = sigma0.base if isinstance(sigma0, QuotientComplex) else sigma0
    cuts = []
    seen = set()
    for A in images:
        if A.ambient_dim != base.lattice.n:
            raise BadParams("image lives in the wrong dimension")
        hs = list(A.equations) + [Hyperplane(h.normal, h.constant) for h in A.facets]
        for h in hs:
            if h not in seen:
                seen.add(h)
                cuts.append(h)
    return quotient(refine(base, cuts))
