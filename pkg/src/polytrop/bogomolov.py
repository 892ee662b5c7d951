"""Tropical triviality and the diagonal-contraction witness.

Given the canonical measure of ``X`` at one place, the N-fold product measure
lives on ``X^N``; the difference map ``alpha`` kills the diagonal direction,
so some strict support of the product loses dimension under ``alpha``.  The
functions here find that cell.  Heights and equidistribution are not modelled.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .errors import BadParams, NoMeasure, NotDegenerateHere, NotSimple, StabilizerNotTrivial
from .geometry import linear_image_dim
from .measure import PolytopalMeasure, TropSubvariety, product_measure, strict_supports
from .periodic import QuotientComplex, contained_translates
from .skeleton import NondegEntry, nondegenerate_set, standard_simplex
from .tropical_maps import alpha_map, image_faff

__all__ = [
    "PlaceTropData",
    "Verdict",
    "TROPICALLY_TRIVIAL",
    "CONTRADICTION",
    "INCONCLUSIVE",
    "INCONSISTENT",
    "is_tropically_trivial",
    "product_power",
    "find_contradiction",
    "validate_nondeg_consistency",
    "simple_degenerate_inference",
]

TROPICALLY_TRIVIAL = "TropicallyTrivial"
CONTRADICTION = "ContradictionWitness"
INCONCLUSIVE = "Inconclusive"
INCONSISTENT = "InconsistentInput"

# citation tags carried in verdict JSON
TAG_CONTRACTION = "Thm6.2/Eq.6.2.1"
TAG_TRIVIAL = "Def6.1"
TAG_STRICT_DIM = "Prop5.12"
TAG_COVER = "Lemma5.10"
TAG_SIMPLE = "Lemma7.14"


@dataclass(frozen=True)
class PlaceTropData:
    place: str
    trop: TropSubvariety

    def to_json(self) -> dict:
        return {"place": self.place, "trop": self.trop.to_json()}

    @classmethod
    def from_json(cls, obj, default_place: str = "v") -> "PlaceTropData":
        if "trop" in obj:
            return cls(str(obj.get("place", default_place)), TropSubvariety.from_json(obj["trop"]))
        return cls(str(obj.get("place", default_place)), TropSubvariety.from_json(obj))


@dataclass(frozen=True)
class Verdict:
    kind: str
    citation: str
    witness: Optional[Mapping] = None
    detail: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if self.kind == CONTRADICTION:
            w = self.witness
            if w is None or not w["alpha_dim"] < w["dim"]:
                raise ValueError("a contradiction witness must lose dimension under alpha")

    def to_json(self) -> dict:
        out = {"kind": self.kind, "citation": self.citation, "detail": dict(self.detail)}
        if self.witness is not None:
            out["witness"] = dict(self.witness)
        return out


def is_tropically_trivial(data: Sequence[PlaceTropData]) -> bool:
    return all(x.trop.is_point for x in data)


def product_power(mu: PolytopalMeasure, N: int) -> PolytopalMeasure:
    out = mu
    for _ in range(N - 1):
        out = product_measure(out, mu)
    return out


def find_contradiction(x: PlaceTropData, N: int = 2) -> Verdict:
    """Search the N-fold product measure for a strict support collapsed by alpha.

    Cells are tried by decreasing dimension, then id; the first hit is returned.
    """
    trop = x.trop
    if not trop.stabilizer_trivial:
        raise StabilizerNotTrivial("stabilizer must be trivial (pass data for X modulo its stabilizer)")
    if trop.measure is None:
        raise NoMeasure("subvariety carries no measure")
    if N < 2:
        raise BadParams("N must be at least 2")
    muZ = product_power(trop.measure, N)
    alpha = alpha_map(trop.n, trop.lattice, N)
    supports = strict_supports(muZ)
    order = sorted(supports, key=lambda c: (-muZ.carrier.cell(c).dim, c))
    for cid in order:
        sigma = muZ.carrier.cell(cid)
        if sigma.dim == 0:
            break
        adim = linear_image_dim(alpha.L, sigma)
        if adim < sigma.dim:
            witness = {
                "place": x.place,
                "cell": cid,
                "vertices": sigma.to_json()["vertices"],
                "dim": sigma.dim,
                "alpha_dim": adim,
                "N": N,
            }
            return Verdict(CONTRADICTION, TAG_CONTRACTION, witness)
    return Verdict(INCONCLUSIVE, TAG_CONTRACTION, None, {"place": x.place, "N": N})


# ---------------------------------------------------------------------------
# consistency of non-degeneracy data


def validate_nondeg_consistency(
    x: TropSubvariety,
    sigma: Optional[QuotientComplex] = None,
    nd: Optional[Mapping[str, NondegEntry]] = None,
) -> list[dict]:
    """Compare strict supports with what the non-degeneracy data predicts.

    Three rules, each reported as an ``InconsistentInput`` issue:

    * a simplex whose image contains a strict support of the same dimension
      must map injectively (tagged ``TAG_STRICT_DIM``);
    * every strict support lies in the image of a non-degenerate simplex of
      the same dimension (``TAG_COVER``);
    * conversely every such cell is a strict support (``TAG_COVER``).
    """
    if x.provenance is None:
        raise BadParams("subvariety has no skeleton provenance")
    if x.measure is None:
        raise NoMeasure("subvariety carries no measure")
    prov = x.provenance
    sigma = sigma if sigma is not None else x.complex
    nd = nd if nd is not None else prov.nondeg
    sk = prov.skeleton
    lat = sigma.lattice

    images = {}
    for sid in sk.ids:
        s = sk.simplex(sid)
        images[sid] = (s.r, image_faff(prov.fmaps[sid], standard_simplex(s.r, s.vpi)))
    good = nondegenerate_set(sk, nd)
    strict = strict_supports(x.measure, sigma)

    def covers(sid, cid):
        return bool(contained_translates(sigma.cell(cid), images[sid][1], lat))

    issues = []
    for cid in strict:
        tau = sigma.cell(cid)
        for sid in sk.ids:
            r, A = images[sid]
            if A.dim == tau.dim and covers(sid, cid) and nd[sid].image_dim != r:
                issues.append(
                    {
                        "kind": INCONSISTENT,
                        "citation": TAG_STRICT_DIM,
                        "cell": cid,
                        "simplex": sid,
                        "message": "strict support covered by a simplex whose image dimension is not full",
                    }
                )
        if not any(images[s][0] == tau.dim and covers(s, cid) for s in good):
            issues.append(
                {
                    "kind": INCONSISTENT,
                    "citation": TAG_COVER,
                    "cell": cid,
                    "message": "strict support not covered by a non-degenerate simplex of equal dimension",
                }
            )
    for cid in sigma.ids:
        if cid in strict:
            continue
        tau = sigma.cell(cid)
        owners = [s for s in sorted(good) if images[s][0] == tau.dim and covers(s, cid)]
        if owners:
            issues.append(
                {
                    "kind": INCONSISTENT,
                    "citation": TAG_COVER,
                    "cell": cid,
                    "simplices": owners,
                    "message": "cell covered by a non-degenerate simplex is not a strict support",
                }
            )
    return issues


def simple_degenerate_inference(profile, x: PlaceTropData) -> dict:
    """For simple A degenerate at the place: a one-point tropicalization forces X to be a point."""
    if not profile.simple:
        raise NotSimple("abelian variety is not marked simple")
    if profile.torus_rank_at(x.place) <= 0:
        raise NotDegenerateHere("torus rank at this place is zero", place=x.place)
    if x.trop.is_point:
        return {"inference": "X is a single point", "citation": TAG_SIMPLE, "place": x.place}
    return {"inference": "no inference", "citation": TAG_SIMPLE, "place": x.place}
