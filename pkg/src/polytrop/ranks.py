"""Torus and abelian ranks of abelian varieties over a function field, per place.

Profiles record only numbers: dimension, torus rank ``n_v`` at each place
(unlisted places have good reduction, ``n_v = 0``) and a trusted ``simple``
flag.  Abelian rank is ``b_v = dim - n_v``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import networkx as nx

from .errors import BadParams, Disconnected, GenusMismatch, NotSimpleFactor

__all__ = [
    "AbelianProfile",
    "IsogenyDecomposition",
    "DualGraph",
    "abelian_rank",
    "product_profile",
    "check_exact_sequence",
    "check_isogeny_invariant",
    "is_nowhere_degenerate",
    "ndr",
    "ndr_bound_holds",
    "max_nowhere_degenerate_profile",
    "check_ndr_surjection",
    "conjecture_status",
    "jacobian_torus_rank",
    "curve_status",
]

HOLDS_NDR = "HoldsByNdrLeq1"
REDUCED = "ReducedToNowhereDegenerate"
HOLDS_A3 = "HoldsByThmA3"
UNRESOLVED = "Unresolved"


@dataclass(frozen=True)
class AbelianProfile:
    dim: int
    torus_rank: Mapping[str, int] = field(default_factory=dict)
    simple: bool = False

    def __post_init__(self):
        if self.dim < 0:
            raise BadParams("dimension must be nonnegative")
        ranks = {str(k): int(v) for k, v in self.torus_rank.items()}
        for v, n in ranks.items():
            if not 0 <= n <= self.dim:
                raise BadParams(f"torus rank {n} at {v} outside [0, {self.dim}]", place=v)
        # places with n_v = 0 are implicit
        object.__setattr__(self, "torus_rank", {k: n for k, n in sorted(ranks.items()) if n})

    def torus_rank_at(self, v: str) -> int:
        return self.torus_rank.get(v, 0)

    def abelian_rank_at(self, v: str) -> int:
        return self.dim - self.torus_rank_at(v)

    @property
    def places(self) -> set[str]:
        return set(self.torus_rank)

    def __hash__(self):
        return hash((self.dim, tuple(self.torus_rank.items()), self.simple))

    def to_json(self) -> dict:
        return {"dim": self.dim, "simple": self.simple, "torus_rank": dict(self.torus_rank)}

    @classmethod
    def from_json(cls, obj) -> "AbelianProfile":
        return cls(int(obj["dim"]), dict(obj.get("torus_rank", {})), bool(obj.get("simple", False)))

    @classmethod
    def trivial(cls) -> "AbelianProfile":
        return cls(0)


def abelian_rank(p: AbelianProfile, v: str) -> int:
    return p.abelian_rank_at(v)


def product_profile(p1: AbelianProfile, p2: AbelianProfile) -> AbelianProfile:
    places = p1.places | p2.places
    return AbelianProfile(
        p1.dim + p2.dim, {v: p1.torus_rank_at(v) + p2.torus_rank_at(v) for v in places}, False
    )


def _same_ranks(p: AbelianProfile, q: AbelianProfile) -> bool:
    return p.dim == q.dim and p.torus_rank == q.torus_rank


def check_exact_sequence(p1: AbelianProfile, p2: AbelianProfile, p3: AbelianProfile) -> bool:
    """Ranks of 0 -> A1 -> A2 -> A3 -> 0: dims, torus and abelian ranks all add."""
    if p2.dim != p1.dim + p3.dim:
        return False
    for v in p1.places | p2.places | p3.places:
        if p2.torus_rank_at(v) != p1.torus_rank_at(v) + p3.torus_rank_at(v):
            return False
        if p2.abelian_rank_at(v) != p1.abelian_rank_at(v) + p3.abelian_rank_at(v):
            return False
    return True


def check_isogeny_invariant(p1: AbelianProfile, p2: AbelianProfile) -> bool:
    return _same_ranks(p1, p2)


def is_nowhere_degenerate(p: AbelianProfile) -> bool:
    return not p.torus_rank


@dataclass(frozen=True)
class IsogenyDecomposition:
    """A ~ B_1^{k_1} x ... x B_s^{k_s} with simple B_i."""

    factors: tuple

    def __post_init__(self):
        fs = tuple((p, int(k)) for p, k in self.factors)
        if any(k < 1 for _, k in fs):
            raise BadParams("multiplicities must be positive")
        object.__setattr__(self, "factors", fs)

    @property
    def dim(self) -> int:
        return sum(p.dim * k for p, k in self.factors)

    def total_profile(self) -> AbelianProfile:
        out = AbelianProfile.trivial()
        for p, k in self.factors:
            for _ in range(k):
                out = product_profile(out, p)
        return out

    def concat(self, other: "IsogenyDecomposition") -> "IsogenyDecomposition":
        return IsogenyDecomposition(self.factors + other.factors)

    def to_json(self) -> dict:
        return {"factors": [{"profile": p.to_json(), "multiplicity": k} for p, k in self.factors]}

    @classmethod
    def from_json(cls, obj) -> "IsogenyDecomposition":
        return cls(
            tuple((AbelianProfile.from_json(f["profile"]), int(f.get("multiplicity", 1))) for f in obj["factors"])
        )


def _require_simple(d: IsogenyDecomposition) -> None:
    bad = [i for i, (p, _) in enumerate(d.factors) if not p.simple]
    if bad:
        raise NotSimpleFactor("decomposition has factors not marked simple", factors=bad)


def ndr(d: IsogenyDecomposition) -> int:
    """Dimension of the largest nowhere degenerate abelian subvariety.

    A simple factor contributes its full dimension if it has good reduction
    everywhere and nothing otherwise.
    """
    _require_simple(d)
    return sum(k * p.dim for p, k in d.factors if is_nowhere_degenerate(p))


def ndr_bound_holds(d: IsogenyDecomposition) -> bool:
    """ndr never exceeds the abelian rank at any place."""
    total = d.total_profile()
    n = ndr(d)
    return all(n <= total.abelian_rank_at(v) for v in total.places) and n <= total.dim


def max_nowhere_degenerate_profile(d: IsogenyDecomposition) -> AbelianProfile:
    _require_simple(d)
    good = IsogenyDecomposition(tuple((p, k) for p, k in d.factors if is_nowhere_degenerate(p)))
    return good.total_profile()


def check_ndr_surjection(source: IsogenyDecomposition, target: IsogenyDecomposition) -> bool:
    """Necessary condition for a surjective homomorphism source -> target."""
    return ndr(source) >= ndr(target)


def conjecture_status(d: IsogenyDecomposition) -> dict:
    n = ndr(d)
    if n <= 1:
        return {"status": HOLDS_NDR, "ndr": n, "citation": "Cor 7.9"}
    return {
        "status": REDUCED,
        "ndr": n,
        "citation": "Thm 7.11",
        "profile": max_nowhere_degenerate_profile(d).to_json(),
    }


# ---------------------------------------------------------------------------
# curves


@dataclass(frozen=True)
class DualGraph:
    """Dual graph of a stable curve; loops and multi-edges allowed."""

    genus: Mapping[str, int]
    edges: tuple = ()

    def __post_init__(self):
        genus = {str(k): int(v) for k, v in self.genus.items()}
        if any(g < 0 for g in genus.values()):
            raise BadParams("vertex genus must be nonnegative")
        edges = tuple(tuple(sorted((str(a), str(b)))) for a, b in self.edges)
        for a, b in edges:
            if a not in genus or b not in genus:
                raise BadParams("edge endpoint is not a vertex", edge=[a, b])
        object.__setattr__(self, "genus", dict(sorted(genus.items())))
        object.__setattr__(self, "edges", tuple(sorted(edges)))

    def graph(self) -> nx.MultiGraph:
        G = nx.MultiGraph()
        G.add_nodes_from(self.genus)
        G.add_edges_from(self.edges)
        return G

    @property
    def total_genus(self) -> int:
        return sum(self.genus.values())

    def to_json(self) -> dict:
        return {
            "vertices": [{"id": k, "genus": g} for k, g in self.genus.items()],
            "edges": [list(e) for e in self.edges],
        }

    @classmethod
    def from_json(cls, obj) -> "DualGraph":
        return cls({v["id"]: v.get("genus", 0) for v in obj["vertices"]}, tuple(tuple(e) for e in obj["edges"]))


def jacobian_torus_rank(g: DualGraph) -> int:
    """First Betti number of the dual graph."""
    G = g.graph()
    if G.number_of_nodes() == 0 or not nx.is_connected(G):
        raise Disconnected("dual graph must be connected and nonempty")
    return G.number_of_edges() - G.number_of_nodes() + 1


def curve_status(graphs: Mapping[str, DualGraph], g: int) -> dict:
    ranks = {}
    for place, G in sorted(graphs.items()):
        b1 = jacobian_torus_rank(G)
        if G.total_genus + b1 != g:
            raise GenusMismatch(
                "vertex genera plus cycle rank do not give the curve genus",
                place=place,
                genus_sum=G.total_genus,
                cycle_rank=b1,
                g=g,
            )
        ranks[place] = b1
    for place, b1 in ranks.items():
        if b1 > 0:
            return {"status": HOLDS_A3, "place": place, "cycle_rank": b1, "citation": "Thm A.3"}
    return {"status": UNRESOLVED, "citation": "Conjecture 7.12", "cycle_ranks": ranks}
