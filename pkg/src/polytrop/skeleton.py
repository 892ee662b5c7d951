"""Combinatorial skeletons of strictly semistable models.

Each stratum ``S`` of the special fiber carries a canonical simplex, charted
as the standard simplex ``{u >= 0, u_1 + ... + u_r <= vpi}`` of dimension
``r = codim S``.  Face relations between canonical simplices are supplied as
data together with the affine chart-change maps realising them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

import networkx as nx

from .errors import BadParams, InconsistentOnFaces, MissingData
from .geometry import (
    AffineMap,
    Halfspace,
    Hyperplane,
    Polytope,
    all_faces,
    apply_affine,
    is_face_of,
    polytope_from_halfspaces,
    polytope_from_vertices,
    relint_contains,
)
from .errors import EmptyPolytope
from .periodic import QuotientComplex, candidate_translates
from .rational import ValueGroup, dot, fmt, rat, vsub
from .tropical_maps import ExponentMap, image_faff

__all__ = [
    "Stratum",
    "CanonicalSimplex",
    "Incidence",
    "SkeletonModel",
    "NondegEntry",
    "SubdividedSkeleton",
    "VertexRecord",
    "standard_simplex",
    "face_chart",
    "validate_skeleton",
    "subdivide_skeleton",
    "vertex_stratum_table",
    "nondegenerate_set",
]


@dataclass(frozen=True)
class Stratum:
    id: str
    dim: int
    label: Optional[str] = None


@dataclass(frozen=True)
class CanonicalSimplex:
    stratum_id: str
    r: int
    vpi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "vpi", rat(self.vpi))

    @property
    def polytope(self) -> Polytope:
        return standard_simplex(self.r, self.vpi)


@dataclass(frozen=True)
class Incidence:
    """The canonical simplex of ``face`` is a face of the one of ``coface``.

    ``chart`` maps the standard chart of the face simplex into the standard
    chart of the coface simplex.
    """

    face: str
    coface: str
    chart: AffineMap


@dataclass(frozen=True)
class SkeletonModel:
    d: int
    strata: tuple
    simplices: tuple
    incidence: tuple = ()
    gamma: ValueGroup = field(default_factory=ValueGroup)

    def __post_init__(self):
        object.__setattr__(self, "strata", tuple(self.strata))
        object.__setattr__(self, "simplices", tuple(self.simplices))
        object.__setattr__(self, "incidence", tuple(self.incidence))

    def stratum(self, sid: str) -> Stratum:
        for s in self.strata:
            if s.id == sid:
                return s
        raise KeyError(sid)

    def simplex(self, sid: str) -> CanonicalSimplex:
        for s in self.simplices:
            if s.stratum_id == sid:
                return s
        raise KeyError(sid)

    @property
    def ids(self) -> list[str]:
        return sorted(s.stratum_id for s in self.simplices)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "gamma": self.gamma.to_json(),
            "strata": [
                {"id": s.id, "dim": s.dim, **({"label": s.label} if s.label else {})}
                for s in self.strata
            ],
            "simplices": [
                {"stratum_id": s.stratum_id, "r": s.r, "vpi": fmt(s.vpi)} for s in self.simplices
            ],
            "incidence": [
                {"face": i.face, "coface": i.coface, "chart": i.chart.to_json()} for i in self.incidence
            ],
        }

    @classmethod
    def from_json(cls, obj) -> "SkeletonModel":
        return cls(
            d=int(obj["d"]),
            strata=[Stratum(str(s["id"]), int(s["dim"]), s.get("label")) for s in obj["strata"]],
            simplices=[
                CanonicalSimplex(str(s["stratum_id"]), int(s["r"]), rat(s["vpi"])) for s in obj["simplices"]
            ],
            incidence=[
                Incidence(str(i["face"]), str(i["coface"]), AffineMap.from_json(i["chart"]))
                for i in obj.get("incidence", [])
            ],
            gamma=ValueGroup.from_json(obj.get("gamma")),
        )


@dataclass(frozen=True)
class NondegEntry:
    image_dim: int
    abelian_image_dim: int


def nondeg_from_json(obj) -> dict[str, NondegEntry]:
    return {
        str(k): NondegEntry(int(v["image_dim"]), int(v["abelian_image_dim"])) for k, v in obj.items()
    }


def nondeg_to_json(nd: Mapping[str, NondegEntry]) -> dict:
    return {
        k: {"image_dim": e.image_dim, "abelian_image_dim": e.abelian_image_dim}
        for k, e in sorted(nd.items())
    }


# ---------------------------------------------------------------------------


def standard_simplex(r: int, vpi) -> Polytope:
    """``{u in R^r_{>=0} : sum(u) <= vpi}``."""
    vpi = rat(vpi)
    if r < 0 or vpi <= 0:
        raise BadParams("need r >= 0 and vpi > 0")
    zero = [Fraction(0)] * r
    verts = [tuple(zero)]
    for i in range(r):
        v = list(zero)
        v[i] = vpi
        verts.append(tuple(v))
    return polytope_from_vertices(verts)


def _standard_vertex(r: int, i: int, vpi: Fraction) -> tuple:
    v = [Fraction(0)] * r
    if i > 0:
        v[i - 1] = vpi
    return tuple(v)


def face_chart(r_face: int, r: int, vertex_indices: Sequence[int], vpi) -> AffineMap:
    """Chart sending the standard r_face-simplex onto the face of the standard r-simplex
    spanned by the given vertices (index 0 is the origin, index i is vpi * e_i).

    The j-th vertex of the face simplex goes to ``vertex_indices[j]``.
    """
    vpi = rat(vpi)
    if len(vertex_indices) != r_face + 1:
        raise BadParams("a face of dimension k needs k + 1 vertices")
    base = _standard_vertex(r, vertex_indices[0], vpi)
    cols = [
        tuple(x / vpi for x in vsub(_standard_vertex(r, i, vpi), base)) for i in vertex_indices[1:]
    ]
    linear = tuple(tuple(col[row] for col in cols) for row in range(r))
    return AffineMap(linear, base)


def _face_closure(m: SkeletonModel):
    """Incidences closed under composition of charts: {(face, coface, image polytope)}."""
    rs = {s.stratum_id: s for s in m.simplices}
    edges = []
    for inc in m.incidence:
        if inc.face in rs and inc.coface in rs:
            edges.append((inc.face, inc.coface, inc.chart))
    closure = {(f, c, ch) for f, c, ch in edges}
    frontier = list(closure)
    while frontier:
        nxt = []
        for f, c, ch in frontier:
            for f2, c2, ch2 in edges:
                if c2 == f:
                    try:
                        comp = ch.compose(ch2)
                    except Exception:
                        continue
                    item = (f2, c, comp)
                    if item not in closure:
                        closure.add(item)
                        nxt.append(item)
        frontier = nxt
    return closure


def validate_skeleton(m: SkeletonModel) -> list[dict]:
    """List of violations; empty means the model is consistent."""
    out: list[dict] = []
    strata = {s.id: s for s in m.strata}
    simplices = {}
    for s in m.simplices:
        if s.stratum_id in simplices:
            out.append({"violation": "DuplicateSimplex", "stratum": s.stratum_id})
        simplices[s.stratum_id] = s
    for sid in strata:
        if sid not in simplices:
            out.append({"violation": "MissingSimplex", "stratum": sid})
    for sid, s in sorted(simplices.items()):
        if sid not in strata:
            out.append({"violation": "UnknownStratum", "stratum": sid})
            continue
        if s.r < 0 or strata[sid].dim < 0:
            out.append({"violation": "NegativeDimension", "stratum": sid})
        if strata[sid].dim + s.r != m.d:
            out.append(
                {
                    "violation": "CodimensionMismatch",
                    "stratum": sid,
                    "stratum_dim": strata[sid].dim,
                    "r": s.r,
                    "d": m.d,
                }
            )
        if s.vpi <= 0 or s.vpi not in m.gamma:
            out.append({"violation": "BadVpi", "stratum": sid, "vpi": fmt(s.vpi)})
    if len({s.vpi for s in simplices.values()}) > 1:
        out.append({"violation": "VpiMismatch"})

    for k, inc in enumerate(m.incidence):
        if inc.face not in simplices or inc.coface not in simplices:
            out.append({"violation": "UnknownIncidenceEnd", "incidence": k})
            continue
        F, C = simplices[inc.face], simplices[inc.coface]
        if F.r >= C.r:
            out.append({"violation": "NotMonotone", "incidence": k, "face": inc.face, "coface": inc.coface})
            continue
        ch = inc.chart
        if ch.source_dim != F.r or ch.target_dim != C.r:
            out.append({"violation": "BadChartShape", "incidence": k})
            continue
        img = apply_affine(ch, F.polytope)
        if img.dim != F.r or not is_face_of(img, C.polytope):
            out.append({"violation": "ChartNotOntoFace", "incidence": k})

    if out:
        return out

    covered: dict[tuple, set] = {}
    for f, c, ch in _face_closure(m):
        img = apply_affine(ch, simplices[f].polytope)
        covered.setdefault((c, img), set()).add(f)
    for sid, s in sorted(simplices.items()):
        P = s.polytope
        for F in all_faces(P):
            if F == P:
                continue
            owners = covered.get((sid, F), set())
            if not owners:
                out.append({"violation": "MissingFace", "stratum": sid, "face": F.to_json()["vertices"]})
            elif len(owners) > 1:
                out.append({"violation": "AmbiguousFace", "stratum": sid, "owners": sorted(owners)})

    G = nx.MultiGraph()
    G.add_nodes_from(simplices)
    G.add_edges_from((i.face, i.coface) for i in m.incidence)
    if simplices and not nx.is_connected(G):
        out.append({"violation": "Disconnected"})
    return out


# ---------------------------------------------------------------------------
# subdivisions


@dataclass(frozen=True)
class SubdividedSkeleton:
    base: SkeletonModel
    cells: Mapping[str, tuple]

    def vertices(self, sid: str) -> list[tuple]:
        return sorted(P.vertices[0] for P in self.cells[sid] if P.dim == 0)

    def top_cells(self, sid: str) -> list[Polytope]:
        r = self.base.simplex(sid).r
        return [P for P in self.cells[sid] if P.dim == r]


def _check_charts(m: SkeletonModel, fmaps: Mapping[str, ExponentMap], target: QuotientComplex) -> None:
    for inc in m.incidence:
        fS, fT = fmaps[inc.coface], fmaps[inc.face]
        composed = fS.as_affine().compose(inc.chart)
        same_linear = all(
            a == b for ra, rb in zip(composed.linear, fT.as_affine().linear) for a, b in zip(ra, rb)
        )
        if not same_linear or vsub(composed.translate, fT.c) not in target.lattice:
            raise InconsistentOnFaces(
                "exponent maps do not commute with the face chart",
                face=inc.face,
                coface=inc.coface,
            )


def _preimage(e: ExponentMap, D: Polytope, Q: Polytope) -> Optional[Polytope]:
    """{u in D : e(u) in Q}, or None when empty."""
    hs, eqs = list(D.facets), list(D.equations)
    for h in Q.facets:
        normal = tuple(dot(h.normal, col) for col in zip(*e.M)) if e.r else ()
        const = h.constant - dot(h.normal, e.c)
        if any(normal):
            hs.append(Halfspace(normal, const))
        elif const > 0:
            return None
    for q in Q.equations:
        normal = tuple(dot(q.normal, col) for col in zip(*e.M)) if e.r else ()
        const = q.constant - dot(q.normal, e.c)
        if any(normal):
            eqs.append(Hyperplane(normal, const))
        elif const != 0:
            return None
    try:
        return polytope_from_halfspaces(hs, eqs, D.ambient_dim)
    except EmptyPolytope:
        return None


def subdivide_skeleton(
    m: SkeletonModel, fmaps: Mapping[str, ExponentMap], target: QuotientComplex
) -> SubdividedSkeleton:
    """Pull the target decomposition back to every canonical simplex."""
    missing = [sid for sid in m.ids if sid not in fmaps]
    if missing:
        raise MissingData("no exponent map for some simplices", simplices=missing)
    _check_charts(m, fmaps, target)
    lat = target.lattice
    cells = {}
    for sid in m.ids:
        s = m.simplex(sid)
        D = s.polytope
        e = fmaps[sid]
        if e.r != s.r or e.n != lat.n:
            raise BadParams("exponent map has the wrong shape", simplex=sid)
        img = image_faff(e, D)
        pieces = set()
        for tau in target.cells:
            for t in candidate_translates(img, tau, lat):
                pre = _preimage(e, D, tau.translate(lat.point(t)))
                if pre is not None:
                    pieces.add(pre)
        closed = {F for P in pieces for F in all_faces(P)}
        cells[sid] = tuple(sorted(closed))
    return SubdividedSkeleton(m, cells)


@dataclass(frozen=True)
class VertexRecord:
    simplex: str
    vertex: tuple
    stratum_dim: int
    torus_rank: int
    dim: int

    def to_json(self) -> dict:
        return {
            "simplex": self.simplex,
            "vertex": [fmt(x) for x in self.vertex],
            "stratum_dim": self.stratum_dim,
            "torus_rank": self.torus_rank,
            "dim": self.dim,
        }


def vertex_stratum_table(s: SubdividedSkeleton) -> list[VertexRecord]:
    """For each vertex of the subdivision, the stratum it corresponds to.

    A vertex is listed once, under the canonical simplex whose relative
    interior contains it; the corresponding stratum is a torsor of rank
    ``dim Delta_S`` over S.
    """
    out = []
    for sid in s.base.ids:
        simplex = s.base.simplex(sid)
        D = simplex.polytope
        sdim = s.base.stratum(sid).dim
        for v in s.vertices(sid):
            if relint_contains(D, v):
                out.append(VertexRecord(sid, v, sdim, simplex.r, sdim + simplex.r))
    return out


def nondegenerate_set(m: SkeletonModel, nd: Mapping[str, NondegEntry]) -> set[str]:
    missing = [sid for sid in m.ids if sid not in nd]
    if missing:
        raise MissingData("non-degeneracy data missing", simplices=missing)
    out = set()
    for sid in m.ids:
        r = m.simplex(sid).r
        sdim = m.stratum(sid).dim
        e = nd[sid]
        if not (0 <= e.image_dim <= r and 0 <= e.abelian_image_dim <= sdim):
            raise BadParams("non-degeneracy data out of range", simplex=sid)
        if e.image_dim == r and e.abelian_image_dim == sdim:
            out.add(sid)
    return out
