"""Exact convex polytopes with paired vertex / halfspace descriptions.

A :class:`Polytope` is bounded and nonempty.  The empty set is never a
polytope: :func:`intersect` returns ``None`` for it and
:func:`polytope_from_halfspaces` raises :class:`EmptyPolytope`.

Halfspaces are stored in canonical form ``m . u >= c`` with ``m`` a primitive
integer vector, which makes Gamma-rationality a membership test on the
constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Optional, Sequence

from . import _dd
from .errors import BadDimension, DimensionMismatch, EmptyPolytope, Unbounded
from .rational import (
    QMatrix,
    QVector,
    ValueGroup,
    column_echelon,
    det,
    dot,
    fmt,
    independent_rows,
    integer_kernel,
    inverse,
    matmul,
    matvec,
    nullspace,
    primitive,
    qmat,
    qvec,
    rank,
    rational_gcd,
    row_basis,
    rref,
    solve,
    vadd,
    vsub,
)

__all__ = [
    "Halfspace",
    "Hyperplane",
    "Polytope",
    "AffineMap",
    "polytope_from_vertices",
    "polytope_from_halfspaces",
    "faces",
    "relint_contains",
    "rational_relint_point",
    "intersect",
    "apply_affine",
    "normalized_volume",
    "is_gamma_rational",
    "product",
]


def _trusted(cls, normal: tuple, constant: Fraction):
    """Instance of Halfspace/Hyperplane from data already in canonical form."""
    obj = object.__new__(cls)
    object.__setattr__(obj, "normal", normal)
    object.__setattr__(obj, "constant", constant)
    return obj


def _canonical_normal(normal: Sequence, constant) -> tuple[tuple[int, ...], Fraction]:
    normal = qvec(normal)
    if not any(normal):
        raise ValueError("normal vector must be nonzero")
    prim = primitive(normal)
    idx = next(i for i, x in enumerate(normal) if x != 0)
    scale = Fraction(prim[idx]) / normal[idx]  # positive
    return prim, Fraction(constant) * scale


@dataclass(frozen=True, order=True)
class Halfspace:
    """The closed halfspace ``{u : normal . u >= constant}``."""

    normal: tuple
    constant: Fraction

    def __post_init__(self):
        m, c = _canonical_normal(self.normal, self.constant)
        object.__setattr__(self, "normal", m)
        object.__setattr__(self, "constant", c)

    def slack(self, x: Sequence) -> Fraction:
        return dot(self.normal, x) - self.constant

    def contains(self, x: Sequence) -> bool:
        return self.slack(x) >= 0

    def translate(self, t: Sequence) -> "Halfspace":
        return _trusted(Halfspace, self.normal, self.constant + dot(self.normal, t))

    def to_json(self) -> dict:
        return {"normal": list(self.normal), "constant": fmt(self.constant)}


@dataclass(frozen=True, order=True)
class Hyperplane:
    """The affine hyperplane ``{u : normal . u == constant}``.

    The normal is primitive with its first nonzero entry positive.
    """

    normal: tuple
    constant: Fraction

    def __post_init__(self):
        m, c = _canonical_normal(self.normal, self.constant)
        first = next(x for x in m if x != 0)
        if first < 0:
            m, c = tuple(-x for x in m), -c
        object.__setattr__(self, "normal", m)
        object.__setattr__(self, "constant", c)

    def residual(self, x: Sequence) -> Fraction:
        return dot(self.normal, x) - self.constant

    def contains(self, x: Sequence) -> bool:
        return self.residual(x) == 0

    def halfspaces(self) -> tuple[Halfspace, Halfspace]:
        return (
            Halfspace(self.normal, self.constant),
            Halfspace(tuple(-a for a in self.normal), -self.constant),
        )

    def translate(self, t: Sequence) -> "Hyperplane":
        return _trusted(Hyperplane, self.normal, self.constant + dot(self.normal, t))

    def to_json(self) -> dict:
        return {"normal": list(self.normal), "constant": fmt(self.constant)}


class Polytope:
    """A nonempty bounded convex polytope with exact rational data.

    Build one with :func:`polytope_from_vertices` or
    :func:`polytope_from_halfspaces`.  Instances are immutable, hashable and
    compare equal when their vertex sets agree.
    """

    def __init__(self, ambient_dim, vertices, dim, equations, facets):
        self.ambient_dim: int = ambient_dim
        self.vertices: tuple[QVector, ...] = tuple(sorted(vertices))
        self.dim: int = dim
        self.equations: tuple[Hyperplane, ...] = tuple(sorted(equations))
        self.facets: tuple[Halfspace, ...] = tuple(sorted(facets))

    # -- identity -----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.vertices == other.vertices

    def __hash__(self):
        return hash((self.ambient_dim, self.vertices))

    def __lt__(self, other: "Polytope"):
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return (self.dim, self.vertices)

    def __repr__(self):
        vs = ", ".join("(" + ", ".join(fmt(x) for x in v) + ")" for v in self.vertices)
        return f"Polytope(dim={self.dim}, vertices=[{vs}])"

    # -- queries ------------------------------------------------------------
    @property
    def halfspaces(self) -> tuple[Halfspace, ...]:
        return self.facets

    @cached_property
    def incidence(self) -> tuple[frozenset, ...]:
        """For each facet, the indices of the vertices lying on it."""
        return tuple(
            frozenset(i for i, v in enumerate(self.vertices) if h.slack(v) == 0)
            for h in self.facets
        )

    @cached_property
    def direction_basis(self) -> tuple[QVector, ...]:
        """RREF basis of the linear span of P - P."""
        v0 = self.vertices[0]
        return tuple(row_basis([vsub(v, v0) for v in self.vertices[1:]]))

    def contains(self, x: Sequence) -> bool:
        return all(e.contains(x) for e in self.equations) and all(
            h.contains(x) for h in self.facets
        )

    def translate(self, t: Sequence) -> "Polytope":
        t = qvec(t)
        return Polytope(
            self.ambient_dim,
            [vadd(v, t) for v in self.vertices],
            self.dim,
            [e.translate(t) for e in self.equations],
            [h.translate(t) for h in self.facets],
        )

    def barycenter(self) -> QVector:
        k = len(self.vertices)
        return tuple(sum(col, Fraction(0)) / k for col in zip(*self.vertices))

    def to_json(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "vertices": [[fmt(x) for x in v] for v in self.vertices],
        }

    @classmethod
    def from_json(cls, obj) -> "Polytope":
        pts = [qvec(v) for v in obj["vertices"]]
        P = polytope_from_vertices(pts)
        if P.ambient_dim != obj.get("ambient_dim", P.ambient_dim):
            raise DimensionMismatch("ambient_dim does not match vertex length")
        return P

    # -- face lattice -------------------------------------------------------
    @cached_property
    def face_lattice(self) -> dict:
        """Map from vertex-index frozensets to face dimensions (nonempty faces)."""
        nv = len(self.vertices)
        everything = frozenset(range(nv))
        lattice = {everything: self.dim}
        frontier = list(dict.fromkeys(self.incidence))
        for F in frontier:
            lattice.setdefault(F, None)
        while frontier:
            nxt = []
            for F in frontier:
                for G in self.incidence:
                    H = F & G
                    if H and H not in lattice:
                        lattice[H] = None
                        nxt.append(H)
            frontier = nxt
        for F in lattice:
            if lattice[F] is None:
                vs = [self.vertices[i] for i in sorted(F)]
                lattice[F] = rank([vsub(v, vs[0]) for v in vs[1:]]) if len(vs) > 1 else 0
        return lattice

    def _facets_of_face(self, F: frozenset) -> list[frozenset]:
        d = self.face_lattice[F]
        return [G for G, dg in self.face_lattice.items() if dg == d - 1 and G < F]

    @cached_property
    def _lattice_frame(self):
        """(base point, integer basis of Z^n ∩ span(P-P), coordinate solver rows)."""
        n = self.ambient_dim
        base = self.vertices[0]
        if self.dim == 0:
            return base, [], None, None
        E = [e.normal for e in self.equations]
        G = integer_kernel(E, n) if E else [tuple(int(i == j) for i in range(n)) for j in range(n)]
        Gm = [[Fraction(g[i]) for g in G] for i in range(n)]  # n x k, columns = basis
        rows = independent_rows(Gm)
        sub_inv = inverse([Gm[i] for i in rows])
        return base, G, rows, sub_inv

    def lattice_coordinates(self, x: Sequence) -> QVector:
        """Coordinates of x - base in the integral lattice basis of the affine span."""
        base, _, rows, sub_inv = self._lattice_frame
        if rows is None:
            return ()
        diff = vsub(qvec(x), base)
        return matvec(sub_inv, [diff[i] for i in rows])

    @cached_property
    def volume(self) -> Fraction:
        if self.dim == 0:
            return Fraction(1)
        k = self.dim
        coords = [self.lattice_coordinates(v) for v in self.vertices]
        total = Fraction(0)
        for simplex in self._triangulation(frozenset(range(len(self.vertices)))):
            y0 = coords[simplex[0]]
            total += abs(det([vsub(coords[i], y0) for i in simplex[1:]]))
        return total / math.factorial(k)

    def _triangulation(self, F: frozenset) -> list[tuple[int, ...]]:
        """Pulling triangulation of the face F (vertex index tuples)."""
        memo: dict = {}

        def tri(face):
            if face in memo:
                return memo[face]
            d = self.face_lattice[face]
            if d == 0:
                out = [(min(face),)]
            elif len(face) == d + 1:
                out = [tuple(sorted(face))]
            else:
                v0 = min(face)
                out = []
                for G in self._facets_of_face(face):
                    if v0 not in G:
                        out.extend((v0,) + s for s in tri(G))
            memo[face] = out
            return out

        return tri(F)


# ---------------------------------------------------------------------------
# construction


def _lattice_minimal_normal(R: Sequence[Sequence[Fraction]], f: QVector, hint: tuple[int, ...]):
    """Smallest positive multiple of the functional f (on rowspace R) realised by an integer vector.

    ``f`` is given by its values on the rows of ``R``.  Returns an integer
    vector ``m`` with ``R m = lambda f`` and lambda > 0 minimal.
    """
    k = len(R)
    Rf = [list(r) for r in R]
    scale = 1
    for row in Rf:
        for x in row:
            scale = scale * x.denominator // math.gcd(scale, x.denominator)
    Ri = [[int(x * scale) for x in row] for row in Rf]
    H, U, r = column_echelon(Ri)
    Hk = [[Fraction(H[i][j]) for j in range(k)] for i in range(k)]
    w = matvec(inverse(Hk), [x * scale for x in f])
    g = rational_gcd(w)
    z = [int(x / g) for x in w]
    lam = 1 / g
    hint_vals = matvec(R, hint)
    # prefer the pivot lift when it already achieves the minimal multiple
    if all(hv == lam * fv for hv, fv in zip(hint_vals, f)):
        return hint
    n = len(U)
    return tuple(sum(U[i][j] * z[j] for j in range(k)) for i in range(n))


def _build(ambient_dim: int, points: Sequence[QVector]) -> Polytope:
    pts = sorted(set(points))
    base = pts[0]
    if not any(base):
        return _build_at_origin(ambient_dim, tuple(pts))
    # hulls are memoized modulo translation: grids repeat the same shapes
    return _build_at_origin(ambient_dim, tuple(vsub(p, base) for p in pts)).translate(base)


@lru_cache(maxsize=16384)
def _build_at_origin(ambient_dim: int, pts: tuple) -> Polytope:
    n = ambient_dim
    base = pts[0]
    R, piv = rref([vsub(p, base) for p in pts[1:]]) if len(pts) > 1 else ([], [])
    k = len(piv)
    eq_normals = integer_kernel(R, n) if R else [tuple(int(i == j) for i in range(n)) for j in range(n)]
    equations = [Hyperplane(m, dot(m, base)) for m in eq_normals]
    if k == 0:
        return Polytope(n, [base], 0, equations, [])

    proj = [tuple(p[i] for i in piv) for p in pts]
    cone_rows = [tuple(y) + (Fraction(1),) for y in proj]
    if k == 1:
        lo, hi = min(y[0] for y in proj), max(y[0] for y in proj)
        rays = [primitive((1, -lo)), primitive((-1, hi))]
    else:
        rays = _dd.extreme_rays(cone_rows)

    facets = []
    masks = [0] * len(pts)
    for j, ray in enumerate(rays):
        a = tuple(Fraction(x) for x in ray[:-1])
        for idx, y in enumerate(proj):
            if dot(a, y) + ray[-1] == 0:
                masks[idx] |= 1 << j
        lift = [Fraction(0)] * n
        for ai, p in zip(a, piv):
            lift[p] = ai
        if k == n:
            # full-dimensional: the primitive normal is already lattice-minimal
            m = primitive(lift)
        else:
            m = _lattice_minimal_normal(R, matvec(R, lift), primitive(lift))
        facets.append(m)

    # p is a vertex iff no other point lies on every facet through p
    verts = [
        p
        for i, p in enumerate(pts)
        if masks[i] and not any(j != i and masks[j] & masks[i] == masks[i] for j in range(len(pts)))
    ]
    halfspaces = [Halfspace(m, min(dot(m, v) for v in verts)) for m in facets]
    return Polytope(n, verts, k, equations, halfspaces)


def polytope_from_vertices(points: Iterable[Sequence]) -> Polytope:
    """Convex hull of a nonempty finite point set."""
    pts = [qvec(p) for p in points]
    if not pts:
        raise ValueError("need at least one point")
    dims = {len(p) for p in pts}
    if len(dims) != 1:
        raise DimensionMismatch("points have different lengths", lengths=sorted(dims))
    return _build(dims.pop(), pts)


def _as_hyperplane(e) -> Hyperplane:
    if isinstance(e, Hyperplane):
        return e
    normal, constant = e
    return Hyperplane(normal, constant)


def _as_halfspace(h) -> Halfspace:
    if isinstance(h, Halfspace):
        return h
    normal, constant = h
    return Halfspace(normal, constant)


def polytope_from_halfspaces(
    hs: Iterable, eqs: Iterable = (), ambient_dim: Optional[int] = None
) -> Polytope:
    """The polytope ``{u : m.u >= c for hs, e.u == d for eqs}``.

    Raises :class:`Unbounded` or :class:`EmptyPolytope`.
    """
    hs = [_as_halfspace(h) for h in hs]
    eqs = [_as_hyperplane(e) for e in eqs]
    lengths = {len(h.normal) for h in hs} | {len(e.normal) for e in eqs}
    if ambient_dim is not None:
        lengths.add(ambient_dim)
    if len(lengths) != 1:
        raise DimensionMismatch("inconsistent ambient dimensions")
    n = lengths.pop()

    E = [e.normal for e in eqs]
    x0 = solve(E, [e.constant for e in eqs]) if E else tuple(Fraction(0) for _ in range(n))
    if x0 is None:
        raise EmptyPolytope("equations are inconsistent")
    K = nullspace(E, n) if E else nullspace([], n)
    if not K:
        if all(h.contains(x0) for h in hs):
            return _build(n, [x0])
        raise EmptyPolytope("the unique point violates an inequality")

    AK = [tuple(dot(h.normal, kv) for kv in K) for h in hs]
    beta = [h.constant - dot(h.normal, x0) for h in hs]
    W = row_basis(AK) if AK else []
    rho = len(W)
    if rho == 0:
        if all(b <= 0 for b in beta):
            raise Unbounded("no inequality bounds the affine span")
        raise EmptyPolytope("inequalities are infeasible")
    rows = [tuple(dot(ak, w) for w in W) + (-b,) for ak, b in zip(AK, beta)]
    rows.append(tuple(Fraction(0) for _ in range(rho)) + (Fraction(1),))
    rays = _dd.extreme_rays(rows)
    finite = [r for r in rays if r[-1] > 0]
    if not finite:
        raise EmptyPolytope("inequalities are infeasible")
    if rho < len(K) or any(r[-1] == 0 for r in rays):
        raise Unbounded("the described set is unbounded")
    points = []
    for r in finite:
        t = Fraction(r[-1])
        yp = [Fraction(x) / t for x in r[:-1]]
        y = [sum((yp[l] * W[l][j] for l in range(rho)), Fraction(0)) for j in range(len(K))]
        x = tuple(x0[i] + sum((y[j] * K[j][i] for j in range(len(K))), Fraction(0)) for i in range(n))
        points.append(x)
    return _build(n, points)


# ---------------------------------------------------------------------------
# operations


def faces(P: Polytope, k: int) -> list[Polytope]:
    """All closed k-dimensional faces of P, sorted."""
    if not 0 <= k <= P.dim:
        raise BadDimension(f"k={k} outside [0, {P.dim}]")
    if k == P.dim:
        return [P]
    out = []
    for F, d in P.face_lattice.items():
        if d == k:
            out.append(_build(P.ambient_dim, [P.vertices[i] for i in F]))
    return sorted(out)


def relint_contains(P: Polytope, x: Sequence) -> bool:
    x = qvec(x)
    if len(x) != P.ambient_dim:
        raise DimensionMismatch("point and polytope live in different spaces")
    return all(e.contains(x) for e in P.equations) and all(h.slack(x) > 0 for h in P.facets)


def rational_relint_point(P: Polytope) -> QVector:
    """The vertex barycenter, which always lies in the relative interior."""
    return P.barycenter()


def intersect(P: Polytope, Q: Polytope) -> Optional[Polytope]:
    """Exact intersection, or ``None`` when it is empty."""
    if P.ambient_dim != Q.ambient_dim:
        raise DimensionMismatch("ambient dimensions differ")
    try:
        return polytope_from_halfspaces(
            P.facets + Q.facets, P.equations + Q.equations, P.ambient_dim
        )
    except EmptyPolytope:
        return None


@dataclass(frozen=True)
class AffineMap:
    """``x -> linear @ x + translate``."""

    linear: QMatrix
    translate: QVector

    def __post_init__(self):
        L = qmat(self.linear)
        t = qvec(self.translate)
        if len(L) != len(t):
            raise DimensionMismatch("translate length must equal number of rows")
        object.__setattr__(self, "linear", L)
        object.__setattr__(self, "translate", t)
        object.__setattr__(self, "_source_dim", len(L[0]) if L else None)

    @classmethod
    def linear_map(cls, L) -> "AffineMap":
        L = qmat(L)
        return cls(L, tuple(Fraction(0) for _ in L))

    @classmethod
    def identity(cls, n: int) -> "AffineMap":
        return cls.linear_map([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def target_dim(self) -> int:
        return len(self.translate)

    @property
    def source_dim(self) -> Optional[int]:
        return self._source_dim

    def __call__(self, x: Sequence) -> QVector:
        x = qvec(x)
        if self.source_dim is not None and len(x) != self.source_dim:
            raise DimensionMismatch("point does not match map source dimension")
        return vadd(matvec(self.linear, x), self.translate)

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """self ∘ inner."""
        if inner.target_dim != self.source_dim:
            raise DimensionMismatch("maps are not composable")
        return AffineMap(matmul(self.linear, inner.linear), self(inner.translate))

    def to_json(self) -> dict:
        return {
            "linear": [[fmt(x) for x in row] for row in self.linear],
            "translate": [fmt(x) for x in self.translate],
        }

    @classmethod
    def from_json(cls, obj) -> "AffineMap":
        return cls(qmat(obj["linear"]), qvec(obj["translate"]))


def apply_affine(m: AffineMap, P: Polytope) -> Polytope:
    """Image polytope: hull of the mapped vertices."""
    if m.source_dim is not None and m.source_dim != P.ambient_dim:
        raise DimensionMismatch("map source does not match polytope ambient space")
    return polytope_from_vertices([m(v) for v in P.vertices])


def normalized_volume(P: Polytope) -> Fraction:
    """dim(P)-volume against the integral lattice of P's affine span; a point has volume 1."""
    return P.volume


def is_gamma_rational(P: Polytope, g: ValueGroup) -> bool:
    return all(h.constant in g for h in P.facets) and all(e.constant in g for e in P.equations)


def product(P: Polytope, Q: Polytope) -> Polytope:
    """Cartesian product, assembled directly from both descriptions."""
    n, m = P.ambient_dim, Q.ambient_dim
    zn, zm = (0,) * n, (0,) * m
    verts = [p + q for p in P.vertices for q in Q.vertices]
    # zero padding keeps normals primitive with the same leading sign
    eqs = [_trusted(Hyperplane, e.normal + zm, e.constant) for e in P.equations]
    eqs += [_trusted(Hyperplane, zn + e.normal, e.constant) for e in Q.equations]
    hs = [_trusted(Halfspace, h.normal + zm, h.constant) for h in P.facets]
    hs += [_trusted(Halfspace, zn + h.normal, h.constant) for h in Q.facets]
    out = Polytope(n + m, verts, P.dim + Q.dim, eqs, hs)
    out.__dict__["volume"] = P.volume * Q.volume
    return out


def linear_image_dim(L: Sequence[Sequence], P: Polytope) -> int:
    """Dimension of the image of P under a map with linear part L."""
    if not P.direction_basis:
        return 0
    return rank([matvec(L, d) for d in P.direction_basis])


def all_faces(P: Polytope) -> list[Polytope]:
    """Every nonempty closed face of P, P included."""
    return list(_all_faces(P))


@lru_cache(maxsize=4096)
def _all_faces(P: Polytope) -> tuple:
    out = []
    for F, d in P.face_lattice.items():
        if d == P.dim:
            out.append(P)
        else:
            out.append(_build(P.ambient_dim, [P.vertices[i] for i in F]))
    return tuple(sorted(out))


def is_face_of(X: Polytope, P: Polytope) -> bool:
    """True iff X is a closed face of P (compared through vertex sets)."""
    index = {v: i for i, v in enumerate(P.vertices)}
    try:
        key = frozenset(index[v] for v in X.vertices)
    except KeyError:
        return False
    return key in P.face_lattice
