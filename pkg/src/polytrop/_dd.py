"""Double description method for pointed polyhedral cones, in exact integers.

``extreme_rays(A)`` returns the extreme rays of ``{z : A z >= 0}``.  The
matrix must have full column rank (so the cone is pointed).  Rows and rays
are kept as primitive integer vectors, so every dot product is an integer
dot product.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .rational import independent_rows, inverse, primitive


def _prim(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for a in v:
        g = math.gcd(g, a)
    return tuple(a // g for a in v) if g > 1 else tuple(v)


def _idot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def extreme_rays(A: Sequence[Sequence]) -> list[tuple[int, ...]]:
    rows = [primitive(r) if any(r) else tuple(0 for _ in r) for r in A]
    rows = [r for r in rows if any(r)]
    if not rows:
        raise ValueError("cone has no constraints")
    d = len(rows[0])
    basis_idx = independent_rows(rows)
    if len(basis_idx) != d:
        raise ValueError("constraint matrix does not have full column rank")

    # initial simplicial cone: columns of the inverse of a d x d subsystem
    inv = inverse([rows[i] for i in basis_idx])
    rays = [primitive([inv[r][c] for r in range(d)]) for c in range(d)]

    processed = list(basis_idx)
    # zero sets as bitmasks over positions in `processed`
    zsets = []
    for ray in rays:
        z = 0
        for pos, i in enumerate(processed):
            if _idot(rows[i], ray) == 0:
                z |= 1 << pos
        zsets.append(z)

    remaining = [i for i in range(len(rows)) if i not in set(basis_idx)]
    for i in remaining:
        a = rows[i]
        vals = [_idot(a, r) for r in rays]
        pos_idx = [k for k, s in enumerate(vals) if s > 0]
        neg_idx = [k for k, s in enumerate(vals) if s < 0]
        zero_idx = [k for k, s in enumerate(vals) if s == 0]
        bit = 1 << len(processed)

        new_rays, new_z = [], []
        for k in pos_idx + zero_idx:
            new_rays.append(rays[k])
            new_z.append(zsets[k] | (bit if vals[k] == 0 else 0))

        for p in pos_idx:
            for q in neg_idx:
                common = zsets[p] & zsets[q]
                if bin(common).count("1") < d - 2:
                    continue
                # combinatorial adjacency: no third ray vanishes on `common`
                adjacent = True
                for k in range(len(rays)):
                    if k != p and k != q and (zsets[k] & common) == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                sp, sq = vals[p], vals[q]
                ray = _prim(tuple(sp * y - sq * x for x, y in zip(rays[p], rays[q])))
                new_rays.append(ray)
                new_z.append(common | bit)

        rays, zsets = new_rays, new_z
        processed.append(i)

    # deduplicate (can only occur with repeated constraints)
    seen, out = set(), []
    for r in rays:
        if r not in seen:
            seen.add(r)
            out.append(r)
    return out


def as_fractions(v: Sequence[int]) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in v)
