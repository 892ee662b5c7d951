"""Exact rational scalars, vectors, matrices and integer lattice helpers.

Vectors are tuples of :class:`fractions.Fraction`; matrices are tuples of
row tuples.  Nothing in here ever touches a float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Rat = Fraction
QVector = tuple  # tuple[Fraction, ...]
QMatrix = tuple  # tuple[QVector, ...]


def rat(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: they would silently smuggle rounding into the kernel.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def fmt(q: Fraction) -> str:
    """Canonical string form: ``"3"``, ``"-1/2"``."""
    return str(Fraction(q))


def qvec(xs: Iterable) -> QVector:
    return tuple(rat(x) for x in xs)


def qmat(rows: Iterable[Iterable]) -> QMatrix:
    out = tuple(qvec(r) for r in rows)
    if out and len({len(r) for r in out}) != 1:
        raise ValueError("ragged matrix")
    return out


# ---------------------------------------------------------------------------
# value groups


@dataclass(frozen=True)
class ValueGroup:
    """Either all of Q or the discrete group Z * generator."""

    kind: str = "full-rationals"
    generator: Optional[Fraction] = None

    def __post_init__(self):
        if self.kind == "full-rationals":
            if self.generator is not None:
                raise ValueError("full-rationals value group takes no generator")
        elif self.kind == "discrete":
            if self.generator is None or rat(self.generator) <= 0:
                raise ValueError("discrete value group needs a positive generator")
            object.__setattr__(self, "generator", rat(self.generator))
        else:
            raise ValueError(f"unknown value group kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> "ValueGroup":
        return cls()

    @classmethod
    def discrete(cls, generator) -> "ValueGroup":
        return cls("discrete", rat(generator))

    def __contains__(self, x) -> bool:
        x = rat(x)
        if self.kind == "full-rationals":
            return True
        return (x / self.generator).denominator == 1

    def to_json(self) -> dict:
        if self.kind == "discrete":
            return {"kind": "discrete", "generator": fmt(self.generator)}
        return {"kind": "full-rationals"}

    @classmethod
    def from_json(cls, obj) -> "ValueGroup":
        if obj is None:
            return cls()
        return cls(obj["kind"], rat(obj["generator"]) if "generator" in obj else None)


# ---------------------------------------------------------------------------
# dense linear algebra over Q


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def vadd(u, v) -> QVector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v) -> QVector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v) -> QVector:
    return tuple(c * a for a in v)


def transpose(A: Sequence[Sequence]) -> QMatrix:
    return tuple(zip(*A)) if A else ()


def matvec(A: Sequence[Sequence], v: Sequence) -> QVector:
    return tuple(dot(row, v) for row in A)


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> QMatrix:
    cols = transpose(B)
    return tuple(tuple(dot(row, c) for c in cols) for row in A)


def identity(n: int) -> QMatrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def zeros(m: int, n: int) -> QMatrix:
    return tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(m))


def rref(A: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    M = [[Fraction(x) for x in row] for row in A]
    if not M:
        return [], []
    nrows, ncols = len(M), len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(nrows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return M[:r], pivots


def rank(A: Sequence[Sequence]) -> int:
    return len(rref(A)[1]) if A else 0


def nullspace(A: Sequence[Sequence], ncols: Optional[int] = None) -> list[QVector]:
    """Basis of {x : A x = 0} (rational, from the RREF free columns)."""
    if not A:
        n = ncols or 0
        return [tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n)]
    n = len(A[0])
    R, piv = rref(A)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, p in zip(R, piv):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve(A: Sequence[Sequence], b: Sequence) -> Optional[QVector]:
    """One solution of A x = b, or None if inconsistent (free vars set to 0)."""
    if not A:
        return ()
    n = len(A[0])
    aug = [list(row) + [rhs] for row, rhs in zip(A, b)]
    R, piv = rref(aug)
    if piv and piv[-1] == n:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(R, piv):
        x[p] = row[n]
    return tuple(x)


def det(A: Sequence[Sequence]) -> Fraction:
    M = [[Fraction(x) for x in row] for row in A]
    n = len(M)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d *= M[c][c]
        for i in range(c + 1, n):
            if M[i][c] != 0:
                f = M[i][c] / M[c][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return d


def inverse(A: Sequence[Sequence]) -> QMatrix:
    n = len(A)
    aug = [list(map(Fraction, row)) + list(e) for row, e in zip(A, identity(n))]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return tuple(tuple(row[n:]) for row in R)


def row_basis(A: Sequence[Sequence]) -> list[QVector]:
    """Basis of the row space, in RREF (hence canonical)."""
    R, _ = rref(A)
    return [tuple(r) for r in R]


def independent_rows(A: Sequence[Sequence]) -> list[int]:
    """Indices of a maximal linearly independent subset of rows, greedily."""
    chosen: list[int] = []
    basis: list[Sequence] = []
    for i, row in enumerate(A):
        if rank(basis + [row]) > len(basis):
            basis.append(row)
            chosen.append(i)
    return chosen


# ---------------------------------------------------------------------------
# integer vectors and lattices


def lcm_denominators(v: Iterable[Fraction]) -> int:
    out = 1
    for x in v:
        out = out * x.denominator // math.gcd(out, x.denominator)
    return out


def primitive(v: Sequence) -> tuple[int, ...]:
    """Positive rescaling of a nonzero rational vector to a primitive integer vector."""
    v = [Fraction(x) for x in v]
    L = lcm_denominators(v)
    ints = [int(x * L) for x in v]
    g = 0
    for a in ints:
        g = math.gcd(g, a)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(a // g for a in ints)


def integer_rows(A: Sequence[Sequence]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators."""
    out = []
    for row in A:
        L = lcm_denominators(row)
        out.append([int(Fraction(x) * L) for x in row])
    return out


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def column_echelon(A: Sequence[Sequence[int]], ncols: Optional[int] = None):
    """Unimodular column reduction of an integer matrix.

    Returns ``(H, U, r)`` with ``A @ U == H``; the first ``r`` columns of ``H``
    are in lower echelon form and the remaining columns are zero, so the last
    ``n - r`` columns of ``U`` are a basis of the integer kernel of ``A``.
    """
    H = [list(map(int, row)) for row in A]
    n = len(H[0]) if H else (ncols or 0)
    U = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(j: int, k: int, a: int, b: int, c: int, d: int) -> None:
        # (col_j, col_k) <- (a col_j + b col_k, c col_j + d col_k)
        for M in (H, U):
            for row in M:
                x, y = row[j], row[k]
                row[j], row[k] = a * x + b * y, c * x + d * y

    col = 0
    for i in range(len(H)):
        if col == n:
            break
        for j in range(col + 1, n):
            if H[i][j] != 0:
                a, b = H[i][col], H[i][j]
                g, x, y = _xgcd(a, b)
                colop(col, j, x, y, -b // g, a // g)
        if H[i][col] != 0:
            if H[i][col] < 0:
                for M in (H, U):
                    for row in M:
                        row[col] = -row[col]
            col += 1
    return H, U, col


def integer_kernel(A: Sequence[Sequence], ncols: int) -> list[tuple[int, ...]]:
    """A basis of the saturated lattice Z^n ∩ ker(A), in row Hermite form."""
    if not A:
        return [tuple(int(i == j) for i in range(ncols)) for j in range(ncols)]
    _, U, r = column_echelon(integer_rows(A), ncols)
    basis = [tuple(U[i][j] for i in range(ncols)) for j in range(r, ncols)]
    return hermite_rows(basis)


def hermite_rows(rows: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Row-style Hermite normal form of a full-row-rank integer matrix.

    Canonical for the lattice spanned by the rows.
    """
    if not rows:
        return []
    T = transpose(rows)
    H, _, r = column_echelon([list(map(int, t)) for t in T])
    cols = [[H[i][j] for i in range(len(H))] for j in range(r)]
    # reduce entries above... (to the left of) each pivot into [0, pivot)
    for j in range(r):
        p = next(i for i, x in enumerate(cols[j]) if x != 0)
        for k in range(j):
            q = cols[k][p] // cols[j][p]
            if q:
                cols[k] = [a - q * b for a, b in zip(cols[k], cols[j])]
    return [tuple(c) for c in cols]


def rational_gcd(v: Iterable[Fraction]) -> Fraction:
    """Largest positive g with every entry of v in Z*g (0 for the zero vector)."""
    v = [Fraction(x) for x in v]
    L = lcm_denominators(v)
    g = 0
    for x in v:
        g = math.gcd(g, int(x * L))
    return Fraction(g, L)
