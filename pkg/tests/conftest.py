import itertools
from fractions import Fraction as F
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from polytrop import (
    CanonicalSimplex,
    Incidence,
    Lattice,
    PeriodicComplex,
    SkeletonModel,
    Stratum,
    ValueGroup,
    face_chart,
    polytope_from_vertices,
    quotient,
)

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

FIXTURES = Path(__file__).parent / "fixtures"


def seg(a, b):
    return polytope_from_vertices([(F(a),), (F(b),)])


def pt(*x):
    return polytope_from_vertices([tuple(F(a) for a in x)])


def line_complex(breaks, period, gamma=ValueGroup(), check=True):
    """Quotient complex of R / period*Z cut at the given points of [0, period)."""
    pts = sorted(F(b) for b in breaks) + [F(breaks[0]) + period]
    cells = [seg(a, b) for a, b in zip(pts, pts[1:])]
    return quotient(PeriodicComplex.from_top_cells(cells, Lattice.standard(1, period), gamma, check=check))


def half_square_grid():
    h = F(1, 2)
    sq = [
        polytope_from_vertices([(a, b), (a + h, b), (a, b + h), (a + h, b + h)])
        for a in (0, h)
        for b in (0, h)
    ]
    return quotient(PeriodicComplex.from_top_cells(sq, Lattice.standard(2)))


def half_triangle_grid():
    h = F(1, 2)
    tris = [polytope_from_vertices([(a, b), (a + h, b), (a, b + h)]) for a in (0, h) for b in (0, h)]
    tris += [polytope_from_vertices([(a + h, b), (a, b + h), (a + h, b + h)]) for a in (0, h) for b in (0, h)]
    return quotient(PeriodicComplex.from_top_cells(tris, Lattice.standard(2)))


def node_model(d=1, vpi=1):
    """Two components of dimension d meeting along a stratum of dimension d - 1."""
    return SkeletonModel(
        d,
        [Stratum("S0", d - 1), Stratum("S1", d), Stratum("S2", d)],
        [CanonicalSimplex("S0", 1, vpi), CanonicalSimplex("S1", 0, vpi), CanonicalSimplex("S2", 0, vpi)],
        [
            Incidence("S1", "S0", face_chart(0, 1, [0], vpi)),
            Incidence("S2", "S0", face_chart(0, 1, [1], vpi)),
        ],
    )


def full_simplex_model(r, vpi=1):
    """Every face of one r-simplex, one stratum per face, strata dims complementary."""
    faces = [V for k in range(1, r + 2) for V in itertools.combinations(range(r + 1), k)]
    name = {V: "S" + "".join(map(str, V)) for V in faces}
    strata = [Stratum(name[V], r - (len(V) - 1)) for V in faces]
    simplices = [CanonicalSimplex(name[V], len(V) - 1, vpi) for V in faces]
    inc = []
    for W in faces:
        for V in itertools.combinations(W, len(W) - 1):
            if V:
                chart = face_chart(len(V) - 1, len(W) - 1, [W.index(v) for v in V], vpi)
                inc.append(Incidence(name[V], name[W], chart))
    return SkeletonModel(r, strata, simplices, inc)


@pytest.fixture
def fixtures_dir():
    return FIXTURES


ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line per acceptance criterion; shown in the terminal summary."""
    lines = request.config.stash.setdefault(ACCEPTANCE, [])

    def record(number, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
        lines.append((number, line))
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
