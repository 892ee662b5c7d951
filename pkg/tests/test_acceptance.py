"""The nine acceptance criteria, one test each; every test records a PASS/FAIL line."""

import json
import time

import networkx as nx
import pytest
import sympy

from polytrop import (
    NondegEntry,
    QuotientComplex,
    assemble_canonical,
    check_exact_sequence,
    curve_status,
    find_contradiction,
    jacobian_torus_rank,
    ndr,
    nondegenerate_set,
    product_profile,
    pushforward_exact,
    strict_supports,
    validate_nondeg_consistency,
)
from polytrop.errors import GenusMismatch, LatticeOverlap, NotFaceClosed, NotGammaRational
from polytrop.ranks import DualGraph

from conftest import FIXTURES
from instances import (
    CLI_CORPUS,
    PLACES,
    alpha_rank_oracle,
    brute_strict,
    contraction_case,
    nondeg_case,
    pushforward_instance,
    rand_decomposition,
    rand_profile,
    run_corpus,
    seeded,
    strict_instance,
)


def test_rank_algebra(criterion):
    t0 = time.perf_counter()
    bad = 0
    for seed in range(1000):
        rng = seeded(seed)
        p1, p2, p3 = (rand_profile(rng, max_dim=6) for _ in range(3))
        prod = product_profile(p1, p2)
        for v in PLACES:
            bad += prod.torus_rank_at(v) != p1.torus_rank_at(v) + p2.torus_rank_at(v)
            bad += prod.abelian_rank_at(v) != p1.abelian_rank_at(v) + p2.abelian_rank_at(v)
        bad += not check_exact_sequence(p1, product_profile(p1, p3), p3)
        d1, d2 = rand_decomposition(rng), rand_decomposition(rng)
        bad += ndr(d1.concat(d2)) != ndr(d1) + ndr(d2)
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and elapsed < 5
    criterion(1, ok, f"rank algebra, 1000 triples, {bad} violations, {elapsed:.2f}s (< 5s)")
    assert ok


def test_ndr_bound(criterion):
    violations = 0
    for seed in range(2000):
        d = rand_decomposition(seeded(seed), max_factors=5)
        total = d.total_profile()
        violations += ndr(d) > min(total.abelian_rank_at(v) for v in PLACES)
    ok = violations == 0
    criterion(2, ok, f"ndr <= min_v b_v on 2000 decompositions, {violations} violations")
    assert ok


def test_mass_conservation(criterion):
    t0 = time.perf_counter()
    bad, dims = 0, set()
    for seed in range(200):
        mu, f, target = pushforward_instance(seeded(seed))
        dims.add(mu.carrier.lattice.n)
        bad += pushforward_exact(mu, f, target).mass != mu.mass
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and elapsed < 30 and dims == {1, 2, 3}
    criterion(3, ok, f"exact mass conservation, 200 instances in dims {sorted(dims)}, {bad} mismatches, {elapsed:.1f}s (< 30s)")
    assert ok


def test_strict_support_oracle(criterion):
    t0 = time.perf_counter()
    bad = count = 0
    for seed in range(150):
        mu, sigma = strict_instance(seeded(seed))
        carrier = sigma if sigma is not None else mu.carrier
        if len(carrier.cells) > 50:
            continue
        count += 1
        bad += set(strict_supports(mu, sigma)) != brute_strict(mu, sigma)
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and count >= 100 and elapsed < 30
    criterion(4, ok, f"strict supports = brute-force epsilon search, {count} instances, {bad} mismatches, {elapsed:.1f}s (< 30s)")
    assert ok


def test_diagonal_contraction(criterion):
    t0 = time.perf_counter()
    families = [("segment", 1), ("segment", 2), ("square", None), ("triangle", None), ("dirac", None)]
    bad = total = 0
    seen = set()
    for kind, period in families:
        for N in (2, 3):
            for seed in range(6 if kind in ("square", "triangle") and N == 3 else 8):
                x, _, expect = contraction_case(seeded(seed), kind, N, period)
                v = find_contradiction(x, N)
                total += 1
                seen.add((kind, tuple(map(tuple, x.trop.lattice.basis)), N))
                if v.kind != expect:
                    bad += 1
                elif expect == "ContradictionWitness":
                    w = v.witness
                    oracle = alpha_rank_oracle(w["vertices"], x.trop.n, N)
                    bad += not (w["alpha_dim"] < w["dim"] and oracle == (w["dim"], w["alpha_dim"]))
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and total >= 50 and elapsed < 60 and len(seen) >= 10
    criterion(5, ok, f"diagonal contraction, {total} cases ({len(seen)} support/lattice/N classes), {bad} failures, {elapsed:.1f}s (< 60s)")
    assert ok


def test_nondeg_consistency(criterion):
    false_alarms = misses = trials = cases = 0
    seed = 0
    while trials < 120:
        sk, nd, weights, fmaps, sigma = nondeg_case(seeded(seed))
        seed += 1
        cases += 1
        x = assemble_canonical(sk, nd, weights, fmaps, sigma)
        false_alarms += bool(validate_nondeg_consistency(x))
        for sid in sorted(nondegenerate_set(sk, nd)):
            e = nd[sid]
            if e.image_dim == 0:
                continue
            mutated = dict(nd)
            mutated[sid] = NondegEntry(e.image_dim - 1, e.abelian_image_dim)
            issues = validate_nondeg_consistency(x, nd=mutated)
            trials += 1
            misses += not any(i["citation"] == "Prop5.12" and i.get("simplex") == sid for i in issues)
    ok = false_alarms == 0 and misses == 0 and trials >= 100
    criterion(
        6, ok, f"{cases} assembled cases clean ({false_alarms} false alarms); {trials} mutations, {misses} false negatives"
    )
    assert ok


def test_periodicity_validation(criterion):
    expected = {
        "invalid_overlap.json": LatticeOverlap,
        "invalid_not_face_closed.json": NotFaceClosed,
        "invalid_not_gamma.json": NotGammaRational,
    }
    rejected = 0
    for name, cls in expected.items():
        with pytest.raises(cls):
            QuotientComplex.from_json(json.loads((FIXTURES / name).read_text()), True)
        rejected += 1
    valid = sorted(FIXTURES.glob("complex_*.json"))
    volume_ok = 0
    for path in valid:
        qc = QuotientComplex.from_json(json.loads(path.read_text()), True)
        top = max(qc.cell(c).dim for c in qc.ids)
        det = abs(sympy.Matrix([[sympy.Rational(str(x)) for x in row] for row in qc.lattice.basis]).det())
        covered = sum(qc.cell(c).volume for c in qc.ids if qc.cell(c).dim == top)
        volume_ok += top == qc.lattice.n and sympy.Rational(str(covered)) == det
    ok = rejected == 3 and volume_ok == len(valid) >= 5
    criterion(7, ok, f"3/3 invalid complexes rejected by class; {volume_ok}/{len(valid)} valid fixtures with volume = |det L|")
    assert ok


def _cycle_rank(graph):
    H = nx.Graph()
    H.add_nodes_from(graph.genus)
    for i, (a, b) in enumerate(graph.edges):
        nx.add_path(H, [a, ("e", i), ("f", i), b])
    return len(nx.cycle_basis(H))


def test_curve_criterion(criterion):
    paths = sorted((FIXTURES / "curves").glob("curve_*.json"))
    bad = 0
    theta_seen = False
    for path in paths:
        obj = json.loads(path.read_text())
        g = obj["g"]
        graphs = {p: DualGraph.from_json(G) for p, G in obj["graphs"].items()}
        ranks = {p: _cycle_rank(G) for p, G in graphs.items()}
        bad += any(jacobian_torus_rank(G) != ranks[p] for p, G in graphs.items())
        theta_seen |= any(len(G.genus) == 2 and len(G.edges) == 3 and ranks[p] == 2 for p, G in graphs.items())
        if any(G.total_genus + ranks[p] != g for p, G in graphs.items()):
            try:
                curve_status(graphs, g)
                bad += 1
            except GenusMismatch:
                pass
            continue
        status = curve_status(graphs, g)["status"]
        bad += status != ("HoldsByThmA3" if any(ranks.values()) else "Unresolved")
    ok = bad == 0 and len(paths) == 20 and theta_seen
    criterion(8, ok, f"curve criterion on {len(paths)} fixtures (theta included: {theta_seen}), {bad} disagreements")
    assert ok


def test_cli_determinism(criterion):
    first = run_corpus(CLI_CORPUS, FIXTURES, hash_seed="1")
    second = run_corpus(CLI_CORPUS, FIXTURES, hash_seed="2")
    differing = [" ".join(args) for args, a, b in zip(CLI_CORPUS * 2, first, second) if a != b]
    codes_ok = all(code in (0, 2) for code, _ in first)
    ok = not differing and codes_ok and len(first) == 2 * len(CLI_CORPUS)
    criterion(9, ok, f"{len(CLI_CORPUS)} CLI commands x 2 output modes byte-identical across runs; differing: {differing}")
    assert ok
