"""Command line front end: ``python3 -m polytrop <command> ...``.

Exit codes: 0 success, 1 unreadable or malformed input, 2 domain violation
(the violation report is printed as JSON on standard output).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Optional

from .bogomolov import (
    TAG_TRIVIAL,
    TROPICALLY_TRIVIAL,
    PlaceTropData,
    Verdict,
    find_contradiction,
    is_tropically_trivial,
)
from .errors import PolytropError, StabilizerNotTrivial
from .geometry import AffineMap, Hyperplane
from .measure import (
    PolytopalMeasure,
    assemble_canonical,
    product_measure,
    pushforward_exact,
    strict_supports,
)
from .periodic import QuotientComplex, product_complex, quotient, refine
from .rational import fmt, rat
from .ranks import DualGraph, IsogenyDecomposition, conjecture_status, curve_status
from .skeleton import SkeletonModel, nondeg_from_json, validate_skeleton
from .tropical_maps import ExponentMap, PiecewiseAffineMap


class InputError(Exception):
    """Unreadable or structurally malformed input (exit code 1)."""


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=str) + "\n"


def _read(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError, UnicodeDecodeError) as e:
        raise InputError(f"{path}: {e}") from e


def _parse(path: str, build: Callable):
    """Read a JSON file and build an object; structural failures become InputError."""
    obj = _read(path)
    try:
        return build(obj)
    except PolytropError:
        raise
    except (KeyError, TypeError, ValueError, IndexError, AttributeError) as e:
        raise InputError(f"{path}: malformed input ({type(e).__name__}: {e})") from e


def _load_complex(obj, validate: bool = True) -> QuotientComplex:
    return QuotientComplex.from_json(obj, validate)


def _load_measure(obj) -> PolytopalMeasure:
    return PolytopalMeasure.from_json(obj)


def _load_place(path: str) -> PlaceTropData:
    return _parse(path, lambda o: PlaceTropData.from_json(o, Path(path).stem))


class Output:
    def __init__(self, args):
        self.json = args.json
        self.path = getattr(args, "output", None)

    def emit(self, payload, summary: str) -> None:
        if self.path:
            Path(self.path).write_text(dumps(payload))
        if self.json:
            sys.stdout.write(dumps(payload))
        else:
            sys.stdout.write(summary.rstrip("\n") + "\n")


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    obj = _read(args.path)
    if not isinstance(obj, dict):
        raise InputError(f"{args.path}: expected a JSON object")
    out = Output(args)
    if "strata" in obj:
        sk = _parse(args.path, SkeletonModel.from_json)
        issues = validate_skeleton(sk)
        report = {"kind": "skeleton", "valid": not issues, "violations": issues}
        out.emit(report, f"skeleton: {'valid' if not issues else f'{len(issues)} violation(s)'}")
        if issues:
            if not out.json:
                sys.stdout.write(dumps(report))
            return 2
        return 0
    qc = _parse(args.path, lambda o: _load_complex(o, True))
    report = {
        "kind": "complex",
        "valid": True,
        "cells_by_dim": {str(k): v for k, v in qc.count_by_dim().items()},
        "covolume": fmt(qc.lattice.covolume),
    }
    out.emit(report, f"complex: valid, {len(qc.cells)} cell orbits")
    return 0


def cmd_quotient(args) -> int:
    qc = _parse(args.path, lambda o: _load_complex(o, not args.no_check))
    payload = qc.to_json()
    counts = ", ".join(f"dim {k}: {v}" for k, v in qc.count_by_dim().items())
    Output(args).emit(payload, f"{len(qc.cells)} cells mod lattice ({counts})")
    return 0


def _load_cuts(obj):
    return [Hyperplane(tuple(rat(x) for x in c["normal"]), rat(c["constant"])) for c in obj]


def cmd_refine(args) -> int:
    qc = _parse(args.complex, lambda o: _load_complex(o, True))
    cuts = _parse(args.cuts, _load_cuts)
    out = quotient(refine(qc.base, cuts))
    counts = ", ".join(f"dim {k}: {v}" for k, v in out.count_by_dim().items())
    Output(args).emit(out.to_json(), f"refined: {len(out.cells)} cells ({counts})")
    return 0


def _skeleton_bundle(obj):
    sk = SkeletonModel.from_json(obj)
    fmaps = {k: ExponentMap.from_json(v, sk.gamma) for k, v in obj.get("fmaps", {}).items()}
    nd = nondeg_from_json(obj["nondeg"]) if "nondeg" in obj else None
    return sk, fmaps, nd


def cmd_tropicalize(args) -> int:
    sk, fmaps, nd = _parse(args.skeleton, _skeleton_bundle)
    target = _parse(args.target, lambda o: _load_complex(o, True))
    if args.nondeg:
        nd = _parse(args.nondeg, nondeg_from_json)
    if nd is None:
        raise InputError("no non-degeneracy data (use --nondeg or a 'nondeg' block)")
    if args.fmaps:
        fmaps = _parse(args.fmaps, lambda o: {k: ExponentMap.from_json(v, sk.gamma) for k, v in o.items()})
    weights = _parse(args.weights, lambda o: {str(k): rat(v) for k, v in o.items()}) if args.weights else None
    x = assemble_canonical(sk, nd, weights, fmaps, target, args.stabilizer_trivial)
    payload = x.to_json()
    if args.place:
        payload = {"place": args.place, "trop": payload}
    summary = f"support cells: {len(x.support)}; dim {x.dim}; mass {fmt(x.measure.mass)}"
    Output(args).emit(payload, summary)
    return 0


def _load_map(obj, source: QuotientComplex):
    if "pieces" in obj:
        return PiecewiseAffineMap.from_json(obj, source)
    return AffineMap.from_json(obj)


def cmd_pushforward(args) -> int:
    mu = _parse(args.measure, _load_measure)
    f = _parse(args.map, lambda o: _load_map(o, mu.carrier))
    target = _parse(args.target, lambda o: _load_complex(o, True))
    if isinstance(f, PiecewiseAffineMap):
        f.validate()
    nu = pushforward_exact(mu, f, target)
    summary = f"{len(nu.positive())} charged cells; mass {fmt(nu.mass)} (source {fmt(mu.mass)})"
    Output(args).emit(nu.to_json(), summary)
    return 0


def cmd_strict_supports(args) -> int:
    mu = _parse(args.measure, _load_measure)
    sigma = _parse(args.decomposition, lambda o: _load_complex(o, True)) if args.decomposition else None
    ss = strict_supports(mu, sigma)
    carrier = sigma if sigma is not None else mu.carrier
    payload = {
        "strict_supports": [
            {"cell": c, "epsilon": fmt(e), "vertices": carrier.cell(c).to_json()["vertices"]}
            for c, e in ss.items()
        ]
    }
    lines = [f"cell {c}: epsilon {fmt(e)}" for c, e in ss.items()] or ["no strict supports"]
    Output(args).emit(payload, "\n".join(lines))
    return 0


def cmd_product(args) -> int:
    a = _read(args.first)
    if isinstance(a, dict) and "terms" in a:
        m1 = _parse(args.first, _load_measure)
        m2 = _parse(args.second, _load_measure)
        pm = product_measure(m1, m2)
        Output(args).emit(pm.to_json(), f"product measure: {len(pm.positive())} charged cells; mass {fmt(pm.mass)}")
        return 0
    q1 = _parse(args.first, lambda o: _load_complex(o, True))
    q2 = _parse(args.second, lambda o: _load_complex(o, True))
    pc = product_complex(q1, q2)
    Output(args).emit(pc.to_json(), f"product complex: {len(pc.cells)} cells")
    return 0


def cmd_bogomolov_check(args) -> int:
    data = [_load_place(p) for p in args.trop]
    missing = [x.place for x in data if not x.trop.stabilizer_trivial]
    if missing:
        raise StabilizerNotTrivial("inputs must be for X modulo its stabilizer", places=missing)
    if is_tropically_trivial(data):
        verdicts = [Verdict(TROPICALLY_TRIVIAL, TAG_TRIVIAL, None, {"places": [x.place for x in data]})]
    else:
        verdicts = [find_contradiction(x, args.N) for x in data if not x.trop.is_point]
    payload = {"N": args.N, "verdicts": [v.to_json() for v in verdicts]}
    lines = []
    for v in verdicts:
        if v.witness:
            w = v.witness
            lines.append(f"{v.kind} at {w['place']}: dim {w['dim']} -> {w['alpha_dim']} (N={w['N']}) [{v.citation}]")
        else:
            lines.append(f"{v.kind} [{v.citation}]")
    Output(args).emit(payload, "\n".join(lines))
    return 0


def cmd_ndr(args) -> int:
    d = _parse(args.path, IsogenyDecomposition.from_json)
    st = conjecture_status(d)
    Output(args).emit(st, f"ndr={st['ndr']}; {st['status']} ({st['citation']})")
    return 0


def _load_graphs(obj):
    return int(obj["g"]), {str(k): DualGraph.from_json(v) for k, v in obj["graphs"].items()}


def cmd_curve_check(args) -> int:
    g, graphs = _parse(args.path, _load_graphs)
    st = curve_status(graphs, g)
    where = f" at {st['place']}" if "place" in st else ""
    Output(args).emit(st, f"{st['status']} ({st['citation']}){where}")
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polytrop", description="Exact polyhedral toolkit for tropical skeleta.")
    p.add_argument("--json", action="store_true", help="machine-readable output only")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, output=False):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output only")
        if output:
            sp.add_argument("-o", "--output", help="write the JSON result to this file")
        return sp

    sp = add("validate", cmd_validate, "validate a periodic complex or a skeleton")
    sp.add_argument("path")

    sp = add("quotient", cmd_quotient, "orbit representatives of a periodic complex", output=True)
    sp.add_argument("path")
    sp.add_argument("--no-check", action="store_true", help="skip the decomposition axioms")

    sp = add("refine", cmd_refine, "cut a complex by lattice orbits of hyperplanes", output=True)
    sp.add_argument("complex")
    sp.add_argument("cuts", help='JSON list of {"normal": [...], "constant": "p/q"}')

    sp = add("tropicalize", cmd_tropicalize, "assemble the canonical measure from skeleton data", output=True)
    sp.add_argument("skeleton")
    sp.add_argument("target", help="subdivisional target complex")
    sp.add_argument("--nondeg")
    sp.add_argument("--weights")
    sp.add_argument("--fmaps")
    sp.add_argument("--place", help="wrap the result as data for this place")
    sp.add_argument("--stabilizer-trivial", action="store_true")

    sp = add("pushforward", cmd_pushforward, "exact push-forward of a measure", output=True)
    sp.add_argument("measure")
    sp.add_argument("map")
    sp.add_argument("target")

    sp = add("strict-supports", cmd_strict_supports, "strict supports of a measure", output=True)
    sp.add_argument("measure")
    sp.add_argument("decomposition", nargs="?")

    sp = add("product", cmd_product, "product of two measures or two complexes", output=True)
    sp.add_argument("first")
    sp.add_argument("second")

    sp = add("bogomolov-check", cmd_bogomolov_check, "tropical triviality and diagonal-contraction witness", output=True)
    sp.add_argument("trop", nargs="+")
    sp.add_argument("--N", type=int, default=2)

    sp = add("ndr", cmd_ndr, "nowhere-degenerate rank and conjecture status")
    sp.add_argument("path")

    sp = add("curve-check", cmd_curve_check, "dual-graph criterion for curves")
    sp.add_argument("path")
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as e:
        sys.stderr.write(f"error: {e}\n")
        return 1
    except PolytropError as e:
        sys.stdout.write(dumps(e.report()))
        return 2


if __name__ == "__main__":
    sys.exit(main())
