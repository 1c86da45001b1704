"""Command line front end: ``laminates <subcommand> INPUT``.

INPUT is a path, ``-`` for stdin, or inline JSON.  Exit status is 0 on
success, 1 when a verification or construction fails, 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import io
from .cube import FrameError, WitnessSearchError, build_frame, symmetric_laminate
from .hulls import (OPPOSITE_SIGN, RankOneSquare, RuledSurfacePatch, SquareError, classify, pc_membership,
                    surface_mesh)
from .measures import flatten, is_symmetric, jensen_check, validate_tree
from .periodic import exact_weights, mc_weights
from .verify import battery, main_theorem_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class VerificationFailed(Exception):
    def __init__(self, payload):
        super().__init__("verification failed")
        self.payload = payload


def _load(src: str):
    if src == "-":
        text = sys.stdin.read()
    elif src.lstrip().startswith(("{", "[")):
        text = src
    else:
        with open(src) as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise io.InputError(f"line {e.lineno} column {e.colno}", e.msg) from None


def cmd_weights(data, args):
    d = io.dec_deformation(data)
    S = lambda v: io.enc_scalar(v, args.floats)  # noqa: E731
    if args.mc:
        if args.seed is None:
            raise io.InputError("--seed", "the Monte-Carlo path needs an explicit seed")
        w = mc_weights(d, args.mc, args.seed, workers=args.workers)
        return {"method": "monte-carlo", "samples": args.mc, "seed": args.seed,
                "weights": {k: float(v) for k, v in w.as_strings().items()}}
    if any(not isinstance(m.phase, Fraction) for m in d.modes):
        raise io.InputError("$.modes", "exact weights need rational phases")
    w = exact_weights(d)
    return {"method": "exact", "weights": {k: S(v) for k, v in w.as_strings().items()}}


def cmd_check_tree(data, args):
    t = io.dec_tree_or_forest(data)
    rep = validate_tree(t)
    out = {"valid": rep.valid, "order": rep.order}
    if not rep:
        out["violation"] = {"path": rep.path, "invariant": rep.invariant,
                            "residual": io.enc_scalar(rep.residual, args.floats)}
        raise VerificationFailed(out)
    out["flattened"] = io.enc_measure(flatten(t), args.floats)
    margins = {}
    ok = True
    for i, f in enumerate(battery(args.seed or 0, args.battery)):
        jr = jensen_check(t, f)
        ok &= jr.ok
        margins[f"{i:02d}:{f.tag}"] = io.enc_scalar(jr.global_margin, args.floats)
    out["jensen_margins"] = margins
    if not ok:
        raise VerificationFailed(out)
    return out


def cmd_hull(data, args):
    pts = data.get("points") if isinstance(data, dict) else None
    if not isinstance(pts, list) or not pts:
        raise io.InputError("$.points", "expected a nonempty list of matrices")
    K = [io.dec_mat(p, f"$.points[{i}]") for i, p in enumerate(pts)]
    q = io.dec_mat(data["query"], "$.query") if "query" in data else None
    out = {"classification": None}
    patch = None
    if len(K) == 4:
        try:
            sq = RankOneSquare(*K)
            out["classification"] = classify(sq)
            out["d13"], out["d24"] = io.enc_scalar(sq.d13, args.floats), io.enc_scalar(sq.d24, args.floats)
            if out["classification"] == OPPOSITE_SIGN:
                patch = RuledSurfacePatch(sq)
        except SquareError as e:
            out["square_error"] = str(e)
    if q is not None:
        try:
            w = pc_membership(K, q)
        except ValueError as e:
            raise io.InputError("$.points", str(e)) from None
        out["member"] = w is not None
        out["pc_witness"] = None if w is None else [io.enc_scalar(v, args.floats) for v in w]
    if args.mesh:
        if patch is None:
            raise io.InputError("--mesh", "a mesh needs a rank-one square with opposite-sign diagonals")
        with open(args.mesh, "w") as fh:
            for t, u, X in surface_mesh(patch, args.mesh_n):
                fh.write(json.dumps({"t": io.enc_scalar(t, args.floats), "u": io.enc_scalar(u, args.floats),
                                     "point": io.enc_mat(X, args.floats)}) + "\n")
        out["mesh"] = args.mesh
    return out


def _frame(data):
    C = io.dec_cube(data)
    try:
        return build_frame(*C)
    except FrameError as e:
        raise io.InputError("$", str(e)) from None


def cmd_frame(data, args):
    fr = _frame(data)
    rec = fr.record()
    rec["flip_dets"] = [io.enc_scalar(v, args.floats) for v in fr.flip_dets()]
    return rec


def cmd_laminate(data, args):
    fr = _frame(data)
    target = io.dec_scalar(data.get("target_ratio", "1/3"), "$.target_ratio")
    if not Fraction(1, 3) <= target <= 3:
        raise io.InputError("$.target_ratio", "must lie in [1/3, 3]")
    try:
        cert = symmetric_laminate(fr, target, grid=args.grid)
    except WitnessSearchError as e:
        raise VerificationFailed({"error": str(e)})
    return io.enc_certificate(cert, args.floats)


def cmd_verify(data, args):
    fns = battery(args.seed or 0, args.battery)
    if isinstance(data, dict) and "forest" in data:
        forest = io.dec_tree_or_forest(data["forest"], "$.forest")
        fr = build_frame(*io.dec_cube(data["frame"], "$.frame"))
        rep = validate_tree(forest)
        m = flatten(forest)
        out = {"valid": rep.valid, "order": rep.order}
        try:
            sym, alpha, beta = is_symmetric(m, fr)
            out.update(symmetric=sym, alpha=io.enc_scalar(alpha, args.floats),
                       beta=io.enc_scalar(beta, args.floats))
        except ValueError as e:
            sym = True  # coinciding vertices; symmetry is not label-checkable
            out["symmetric"] = None
            out["note"] = str(e)
        margins, ok = {}, rep.valid and sym
        for i, f in enumerate(fns):
            jr = jensen_check(forest, f) if rep.valid else None
            if jr is not None:
                ok &= jr.ok
                margins[f"{i:02d}:{f.tag}"] = io.enc_scalar(jr.global_margin, args.floats)
        out["margins"] = margins
        out["pass"] = bool(ok)
    else:
        fr = _frame(data)
        rep = main_theorem_suite(fr, fns)
        out = {"case": rep.case, "certificate_valid": rep.certificate_valid, "order": rep.order,
               "margins": {f"{i:02d}:{t}": io.enc_scalar(m, args.floats) for i, (t, m) in enumerate(rep.margins)},
               "jensen": {f"{i:02d}:{t}": io.enc_scalar(m, args.floats) for i, (t, m) in enumerate(rep.jensen)},
               "pass": rep.ok}
    if not out["pass"]:
        raise VerificationFailed(out)
    return out


COMMANDS = {
    "weights": cmd_weights,
    "check-tree": cmd_check_tree,
    "hull": cmd_hull,
    "frame": cmd_frame,
    "laminate": cmd_laminate,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="laminates", description="Laminates supported on rank-one cubes.")
    p.add_argument("--mode", choices=("exact", "float"), default="exact",
                   help="number format of the output (construction is always exact)")
    p.add_argument("--seed", type=int, default=None, help="seed for randomized paths")
    p.add_argument("--out", default=None, help="write JSON here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("input", help="JSON file, '-' for stdin, or inline JSON")
        # common flags are accepted after the subcommand too
        sp.add_argument("--mode", choices=("exact", "float"), default=argparse.SUPPRESS)
        sp.add_argument("--seed", type=int, default=argparse.SUPPRESS)
        sp.add_argument("--out", default=argparse.SUPPRESS)
        if name == "weights":
            sp.add_argument("--mc", type=int, default=None, help="Monte-Carlo sample count")
            sp.add_argument("--workers", type=int, default=1)
        if name in ("check-tree", "verify"):
            sp.add_argument("--battery", type=int, default=24, help="number of test functions")
        if name == "hull":
            sp.add_argument("--mesh", default=None, help="write a JSON-lines surface mesh here")
            sp.add_argument("--mesh-n", type=int, default=10)
        if name == "laminate":
            sp.add_argument("--grid", type=int, default=256, help="witness direction grid size")
    return p


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args.floats = args.mode == "float"
    status = EXIT_OK
    try:
        payload = COMMANDS[args.command](_load(args.input), args)
    except io.InputError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except VerificationFailed as e:
        payload, status = e.payload, EXIT_FAIL
    text = json.dumps(payload, indent=2, sort_keys=False) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
