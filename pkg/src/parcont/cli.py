"""Command line front end.

Every subcommand prints one JSON document ``{command, family, result,
timings}`` to stdout.  Timings are only filled in with ``--timings`` so the
default output is byte-stable.  Exit status: 0 success, 1 mathematical guard
failure, 2 bad input.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
import time
from contextlib import redirect_stdout
from pathlib import Path

from parcont.analysis import discriminant, regular_zero_count, verify_continuation_theorem
from parcont.arith import format_rational
from parcont.groebner import buchberger
from parcont.ideals import (
    GuardFailure,
    SaturationByZero,
    check_generic_regularity,
    saturate_family,
    specialize_basis,
    specialize_saturated,
)
from parcont.numeric import (
    TrackerConfig,
    UnsupportedShape,
    cluster,
    numeric_zeros,
    solve_triangular,
    track_path,
    verify_count_numerically,
)
from parcont.parser import FamilySyntaxError, parse_assignment, parse_family

EXIT_OK, EXIT_GUARD, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _family_doc(F):
    return {
        "vars": list(F.x_vars),
        "params": list(F.p_vars),
        "equations": {name: str(f) for name, f in zip(F.names, F.polynomials)},
    }


def _basis_doc(G):
    return [str(g) for g in G.elements]


def _point_doc(q):
    return {k: format_rational(v) for k, v in q.items()}


def _complex_doc(z: complex):
    return [float(z.real), float(z.imag)]


def _point(F, text, flag="--at"):
    if text is None:
        raise InputError(f"{flag} is required")
    try:
        q = parse_assignment(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    unknown = set(q) - set(F.p_vars)
    missing = set(F.p_vars) - set(q)
    if unknown:
        raise InputError(f"unknown parameter(s): {', '.join(sorted(unknown))}")
    if missing:
        raise InputError(f"missing value for parameter(s): {', '.join(sorted(missing))}")
    return {p: q[p] for p in F.p_vars}


def cmd_gb(F, args):
    G = buchberger(F.polynomials)
    return EXIT_OK, {"order": " > ".join(G.context.variables), "basis": _basis_doc(G)}


def cmd_saturate(F, args):
    sat = saturate_family(F)
    regular = check_generic_regularity(sat)
    return EXIT_OK, {
        "jacobian": str(sat.jacobian),
        "order": " > ".join(sat.augmented_basis.context.variables),
        "augmented_basis": _basis_doc(sat.augmented_basis),
        "saturated_basis": _basis_doc(sat.saturated_basis),
        "parameter_leading_coefficients": [str(c) for c, _ in sat.parameter_leading_coeffs],
        "generically_regular": regular,
    }


def cmd_discriminant(F, args):
    rep = discriminant(F, seed=args.seed).to_dict()
    if args.raw:
        rep.pop("squarefree_factors")
    elif args.squarefree:
        if rep["squarefree_factors"] is None:
            raise InputError("--squarefree needs a one-parameter family")
        rep.pop("raw_factors")
    return (EXIT_OK if rep["regular"] else EXIT_GUARD), rep


def cmd_count(F, args):
    q = _point(F, args.at)
    return EXIT_OK, {"q": _point_doc(q), "count": regular_zero_count(F, q)}


def cmd_specialize(F, args):
    q = _point(F, args.at)
    sat = saturate_family(F)
    direct = specialize_saturated(F, q)
    out = {"q": _point_doc(q), "saturated_at_q": _basis_doc(direct)}
    Gq = specialize_basis(sat, q)
    if isinstance(Gq, GuardFailure):
        out["specialized_basis"] = None
        out["guard_failure"] = {"coefficient": str(Gq.coefficient), "element": Gq.index}
        return EXIT_GUARD, out
    out["specialized_basis"] = _basis_doc(Gq)
    out["agree"] = Gq == direct
    return EXIT_OK, out


def cmd_solve(F, args):
    q = _point(F, args.at)
    try:
        pts = numeric_zeros(F, q)
    except UnsupportedShape as exc:
        raise InputError(str(exc)) from None
    groups = cluster(pts)
    return EXIT_OK, {
        "q": _point_doc(q),
        "zeros": [{"x": [_complex_doc(z) for z in grp[0]], "multiplicity": len(grp)} for grp in groups],
        "regular_count": verify_count_numerically(F, q),
        "symbolic_count": regular_zero_count(F, q),
    }


def cmd_track(F, args):
    q_start = _point(F, args.from_, "--from")
    q_target = _point(F, args.to, "--to")
    try:
        starts = solve_triangular(specialize_saturated(F, q_start))
    except UnsupportedShape as exc:
        raise InputError(str(exc)) from None
    cfg = TrackerConfig()
    results = [track_path(F, q_target, q_start, x0, cfg) for x0 in starts]
    paths = [
        {
            "start": [_complex_doc(z) for z in r.start],
            "end": [_complex_doc(z) for z in r.end],
            "status": r.status,
            "steps": r.steps,
            "final_residual": r.final_residual,
            "final_jacobian_det": r.final_jacobian_det,
        }
        for r in results
    ]
    ok = all(r.converged for r in results)
    return (EXIT_OK if ok else EXIT_GUARD), {
        "from": _point_doc(q_start),
        "to": _point_doc(q_target),
        "paths": paths,
    }


def cmd_verify(F, args):
    if args.trials < 1:
        raise InputError("--trials must be at least 1")
    check = verify_continuation_theorem(F, args.trials, seed=args.seed, jobs=args.jobs)
    return (EXIT_OK if check.ok and check.generic_count > 0 else EXIT_GUARD), check.to_dict()


COMMANDS = {
    "gb": cmd_gb,
    "saturate": cmd_saturate,
    "discriminant": cmd_discriminant,
    "count": cmd_count,
    "specialize": cmd_specialize,
    "solve": cmd_solve,
    "track": cmd_track,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="parcont", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file", help="family description (.fam)")
        p.add_argument("--seed", type=int, default=0, help="seed for random parameter sampling")
        p.add_argument("--timings", action="store_true", help="report wall-clock timings")
        return p

    add("gb", "reduced lex Groebner basis of the family ideal")
    add("saturate", "saturation by the Jacobian determinant")
    p = add("discriminant", "discriminant factors and generic regular-zero count")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--raw", action="store_true", help="raw leading-coefficient factors only")
    g.add_argument("--squarefree", action="store_true", help="squarefree factors only (one parameter)")
    for name, help_ in [
        ("count", "number of regular zeros at a parameter point"),
        ("specialize", "specialized basis vs. saturation computed at the point"),
        ("solve", "numeric zeros at a parameter point"),
    ]:
        add(name, help_).add_argument("--at", metavar="p1=v,...")
    p = add("track", "track all zeros along a parameter homotopy")
    p.add_argument("--from", dest="from_", metavar="p1=v,...")
    p.add_argument("--to", metavar="p1=v,...")
    p = add("verify", "check the generic count off and on the discriminant")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--jobs", type=int, default=1)
    return parser


def run_command(argv) -> tuple[int, str]:
    """Run one invocation; returns the exit code and the stdout text."""
    parser = build_parser()
    err = io.StringIO()
    try:
        with redirect_stdout(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code == 0:
            return EXIT_OK, err.getvalue()
        return EXIT_INPUT, ""
    try:
        text = Path(args.file).read_text(encoding="utf-8")
        F = parse_family(text)
    except (OSError, UnicodeDecodeError) as exc:
        print(f"parcont: cannot read {args.file}: {exc}", file=sys.stderr)
        return EXIT_INPUT, ""
    except (FamilySyntaxError, ValueError) as exc:
        print(f"parcont: {args.file}: {exc}", file=sys.stderr)
        return EXIT_INPUT, ""
    t0 = time.perf_counter()
    try:
        code, result = COMMANDS[args.command](F, args)
    except InputError as exc:
        print(f"parcont: {exc}", file=sys.stderr)
        return EXIT_INPUT, ""
    except SaturationByZero as exc:
        print(f"parcont: {exc} (the Jacobian determinant vanishes identically)", file=sys.stderr)
        return EXIT_GUARD, ""
    elapsed = time.perf_counter() - t0
    doc = {
        "command": args.command,
        "family": _family_doc(F),
        "result": result,
        "timings": {"total_seconds": round(elapsed, 6)} if args.timings else {},
    }
    return code, json.dumps(doc, indent=2) + "\n"


def main(argv=None) -> int:
    code, out = run_command(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
