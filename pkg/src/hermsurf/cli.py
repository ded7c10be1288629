"""Command-line front end: ``hermsurf <command> [options]``.

Exit status is 0 on success, 1 when an assertion or survey check fails and
2 for malformed input or invalid parameters.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import constructions, cubicnf, verify
from .field import FieldCtx, prime_power
from .hermitian import HermitianMatrix, HermitianSurface, canonical_surface
from .projspace import GeometryError
from .serialize import (FormatError, dumps, form_from_json, form_to_json, header, line_from_json,
                        line_to_json, matrix_from_json, plane_from_json, plane_to_json, point_to_json)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
MAX_Q = 8


class UsageError(Exception):
    pass


def _load_json(text):
    """Inline JSON, ``-`` for stdin, or a path to a JSON file."""
    if text is None:
        raise UsageError("missing JSON input")
    try:
        if text == "-":
            return json.load(sys.stdin)
        if text.lstrip().startswith(("{", "[")):
            return json.loads(text)
        with open(text) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read JSON from {text!r}: {exc}") from None


def _surface(args):
    try:
        prime_power(args.q)
    except ValueError:
        raise UsageError(f"q = {args.q} is not a prime power") from None
    if args.q > args.max_q:
        raise UsageError(f"q = {args.q} exceeds the ceiling {args.max_q} (see --max-q)")
    ctx = FieldCtx.from_q(args.q)
    if getattr(args, "matrix", None):
        S = HermitianSurface(HermitianMatrix(ctx, matrix_from_json(ctx, _load_json(args.matrix))))
    else:
        S = canonical_surface(ctx)
    return S


def _emit(args, payload, text=None):
    out = text if text is not None else dumps(payload)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def cmd_count(args):
    S = _surface(args)
    F = form_from_json(S.ctx, _load_json(args.form))
    _emit(args, {"header": header(S.ctx), "form": form_to_json(F), "count": S.intersection_count(F)})
    return EXIT_OK


def cmd_classify_line(args):
    S = _surface(args)
    L = line_from_json(S.space, _load_json(args.line))
    _emit(args, {"header": header(S.ctx), "line": line_to_json(S.ctx, L),
                 "class": S.classify_line(L).value, "surface_points": S.line_count(L)})
    return EXIT_OK


def cmd_classify_plane(args):
    S = _surface(args)
    plane = plane_from_json(S.space, _load_json(args.plane))
    pc = S.classify_plane(plane, check=True)
    _emit(args, {"header": header(S.ctx), "plane": plane_to_json(S.ctx, plane), "class": pc.name,
                 "pole": point_to_json(S.ctx, S.pole(plane)), "surface_points": pc.count})
    return EXIT_OK


def cmd_book(args):
    S = _surface(args)
    L = line_from_json(S.space, _load_json(args.line))
    cls = S.classify_line(L)
    book = S.space.book_of_planes(L)
    _emit(args, {"header": header(S.ctx), "axis": line_to_json(S.ctx, L), "axis_class": cls.value,
                 "planes": [{"plane": plane_to_json(S.ctx, pl), "tangent": S.classify_plane(pl).tangent}
                            for pl in book],
                 "profile": list(S.book_profile(L, cls))})
    return EXIT_OK


def cmd_construct(args):
    S = _surface(args)
    seed = args.seed if args.randomize else None
    if args.kind == "sorensen":
        conf = constructions.sorensen(S, args.d, seed)
    elif args.kind == "second":
        conf = constructions.second_best(S, seed)
    else:
        conf = constructions.generator_book(S, args.d, seed)
    payload = conf.to_dict(S)
    payload["header"] = header(S.ctx)
    payload["form"] = form_to_json(conf.form)
    _emit(args, payload)
    return EXIT_OK if payload["measured_count"] == payload["expected_count"] else EXIT_FAIL


def cmd_nf(args):
    S = _surface(args)
    ctx, space = S.ctx, S.space
    F = form_from_json(ctx, _load_json(args.form))
    L = line_from_json(space, _load_json(args.line))
    nf = cubicnf.normal_form(F, L, space)
    rep = cubicnf.t_ell(F, L, space, nf)
    payload = {"header": header(ctx), "parity": nf.char_parity,
               "normal_form": {k: str(v) for k, v in nf.parts().items()},
               "t_ell": rep.to_dict(ctx), "t_ell_size": len(rep.members)}
    ok = True
    if rep.invariant_nonzero and (nf.char_parity == "odd" or not cubicnf.linear_factors(F, space)):
        ok = len(rep.members) <= 5
    payload["bound_ok"] = ok
    _emit(args, payload)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args):
    S = _surface(args)
    what = args.what
    if what == "structure":
        rep = verify.structure_audit(S, samples=args.samples or 2000, seed=args.seed)
    elif what == "quadrics":
        rep = verify.exhaustive_quadrics(S, jobs=args.jobs)
    elif what == "triples":
        rep = verify.elx_survey(S, jobs=args.jobs)
    else:
        rep = verify.cubic_survey(S, samples=args.samples or 1000, seed=args.seed, jobs=args.jobs,
                                  strict_conjecture=args.strict_conjecture)
    if args.format == "csv":
        _emit(args, None, rep.to_csv())
    else:
        _emit(args, None, rep.to_json())
    for v in rep.violations:
        print(f"violation: {v}", file=sys.stderr)
    return EXIT_OK if rep.ok else EXIT_FAIL


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, default=2, help="the surface lives in PG(3, q^2)")
    common.add_argument("--max-q", type=int, default=MAX_Q, help=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--matrix", help="Hermitian matrix JSON (default: the diagonal form)")

    p = argparse.ArgumentParser(prog="hermsurf", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", parents=[common], help="points of V(F) on the surface")
    c.add_argument("--form", required=True)
    c.set_defaults(func=cmd_count)

    c = sub.add_parser("classify-line", parents=[common])
    c.add_argument("--line", required=True)
    c.set_defaults(func=cmd_classify_line)

    c = sub.add_parser("classify-plane", parents=[common])
    c.add_argument("--plane", required=True)
    c.set_defaults(func=cmd_classify_plane)

    c = sub.add_parser("book", parents=[common])
    c.add_argument("--line", required=True)
    c.set_defaults(func=cmd_book)

    c = sub.add_parser("construct", parents=[common])
    c.add_argument("kind", choices=["sorensen", "second", "generator-book"])
    c.add_argument("--d", type=int, default=3)
    c.add_argument("--randomize", action="store_true", help="seeded instead of first-found picks")
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("nf", parents=[common], help="normal form, invariant and T_l of a cubic")
    c.add_argument("--form", required=True)
    c.add_argument("--line", required=True)
    c.set_defaults(func=cmd_nf)

    c = sub.add_parser("verify", parents=[common])
    c.add_argument("what", choices=["structure", "quadrics", "triples", "cubics"])
    c.add_argument("--samples", type=int)
    c.add_argument("--format", choices=["json", "csv"], default="json")
    c.add_argument("--strict-conjecture", action="store_true")
    c.add_argument("--d", type=int, default=3)
    c.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    if getattr(args, "d", 3) < 1:
        print("error: --d must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, FormatError, GeometryError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"assertion failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
