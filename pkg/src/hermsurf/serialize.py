"""JSON encodings of field elements, points, lines, planes, matrices and forms."""
from __future__ import annotations

import json

from .field import MODULUS_TABLE_VERSION
from .forms import HomogeneousForm


class FormatError(ValueError):
    """Malformed JSON payload."""


def header(ctx):
    from . import __version__
    return {"tool": "hermsurf", "version": __version__, "q": ctx.q,
            "modulus": ctx.modulus_str(), "modulus_table": MODULUS_TABLE_VERSION}


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def elem(ctx, x):
    return ctx.format(x)


def parse_elem(ctx, text):
    try:
        return ctx.parse(str(text))
    except ValueError as exc:
        raise FormatError(f"bad field element {text!r}: {exc}") from None


def point_to_json(ctx, P):
    return [ctx.format(x) for x in getattr(P, "coords", P)]


def point_from_json(space, data):
    if not isinstance(data, list) or len(data) != 4:
        raise FormatError("a point is a list of 4 field elements")
    return space.point([parse_elem(space.ctx, x) for x in data])


def plane_to_json(ctx, plane):
    return [ctx.format(x) for x in plane.dual]


def plane_from_json(space, data):
    if not isinstance(data, list) or len(data) != 4:
        raise FormatError("a plane is a list of 4 field elements")
    return space.plane([parse_elem(space.ctx, x) for x in data])


def line_to_json(ctx, L):
    return [[ctx.format(x) for x in r] for r in L.basis]


def line_from_json(space, data):
    if not isinstance(data, list) or len(data) != 2:
        raise FormatError("a line is a list of two points")
    rows = []
    for p in data:
        if not isinstance(p, list) or len(p) != 4:
            raise FormatError("a line is a list of two points")
        rows.append([parse_elem(space.ctx, x) for x in p])
    return space.line(rows)


def matrix_to_json(ctx, m):
    return [[ctx.format(x) for x in r] for r in m]


def matrix_from_json(ctx, data):
    if not isinstance(data, list) or len(data) != 4 or any(not isinstance(r, list) or len(r) != 4 for r in data):
        raise FormatError("a matrix is a 4x4 array of field elements")
    return [[parse_elem(ctx, x) for x in r] for r in data]


def form_to_json(F):
    ctx = F.ctx
    return {"q": ctx.q, "degree": F.degree,
            "terms": [{"exp": list(e), "c": ctx.format(F.terms[e])} for e in sorted(F.terms, reverse=True)]}


def form_from_json(ctx, data):
    if not isinstance(data, dict) or "degree" not in data or "terms" not in data:
        raise FormatError("a form needs 'degree' and 'terms'")
    if "q" in data and data["q"] != ctx.q:
        raise FormatError(f"form is over q={data['q']}, expected q={ctx.q}")
    degree = data["degree"]
    if not isinstance(degree, int) or degree < 1:
        raise FormatError("degree must be a positive integer")
    terms = {}
    for t in data["terms"]:
        try:
            exp = tuple(int(x) for x in t["exp"])
            c = parse_elem(ctx, t["c"])
        except (KeyError, TypeError) as exc:
            raise FormatError(f"bad term {t!r}") from exc
        if len(exp) != 4 or sum(exp) != degree or min(exp) < 0:
            raise FormatError(f"exponents {list(exp)} do not form a degree-{degree} monomial in 4 variables")
        if exp in terms:
            raise FormatError(f"duplicate exponent {list(exp)}")
        terms[exp] = c
    F = HomogeneousForm(ctx, degree, terms)
    if F.is_zero():
        raise FormatError("the zero form is not allowed")
    return F
