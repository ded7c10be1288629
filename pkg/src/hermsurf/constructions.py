"""Plane configurations with known intersection counts against V2."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .forms import product_of_planes
from .hermitian import LineClass


class Kind(enum.Enum):
    SORENSEN = "Sorensen"
    SECOND_BEST = "SecondBest"
    GENERATOR_BOOK = "GeneratorBook"


class ConstructionError(AssertionError):
    pass


@dataclass
class Configuration:
    kind: Kind
    planes: list
    form: object
    expected_count: int
    axis: dict = field(default_factory=dict)

    def measured_count(self, S):
        return S.intersection_count(self.form)

    def to_dict(self, S):
        fmt = S.ctx.format

        def enc(obj):
            if hasattr(obj, "basis"):
                return [[fmt(x) for x in r] for r in obj.basis]
            if hasattr(obj, "coords"):
                return [fmt(x) for x in obj.coords]
            return [fmt(x) for x in obj.dual]

        return {
            "kind": self.kind.value,
            "q": S.q,
            "d": len(self.planes),
            "planes": [enc(p) for p in self.planes],
            "axis": {k: enc(v) for k, v in sorted(self.axis.items())},
            "expected_count": self.expected_count,
            "measured_count": self.measured_count(S),
        }


def sorensen_count(q, d):
    return d * (q ** 3 + q ** 2 - q) + q + 1


def second_best_count(q):
    return 3 * (q ** 3 + q ** 2 - q) + 1


def generator_book_count(q, d):
    return d * q ** 3 + q ** 2 + 1


def _rng(seed):
    return None if seed is None else np.random.default_rng(seed)


def _pick(items, rng):
    items = list(items)
    return items[0] if rng is None else items[int(rng.integers(0, len(items)))]


def _lines(S, rng):
    """Lines in enumeration order, or random lines (spanned by random vectors)."""
    if rng is None:
        yield from S.space.enumerate_lines()
        return
    while True:
        rows = rng.integers(0, S.ctx.s, size=(2, 4)).tolist()
        try:
            yield S.space.line(rows)
        except ValueError:
            continue


def _first_of_class(S, cls, rng):
    for L in _lines(S, rng):
        if S.classify_line(L) is cls:
            return L
    raise ConstructionError(f"no {cls.value} line found")


def sorensen(S, d, seed=None):
    """d tangent planes through a common secant line."""
    q = S.q
    if not 2 <= d <= q + 1:
        raise ValueError(f"d must lie in [2, {q + 1}]")
    rng = _rng(seed)
    L = _first_of_class(S, LineClass.SECANT, rng)
    tangent = [pl for pl in S.space.book_of_planes(L) if S.classify_plane(pl).tangent]
    if rng is not None:
        tangent = [tangent[i] for i in sorted(rng.choice(len(tangent), d, replace=False))]
    planes = tangent[:d]
    return Configuration(Kind.SORENSEN, planes, product_of_planes(S.ctx, planes),
                         sorensen_count(q, d), {"secant": L})


def generator_book(S, d, seed=None):
    """d planes from the book of a generator (all tangent)."""
    q = S.q
    if not 2 <= d <= q * q + 1:
        raise ValueError(f"d must lie in [2, {q * q + 1}]")
    rng = _rng(seed)
    L = _pick(S.generators, rng)
    book = S.space.book_of_planes(L)
    if rng is not None:
        book = [book[i] for i in sorted(rng.choice(len(book), d, replace=False))]
    planes = book[:d]
    return Configuration(Kind.GENERATOR_BOOK, planes, product_of_planes(S.ctx, planes),
                         generator_book_count(q, d), {"generator": L})


def second_best(S, seed=None):
    """Three tangent planes meeting pairwise in three secants through one
    surface point P, with P the only surface point common to all three."""
    space, q = S.space, S.q
    rng = _rng(seed)
    P = _pick(S.points, rng)
    tan = S.polar_plane(P)
    through = space.lines_through_point(P)
    if rng is not None:
        through = [through[i] for i in rng.permutation(len(through))]
    gens = [L for L in space.lines_through_point_in_plane(P, tan)
            if S.classify_line(L) is LineClass.GENERATOR]
    if len(gens) < 3:
        raise ConstructionError("fewer than three generators through P")
    l1, l2, l3 = gens[:3]
    ell = next(L for L in through if not space.line_in_plane(L, tan)
               and S.classify_line(L) is LineClass.SECANT)
    p1 = space.plane_of_lines(ell, l1)
    p2 = space.plane_of_lines(ell, l2)
    l13 = None
    for L in space.lines_through_point_in_plane(P, p1):
        if L in (l1, ell) or space.line_in_plane(L, tan):
            continue
        if S.classify_line(L) is LineClass.SECANT:
            l13 = L
            break
    if l13 is None:
        raise ConstructionError(f"no secant through P in the plane of ell and l1 (q={q})")
    p3 = space.plane_of_lines(l13, l3)
    planes = [p1, p2, p3]
    for i, a in enumerate(planes):
        if not S.classify_plane(a).tangent:
            raise ConstructionError(f"plane {i + 1} is not tangent")
        for b in planes[i + 1:]:
            if S.classify_line(space.meet_planes(a, b)) is not LineClass.SECANT:
                raise ConstructionError("two of the planes do not meet in a secant")
    # common surface points of the three planes
    duals = np.array([p.dual for p in planes], dtype=np.int64)
    on_all = (space.dot_array(duals, S.points_array) == 0).all(axis=0)
    common = [tuple(int(x) for x in r) for r in S.points_array[on_all]]
    if common != [P.coords]:
        raise ConstructionError(f"the three planes share surface points {common}, expected only P")
    axis = {"point": P, "ell": ell, "ell1": l1, "ell2": l2, "ell3": l3, "ell13": l13}
    return Configuration(Kind.SECOND_BEST, planes, product_of_planes(S.ctx, planes),
                         second_best_count(q), axis)
