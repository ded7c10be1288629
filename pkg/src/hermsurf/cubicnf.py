"""Cubic surfaces through a line: the (A, B, C, D, E, K) normal form, the
matrix M_F and its determinant (odd characteristic), the quintic invariant
(even characteristic), the set T_l of planes through the line whose section
degenerates into lines, and the invariant-zero dichotomy.

In the normal position the line is V(x2, x3) and

    odd:   F = A x0^2 + 2B x0 x1 + C x1^2 + 2D x0 + 2E x1 + K
    even:  F = A x0^2 +  B x0 x1 + C x1^2 +  D x0 +  E x1 + K

with A, B, C linear, D, E quadratic and K cubic in (x2, x3).  Binary forms
here are in the two variables (x2, x3).

A cubic form over a field is irreducible iff it has no linear factor: any
factorization has a factor of degree 1.  So "F irreducible" is tested as
``linear_factors(F) == []``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .forms import (BinaryForm, HomogeneousForm, TernaryForm, find_double_lines,
                    linear_factors, line_on_form, restrict_to_plane)
from .projspace import GeometryError, ProjLine

# (x0, x1)-exponent pattern of each normal-form slot
_SLOTS = {(2, 0): "A", (1, 1): "B", (0, 2): "C", (1, 0): "D", (0, 1): "E", (0, 0): "K"}
_DEGREES = {"A": 1, "B": 1, "C": 1, "D": 2, "E": 2, "K": 3}
_HALVED = ("B", "D", "E")


class CharacteristicError(ValueError):
    """An invariant was requested in the wrong characteristic."""


class DichotomyError(AssertionError):
    """Invariant vanishes but F is neither reducible nor singular along a line."""


def _bzero(ctx, d):
    return BinaryForm(ctx, d, {})


@dataclass
class CubicNF:
    A: BinaryForm
    B: BinaryForm
    C: BinaryForm
    D: BinaryForm
    E: BinaryForm
    K: BinaryForm
    char_parity: str
    transform: object = None

    @property
    def ctx(self):
        return self.A.ctx

    def parts(self):
        return {k: getattr(self, k) for k in "ABCDEK"}

    def reconstruct(self):
        """The pulled-back cubic F(M x) rebuilt from the six binary forms."""
        ctx = self.ctx
        two = ctx.from_int(2)
        terms = {}
        for (a, b), name in _SLOTS.items():
            bf = getattr(self, name)
            for (c, d), v in bf.terms.items():
                if name in _HALVED and self.char_parity == "odd":
                    v = ctx.mul(two, v)
                terms[(a, b, c, d)] = v
        return HomogeneousForm(ctx, 3, terms)


@dataclass(frozen=True)
class MFMatrix:
    entries: tuple

    @classmethod
    def of(cls, nf):
        A, B, C, D, E, K = (nf.A, nf.B, nf.C, nf.D, nf.E, nf.K)
        return cls(((A, B, D), (B, C, E), (D, E, K)))


@dataclass
class TEllReport:
    axis: ProjLine
    members: list
    invariant_nonzero: bool
    invariant: BinaryForm
    classification: list = field(default_factory=list)

    def to_dict(self, ctx):
        fmt = ctx.format
        return {
            "axis": [[fmt(x) for x in r] for r in self.axis.basis],
            "members": [[fmt(x) for x in pl.dual] for pl in self.members],
            "invariant_nonzero": self.invariant_nonzero,
            "invariant": str(self.invariant),
            "planes": [{"plane": [fmt(x) for x in pl.dual], "section": kind}
                       for pl, kind in self.classification],
        }


def parity(ctx):
    return "even" if ctx.p == 2 else "odd"


def normal_form(F, L, space, L2=None):
    """Coefficients (A, ..., K) of F in coordinates with L = V(x2, x3).

    If L2 is given it is sent to V(x0, x1), so K = 0 whenever L2 lies on V(F).
    """
    if F.degree != 3:
        raise ValueError("normal form is defined for cubics")
    F.require_nonzero()
    if not line_on_form(F, L):
        raise GeometryError("the line is not contained in V(F)")
    ctx = F.ctx
    M = space.adapted_coords(L, L2)
    G = F.pullback(M)
    odd = parity(ctx) == "odd"
    half = ctx.inv(ctx.from_int(2)) if odd else 1
    buckets = {k: {} for k in "ABCDEK"}
    for (a, b, c, d), v in G.terms.items():
        name = _SLOTS.get((a, b))
        if name is None:
            raise AssertionError("pulled-back form has a term without x2, x3")
        if odd and name in _HALVED:
            v = ctx.mul(half, v)
        buckets[name][(c, d)] = v
    parts = {k: BinaryForm(ctx, _DEGREES[k], buckets[k]) for k in "ABCDEK"}
    return CubicNF(char_parity="odd" if odd else "even", transform=M, **parts)


def normal_form_from_parts(ctx, A=None, B=None, C=None, D=None, E=None, K=None):
    """Build a CubicNF from coefficient dicts {(e2, e3): code}."""
    vals = dict(A=A, B=B, C=C, D=D, E=E, K=K)
    parts = {k: BinaryForm(ctx, _DEGREES[k], vals[k] or {}) for k in "ABCDEK"}
    return CubicNF(char_parity=parity(ctx), **parts)


def det_MF(nf):
    """ACK + 2BDE - AE^2 - CD^2 - B^2 K."""
    if nf.char_parity != "odd":
        raise CharacteristicError("det M_F is the odd-characteristic invariant")
    ctx = nf.ctx
    A, B, C, D, E, K = (nf.A, nf.B, nf.C, nf.D, nf.E, nf.K)
    out = A * C * K + (B * D * E).scale(ctx.from_int(2))
    return out - A * E * E - C * D * D - B * B * K


def quintic_invariant(nf):
    """AE^2 + BDE + CD^2 + B^2 K."""
    if nf.char_parity != "even":
        raise CharacteristicError("the quintic invariant is the even-characteristic one")
    A, B, C, D, E, K = (nf.A, nf.B, nf.C, nf.D, nf.E, nf.K)
    return A * E * E + B * D * E + C * D * D + B * B * K


def invariant(nf):
    return det_MF(nf) if nf.char_parity == "odd" else quintic_invariant(nf)


def conic_coefficients(g):
    """(a, b, c, d, e, k) of a x0^2 + b x0x1 + c x1^2 + d x0x2 + e x1x2 + k x2^2."""
    t = g.terms
    return (t.get((2, 0, 0), 0), t.get((1, 1, 0), 0), t.get((0, 2, 0), 0),
            t.get((1, 0, 1), 0), t.get((0, 1, 1), 0), t.get((0, 0, 2), 0))


def conic_is_line_union(g):
    """Whether the plane conic V(g) is a union of lines over the algebraic closure."""
    if g.degree != 2 or g.nvars != 3:
        raise ValueError("expected a ternary quadratic form")
    g.require_nonzero()
    ctx = g.ctx
    a, b, c, d, e, k = conic_coefficients(g)
    mul, add, sub = ctx.mul, ctx.add, ctx.sub
    if ctx.p == 2:
        if b == d == e == 0:
            return True
        val = add(add(mul(a, mul(e, e)), mul(b, mul(d, e))), add(mul(c, mul(d, d)), mul(k, mul(b, b))))
        return val == 0
    h = ctx.inv(ctx.from_int(2))
    b, d, e = mul(b, h), mul(d, h), mul(e, h)
    # det [[a,b,d],[b,c,e],[d,e,k]]
    det = sub(add(mul(a, mul(c, k)), mul(ctx.from_int(2), mul(b, mul(d, e)))),
              add(add(mul(a, mul(e, e)), mul(c, mul(d, d))), mul(k, mul(b, b))))
    return det == 0


def _line_form_in_plane(space, plane, L):
    """The ternary linear form cutting L out of the plane, in plane_basis coordinates.

    A point x of the plane has plane coordinates x with the pivot entry dropped.
    """
    ctx = space.ctx
    k = next(i for i, x in enumerate(plane.dual) if x)
    y1, y2 = ([r[j] for j in range(4) if j != k] for r in L.basis)
    cross = [ctx.sub(ctx.mul(y1[1], y2[2]), ctx.mul(y1[2], y2[1])),
             ctx.sub(ctx.mul(y1[2], y2[0]), ctx.mul(y1[0], y2[2])),
             ctx.sub(ctx.mul(y1[0], y2[1]), ctx.mul(y1[1], y2[0]))]
    return TernaryForm.linear(ctx, cross)


def residual_conic(F, plane, L, space):
    """F restricted to the plane with the line L divided out, or None if the
    plane lies in V(F)."""
    g = restrict_to_plane(F, plane, space)
    if g.is_zero():
        return None
    return g.exact_div(_line_form_in_plane(space, plane, L))


def t_ell(F, L, space, nf=None, check=True):
    """Planes through L whose section with V(F) is a union of lines."""
    nf = nf or normal_form(F, L, space)
    inv = invariant(nf)
    members, classes = [], []
    for plane in space.book_of_planes(L):
        g = residual_conic(F, plane, L, space)
        if g is None:
            kind = "plane"
        elif conic_is_line_union(g):
            kind = "lines"
        else:
            kind = "conic"
        classes.append((plane, kind))
        if kind != "conic":
            members.append(plane)
    rep = TEllReport(L, members, not inv.is_zero(), inv, classes)
    if check and rep.invariant_nonzero:
        roots = invariant_roots(nf, inv, space, [pl for pl, _ in classes])
        if roots != set(members):
            raise AssertionError("T_l disagrees with the roots of the invariant")
    return rep


def invariant_roots(nf, inv, space, book):
    """Book planes at whose (x2:x3) parameter the invariant vanishes.

    A plane u through L pulls back to (M^T u) = (0, 0, a, b), i.e. the plane
    a x2 + b x3 = 0, whose points have (x2, x3) proportional to (b, -a).
    """
    ctx = space.ctx
    m = nf.transform.matrix
    out = set()
    for plane in book:
        mt = [ctx.sum(ctx.mul(m[i][j], plane.dual[i]) for i in range(4)) for j in range(4)]
        assert mt[0] == 0 and mt[1] == 0
        if inv.evaluate((mt[3], ctx.neg(mt[2]))) == 0:
            out.add(plane)
    return out


# ---------------------------------------------------------------------------
# univariate helpers for binary forms


def _dehom(f):
    """Coefficient list (low degree first) of f(x, 1) for a binary form f(x, y)."""
    coeffs = [0] * (f.degree + 1)
    for (a, _), v in f.terms.items():
        coeffs[a] = v
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_mod(ctx, a, b):
    a = list(a)
    inv = ctx.inv(b[-1])
    while len(a) >= len(b):
        c = ctx.mul(a[-1], inv)
        shift = len(a) - len(b)
        for i, v in enumerate(b):
            a[shift + i] = ctx.sub(a[shift + i], ctx.mul(c, v))
        while a and a[-1] == 0:
            a.pop()
    return a


def _poly_gcd(ctx, a, b):
    while b:
        a, b = b, _poly_mod(ctx, a, b)
    return a


def is_squarefree(f):
    """Whether the binary form has no repeated linear factor over the closure.

    Uses gcd(f, f') on the affine part and the order of vanishing at (1:0).
    Over a perfect field this is equivalent to scanning root multiplicities.
    """
    if f.is_zero():
        return False
    ctx = f.ctx
    coeffs = _dehom(f)
    if f.degree - (len(coeffs) - 1) >= 2:
        return False
    if len(coeffs) <= 1:
        return True
    deriv = [ctx.mul(ctx.from_int(i), c) for i, c in enumerate(coeffs)][1:]
    while deriv and deriv[-1] == 0:
        deriv.pop()
    if not deriv:
        return False
    return len(_poly_gcd(ctx, coeffs, deriv)) == 1


def divides_check(nf):
    """For det M_F = 0 with K = 0: whether AC - B^2 divides AE - BD and CD - BE."""
    A, B, C, D, E = nf.A, nf.B, nf.C, nf.D, nf.E
    den = A * C - B * B
    r1 = (A * E - B * D).divmod(den)[1]
    r2 = (C * D - B * E).divmod(den)[1]
    return r1.is_zero() and r2.is_zero()


# ---------------------------------------------------------------------------
# dichotomy


class Dichotomy(enum.Enum):
    REDUCIBLE = "Reducible"
    DOUBLE_LINE = "DoubleLine"
    INVARIANT_NONZERO = "InvariantNonzero"


@dataclass
class DichotomyResult:
    outcome: Dichotomy
    invariant: BinaryForm
    linear_factors: list = field(default_factory=list)
    double_lines: list = field(default_factory=list)


def dichotomy_check(F, L1, L2, space, evaluator=None):
    """Normal position with L2 = V(x2, x3) and L1 = V(x0, x1); if the invariant
    vanishes, F must be reducible or contain a double line."""
    if not space.are_skew(L1, L2):
        raise GeometryError("lines are not skew")
    if not line_on_form(F, L1):
        raise GeometryError("first line is not contained in V(F)")
    nf = normal_form(F, L2, space, L2=L1)
    if not nf.K.is_zero():
        raise AssertionError("K must vanish when both lines lie on V(F)")
    inv = invariant(nf)
    if not inv.is_zero():
        return DichotomyResult(Dichotomy.INVARIANT_NONZERO, inv)
    factors = linear_factors(F, space)
    if factors:
        return DichotomyResult(Dichotomy.REDUCIBLE, inv, linear_factors=factors)
    doubles = find_double_lines(F, space, evaluator)
    if doubles:
        return DichotomyResult(Dichotomy.DOUBLE_LINE, inv, double_lines=doubles)
    raise DichotomyError(f"invariant vanishes but {F} is irreducible with no double line")


# ---------------------------------------------------------------------------
# samplers


def _rand_binary(ctx, rng, degree, density=1.0):
    terms = {}
    for a in range(degree + 1):
        if density >= 1.0 or rng.random() < density:
            terms[(degree - a, a)] = int(rng.integers(0, ctx.s))
    return BinaryForm(ctx, degree, terms)


def cubic_from_nf(nf):
    """Alias of :meth:`CubicNF.reconstruct` for forms built directly from parts."""
    return nf.reconstruct()


def random_nf(ctx, rng, skew=False, density=1.0):
    parts = {k: _rand_binary(ctx, rng, _DEGREES[k], density) for k in "ABCDEK"}
    if skew:
        parts["K"] = _bzero(ctx, 3)
    return CubicNF(char_parity=parity(ctx), **parts)


def random_cubic_through_axis(ctx, rng):
    """Random cubic containing V(x2, x3) (every (x2, x3)-free term dropped)."""
    while True:
        F = random_nf(ctx, rng).reconstruct()
        if not F.is_zero():
            return F


def invariant_zero_nf(ctx, rng, family=None):
    """A skew-pair normal form (K = 0) whose invariant vanishes.

    Families: ``"de"`` D = E = 0; ``"abc"`` A = B = C = 0; ``"pencil"``
    E = lam D with C chosen to kill the invariant; ``"sparse"`` rejection
    sampling over random zero patterns.
    """
    families = ("de", "abc", "pencil", "sparse")
    family = family or families[int(rng.integers(0, len(families)))]
    odd = parity(ctx) == "odd"
    for _ in range(10000):
        nf = random_nf(ctx, rng, skew=True)
        if family == "de":
            nf.D, nf.E = _bzero(ctx, 2), _bzero(ctx, 2)
        elif family == "abc":
            nf.A, nf.B, nf.C = (_bzero(ctx, 1) for _ in range(3))
        elif family == "pencil":
            lam = int(rng.integers(0, ctx.s))
            nf.E = nf.D.scale(lam)
            # odd: C = 2 lam B - lam^2 A ; even: C = lam^2 A + lam B
            lam2 = ctx.mul(lam, lam)
            if odd:
                nf.C = nf.B.scale(ctx.mul(ctx.from_int(2), lam)) - nf.A.scale(lam2)
            else:
                nf.C = nf.A.scale(lam2) + nf.B.scale(lam)
            if nf.C.is_zero():
                nf.C = _bzero(ctx, 1)
        else:
            nf = random_nf(ctx, rng, skew=True, density=0.3)
        if invariant(nf).is_zero() and not nf.reconstruct().is_zero():
            return nf, family
    raise RuntimeError(f"could not sample an invariant-zero form in family {family}")


AXIS = ProjLine(((1, 0, 0, 0), (0, 1, 0, 0)))          # V(x2, x3)
OPPOSITE = ProjLine(((0, 0, 1, 0), (0, 0, 0, 1)))      # V(x0, x1)


def move(F, lines, space, rng):
    """Apply a random projectivity: returns F o M^-1 and the images M(L)."""
    M = space.random_projectivity(rng)
    G = F.pullback(space.inverse(M))
    return G, [space.apply_line(M, L) for L in lines]
