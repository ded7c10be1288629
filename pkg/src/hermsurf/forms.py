"""Homogeneous forms over GF(q^2): evaluation, substitution, division, and
the incidence tests built on them (linear factors, lines on a surface,
line multiplicity, double lines).
"""
from __future__ import annotations

from itertools import combinations_with_replacement, product

import numpy as np

from .projspace import GeometryError, ProjLine, ProjPlane, Projectivity


class ZeroFormError(ValueError):
    """Raised where a nonzero form is required."""


def monomials(nvars, degree):
    """Exponent tuples of the given degree, in descending lexicographic order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


class Form:
    """A homogeneous polynomial with coefficients in a FieldCtx.

    ``terms`` maps exponent tuples to nonzero element codes. The zero form
    is representable (it keeps its nominal degree); operations that need a
    genuine surface call :meth:`require_nonzero`.
    """

    NVARS = None

    def __init__(self, ctx, degree, terms=None, nvars=None):
        nvars = nvars or self.NVARS
        if nvars is None:
            raise TypeError("number of variables is required")
        self.ctx = ctx
        self.degree = int(degree)
        self.nvars = nvars
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(x) for x in exps)
            if len(exps) != nvars or any(x < 0 for x in exps):
                raise ValueError(f"bad exponent tuple {exps}")
            if sum(exps) != self.degree:
                raise ValueError(f"exponents {exps} do not sum to degree {self.degree}")
            c = int(c)
            if not 0 <= c < ctx.s:
                raise ValueError(f"coefficient {c} outside GF({ctx.s})")
            if c:
                clean[exps] = c
        self.terms = clean

    @classmethod
    def _new(cls, ctx, degree, terms, nvars):
        klass = _CLASSES.get(nvars, Form)
        return klass(ctx, degree, terms, nvars=nvars)

    @classmethod
    def monomial(cls, ctx, exps, coeff=1):
        return cls._new(ctx, sum(exps), {tuple(exps): coeff}, len(exps))

    @classmethod
    def linear(cls, ctx, coeffs):
        n = len(coeffs)
        terms = {tuple(int(i == j) for j in range(n)): c for i, c in enumerate(coeffs)}
        return cls._new(ctx, 1, terms, n)

    @classmethod
    def zero(cls, ctx, degree, nvars=None):
        return cls._new(ctx, degree, {}, nvars or cls.NVARS)

    # -- basic protocol -------------------------------------------------

    def is_zero(self):
        return not self.terms

    def require_nonzero(self):
        if not self.terms:
            raise ZeroFormError("the zero form does not define a surface")
        return self

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return (self.ctx == other.ctx and self.nvars == other.nvars
                and self.terms == other.terms
                and (self.degree == other.degree or not self.terms))

    def __hash__(self):
        return hash((self.nvars, self.degree, frozenset(self.terms.items())))

    def __repr__(self):
        return f"{type(self).__name__}({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, reverse=True):
            c = self.terms[exps]
            mono = "*".join(f"x{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exps) if e)
            cs = self.ctx.format(c)
            if "+" in cs:
                cs = f"({cs})"
            if not mono:
                parts.append(cs)
            else:
                parts.append(mono if c == 1 else f"{cs}*{mono}")
        return " + ".join(parts)

    def _check(self, other):
        if other.ctx != self.ctx or other.nvars != self.nvars:
            raise ValueError("forms live in different rings")

    def __add__(self, other):
        self._check(other)
        if self.degree != other.degree and self.terms and other.terms:
            raise ValueError("cannot add forms of different degree")
        degree = self.degree if self.terms else other.degree
        ctx = self.ctx
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = ctx.add(terms.get(e, 0), c)
        return self._new(ctx, degree, terms, self.nvars)

    def __neg__(self):
        ctx = self.ctx
        return self._new(ctx, self.degree, {e: ctx.neg(c) for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        self._check(other)
        ctx = self.ctx
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = ctx.add(terms.get(e, 0), ctx.mul(c1, c2))
        return self._new(ctx, self.degree + other.degree, terms, self.nvars)

    def __pow__(self, k):
        out = self._new(self.ctx, 0, {(0,) * self.nvars: 1}, self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c):
        """Multiply by the field element with code c."""
        ctx = self.ctx
        return self._new(ctx, self.degree, {e: ctx.mul(c, v) for e, v in self.terms.items()}, self.nvars)

    def coeff(self, exps):
        return self.terms.get(tuple(exps), 0)

    def coefficient_vector(self):
        return [self.terms.get(m, 0) for m in monomials(self.nvars, self.degree)]

    # -- evaluation -------------------------------------------------------

    def evaluate(self, point):
        coords = getattr(point, "coords", point)
        ctx = self.ctx
        acc = 0
        for exps, c in self.terms.items():
            v = c
            for x, e in zip(coords, exps):
                if e:
                    v = ctx.mul(v, ctx.pow(x, e))
            acc = ctx.add(acc, v)
        return acc

    def evaluate_many(self, pts):
        """Values at the rows of an (N, nvars) array of element codes."""
        ctx = self.ctx
        pts = np.asarray(pts, dtype=np.int64)
        acc = np.zeros(pts.shape[:-1], dtype=np.int64)
        powers = {}
        for exps, c in self.terms.items():
            v = np.full(pts.shape[:-1], c, dtype=np.int64)
            for i, e in enumerate(exps):
                if e:
                    key = (i, e)
                    if key not in powers:
                        powers[key] = ctx.pow_array(e)[pts[..., i]]
                    v = ctx.vmul(v, powers[key])
            acc = ctx.vadd(acc, v)
        return acc

    # -- substitution -----------------------------------------------------

    def substitute(self, matrix):
        """Linear change of variables x_i = sum_j matrix[i][j] y_j.

        ``matrix`` has ``nvars`` rows; the number of columns is the number of
        variables of the result.
        """
        ctx = self.ctx
        rows = [list(r) for r in matrix]
        if len(rows) != self.nvars:
            raise ValueError("substitution needs one row per variable")
        m = len(rows[0])
        lin = []
        for r in rows:
            lin.append({tuple(int(i == j) for j in range(m)): c for i, c in enumerate(r) if c})
        one = {(0,) * m: 1}
        power_cache = {}

        def lin_pow(i, k):
            key = (i, k)
            if key not in power_cache:
                power_cache[key] = one if k == 0 else _mul_dicts(ctx, lin_pow(i, k - 1), lin[i])
            return power_cache[key]

        out = {}
        for exps, c in self.terms.items():
            prod_terms = {(0,) * m: c}
            for i, e in enumerate(exps):
                if e:
                    prod_terms = _mul_dicts(ctx, prod_terms, lin_pow(i, e))
            for e, v in prod_terms.items():
                out[e] = ctx.add(out.get(e, 0), v)
        return self._new(ctx, self.degree, out, m)

    def pullback(self, M):
        """The form x -> F(M x)."""
        matrix = M.matrix if isinstance(M, Projectivity) else M
        return self.substitute(matrix)

    def derivative(self, i):
        ctx = self.ctx
        terms = {}
        for exps, c in self.terms.items():
            e = exps[i]
            if e == 0:
                continue
            k = ctx.from_int(e)
            if k == 0:
                continue
            new = list(exps)
            new[i] -= 1
            terms[tuple(new)] = ctx.add(terms.get(tuple(new), 0), ctx.mul(c, k))
        return self._new(ctx, max(self.degree - 1, 0), terms, self.nvars)

    def divmod(self, g):
        """Division with remainder in lex order; the remainder is zero iff g | self."""
        self._check(g)
        g.require_nonzero()
        ctx = self.ctx
        lead = max(g.terms)
        inv_lead = ctx.inv(g.terms[lead])
        f = dict(self.terms)
        quot, rem = {}, {}
        while f:
            lt = max(f)
            if all(a >= b for a, b in zip(lt, lead)):
                c = ctx.mul(f[lt], inv_lead)
                shift = tuple(a - b for a, b in zip(lt, lead))
                quot[shift] = ctx.add(quot.get(shift, 0), c)
                for e, v in g.terms.items():
                    key = tuple(a + b for a, b in zip(e, shift))
                    nv = ctx.sub(f.get(key, 0), ctx.mul(c, v))
                    if nv:
                        f[key] = nv
                    else:
                        f.pop(key, None)
            else:
                rem[lt] = f.pop(lt)
        qdeg = self.degree - g.degree
        return (self._new(ctx, max(qdeg, 0), quot, self.nvars),
                self._new(ctx, self.degree, rem, self.nvars))

    def exact_div(self, g):
        q, r = self.divmod(g)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q


class HomogeneousForm(Form):
    NVARS = 4


class TernaryForm(Form):
    NVARS = 3


class BinaryForm(Form):
    NVARS = 2


_CLASSES = {4: HomogeneousForm, 3: TernaryForm, 2: BinaryForm}


def _mul_dicts(ctx, a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = ctx.add(out.get(e, 0), ctx.mul(c1, c2))
    return {e: c for e, c in out.items() if c}


def linear_form(ctx, dual):
    """The linear form with the given coefficients (a plane's equation)."""
    dual = getattr(dual, "dual", dual)
    return HomogeneousForm.linear(ctx, list(dual))


def product_of_planes(ctx, planes):
    out = None
    for pl in planes:
        h = linear_form(ctx, pl)
        out = h if out is None else out * h
    return out


def random_form(ctx, degree, seed, nvars=4):
    """Uniformly random nonzero form; deterministic in (seed, ctx, degree)."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    mons = monomials(nvars, degree)
    while True:
        coeffs = rng.integers(0, ctx.s, size=len(mons))
        if coeffs.any():
            return Form._new(ctx, degree, dict(zip(mons, coeffs.tolist())), nvars)


# ---------------------------------------------------------------------------
# fast evaluation on a fixed point set


class PointSetEvaluator:
    """Evaluates many forms on one fixed array of points.

    The monomial values are computed once per degree; evaluating a form is
    then one table lookup and one addition per monomial and point.
    """

    def __init__(self, ctx, pts):
        self.ctx = ctx
        self.pts = np.asarray(pts, dtype=np.int64)
        self._mono = {}

    def __len__(self):
        return len(self.pts)

    def monomial_matrix(self, degree, nvars=4):
        if degree not in self._mono:
            ctx = self.ctx
            mons = monomials(nvars, degree)
            pw = [[ctx.pow_array(e)[self.pts[:, i]] for e in range(degree + 1)] for i in range(nvars)]
            cols = []
            for exps in mons:
                v = np.ones(len(self.pts), dtype=np.int64)
                for i, e in enumerate(exps):
                    if e:
                        v = ctx.vmul(v, pw[i][e])
                cols.append(v)
            dtype = np.int16 if ctx.s < 2 ** 15 else np.int32
            self._mono[degree] = (mons, np.stack(cols).astype(dtype))
        return self._mono[degree]

    def values(self, F):
        ctx = self.ctx
        mons, mat = self.monomial_matrix(F.degree, F.nvars)
        acc = np.zeros(len(self.pts), dtype=np.int64)
        small = ctx.s <= 1024
        for k, exps in enumerate(mons):
            c = F.terms.get(exps)
            if not c:
                continue
            col = mat[k]
            term = ctx.mul_table[c][col] if small else ctx.vmul(np.full(col.shape, c), col)
            acc = ctx.vadd(acc, term)
        return acc

    def zero_mask(self, F):
        return self.values(F) == 0

    def count_zeros(self, F):
        return int(np.count_nonzero(self.values(F) == 0))


# ---------------------------------------------------------------------------
# geometric operations on forms


def restrict_to_plane(F, plane, space):
    """F on the plane, in the coordinates of ``space.plane_basis(plane)``.

    The result is the zero form exactly when the plane's linear form divides F.
    """
    basis = space.plane_basis(plane)
    cols = [[basis[j][i] for j in range(3)] for i in range(4)]
    return F.substitute(cols)


def restrict_to_line(F, L):
    """F on the line, parametrized by its two basis rows."""
    cols = [[L.basis[0][i], L.basis[1][i]] for i in range(4)]
    return F.substitute(cols)


def line_on_form(F, L):
    return restrict_to_line(F, L).is_zero()


def line_multiplicity(F, L, space):
    """Largest m with F in the m-th power of the ideal of L."""
    if not line_on_form(F, L):
        raise GeometryError("line is not contained in V(F)")
    G = F.pullback(space.adapted_coords(L))
    if G.is_zero():
        raise ZeroFormError("zero form")
    return min(e[2] + e[3] for e in G.terms)


def _lattice(d, ctx):
    """Principal lattice points (a, b) with a, b from d+1 distinct elements."""
    nodes = list(range(min(d + 1, ctx.s)))
    return [(nodes[i], nodes[j]) for i in range(len(nodes)) for j in range(len(nodes)) if i + j <= d]


def _plane_vanishing_filter(F, k, hs, space):
    """Which planes e_k + sum h_j e_j (rows of hs) have F vanishing on a
    unisolvent set of their points. Necessary for divisibility, and exact
    whenever d < s.
    """
    ctx = space.ctx
    n = len(hs)
    # plane basis vectors b_j = e_j - h_j e_k (j > k) and e_j (j < k)
    others = [j for j in range(4) if j != k]
    hmap = {j: hs[:, idx] for idx, j in enumerate(range(k + 1, 4))}
    bases = []
    for j in others:
        b = np.zeros((n, 4), dtype=np.int64)
        b[:, j] = 1
        if j > k:
            b[:, k] = ctx.vneg(hmap[j])
        bases.append(b)
    ok = np.ones(n, dtype=bool)
    for a, bcoef in _lattice(F.degree, ctx):
        pt = ctx.vadd(ctx.vadd(ctx.vmul(bases[0], a), ctx.vmul(bases[1], bcoef)), bases[2])
        ok &= F.evaluate_many(pt) == 0
        # points with last plane coordinate 0 (line at infinity of the chart)
        pt2 = ctx.vadd(ctx.vmul(bases[0], a), ctx.vmul(bases[1], 1 if bcoef == 0 else bcoef))
        ok &= F.evaluate_many(pt2) == 0
        if not ok.any():
            break
    return ok


def linear_factors(F, space, chunk=1 << 15):
    """All planes whose linear form divides F, with multiplicities.

    Candidates for the planes ``e_k + sum_{j>k} h_j e_j`` are narrowed by the
    univariate conditions F(e_j - h_j e_k) = 0, then filtered by vanishing
    on a unisolvent point set, and finally confirmed by exact restriction.
    """
    F.require_nonzero()
    ctx = space.ctx
    s = ctx.s
    elems = np.arange(s, dtype=np.int64)
    found = []
    for k in range(4):
        if any(F.evaluate(tuple(int(i == j) for i in range(4))) for j in range(k)):
            continue
        roots = []
        for j in range(k + 1, 4):
            pts = np.zeros((s, 4), dtype=np.int64)
            pts[:, j] = 1
            pts[:, k] = ctx.vneg(elems)
            roots.append(elems[F.evaluate_many(pts) == 0])
        if any(len(r) == 0 for r in roots):
            continue
        if roots:
            grids = np.meshgrid(*roots, indexing="ij")
            hs = np.stack([g.ravel() for g in grids], axis=1)
        else:
            hs = np.zeros((1, 0), dtype=np.int64)
        for start in range(0, len(hs), chunk):
            block = hs[start:start + chunk]
            keep = _plane_vanishing_filter(F, k, block, space) if block.shape[1] else np.ones(1, bool)
            for row in block[keep]:
                dual = [0] * 4
                dual[k] = 1
                for idx, j in enumerate(range(k + 1, 4)):
                    dual[j] = int(row[idx])
                plane = ProjPlane(tuple(dual))
                if restrict_to_plane(F, plane, space).is_zero():
                    found.append(plane)
    out = []
    for plane in found:
        h = linear_form(ctx, plane)
        mult, G = 0, F
        while G.degree >= 1:
            quo, rem = G.divmod(h)
            if not rem.is_zero():
                break
            mult += 1
            G = quo
        out.append((plane, mult))
    out.sort(key=lambda pm: space.index(pm[0]))
    return out


def singular_points(F, space, evaluator=None):
    """Indices (enumeration order) of the points where F and all its partials vanish."""
    ev = evaluator or PointSetEvaluator(space.ctx, space.points_array)
    zero = np.flatnonzero(ev.zero_mask(F))
    pts = ev.pts[zero]
    keep = np.ones(len(zero), dtype=bool)
    for i in range(4):
        d = F.derivative(i)
        if not d.is_zero():
            keep &= d.evaluate_many(pts) == 0
    return zero[keep]


def find_double_lines(F, space, evaluator=None):
    """Lines of multiplicity >= 2 on V(F), found among the singular points.

    A line is double iff F and every partial derivative vanish along it;
    candidate lines are spanned by pairs of singular points and confirmed
    with :func:`line_multiplicity`.
    """
    sing = singular_points(F, space, evaluator)
    s = space.s
    if len(sing) < s + 1:
        return []
    sing_set = set(sing.tolist())
    covered = set()
    lines = []
    coords = [space.coords_at(int(i)) for i in sing]
    for a in range(len(coords)):
        for b in range(a + 1, len(coords)):
            if (int(sing[a]), int(sing[b])) in covered:
                continue
            L = space.line([coords[a], coords[b]])
            idx = [space.index(P) for P in space.line_points(L)]
            if all(i in sing_set for i in idx):
                for i in idx:
                    for j in idx:
                        covered.add((i, j))
                if line_multiplicity(F, L, space) >= 2:
                    lines.append(L)
    return lines
