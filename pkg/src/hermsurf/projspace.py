"""Points, lines and planes of PG(3, s), s = q^2.

Objects are stored canonically so they hash and compare by value:
points and plane duals have first nonzero coordinate 1, lines carry the
reduced row-echelon form of a 2x4 basis.

Enumeration order is by pivot position (first nonzero coordinate, or the
pivot pair for lines) and then lexicographic in the remaining free
coordinates; ``[1:0:0:0]`` and ``V(x0)`` come first.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product

import numpy as np

from . import linalg


@dataclass(frozen=True)
class ProjPoint:
    coords: tuple


@dataclass(frozen=True)
class ProjPlane:
    dual: tuple


@dataclass(frozen=True)
class ProjLine:
    basis: tuple


@dataclass(frozen=True)
class Projectivity:
    """Invertible 4x4 matrix acting on column vectors: P -> M P."""

    matrix: tuple


class GeometryError(ValueError):
    """Raised when an incidence precondition fails (equal points, P on L, ...)."""


class ProjectiveSpace:
    """PG(3, s) over a FieldCtx, with canonical constructors and enumeration."""

    def __init__(self, ctx):
        self.ctx = ctx
        self.s = ctx.s
        s = self.s
        self.num_points = s ** 3 + s ** 2 + s + 1
        self.num_planes = self.num_points
        self.num_lines = (s * s + 1) * (s * s + s + 1)
        self._offsets = [0, s ** 3, s ** 3 + s ** 2, s ** 3 + s ** 2 + s]

    def __reduce__(self):
        return (ProjectiveSpace, (self.ctx,))

    # -- canonical constructors -------------------------------------------

    def _normalize(self, v):
        v = [int(x) for x in v]
        if len(v) != 4:
            raise ValueError("expected 4 coordinates")
        for x in v:
            if not 0 <= x < self.s:
                raise ValueError(f"coordinate {x} is not an element code of GF({self.s})")
        lead = next((x for x in v if x), None)
        if lead is None:
            raise GeometryError("the zero vector is not a projective point")
        inv = self.ctx.inv(lead)
        return tuple(self.ctx.mul(inv, x) for x in v)

    def point(self, coords):
        return ProjPoint(self._normalize(coords))

    def plane(self, dual):
        return ProjPlane(self._normalize(dual))

    def line(self, rows):
        rows = [[int(x) for x in r] for r in rows]
        red, pivots = linalg.rref(self.ctx, rows)
        if len(pivots) != 2:
            raise GeometryError("line basis must have rank 2")
        return ProjLine((tuple(red[0]), tuple(red[1])))

    def line_of_planes(self, *duals):
        """The line V(h1, h2) cut out by two independent linear forms."""
        duals = [d.dual if isinstance(d, ProjPlane) else d for d in duals]
        basis = linalg.nullspace(self.ctx, [list(d) for d in duals], 4)
        if len(basis) != 2:
            raise GeometryError("linear forms do not cut out a line")
        return self.line(basis)

    def projectivity(self, matrix):
        m = tuple(tuple(int(x) for x in row) for row in matrix)
        if linalg.det(self.ctx, [list(r) for r in m]) == 0:
            raise GeometryError("projectivity matrix is singular")
        return Projectivity(m)

    # -- indexing / enumeration ---------------------------------------------

    def index(self, coords):
        """Position of a canonical point (or plane dual) in enumeration order."""
        if isinstance(coords, ProjPoint):
            coords = coords.coords
        elif isinstance(coords, ProjPlane):
            coords = coords.dual
        k = next(i for i, x in enumerate(coords) if x)
        idx = 0
        for x in coords[k + 1:]:
            idx = idx * self.s + x
        return self._offsets[k] + idx

    def coords_at(self, idx):
        for k in (3, 2, 1, 0):
            if idx >= self._offsets[k]:
                rest = idx - self._offsets[k]
                break
        free = []
        for _ in range(3 - k):
            free.append(rest % self.s)
            rest //= self.s
        return tuple([0] * k + [1] + free[::-1])

    def _iter_canonical(self):
        for k in range(4):
            for free in product(range(self.s), repeat=3 - k):
                yield tuple([0] * k + [1] + list(free))

    def enumerate_points(self):
        return (ProjPoint(c) for c in self._iter_canonical())

    def enumerate_planes(self):
        return (ProjPlane(c) for c in self._iter_canonical())

    def enumerate_lines(self):
        s = self.s
        for i, j in combinations(range(4), 2):
            free0 = [c for c in range(i + 1, 4) if c != j]
            free1 = list(range(j + 1, 4))
            for vals in product(range(s), repeat=len(free0) + len(free1)):
                r0 = [0] * 4
                r1 = [0] * 4
                r0[i] = 1
                r1[j] = 1
                it = iter(vals)
                for c in free0:
                    r0[c] = next(it)
                for c in free1:
                    r1[c] = next(it)
                yield ProjLine((tuple(r0), tuple(r1)))

    @cached_property
    def points_array(self):
        """All points as an (N, 4) int64 array, in enumeration order."""
        return np.array(list(self._iter_canonical()), dtype=np.int64)

    def lines_array(self):
        """All line bases as an (L, 2, 4) array, in enumeration order."""
        return np.array([ln.basis for ln in self.enumerate_lines()], dtype=np.int64)

    # -- vectorized helpers ---------------------------------------------

    def canonicalize_array(self, arr):
        """Scale each row of an (..., 4) array so its first nonzero entry is 1."""
        arr = np.asarray(arr, dtype=np.int64)
        nz = arr != 0
        first = np.argmax(nz, axis=-1)
        lead = np.take_along_axis(arr, first[..., None], axis=-1)
        return self.ctx.vmul(arr, self.ctx.vinv(lead))

    def index_array(self, arr):
        """Enumeration indices of canonical rows of an (..., 4) array."""
        arr = np.asarray(arr, dtype=np.int64)
        s = self.s
        first = np.argmax(arr != 0, axis=-1)
        offsets = np.array(self._offsets, dtype=np.int64)[first]
        # big-endian value of the coordinates after the pivot
        idx = np.zeros(arr.shape[:-1], dtype=np.int64)
        for c in range(4):
            after = first < c
            idx = np.where(after, idx * s + arr[..., c], idx)
        return offsets + idx

    def line_points_array(self, bases):
        """Canonical points of each line: (L, 2, 4) -> (L, s+1, 4).

        For an RREF basis (r0, r1) the points r0 + lam*r1 and r1 are already
        canonical because the pivot of r0 precedes that of r1.
        """
        bases = np.asarray(bases, dtype=np.int64)
        lam = np.arange(self.s, dtype=np.int64)
        r0 = bases[:, None, 0, :]
        r1 = bases[:, None, 1, :]
        pts = self.ctx.vadd(r0, self.ctx.vmul(lam[None, :, None], r1))
        return np.concatenate([pts, r1], axis=1)

    def dot_array(self, duals, pts):
        """Pairwise values u . x for duals (A, 4) and points (B, 4) -> (A, B)."""
        ctx = self.ctx
        acc = np.zeros((len(duals), len(pts)), dtype=np.int64)
        for i in range(4):
            acc = ctx.vadd(acc, ctx.vmul(duals[:, i][:, None], pts[:, i][None, :]))
        return acc

    # -- incidence ----------------------------------------------------------

    def dot(self, u, x):
        ctx = self.ctx
        return ctx.sum(ctx.mul(a, b) for a, b in zip(u, x))

    def on_plane(self, P, plane):
        return self.dot(plane.dual, P.coords) == 0

    def on_line(self, P, L):
        return linalg.rank(self.ctx, [list(L.basis[0]), list(L.basis[1]), list(P.coords)]) == 2

    def line_in_plane(self, L, plane):
        return all(self.dot(plane.dual, r) == 0 for r in L.basis)

    def line_points(self, L):
        ctx = self.ctx
        r0, r1 = L.basis
        pts = [tuple(ctx.add(a, ctx.mul(lam, b)) for a, b in zip(r0, r1)) for lam in range(self.s)]
        return [ProjPoint(p) for p in pts] + [ProjPoint(tuple(r1))]

    def plane_basis(self, plane):
        """Three points spanning the plane: e_j - u_j e_k for j != pivot k."""
        u = plane.dual
        k = next(i for i, x in enumerate(u) if x)
        basis = []
        for j in range(4):
            if j == k:
                continue
            v = [0] * 4
            v[j] = 1
            v[k] = self.ctx.neg(u[j])
            basis.append(tuple(v))
        return basis

    def plane_points(self, plane):
        ctx = self.ctx
        b = self.plane_basis(plane)
        out = []
        for y in self._iter_plane_coords():
            v = [ctx.sum(ctx.mul(y[i], b[i][c]) for i in range(3)) for c in range(4)]
            out.append(self.point(v))
        return out

    def _iter_plane_coords(self):
        for k in range(3):
            for free in product(range(self.s), repeat=2 - k):
                yield tuple([0] * k + [1] + list(free))

    def are_skew(self, L1, L2):
        return linalg.rank(self.ctx, [list(r) for r in L1.basis + L2.basis]) == 4

    def meet_line_plane(self, L, plane):
        """The point where L meets the plane; error if L lies in it."""
        a = self.dot(plane.dual, L.basis[0])
        b = self.dot(plane.dual, L.basis[1])
        if a == 0 and b == 0:
            raise GeometryError("line lies in the plane")
        ctx = self.ctx
        # b*r0 - a*r1 is on the plane
        v = [ctx.sub(ctx.mul(b, x), ctx.mul(a, y)) for x, y in zip(*L.basis)]
        return self.point(v)

    def line_through(self, P, Q):
        if P == Q:
            raise GeometryError("points coincide")
        return self.line([P.coords, Q.coords])

    def plane_through(self, L, P):
        if self.on_line(P, L):
            raise GeometryError("point lies on the line")
        basis = linalg.nullspace(self.ctx, [list(L.basis[0]), list(L.basis[1]), list(P.coords)], 4)
        return self.plane(basis[0])

    def plane_of_lines(self, L1, L2):
        """The plane spanned by two distinct coplanar lines."""
        rows = [list(r) for r in L1.basis + L2.basis]
        basis = linalg.nullspace(self.ctx, rows, 4)
        if len(basis) != 1:
            raise GeometryError("lines are not coplanar and distinct")
        return self.plane(basis[0])

    def meet_planes(self, p1, p2):
        if p1 == p2:
            raise GeometryError("planes coincide")
        return self.line_of_planes(p1, p2)

    def book_of_planes(self, L):
        """The s + 1 planes containing L, in enumeration order."""
        ctx = self.ctx
        n1, n2 = linalg.nullspace(ctx, [list(r) for r in L.basis], 4)
        planes = {self.plane(n2)}
        for lam in range(self.s):
            planes.add(self.plane([ctx.add(a, ctx.mul(lam, b)) for a, b in zip(n1, n2)]))
        return sorted(planes, key=self.index)

    def lines_through_point_in_plane(self, P, plane):
        if not self.on_plane(P, plane):
            raise GeometryError("point not on plane")
        ctx = self.ctx
        u, v = self._plane_complement(P, plane, self.plane_basis(plane))
        lines = [self.line([P.coords, u])]
        for lam in range(self.s):
            lines.append(self.line([P.coords, [ctx.add(a, ctx.mul(lam, b)) for a, b in zip(v, u)]]))
        return lines

    def _plane_complement(self, P, plane, basis):
        # two plane points independent of P
        chosen = [list(P.coords)]
        for b in basis:
            if linalg.rank(self.ctx, chosen + [list(b)]) > len(chosen):
                chosen.append(list(b))
            if len(chosen) == 3:
                break
        return chosen[1], chosen[2]

    def lines_through_point(self, P):
        """All s^2 + s + 1 lines through P."""
        ctx = self.ctx
        comp = linalg.complete_basis(ctx, [list(P.coords)], 4)[1:]
        lines = []
        for y in self._iter_plane_coords():
            d = [ctx.sum(ctx.mul(y[i], comp[i][c]) for i in range(3)) for c in range(4)]
            lines.append(self.line([P.coords, d]))
        return lines

    # -- projectivities -------------------------------------------------------

    def apply(self, M, P):
        """Image M P of a point."""
        m = M.matrix if isinstance(M, Projectivity) else M
        return self.point(linalg.matvec(self.ctx, [list(r) for r in m], list(P.coords)))

    def apply_line(self, M, L):
        m = [list(r) for r in (M.matrix if isinstance(M, Projectivity) else M)]
        return self.line([linalg.matvec(self.ctx, m, list(r)) for r in L.basis])

    def apply_plane(self, M, plane):
        """Image of a plane under P -> M P (dual transforms by M^-T)."""
        minv = linalg.inverse(self.ctx, [list(r) for r in M.matrix])
        return self.plane(linalg.matvec(self.ctx, linalg.transpose(minv), list(plane.dual)))

    def inverse(self, M):
        return Projectivity(tuple(tuple(r) for r in linalg.inverse(self.ctx, [list(r) for r in M.matrix])))

    def compose(self, M, N):
        """The map P -> M (N P)."""
        return Projectivity(tuple(tuple(r) for r in linalg.matmul(
            self.ctx, [list(r) for r in M.matrix], [list(r) for r in N.matrix])))

    def identity(self):
        return Projectivity(tuple(tuple(int(i == j) for j in range(4)) for i in range(4)))

    def adapted_coords(self, L, L2=None):
        """A projectivity M with M V(x2,x3) = L and, if given, M V(x0,x1) = L2.

        Pulling a form back along M (``F(M x)``) moves L to V(x2, x3).
        """
        cols = [list(r) for r in L.basis]
        if L2 is not None:
            if not self.are_skew(L, L2):
                raise GeometryError("lines are not skew")
            cols += [list(r) for r in L2.basis]
        else:
            cols = linalg.complete_basis(self.ctx, cols, 4)
        return self.projectivity(linalg.transpose(cols))

    def random_projectivity(self, rng):
        while True:
            m = rng.integers(0, self.s, size=(4, 4)).tolist()
            if linalg.det(self.ctx, m):
                return Projectivity(tuple(tuple(r) for r in m))
