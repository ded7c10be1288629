"""Hermitian surfaces V(x^T A x^(q)) in PG(3, q^2): point sets, line and
plane classification, polarity and books of planes.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg
from .forms import PointSetEvaluator
from .projspace import GeometryError, ProjectiveSpace, ProjPlane, ProjPoint


class HermitianError(ValueError):
    pass


class DegenerateSurfaceError(HermitianError):
    """A classification was requested on a surface of rank < 4."""


class LineClass(enum.Enum):
    TANGENT = "tangent"
    SECANT = "secant"
    GENERATOR = "generator"


@dataclass(frozen=True)
class PlaneClass:
    tangent: bool
    point: ProjPoint | None = None
    count: int | None = None

    @property
    def name(self):
        return "tangent" if self.tangent else "non-tangent"


class HermitianMatrix:
    """4x4 matrix with A^T = A^(q), A != 0."""

    def __init__(self, ctx, entries):
        rows = [[int(x) for x in r] for r in entries]
        if len(rows) != 4 or any(len(r) != 4 for r in rows):
            raise HermitianError("a Hermitian matrix is 4x4")
        for i in range(4):
            for j in range(i, 4):
                if rows[j][i] != ctx.conj(rows[i][j]):
                    raise HermitianError(
                        f"entries ({i},{j}) and ({j},{i}) are not conjugate: "
                        f"{ctx.format(rows[i][j])} vs {ctx.format(rows[j][i])}")
        if not any(any(r) for r in rows):
            raise HermitianError("the zero matrix defines no surface")
        self.ctx = ctx
        self.entries = tuple(tuple(r) for r in rows)

    def __eq__(self, other):
        return isinstance(other, HermitianMatrix) and self.ctx == other.ctx and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def rows(self):
        return [list(r) for r in self.entries]

    def rank(self):
        return linalg.rank(self.ctx, self.rows())

    def transform(self, M):
        """M^T A M^(q): the matrix of the surface pulled back along x -> M x."""
        ctx = self.ctx
        m = [list(r) for r in getattr(M, "matrix", M)]
        mq = [[ctx.conj(x) for x in r] for r in m]
        out = linalg.matmul(ctx, linalg.matmul(ctx, linalg.transpose(m), self.rows()), mq)
        return HermitianMatrix(ctx, out)


class HermitianSurface:
    """The surface of a Hermitian matrix, with its point set cached eagerly."""

    def __init__(self, matrix, space=None):
        if not isinstance(matrix, HermitianMatrix):
            raise TypeError("expected a HermitianMatrix")
        self.matrix = matrix
        self.ctx = ctx = matrix.ctx
        self.q = ctx.q
        self.space = space or ProjectiveSpace(ctx)
        self.rank = matrix.rank()
        allpts = self.space.points_array
        vals = self.values_array(allpts)
        self.mask = vals == 0
        self.point_indices = np.flatnonzero(self.mask)
        self.points_array = allpts[self.point_indices]
        self.evaluator = PointSetEvaluator(ctx, self.points_array)

    def __reduce__(self):
        return (HermitianSurface, (self.matrix,))

    @property
    def nondegenerate(self):
        return self.rank == 4

    def _require_nondegenerate(self):
        if self.rank != 4:
            raise DegenerateSurfaceError(f"surface has rank {self.rank}; rank 4 is required")

    @cached_property
    def points(self):
        return [ProjPoint(tuple(int(x) for x in row)) for row in self.points_array]

    def __len__(self):
        return len(self.point_indices)

    # -- membership -------------------------------------------------------

    def value(self, coords):
        ctx = self.ctx
        coords = getattr(coords, "coords", coords)
        cq = [ctx.conj(x) for x in coords]
        acc = 0
        for i, row in enumerate(self.matrix.entries):
            if coords[i] == 0:
                continue
            inner = ctx.sum(ctx.mul(a, b) for a, b in zip(row, cq))
            acc = ctx.add(acc, ctx.mul(coords[i], inner))
        return acc

    def values_array(self, pts):
        ctx = self.ctx
        pts = np.asarray(pts, dtype=np.int64)
        cq = ctx.vconj(pts)
        acc = np.zeros(pts.shape[:-1], dtype=np.int64)
        for i in range(4):
            for j in range(4):
                a = self.matrix.entries[i][j]
                if a:
                    acc = ctx.vadd(acc, ctx.vmul(ctx.vmul(pts[..., i], a), cq[..., j]))
        return acc

    def contains(self, P):
        return self.value(P) == 0

    def count_on(self, pts):
        """Number of rows of an (..., 4) point array lying on the surface."""
        return int(np.count_nonzero(self.values_array(pts) == 0))

    # -- lines and planes -----------------------------------------------

    def line_count(self, L):
        pts = self.space.line_points_array(np.array([L.basis]))[0]
        return self.count_on(pts)

    def classify_line(self, L):
        self._require_nondegenerate()
        q = self.q
        n = self.line_count(L)
        table = {1: LineClass.TANGENT, q + 1: LineClass.SECANT, q * q + 1: LineClass.GENERATOR}
        if n not in table:
            raise AssertionError(f"line meets the surface in {n} points")
        return table[n]

    def polar_plane(self, P):
        """The plane with dual vector A P^(q); the tangent plane when P is on V2."""
        self._require_nondegenerate()
        ctx = self.ctx
        pq = [ctx.conj(x) for x in P.coords]
        return self.space.plane(linalg.matvec(ctx, self.matrix.rows(), pq))

    @cached_property
    def _inverse(self):
        return linalg.inverse(self.ctx, self.matrix.rows())

    def pole(self, plane):
        """The point whose polar plane is the given plane: (A^-1 u)^(q)."""
        self._require_nondegenerate()
        ctx = self.ctx
        v = linalg.matvec(ctx, self._inverse, list(plane.dual))
        return self.space.point([ctx.conj(x) for x in v])

    def plane_count(self, plane):
        duals = np.array([plane.dual], dtype=np.int64)
        return int(np.count_nonzero(self.space.dot_array(duals, self.points_array)[0] == 0))

    def classify_plane(self, plane, check=False):
        """Pole test; with ``check`` the section size is counted and compared."""
        self._require_nondegenerate()
        P = self.pole(plane)
        tangent = self.contains(P)
        count = None
        if check:
            q = self.q
            count = self.plane_count(plane)
            expected = q ** 3 + q ** 2 + 1 if tangent else q ** 3 + 1
            if count != expected:
                raise AssertionError(f"pole test says {'tangent' if tangent else 'non-tangent'} "
                                     f"but the section has {count} points")
        return PlaneClass(tangent, P if tangent else None, count)

    def book_profile(self, L, axis_class=None):
        """(#tangent, #non-tangent) planes in the book of L, checked against the axis type."""
        self._require_nondegenerate()
        q = self.q
        axis_class = axis_class or self.classify_line(L)
        book = self.space.book_of_planes(L)
        tan = sum(self.classify_plane(pl).tangent for pl in book)
        prof = (tan, len(book) - tan)
        expected = {LineClass.GENERATOR: (q * q + 1, 0), LineClass.TANGENT: (1, q * q),
                    LineClass.SECANT: (q + 1, q * q - q)}[axis_class]
        if prof != expected:
            raise AssertionError(f"{axis_class.value} axis has book profile {prof}, expected {expected}")
        return prof

    def tangent_point_line_tally(self, P):
        """(generators, tangents, secants) among the lines through a surface point."""
        self._require_nondegenerate()
        if not self.contains(P):
            raise GeometryError("point is not on the surface")
        q = self.q
        polar = self.polar_plane(P)
        gens = tans = secs = 0
        for L in self.space.lines_through_point(P):
            c = self.classify_line(L)
            inside = self.space.line_in_plane(L, polar)
            if c is LineClass.GENERATOR:
                gens += 1
            elif c is LineClass.TANGENT:
                tans += 1
            else:
                secs += 1
            if not inside and c is not LineClass.SECANT:
                raise AssertionError("a line through P outside the tangent plane is not secant")
            if inside and c is LineClass.SECANT:
                raise AssertionError("a secant through P lies in the tangent plane")
        if (gens, tans) != (q + 1, q * q - q):
            raise AssertionError(f"tally {(gens, tans)} != {(q + 1, q * q - q)}")
        return gens, tans, secs

    @cached_property
    def generators(self):
        """All lines on the surface, sorted by their RREF basis.

        Every generator meets the plane V(x0) (lines lie in V(x0) or cross it),
        so it suffices to collect surface lines through surface points of V(x0)
        inside the tangent plane there.
        """
        self._require_nondegenerate()
        space = self.space
        found = set()
        for P in self.points:
            if P.coords[0] != 0:
                continue
            polar = self.polar_plane(P)
            for L in space.lines_through_point_in_plane(P, polar):
                if L not in found and self.line_count(L) == self.q ** 2 + 1:
                    found.add(L)
        gens = sorted(found, key=lambda L: L.basis)
        expected = (self.q ** 3 + 1) * (self.q + 1)
        if len(gens) != expected:
            raise AssertionError(f"found {len(gens)} generators, expected {expected}")
        return gens

    def transform(self, M):
        """The surface pulled back along x -> M x (matrix M^T A M^(q))."""
        return HermitianSurface(self.matrix.transform(M), self.space)

    def intersection_count(self, F):
        F.require_nonzero()
        return self.evaluator.count_zeros(F)

    def zero_mask(self, F):
        return self.evaluator.zero_mask(F)


def canonical_surface(ctx, rank=4, space=None):
    """x0^(q+1) + ... + x_{r-1}^(q+1) = 0."""
    if not 1 <= rank <= 4:
        raise ValueError("rank must be between 1 and 4")
    entries = [[int(i == j and i < rank) for j in range(4)] for i in range(4)]
    return HermitianSurface(HermitianMatrix(ctx, entries), space)


def intersection_count(F, S):
    return S.intersection_count(F)
