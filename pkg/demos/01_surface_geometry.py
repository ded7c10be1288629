"""
The Hermitian surface over a small field
========================================

Points, lines and planes of PG(3, q^2) against the surface
x0^(q+1) + x1^(q+1) + x2^(q+1) + x3^(q+1) = 0.
"""

# %%
# The field GF(q^2) is a table-driven context.  Elements are small integers
# whose base-p digits are the coefficients of a polynomial in t.
import numpy as np

from hermsurf import FieldCtx, canonical_surface

ctx = FieldCtx.from_q(3)
print(ctx)
t = ctx.parse("t")
print("t^4 =", ctx.format(ctx.pow(t, 4)), " conj(t) =", ctx.format(ctx.conj(t)),
      " norm(t) =", ctx.format(ctx.norm(t)))

# %%
# Build the surface and count its points.
S = canonical_surface(ctx)
q = S.q
print(len(S), "points;  (q^3+1)(q^2+1) =", (q ** 3 + 1) * (q ** 2 + 1))

# %%
# Every line meets the surface in 1, q+1 or q^2+1 points.
sp = S.space
bases = sp.lines_array()
pts = sp.line_points_array(bases)
counts = np.count_nonzero(S.values_array(pts) == 0, axis=1)
vals, freq = np.unique(counts, return_counts=True)
for v, f in zip(vals, freq):
    print(f"{f:6d} lines with {v} surface points")

# %%
# The generators (lines inside the surface) number (q^3+1)(q+1).
print(len(S.generators), "generators")

# %%
# Plane sections: tangent planes carry q^3+q^2+1 points, the rest q^3+1.
secs = {}
for plane in sp.enumerate_planes():
    key = (S.classify_plane(plane).tangent, S.plane_count(plane))
    secs[key] = secs.get(key, 0) + 1
print(secs)

# %%
# The book of planes through a line depends on how the line meets the surface.
from hermsurf import LineClass

P = S.points[0]
tangent = next(L for L in sp.lines_through_point_in_plane(P, S.polar_plane(P))
               if S.classify_line(L) is LineClass.TANGENT)
for L in (S.generators[0], sp.line([[1, 0, 0, 0], [0, 1, 0, 0]]), tangent):
    cls = S.classify_line(L)
    print(f"{cls.value:10s} axis -> (tangent, non-tangent) = {S.book_profile(L)}")

# %%
# Through a surface point: q+1 generators and q^2-q tangents in its tangent
# plane, everything else secant.
print(S.tangent_point_line_tally(S.points[0]))
