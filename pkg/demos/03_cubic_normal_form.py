"""
Cubics through a line
=====================

Write a cubic containing V(x2, x3) as
A x0^2 + 2B x0x1 + C x1^2 + 2D x0 + 2E x1 + K (odd q) and look at the planes
through the line where the section splits into lines.
"""

# %%
import numpy as np

from hermsurf import FieldCtx
from hermsurf import cubicnf as cn
from hermsurf.projspace import ProjectiveSpace

ctx = FieldCtx.from_q(3)
sp = ProjectiveSpace(ctx)
rng = np.random.default_rng(1)

# Binary forms print in their own variables x0, x1, which stand for x2, x3.
F = cn.random_cubic_through_axis(ctx, rng)
print("F =", F)
nf = cn.normal_form(F, cn.AXIS, sp)
for k, v in nf.parts().items():
    print(f"  {k} = {v}")
print("reconstructs:", nf.reconstruct() == F.pullback(nf.transform))

# %%
# det M_F is a binary quintic; its roots pick out the degenerate sections.
det = cn.det_MF(nf)
print("det M_F =", det)
rep = cn.t_ell(F, cn.AXIS, sp, nf)
print("|T_l| =", len(rep.members))
for plane, kind in rep.classification:
    print("  ", plane.dual, kind)

# %%
# The sizes of T_l over many samples never pass 5 when the invariant is nonzero.
sizes = {}
for _ in range(300):
    F = cn.random_cubic_through_axis(ctx, rng)
    nf = cn.normal_form(F, cn.AXIS, sp)
    if cn.invariant(nf).is_zero():
        continue
    n = len(cn.t_ell(F, cn.AXIS, sp, nf).members)
    sizes[n] = sizes.get(n, 0) + 1
print(dict(sorted(sizes.items())))

# %%
# With a second, skew line on the cubic K vanishes.  When the invariant is
# zero too, the cubic contains a plane or is singular along a line.
for family in ("de", "abc", "pencil", "sparse"):
    nf, _ = cn.invariant_zero_nf(ctx, rng, family)
    res = cn.dichotomy_check(nf.reconstruct(), cn.OPPOSITE, cn.AXIS, sp)
    print(f"{family:7s} -> {res.outcome.value}")

# %%
# Even characteristic uses AE^2 + BDE + CD^2 + B^2K instead.
ctx4 = FieldCtx.from_q(4)
nf4 = cn.random_nf(ctx4, rng)
print("quintic invariant over GF(16):", cn.quintic_invariant(nf4))
