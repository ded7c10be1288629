"""
Unions of planes with many surface points
=========================================

Tangent planes sharing a secant line, the three-plane configuration just
below it, and planes through a generator.
"""

# %%
from hermsurf import FieldCtx, canonical_surface
from hermsurf import constructions as con

S = canonical_surface(FieldCtx.from_q(3))
q = S.q

# %%
# d tangent planes through a common secant.
for d in range(2, q + 2):
    conf = con.sorensen(S, d)
    print(f"d={d}: {conf.measured_count(S)} points (formula {conf.expected_count})")

# %%
# Three tangent planes meeting pairwise in three secants through a point P,
# with P the only surface point on all three.
conf = con.second_best(S)
print("second best:", conf.measured_count(S), "vs", con.sorensen_count(q, 3))
for name, obj in conf.axis.items():
    print(f"  {name:6s}", getattr(obj, "basis", getattr(obj, "coords", None)))

# %%
# Planes through a generator are all tangent, but share a whole line of the surface.
for d in (2, 3):
    conf = con.generator_book(S, d)
    print(f"generator book d={d}: {conf.measured_count(S)}")

# %%
# At q=2 every quadric can be checked.  The top value comes only from two
# tangent planes through a secant and nothing lands on 22.
from hermsurf import verify

S2 = canonical_surface(FieldCtx.from_q(2))
rep = verify.exhaustive_quadrics(S2)
print(rep.total, "quadrics; top of the spectrum:", sorted(rep.histogram.items())[-5:])
print("maximizers:", rep.notes["maximizers"])

# %%
# Every triple of planes with a common line, q=3.
rep = verify.elx_survey(S)
print("value 100 present:", 100 in rep.histogram, "  103:", 103 in rep.histogram, "  91:", 91 in rep.histogram)
for a, b, lo, hi in rep.notes["ranges"]:
    print(f"  {a:10s} {b:12s} {lo}..{hi}")
