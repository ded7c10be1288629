"""
Sampling cubic surfaces
=======================

Profile seeded cubics from several structured families and check each
against the bounds whose hypotheses it satisfies.
"""

# %%
import json

from hermsurf import FieldCtx, canonical_surface, verify

S = canonical_surface(FieldCtx.from_q(3))
rep = verify.cubic_survey(S, samples=400, seed=0)
print("violations:", rep.violations)
print("max count:", rep.max_count, " Sorensen value:", rep.notes["sorensen_value"])

# %%
# Where the samples land.
for count, n in sorted(rep.histogram.items(), reverse=True)[:10]:
    print(f"{count:4d}  {'#' * min(n, 60)}")

# %%
# Which bounds applied, and how often.
for name, n in rep.notes["bounds_applied"]:
    print(f"{name:14s} {n}")

# %%
# A single profile.
from hermsurf import constructions as con

prof = verify.profile_cubic(con.generator_book(S, 3).form, S)
print(json.dumps(prof.summary(S.ctx), indent=1)[:600])
for check in verify.assert_conditional_bounds(prof, S.q):
    print(check)
