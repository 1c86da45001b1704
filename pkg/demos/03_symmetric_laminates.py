"""Symmetric laminates on a rank-one cube and their certificates.

For rank-one C1, C2, C3 the eight points sum eps_i C_i carry the measure with
weight 1/16 on even sign patterns and 3/16 on odd ones.  The construction
returns a splitting forest; every split is checked, so Jensen's inequality
for any rank-one convex function follows split by split.
"""
# %%
from fractions import Fraction

from laminates import Mat2, battery, build_frame, flatten, jensen_check, symmetric_laminate, validate_tree
from laminates.measures import cube_weights
from laminates.periodic import sign_str

C1 = Mat2.of([[1, 0], [0, 0]])
C2 = Mat2.of([[0, 0], [0, 1]])
C3 = Mat2.of([[1, 2], [1, 2]])
frame = build_frame(C1, C2, C3)
print("frame:", frame.record())

# %%
cert = symmetric_laminate(frame, Fraction(1, 3))
print("case", cert.case, " base ratio", cert.ratio, " splits", cert.forest.order)
print("valid:", bool(validate_tree(cert.forest)))
for eps, w in cube_weights(flatten(cert.forest), frame.vertices()).items():
    print(sign_str(eps), w)

# %% Jensen margins: exactly zero for +-det, nonnegative for the rest
for f in battery(seed=0, size=8):
    jr = jensen_check(cert.forest, f)
    print(f"{f.tag:24s} global {float(jr.global_margin):+.4f}  worst split {float(jr.min_margin):+.4f}")

# %% any ratio in [1/3, 3] is reachable
for r in [Fraction(1, 3), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3)]:
    c = symmetric_laminate(frame, r)
    print(f"alpha/beta = {r}:  alpha={c.alpha}  beta={c.beta}  mirrored={c.mirrored}")
