"""Rank-one squares, the ruled patch between them, and polyconvex hulls."""
# %%
from fractions import Fraction

from laminates import (Mat2, RankOneSquare, RuledSurfacePatch, classify, det, hyperboloid_center,
                       pc_membership, ray_surface_intersections, surface_point)

X1 = Mat2.of([[0, 0], [0, 0]])
X2 = Mat2.of([[2, 0], [0, 0]])
X3 = Mat2.of([[3, 1], [1, 1]])
X4 = Mat2.of([[0, 1], [0, 1]])
sq = RankOneSquare(X1, X2, X3, X4)
print("diagonals:", sq.d13, sq.d24, "->", classify(sq))

# %% every ruling A(t) -> B(f(t)) is a rank-one segment
patch = RuledSurfacePatch(sq)
for t in [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1)]:
    A, B, s = patch.edge_points(t)
    print(f"t={t}  s={s}  det(A-B)={det(A - B)}")

# %% the corners sit on one quadric det(X - R) = alpha
R, alpha = hyperboloid_center(X1, X2, X3, X4)
print("R =", R, " alpha =", alpha)
H = surface_point(patch, Fraction(1, 3), Fraction(2, 5))
print("det(H - R) =", det(H - R), " pullback:", patch.pullback(H))

# %% a rank-one line meets the patch at a rational point
D = Mat2.of([[1, 2], [1, 2]])
for hit in ray_surface_intersections(patch, H - 3 * D, D):
    print("hit at sigma", hit.sigma, "(t, u) =", (hit.t, hit.u))

# %% polyconvex hull membership is an exact LP
centre = sum((Fraction(1, 4) * X for X in sq.corners), Mat2.zero())
print("centre in hull:", pc_membership(list(sq.corners), centre))
print("X2 + X4 halfway:", pc_membership(list(sq.corners), (X2 + X4) / 2))
