"""Semiconvex hulls of rank-one squares and the doubly ruled patches filling them.

A rank-one square is a 4-cycle X1 X2 X3 X4 whose consecutive differences are
rank-one.  Writing d13 = det(X1 - X3), d24 = det(X2 - X4), a convex
combination sum l_i X_i is in the polyconvex hull iff

    l1 l3 d13 + l2 l4 d24 = 0.

When d13 and d24 have opposite signs the hull is filled by the rank-one
segments [A(t), B(s)] with A(t) = t X1 + (1-t) X2, B(s) = s X4 + (1-s) X3 and

    s = f(t) = t d13 / (t d13 - (1-t) d24).

All four corners then lie on a quadric det(X - R) = alpha, which is what
makes line intersections cheap: along a rank-one direction the determinant is
affine, so a rank-one line meets the quadric in at most one point, and that
point is rational whenever the data are.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import lp
from .mat2 import Mat2, Scalar, close, cof, det, is_exact, is_rank_one, lerp, polar, TOL

DEGENERATE_PLANE = "degenerate-plane"
COPLANAR_TRIANGLES = "coplanar-triangles"
SAME_SIGN = "same-sign"
OPPOSITE_SIGN = "opposite-sign"


class SquareError(ValueError):
    pass


class LineInSurface(ValueError):
    """The query line lies entirely on the quadric carrying the patch."""


def _is_zero(v, scale=1.0) -> bool:
    if is_exact(v):
        return v == 0
    return abs(v) <= TOL * scale


def _sign(v, scale=1.0) -> int:
    if _is_zero(v, scale):
        return 0
    return 1 if v > 0 else -1


@dataclass(frozen=True)
class RankOneSquare:
    X1: Mat2
    X2: Mat2
    X3: Mat2
    X4: Mat2

    def __post_init__(self):
        pts = self.corners
        for i in range(4):
            D = pts[(i + 1) % 4] - pts[i]
            if not D.is_zero() and not is_rank_one(D):
                raise SquareError(f"edge X{i + 1}X{(i + 1) % 4 + 1} is not rank-one")

    @property
    def corners(self) -> Tuple[Mat2, Mat2, Mat2, Mat2]:
        return (self.X1, self.X2, self.X3, self.X4)

    @property
    def d13(self) -> Scalar:
        return det(self.X1 - self.X3)

    @property
    def d24(self) -> Scalar:
        return det(self.X2 - self.X4)

    @property
    def scale(self) -> float:
        return max(1.0, max(X.frobenius() for X in self.corners)) ** 2


def classify(sq: RankOneSquare) -> str:
    s13, s24 = _sign(sq.d13, sq.scale), _sign(sq.d24, sq.scale)
    if s13 == 0 and s24 == 0:
        return DEGENERATE_PLANE
    if s13 == 0 or s24 == 0:
        return COPLANAR_TRIANGLES
    return SAME_SIGN if s13 == s24 else OPPOSITE_SIGN


def square_pc_check(sq: RankOneSquare, lambdas: Sequence[Scalar]) -> bool:
    """Whether the combination with weights ``lambdas`` lies in the polyconvex hull.

    Decisive when the corners are affinely independent, so that the weights
    of a point are unique; for planar squares use :func:`pc_membership`.
    """
    l1, l2, l3, l4 = lambdas
    val = l1 * l3 * sq.d13 + l2 * l4 * sq.d24
    return _is_zero(val, sq.scale)


def pairing(sq: RankOneSquare, t: Scalar) -> Scalar:
    """s = f(t) with det((t X1 + (1-t) X2) - (s X4 + (1-s) X3)) = 0."""
    if classify(sq) != OPPOSITE_SIGN:
        raise SquareError("pairing needs diagonals of opposite sign")
    if not 0 <= t <= 1:
        raise ValueError(f"t = {t} outside [0, 1]")
    return t * sq.d13 / (t * sq.d13 - (1 - t) * sq.d24)


@dataclass(frozen=True)
class RuledSurfacePatch:
    square: RankOneSquare

    def __post_init__(self):
        if classify(self.square) != OPPOSITE_SIGN:
            raise SquareError("a ruled patch needs diagonals of opposite sign")

    def edge_points(self, t: Scalar) -> Tuple[Mat2, Mat2, Scalar]:
        """Endpoints A(t), B(f(t)) of the ruling with parameter t, and s = f(t)."""
        sq = self.square
        s = pairing(sq, t)
        return lerp(t, sq.X1, sq.X2), lerp(s, sq.X4, sq.X3), s

    def pullback(self, H: Mat2) -> Optional[Tuple[Scalar, Scalar]]:
        """Patch parameters (t, u) of a point H, or None if H is not on the patch."""
        for t in self._candidate_ts(H):
            if not is_exact(t) and -TOL <= t <= 1 + TOL:
                t = min(max(t, 0.0), 1.0)
            if 0 <= t <= 1:
                u = self._u_on_ruling(H, t)
                if u is not None:
                    return t, u
        return None

    def _candidate_ts(self, H: Mat2) -> List[Scalar]:
        # H - A(t) is rank-one on the ruling through H, and det(W - t E) is
        # affine in t because E is rank-one.  When that equation degenerates
        # (H on the line of X1 X2) the opposite edge gives s, hence t.
        sq = self.square
        scale = max(1.0, H.frobenius()) * sq.scale
        out = []
        W, E = H - sq.X2, sq.X1 - sq.X2
        den = polar(W, E)
        if not _is_zero(den, scale):
            out.append(det(W) / den)
        W2, E2 = H - sq.X3, sq.X4 - sq.X3
        den2 = polar(W2, E2)
        if not _is_zero(den2, scale):
            s = det(W2) / den2
            q = s * (sq.d13 + sq.d24) - sq.d13
            if not _is_zero(q, scale):
                out.append(s * sq.d24 / q)
        return out + [Fraction(0), Fraction(1)]

    def _u_on_ruling(self, H: Mat2, t: Scalar) -> Optional[Scalar]:
        sq = self.square
        scale = max(1.0, H.frobenius()) * sq.scale
        A, B, _ = self.edge_points(t)
        D = A - B
        k = max(range(4), key=lambda i: abs(D.entries[i]))
        if _is_zero(D.entries[k], scale):
            return Fraction(1) if close(H, A) else None
        u = (H - B).entries[k] / D.entries[k]
        if not is_exact(u) and -TOL <= u <= 1 + TOL:
            u = min(max(u, 0.0), 1.0)
        if not 0 <= u <= 1:
            return None
        if not close(H, lerp(u, A, B), tol=1e-7 if not is_exact(u) else TOL):
            return None
        return u


def surface_point(patch: RuledSurfacePatch, t: Scalar, u: Scalar) -> Mat2:
    """u A(t) + (1-u) B(f(t))."""
    if not (0 <= t <= 1 and 0 <= u <= 1):
        raise ValueError(f"(t, u) = ({t}, {u}) outside the unit square")
    A, B, _ = patch.edge_points(t)
    return lerp(u, A, B)


def _solve(M: List[List[Scalar]], rhs: List[Scalar]) -> List[Scalar]:
    """Gaussian elimination with partial pivoting (exact for Fractions)."""
    n = len(M)
    A = [list(row) + [r] for row, r in zip(M, rhs)]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(A[r][col]))
        if _is_zero(A[piv][col], max(1.0, max(abs(float(v)) for row in A for v in row[:n]))):
            raise SquareError("singular system: points are coplanar")
        A[col], A[piv] = A[piv], A[col]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col] / A[col][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [A[i][n] / A[i][i] for i in range(n)]


def hyperboloid_center(X1: Mat2, X2: Mat2, X3: Mat2, X4: Mat2) -> Tuple[Mat2, Scalar]:
    """R in the affine span of four points and alpha with det(X_i - R) = alpha for all i.

    Solves <cof X_i - cof X_1, R> = det X_i - det X_1 (i = 2, 3, 4) with
    R = X_1 + sum_j mu_j (X_j - X_1).  When the polar form is degenerate on
    that span, R is taken from the full matrix space instead.  Raises
    :class:`SquareError` when no centre exists, e.g. for parallelograms.
    """
    pts = (X1, X2, X3, X4)
    E = [X - X1 for X in pts[1:]]
    M = [[polar(Ei, Ej) for Ej in E] for Ei in E]
    rhs = [det(X) - det(X1) - polar(Ei, X1) for X, Ei in zip(pts[1:], E)]
    try:
        mu = _solve(M, rhs)
        R = X1
        for m, Ej in zip(mu, E):
            R = R + m * Ej
    except SquareError:
        R = _center_off_span(pts)
    alpha = det(X1 - R)
    scale = max(1.0, max(X.frobenius() for X in pts)) ** 2
    for X in pts:
        if not _is_zero(det(X - R) - alpha, scale):
            raise SquareError("hyperboloid residual does not vanish")
    return R, alpha


def _center_off_span(pts) -> Mat2:
    """A particular solution R of the corner equations in all of 2x2 matrix space."""
    X1 = pts[0]
    A = [list(cof(X - X1).entries) + [det(X) - det(X1)] for X in pts[1:]]
    pivots = _row_reduce(A, 4)
    scale = max(1.0, max(abs(float(v)) for row in A for v in row))
    if any(not _is_zero(A[i][4], scale) for i in range(len(pivots), 3)):
        raise SquareError("no quadric det(X - R) = alpha passes through the corners")
    r = [Fraction(0)] * 4
    for row, col in enumerate(pivots):
        r[col] = A[row][4]
    return Mat2(*r)


def _exact_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class Hit:
    point: Mat2
    t: Scalar
    u: Scalar
    sigma: Scalar


def line_quadric_roots(origin: Mat2, direction: Mat2, R: Mat2, alpha: Scalar) -> List[Scalar]:
    """Parameters sigma with det(origin + sigma*direction - R) = alpha."""
    W = origin - R
    a2, a1, a0 = det(direction), polar(W, direction), det(W) - alpha
    exact = all(is_exact(v) for v in (a2, a1, a0))
    scale = max(1.0, W.frobenius(), direction.frobenius()) ** 2
    if _is_zero(a2, scale):
        if _is_zero(a1, scale):
            if _is_zero(a0, scale):
                raise LineInSurface("line lies on the quadric")
            return []
        return [-a0 / a1]
    disc = a1 * a1 - 4 * a2 * a0
    if exact:
        r = _exact_sqrt(disc)
        if r is not None:
            return sorted({(-a1 - r) / (2 * a2), (-a1 + r) / (2 * a2)})
        if disc < 0:
            return []
    disc = float(disc)
    if disc < 0:
        return []
    r = math.sqrt(disc)
    return sorted({(-float(a1) - r) / (2 * float(a2)), (-float(a1) + r) / (2 * float(a2))})


def ray_surface_intersections(patch: RuledSurfacePatch, origin: Mat2, direction: Mat2,
                              quadric: Optional[Tuple[Mat2, Scalar]] = None) -> List[Hit]:
    """Points of the patch on the line origin + sigma*direction, sorted by sigma.

    Exact when the direction is rank-one (or the discriminant is a rational
    square); otherwise the roots are floats and each hit is accepted only if
    it reproduces on the patch within tolerance.  Raises :class:`LineInSurface`
    if the line lies on the carrying quadric.
    """
    if direction.is_zero():
        raise ValueError("direction must be nonzero")
    if quadric is None:
        try:
            quadric = hyperboloid_center(*patch.square.corners)
        except SquareError:
            # planar square: the patch is the flat quadrilateral itself
            return _plane_hits(patch, origin, direction)
    R, alpha = quadric
    hits = []
    for sigma in line_quadric_roots(origin, direction, R, alpha):
        H = origin + sigma * direction
        if not is_exact(sigma):
            H = H.to_float()
        tu = patch.pullback(H)
        if tu is not None:
            hits.append(Hit(H, tu[0], tu[1], sigma))
    return sorted(hits, key=lambda h: h.sigma)


def _row_reduce(A: List[List[Scalar]], ncols: int) -> List[int]:
    """Gauss-Jordan on the first ``ncols`` columns of A in place; returns pivot columns."""
    scale = max(1.0, max(abs(float(v)) for row in A for v in row))
    r, pivots = 0, []
    for col in range(ncols):
        if r == len(A):
            break
        piv = max(range(r, len(A)), key=lambda i: abs(A[i][col]))
        if _is_zero(A[piv][col], scale):
            continue
        A[r], A[piv] = A[piv], A[r]
        A[r] = [v / A[r][col] for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][col] != 0:
                f = A[i][col]
                A[i] = [v - f * w for v, w in zip(A[i], A[r])]
        pivots.append(col)
        r += 1
    return pivots


def _plane_hits(patch: RuledSurfacePatch, origin: Mat2, direction: Mat2) -> List[Hit]:
    """Crossing of a line with a planar patch, via origin + sigma D = X1 + p E1 + q E2."""
    sq = patch.square
    E1, E2, E3 = sq.X2 - sq.X1, sq.X4 - sq.X1, sq.X3 - sq.X1
    if len(_row_reduce([list(E.entries) for E in (E1, E2, E3)], 4)) != 2:
        raise SquareError("no quadric through the corners and they do not span a plane")
    cols = [direction, -E1, -E2]
    rhs = (sq.X1 - origin).entries
    A = [[C.entries[e] for C in cols] + [rhs[e]] for e in range(4)]
    pivots = _row_reduce(A, 3)
    scale = max(1.0, max(abs(float(v)) for row in A for v in row))
    if any(not _is_zero(A[i][3], scale) for i in range(len(pivots), 4)):
        return []
    if pivots != [0, 1, 2]:
        raise LineInSurface("line lies in the plane of the patch")
    sigma = A[0][3]
    H = origin + sigma * direction
    tu = patch.pullback(H)
    return [] if tu is None else [Hit(H, tu[0], tu[1], sigma)]


def surface_mesh(patch: RuledSurfacePatch, n: int):
    """(t, u, point) samples on an (n+1) x (n+1) parameter grid."""
    out = []
    for i in range(n + 1):
        t = Fraction(i, n)
        A, B, _ = patch.edge_points(t)
        for j in range(n + 1):
            u = Fraction(j, n)
            out.append((t, u, lerp(u, A, B)))
    return out


def pc_membership(K: Sequence[Mat2], X: Mat2) -> Optional[List[Fraction]]:
    """Weights l >= 0 on K with sum l = 1, sum l_i K_i = X, sum l_i det K_i = det X.

    Returns a witness or None when X is not in the polyconvex hull of K.
    """
    if len(K) > 16:
        raise ValueError("pc_membership is meant for at most 16 points")
    rows = [[1] * len(K)]
    for e in range(4):
        rows.append([Y.entries[e] for Y in K])
    rows.append([det(Y) for Y in K])
    rhs = [1, *X.entries, det(X)]
    if not (all(Y.exact for Y in K) and X.exact):
        raise TypeError("pc_membership works in exact arithmetic")
    w = lp.feasible_point(rows, rhs)
    if w is None:
        return None
    assert sum(w) == 1 and sum((l * Y for l, Y in zip(w, K)), Mat2.zero()) == X
    return w
