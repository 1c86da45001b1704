"""Symmetric laminates on rank-one cubes in the 2x2 matrices.

Given rank-one C1, C2, C3, the cube K = {sum eps_i C_i} carries the
coordinates (x, y, z) -> x C1 + y C2 + z C3 in which

    det(x, y, z) = a xy + b xz + c yz.

After flipping signs of the C_i (an even number of them, so the two vertex
classes are preserved) and possibly multiplying by J = diag(1, -1), we may take
a, b, c > 0 unless abc = 0.  With X0 = (1,1,1) and X_i the vertex that flips
axis i, the construction builds laminates nu_i with barycenter 0 supported on
{X0, X1, X2, X3, -X0, -X_i} and mixes them into a symmetric laminate whose
ratio nu(-X0)/nu(-X_k) is at least 3.  Mixing with the uniform laminate then
reaches any ratio in between.

Every laminate is returned as an exact splitting forest, so its status never
rests on floating point.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .hulls import (OPPOSITE_SIGN, LineInSurface, RankOneSquare, RuledSurfacePatch, SquareError,
                    classify, hyperboloid_center, ray_surface_intersections)
from .mat2 import J, Mat2, det, is_rank_one, lerp, polar
from .measures import (AtomicMeasure, Leaf, MeasureForest, Node, SplittingTree, flatten, is_symmetric,
                       sign_class, split, symmetric_from_partial, validate_tree)

PAIRS = {(0, 1): 0, (0, 2): 1, (1, 2): 2}
DEFAULT_GRID = 256
FALLBACK_GRID = 1024


class FrameError(ValueError):
    pass


class WitnessSearchError(RuntimeError):
    pass


@dataclass(frozen=True)
class CubeFrame:
    C: Tuple[Mat2, Mat2, Mat2]
    signs: Tuple[int, int, int]
    jflip: bool
    coeffs: Tuple[Fraction, Fraction, Fraction]
    raw_coeffs: Tuple[Fraction, Fraction, Fraction]

    @property
    def a(self):
        return self.coeffs[0]

    @property
    def b(self):
        return self.coeffs[1]

    @property
    def c(self):
        return self.coeffs[2]

    @property
    def degenerate(self) -> bool:
        return self.coeffs[0] * self.coeffs[1] * self.coeffs[2] == 0

    def coef(self, i: int, j: int) -> Fraction:
        return self.coeffs[PAIRS[tuple(sorted((i, j)))]]

    @property
    def basis(self) -> Tuple[Mat2, Mat2, Mat2]:
        """Normalised edge matrices s_i J^g C_i."""
        out = []
        for s, Ci in zip(self.signs, self.C):
            M = s * Ci
            out.append(J @ M if self.jflip else M)
        return tuple(out)

    def point(self, x, y, z) -> Mat2:
        """Normalised-space matrix with frame coordinates (x, y, z)."""
        B = self.basis
        return x * B[0] + y * B[1] + z * B[2]

    def det_coords(self, v) -> Fraction:
        x, y, z = v
        return self.a * x * y + self.b * x * z + self.c * y * z

    def to_original(self, M: Mat2) -> Mat2:
        return J @ M if self.jflip else M

    def vertex(self, eps) -> Mat2:
        """Normalised-space vertex sum eps_i s_i J^g C_i."""
        return self.point(*eps)

    def flip(self, i: int) -> Mat2:
        """X_i: the vertex that flips axis i (normalised space)."""
        eps = [1, 1, 1]
        eps[i] = -1
        return self.vertex(eps)

    @property
    def X0(self) -> Mat2:
        return self.vertex((1, 1, 1))

    def vertices(self) -> Dict[Tuple[int, ...], Mat2]:
        """Original labelling: eps -> sum eps_i C_i."""
        out = {}
        for eps in itertools.product((1, -1), repeat=3):
            out[eps] = eps[0] * self.C[0] + eps[1] * self.C[1] + eps[2] * self.C[2]
        return out

    def normalized_vertices(self) -> Dict[Tuple[int, ...], Mat2]:
        """Normalised labelling mapped back to original matrices."""
        return {eps: self.to_original(self.vertex(eps)) for eps in itertools.product((1, -1), repeat=3)}

    def flip_dets(self) -> Tuple[Fraction, Fraction, Fraction]:
        """det X_1, det X_2, det X_3 in normalised coordinates."""
        a, b, c = self.coeffs
        return (c - a - b, b - a - c, a - b - c)

    def case(self) -> str:
        if self.degenerate:
            return "degenerate"
        pos = [i for i, d in enumerate(self.flip_dets()) if d > 0]
        if len(pos) > 1:
            raise AssertionError("two positive flip determinants with a, b, c > 0")
        return "case2" if pos else "case1"

    def record(self) -> dict:
        return {"signs": list(self.signs), "jflip": self.jflip,
                "coefficients": [str(v) for v in self.coeffs],
                "raw_coefficients": [str(v) for v in self.raw_coeffs],
                "case": self.case()}


def frame_coefficients(C1: Mat2, C2: Mat2, C3: Mat2) -> Tuple[Fraction, Fraction, Fraction]:
    return polar(C1, C2), polar(C1, C3), polar(C2, C3)


def build_frame(C1: Mat2, C2: Mat2, C3: Mat2) -> CubeFrame:
    """Compute (a, b, c) and normalise them to be positive when abc != 0.

    Only even sets of axis flips are used, so a vertex keeps its class
    (parity of minus signs); the J multiplication handles abc < 0.
    """
    C = (C1, C2, C3)
    for i, Ci in enumerate(C):
        if not Ci.exact:
            raise FrameError("cube frames need exact matrices")
        if not is_rank_one(Ci):
            raise FrameError(f"C{i + 1} is not rank-one")
    raw = frame_coefficients(*C)
    if raw[0] * raw[1] * raw[2] == 0:
        return CubeFrame(C, (1, 1, 1), False, raw, raw)
    jflip = raw[0] * raw[1] * raw[2] < 0
    co = tuple(-v for v in raw) if jflip else raw
    for signs in ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)):
        new = (co[0] * signs[0] * signs[1], co[1] * signs[0] * signs[2], co[2] * signs[1] * signs[2])
        if all(v > 0 for v in new):
            return CubeFrame(C, signs, jflip, new, raw)
    raise AssertionError("sign normalisation failed")  # unreachable: abc > 0 after J


# -- the waypoints P, P1, P2, P3 -------------------------------------------

def _cut(U: Mat2, V: Mat2, Z: Mat2) -> Fraction:
    """mu with det(mu U + (1-mu) V - Z) = 0, for U - V rank-one."""
    W = V - Z
    den = polar(W, U - V)
    if den == 0:
        raise FrameError("segment does not cross the rank-one cone of Z")
    return -det(W) / den


@dataclass(frozen=True)
class LemmaPData:
    axis: int
    roles: Tuple[int, int, int]
    rel: Tuple[Fraction, Fraction, Fraction]
    X0: Mat2
    X1: Mat2
    X2: Mat2
    X3: Mat2
    lam: Fraction
    P: Mat2
    lam1: Fraction
    P1: Mat2
    lam2: Fraction
    P2: Mat2
    lam3: Fraction
    P3: Mat2

    def squares(self) -> List[Tuple[Mat2, Mat2, Mat2, Mat2]]:
        return [(self.X0, self.X2, self.P3, self.X3),
                (self.X0, self.X1, self.P1, self.X2),
                (self.X0, self.X1, self.P2, self.X3),
                (self.X2, self.P1, self.P2, self.P3)]


def lemma_p(frame: CubeFrame, axis: int) -> LemmaPData:
    """The point P on [-X0, -X_axis] with det(P - X_axis) = 0, and the waypoints.

    The two other axes are ordered so that the coefficient pairing the flipped
    axis with the second is at most the one pairing it with the third.
    """
    if frame.degenerate or not (frame.a > 0 and frame.b > 0 and frame.c > 0):
        raise FrameError("lemma_p needs a normalised non-degenerate frame")
    if frame.flip_dets()[axis] >= 0:
        raise FrameError(f"det X{axis + 1} must be negative")
    j, k = [i for i in range(3) if i != axis]
    if frame.coef(axis, j) > frame.coef(axis, k):
        j, k = k, j
    a, b, c = frame.coef(axis, j), frame.coef(axis, k), frame.coef(j, k)
    X0, X1, X2, X3 = frame.X0, frame.flip(axis), frame.flip(j), frame.flip(k)

    lam = (a + b - c) / (a + b)
    P = lerp(lam, -X0, -X1)
    lam1 = lam * b / (a + lam * b)
    P1 = lerp(lam1, X1, P)
    lam2 = lam * a / (b + lam * a)
    P2 = lerp(lam2, X1, P)
    lam3 = (a + b - c) * (b - a) / (b * b - a * a + (1 + lam) * a * c)
    P3 = lerp(lam3, X3, P2)

    # the closed forms must agree with solving the determinant conditions
    assert lam == _cut(-X0, -X1, X1)
    assert lam1 == _cut(X1, P, X2)
    assert lam2 == _cut(X1, P, X3)
    assert lam3 == 0 if a == b else lam3 == _cut(X3, P2, X2)
    assert det(P - X1) == 0 and det(P1 - X2) == 0 and det(P2 - X3) == 0 and det(P3 - X2) == 0
    return LemmaPData(axis, (axis, j, k), (a, b, c), X0, X1, X2, X3, lam, P, lam1, P1, lam2, P2, lam3, P3)


# -- constructive witness for 0 in the lamination hull ---------------------

def rank_one_directions(frame: CubeFrame, grid: int) -> List[Mat2]:
    """Rational points on the cone a xy + b xz + c yz = 0, one per grid angle.

    The cone is parametrised by (x, y) -> (x (bx + cy), y (bx + cy), -a xy);
    directions are visited in grid order so the search is deterministic.
    """
    out = []
    seen = set()
    for i in range(grid):
        th = math.pi * (i + 0.5) / grid
        x = Fraction(math.cos(th)).limit_denominator(4 * grid)
        y = Fraction(math.sin(th)).limit_denominator(4 * grid)
        s = frame.b * x + frame.c * y
        v = (x * s, y * s, -frame.a * x * y)
        if v == (0, 0, 0) or v in seen:
            continue
        seen.add(v)
        assert frame.det_coords(v) == 0
        out.append(frame.point(*v))
    return out


def _corner_node(Y: Mat2, data: LemmaPData, expand: bool) -> Node:
    if not expand:
        return Leaf(Y)
    if Y in (data.X0, data.X1, data.X2, data.X3, data.P):
        return Leaf(Y)
    if Y == data.P1:
        return split(data.lam1, Leaf(data.X1), Leaf(data.P), point=Y)
    if Y == data.P2:
        return split(data.lam2, Leaf(data.X1), Leaf(data.P), point=Y)
    if Y == data.P3:
        return split(data.lam3, Leaf(data.X3), _corner_node(data.P2, data, expand), point=Y)
    raise AssertionError(f"unexpected corner {Y}")


def _hit_node(patch: RuledSurfacePatch, hit, data: LemmaPData, expand: bool) -> Node:
    Y1, Y2, Y3, Y4 = patch.square.corners
    A, B, s = patch.edge_points(hit.t)
    nA = split(hit.t, _corner_node(Y1, data, expand), _corner_node(Y2, data, expand), point=A)
    nB = split(s, _corner_node(Y4, data, expand), _corner_node(Y3, data, expand), point=B)
    return split(hit.u, nA, nB, point=hit.point)


@dataclass
class Witness:
    tree: SplittingTree
    data: Optional[LemmaPData]
    direction: Optional[Mat2] = None
    patches: Tuple[int, ...] = ()
    tried: int = 0


def _patches(data: LemmaPData):
    out = []
    for idx, corners in enumerate(data.squares()):
        try:
            sq = RankOneSquare(*corners)
        except SquareError:
            continue
        if classify(sq) != OPPOSITE_SIGN:
            continue
        patch = RuledSurfacePatch(sq)
        out.append((idx, patch, hyperboloid_center(*corners)))
    return out


def witness_origin(frame: CubeFrame, axis: int, expand: bool = True, grid: int = DEFAULT_GRID,
                   graft_p: bool = True) -> Witness:
    """An exact splitting tree with root 0 and leaves in {X0, X1, X2, X3, P}.

    A rank-one line through 0 is intersected with the four ruled patches
    bounding a region around 0; the nearest hit on each side is expanded along
    its ruling and the square's edges.  With ``expand`` the waypoints P1, P2,
    P3 are split down to X_i and P; with ``graft_p`` the leaf P is further
    split into -X0 and -X_axis, leaving only cube vertices.

    On the boundary det X_axis = 0 the witness is the single split of 0 on
    [X_axis, -X_axis].
    """
    Xi = frame.flip(axis)
    if frame.flip_dets()[axis] == 0:
        return Witness(SplittingTree(split(Fraction(1, 2), Leaf(Xi), Leaf(-Xi), point=Mat2.zero())), None)
    data = lemma_p(frame, axis)
    patches = _patches(data)
    zero = Mat2.zero()
    tried = 0
    for g in (grid, FALLBACK_GRID):
        for D in rank_one_directions(frame, g):
            tried += 1
            hits = []
            for idx, patch, quad in patches:
                try:
                    hs = ray_surface_intersections(patch, zero, D, quadric=quad)
                except LineInSurface:
                    hs = []
                hits.extend((h, idx, patch) for h in hs)
            on = [x for x in hits if x[0].sigma == 0]
            pos = [x for x in hits if x[0].sigma > 0]
            neg = [x for x in hits if x[0].sigma < 0]
            if on:
                h, idx, patch = on[0]
                root = _hit_node(patch, h, data, expand)
                used = (idx,)
            elif pos and neg:
                hp, ip, pp = min(pos, key=lambda x: x[0].sigma)
                hn, in_, pn = max(neg, key=lambda x: x[0].sigma)
                theta = -hn.sigma / (hp.sigma - hn.sigma)
                root = split(theta, _hit_node(pp, hp, data, expand), _hit_node(pn, hn, data, expand),
                             point=zero)
                used = (ip, in_)
            else:
                continue
            tree = SplittingTree(root)
            if graft_p:
                tree = tree.graft(lambda Y: split(data.lam, Leaf(-data.X0), Leaf(-data.X1), point=Y)
                                  if Y == data.P else None)
            if validate_tree(tree):
                return Witness(tree, data, D, used, tried)
    raise WitnessSearchError(
        f"no bracketing rank-one direction for axis {axis} after {tried} directions; "
        f"relative coefficients {tuple(str(v) for v in data.rel)}, {len(patches)} usable patches")


# -- certificates ----------------------------------------------------------

@dataclass
class LaminateCertificate:
    forest: MeasureForest
    flattened: AtomicMeasure
    case: str
    ratio: Optional[Fraction]
    frame: CubeFrame
    component_ratios: List[Optional[Fraction]] = field(default_factory=list)
    target_ratio: Optional[Fraction] = None
    roles: Optional[Tuple[int, int, int]] = None
    mirrored: bool = False
    alpha: Optional[Fraction] = None
    beta: Optional[Fraction] = None


def uniform_laminate(frame: CubeFrame) -> SplittingTree:
    """Three nested splits along +-C1, +-C2, +-C3 (original labelling)."""
    C = frame.C

    def go(Y: Mat2, level: int) -> Node:
        if level == 3:
            return Leaf(Y)
        return split(Fraction(1, 2), go(Y + C[level], level + 1), go(Y - C[level], level + 1), point=Y)

    return SplittingTree(go(Mat2.zero(), 0))


def symmetric_measure(frame: CubeFrame, alpha: Fraction) -> AtomicMeasure:
    """alpha on even patterns, 1/4 - alpha on odd ones (original labelling)."""
    beta = Fraction(1, 4) - alpha
    return AtomicMeasure([(X, alpha if sign_class(e) > 0 else beta) for e, X in frame.vertices().items()])


def _weight_at(m: AtomicMeasure, X: Mat2) -> Fraction:
    return m.weight(X)


def _finish(frame, comps, case, **kw) -> LaminateCertificate:
    """Map a normalised-space forest to original matrices and check it."""
    forest = MeasureForest(tuple((w, t.map(frame.to_original)) for w, t in comps))
    rep = validate_tree(forest)
    if not rep:
        raise AssertionError(f"certificate fails validation: {rep}")
    flat = flatten(forest)
    return LaminateCertificate(forest, flat, case, frame=frame, **kw)


def _ratio(frame: CubeFrame, m: AtomicMeasure, axis: int) -> Fraction:
    """nu(-X0) / nu(-X_axis) for a measure on original matrices."""
    num = m.weight(frame.to_original(-frame.X0))
    return num / m.weight(frame.to_original(-frame.flip(axis)))


def _check_symmetric(cert: LaminateCertificate):
    frame = cert.frame
    symmetric_from_partial(cert.flattened, frame)
    ok, alpha, beta = is_symmetric(cert.flattened, frame)
    assert ok
    cert.alpha, cert.beta = alpha, beta


def case1_laminate(frame: CubeFrame, grid: int = DEFAULT_GRID) -> LaminateCertificate:
    """All flip determinants <= 0: mix nu_1, nu_2, nu_3 with equal mass on the -X_i."""
    if frame.case() != "case1":
        raise FrameError("case1_laminate needs det X_i <= 0 for i = 1, 2, 3")
    trees, comp_ratios, kappas = [], [], []
    for i in range(3):
        w = witness_origin(frame, i, grid=grid)
        m = flatten(w.tree)
        mass = m.weight(-frame.flip(i))
        trees.append(w.tree)
        kappas.append(1 / mass)
        comp_ratios.append(m.weight(-frame.X0) / mass)
    C = 1 / sum(kappas)
    a, b, c = frame.coeffs
    expected = [(a + b - c) / c, (a + c - b) / b, (b + c - a) / a]
    assert comp_ratios == expected, (comp_ratios, expected)
    cert = _finish(frame, [(C * k, t) for k, t in zip(kappas, trees)], "case1", ratio=None,
                   component_ratios=comp_ratios)
    cert.ratio = _ratio(frame, cert.flattened, 0)
    assert all(_ratio(frame, cert.flattened, i) == cert.ratio for i in range(3))
    assert cert.ratio == (a + b + c) * (1 / a + 1 / b + 1 / c) - 6
    _check_symmetric(cert)
    return cert


def case2_pieces(frame: CubeFrame):
    """Roles (q, p, r) and the laminate nu_2' on {+-X_q, +-X_p}, p the positive axis."""
    dets = frame.flip_dets()
    p = next(i for i in range(3) if dets[i] > 0)
    q, r = [i for i in range(3) if i != p]
    a, b, c = frame.coef(q, p), frame.coef(q, r), frame.coef(p, r)
    assert b > a + c
    X1, X2 = frame.flip(q), frame.flip(p)
    lam = (b - a - c) / (b - c)
    P = lerp(lam, X1, -X2)
    assert det(P - X2) == 0
    Q = (P + X2) / 2
    assert Q == lam * frame.basis[r]

    def half(sgn):
        nP = split(lam, Leaf(sgn * X1), Leaf(-sgn * X2), point=sgn * P)
        return split(Fraction(1, 2), nP, Leaf(sgn * X2), point=sgn * Q)

    tree = SplittingTree(split(Fraction(1, 2), half(1), half(-1), point=Mat2.zero()))
    return (q, p, r), (a, b, c), lam, tree


def case2_laminate(frame: CubeFrame, grid: int = DEFAULT_GRID) -> LaminateCertificate:
    """One flip determinant positive: combine nu_2' with deflated nu_1 and nu_3."""
    if frame.case() != "case2":
        raise FrameError("case2_laminate needs exactly one positive flip determinant")
    (q, p, r), (a, b, c), lam, t2 = case2_pieces(frame)
    m2 = flatten(t2)
    X1, X2 = frame.flip(q), frame.flip(p)
    assert m2.weight(X1) == m2.weight(-X1) == lam / 4
    assert m2.weight(X2) == m2.weight(-X2) == (2 - lam) / 4
    deflate = 1 - m2.weight(-X1) / m2.weight(-X2)
    w1 = witness_origin(frame, q, grid=grid)
    w3 = witness_origin(frame, r, grid=grid)
    m1, m3 = flatten(w1.tree), flatten(w3.tree)
    k1 = deflate / m1.weight(-X1)
    k2 = 1 / m2.weight(-X2)
    k3 = 1 / m3.weight(-frame.flip(r))
    C = 1 / (k1 + k2 + k3)
    comp = [m1.weight(-frame.X0) / m1.weight(-X1), Fraction(0), m3.weight(-frame.X0) / m3.weight(-frame.flip(r))]
    assert comp[0] == (a + b - c) / c and comp[2] == (b + c - a) / a
    cert = _finish(frame, [(C * k1, w1.tree), (C * k2, t2), (C * k3, w3.tree)], "case2", ratio=None,
                   component_ratios=comp, roles=(q, p, r))
    cert.ratio = _ratio(frame, cert.flattened, 0)
    assert all(_ratio(frame, cert.flattened, i) == cert.ratio for i in range(3))
    assert cert.ratio == 2 * a / c + (b + c - a) / a
    _check_symmetric(cert)
    return cert


def _degenerate_tree(frame: CubeFrame, cls: int) -> SplittingTree:
    """Split along the axis off the rank-one plane, then inside the plane.

    Leaves are the four vertices of class ``cls`` (+1: even, -1: odd).
    """
    i, j = next(pair for pair, idx in PAIRS.items() if frame.coeffs[idx] == 0)
    k = 3 - i - j
    C = frame.C

    def side(sk: int) -> Node:
        # eps_i * eps_j must equal cls * sk
        e = cls * sk
        Y = sk * C[k]
        return split(Fraction(1, 2), Leaf(Y + C[i] + e * C[j]), Leaf(Y - C[i] - e * C[j]), point=Y)

    return SplittingTree(split(Fraction(1, 2), side(1), side(-1), point=Mat2.zero()))


def degenerate_laminate(frame: CubeFrame, alpha: Fraction) -> LaminateCertificate:
    """Symmetric laminate with weight alpha on even patterns when abc = 0."""
    if not frame.degenerate:
        raise FrameError("frame is not degenerate")
    alpha = Fraction(alpha)
    if not 0 <= alpha <= Fraction(1, 4):
        raise ValueError(f"alpha = {alpha} outside [0, 1/4]")
    uni = uniform_laminate(frame)
    if alpha >= Fraction(1, 8):
        theta, extreme = 8 * alpha - 1, _degenerate_tree(frame, 1)
    else:
        theta, extreme = 1 - 8 * alpha, _degenerate_tree(frame, -1)
    forest = MeasureForest(((theta, extreme), (1 - theta, uni)))
    rep = validate_tree(forest)
    if not rep:
        raise AssertionError(f"degenerate certificate invalid: {rep}")
    flat = flatten(forest)
    assert flat == symmetric_measure(frame, alpha)
    beta = Fraction(1, 4) - alpha
    ratio = None if alpha == 0 else beta / alpha
    return LaminateCertificate(forest, flat, "degenerate", ratio, frame,
                               target_ratio=None if beta == 0 else alpha / beta, alpha=alpha, beta=beta)


def base_laminate(frame: CubeFrame, grid: int = DEFAULT_GRID) -> LaminateCertificate:
    return case2_laminate(frame, grid) if frame.case() == "case2" else case1_laminate(frame, grid)


def symmetric_laminate(frame: CubeFrame, target_ratio, grid: int = DEFAULT_GRID) -> LaminateCertificate:
    """A symmetric laminate with barycenter 0 and alpha/beta equal to ``target_ratio``.

    Ratios in [1/3, 1] mix the Case 1/Case 2 laminate (alpha/beta <= 1/3) with
    the uniform one; ratios in (1, 3] are obtained by the reflection X -> -X,
    which exchanges the two vertex classes.
    """
    r = Fraction(target_ratio)
    if not Fraction(1, 3) <= r <= 3:
        raise ValueError(f"target ratio {r} outside [1/3, 3]")
    alpha_t = r / (4 * (1 + r))
    if frame.degenerate:
        return degenerate_laminate(frame, alpha_t)
    if r > 1:
        cert = symmetric_laminate(frame, 1 / r, grid)
        neg = lambda X: -X  # noqa: E731
        cert.forest = cert.forest.map(neg)
        cert.flattened = cert.flattened.map(neg)
        cert.target_ratio = r
        cert.mirrored = True
        cert.alpha, cert.beta = cert.beta, cert.alpha
        assert cert.flattened == symmetric_measure(frame, alpha_t)
        return cert
    base = base_laminate(frame, grid)
    alpha_c = base.alpha
    theta = (Fraction(1, 8) - alpha_t) / (Fraction(1, 8) - alpha_c)
    comps = list(base.forest.scaled(theta)) + [(1 - theta, uniform_laminate(frame))]
    forest = MeasureForest(tuple(comps))
    rep = validate_tree(forest)
    if not rep:
        raise AssertionError(f"mixed certificate invalid: {rep}")
    flat = flatten(forest)
    assert flat == symmetric_measure(frame, alpha_t)
    return LaminateCertificate(forest, flat, base.case, base.ratio, frame, base.component_ratios,
                               target_ratio=r, roles=base.roles, alpha=alpha_t,
                               beta=Fraction(1, 4) - alpha_t)
