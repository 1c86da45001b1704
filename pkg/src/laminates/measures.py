"""Atomic measures on 2x2 matrices and prelaminate splitting certificates.

A prelaminate is an atomic measure reached from a Dirac mass by repeatedly
replacing an atom with a two-point measure on a rank-one segment through it.
:class:`Split` records one such step, so a tree of splits is a certificate that
its leaf measure is a laminate: Jensen's inequality for a rank-one convex
function holds at every split and therefore for the whole tree.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, List, Optional, Sequence, Tuple, Union

from .mat2 import Mat2, Scalar, close, det, is_exact, is_rank_one

# relative slack for float Jensen margins
JENSEN_TOL = 1e-7


class InvalidTreeError(ValueError):
    pass


class NotSymmetricError(ValueError):
    pass


# -- atomic measures ------------------------------------------------------

@dataclass
class AtomicMeasure:
    atoms: List[Tuple[Mat2, Scalar]] = field(default_factory=list)

    def __post_init__(self):
        self.atoms = _merge(self.atoms)
        for _, w in self.atoms:
            if w < 0:
                raise ValueError(f"negative weight {w}")

    @classmethod
    def dirac(cls, X: Mat2) -> "AtomicMeasure":
        return cls([(X, Fraction(1))])

    def total(self) -> Scalar:
        return sum((w for _, w in self.atoms), Fraction(0))

    def weight(self, X: Mat2) -> Scalar:
        for Y, w in self.atoms:
            if close(X, Y):
                return w
        return Fraction(0)

    def support(self) -> List[Mat2]:
        return [X for X, w in self.atoms if w != 0]

    def map(self, fn: Callable[[Mat2], Mat2]) -> "AtomicMeasure":
        return AtomicMeasure([(fn(X), w) for X, w in self.atoms])

    def __eq__(self, other) -> bool:
        if not isinstance(other, AtomicMeasure):
            return NotImplemented
        mine = [(X, w) for X, w in self.atoms if w != 0]
        theirs = [(X, w) for X, w in other.atoms if w != 0]
        if len(mine) != len(theirs):
            return False
        return all(other.weight(X) == w for X, w in mine)


def _merge(atoms) -> List[Tuple[Mat2, Scalar]]:
    out: List[Tuple[Mat2, Scalar]] = []
    for X, w in atoms:
        for i, (Y, v) in enumerate(out):
            if close(X, Y):
                out[i] = (Y, v + w)
                break
        else:
            out.append((X, w))
    return out


def mix(parts: Sequence[Tuple[Scalar, AtomicMeasure]]) -> AtomicMeasure:
    return AtomicMeasure([(X, t * w) for t, m in parts for X, w in m.atoms])


def barycenter(m: AtomicMeasure) -> Mat2:
    acc = Mat2.zero()
    for X, w in m.atoms:
        acc = acc + w * X
    return acc


def pc_constraints_check(m: AtomicMeasure, bary: Optional[Mat2] = None) -> Tuple[Scalar, Scalar]:
    """Residuals of the first moment and of the determinant moment.

    Returns ``(max |sum w X - bary|, |sum w det X - det bary|)``; ``bary``
    defaults to the zero matrix, the barycenter of all measures built here.
    """
    bary = Mat2.zero() if bary is None else bary
    first = barycenter(m) - bary
    r1 = max(abs(e) for e in first.entries)
    r2 = abs(sum((w * det(X) for X, w in m.atoms), Fraction(0)) - det(bary))
    return r1, r2


# -- splitting trees ------------------------------------------------------

@dataclass(frozen=True)
class Leaf:
    point: Mat2

    @property
    def bary(self) -> Mat2:
        return self.point


@dataclass(frozen=True)
class Split:
    point: Mat2
    lam: Scalar
    left: "Node"
    right: "Node"

    @property
    def bary(self) -> Mat2:
        return self.point


Node = Union[Leaf, Split]


def node(X: Mat2) -> Leaf:
    return Leaf(X)


def split(lam: Scalar, left: Node, right: Node, point: Optional[Mat2] = None) -> Node:
    """Split ``point = lam*bary(left) + (1-lam)*bary(right)``.

    Trivial splits (lam in {0, 1} or coinciding children) collapse to the
    surviving child, so construction code need not special-case them.
    """
    if lam == 1:
        return left
    if lam == 0:
        return right
    if point is None:
        point = lam * left.bary + (1 - lam) * right.bary
    if isinstance(left, Leaf) and isinstance(right, Leaf) and close(left.point, right.point):
        return Leaf(point)
    return Split(point, lam, left, right)


@dataclass(frozen=True)
class SplittingTree:
    root: Node

    @property
    def bary(self) -> Mat2:
        return self.root.bary

    def leaves(self) -> Iterator[Tuple[Scalar, Mat2]]:
        stack = [(Fraction(1), self.root)]
        while stack:
            w, nd = stack.pop()
            if isinstance(nd, Leaf):
                yield w, nd.point
            else:
                stack.append((w * (1 - nd.lam), nd.right))
                stack.append((w * nd.lam, nd.left))

    def splits(self) -> Iterator[Tuple[str, Split]]:
        """Split nodes with their path ('' for the root, then 'L'/'R' steps)."""
        stack = [("", self.root)]
        while stack:
            path, nd = stack.pop()
            if isinstance(nd, Split):
                yield path, nd
                stack.append((path + "R", nd.right))
                stack.append((path + "L", nd.left))

    @property
    def order(self) -> int:
        return sum(1 for _ in self.splits())

    def map(self, fn: Callable[[Mat2], Mat2]) -> "SplittingTree":
        def go(nd):
            if isinstance(nd, Leaf):
                return Leaf(fn(nd.point))
            return Split(fn(nd.point), nd.lam, go(nd.left), go(nd.right))
        return SplittingTree(go(self.root))

    def graft(self, fn: Callable[[Mat2], Optional[Node]]) -> "SplittingTree":
        """Replace every leaf X for which ``fn(X)`` is not None by that subtree."""
        def go(nd):
            if isinstance(nd, Leaf):
                sub = fn(nd.point)
                return nd if sub is None else sub
            return Split(nd.point, nd.lam, go(nd.left), go(nd.right))
        return SplittingTree(go(self.root))


@dataclass(frozen=True)
class MeasureForest:
    components: Tuple[Tuple[Scalar, SplittingTree], ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple((w, t) for w, t in self.components if w != 0))

    @property
    def bary(self) -> Mat2:
        return self.components[0][1].bary

    @property
    def order(self) -> int:
        return sum(t.order for _, t in self.components)

    def map(self, fn) -> "MeasureForest":
        return MeasureForest(tuple((w, t.map(fn)) for w, t in self.components))

    def scaled(self, s: Scalar) -> List[Tuple[Scalar, SplittingTree]]:
        return [(s * w, t) for w, t in self.components]


@dataclass
class TreeReport:
    valid: bool
    order: int = 0
    path: Optional[str] = None
    invariant: Optional[str] = None
    residual: Optional[Scalar] = None

    def __bool__(self) -> bool:
        return self.valid


def validate_tree(t: Union[SplittingTree, MeasureForest]) -> TreeReport:
    """Check every split: barycentric consistency, rank-one children, lam in (0,1)."""
    if isinstance(t, MeasureForest):
        total = sum((w for w, _ in t.components), Fraction(0))
        if any(w < 0 for w, _ in t.components) or total != 1:
            return TreeReport(False, invariant="forest weights", residual=total - 1)
        order = 0
        for i, (_, tree) in enumerate(t.components):
            if not close(tree.bary, t.bary):
                return TreeReport(False, path=f"#{i}", invariant="common barycenter")
            rep = validate_tree(tree)
            if not rep:
                rep.path = f"#{i}:{rep.path}"
                return rep
            order += rep.order
        return TreeReport(True, order=order)

    order = 0
    for path, nd in t.splits():
        order += 1
        if not (0 < nd.lam < 1):
            return TreeReport(False, order, path, "lambda in (0,1)", nd.lam)
        expect = nd.lam * nd.left.bary + (1 - nd.lam) * nd.right.bary
        if not close(expect, nd.point):
            diff = expect - nd.point
            return TreeReport(False, order, path, "barycenter", max(abs(e) for e in diff.entries))
        if not is_rank_one(nd.left.bary - nd.right.bary):
            return TreeReport(False, order, path, "rank-one", det(nd.left.bary - nd.right.bary))
    return TreeReport(True, order=order)


def flatten(t: Union[SplittingTree, MeasureForest]) -> AtomicMeasure:
    if isinstance(t, MeasureForest):
        return mix([(w, flatten(tree)) for w, tree in t.components])
    return AtomicMeasure(list((X, w) for w, X in t.leaves()))


# -- Jensen checks --------------------------------------------------------

@dataclass
class JensenReport:
    ok: bool
    global_margin: Scalar
    min_margin: Scalar
    violations: List[Tuple[str, Scalar]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def _violates(margin, fval) -> bool:
    if is_exact(margin):
        return margin < 0
    return margin < -JENSEN_TOL * (1 + abs(float(fval)))


def jensen_check(t: Union[SplittingTree, MeasureForest], f: Callable[[Mat2], Scalar]) -> JensenReport:
    """Verify f(point) <= lam f(left) + (1-lam) f(right) at every split.

    Also reports the global margin sum_leaves w f(X) - f(root), which is the
    quantity a laminate inequality is about.
    """
    trees = t.components if isinstance(t, MeasureForest) else [(Fraction(1), t)]
    violations = []
    min_margin = None
    cache = {}

    def F(X):
        if X not in cache:
            cache[X] = f(X)
        return cache[X]

    for i, (_, tree) in enumerate(trees):
        for path, nd in tree.splits():
            fp = F(nd.point)
            m = nd.lam * F(nd.left.bary) + (1 - nd.lam) * F(nd.right.bary) - fp
            min_margin = m if min_margin is None or m < min_margin else min_margin
            if _violates(m, fp):
                violations.append((f"#{i}:{path}" if isinstance(t, MeasureForest) else path, m))
    m = flatten(t)
    root = t.bary
    g = sum((w * F(X) for X, w in m.atoms), Fraction(0)) - F(root)
    if min_margin is None:
        min_margin = Fraction(0)
    ok = not violations and not _violates(g, F(root))
    return JensenReport(ok, g, min_margin, violations)


# -- symmetric measures on the cube ---------------------------------------

def sign_class(eps: Sequence[int]) -> int:
    """+1 for patterns with an even number of minus signs (the alpha class)."""
    p = 1
    for e in eps:
        p *= e
    return p


def cube_weights(m: AtomicMeasure, vertices) -> dict:
    """Weights of ``m`` per sign pattern; ``vertices`` maps eps -> Mat2.

    Raises if the vertices are not pairwise distinct or ``m`` has mass off them.
    """
    pts = list(vertices.values())
    for X, Y in itertools.combinations(pts, 2):
        if close(X, Y):
            raise ValueError("cube vertices are not distinct")
    out = {eps: m.weight(X) for eps, X in vertices.items()}
    if sum(out.values(), Fraction(0)) != m.total():
        raise ValueError("measure has mass outside the cube vertices")
    return out


def is_symmetric(m: AtomicMeasure, frame) -> Tuple[bool, Optional[Scalar], Optional[Scalar]]:
    """Whether ``m`` has weight alpha on every even pattern and beta on every odd one,
    with alpha + beta = 1/4.  Returns (flag, alpha, beta).
    """
    w = cube_weights(m, frame.vertices())
    alphas = {v for e, v in w.items() if sign_class(e) > 0}
    betas = {v for e, v in w.items() if sign_class(e) < 0}
    if len(alphas) != 1 or len(betas) != 1:
        return False, None, None
    alpha, beta = alphas.pop(), betas.pop()
    return alpha + beta == Fraction(1, 4), alpha, beta


def symmetric_from_partial(m: AtomicMeasure, frame) -> bool:
    """Check nu(+--) = nu(-+-) = nu(--+) and conclude full symmetry.

    For a measure on the cube with barycenter 0, vanishing determinant moment
    and positive frame coefficients, the three equal masses force the
    symmetric pattern.  The conclusion is verified, not assumed.
    """
    if not (frame.a > 0 and frame.b > 0 and frame.c > 0):
        raise ValueError("frame coefficients must be positive")
    # the hypothesis is read in the sign-normalised labelling
    w = cube_weights(m, frame.normalized_vertices())
    r1, r2 = pc_constraints_check(m)
    if r1 != 0 or r2 != 0:
        raise NotSymmetricError(f"moment constraints fail: residuals {r1}, {r2}")
    if not (w[(1, -1, -1)] == w[(-1, 1, -1)] == w[(-1, -1, 1)]):
        raise NotSymmetricError("hypothesis nu(+--) = nu(-+-) = nu(--+) fails")
    ok, _, _ = is_symmetric(m, frame)
    if not ok:
        raise AssertionError("symmetry conclusion failed on a measure satisfying the hypothesis")
    return True
