"""Rank-one convex test functions and inequality checks.

No finite family of test functions decides laminate status; that is what the
splitting certificates are for.  The battery here is a smoke test run on top
of them: it catches construction bugs, not counterexamples.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .mat2 import Mat2, Scalar, Vec2, det, inner, is_exact, tensor
from .measures import AtomicMeasure, barycenter, jensen_check, validate_tree

# midpoint-convexity slack for float samples, relative to the values involved
ROC_TOL = 1e-9


@dataclass(frozen=True)
class TestFunction:
    __test__ = False  # not a pytest class

    tag: str
    evaluate: Callable[[Mat2], Scalar]
    exact: bool = False
    params: tuple = ()

    def __call__(self, X: Mat2) -> Scalar:
        return self.evaluate(X)


def frobenius() -> TestFunction:
    return TestFunction("convex-norm", lambda X: X.frobenius())


def max_row_norm() -> TestFunction:
    return TestFunction("convex-rownorm",
                        lambda X: max(math.hypot(float(X.m11), float(X.m12)), math.hypot(float(X.m21), float(X.m22))))


def plus_det() -> TestFunction:
    return TestFunction("plus-det", det, exact=True)


def minus_det() -> TestFunction:
    return TestFunction("minus-det", lambda X: -det(X), exact=True)


def max_affine(forms: Sequence[Tuple[Mat2, Fraction, Fraction]]) -> TestFunction:
    """max_k <A_k, X> + beta_k det X + gamma_k: polyconvex, hence rank-one convex."""
    forms = tuple(forms)

    def f(X):
        d = det(X)
        return max(inner(A, X) + be * d + ga for A, be, ga in forms)

    return TestFunction("polyconvex-max-affine", f, exact=True, params=forms)


def _rand_rational(rng: np.random.Generator) -> Fraction:
    return Fraction(int(rng.integers(-8, 9)), int(rng.integers(1, 9)))


def battery(seed: int = 0, size: int = 24) -> List[TestFunction]:
    """Frobenius norm, max row norm, +det, -det and ``size - 4`` random max-affine functions."""
    if size < 4:
        raise ValueError("battery size must be at least 4")
    rng = np.random.default_rng(seed)
    out = [frobenius(), max_row_norm(), plus_det(), minus_det()]
    for _ in range(size - 4):
        n = int(rng.integers(3, 7))
        forms = []
        for _ in range(n):
            A = Mat2(*(_rand_rational(rng) for _ in range(4)))
            forms.append((A, _rand_rational(rng), _rand_rational(rng)))
        out.append(max_affine(forms))
    return out


@dataclass
class Violation:
    A: Mat2
    a: Vec2
    n: Vec2
    t: float
    margin: float


def roc_sampled(f: TestFunction, trials: int, seed: int, scale: float = 2.0) -> Optional[Violation]:
    """Midpoint convexity of f along random rank-one lines; None if no violation is found."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        A = Mat2(*(float(v) for v in rng.normal(0, scale, 4)))
        a = Vec2(*(float(v) for v in rng.normal(0, 1, 2)))
        n = Vec2(*(float(v) for v in rng.normal(0, 1, 2)))
        t = float(rng.uniform(0, scale))
        D = t * tensor(a, n)
        f0, fp, fm = float(f(A)), float(f(A + D)), float(f(A - D))
        margin = 0.5 * (fp + fm) - f0
        if margin < -ROC_TOL * (1 + abs(f0) + abs(fp) + abs(fm)):
            return Violation(A, a, n, t, margin)
    return None


def check_inequality(m: AtomicMeasure, f: TestFunction) -> Scalar:
    """sum_X w f(X) - f(barycenter)."""
    vals = sum((w * f(X) for X, w in m.atoms), Fraction(0))
    return vals - f(barycenter(m))


@dataclass
class SuiteReport:
    margins: List[Tuple[str, Scalar]] = field(default_factory=list)
    jensen: List[Tuple[str, Scalar]] = field(default_factory=list)
    certificate_valid: bool = False
    order: int = 0
    case: str = ""

    @property
    def min_margin(self) -> float:
        return min(float(m) for _, m in self.margins)

    @property
    def ok(self) -> bool:
        return self.certificate_valid and all(_nonneg(m) for _, m in self.margins + self.jensen)


def _nonneg(m) -> bool:
    return m >= 0 if is_exact(m) else m >= -ROC_TOL


def main_theorem_suite(frame, fns: Optional[List[TestFunction]] = None, seed: int = 0) -> SuiteReport:
    """Check the 1/16-3/16 inequality on a frame's cube two ways.

    The battery is evaluated on the explicit measure, and independently the
    certificate from :func:`symmetric_laminate` is validated and Jensen-checked
    split by split.
    """
    from .cube import symmetric_laminate, symmetric_measure

    fns = fns if fns is not None else battery(seed)
    m = symmetric_measure(frame, Fraction(1, 16))
    rep = SuiteReport()
    rep.margins = [(f.tag, check_inequality(m, f)) for f in fns]
    cert = symmetric_laminate(frame, Fraction(1, 3))
    rep.case = cert.case
    rep.certificate_valid = bool(validate_tree(cert.forest)) and cert.flattened == m
    rep.order = cert.forest.order
    for f in fns:
        jr = jensen_check(cert.forest, f)
        worst = min(jr.min_margin, jr.global_margin)
        rep.jensen.append((f.tag, worst))
    return rep
