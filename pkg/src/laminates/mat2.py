"""2x2 matrix algebra over exact rationals or floats.

Entries are plain Python numbers: ``fractions.Fraction`` (or ``int``) for
exact work, ``float`` for sampling code.  Mixing the two follows Python's own
promotion rules, so any float entry turns the result into a float.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

Scalar = Union[Fraction, int, float]

# relative tolerance for float rank-one tests: |det X| <= TOL * |X|_F^2
TOL = 1e-9


def as_scalar(v) -> Scalar:
    """Coerce ``v`` to a Fraction unless it is a float."""
    if isinstance(v, float):
        return v
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, Rational):
        return Fraction(v)
    raise TypeError(f"not a scalar: {v!r}")


def is_exact(v) -> bool:
    return isinstance(v, Rational)


@dataclass(frozen=True)
class Vec2:
    v1: Scalar
    v2: Scalar

    def __iter__(self):
        yield self.v1
        yield self.v2

    def dot(self, other: "Vec2") -> Scalar:
        return self.v1 * other.v1 + self.v2 * other.v2

    def perp(self) -> "Vec2":
        """Rotation by +90 degrees, ``(x, y) -> (-y, x)``."""
        return Vec2(-self.v2, self.v1)


@dataclass(frozen=True)
class Mat2:
    m11: Scalar
    m12: Scalar
    m21: Scalar
    m22: Scalar

    def __post_init__(self):
        for e in self.entries:
            if isinstance(e, float) and not math.isfinite(e):
                raise ValueError("matrix entries must be finite")

    @classmethod
    def of(cls, rows) -> "Mat2":
        (p, q), (r, s) = rows
        return cls(as_scalar(p), as_scalar(q), as_scalar(r), as_scalar(s))

    @classmethod
    def zero(cls) -> "Mat2":
        z = Fraction(0)
        return cls(z, z, z, z)

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(Fraction(1), Fraction(0), Fraction(0), Fraction(1))

    @property
    def entries(self) -> tuple:
        return (self.m11, self.m12, self.m21, self.m22)

    @property
    def rows(self) -> tuple:
        return ((self.m11, self.m12), (self.m21, self.m22))

    @property
    def exact(self) -> bool:
        return all(is_exact(e) for e in self.entries)

    def __add__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.m11 + o.m11, self.m12 + o.m12, self.m21 + o.m21, self.m22 + o.m22)

    def __sub__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.m11 - o.m11, self.m12 - o.m12, self.m21 - o.m21, self.m22 - o.m22)

    def __neg__(self) -> "Mat2":
        return Mat2(-self.m11, -self.m12, -self.m21, -self.m22)

    def __mul__(self, s) -> "Mat2":
        if isinstance(s, Mat2):
            return NotImplemented
        return Mat2(s * self.m11, s * self.m12, s * self.m21, s * self.m22)

    __rmul__ = __mul__

    def __truediv__(self, s) -> "Mat2":
        return Mat2(self.m11 / s, self.m12 / s, self.m21 / s, self.m22 / s)

    def __matmul__(self, o: "Mat2") -> "Mat2":
        return Mat2(
            self.m11 * o.m11 + self.m12 * o.m21,
            self.m11 * o.m12 + self.m12 * o.m22,
            self.m21 * o.m11 + self.m22 * o.m21,
            self.m21 * o.m12 + self.m22 * o.m22,
        )

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def to_float(self) -> "Mat2":
        return Mat2(*(float(e) for e in self.entries))

    def frobenius(self) -> float:
        return math.sqrt(sum(float(e) ** 2 for e in self.entries))

    def __repr__(self) -> str:
        return "Mat2([[%s, %s], [%s, %s]])" % tuple(str(e) for e in self.entries)


def det(X: Mat2) -> Scalar:
    return X.m11 * X.m22 - X.m12 * X.m21


def cof(X: Mat2) -> Mat2:
    """Cofactor matrix, normalised so that det(X+Y) = det X + <cof X, Y> + det Y."""
    return Mat2(X.m22, -X.m21, -X.m12, X.m11)


def inner(X: Mat2, Y: Mat2) -> Scalar:
    """Hilbert-Schmidt product sum_ij X_ij Y_ij."""
    return X.m11 * Y.m11 + X.m12 * Y.m12 + X.m21 * Y.m21 + X.m22 * Y.m22


def polar(X: Mat2, Y: Mat2) -> Scalar:
    """Symmetric bilinear form of the determinant, <cof X, Y>."""
    return inner(cof(X), Y)


def tensor(a: Vec2, n: Vec2) -> Mat2:
    """Outer product a n^T."""
    return Mat2(a.v1 * n.v1, a.v1 * n.v2, a.v2 * n.v1, a.v2 * n.v2)


def is_rank_one(X: Mat2, tol: float = TOL) -> bool:
    if X.exact:
        return not X.is_zero() and det(X) == 0
    fro2 = sum(float(e) ** 2 for e in X.entries)
    if fro2 == 0.0:
        return False
    return abs(float(det(X))) <= tol * fro2


def close(X: Mat2, Y: Mat2, tol: float = TOL) -> bool:
    """Exact equality for exact matrices, entrywise relative closeness otherwise."""
    if X.exact and Y.exact:
        return X == Y
    scale = 1.0 + max(abs(float(e)) for e in X.entries + Y.entries)
    return all(abs(float(p) - float(q)) <= tol * scale for p, q in zip(X.entries, Y.entries))


def combo(weights: Iterable[Scalar], points: Iterable[Mat2]) -> Mat2:
    """Linear combination sum_i w_i X_i."""
    acc = Mat2.zero()
    for w, X in zip(weights, points):
        acc = acc + w * X
    return acc


def lerp(lam: Scalar, X: Mat2, Y: Mat2) -> Mat2:
    """lam*X + (1-lam)*Y."""
    return lam * X + (1 - lam) * Y


# J = diag(1, -1) flips the sign of the determinant and preserves rank.
J = Mat2(Fraction(1), Fraction(0), Fraction(0), Fraction(-1))
