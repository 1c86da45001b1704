"""Shared generators and the acceptance summary printer."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest

from laminates.mat2 import Mat2, Vec2, tensor

ACCEPTANCE_RESULTS: dict = {}


def rand_vec(rng: random.Random, lo: int = -2, hi: int = 2) -> Vec2:
    while True:
        v = Vec2(Fraction(rng.randint(lo, hi)), Fraction(rng.randint(lo, hi)))
        if v.v1 or v.v2:
            return v


def rand_rank_one(rng: random.Random) -> Mat2:
    """u (x) v with integer vectors in [-2, 2]^2, so entries lie in [-4, 4]."""
    return tensor(rand_vec(rng), rand_vec(rng))


def rand_rational(rng: random.Random, num: int = 8, den: int = 8) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def rand_mat(rng: random.Random) -> Mat2:
    return Mat2(*(rand_rational(rng) for _ in range(4)))


def rand_invertible(rng: random.Random) -> Mat2:
    from laminates.mat2 import det

    while True:
        A = Mat2(*(Fraction(rng.randint(-3, 3)) for _ in range(4)))
        if det(A) != 0:
            return A


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        ok, line = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {line}")


@pytest.fixture
def rng():
    return random.Random(20240611)
