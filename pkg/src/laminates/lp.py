"""Exact rational phase-one simplex for small feasibility problems."""
from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence


def feasible_point(A: Sequence[Sequence], b: Sequence) -> Optional[List[Fraction]]:
    """Find x >= 0 with A x = b, or return None.

    Phase one of the simplex method on the tableau with one artificial
    variable per row, using Bland's rule so degenerate pivots cannot cycle.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    rows = []
    for i in range(m):
        r = [Fraction(v) for v in A[i]] + [Fraction(b[i])]
        if r[-1] < 0:
            r = [-v for v in r]
        rows.append(r)
    # columns: x_0..x_{n-1}, artificials a_0..a_{m-1}, rhs
    T = [r[:n] + [Fraction(int(i == j)) for j in range(m)] + [r[n]] for i, r in enumerate(rows)]
    basis = [n + i for i in range(m)]
    width = n + m
    # objective: minimise sum of artificials; reduced costs c_j - c_B B^-1 a_j
    cost = [Fraction(0)] * n + [Fraction(1)] * m + [Fraction(0)]
    obj = cost[:]
    for i in range(m):
        obj = [o - t for o, t in zip(obj, T[i])]

    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = T[i][-1] / T[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            # cannot happen: phase one objective is bounded below by 0
            raise RuntimeError("unbounded phase-one problem")
        piv = T[leave][enter]
        T[leave] = [v / piv for v in T[leave]]
        for i in range(m):
            if i != leave and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [v - f * p for v, p in zip(T[i], T[leave])]
        f = obj[enter]
        obj = [v - f * p for v, p in zip(obj, T[leave])]
        basis[leave] = enter

    if -obj[-1] != 0:
        return None
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = T[i][-1]
    return x
