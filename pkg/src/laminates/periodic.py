"""Young-measure weights of periodic sawtooth deformations on the 2-torus.

A deformation ``u(x) = sum_i a_i h(x.n_i + c_i)`` has gradient
``sum_i h'(x.n_i + c_i) a_i (x) n_i`` with every slope in {-1, +1}.  The
induced measure puts weight nu_eps on the vertex X_eps = sum_i eps_i C_i of the
rank-one hypercube, where nu_eps is the area of the set of x in [0,1)^2 whose
slope pattern is eps.

:func:`exact_weights` computes these areas exactly by cutting the unit square
along every line where some slope changes sign.  :func:`mc_weights` is the
sampling oracle.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Sequence, Tuple

import numpy as np

from .mat2 import Mat2, Scalar, Vec2, as_scalar, tensor

Sign = Tuple[int, ...]
Point = Tuple[Fraction, Fraction]

# Monte-Carlo samples are drawn in fixed-size chunks, each with its own
# stream spawned from the seed, so the result never depends on ``workers``.
MC_CHUNK = 1 << 16


def sawtooth(t: Scalar) -> Scalar:
    """The 1-periodic tent h with h(t) = t on [0, 1/2] and 1 - t on [1/2, 1]."""
    r = t - math.floor(t)
    return r if 2 * r <= 1 else 1 - r


def sawtooth_slope(t: Scalar) -> int:
    """h'(t): +1 on (0, 1/2), -1 on (1/2, 1) mod 1.

    Returns 0 at the breakpoints t = 0, 1/2 (mod 1), where h is not
    differentiable.  This set has measure zero, so callers that integrate the
    slope never need it; a 0 keeps such a query from passing as a real sign.
    """
    r2 = 2 * (t - math.floor(t))
    if r2 == 0 or r2 == 1:
        return 0
    return 1 if r2 < 1 else -1


@dataclass(frozen=True)
class SawtoothMode:
    amplitude: Vec2
    frequency: Tuple[int, int]
    phase: Scalar = Fraction(0)

    def __post_init__(self):
        k, l = self.frequency
        if int(k) != k or int(l) != l:
            raise ValueError(f"frequency must be integer, got {self.frequency}")
        if k == 0 and l == 0:
            raise ValueError("frequency must be nonzero")
        object.__setattr__(self, "frequency", (int(k), int(l)))

    @property
    def edge(self) -> Mat2:
        """The rank-one side C_i = a_i (x) n_i."""
        return tensor(self.amplitude, Vec2(Fraction(self.frequency[0]), Fraction(self.frequency[1])))


@dataclass(frozen=True)
class PeriodicDeformation:
    modes: Tuple[SawtoothMode, ...]

    def __post_init__(self):
        object.__setattr__(self, "modes", tuple(self.modes))
        if not self.modes:
            raise ValueError("need at least one mode")

    @property
    def N(self) -> int:
        return len(self.modes)

    @classmethod
    def from_frequencies(cls, freqs, phases=None, amplitudes=None) -> "PeriodicDeformation":
        """Convenience constructor; amplitudes default to a = n."""
        phases = phases if phases is not None else [0] * len(freqs)
        modes = []
        for i, (n, c) in enumerate(zip(freqs, phases)):
            a = amplitudes[i] if amplitudes is not None else n
            modes.append(SawtoothMode(Vec2(as_scalar(a[0]), as_scalar(a[1])), tuple(n), as_scalar(c)))
        return cls(tuple(modes))

    def collinear_pairs(self) -> List[Tuple[int, int]]:
        out = []
        for i, j in itertools.combinations(range(self.N), 2):
            (k1, l1), (k2, l2) = self.modes[i].frequency, self.modes[j].frequency
            if k1 * l2 - l1 * k2 == 0:
                out.append((i, j))
        return out


@dataclass
class SignPatternMeasure:
    """Probability weights indexed by sign patterns eps in {-1,+1}^N."""

    N: int
    weights: Dict[Sign, Scalar] = field(default_factory=dict)

    def __getitem__(self, eps) -> Scalar:
        if isinstance(eps, str):
            eps = parse_sign(eps)
        return self.weights.get(tuple(eps), Fraction(0))

    def total(self) -> Scalar:
        return sum(self.weights.values(), Fraction(0))

    def patterns(self) -> Iterator[Sign]:
        return itertools.product((1, -1), repeat=self.N)

    def as_strings(self) -> Dict[str, Scalar]:
        return {sign_str(e): self[e] for e in self.patterns()}


def sign_str(eps: Sequence[int]) -> str:
    return "".join("+" if e > 0 else "-" for e in eps)


def parse_sign(s: str) -> Sign:
    out = []
    for ch in s:
        if ch == "+":
            out.append(1)
        elif ch in "-−":
            out.append(-1)
        else:
            raise ValueError(f"bad sign character {ch!r} in {s!r}")
    return tuple(out)


# -- exact arrangement ----------------------------------------------------

def _reduce_phase(c: Scalar) -> Scalar:
    return c - math.floor(c)


def _clip(poly: List[Point], g) -> Tuple[List[Point], List[Point]]:
    """Split a convex polygon by the affine function g into (g <= 0, g >= 0)."""
    below, above = [], []
    n = len(poly)
    for idx in range(n):
        p, q = poly[idx], poly[(idx + 1) % n]
        gp, gq = g(p), g(q)
        if gp <= 0:
            below.append(p)
        if gp >= 0:
            above.append(p)
        if (gp < 0 < gq) or (gq < 0 < gp):
            s = gp / (gp - gq)
            x = (p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1]))
            below.append(x)
            above.append(x)
    return below, above


def _area(poly: Sequence[Point]) -> Fraction:
    s = Fraction(0)
    n = len(poly)
    for i in range(n):
        (x0, y0), (x1, y1) = poly[i], poly[(i + 1) % n]
        s += x0 * y1 - x1 * y0
    return abs(s) / 2


def torus_cells(d: PeriodicDeformation) -> List[Tuple[List[Point], Sign]]:
    """Convex cells of [0,1]^2 on which every slope h'(x.n_i + c_i) is constant.

    Each cell is returned with its sign pattern.  Cells are cut along the
    lines x.n_i + c_i = m/2 for every integer m; the sign of a cell is read off
    its vertex average, which lies strictly inside.
    """
    one, zero = Fraction(1), Fraction(0)
    cells = [[(zero, zero), (one, zero), (one, one), (zero, one)]]
    for mode in d.modes:
        k, l = mode.frequency
        c = _reduce_phase(as_scalar(mode.phase))
        if isinstance(c, float):
            raise TypeError("exact weights need rational phases")
        new_cells = []
        for poly in cells:
            vals = [k * x + l * y + c for x, y in poly]
            lo, hi = min(vals), max(vals)
            m = math.floor(2 * lo) + 1
            rest = poly
            while Fraction(m, 2) < hi:
                cut = Fraction(m, 2)
                below, rest = _clip(rest, lambda p, cut=cut: k * p[0] + l * p[1] + c - cut)
                if len(below) >= 3 and _area(below) > 0:
                    new_cells.append(below)
                m += 1
            if len(rest) >= 3 and _area(rest) > 0:
                new_cells.append(rest)
        cells = new_cells

    out = []
    for poly in cells:
        cx = sum(p[0] for p in poly) / len(poly)
        cy = sum(p[1] for p in poly) / len(poly)
        eps = []
        for mode in d.modes:
            k, l = mode.frequency
            s = sawtooth_slope(k * cx + l * cy + as_scalar(mode.phase))
            assert s != 0, "cell centroid landed on a breakpoint"
            eps.append(s)
        out.append((poly, tuple(eps)))
    return out


def exact_weights(d: PeriodicDeformation) -> SignPatternMeasure:
    """Exact nu_eps as rational areas; independent of the amplitudes."""
    w: Dict[Sign, Fraction] = {e: Fraction(0) for e in itertools.product((1, -1), repeat=d.N)}
    for poly, eps in torus_cells(d):
        w[eps] += _area(poly)
    total = sum(w.values())
    assert total == 1, f"cell areas sum to {total}"
    return SignPatternMeasure(d.N, w)


# -- Monte Carlo ---------------------------------------------------------

def _mc_chunk(freqs: np.ndarray, phases: np.ndarray, seq: np.random.SeedSequence, n: int) -> np.ndarray:
    rng = np.random.Generator(np.random.Philox(seq))
    x = rng.random((n, 2))
    t = x @ freqs.T + phases
    frac = t - np.floor(t)
    neg = (frac >= 0.5).astype(np.int64)
    code = neg @ (1 << np.arange(freqs.shape[0]))
    return np.bincount(code, minlength=1 << freqs.shape[0])


def mc_weights(d: PeriodicDeformation, samples: int, seed: int, workers: int = 1) -> SignPatternMeasure:
    """Empirical sign-pattern frequencies from uniform samples on the torus."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    freqs = np.array([m.frequency for m in d.modes], dtype=float)
    phases = np.array([float(m.phase) for m in d.modes])
    n_chunks = -(-samples // MC_CHUNK)
    seqs = np.random.SeedSequence(seed).spawn(n_chunks)
    sizes = [MC_CHUNK] * (n_chunks - 1) + [samples - MC_CHUNK * (n_chunks - 1)]
    jobs = list(zip(seqs, sizes))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            counts = list(pool.map(lambda js: _mc_chunk(freqs, phases, *js), jobs))
    else:
        counts = [_mc_chunk(freqs, phases, s, n) for s, n in jobs]
    total = np.sum(counts, axis=0)
    w = {}
    for eps in itertools.product((1, -1), repeat=d.N):
        code = sum(1 << i for i, e in enumerate(eps) if e < 0)
        w[eps] = float(total[code]) / samples
    return SignPatternMeasure(d.N, w)


# -- closed forms --------------------------------------------------------

def correlation_integral(k: int, l: int, c: Scalar) -> Scalar:
    """Integral over (0,1)^2 of f(k x1 + l x2 + c), f = +1 on [0,1), -1 on [1,2), 2-periodic.

    Zero when k or l is even.  For k, l odd it is the 2-periodic function
    2c(c-1)/(kl) on [0,1), extended by I(c+1) = -I(c); its maximum is 1/(2kl).
    """
    if k <= 0 or l <= 0:
        raise ValueError("k and l must be positive")
    if k % 2 == 0 or l % 2 == 0:
        return Fraction(0) if not isinstance(c, float) else 0.0
    c = c - 2 * math.floor(c / 2)
    if c < 1:
        return 2 * c * (c - 1) / (k * l)
    return -2 * (c - 1) * (c - 2) / (k * l)


def support_points(d: PeriodicDeformation) -> Dict[Sign, Mat2]:
    """Vertex map eps -> X_eps = sum_i eps_i a_i (x) n_i of the rank-one hypercube."""
    edges = [m.edge for m in d.modes]
    out = {}
    for eps in itertools.product((1, -1), repeat=d.N):
        X = Mat2.zero()
        for e, C in zip(eps, edges):
            X = X + e * C
        out[eps] = X
    return out
