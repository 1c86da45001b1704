import random
from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings, strategies as st

from laminates.cube import (FrameError, build_frame, case1_laminate, case2_laminate, degenerate_laminate,
                            lemma_p, rank_one_directions, symmetric_laminate, symmetric_measure,
                            uniform_laminate, witness_origin)
from laminates.mat2 import J, Mat2, det
from laminates.measures import (flatten, is_symmetric, jensen_check, pc_constraints_check,
                                symmetric_from_partial, validate_tree)

from conftest import rand_rank_one
from strategies import rank_ones

C1 = Mat2.of([[1, 0], [0, 0]])
C2 = Mat2.of([[0, 0], [0, 1]])
C3 = Mat2.of([[1, 1], [1, 1]])
EQUAL = (C1, C2, C3)  # a = b = c = 1


def frame_of_kind(kind, seed=0):
    rng = random.Random(seed)
    while True:
        fr = build_frame(rand_rank_one(rng), rand_rank_one(rng), rand_rank_one(rng))
        if fr.case() == kind:
            return fr


@settings(max_examples=80)
@given(rank_ones, rank_ones, rank_ones, st.tuples(*[st.integers(-2, 2)] * 3))
def test_normalisation_preserves_determinants_and_classes(A, B, C, v):
    fr = build_frame(A, B, C)
    x, y, z = v
    if not fr.degenerate:
        assert fr.a > 0 and fr.b > 0 and fr.c > 0
    # det of the original combination, up to the J sign
    orig = x * A + y * B + z * C
    s0, s1, s2 = fr.signs
    normal = fr.point(s0 * x, s1 * y, s2 * z)
    assert fr.to_original(normal) == orig
    assert det(normal) == fr.det_coords((s0 * x, s1 * y, s2 * z))
    # even flips keep every vertex in its class
    assert s0 * s1 * s2 == 1
    for eps, X in fr.normalized_vertices().items():
        assert X == fr.vertices()[tuple(e * s for e, s in zip(eps, fr.signs))]


def test_frame_rejects_full_rank_edges():
    with pytest.raises(FrameError):
        build_frame(Mat2.identity(), C2, C3)


def test_j_flip_is_recorded():
    fr = build_frame(C1, C2, J @ C3 @ J)
    rec = fr.record()
    assert set(rec) >= {"signs", "jflip", "coefficients", "raw_coefficients", "case"}
    assert fr.coeffs == (1, 1, 1) or fr.jflip


def test_equal_coefficients_landmark():
    fr = build_frame(*EQUAL)
    for axis in range(3):
        d = lemma_p(fr, axis)
        assert d.lam == F(1, 2)
        assert d.P == -(d.X0 + d.X1) / 2
        assert d.P1 == d.P2 == d.P3 == fr.point(F(-1, 3), F(-1, 3), F(-1, 3))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_lemma_waypoints_satisfy_their_rank_one_conditions(seed):
    fr = frame_of_kind("case1", seed)
    for axis in range(3):
        if fr.flip_dets()[axis] == 0:
            continue
        d = lemma_p(fr, axis)
        assert det(d.P - d.X1) == 0
        assert det(d.P1 - d.X2) == 0
        assert det(d.P2 - d.X3) == 0
        assert det(d.P3 - d.X2) == 0
        assert 0 < d.lam < 1


def test_rank_one_directions_lie_on_the_cone():
    fr = build_frame(*EQUAL)
    dirs = rank_one_directions(fr, 64)
    assert len(dirs) > 32
    assert all(det(D) == 0 and not D.is_zero() for D in dirs)


@pytest.mark.parametrize("seed", range(6))
def test_witness_trees_have_cube_leaves(seed):
    fr = frame_of_kind("case1", seed)
    verts = set(fr.normalized_vertices().values())
    for axis in range(3):
        w = witness_origin(fr, axis)
        assert validate_tree(w.tree)
        assert w.tree.bary == Mat2.zero()
        m = flatten(w.tree)
        assert pc_constraints_check(m) == (0, 0)
        assert all(fr.to_original(X) in verts for X in m.support())


def test_case1_certificate_on_equal_coefficients():
    fr = build_frame(*EQUAL)
    cert = case1_laminate(fr)
    assert cert.ratio == 3
    assert cert.flattened == symmetric_measure(fr, F(1, 16))
    assert symmetric_from_partial(cert.flattened, fr)


@pytest.mark.parametrize("seed", range(4))
def test_case2_certificates(seed):
    fr = frame_of_kind("case2", seed)
    cert = case2_laminate(fr)
    q, p, r = cert.roles
    a, b, c = fr.coef(q, p), fr.coef(q, r), fr.coef(p, r)
    assert b > a + c
    assert cert.ratio == 2 * a / c + (b + c - a) / a
    assert validate_tree(cert.forest)
    ok, alpha, beta = is_symmetric(cert.flattened, fr)
    assert ok and beta / alpha == cert.ratio


@pytest.mark.parametrize("alpha", [F(0), F(1, 32), F(1, 16), F(1, 8), F(3, 16), F(1, 4)])
def test_degenerate_frames_reach_every_weight(alpha):
    fr = frame_of_kind("degenerate", 3)
    cert = degenerate_laminate(fr, alpha)
    assert validate_tree(cert.forest)
    assert cert.flattened == symmetric_measure(fr, alpha)


@pytest.mark.parametrize("kind", ["case1", "case2", "degenerate"])
@pytest.mark.parametrize("ratio", [F(1, 3), F(1, 2), F(1), F(2), F(3)])
def test_symmetric_laminate_hits_the_target_ratio(kind, ratio):
    fr = frame_of_kind(kind, 11)
    cert = symmetric_laminate(fr, ratio)
    assert validate_tree(cert.forest)
    assert cert.forest.bary == Mat2.zero()
    ok, alpha, beta = is_symmetric(flatten(cert.forest), fr)
    assert ok and alpha / beta == ratio
    # degenerate frames reach every ratio directly, the others reflect for ratio > 1
    assert cert.mirrored == (ratio > 1 and kind != "degenerate")
    assert jensen_check(cert.forest, lambda X: X.frobenius()).ok


def test_target_ratio_range_is_enforced():
    fr = build_frame(*EQUAL)
    with pytest.raises(ValueError):
        symmetric_laminate(fr, F(1, 4))
    with pytest.raises(ValueError):
        symmetric_laminate(fr, 4)


def test_uniform_laminate_has_seven_splits():
    fr = build_frame(*EQUAL)
    t = uniform_laminate(fr)
    assert t.order == 7 and flatten(t) == symmetric_measure(fr, F(1, 8))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6), st.fractions(min_value=F(1, 3), max_value=3, max_denominator=12))
def test_random_frames_and_ratios(seed, ratio):
    rng = random.Random(seed)
    fr = build_frame(rand_rank_one(rng), rand_rank_one(rng), rand_rank_one(rng))
    try:
        fr.vertices()
    except ValueError:
        assume(False)
    cert = symmetric_laminate(fr, ratio)
    m = flatten(cert.forest)
    assert pc_constraints_check(m) == (0, 0)
    assert m == symmetric_measure(fr, ratio / (4 * (1 + ratio)))


def test_equal_pair_coefficients_make_the_first_two_waypoints_coincide():
    C3b = Mat2.of([[F(1, 2), F(1, 2)], [1, 1]])
    fr = build_frame(C1, C2, C3b)
    assert fr.coeffs == (1, 1, F(1, 2))
    d = lemma_p(fr, 0)
    assert d.rel[0] == d.rel[1]
    assert d.P1 == d.P2


@settings(max_examples=40)
@given(rank_ones, rank_ones, rank_ones,
       st.tuples(*[st.fractions(min_value=-3, max_value=3, max_denominator=5)] * 3))
def test_det_of_combinations_is_the_coefficient_form(A, B, C, v):
    fr = build_frame(A, B, C)
    x, y, z = v
    a, b, c = fr.raw_coeffs
    assert det(x * A + y * B + z * C) == a * x * y + b * x * z + c * y * z


@pytest.mark.parametrize("kind", ["case1", "case2", "degenerate"])
def test_null_lagrangians_have_zero_margin_on_certificates(kind):
    from laminates.verify import check_inequality, minus_det, plus_det

    cert = symmetric_laminate(frame_of_kind(kind, 21), F(2, 3))
    for f in (plus_det(), minus_det()):
        assert check_inequality(cert.flattened, f) == 0
        assert jensen_check(cert.forest, f).min_margin == 0
