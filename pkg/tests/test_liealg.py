"""Constructors, membership, bracket and the fifteen formula checks."""

from __future__ import annotations

import random

import pytest

from imalg.coordalg import Letter, make_coordinate_algebra
from imalg.liealg import (DimensionError, MembershipError, SoElement,
                          decompose, e_bl, e_hort, e_mid, e_ul, e_ur, e_vert,
                          h_diag, mat_bracket, membership_check,
                          random_coordinate, so_zero, verify_bracket_lemmas)
from imalg.rootsys import AffinizationSpec, GradingDegree, root
from imalg.scalars import SQRT2, QSqrt2

THETA = root([1, -1, 0])
OMEGA = root([1, 1, 0])
MOMEGA = root([-1, -1, 0])


def standard_ctx():
    spec = AffinizationSpec(3, ((THETA, 1), (OMEGA, 1), (MOMEGA, 1)))
    return make_coordinate_algebra(spec)


def test_e_vert_at_r():
    ctx = standard_ctx()
    m = e_vert(3, ctx.scalar(SQRT2), 3)
    assert set(m.entries) == {(3, 4), (4, 5)}
    assert m.entry(3, 4) == ctx.scalar(SQRT2)
    assert m.entry(4, 5) == ctx.scalar(-SQRT2)


def test_e_ul_diagonal():
    ctx = standard_ctx()
    m = e_ul(1, 1, ctx.one(), 3)
    assert set(m.entries) == {(1, 1), (7, 7)}
    assert m.entry(7, 7) == -ctx.one()
    assert h_diag(2, 2, ctx, 3) == e_ul(2, 2, ctx.scalar(2), 3)


def test_e_ur_diagonal_merges_to_single_position():
    ctx = standard_ctx()
    y = ctx.generator("y", THETA)
    m = e_ur(2, 2, y, 3)
    # the two defining terms land on the same position and combine
    assert set(m.entries) == {(2, 6)}
    assert m.entry(2, 6) == y - y.involution()
    # eta-fixed coordinates vanish on the upper-right diagonal
    assert e_ur(2, 2, ctx.generator("x", OMEGA), 3).is_zero


def test_membership_check():
    ctx = standard_ctx()
    for m in [
        e_vert(1, ctx.generator("y", THETA), 3),
        e_hort(2, ctx.generator("x", OMEGA), 3),
        e_ul(1, 3, ctx.one(), 3),
        e_ur(2, 3, ctx.generator("z", THETA), 3),
        e_bl(1, 2, ctx.generator("x", MOMEGA), 3),
        so_zero(3, ctx),
    ]:
        assert membership_check(m)
    lone = SoElement(3, ctx, {(1, 2): ctx.one()}, check=False)
    assert not membership_check(lone)
    with pytest.raises(MembershipError):
        SoElement(3, ctx, {(1, 2): ctx.one()})


def test_constructor_index_validation():
    ctx = standard_ctx()
    with pytest.raises(DimensionError):
        e_vert(4, ctx.one(), 3)
    with pytest.raises(DimensionError):
        e_ul(0, 2, ctx.one(), 3)


def test_bracket_examples():
    ctx = standard_ctx()
    rng = random.Random(12)
    r = 3
    a = random_coordinate(ctx, rng)
    b = random_coordinate(ctx, rng)
    A = e_vert(1, a, r)
    assert mat_bracket(A, A).is_zero
    # [Evert_k(a), Evert_p(b)] = Eur_{k,p}(-a·eta(b))
    got = mat_bracket(e_vert(1, a, r), e_vert(2, b, r))
    assert got == e_ur(1, 2, -(a * b.involution()), r)
    # [Eur, Eur] = 0
    got = mat_bracket(e_ur(1, 2, a, r), e_ur(2, 3, b, r))
    assert got.is_zero


def test_vert_hort_diagonal_correction_term():
    ctx = standard_ctx()
    rng = random.Random(77)
    r = 3
    for _ in range(10):
        a = random_coordinate(ctx, rng)
        b = random_coordinate(ctx, rng)
        k = rng.randint(1, r)
        got = mat_bracket(e_vert(k, a, r), e_hort(k, b, r))
        want = e_ul(k, k, a * b, r) + e_mid(
            -(b * a) + a.involution() * b.involution(), r)
        assert got == want


def test_decompose():
    ctx = standard_ctx()
    a = ctx.generator("y", THETA)
    b = ctx.generator("x", OMEGA)
    dec = decompose(e_ul(1, 2, a, 3))
    assert dec.is_homogeneous
    assert dec.degree == GradingDegree((1, -1, 0))
    dec = decompose(e_vert(1, a, 3))
    assert dec.degree == GradingDegree((1, 0, 0))
    dec = decompose(e_hort(2, a, 3))
    assert dec.degree == GradingDegree((0, -1, 0))
    dec = decompose(e_ur(1, 3, a, 3))
    assert dec.degree == GradingDegree((1, 0, 1))
    dec = decompose(e_bl(1, 3, a, 3))
    assert dec.degree == GradingDegree((-1, 0, -1))
    two = e_ul(1, 2, a, 3) + e_vert(1, b, 3)
    dec = decompose(two)
    assert not dec.is_homogeneous
    assert set(dec.parts) == {GradingDegree((1, -1, 0)),
                              GradingDegree((1, 0, 0))}
    total = so_zero(3, ctx)
    for part in dec.parts.values():
        total = total + part
    assert total == two


def test_lie_axioms_random_homogeneous():
    ctx = standard_ctx()
    rng = random.Random(314159)
    r = 3
    ctors = [
        lambda a: e_vert(rng.randint(1, r), a, r),
        lambda a: e_hort(rng.randint(1, r), a, r),
        lambda a: e_ul(rng.randint(1, r), rng.randint(1, r), a, r),
        lambda a: e_ur(rng.randint(1, r), rng.randint(1, r), a, r),
        lambda a: e_bl(rng.randint(1, r), rng.randint(1, r), a, r),
    ]

    def rand_elem():
        return rng.choice(ctors)(random_coordinate(ctx, rng))

    for _ in range(60):
        A, B, C = rand_elem(), rand_elem(), rand_elem()
        AB = mat_bracket(A, B)
        assert membership_check(AB)
        assert AB == -mat_bracket(B, A)
        jac = (mat_bracket(A, mat_bracket(B, C))
               + mat_bracket(B, mat_bracket(C, A))
               + mat_bracket(C, mat_bracket(A, B)))
        assert jac.is_zero


def test_grading_additivity_of_brackets():
    ctx = standard_ctx()
    rng = random.Random(2718)
    r = 3
    ctors = [
        lambda a: e_vert(rng.randint(1, r), a, r),
        lambda a: e_hort(rng.randint(1, r), a, r),
        lambda a: e_ul(rng.randint(1, r), rng.randint(1, r), a, r),
        lambda a: e_ur(rng.randint(1, r), rng.randint(1, r), a, r),
        lambda a: e_bl(rng.randint(1, r), rng.randint(1, r), a, r),
    ]
    for _ in range(80):
        A = rng.choice(ctors)(random_coordinate(ctx, rng))
        B = rng.choice(ctors)(random_coordinate(ctx, rng))
        if A.is_zero or B.is_zero:
            continue
        da = decompose(A).degree
        db = decompose(B).degree
        out = mat_bracket(A, B)
        total = da + db
        if not total.in_delta_or_zero():
            assert out.is_zero
        elif not out.is_zero:
            dec = decompose(out)
            assert dec.is_homogeneous and dec.degree == total


def test_verify_bracket_lemmas_r3():
    ctx = standard_ctx()
    report = verify_bracket_lemmas(3, ctx, trials=30, seed=5)
    assert report["failed"] == 0
    lemmas = {rec["lemma"] for rec in report["records"]}
    assert len(lemmas) == 15


def test_render_row_major():
    ctx = standard_ctx()
    m = e_vert(1, ctx.one(), 3)
    text = m.render()
    assert text.index("(1,4)") < text.index("(4,7)")
    assert so_zero(3, ctx).render() == "0"
