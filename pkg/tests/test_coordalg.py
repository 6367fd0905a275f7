"""Rewriting, normal forms, ring operations and the involution."""

from __future__ import annotations

import random

import pytest

from imalg.coordalg import (GenId, Letter, make_coordinate_algebra,
                            render_word)
from imalg.rootsys import AffinizationSpec, root
from imalg.scalars import ONE, QSqrt2

THETA = root([1, -1, 0])
OMEGA = root([1, 1, 0])
MOMEGA = root([-1, -1, 0])


def standard_ctx():
    spec = AffinizationSpec(
        3, ((THETA, 1), (OMEGA, 1), (MOMEGA, 1)))
    return make_coordinate_algebra(spec)


def letter(ctx, kind, rt, copy=1, exp=1):
    return Letter(GenId(kind, rt, copy), exp)


def test_generator_table():
    ctx = standard_ctx()
    kinds = sorted((g.kind, tuple(g.root.coeffs)) for g in ctx.generators)
    assert kinds == [
        ("x", (-1, -1, 0)), ("x", (1, 1, 0)),
        ("y", (1, -1, 0)), ("z", (1, -1, 0)),
    ]


def test_omega_only_spec_has_only_cancellation():
    ctx = make_coordinate_algebra(AffinizationSpec(3, ((OMEGA, 1),)))
    assert len(ctx.generators) == 1
    assert len(ctx.rules) == 2  # x·x^-1 and x^-1·x
    assert all(rhs == () for rhs in ctx.rules.values())


def test_d_zero_spec_is_scalar_field():
    ctx = make_coordinate_algebra(AffinizationSpec(3))
    assert ctx.generators == []
    assert ctx.rules == {}
    assert ctx.one() + ctx.one() == ctx.scalar(2)


def test_mixing_rule_normal_forms():
    ctx = standard_ctx()
    y = letter(ctx, "y", THETA)
    x = letter(ctx, "x", OMEGA)
    z = letter(ctx, "z", THETA)
    xm = letter(ctx, "x", MOMEGA)
    assert ctx.normal_form((y, x)) == (x, z)
    assert ctx.normal_form((z, xm)) == (xm, y)
    assert ctx.normal_form((y, y.inverse())) == ()
    assert ctx.normal_form((y.inverse(), y)) == ()


def test_completion_generates_inverse_variants():
    ctx = standard_ctx()
    y = letter(ctx, "y", THETA)
    x = letter(ctx, "x", OMEGA)
    z = letter(ctx, "z", THETA)
    # consequences of y·x = x·z under invertibility
    assert ctx.normal_form((y.inverse(), x)) == (x, z.inverse())
    assert ctx.normal_form((z, x.inverse())) == (x.inverse(), y)
    assert ctx.normal_form((z.inverse(), x.inverse())) == \
        (x.inverse(), y.inverse())
    # the two sides of z·x^-1 = x^-1·y share the normal form x^-1·y:
    # the letter order X < Z < Y pushes x letters to the left, so the
    # x-first word is the irreducible one
    assert ctx.normal_form((x.inverse(), y)) == (x.inverse(), y)


def test_theta_theta_mixing_far_indices():
    spec = AffinizationSpec(
        4, ((root([1, 0, 0, -1]), 1), (root([1, 0, 0, 1]), 1),
            (root([-1, 0, 0, -1]), 1)))
    ctx = make_coordinate_algebra(spec)
    theta = root([1, 0, 0, -1])
    plus = root([1, 0, 0, 1])
    minus = root([-1, 0, 0, -1])
    y = ctx.generator("y", theta)
    z = ctx.generator("z", theta)
    yp = ctx.generator("y", plus)
    zp = ctx.generator("z", plus)
    ym = ctx.generator("y", minus)
    zm = ctx.generator("z", minus)
    assert y * zp == yp * z
    assert z * ym == zm * y


def test_normal_form_idempotent_and_terminating():
    ctx = standard_ctx()
    letters = [Letter(g, e) for g in ctx.generators for e in (1, -1)]
    rng = random.Random(99)
    for _ in range(1000):
        w = tuple(rng.choice(letters)
                  for _ in range(rng.randint(0, 12)))
        nf = ctx.normal_form(w)
        assert len(nf) <= len(w)
        assert ctx.normal_form(nf) == nf


def test_rules_strictly_decrease():
    ctx = standard_ctx()
    for (a, b), rhs in ctx.rules.items():
        assert ctx.word_key(rhs) < ctx.word_key((a, b))
        assert len(rhs) <= 2


def test_ring_operations():
    ctx = standard_ctx()
    y = ctx.generator("y", THETA)
    x = ctx.generator("x", OMEGA)
    z = ctx.generator("z", THETA)
    assert y * ctx.generator("y", THETA, exp=-1) == ctx.one()
    assert (y + ctx.one()) * x == x * z + x
    assert y.scale(0).is_zero
    assert (y - y).is_zero


def test_context_mismatch_rejected():
    from imalg.coordalg import ContextMismatchError

    ctx1 = standard_ctx()
    ctx2 = standard_ctx()
    with pytest.raises(ContextMismatchError):
        ctx1.generator("y", THETA) + ctx2.generator("y", THETA)


def test_involution_examples():
    ctx = standard_ctx()
    y = ctx.generator("y", THETA)
    z = ctx.generator("z", THETA)
    x = ctx.generator("x", OMEGA)
    assert y.involution() == z
    assert z.involution() == y
    assert x.involution() == x
    assert ctx.one().involution() == ctx.one()
    assert (x * y).involution() == z * x


def test_involution_laws_random():
    ctx = standard_ctx()
    letters = [Letter(g, e) for g in ctx.generators for e in (1, -1)]
    rng = random.Random(424242)

    def rand_elem():
        terms = {}
        for _ in range(rng.randint(1, 3)):
            w = tuple(rng.choice(letters) for _ in range(rng.randint(0, 4)))
            terms[w] = QSqrt2.of(rng.randint(-3, 3))
        return ctx.element(terms)

    for _ in range(150):
        a = rand_elem()
        b = rand_elem()
        assert a.involution().involution() == a
        assert (a * b).involution() == b.involution() * a.involution()


def test_ring_axioms_random():
    ctx = standard_ctx()
    letters = [Letter(g, e) for g in ctx.generators for e in (1, -1)]
    rng = random.Random(5150)

    def rand_elem():
        terms = {}
        for _ in range(rng.randint(1, 3)):
            w = tuple(rng.choice(letters) for _ in range(rng.randint(0, 3)))
            terms[w] = QSqrt2.of(rng.randint(-4, 4))
        return ctx.element(terms)

    for _ in range(100):
        a, b, c = rand_elem(), rand_elem(), rand_elem()
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c


def test_presentation_is_involution_stable():
    # each of the four mixing relations maps to a valid relation under eta
    ctx = standard_ctx()
    y = ctx.generator("y", THETA)
    z = ctx.generator("z", THETA)
    x = ctx.generator("x", OMEGA)
    xm = ctx.generator("x", MOMEGA)
    relations = [
        (y * x, x * z),
        (z * xm, xm * y),
    ]
    for lhs, rhs in relations:
        assert lhs == rhs
        assert lhs.involution() == rhs.involution()


def test_distinct_generators_are_unequal():
    # y and z have different letter multisets, so their normal forms differ
    ctx = standard_ctx()
    assert ctx.generator("y", THETA) != ctx.generator("z", THETA)
    assert ctx.generator("x", OMEGA) != ctx.generator("x", MOMEGA)


def test_rendering():
    ctx = standard_ctx()
    y = letter(ctx, "y", THETA)
    x = letter(ctx, "x", OMEGA)
    assert str(y) == "y[1,-1,0;1]"
    assert str(x.inverse()) == "x[1,1,0;1]^-1"
    assert render_word(()) == "1"
    elem = ctx.element({(x,): QSqrt2.of(2)})
    assert str(elem) == "(2)·x[1,1,0;1]"
    assert str(ctx.zero()) == "0"


def test_duplicate_copies_have_independent_generators():
    ctx = make_coordinate_algebra(AffinizationSpec(3, ((THETA, 2),)))
    y1 = ctx.generator("y", THETA, 1)
    y2 = ctx.generator("y", THETA, 2)
    assert y1 != y2
    assert y1 * y2 != y2 * y1  # no relation ties distinct copies
