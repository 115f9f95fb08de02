import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from beadedjacobi import (Bead, DiagramSum, canonical_key, dumbbell, evaluation_p, expand_multilinear,
                          hair_map, holonomy_normal_form, inclusion_i, orientation_normalize, reduce,
                          tadpole_on, tadpole_split, tadpole_stick_eval, theta)
from beadedjacobi.errors import ContextMismatchError, ValidationError
from beadedjacobi.laurent import TRIVIAL_CONTEXT, LaurentPoly, conjugate_bead
from beadedjacobi.normalform import antisymmetrize_loop, leg_count_part
from beadedjacobi.samples import random_diagram, random_laurent, random_moves, random_unbeaded_sum

from conftest import make_context

P = LaurentPoly.parse


def generic_theta(rng, ctx):
    return theta(ctx, beads=[Bead(random_laurent(rng), ctx) for _ in range(3)])


def test_flip_is_sign():
    t = theta(beads=[1, "t", "t^3"])
    assert reduce(t.flip_vertex(0)) == reduce(t) * -1


def test_reverse_conjugates_bead():
    t = theta(beads=["t^2", 1, 1])
    r = t.reverse_edge(0)
    assert r.edges[0].bead.numerator == P("t^-2")
    assert reduce(r) == reduce(t)


def test_cancellation():
    t = theta(beads=["t", 1, 1])
    assert reduce([(1, t), (-1, t)]).is_zero()


def test_holonomy_presentation_merges():
    t = theta(beads=["t", 1, 1])
    assert reduce([(1, t), (1, t.holonomy(0, 1))]) == reduce(t) * 2


def test_unbeaded_tadpole_and_dumbbell_vanish():
    assert reduce(tadpole_on(theta(), 0)).is_zero()
    assert reduce(dumbbell()).is_zero()


def test_theta_is_nonzero():
    assert not reduce(theta()).is_zero()


def test_linearity(rng, ctx):
    for _ in range(20):
        x = random_diagram(rng, 2, ctx)
        y = random_diagram(rng, 2, ctx)
        a, b = Fraction(rng.randint(-4, 4), 3), Fraction(rng.randint(-4, 4), 5)
        assert reduce([(a, x), (b, y)]) == reduce(x) * a + reduce(y) * b


def test_idempotent_on_representatives(rng, ctx):
    for _ in range(20):
        s = reduce(random_diagram(rng, rng.randint(1, 3), ctx))
        raw = [(c, rep) for _, rep, c in s.items()]
        assert reduce(raw, context=ctx, degree=s.degree) == s


def test_expand_multilinear():
    t = theta(beads=["t + 2", "3", 1])
    parts = expand_multilinear(t)
    assert sorted(c for c, _ in parts) == [3, 6]
    assert reduce(parts, context=t.context, degree=1) == reduce(t)


def test_holonomy_normal_form_fixed_point(rng, ctx):
    for _ in range(40):
        d = random_diagram(rng, rng.randint(1, 3), ctx, max_terms=1)
        h = holonomy_normal_form(d)
        assert holonomy_normal_form(h) == h
        assert reduce(h) == reduce(d)


def test_orientation_normalize_factor(rng):
    for _ in range(30):
        d = random_diagram(rng, 2, max_terms=1)
        nd, f = orientation_normalize(d)
        assert reduce([(f, nd)], degree=2) == reduce(d)


def test_relation_moves(rng, ctx):
    nonzero = 0
    for _ in range(40):
        d = random_diagram(rng, rng.randint(1, 3), ctx)
        moved, sign = random_moves(rng, d, 20)
        base = reduce(d)
        assert reduce(moved) == base * sign
        nonzero += not base.is_zero()
    assert nonzero >= 20


def test_context_mismatch():
    other = make_context("t - 1 + t^-1")
    with pytest.raises(ContextMismatchError):
        reduce([(1, theta()), (1, theta(other))])
    with pytest.raises(ValidationError):
        reduce([(1, theta()), (1, random_diagram(random.Random(1), 2))])


# -- tadpole lemmas --------------------------------------------------------------------

def test_tadpole_split_examples():
    base = generic_theta(random.Random(3), TRIVIAL_CONTEXT)
    d1 = tadpole_on(base, 0, loop_bead=1)
    assert tadpole_split(d1).is_zero()
    dt = tadpole_on(base, 0, loop_bead="t")
    half = tadpole_on(base, 0, loop_bead="t - t^-1")
    assert antisymmetrize_loop(dt).edges[-1].bead.numerator == P("1/2 t - 1/2 t^-1")
    assert tadpole_split(dt) == reduce(half) * Fraction(1, 2)
    assert not tadpole_split(dt).is_zero()
    assert antisymmetrize_loop(half) == half


def test_symmetric_base_forces_zero():
    # the planar reflection of the theta carries the tadpole to itself with sign -1
    assert reduce(tadpole_on(theta(), 0, loop_bead="t^2")).is_zero()


def test_loop_lemma_chain(rng, ctx):
    nonzero = 0
    for _ in range(25):
        base = generic_theta(rng, ctx)
        b = Bead(random_laurent(rng), ctx)
        d = tadpole_on(base, rng.randrange(3), loop_bead=b)
        loop = d.loop_edges()[0]
        lhs = reduce(d)
        assert lhs == reduce(d.with_bead(loop, conjugate_bead(b))) * -1
        assert lhs == reduce(d.with_bead(loop, (b - conjugate_bead(b)).scale(Fraction(1, 2))))
        nonzero += not lhs.is_zero()
    assert nonzero >= 15


def test_stick_examples():
    base = generic_theta(random.Random(7), TRIVIAL_CONTEXT)
    ref = reduce(tadpole_on(base, 0, loop_bead="t", stick_bead=1))
    assert not ref.is_zero()
    assert tadpole_stick_eval(tadpole_on(base, 0, loop_bead="t", stick_bead="t")) == ref
    assert tadpole_stick_eval(tadpole_on(base, 0, loop_bead="t", stick_bead="t - 1")).is_zero()
    assert tadpole_stick_eval(tadpole_on(base, 0, loop_bead="t", stick_bead="2")) == ref * 2


def test_stick_lemma(rng, ctx):
    for _ in range(25):
        base = generic_theta(rng, ctx)
        loop_b = Bead(random_laurent(rng), ctx)
        p = Bead(random_laurent(rng), ctx)
        d = tadpole_on(base, 1, loop_bead=loop_b, stick_bead=p)
        one = tadpole_on(base, 1, loop_bead=loop_b)
        assert reduce(d) == reduce(one) * p.value_at_one()


# -- maps ------------------------------------------------------------------------------

@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 3))
def test_p_after_i_is_identity(seed, n):
    s = random_unbeaded_sum(random.Random(seed), n)
    for text in ("t - 1 + t^-1", "1/2 + 1/2 t"):
        assert evaluation_p(inclusion_i(s, make_context(text))) == s


def test_evaluation_p_sets_t_to_one():
    ctx = make_context("t - 1 + t^-1")
    d = theta(ctx, beads=[ctx.from_laurent(P("2t + 1")), 1, 1])
    assert evaluation_p(d) == reduce(theta()) * 3


def test_hair_map_leg_free_part_is_evaluation(rng):
    for _ in range(10):
        d = random_diagram(rng, 1)
        for bound in (0, 1, 2):
            assert leg_count_part(hair_map(d, bound), 0) == evaluation_p(d)


def test_hair_map_bound():
    with pytest.raises(ValidationError):
        hair_map(theta(), -1)


# -- DiagramSum --------------------------------------------------------------------------

def test_sum_text_round_trip(rng, ctx):
    for _ in range(10):
        s = reduce([(Fraction(rng.randint(-3, 3), 2), random_diagram(rng, 2, ctx)) for _ in range(3)])
        assert DiagramSum.from_text(s.to_text()) == s


def test_union_product_and_unit():
    t = reduce(theta(beads=["t", 1, 1]))
    one = DiagramSum.one()
    assert one.union_product(t) == t
    tt = t.union_product(t)
    assert tt.degree == 2 and len(tt) == 1


def test_coefficient_lookup():
    t = theta(beads=["t", 1, 1])
    s = reduce(t) * Fraction(5, 3)
    assert s.coefficient(t) == Fraction(5, 3)
    assert s.coefficient(t.flip_vertex(1)) == Fraction(-5, 3)


def test_keys_respect_isomorphism(rng):
    d = random_diagram(rng, 2)
    pv = list(range(4))
    rng.shuffle(pv)
    assert canonical_key(d.relabel(pv, list(range(6)))) == canonical_key(d)
