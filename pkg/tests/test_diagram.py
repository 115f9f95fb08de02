import random

import pytest

from beadedjacobi import (BeadedDiagram, Leg, NumberedGraph, automorphism_count, canonical_key,
                          canonical_vertex_orientation, dumbbell, orientation_sign, theta, tripod)
from beadedjacobi.diagram import has_odd_automorphism
from beadedjacobi.enumeration import enumerate_graphs
from beadedjacobi.errors import ValidationError
from beadedjacobi.laurent import LaurentPoly
from beadedjacobi.samples import random_diagram, random_moves

THETA = NumberedGraph(1, ((1, 2), (1, 2), (1, 2)))


def test_theta_shape():
    d = theta()
    assert d.loop_degree == 1
    assert len(d.edges) == 3 and not d.legs
    assert d.is_connected()


def test_validation_rejects_bad_halfedges():
    d = theta()
    verts = list(d.vertices)
    verts[0] = verts[0]._replace(halfedges=verts[0].halfedges[:2])
    with pytest.raises(ValidationError):
        BeadedDiagram(verts, d.edges, d.context)


def test_canonical_key_invariant_under_relabeling(rng):
    for _ in range(50):
        d = random_diagram(rng, rng.randint(1, 3))
        pv = list(range(len(d.vertices)))
        pe = list(range(len(d.edges)))
        rng.shuffle(pv)
        rng.shuffle(pe)
        assert canonical_key(d.relabel(pv, pe)) == canonical_key(d)


def test_canonical_key_separates_orientation_and_beads():
    t = theta()
    assert canonical_key(t.flip_vertex(0)) != canonical_key(t)
    assert canonical_key(t.flip_vertex(0).flip_vertex(1)) == canonical_key(t)
    assert canonical_key(t.with_bead(0, t.context.from_laurent(LaurentPoly.monomial(1)))) != canonical_key(t)
    assert canonical_key(t.rotate_vertex(0)) == canonical_key(t)


def test_canonical_key_reflects_exact_isomorphism_on_samples(rng):
    # keys agree after moves that keep the presentation, differ when beads change
    for _ in range(30):
        d = random_diagram(rng, 2)
        e = rng.randrange(len(d.edges))
        moved = d.with_bead(e, d.edges[e].bead + d.context.one())
        assert canonical_key(moved) != canonical_key(d)


def test_automorphism_counts():
    assert automorphism_count(theta()) == 12
    # every automorphism of the plain theta preserves orientation, so it survives antisymmetry
    assert automorphism_count(theta(), oriented=True) == 12
    assert automorphism_count(dumbbell()) == 8


def test_theta_has_no_odd_automorphism():
    t = theta()
    assert not has_odd_automorphism(t)
    ctx = t.context
    skew = theta(ctx, beads=[ctx.from_laurent(LaurentPoly.parse(x)) for x in ("t", "t^2", "t^5")])
    assert not has_odd_automorphism(skew)


def test_automorphisms_fixing_vertices():
    # on the theta with fixed vertices, only edge permutations remain
    assert automorphism_count(theta(), fix_vertices=True) == 6


def test_tripod_legs_and_degree():
    d = tripod([Leg(1, 1), Leg(1, 2), Leg(1, 3)])
    assert len(d.legs) == 3 and len(d.trivalent) == 1
    with pytest.raises(ValidationError):
        tripod([Leg(1, 1), Leg(1, 2)])


def test_holonomy_changes_beads_not_class_shape(rng):
    d = random_diagram(rng, 2)
    h = d.holonomy(0, 1)
    assert [(e.source, e.target) for e in h.edges] == [(e.source, e.target) for e in d.edges]


def test_orientation_sign_theta():
    ors = {1: ((1, 1), (2, 1), (3, 1)), 2: ((1, 2), (2, 2), (3, 2))}
    # interleaving (1,1),(2,1),(3,1),(1,2),(2,2),(3,2) is an odd permutation
    assert orientation_sign(THETA, ors) == -1


def test_canonical_vertex_orientation_small_families():
    for g in enumerate_graphs(1, "Sl"):
        ors, sign = canonical_vertex_orientation(g)
        assert sign == 1
        assert orientation_sign(g, ors) == 1


def test_canonical_vertex_orientation_samples(rng):
    gs = list(enumerate_graphs(2, "Su"))
    for g in random.Random(5).sample(gs, 200):
        ors, sign = canonical_vertex_orientation(g)
        assert sign == 1 == orientation_sign(g, ors)
        d = g.to_diagram()
        assert d.loop_degree == 2


def test_numbered_graph_validation():
    with pytest.raises(ValidationError):
        NumberedGraph(1, ((1, 2), (1, 2)))
    with pytest.raises(ValidationError):
        NumberedGraph(1, ((1, 2), (1, 2), (1, 1)))


def test_moves_preserve_shape(rng):
    d = random_diagram(rng, 3)
    moved, sign = random_moves(rng, d, 10)
    assert sign in (1, -1)
    assert moved.loop_degree == d.loop_degree
    assert sorted(len(c) for c in moved.components()) == sorted(len(c) for c in d.components())
