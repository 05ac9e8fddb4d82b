import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hydrowalks.errors import WalkError
from hydrowalks.families import random_walk
from hydrowalks.graph import parse_graph
from hydrowalks.hydrostructure import build_hydrostructure, match_restricted_reachability
from hydrowalks.oracle import oracle_min_walk_cover
from hydrowalks.walk_cover import (INF, element_wccs, min_walk_cover,
                                   st_restricted_reachability)
from hydrowalks.walks import Walk

from conftest import arcs_by_name, names_of, small_sc_graphs


def river_of(g, names):
    return build_hydrostructure(g, Walk(arcs_by_name(g, names))).river


def test_min_cover_fe_river(fe):
    river = river_of(fe, "d a")
    req = frozenset({fe.arc_id("b"), fe.arc_id("c")})
    res = min_walk_cover(fe, river, req, with_witnesses=True)
    assert res.size == 1
    (witness,) = res.witnesses
    assert set(witness.arcs) >= req


def test_min_cover_parallel_arcs():
    g = parse_graph("nodes u v\narc p1 u v\narc p2 u v\narc r v u\n").graph
    sub = frozenset({0, 1, g.n + 0, g.n + 1})
    assert min_walk_cover(g, sub, frozenset({0, 1})).size == 2


def test_min_cover_empty_requirement(fe):
    assert min_walk_cover(fe, frozenset(), frozenset()).size == 0


def test_min_cover_missing_required_arc(fe):
    assert min_walk_cover(fe, frozenset({fe.n + 0}), frozenset({1})).size == INF


def test_min_cover_strongly_connected_sub_is_one(fe):
    sub = fe.all_elements()
    assert min_walk_cover(fe, sub, frozenset(range(fe.m))).size == 1


def test_min_cover_boundary_tail_arc(tc):
    # River of [e3, e1] holds arc e2 whose tail x2 sits in the Cloud
    river = river_of(tc, "e3 e1")
    req = frozenset({tc.arc_id("e2")})
    assert min_walk_cover(tc, river, req).size == 1


@st.composite
def cover_instances(draw):
    g = draw(small_sc_graphs(max_nodes=4, max_extra=3))
    size = draw(st.integers(1, min(5, g.m)))
    arcs = draw(st.sets(st.integers(0, g.m - 1), min_size=size, max_size=size))
    required = draw(st.sets(st.sampled_from(sorted(arcs)), min_size=0,
                            max_size=len(arcs)))
    elements = set()
    for a in arcs:
        elements.add(g.n + a)
        elements.add(g.tail(a))
        elements.add(g.head(a))
    return g, frozenset(elements), frozenset(required)


@given(cover_instances())
@settings(max_examples=120, deadline=None)
def test_min_cover_matches_brute_force(instance):
    g, sub, required = instance
    assert min_walk_cover(g, sub, required).size == \
        oracle_min_walk_cover(g, sub, required)


@given(cover_instances())
@settings(max_examples=60, deadline=None)
def test_min_cover_monotone(instance):
    g, sub, required = instance
    base = min_walk_cover(g, sub, required).size
    for a in sorted(required):
        smaller = min_walk_cover(g, sub, required - {a}).size
        assert smaller <= base
    # removing elements never decreases the size
    for x in sorted(sub):
        if x >= g.n and (x - g.n) in required:
            continue
        shrunk = min_walk_cover(g, sub - {x}, required).size
        assert shrunk >= base


def test_witnesses_cover_required(fe):
    sub = fe.all_elements()
    req = frozenset(range(fe.m))
    res = min_walk_cover(fe, sub, req, with_witnesses=True)
    assert len(res.witnesses) == res.size == 1
    covered = set()
    for w in res.witnesses:
        for x, y in zip(w.arcs, w.arcs[1:]):
            assert fe.head(x) == fe.tail(y)
        covered.update(w.arcs)
    assert covered >= req


# -- st-restricted reachability ----------------------------------------------------


def test_st_restricted_fe(fe):
    w = Walk(arcs_by_name(fe, "a b"))
    sv = st_restricted_reachability(fe, w, fe.node_id("u"), fe.node_id("w"))
    assert names_of(fe, sv.r_plus_s) == ["a", "d", "u", "v"]
    assert names_of(fe, sv.r_minus_t) == ["b", "c", "v", "w"]
    assert names_of(fe, sv.st_induced_subgraph) == ["v"]
    assert sv.st_induced_river == frozenset()


def test_st_restricted_s_in_r_minus_covers_graph(fe):
    w = Walk(arcs_by_name(fe, "a b"))
    sv = st_restricted_reachability(fe, w, fe.node_id("w"), fe.node_id("u"))
    assert sv.r_plus_s == fe.all_elements()   # w-node reaches wh avoiding the walk
    assert sv.r_minus_t == fe.all_elements()  # u is forward reachable avoiding it


def test_st_restricted_avertible(tc):
    w = Walk(arcs_by_name(tc, "e3 e1 e2"))
    sv = st_restricted_reachability(tc, w, 0, 0)
    assert sv.r_plus_s == tc.all_elements()
    assert sv.st_induced_subgraph == tc.all_elements()


def test_st_restricted_validates_nodes(fe):
    with pytest.raises(WalkError):
        st_restricted_reachability(fe, Walk(arcs_by_name(fe, "a b")), 99, 0)


@given(small_sc_graphs(), st.integers(0, 2 ** 31))
@settings(max_examples=80, deadline=None)
def test_st_restricted_matches_definition(g, seed):
    rng = random.Random(seed)
    w = random_walk(rng, g, 5, min_len=2)
    s = rng.randrange(g.n)
    t = rng.randrange(g.n)
    sv = st_restricted_reachability(g, w, s, t)
    ref_s = match_restricted_reachability(g, w.arcs, s, start_is_arc=False,
                                          forward=True)
    ref_t = match_restricted_reachability(g, w.arcs, t, start_is_arc=False,
                                          forward=False)
    assert sv.r_plus_s == ref_s
    assert sv.r_minus_t == ref_t


@given(small_sc_graphs(), st.integers(0, 2 ** 31))
@settings(max_examples=40, deadline=None)
def test_st_restricted_contains_plain_reachability(g, seed):
    rng = random.Random(seed)
    w = random_walk(rng, g, 5, min_len=2)
    h = build_hydrostructure(g, w)
    sv = st_restricted_reachability(g, w, g.tail(w.arcs[0]), g.head(w.arcs[-1]))
    assert h.in_r_plus <= sv.r_plus_s
    assert h.in_r_minus <= sv.r_minus_t


def test_element_wccs(fe):
    comps = element_wccs(fe, frozenset({0, 1, fe.n + 0}))  # u, v, arc a
    assert len(comps) == 1
    comps = element_wccs(fe, frozenset({0, 2}))  # u and w, no arcs
    assert len(comps) == 2
