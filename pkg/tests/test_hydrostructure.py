import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hydrowalks.errors import CycleGraphError, ModelError, WalkError
from hydrowalks.families import random_walk
from hydrowalks.graph import parse_graph
from hydrowalks.hydrostructure import (build_hydrostructure,
                                       build_visible_hydrostructure,
                                       hydro_scc_view, hydro_to_json_dict,
                                       is_avertible_by_reentry,
                                       match_restricted_reachability,
                                       restricted_backward_reachability,
                                       restricted_forward_reachability,
                                       split_single_arc, visible_adjacency)
from hydrowalks.walks import Walk, walk_elements

from conftest import arcs_by_name, names_of, small_sc_graphs


def test_forward_reachability_fe(fe):
    r = restricted_forward_reachability(fe, Walk(arcs_by_name(fe, "a b")))
    assert names_of(fe, r) == ["a", "d", "u", "v"]
    r = restricted_forward_reachability(fe, Walk(arcs_by_name(fe, "d a")))
    assert names_of(fe, r) == ["d", "u"]


def test_backward_reachability_fe(fe):
    r = restricted_backward_reachability(fe, Walk(arcs_by_name(fe, "a b")))
    assert names_of(fe, r) == ["b", "c", "v", "w"]
    r = restricted_backward_reachability(fe, Walk(arcs_by_name(fe, "d a")))
    assert names_of(fe, r) == ["a", "u"]


def test_avertible_walk_reaches_everything(tc):
    w = Walk(arcs_by_name(tc, "e3 e1 e2"))
    assert restricted_forward_reachability(tc, w) == tc.all_elements()
    assert restricted_backward_reachability(tc, w) == tc.all_elements()
    assert is_avertible_by_reentry(tc, w)


def test_hydrostructure_fe(fe):
    h = build_hydrostructure(fe, Walk(arcs_by_name(fe, "a b")))
    assert h.bridge_like
    assert names_of(fe, h.sea) == ["a", "d", "u"]
    assert names_of(fe, h.vapor) == ["v"]
    assert names_of(fe, h.cloud) == ["b", "c", "w"]
    assert h.river == frozenset()

    h = build_hydrostructure(fe, Walk(arcs_by_name(fe, "d a")))
    assert h.bridge_like
    assert names_of(fe, h.sea) == ["d"]
    assert names_of(fe, h.vapor) == ["u"]
    assert names_of(fe, h.cloud) == ["a"]
    assert names_of(fe, h.river) == ["b", "c", "v", "w"]


def test_hydrostructure_tc(tc):
    h = build_hydrostructure(tc, Walk(arcs_by_name(tc, "e3 e1")))
    assert h.bridge_like
    assert names_of(tc, h.sea) == ["e3"]
    assert names_of(tc, h.vapor) == ["x1"]
    assert names_of(tc, h.cloud) == ["e1", "e4", "e5", "q", "x2"]
    assert names_of(tc, h.river) == ["e2", "p"]

    h = build_hydrostructure(tc, Walk(arcs_by_name(tc, "e3 e1 e2")))
    assert not h.bridge_like
    assert h.vapor == tc.all_elements()
    assert not h.sea and not h.cloud and not h.river


def test_hydrostructure_preconditions(fe, tc):
    with pytest.raises(WalkError):
        build_hydrostructure(fe, Walk(arcs_by_name(fe, "a")))
    cyc = parse_graph("nodes a b\narc x a b\narc y b a\n").graph
    with pytest.raises(CycleGraphError):
        build_hydrostructure(cyc, Walk((0, 1)))
    nsc = parse_graph("nodes a b\narc x a b\narc y a b\n").graph
    with pytest.raises(ModelError):
        build_hydrostructure(nsc, Walk((0,)))


def test_hydro_json_dump(fe):
    h = build_hydrostructure(fe, Walk(arcs_by_name(fe, "d a")))
    payload = hydro_to_json_dict(fe, h)
    assert payload["walk"] == ["d", "a"]
    assert payload["bridge_like"] is True
    assert payload["river"] == ["v", "w", "b", "c"]  # nodes then arcs, by id


# -- algorithm vs definition ---------------------------------------------------


@given(small_sc_graphs(), st.integers(0, 2 ** 31))
@settings(max_examples=80, deadline=None)
def test_traversal_equals_definition(g, seed):
    w = random_walk(random.Random(seed), g, 5, min_len=2)
    fwd = restricted_forward_reachability(g, w)
    ref = match_restricted_reachability(g, w.arcs, w.arcs[0], start_is_arc=True,
                                        forward=True)
    if fwd == g.all_elements():
        # avertible: the definition-level set must also be the whole graph
        bwd = restricted_backward_reachability(g, w)
        assert bwd == g.all_elements()
        ref_b = match_restricted_reachability(g, w.arcs, w.arcs[-1],
                                              start_is_arc=True, forward=False)
        assert g.n + w.arcs[-1] in ref or g.n + w.arcs[0] in ref_b or \
            not _is_open_path(g, w)
    else:
        assert fwd == ref
        bwd = restricted_backward_reachability(g, w)
        ref_b = match_restricted_reachability(g, w.arcs, w.arcs[-1],
                                              start_is_arc=True, forward=False)
        assert bwd == ref_b


def _is_open_path(g, w):
    from hydrowalks.walks import is_open_path
    return is_open_path(g, w)


@given(small_sc_graphs(), st.integers(0, 2 ** 31))
@settings(max_examples=80, deadline=None)
def test_cloud_cases_biconditional(g, seed):
    w = random_walk(random.Random(seed), g, 5, min_len=2)
    h = build_hydrostructure(g, w)
    z = walk_elements(g, w) - {g.n + w.arcs[0], g.n + w.arcs[-1]}
    if h.bridge_like:
        assert not is_avertible_by_reentry(g, w)
        assert h.vapor == z
        # separation: first arc in Sea, last arc in Cloud
        assert g.n + w.arcs[0] in h.sea
        assert g.n + w.arcs[-1] in h.cloud
    else:
        assert is_avertible_by_reentry(g, w)
        assert h.vapor == g.all_elements()


# -- split single arc -----------------------------------------------------------


def test_split_single_arc(fe):
    sp = split_single_arc(fe, fe.arc_id("a"))
    g2 = sp.graph
    assert g2.n == 4 and g2.m == 5
    assert g2.arcs[sp.first_piece] == (g2.node_id("u"), sp.dummy_node)
    assert g2.arcs[sp.second_piece] == (sp.dummy_node, g2.node_id("v"))
    assert sp.walk.arcs == (sp.first_piece, sp.second_piece)
    assert sp.translate_arcset(frozenset({fe.arc_id("a")})) == \
        frozenset({sp.first_piece, sp.second_piece})
    back = sp.contract()
    assert back.arcs == fe.arcs and back.arc_names == fe.arc_names


def test_split_self_loop():
    g = parse_graph("nodes v w\narc l v v\narc p v w\narc q w v\n").graph
    sp = split_single_arc(g, 0)
    assert sp.graph.arcs[sp.first_piece] == (0, sp.dummy_node)
    assert sp.graph.arcs[sp.second_piece] == (sp.dummy_node, 0)


# -- SCC view ---------------------------------------------------------------------


def test_scc_view_fe(fe):
    h = build_hydrostructure(fe, Walk(arcs_by_name(fe, "a b")))
    view = hydro_scc_view(fe, h)
    assert names_of(fe, view.sea_related_scc) == ["a", "d", "u", "v"]
    assert names_of(fe, view.cloud_related_scc) == ["b", "c", "v", "w"]
    assert view.river_sccs == ()

    h = build_hydrostructure(fe, Walk(arcs_by_name(fe, "d a")))
    view = hydro_scc_view(fe, h)
    assert view.sea_related_scc is None  # Sea is just the start arc
    assert view.cloud_related_scc is None
    assert [names_of(fe, s) for s in view.river_sccs] == [["b", "c", "v", "w"]]


def test_scc_view_tc(tc):
    h = build_hydrostructure(tc, Walk(arcs_by_name(tc, "e3 e1")))
    view = hydro_scc_view(tc, h)
    assert view.sea_related_scc is None
    assert names_of(tc, view.cloud_related_scc) == \
        ["e1", "e4", "e5", "q", "x1", "x2"]
    assert view.river_sccs == ()  # River {e2, p} has no SCC with an arc

    h = build_hydrostructure(tc, Walk(arcs_by_name(tc, "e2 e3")))
    view = hydro_scc_view(tc, h)
    assert [names_of(tc, s) for s in view.river_sccs] == \
        [["e1", "e4", "e5", "q", "x1", "x2"]]


def test_scc_view_requires_bridge_like(tc):
    h = build_hydrostructure(tc, Walk(arcs_by_name(tc, "e3 e1 e2")))
    with pytest.raises(ModelError):
        hydro_scc_view(tc, h)


# -- visible machinery -------------------------------------------------------------


def test_visible_adjacency_fe(fe):
    adj = visible_adjacency(fe, frozenset({fe.arc_id(x) for x in "abd"}))
    b = fe.arc_id("b")
    # from head(b) = w, the invisible arc c leads back to v: b continues to b or d
    succ = adj.vis_out(fe.head(b))
    assert sorted(fe.arc_names[a] for a in succ) == ["b", "d"]


def test_visible_adjacency_all_arcs_is_plain(fe):
    adj = visible_adjacency(fe, frozenset(range(fe.m)))
    for v in range(fe.n):
        assert adj.vis_out(v) == frozenset(fe.out_arcs[v])
        assert adj.vis_in(v) == frozenset(fe.in_arcs[v])


def test_visible_adjacency_empty(fe):
    adj = visible_adjacency(fe, frozenset())
    assert all(not adj.vis_out(v) for v in range(fe.n))


def test_visible_hydro_degenerates_to_plain(fe):
    all_vis = frozenset(range(fe.m))
    for arcs in ("a b", "d a", "b c d a"):
        w = Walk(arcs_by_name(fe, arcs))
        plain = build_hydrostructure(fe, w)
        vis = build_visible_hydrostructure(fe, w, all_vis)
        assert vis.bridge_like == plain.bridge_like
        assert vis.in_r_plus == plain.in_r_plus
        assert vis.in_r_minus == plain.in_r_minus


def test_visible_hydro_fe_vis(fe_vis):
    g, f_vis = fe_vis
    w = Walk(arcs_by_name(g, "a b"))
    plain = build_hydrostructure(g, w)
    assert not plain.bridge_like  # the invisible detour re-enters the walk
    vis = build_visible_hydrostructure(g, w, f_vis)
    assert vis.bridge_like
    assert names_of(g, vis.vapor) == ["g1", "g2", "v", "z"]
    assert names_of(g, vis.sea) == ["a", "d", "u"]
    assert names_of(g, vis.cloud) == ["b", "c", "w"]
    assert vis.river == frozenset()


def test_visible_hydro_needs_visible_endpoints(fe_vis):
    g, f_vis = fe_vis
    with pytest.raises(ModelError):
        build_visible_hydrostructure(g, Walk(arcs_by_name(g, "g1 g2")), f_vis)
