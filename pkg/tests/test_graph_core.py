import pytest
from hypothesis import given, settings

from hydrowalks.errors import GraphParseError
from hydrowalks.graph import (Graph, format_graph, node_centric_transform,
                              parse_graph, scc_decompose, st_sets_transform)

from conftest import FE_TEXT, small_sc_graphs


def test_parse_figure_eight(fe):
    assert fe.n == 3 and fe.m == 4
    assert fe.arcs[fe.arc_id("a")] == (fe.node_id("u"), fe.node_id("v"))
    assert fe.is_strongly_connected and not fe.is_cycle_graph


def test_parse_flags_default_to_all_arcs():
    gf = parse_graph("nodes u v\narc a u v C\narc b v u\n")
    assert gf.f_cov == frozenset({0})
    assert gf.f_vis == frozenset({0, 1})  # no V flag anywhere -> all arcs
    assert gf.cov_flagged and not gf.vis_flagged


@pytest.mark.parametrize("text,fragment", [
    ("nodes u v\narc a u x\n", "undeclared node"),
    ("nodes u v\narc a u v\narc a v u\n", "duplicate arc-id"),
    ("nodes u v\n", "no arcs"),
    ("arc a u v\n", "expected 'nodes'"),
    ("nodes u u\narc a u u\n", "duplicate node"),
    ("nodes u v\narc a u\n", "arc line"),
    ("nodes u v\narc a u v X\n", "flags"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(GraphParseError) as err:
        parse_graph(text)
    assert fragment in str(err.value)


def test_format_round_trip(fe):
    text = format_graph(fe, f_cov=frozenset({0}), f_vis=frozenset({1, 2}))
    gf = parse_graph(text)
    assert gf.graph.arcs == fe.arcs
    assert gf.f_cov == frozenset({0})
    assert gf.f_vis == frozenset({1, 2})


# -- SCC decomposition -------------------------------------------------------


def brute_force_sccs(g):
    reach = [set([v]) for v in range(g.n)]
    changed = True
    while changed:
        changed = False
        for (u, v) in g.arcs:
            new = reach[v] - reach[u]
            if new:
                reach[u] |= new
                changed = True
    comps = set()
    for v in range(g.n):
        comps.add(frozenset(u for u in range(g.n) if u in reach[v] and v in reach[u]))
    return comps


def test_scc_figure_eight(fe):
    dec = scc_decompose(fe)
    assert len(dec.components) == 1
    assert dec.components[0] == frozenset(range(3))


def test_scc_two_cycles_with_bridge():
    g = Graph(["a", "b", "c", "d"],
              [(0, 1), (1, 0), (2, 3), (3, 2), (1, 2)])
    dec = scc_decompose(g)
    assert len(dec.components) == 2
    assert dec.dag_edges == frozenset({(0, 1)})
    assert dec.components[0] == frozenset({0, 1})  # topological order
    assert [dec.arc_is_intra[a] for a in range(5)] == [True, True, True, True, False]


def test_scc_single_node():
    g = Graph(["a", "b"], [(0, 1), (1, 0), (0, 0)])
    assert len(scc_decompose(g).components) == 1


@given(small_sc_graphs())
@settings(max_examples=60, deadline=None)
def test_scc_matches_brute_force(g):
    dec = scc_decompose(g)
    assert set(dec.components) == brute_force_sccs(g)
    for i, comp in enumerate(dec.components):
        for v in comp:
            assert dec.comp_of[v] == i
    # condensation is topologically ordered
    for (cu, cv) in dec.dag_edges:
        assert cu < cv


def test_brute_force_sccs_on_disconnected():
    g = Graph(["a", "b", "c"], [(0, 1), (1, 0), (2, 2)])
    dec = scc_decompose(g)
    assert set(dec.components) == brute_force_sccs(g)
    assert not g.is_strongly_connected


# -- transforms ---------------------------------------------------------------


def test_node_centric_transform(fe):
    g2, node_arcs = node_centric_transform(fe, {fe.node_id("v")})
    assert g2.n == 6 and g2.m == 4 + 3
    assert len(node_arcs) == 1
    (na,) = node_arcs
    assert g2.arc_names[na] == "node_v"
    assert g2.arcs[na] == (g2.node_id("v_in"), g2.node_id("v_out"))
    # original arcs re-attached out->in
    a = g2.arc_id("a")
    assert g2.arcs[a] == (g2.node_id("u_out"), g2.node_id("v_in"))
    assert g2.is_strongly_connected


def test_node_centric_empty_marked(fe):
    g2, node_arcs = node_centric_transform(fe, set())
    assert node_arcs == frozenset()
    assert g2.m == 7


def test_node_centric_self_loop():
    g = Graph(["v", "w"], [(0, 0), (0, 1), (1, 0)])
    g2, _ = node_centric_transform(g, {0})
    loop = g2.arc_id("e0")
    assert g2.arcs[loop] == (g2.node_id("v_out"), g2.node_id("v_in"))


def test_st_sets_transform(fe):
    g2, s, t, f_cov = st_sets_transform(fe, [fe.node_id("u")], [fe.node_id("w")])
    assert g2.node_names[s] == "__source" and g2.node_names[t] == "__sink"
    assert g2.m == fe.m + 2
    assert f_cov == frozenset(range(fe.m))  # connectors excluded


def test_st_sets_all_nodes(fe):
    g2, s, t, _ = st_sets_transform(fe, range(fe.n), range(fe.n))
    assert g2.m == fe.m + 2 * fe.n


def test_st_sets_empty_errors(fe):
    with pytest.raises(GraphParseError):
        st_sets_transform(fe, [], [0])
