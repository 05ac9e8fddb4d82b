import random

import pytest
from hypothesis import strategies as st

from hydrowalks.families import random_sc_multigraph
from hydrowalks.graph import parse_graph

FE_TEXT = """\
# figure-eight: two 2-cycles sharing the middle node v
nodes u v w
arc a u v
arc b v w
arc c w v
arc d v u
"""

TC_TEXT = """\
# twin-cycle: a 3-cycle and a detour sharing the x1-x2 edge
nodes x1 x2 p q
arc e1 x1 x2
arc e2 x2 p
arc e3 p x1
arc e4 x2 q
arc e5 q x1
"""

# figure-eight with an invisible 2-cycle hanging off the middle node
FE_VIS_TEXT = """\
nodes u v w z
arc a u v V
arc b v w V
arc c w v V
arc d v u V
arc g1 v z
arc g2 z v
"""


@pytest.fixture(scope="session")
def fe():
    return parse_graph(FE_TEXT).graph


@pytest.fixture(scope="session")
def tc():
    return parse_graph(TC_TEXT).graph


@pytest.fixture(scope="session")
def fe_vis():
    gf = parse_graph(FE_VIS_TEXT)
    return gf.graph, gf.f_vis


def arcs_by_name(g, names):
    return tuple(g.arc_id(x) for x in names.split())


def names_of(g, elements):
    return sorted(g.element_name(x) for x in elements)


@st.composite
def small_sc_graphs(draw, max_nodes=6, max_extra=6):
    n = draw(st.integers(min_value=2, max_value=max_nodes))
    extra = draw(st.integers(min_value=1, max_value=max_extra))
    seed = draw(st.integers(min_value=0, max_value=2 ** 31))
    return random_sc_multigraph(random.Random(seed), n, n + extra)
