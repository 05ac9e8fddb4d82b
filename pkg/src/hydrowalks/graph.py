"""Directed multigraph with stable arc ids, SCC machinery, and model-reduction transforms.

Nodes and arcs share one element-id space: node v has element id v, arc a has
element id n + a.  Reachability sets, hydrostructure components and subgraph
references are all sets of element ids.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import GraphParseError


class Graph:
    """Immutable directed multigraph. Parallel arcs and self-loops allowed.

    Arc identity is the arc id (position in the arc list), never the endpoint
    pair.
    """

    __slots__ = (
        "node_names", "arc_names", "arcs", "out_arcs", "in_arcs",
        "_node_index", "_arc_index", "_scc", "_unique",
    )

    def __init__(self, node_names: Sequence[str], arcs: Sequence[tuple[int, int]],
                 arc_names: Sequence[str] | None = None):
        self.node_names = tuple(node_names)
        self.arcs = tuple((int(u), int(v)) for u, v in arcs)
        if arc_names is None:
            arc_names = tuple(f"e{i}" for i in range(len(self.arcs)))
        self.arc_names = tuple(arc_names)
        n = len(self.node_names)
        if len(self.arc_names) != len(self.arcs):
            raise ValueError("arc_names/arcs length mismatch")
        out: list[list[int]] = [[] for _ in range(n)]
        inn: list[list[int]] = [[] for _ in range(n)]
        for a, (u, v) in enumerate(self.arcs):
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc {a} endpoint out of range")
            out[u].append(a)
            inn[v].append(a)
        self.out_arcs = tuple(tuple(x) for x in out)
        self.in_arcs = tuple(tuple(x) for x in inn)
        self._node_index = {name: i for i, name in enumerate(self.node_names)}
        self._arc_index = {name: i for i, name in enumerate(self.arc_names)}
        if len(self._node_index) != n:
            raise ValueError("duplicate node name")
        if len(self._arc_index) != len(self.arcs):
            raise ValueError("duplicate arc name")
        self._scc = None
        self._unique = None

    # -- basic accessors -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.node_names)

    @property
    def m(self) -> int:
        return len(self.arcs)

    def tail(self, a: int) -> int:
        return self.arcs[a][0]

    def head(self, a: int) -> int:
        return self.arcs[a][1]

    def node_id(self, name: str) -> int:
        try:
            return self._node_index[name]
        except KeyError:
            raise GraphParseError(f"unknown node {name!r}") from None

    def arc_id(self, name: str) -> int:
        try:
            return self._arc_index[name]
        except KeyError:
            raise GraphParseError(f"unknown arc {name!r}") from None

    # -- element id space ------------------------------------------------

    def arc_element(self, a: int) -> int:
        return self.n + a

    def element_is_arc(self, x: int) -> bool:
        return x >= self.n

    def element_arc(self, x: int) -> int:
        return x - self.n

    def all_elements(self) -> frozenset[int]:
        return frozenset(range(self.n + self.m))

    def element_name(self, x: int) -> str:
        return self.arc_names[x - self.n] if x >= self.n else self.node_names[x]

    def sorted_names(self, elements: Iterable[int]) -> list[str]:
        return [self.element_name(x) for x in sorted(elements)]

    # -- degree structure --------------------------------------------------

    def is_join_node(self, v: int) -> bool:
        return len(self.in_arcs[v]) > 1

    def is_split_node(self, v: int) -> bool:
        return len(self.out_arcs[v]) > 1

    def is_join_arc(self, a: int) -> bool:
        return len(self.in_arcs[self.arcs[a][1]]) > 1

    def is_split_arc(self, a: int) -> bool:
        return len(self.out_arcs[self.arcs[a][0]]) > 1

    # -- connectivity ------------------------------------------------------

    @property
    def scc(self) -> "SccDecomposition":
        if self._scc is None:
            self._scc = scc_decompose(self)
        return self._scc

    @property
    def is_strongly_connected(self) -> bool:
        return self.n > 0 and len(self.scc.components) == 1

    @property
    def is_cycle_graph(self) -> bool:
        # A strongly connected graph with m == n is a single cycle (a lone
        # self-loop counts: n == m == 1).
        return self.is_strongly_connected and self.m == self.n

    def __repr__(self) -> str:  # pragma: no cover
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class SccDecomposition:
    """SCC partition with the condensation in topological order."""

    comp_of: tuple[int, ...]                    # node -> component id
    components: tuple[frozenset[int], ...]      # node sets, topological order
    dag_edges: frozenset[tuple[int, int]]       # condensation edges
    arc_is_intra: tuple[bool, ...]


def scc_decompose(g: Graph) -> SccDecomposition:
    """Tarjan's algorithm, iterative; components returned sources-first."""
    n = g.n
    index = [-1] * n
    low = [0] * n
    on_stack = bytearray(n)
    stack: list[int] = []
    comp_of = [-1] * n
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work: list[tuple[int, int]] = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = 1
            recurse = False
            out = g.out_arcs[v]
            while pi < len(out):
                w = g.arcs[out[pi]][1]
                pi += 1
                if index[w] == -1:
                    work[-1] = (v, pi)
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    if index[w] < low[v]:
                        low[v] = index[w]
            if recurse:
                continue
            work.pop()
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = 0
                    comp_of[w] = len(comps)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
    # Tarjan emits sinks first; flip to topological (sources-first) order.
    order = list(range(len(comps) - 1, -1, -1))
    renumber = {old: new for new, old in enumerate(order)}
    comp_of = tuple(renumber[c] for c in comp_of)
    components = tuple(frozenset(comps[old]) for old in order)
    dag_edges = set()
    arc_is_intra = []
    for (u, v) in g.arcs:
        cu, cv = comp_of[u], comp_of[v]
        arc_is_intra.append(cu == cv)
        if cu != cv:
            dag_edges.add((cu, cv))
    return SccDecomposition(comp_of, components, frozenset(dag_edges), tuple(arc_is_intra))


# -- text format ----------------------------------------------------------


@dataclass(frozen=True)
class GraphFile:
    """Parsed graph plus the covering/visibility arc sets from file flags.

    If no arc carries a C (resp. V) flag, f_cov (resp. f_vis) defaults to all
    arcs.
    """

    graph: Graph
    f_cov: frozenset[int]
    f_vis: frozenset[int]
    cov_flagged: bool
    vis_flagged: bool


def parse_graph(text: str) -> GraphFile:
    """Parse the line-oriented graph format.

    Line 1: ``nodes <names>``; then ``arc <name> <tail> <head> [C] [V]`` per
    arc.  ``#`` starts a comment.
    """
    node_names: list[str] | None = None
    arc_names: list[str] = []
    arc_pairs: list[tuple[str, str]] = []
    cov: list[int] = []
    vis: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if node_names is None:
            if tokens[0] != "nodes":
                raise GraphParseError(f"line {lineno}: expected 'nodes' header, got {tokens[0]!r}")
            node_names = tokens[1:]
            if not node_names:
                raise GraphParseError(f"line {lineno}: graph has no nodes")
            if len(set(node_names)) != len(node_names):
                raise GraphParseError(f"line {lineno}: duplicate node name")
            continue
        if tokens[0] != "arc":
            raise GraphParseError(f"line {lineno}: expected 'arc' line, got {tokens[0]!r}")
        if len(tokens) < 4:
            raise GraphParseError(f"line {lineno}: arc line needs name, tail, head")
        name, tail, head = tokens[1], tokens[2], tokens[3]
        flags = tokens[4:]
        if any(f not in ("C", "V") for f in flags) or len(flags) != len(set(flags)):
            raise GraphParseError(f"line {lineno}: bad arc flags {flags}")
        if name in arc_names:
            raise GraphParseError(f"line {lineno}: duplicate arc-id {name!r}")
        arc_names.append(name)
        arc_pairs.append((tail, head))
        if "C" in flags:
            cov.append(len(arc_names) - 1)
        if "V" in flags:
            vis.append(len(arc_names) - 1)
    if node_names is None:
        raise GraphParseError("graph has no nodes")
    if not arc_pairs:
        raise GraphParseError("graph has no arcs")
    idx = {name: i for i, name in enumerate(node_names)}
    arcs = []
    for i, (tail, head) in enumerate(arc_pairs):
        if tail not in idx:
            raise GraphParseError(f"arc {arc_names[i]!r} references undeclared node {tail!r}")
        if head not in idx:
            raise GraphParseError(f"arc {arc_names[i]!r} references undeclared node {head!r}")
        arcs.append((idx[tail], idx[head]))
    g = Graph(node_names, arcs, arc_names)
    all_arcs = frozenset(range(g.m))
    f_cov = frozenset(cov) if cov else all_arcs
    f_vis = frozenset(vis) if vis else all_arcs
    return GraphFile(g, f_cov, f_vis, bool(cov), bool(vis))


def format_graph(g: Graph, f_cov: frozenset[int] | None = None,
                 f_vis: frozenset[int] | None = None) -> str:
    lines = ["nodes " + " ".join(g.node_names)]
    for a, (u, v) in enumerate(g.arcs):
        flags = ""
        if f_cov is not None and a in f_cov:
            flags += " C"
        if f_vis is not None and a in f_vis:
            flags += " V"
        lines.append(f"arc {g.arc_names[a]} {g.node_names[u]} {g.node_names[v]}{flags}")
    return "\n".join(lines) + "\n"


# -- model-reduction transforms -------------------------------------------


def node_centric_transform(g: Graph, marked_nodes: Iterable[int]) -> tuple[Graph, frozenset[int]]:
    """Expand each node v into v_in -> v_out joined by a node-arc.

    Returns the transformed graph and the node-arc ids of the marked nodes
    (to serve as a covering/visibility set).
    """
    marked = set(marked_nodes)
    node_names = []
    for name in g.node_names:
        node_names.append(f"{name}_in")
        node_names.append(f"{name}_out")
    arcs = []
    arc_names = []
    node_arc_of = {}
    for v, name in enumerate(g.node_names):
        node_arc_of[v] = len(arcs)
        arcs.append((2 * v, 2 * v + 1))
        arc_names.append(f"node_{name}")
    for a, (u, v) in enumerate(g.arcs):
        arcs.append((2 * u + 1, 2 * v))
        arc_names.append(g.arc_names[a])
    g2 = Graph(node_names, arcs, arc_names)
    return g2, frozenset(node_arc_of[v] for v in marked)


def st_sets_transform(g: Graph, sources: Iterable[int], targets: Iterable[int],
                      ) -> tuple[Graph, int, int, frozenset[int]]:
    """Add a super-source s and super-sink t wired to the given node sets.

    Returns (graph, s, t, f_cov) where f_cov is the original arc set
    (connector arcs are not required to be covered).
    """
    src = sorted(set(sources))
    tgt = sorted(set(targets))
    if not src or not tgt:
        raise GraphParseError("sources and targets must be non-empty")
    node_names = list(g.node_names) + ["__source", "__sink"]
    s_id, t_id = g.n, g.n + 1
    arcs = list(g.arcs)
    arc_names = list(g.arc_names)
    for v in src:
        arcs.append((s_id, v))
        arc_names.append(f"__src_{g.node_names[v]}")
    for v in tgt:
        arcs.append((v, t_id))
        arc_names.append(f"__snk_{g.node_names[v]}")
    g2 = Graph(node_names, arcs, arc_names)
    return g2, s_id, t_id, frozenset(range(g.m))


def with_extra_arc(g: Graph, tail: int, head: int, name: str) -> Graph:
    """Copy of g with one appended arc; existing arc ids are stable."""
    return Graph(g.node_names, list(g.arcs) + [(tail, head)],
                 list(g.arc_names) + [name])


def induced_subgraph(g: Graph, nodes: Iterable[int]) -> tuple[Graph, dict[int, int], dict[int, int]]:
    """Subgraph on a node set (intra arcs only).

    Returns (subgraph, node_map old->new, arc_map old->new).
    """
    keep = sorted(set(nodes))
    node_map = {v: i for i, v in enumerate(keep)}
    arcs = []
    arc_names = []
    arc_map = {}
    for a, (u, v) in enumerate(g.arcs):
        if u in node_map and v in node_map:
            arc_map[a] = len(arcs)
            arcs.append((node_map[u], node_map[v]))
            arc_names.append(g.arc_names[a])
    sub = Graph([g.node_names[v] for v in keep], arcs, arc_names)
    return sub, node_map, arc_map
