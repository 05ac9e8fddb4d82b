"""Sea/Cloud/Vapor/River partition of a graph from the perspective of a walk.

The restricted forward reachability R+(W) holds every element reachable from
the start arc of W by a walk that does not contain W; R-(W) is the mirror
image.  For a bridge-like walk the four Venn classes of (R+, R-) partition
the graph; for an avertible walk everything is Vapor.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import CycleGraphError, ModelError, WalkError
from .graph import Graph, scc_decompose
from .walks import Walk, internal_nodes, is_open_path, validate_walk

SEA, CLOUD, VAPOR, RIVER = "sea", "cloud", "vapor", "river"


def _require_hydro_graph(g: Graph) -> None:
    if not g.is_strongly_connected:
        raise ModelError("hydrostructure requires a strongly connected graph")
    if g.is_cycle_graph:
        raise CycleGraphError("safe walks are not defined on a cycle graph")


def _reach(g: Graph, w: Walk, forward: bool) -> frozenset[int] | None:
    """One direction of the restricted-reachability traversal.

    Returns the reached element set, or None when the walk is avertible
    (detected either because the walk is not an open path, or because the
    traversal re-enters the walk from outside).
    """
    if not is_open_path(g, w):
        return None
    arcs = w.arcs
    n = g.n
    walk_arcs = set(arcs)
    inner = set(internal_nodes(g, w))
    if forward:
        start, blocked = arcs[0], arcs[-1]
        adj, endpoint = g.out_arcs, g.head
    else:
        start, blocked = arcs[-1], arcs[0]
        adj, endpoint = g.in_arcs, g.tail
    seen_node = bytearray(n)
    seen_arc = bytearray(g.m)
    seen_arc[start] = 1
    stack = [endpoint(start)]
    seen_node[stack[0]] = 1
    reentry = False
    while stack:
        v = stack.pop()
        for a in adj[v]:
            if a == blocked or seen_arc[a]:
                continue
            seen_arc[a] = 1
            if a not in walk_arcs and endpoint(a) in inner:
                reentry = True
            u = endpoint(a)
            if not seen_node[u]:
                seen_node[u] = 1
                stack.append(u)
    if reentry:
        return None
    elems = {v for v in range(n) if seen_node[v]}
    elems.update(n + a for a in range(g.m) if seen_arc[a])
    return frozenset(elems)


def restricted_forward_reachability(g: Graph, w: Walk) -> frozenset[int]:
    """R+(W); all of G when W is avertible."""
    _check_walk(g, w)
    r = _reach(g, w, True)
    return g.all_elements() if r is None else r


def restricted_backward_reachability(g: Graph, w: Walk) -> frozenset[int]:
    """R-(W); all of G when W is avertible."""
    _check_walk(g, w)
    r = _reach(g, w, False)
    return g.all_elements() if r is None else r


def is_avertible_by_reentry(g: Graph, w: Walk) -> bool:
    """The traversal-level avertibility test (exposed for cross-testing
    against the Vapor-based one)."""
    _check_walk(g, w)
    return _reach(g, w, True) is None


def _check_walk(g: Graph, w: Walk) -> None:
    _require_hydro_graph(g)
    if len(w.arcs) < 2:
        raise WalkError("hydrostructure needs >= 2 arcs; split single arcs first")
    validate_walk(g, w)


class Hydrostructure:
    """Partition of all elements induced by a walk, plus the bridge-like flag."""

    __slots__ = ("walk", "bridge_like", "in_r_plus", "in_r_minus",
                 "sea", "cloud", "vapor", "river")

    def __init__(self, walk: Walk, bridge_like: bool,
                 in_r_plus: frozenset[int], in_r_minus: frozenset[int],
                 all_elements: frozenset[int]):
        self.walk = walk
        self.bridge_like = bridge_like
        self.in_r_plus = in_r_plus
        self.in_r_minus = in_r_minus
        self.sea = in_r_plus - in_r_minus
        self.cloud = in_r_minus - in_r_plus
        self.vapor = in_r_plus & in_r_minus
        self.river = all_elements - in_r_plus - in_r_minus

    def component_of(self, x: int) -> str:
        if x in self.in_r_plus:
            return VAPOR if x in self.in_r_minus else SEA
        return CLOUD if x in self.in_r_minus else RIVER

    def river_arcs(self, g: Graph) -> frozenset[int]:
        return frozenset(x - g.n for x in self.river if x >= g.n)


@lru_cache(maxsize=4096)
def build_hydrostructure(g: Graph, w: Walk) -> Hydrostructure:
    _check_walk(g, w)
    fwd = _reach(g, w, True)
    bwd = _reach(g, w, False)
    everything = g.all_elements()
    if fwd is None or bwd is None:
        return Hydrostructure(w, False, everything, everything, everything)
    return Hydrostructure(w, True, fwd, bwd, everything)


def split_single_arc(g: Graph, arc: int) -> "SplitArc":
    """Subdivide one arc with a dummy node.

    The first piece keeps the original arc id, the second piece is appended,
    so covering/visibility sets translate by keeping the old id and adding
    the new one.
    """
    if not 0 <= arc < g.m:
        raise WalkError(f"arc id {arc} out of range")
    name = g.arc_names[arc]
    dummy = g.n
    node_names = list(g.node_names) + [f"{name}*"]
    arcs = list(g.arcs)
    arc_names = list(g.arc_names)
    tail, head = arcs[arc]
    arcs[arc] = (tail, dummy)
    arc_names[arc] = f"{name}:1"
    arcs.append((dummy, head))
    arc_names.append(f"{name}:2")
    g2 = Graph(node_names, arcs, arc_names)
    return SplitArc(g2, Walk((arc, g.m)), arc, g.m, dummy, g)


@dataclass(frozen=True)
class SplitArc:
    graph: Graph
    walk: Walk                 # the two-arc walk replacing the original arc
    first_piece: int
    second_piece: int
    dummy_node: int
    original: Graph

    def translate_arcset(self, arcset: frozenset[int]) -> frozenset[int]:
        out = set(arcset)
        if self.first_piece in arcset:
            out.add(self.second_piece)
        return frozenset(out)

    def contract(self) -> Graph:
        """Inverse of the split (identity on the original graph)."""
        arcs = list(self.graph.arcs)
        names = list(self.graph.arc_names)
        tail = arcs[self.first_piece][0]
        head = arcs[self.second_piece][1]
        arcs[self.first_piece] = (tail, head)
        names[self.first_piece] = self.original.arc_names[self.first_piece]
        del arcs[self.second_piece]
        del names[self.second_piece]
        return Graph(self.original.node_names, arcs, names)


# -- SCC view ---------------------------------------------------------------


@dataclass(frozen=True)
class HydroSccView:
    sea_related_scc: frozenset[int] | None
    cloud_related_scc: frozenset[int] | None
    river_sccs: tuple[frozenset[int], ...]


def hydro_scc_view(g: Graph, h: Hydrostructure) -> HydroSccView:
    """Sea-related and cloud-related SCCs plus the SCCs of the River.

    river_sccs lists only SCCs containing at least one arc (singleton-node
    SCCs of the River carry no covering obligation).
    """
    if not h.bridge_like:
        raise ModelError("SCC view is defined for bridge-like walks only")
    w = h.walk
    n = g.n
    first_arc_el = n + w.arcs[0]
    last_arc_el = n + w.arcs[-1]
    sea_related = None
    if h.sea != frozenset({first_arc_el}):
        # prefix of the walk ending at its last split node
        elems: set[int] = set()
        last_split = None
        inner = internal_nodes(g, w)
        for pos, v in enumerate(inner):
            if g.is_split_node(v):
                last_split = pos
        if last_split is not None:
            for a in w.arcs[:last_split + 1]:
                elems.add(n + a)
            for v in inner[:last_split + 1]:
                elems.add(v)
        sea_related = frozenset(h.sea | elems)
    cloud_related = None
    if h.cloud != frozenset({last_arc_el}):
        elems = set()
        inner = internal_nodes(g, w)
        first_join = None
        for pos, v in enumerate(inner):
            if g.is_join_node(v):
                first_join = pos
                break
        if first_join is not None:
            for a in w.arcs[first_join + 1:]:
                elems.add(n + a)
            for v in inner[first_join:]:
                elems.add(v)
        cloud_related = frozenset(h.cloud | elems)
    river_sccs = _element_sccs(g, h.river)
    return HydroSccView(sea_related, cloud_related, river_sccs)


def _element_sccs(g: Graph, elements: frozenset[int]) -> tuple[frozenset[int], ...]:
    """Maximal SCCs (with >= 1 arc) of the subgraph spanned by an element set."""
    nodes = sorted(x for x in elements if x < g.n)
    if not nodes:
        return ()
    idx = {v: i for i, v in enumerate(nodes)}
    arcs = []
    arc_ids = []
    for x in elements:
        if x >= g.n:
            a = x - g.n
            u, v = g.arcs[a]
            if u in idx and v in idx:
                arcs.append((idx[u], idx[v]))
                arc_ids.append(a)
    sub = Graph([str(v) for v in nodes], arcs)
    dec = scc_decompose(sub)
    out = []
    for comp in dec.components:
        comp_nodes = {nodes[i] for i in comp}
        comp_elems = set(comp_nodes)
        has_arc = False
        for (ui, vi), a in zip(arcs, arc_ids):
            if ui in comp and vi in comp:
                comp_elems.add(g.n + a)
                has_arc = True
        if has_arc:
            out.append(frozenset(comp_elems))
    return tuple(out)


# -- definitional / visible reachability (product construction) -------------


class _Matcher:
    """Failure-function automaton over an arc-id pattern; state L is accept."""

    __slots__ = ("pattern", "fail", "L", "_memo")

    def __init__(self, pattern: tuple[int, ...]):
        self.pattern = pattern
        self.L = len(pattern)
        fail = [0] * self.L
        k = 0
        for q in range(1, self.L):
            while k and pattern[q] != pattern[k]:
                k = fail[k - 1]
            if pattern[q] == pattern[k]:
                k += 1
            fail[q] = k
        self.fail = fail
        self._memo: dict[tuple[int, int], int] = {}

    def step(self, q: int, a: int) -> int:
        key = (q, a)
        memo = self._memo
        r = memo.get(key)
        if r is not None:
            return r
        p = self.pattern
        if q == self.L:
            r = q
        else:
            k = q
            while True:
                if k < self.L and p[k] == a:
                    r = k + 1
                    break
                if k == 0:
                    r = 0
                    break
                k = self.fail[k - 1]
        memo[key] = r
        return r


def match_restricted_reachability(g: Graph, pattern: tuple[int, ...], start: int,
                                  *, start_is_arc: bool, forward: bool = True,
                                  visible: frozenset[int] | None = None) -> frozenset[int]:
    """Elements reachable from `start` by walks whose (visible-filtered) arc
    sequence never contains `pattern` contiguously.

    This is the definition-level computation; with visible=None it equals
    restricted reachability and serves as the independent cross-check for the
    traversal algorithm.  Backward reachability mirrors everything.
    """
    if forward:
        pat = pattern
        adj, endpoint = g.out_arcs, g.head
    else:
        pat = tuple(reversed(pattern))
        adj, endpoint = g.in_arcs, g.tail
    mat = _Matcher(pat)
    L = mat.L
    n = g.n
    is_vis = (lambda a: True) if visible is None else (lambda a: a in visible)
    reached: set[int] = set()
    seen = set()
    stack: list[tuple[int, int]] = []
    if start_is_arc:
        q0 = mat.step(0, start) if is_vis(start) else 0
        if q0 < L:
            reached.add(n + start)
            v0 = endpoint(start)
            stack.append((v0, q0))
    else:
        stack.append((start, 0))
    for st in stack:
        seen.add(st)
        reached.add(st[0])
    while stack:
        v, q = stack.pop()
        for a in adj[v]:
            q2 = mat.step(q, a) if is_vis(a) else q
            if q2 == L:
                continue
            reached.add(n + a)
            u = endpoint(a)
            st = (u, q2)
            if st not in seen:
                seen.add(st)
                reached.add(u)
                stack.append(st)
    return frozenset(reached)


# -- visible adjacency and visible hydrostructure ---------------------------


@dataclass(frozen=True)
class VisibleAdjacency:
    """Visible successor/predecessor relation through invisible-only paths."""

    f_vis: frozenset[int]
    succ_from_node: dict[int, frozenset[int]]   # node -> visible arcs continuing from it
    pred_to_node: dict[int, frozenset[int]]     # node -> visible arcs arriving at it

    def vis_out(self, node: int) -> frozenset[int]:
        return self.succ_from_node[node]

    def vis_in(self, node: int) -> frozenset[int]:
        return self.pred_to_node[node]


def visible_adjacency(g: Graph, f_vis: frozenset[int]) -> VisibleAdjacency:
    """One invisible-only traversal per distinct endpoint of a visible arc.

    succ_from_node[x]: visible arcs whose tail is reachable from x in G - F;
    pred_to_node[x]: visible arcs whose head reaches x in G - F.
    """
    invisible_out: list[list[int]] = [[] for _ in range(g.n)]
    invisible_in: list[list[int]] = [[] for _ in range(g.n)]
    vis_tails: dict[int, list[int]] = {}
    vis_heads: dict[int, list[int]] = {}
    for a, (u, v) in enumerate(g.arcs):
        if a in f_vis:
            vis_tails.setdefault(u, []).append(a)
            vis_heads.setdefault(v, []).append(a)
        else:
            invisible_out[u].append(a)
            invisible_in[v].append(a)

    def closure(v0: int, adj, endpoint) -> set[int]:
        seen = {v0}
        stack = [v0]
        while stack:
            v = stack.pop()
            for a in adj[v]:
                u = endpoint(a)
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return seen

    succ: dict[int, frozenset[int]] = {}
    pred: dict[int, frozenset[int]] = {}
    for v in range(g.n):
        fwd = closure(v, invisible_out, g.head)
        succ[v] = frozenset(a for u in fwd for a in vis_tails.get(u, ()))
        bwd = closure(v, invisible_in, g.tail)
        pred[v] = frozenset(a for u in bwd for a in vis_heads.get(u, ()))
    return VisibleAdjacency(f_vis, succ, pred)


def visible_subsequence(w: Walk, f_vis: frozenset[int]) -> tuple[int, ...]:
    return tuple(a for a in w.arcs if a in f_vis)


@lru_cache(maxsize=2048)
def build_visible_hydrostructure(g: Graph, w: Walk, f_vis: frozenset[int]) -> Hydrostructure:
    """Hydrostructure from the F-visible restricted reachabilities.

    With f_vis covering all arcs this coincides with build_hydrostructure.
    A walk is visibly bridge-like iff its end arc is not visibly forward
    reachable (the visible Vapor is then a single visible path).
    """
    _require_hydro_graph(g)
    validate_walk(g, w)
    if w.arcs[0] not in f_vis or w.arcs[-1] not in f_vis:
        raise ModelError("visible hydrostructure needs visible endpoint arcs")
    pattern = visible_subsequence(w, f_vis)
    if len(pattern) < 2:
        raise WalkError("visible part has < 2 arcs; split the visible arc first")
    everything = g.all_elements()
    rplus = match_restricted_reachability(
        g, pattern, w.arcs[0], start_is_arc=True, forward=True, visible=f_vis)
    if g.n + w.arcs[-1] in rplus:
        return Hydrostructure(w, False, everything, everything, everything)
    rminus = match_restricted_reachability(
        g, pattern, w.arcs[-1], start_is_arc=True, forward=False, visible=f_vis)
    return Hydrostructure(w, True, rplus, rminus, everything)


def hydro_to_json_dict(g: Graph, h: Hydrostructure) -> dict:
    return {
        "walk": [g.arc_names[a] for a in h.walk.arcs],
        "bridge_like": h.bridge_like,
        "sea": g.sorted_names(h.sea),
        "cloud": g.sorted_names(h.cloud),
        "vapor": g.sorted_names(h.vapor),
        "river": g.sorted_names(h.river),
    }
