"""Minimum walk-cover of a subgraph and st-restricted reachability.

A cover walk is any walk using only arcs of the subgraph; it may repeat arcs
freely.  One walk can cover a set of required arcs iff their mutual-
reachability classes form a chain, so the minimum number of walks covering a
required arc set equals the minimum chain cover of those classes (dually, the
maximum arc antichain).  Arcs whose tail or head lies outside the subgraph
are admitted as walk start/end positions (the River of a hydrostructure
contains such boundary arcs).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import WalkError
from .graph import Graph
from .hydrostructure import Hydrostructure, build_hydrostructure
from .walks import Walk, validate_walk

INF = float("inf")


@dataclass(frozen=True)
class WalkCoverResult:
    size: int | float
    witnesses: tuple[Walk, ...] | None = None


def _arc_reach_within(g: Graph, sub_arcs: frozenset[int], start: int) -> set[int]:
    """Arcs of the subgraph reachable from `start` (inclusive) along sub arcs."""
    out_by_node: dict[int, list[int]] = {}
    for a in sub_arcs:
        out_by_node.setdefault(g.tail(a), []).append(a)
    seen = {start}
    stack = [start]
    while stack:
        a = stack.pop()
        for b in out_by_node.get(g.head(a), ()):
            if b not in seen:
                seen.add(b)
                stack.append(b)
    return seen


@lru_cache(maxsize=8192)
def min_walk_cover(g: Graph, sub: frozenset[int], required: frozenset[int],
                   with_witnesses: bool = False) -> WalkCoverResult:
    """Minimum number of walks within the element set `sub` covering all
    arcs in `required` (arc ids).  Size 0 for an empty requirement; INF when
    a required arc is not part of the subgraph.
    """
    if not required:
        return WalkCoverResult(0, () if with_witnesses else None)
    sub_arcs = frozenset(x - g.n for x in sub if x >= g.n)
    if not required <= sub_arcs:
        return WalkCoverResult(INF, None)
    req = sorted(required)
    reach = {a: _arc_reach_within(g, sub_arcs, a) for a in req}
    # mutual-reachability classes among required arcs
    class_of: dict[int, int] = {}
    reps: list[int] = []
    for a in req:
        for i, r in enumerate(reps):
            if a in reach[r] and r in reach[a]:
                class_of[a] = i
                break
        else:
            class_of[a] = len(reps)
            reps.append(a)
    k = len(reps)
    follows = [[False] * k for _ in range(k)]
    for i, r in enumerate(reps):
        for j, s in enumerate(reps):
            if i != j and s in reach[r]:
                follows[i][j] = True
    # minimum chain cover = k - maximum matching on the strict order
    match_right = [-1] * k

    def try_kuhn(u: int, seen: list[bool]) -> bool:
        for v in range(k):
            if follows[u][v] and not seen[v]:
                seen[v] = True
                if match_right[v] == -1 or try_kuhn(match_right[v], seen):
                    match_right[v] = u
                    return True
        return False

    matched = 0
    for u in range(k):
        if try_kuhn(u, [False] * k):
            matched += 1
    size = k - matched
    if not with_witnesses:
        return WalkCoverResult(size, None)
    return WalkCoverResult(size, _extract_witnesses(g, sub_arcs, req, class_of,
                                                    reps, match_right, reach))


def _extract_witnesses(g, sub_arcs, req, class_of, reps, match_right, reach):
    k = len(reps)
    succ = {}
    has_pred = set()
    for v in range(k):
        if match_right[v] != -1:
            succ[match_right[v]] = v
            has_pred.add(v)
    chains = []
    for u in range(k):
        if u in has_pred:
            continue
        chain = [u]
        while chain[-1] in succ:
            chain.append(succ[chain[-1]])
        chains.append(chain)
    members: dict[int, list[int]] = {i: [] for i in range(k)}
    for a in req:
        members[class_of[a]].append(a)
    witnesses = []
    for chain in chains:
        targets = []
        for c in chain:
            targets.extend(sorted(members[c]))
        arcs = [targets[0]]
        for nxt in targets[1:]:
            arcs.extend(_arc_path(g, sub_arcs, arcs[-1], nxt))
        witnesses.append(Walk(tuple(arcs)))
    return tuple(witnesses)


def _arc_path(g, sub_arcs, src: int, dst: int) -> list[int]:
    """Arcs after src forming a shortest sub-arc walk from src to dst."""
    if src == dst:
        return []
    out_by_node: dict[int, list[int]] = {}
    for a in sub_arcs:
        out_by_node.setdefault(g.tail(a), []).append(a)
    parent = {src: None}
    queue = [src]
    qi = 0
    while qi < len(queue):
        a = queue[qi]
        qi += 1
        if a == dst:
            break
        for b in sorted(out_by_node.get(g.head(a), ())):
            if b not in parent:
                parent[b] = a
                queue.append(b)
    path = []
    cur = dst
    while cur != src:
        path.append(cur)
        cur = parent[cur]
    path.reverse()
    return path


def river_cover_exceeds(g: Graph, h: Hydrostructure, k: int | float,
                        required: frozenset[int] | None = None,
                        sub: frozenset[int] | None = None) -> bool:
    """Whether the (F-)arcs of the River (or an st-induced part) cannot be
    covered with k walks.  Identically false for k = INF."""
    if k == INF:
        return False
    if sub is None:
        sub = h.river
    if required is None:
        required = frozenset(x - g.n for x in sub if x >= g.n)
    return min_walk_cover(g, sub, required).size > k


# -- st-restricted reachability ---------------------------------------------


@dataclass(frozen=True)
class StInducedView:
    r_plus_s: frozenset[int]
    r_minus_t: frozenset[int]
    st_induced_subgraph: frozenset[int]
    st_induced_river: frozenset[int]


def _seeded_reach(g: Graph, w: Walk, seed_node: int, forward: bool) -> frozenset[int]:
    """Traversal from a node in G minus the walk's far end arc.

    Only valid when the seed cannot reach that end while avoiding the walk
    (checked by the caller via the walk's own hydrostructure).
    """
    n = g.n
    if forward:
        blocked = w.arcs[-1]
        adj, endpoint = g.out_arcs, g.head
    else:
        blocked = w.arcs[0]
        adj, endpoint = g.in_arcs, g.tail
    seen_node = bytearray(n)
    seen_arc = bytearray(g.m)
    seen_node[seed_node] = 1
    stack = [seed_node]
    while stack:
        v = stack.pop()
        for a in adj[v]:
            if a == blocked or seen_arc[a]:
                continue
            seen_arc[a] = 1
            u = endpoint(a)
            if not seen_node[u]:
                seen_node[u] = 1
                stack.append(u)
    elems = {v for v in range(n) if seen_node[v]}
    elems.update(n + a for a in range(g.m) if seen_arc[a])
    return frozenset(elems)


@lru_cache(maxsize=8192)
def st_restricted_reachability(g: Graph, w: Walk, s: int, t: int) -> StInducedView:
    """R+_s(W), R-_t(W) and their intersections with the graph and River.

    R+_s is everything reachable from s without using W as a subwalk; it is
    the whole graph when s is in R-(W) or W is avertible.
    """
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise WalkError("s or t is not a node of the graph")
    validate_walk(g, w)
    h = build_hydrostructure(g, w)
    everything = g.all_elements()
    if not h.bridge_like:
        rps = rmt = everything
    else:
        rps = everything if s in h.in_r_minus else _seeded_reach(g, w, s, True)
        rmt = everything if t in h.in_r_plus else _seeded_reach(g, w, t, False)
    induced = rps & rmt
    return StInducedView(rps, rmt, induced, induced & h.river)


def element_wccs(g: Graph, elements: frozenset[int]) -> list[frozenset[int]]:
    """Weakly connected components of an element set (node-arc incidence,
    undirected)."""
    neighbours: dict[int, list[int]] = {x: [] for x in elements}
    for x in elements:
        if x >= g.n:
            a = x - g.n
            for v in g.arcs[a]:
                if v in neighbours:
                    neighbours[x].append(v)
                    neighbours[v].append(x)
    out = []
    seen: set[int] = set()
    for x in sorted(elements):
        if x in seen:
            continue
        comp = {x}
        stack = [x]
        seen.add(x)
        while stack:
            y = stack.pop()
            for z in neighbours[y]:
                if z not in seen:
                    seen.add(z)
                    comp.add(z)
                    stack.append(z)
        out.append(frozenset(comp))
    return out
