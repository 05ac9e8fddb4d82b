"""Candidate construction, two-pointer enumeration of maximal safe walks,
and the incremental hydrostructure used to answer window queries in O(1).

Enumeration strategy: trivially safe walks are the maximality-filtered
univocal extensions of the arcs; non-trivial maximal safe walks are windows
of a closed arc-covering candidate walk (every safe walk is one of its cyclic
subwalks), found with the two-pointer algorithm.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass

from .errors import CycleGraphError, ModelError, WalkError
from .graph import Graph
from .hydrostructure import build_hydrostructure
from .safety import INF, _normalize_linear_k, split_k_circular, verify_circular, verify_linear
from .walk_cover import min_walk_cover
from .walks import (Walk, heart_and_wings, is_subwalk, univocal_extension,
                    validate_walk)


def _require_enumeration_graph(g: Graph) -> None:
    if not g.is_strongly_connected:
        raise ModelError("enumeration requires a strongly connected graph")
    if g.is_cycle_graph:
        raise CycleGraphError("safe walks are not defined on a cycle graph")


# -- candidate walk -----------------------------------------------------------


def _shortest_node_path(g: Graph, src: int, dst: int) -> list[int]:
    """Arc sequence of a BFS-shortest src-dst path; lowest arc-id tie break."""
    if src == dst:
        return []
    parent: dict[int, tuple[int, int]] = {src: (-1, -1)}
    queue = [src]
    qi = 0
    while qi < len(queue):
        v = queue[qi]
        qi += 1
        if v == dst:
            break
        for a in g.out_arcs[v]:  # out_arcs ascend by arc id
            u = g.head(a)
            if u not in parent:
                parent[u] = (v, a)
                queue.append(u)
    arcs = []
    cur = dst
    while cur != src:
        prev, a = parent[cur]
        arcs.append(a)
        cur = prev
    arcs.reverse()
    return arcs


def candidate_circular_walk(g: Graph) -> Walk:
    """Closed arc-covering walk: arcs in ascending id order, joined by
    shortest paths.  Deterministic; length O(mn)."""
    if not g.is_strongly_connected:
        raise ModelError("candidate walk requires a strongly connected graph")
    arcs: list[int] = []
    for a in range(g.m):
        if arcs:
            arcs.extend(_shortest_node_path(g, g.head(arcs[-1]), g.tail(a)))
        arcs.append(a)
    arcs.extend(_shortest_node_path(g, g.head(arcs[-1]), g.tail(arcs[0])))
    w = Walk(tuple(arcs), closed=True)
    validate_walk(g, w)
    return w


# -- two-pointer --------------------------------------------------------------


def two_pointer(host: Walk, verifier) -> list[Walk]:
    """All maximal safe subwalks of the host for a subwalk-monotone verifier.

    Closed hosts are matched cyclically (doubling minus the seam); windows
    covering the full cycle canonicalize to the host itself.  Verifier calls
    are at most 2x the effective host length.
    """
    arcs = host.arcs
    L = len(arcs)
    if host.closed:
        eff = arcs + arcs
        starts = range(L)
        cap = L
    else:
        eff = arcs
        starts = range(L)
        cap = L
    lengths = [0] * L
    r = 0  # exclusive right end of the current safe window
    for l in starts:
        if r < l:
            r = l
        while r - l < cap and (not host.closed or r < len(eff)) and r < len(eff):
            if not verifier(Walk(eff[l:r + 1])):
                break
            r += 1
        lengths[l] = r - l
        if r == l:
            r += 1  # even the single arc is unsafe; skip it
    if host.closed and all(ln == L for ln in lengths):
        return [host]  # every rotation safe at the cap: the cycle itself
    out: list[Walk] = []
    seen: set[tuple] = set()
    for l in starts:
        ln = lengths[l]
        if ln == 0:
            continue
        prev = lengths[l - 1] if (l > 0 or host.closed) else 0
        if prev >= ln + 1:
            continue  # contained in the predecessor's window
        w = Walk(eff[l:l + ln])
        key = (w.arcs, w.closed)
        if key not in seen:
            seen.add(key)
            out.append(w)
    return out


def _maximality_filter(walks: list[Walk]) -> list[Walk]:
    """Drop duplicates and walks that are proper subwalks of another."""
    uniq: list[Walk] = []
    seen = set()
    for w in walks:
        key = (w.arcs, w.closed)
        if key not in seen:
            seen.add(key)
            uniq.append(w)
    keep = []
    for w in uniq:
        contained = any(w is not other and len(other.arcs) >= len(w.arcs)
                        and is_subwalk(w, other)
                        and (w.arcs, w.closed) != (other.arcs, other.closed)
                        for other in uniq)
        if not contained:
            keep.append(w)
    return keep


def _sorted_output(walks: list[Walk]) -> list[Walk]:
    return sorted(walks, key=lambda w: (-len(w.arcs), w.arcs))


# -- maximal safe walk enumeration --------------------------------------------


def enumerate_maximal_circular(g: Graph, k: int | float) -> list[Walk]:
    _require_enumeration_graph(g)
    base = _maximal_one_circular(g)
    if k == 1:
        return _sorted_output(base)
    out: list[Walk] = []
    for w in base:
        anatomy = heart_and_wings(g, w)
        if anatomy.trivial:
            out.append(w)
            continue
        h = build_hydrostructure(g, anatomy.heart)
        if h.river:
            out.append(w)
        else:
            out.extend(split_k_circular(g, w, k))
    return _sorted_output(_maximality_filter(out))


def _maximal_one_circular(g: Graph) -> list[Walk]:
    trivial = [univocal_extension(g, Walk((a,))) for a in range(g.m)]
    host = candidate_circular_walk(g)
    windows = two_pointer(host, lambda w: verify_circular(g, w, 1))
    return _maximality_filter(trivial + windows)


def enumerate_maximal_linear(g: Graph, k: int | float, s: int, t: int) -> list[Walk]:
    _require_enumeration_graph(g)
    k = _normalize_linear_k(g, k)
    out: list[Walk] = []
    for w in _maximal_one_circular(g):
        if verify_linear(g, w, k, s, t):
            out.append(w)
        else:
            out.extend(two_pointer(w, lambda sub: verify_linear(g, sub, k, s, t)))
    return _sorted_output(_maximality_filter(out))


# -- incremental hydrostructure ------------------------------------------------


@dataclass
class IncrementalAnnotation:
    """O(1) window queries for R+ / R- over one bridge-like host walk.

    entry[x]: first host position p (arcs 0-based) with x in the sibling
    reachability of arcs[p]; meaningful at split-arc positions >= 1.
    exit[x]: last position p with x in the backward sibling reachability of
    arcs[p]; meaningful at join-arc positions <= len-2.
    """

    g: Graph
    host: Walk
    entry: dict[int, int]
    exit: dict[int, int]
    split_positions: list[int]
    join_positions: list[int]
    arc_positions: dict[int, list[int]]
    node_positions: dict[int, list[int]]   # node position p = head(arcs[p])

    def _in_range(self, positions: list[int], lo: int, hi: int) -> bool:
        if hi < lo:
            return False
        i = bisect_left(positions, lo)
        return i < len(positions) and positions[i] <= hi

    def in_r_plus(self, x: int, l: int, r: int) -> bool:
        g, host = self.g, self.host
        if x >= g.n:
            if self._in_range(self.arc_positions.get(x - g.n, []), l, r - 1):
                return True
        else:
            if self._in_range(self.node_positions.get(x, []), l, r - 1):
                return True
        i = bisect_right(self.split_positions, r) - 1
        if i < 0 or self.split_positions[i] < l + 1:
            return False
        ent = self.entry.get(x)
        return ent is not None and ent <= self.split_positions[i]

    def in_r_minus(self, x: int, l: int, r: int) -> bool:
        g = self.g
        if x >= g.n:
            if self._in_range(self.arc_positions.get(x - g.n, []), l + 1, r):
                return True
        else:
            if self._in_range(self.node_positions.get(x, []), l, r - 1):
                return True
        i = bisect_left(self.join_positions, l)
        if i >= len(self.join_positions) or self.join_positions[i] > r - 1:
            return False
        ext = self.exit.get(x)
        return ext is not None and ext >= self.join_positions[i]


def incremental_annotation(g: Graph, host: Walk) -> IncrementalAnnotation:
    """Single interrupted traversal per direction; total work O(m)."""
    validate_walk(g, host)
    h = build_hydrostructure(g, host)
    if not h.bridge_like:
        raise WalkError("incremental annotation requires a bridge-like host")
    arcs = host.arcs
    entry = _sibling_sweep(g, arcs, forward=True)
    exit_ = _sibling_sweep(g, arcs, forward=False)
    arc_positions: dict[int, list[int]] = {}
    node_positions: dict[int, list[int]] = {}
    for p, a in enumerate(arcs):
        arc_positions.setdefault(a, []).append(p)
        if p < len(arcs) - 1:
            node_positions.setdefault(g.head(a), []).append(p)
    return IncrementalAnnotation(
        g, host, entry, exit_,
        [p for p in range(1, len(arcs)) if g.is_split_arc(arcs[p])],
        [p for p in range(len(arcs) - 1) if g.is_join_arc(arcs[p])],
        arc_positions, node_positions)


def _sibling_sweep(g: Graph, arcs: tuple[int, ...], forward: bool) -> dict[int, int]:
    """Interrupted traversal computing, for every element, the first (last)
    host position whose sibling reachability contains it."""
    n = g.n
    if forward:
        positions = [p for p in range(1, len(arcs)) if g.is_split_arc(arcs[p])]
        adj, endpoint, far = g.out_arcs, g.head, g.tail
    else:
        positions = [p for p in range(len(arcs) - 2, -1, -1) if g.is_join_arc(arcs[p])]
        adj, endpoint, far = g.in_arcs, g.tail, g.head
    label: dict[int, int] = {}
    prev_blocked: int | None = None
    for p in positions:
        blocked = arcs[p]
        seeds: list[int] = []
        start_node = far(blocked)
        if start_node not in label:
            label[start_node] = p
            seeds.append(start_node)
        if prev_blocked is not None and (n + prev_blocked) not in label:
            label[n + prev_blocked] = p
            v = endpoint(prev_blocked)
            if v not in label:
                label[v] = p
                seeds.append(v)
        stack = seeds
        while stack:
            v = stack.pop()
            for a in adj[v]:
                if a == blocked or (n + a) in label:
                    continue
                label[n + a] = p
                u = endpoint(a)
                if u not in label:
                    label[u] = p
                    stack.append(u)
        prev_blocked = blocked
    return label


@dataclass(frozen=True)
class RiverStats:
    elements: int
    sources: int
    sinks: int
    violators: int
    incidences: int

    @property
    def nonempty(self) -> bool:
        return self.elements > 0

    @property
    def is_path(self) -> bool:
        # source/sink/violator counts alone cannot tell a path from a path
        # plus a disjoint cycle; the incidence count settles connectivity.
        return (self.elements > 0 and self.violators == 0
                and self.sources == 1 and self.sinks == 1
                and self.incidences == self.elements - 1)


class RiverStream:
    """Per-window River queries over a bridge-like host walk."""

    def __init__(self, g: Graph, host: Walk):
        self.g = g
        self.host = host
        self.ann = incremental_annotation(g, host)

    def river_elements(self, l: int, r: int) -> frozenset[int]:
        ann = self.ann
        return frozenset(
            x for x in range(self.g.n + self.g.m)
            if not ann.in_r_plus(x, l, r) and not ann.in_r_minus(x, l, r))

    def stats(self, l: int, r: int) -> RiverStats:
        return river_stats_of(self.g, self.river_elements(l, r))

    def cover_exceeds(self, l: int, r: int, k: int | float) -> bool:
        """Walk-cover test per window; k = INF is identically false."""
        if k == INF:
            return False
        river = self.river_elements(l, r)
        required = frozenset(x - self.g.n for x in river if x >= self.g.n)
        return min_walk_cover(self.g, river, required).size > k


def river_stats_of(g: Graph, river: frozenset[int]) -> RiverStats:
    """Degree counters of an element set viewed as the node-arc incidence graph."""
    sources = sinks = violators = incidences = 0
    for x in river:
        if x >= g.n:
            a = x - g.n
            indeg = 1 if g.tail(a) in river else 0
            outdeg = 1 if g.head(a) in river else 0
            incidences += indeg + outdeg
        else:
            indeg = sum(1 for a in g.in_arcs[x] if g.n + a in river)
            outdeg = sum(1 for a in g.out_arcs[x] if g.n + a in river)
        if indeg == 0:
            sources += 1
        if outdeg == 0:
            sinks += 1
        if indeg > 1 or outdeg > 1:
            violators += 1
    return RiverStats(len(river), sources, sinks, violators, incidences)


def river_property_stream(g: Graph, host: Walk) -> RiverStream:
    return RiverStream(g, host)


# -- worst-case family ----------------------------------------------------------


@dataclass(frozen=True)
class WorstCaseFamily:
    graph: Graph
    walks: tuple[Walk, ...]
    s: int
    t: int


def worst_case_family(n: int, m: int) -> WorstCaseFamily:
    """Graph with Theta(n) nodes and Theta(m) arcs carrying m safe walks of
    length 2n+3 each (total Omega(mn)).

    Two chains a0..an and b0..bn flank a bipartite block: chain arcs A1..An
    and B1..Bn, fan-out arcs a_n -> x_j, block arcs e_i = (x_j, y_k), fan-in
    arcs y_k -> b0, and one return arc b_n -> a0.  With s = a0 and t = b_n,
    W_i = A1..An f_xj e_i f_yk B1..Bn is k-circular and k-st safe: its trivial
    heart contains e_i, which no proper s-suffix or t-prefix covers.
    """
    if n < 2 or m < 1 or m > n * n:
        raise ModelError("need n >= 2 and 1 <= m <= n^2")
    q = max(2, int(m ** 0.5 + 0.9999)) if m > 1 else 1
    if m == 1:
        q = 1
    p = (m + q - 1) // q
    node_names = ([f"a{i}" for i in range(n + 1)]
                  + [f"b{i}" for i in range(n + 1)]
                  + [f"x{j}" for j in range(p)]
                  + [f"y{k}" for k in range(q)])
    a_node = {i: i for i in range(n + 1)}
    b_node = {i: n + 1 + i for i in range(n + 1)}
    x_node = {j: 2 * (n + 1) + j for j in range(p)}
    y_node = {k: 2 * (n + 1) + p + k for k in range(q)}
    arcs: list[tuple[int, int]] = []
    names: list[str] = []

    def add(u, v, name):
        arcs.append((u, v))
        names.append(name)
        return len(arcs) - 1

    a_chain = [add(a_node[i], a_node[i + 1], f"A{i + 1}") for i in range(n)]
    b_chain = [add(b_node[i], b_node[i + 1], f"B{i + 1}") for i in range(n)]
    fan_out = [add(a_node[n], x_node[j], f"f{j}") for j in range(p)]
    fan_in = [add(y_node[k], b_node[0], f"g{k}") for k in range(q)]
    block = []
    for i in range(m):
        j, k = divmod(i, q)
        block.append((add(x_node[j], y_node[k], f"e{i}"), j, k))
    if m == 1:
        # avoid the single-cycle degenerate graph
        block.append((add(x_node[0], y_node[0], "e1x"), 0, 0))
    add(b_node[n], a_node[0], "ret")
    g = Graph(node_names, arcs, names)
    walks = tuple(
        Walk(tuple(a_chain) + (fan_out[j], e, fan_in[k]) + tuple(b_chain))
        for e, j, k in block[:m])
    return WorstCaseFamily(g, walks, a_node[0], b_node[n])
