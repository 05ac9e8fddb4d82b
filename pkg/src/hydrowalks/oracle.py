"""Exact safety decisions on small instances, straight from the definitions.

A walk is unsafe in a model iff some covering collection of at most k
solution walks avoids it; the oracle searches for such a collection over the
product of the graph with a walk-match automaton, tracking covered required
arcs as a bitmask.  Solution walks for circular shapes are closed walks
matched cyclically (a walk longer than the cycle is never one of its
subwalks); for linear shapes they are node-to-node s-t walks matched plainly.

This module is the independent ground truth for every characterisation; it
shares no code with the fast verification paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from .errors import OracleSizeError
from .graph import Graph
from .safety import INF, SafetyModel
from .walks import Walk

MAX_ARCS = 12
MAX_WALK = 8
MAX_K = 4

_BIG = 10 ** 9


def _delta_table(pattern: tuple[int, ...], m: int,
                 visible: frozenset[int] | None) -> list[list[int]]:
    """Full transition table of the failure-function automaton; state L is
    the absorbing accept.  Invisible arcs do not advance the automaton."""
    L = len(pattern)
    fail = [0] * L
    k = 0
    for q in range(1, L):
        while k and pattern[q] != pattern[k]:
            k = fail[k - 1]
        if pattern[q] == pattern[k]:
            k += 1
        fail[q] = k
    table = [[0] * m for _ in range(L + 1)]
    for q in range(L + 1):
        for a in range(m):
            if visible is not None and a not in visible:
                table[q][a] = q
                continue
            if q == L:
                table[q][a] = L
                continue
            kk = q
            while True:
                if kk < L and pattern[kk] == a:
                    table[q][a] = kk + 1
                    break
                if kk == 0:
                    table[q][a] = 0
                    break
                kk = fail[kk - 1]
    return table


def _maximal_masks(masks) -> list[int]:
    out: list[int] = []
    for msk in sorted(set(masks), key=lambda x: -bin(x).count("1")):
        if msk == 0:
            continue
        if not any(msk & ~kept == 0 for kept in out):
            out.append(msk)
    return out


def _cover_dp(masks: list[int], full: int) -> list[int]:
    """dp[S] = minimum number of walks whose joint mask covers S."""
    dp = [_BIG] * (full + 1)
    dp[0] = 0
    for sub in range(1, full + 1):
        best = _BIG
        for msk in masks:
            if msk & sub:
                c = dp[sub & ~msk]
                if c + 1 < best:
                    best = c + 1
        dp[sub] = best
    return dp


class OracleEngine:
    """Avoiding-walk mask search for one (graph, query walk, visibility)."""

    def __init__(self, g: Graph, w: Walk, f_vis: frozenset[int] | None = None):
        if g.m > MAX_ARCS:
            raise OracleSizeError(f"oracle handles at most {MAX_ARCS} arcs")
        if len(w.arcs) > MAX_WALK:
            raise OracleSizeError(f"oracle handles walks of at most {MAX_WALK} arcs")
        self.g = g
        self.walk = w
        self.f_vis = f_vis
        pattern = w.arcs if f_vis is None else tuple(a for a in w.arcs if a in f_vis)
        if not pattern:
            raise OracleSizeError("walk has no visible arcs")
        self.pattern = pattern
        self.L = len(pattern)
        self.delta = _delta_table(pattern, g.m, f_vis)
        self.full = (1 << g.m) - 1
        self._out = [[(a, g.head(a), 1 << a) for a in g.out_arcs[v]]
                     for v in range(g.n)]
        self._circ_dp: list[int] | None = None
        self._lin_dp: dict[int, dict[int, list[int]]] = {}
        self._circ_masks: list[int] | None = None
        self._lin_masks: dict[int, dict[int, set[int]]] = {}
        self._witness_src: dict = {}

    # -- closed walks ------------------------------------------------------

    def circular_masks(self) -> list[int]:
        """Coverage masks achievable by single closed walks avoiding the
        query walk cyclically.

        A closed walk contains a walk iff the walk occurs contiguously in its
        periodic unrolling (the seam is never duplicated), so an avoiding
        closed walk is exactly a cycle of the product automaton through a
        consistent seam state that never reaches the accept state.
        """
        if self._circ_masks is not None:
            return self._circ_masks
        g, L = self.g, self.L
        masks: set[int] = set()
        delta = self.delta
        for q0 in range(L):
            for v0 in range(g.n):
                seen = set()
                start = (v0, q0, 0)
                stack = [start]
                seen.add(start)
                while stack:
                    v, q, mask = stack.pop()
                    row = delta[q]
                    for a, u, bit in self._out[v]:
                        q2 = row[a]
                        if q2 == L:
                            continue
                        nxt = (u, q2, mask | bit)
                        if u == v0 and q2 == q0:
                            if nxt[2] not in masks:
                                masks.add(nxt[2])
                                self._witness_src.setdefault(("auto", nxt[2]), (v0, q0))
                        if nxt not in seen:
                            seen.add(nxt)
                            stack.append(nxt)
        self._circ_masks = _maximal_masks(masks)
        return self._circ_masks

    def circular_dp(self) -> list[int]:
        if self._circ_dp is None:
            self._circ_dp = _cover_dp(self.circular_masks(), self.full)
        return self._circ_dp

    # -- s-t walks -----------------------------------------------------------

    def linear_masks(self, s: int) -> dict[int, set[int]]:
        """Per target node: coverage masks of avoiding s-t walks."""
        if s in self._lin_masks:
            return self._lin_masks[s]
        g, L = self.g, self.L
        delta = self.delta
        per_t: dict[int, set[int]] = {t: set() for t in range(g.n)}
        start = (s, 0, 0)
        seen = {start}
        stack = [start]
        per_t[s].add(0)
        while stack:
            v, q, mask = stack.pop()
            row = delta[q]
            for a, u, bit in self._out[v]:
                q2 = row[a]
                if q2 == L:
                    continue
                nxt = (u, q2, mask | bit)
                if nxt not in seen:
                    seen.add(nxt)
                    per_t[u].add(nxt[2])
                    stack.append(nxt)
        self._lin_masks[s] = per_t
        return per_t

    def linear_dp(self, s: int, t: int) -> list[int]:
        dps = self._lin_dp.setdefault(s, {})
        if t not in dps:
            dps[t] = _cover_dp(_maximal_masks(self.linear_masks(s)[t]), self.full)
        return dps[t]

    # -- verdicts --------------------------------------------------------------

    def unsafe(self, model: SafetyModel, req_mask: int) -> bool:
        bound = model.k if model.k != INF else bin(req_mask).count("1")
        dp = (self.circular_dp() if model.shape == "circular"
              else self.linear_dp(model.s, model.t))
        return dp[req_mask] <= bound


def _check_model_caps(model: SafetyModel) -> None:
    if model.k != INF and model.k > MAX_K:
        raise OracleSizeError(f"oracle handles k <= {MAX_K} or INF")


def oracle_safe(g: Graph, w: Walk, model: SafetyModel) -> bool:
    """Definition-level safety verdict (small instances only)."""
    _check_model_caps(model)
    f_cov = model.f_cov if model.f_cov is not None else frozenset(range(g.m))
    if len(f_cov) > MAX_ARCS:
        raise OracleSizeError(f"oracle handles |f_cov| <= {MAX_ARCS}")
    if not f_cov:
        return False
    req_mask = 0
    for a in f_cov:
        req_mask |= 1 << a
    eng = OracleEngine(g, w, model.f_vis)
    return not eng.unsafe(model, req_mask)


# -- witnesses ----------------------------------------------------------------


def oracle_witness(g: Graph, w: Walk, model: SafetyModel) -> tuple[Walk, ...] | None:
    """For an unsafe verdict, a covering collection avoiding the walk; None
    when the walk is safe."""
    _check_model_caps(model)
    f_cov = model.f_cov if model.f_cov is not None else frozenset(range(g.m))
    req_mask = 0
    for a in f_cov:
        req_mask |= 1 << a
    eng = OracleEngine(g, w, model.f_vis)
    if not f_cov:
        return ()
    if not eng.unsafe(model, req_mask):
        return None
    if model.shape == "circular":
        masks = eng.circular_masks()
        dp = eng.circular_dp()
        find = lambda mask: _find_cycle_with_mask(eng, mask)
    else:
        masks = _maximal_masks(eng.linear_masks(model.s)[model.t])
        dp = eng.linear_dp(model.s, model.t)
        find = lambda mask: _find_st_walk_with_mask(eng, model.s, model.t, mask)
    chosen: list[int] = []
    remaining = req_mask
    while remaining:
        nxt = next(mask for mask in masks
                   if mask & remaining and dp[remaining & ~mask] == dp[remaining] - 1)
        chosen.append(nxt)
        remaining &= ~nxt
    return tuple(find(mask) for mask in chosen)


def _find_cycle_with_mask(eng: OracleEngine, want: int) -> Walk:
    g, L, delta = eng.g, eng.L, eng.delta
    for q0 in range(L):
        for v0 in range(g.n):
            parent = {(v0, q0, 0): None}
            stack = [(v0, q0, 0)]
            while stack:
                st = stack.pop()
                v, q, mask = st
                row = delta[q]
                for a, u, bit in eng._out[v]:
                    q2 = row[a]
                    if q2 == L:
                        continue
                    nxt = (u, q2, mask | bit)
                    if u == v0 and q2 == q0 and (mask | bit) & want == want:
                        arcs = _unwind(parent, st) + [a]
                        return Walk(tuple(arcs), closed=True)
                    if nxt not in parent:
                        parent[nxt] = (st, a)
                        stack.append(nxt)
    raise AssertionError("mask was recorded but no witness cycle found")


def _find_st_walk_with_mask(eng: OracleEngine, s: int, t: int, want: int) -> Walk:
    g, L, delta = eng.g, eng.L, eng.delta
    parent: dict = {(s, 0, 0): None}
    stack = [(s, 0, 0)]
    while stack:
        st = stack.pop()
        v, q, mask = st
        if v == t and mask & want == want and parent[st] is not None:
            return Walk(tuple(_unwind(parent, st)))
        row = delta[q]
        for a, u, bit in eng._out[v]:
            q2 = row[a]
            if q2 == L:
                continue
            nxt = (u, q2, mask | bit)
            if nxt not in parent:
                parent[nxt] = (st, a)
                stack.append(nxt)
    raise AssertionError("mask was recorded but no witness walk found")


def _unwind(parent: dict, state) -> list[int]:
    arcs: list[int] = []
    while parent[state] is not None:
        state, a = parent[state]
        arcs.append(a)
    arcs.reverse()
    return arcs


def walk_contained_cyclically(g: Graph, pattern: tuple[int, ...], cycle: tuple[int, ...],
                              f_vis: frozenset[int] | None = None) -> bool:
    """Closed-walk containment: the pattern occurs contiguously in the
    periodic unrolling of the cycle (occurrences may wrap any number of
    times; the seam is never duplicated)."""
    cyc = cycle if f_vis is None else tuple(a for a in cycle if a in f_vis)
    pat = pattern if f_vis is None else tuple(a for a in pattern if a in f_vis)
    if not cyc:
        return not pat
    reps = (len(pat) + len(cyc) - 1) // len(cyc) + 1
    unrolled = cyc * reps
    for i in range(len(cyc)):
        if unrolled[i:i + len(pat)] == pat:
            return True
    return False


def walk_contained_linearly(pattern: tuple[int, ...], arcs: tuple[int, ...],
                            f_vis: frozenset[int] | None = None) -> bool:
    seq = arcs if f_vis is None else tuple(a for a in arcs if a in f_vis)
    pat = pattern if f_vis is None else tuple(a for a in pattern if a in f_vis)
    if len(pat) > len(seq):
        return False
    for i in range(len(seq) - len(pat) + 1):
        if seq[i:i + len(pat)] == pat:
            return True
    return False


# -- brute-force minimum walk cover -------------------------------------------


def oracle_min_walk_cover(g: Graph, sub: frozenset[int], required: frozenset[int],
                          ) -> int | float:
    """Minimum number of walks within the element set `sub` covering all
    required arcs, by product reachability over (arc, covered-mask) states."""
    if not required:
        return 0
    if len(required) > 10:
        raise OracleSizeError("oracle_min_walk_cover handles at most 10 required arcs")
    sub_arcs = sorted(x - g.n for x in sub if x >= g.n)
    if not required <= set(sub_arcs):
        return INF
    req = sorted(required)
    bit_of = {a: 1 << i for i, a in enumerate(req)}
    full = (1 << len(req)) - 1
    out_by_node: dict[int, list[int]] = {}
    for a in sub_arcs:
        out_by_node.setdefault(g.tail(a), []).append(a)
    masks: set[int] = set()
    for a0 in sub_arcs:
        start = (a0, bit_of.get(a0, 0))
        seen = {start}
        stack = [start]
        masks.add(start[1])
        while stack:
            a, mask = stack.pop()
            for b in out_by_node.get(g.head(a), ()):
                nxt = (b, mask | bit_of.get(b, 0))
                if nxt not in seen:
                    seen.add(nxt)
                    masks.add(nxt[1])
                    stack.append(nxt)
    dp = _cover_dp(_maximal_masks(masks), full)
    return dp[full] if dp[full] < _BIG else INF


# -- exhaustive small-graph enumeration ----------------------------------------


def enumerate_small_graphs(max_nodes: int, max_arcs: int):
    """All labeled strongly connected non-cycle multigraphs up to the caps,
    in deterministic order."""
    if max_nodes > 4 or max_arcs > 6:
        raise OracleSizeError("small-graph enumeration capped at 4 nodes / 6 arcs")
    for n in range(1, max_nodes + 1):
        arc_types = [(u, v) for u in range(n) for v in range(n)]
        names = [f"v{i}" for i in range(n)]
        for m in range(n + 1, max_arcs + 1):
            for combo in combinations_with_replacement(arc_types, m):
                used = {u for u, _ in combo} | {v for _, v in combo}
                if len(used) != n:
                    continue
                g = Graph(names, combo)
                if g.is_strongly_connected and not g.is_cycle_graph:
                    yield g
