"""Walks as arc-id sequences, their anatomy (heart/wings) and subwalk tests.

A walk starts and ends in an arc; the interleaved nodes are implied by the
arcs.  The element set of a walk contains its arcs and its internal nodes
(the head of every arc except the last); the tail of the first arc and the
head of the last arc are not elements of the walk.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CycleGraphError, GraphParseError, WalkError
from .graph import Graph


@dataclass(frozen=True)
class Walk:
    arcs: tuple[int, ...]
    closed: bool = False

    def __post_init__(self):
        if not self.arcs:
            raise WalkError("walk must be non-empty")
        if self.closed and len(self.arcs) < 2:
            # A lone self-loop traversal is the only closed walk of one arc.
            pass

    def __len__(self) -> int:
        return len(self.arcs)


def walk(*arcs: int, closed: bool = False) -> Walk:
    return Walk(tuple(arcs), closed)


def validate_walk(g: Graph, w: Walk) -> None:
    arcs = w.arcs
    for a in arcs:
        if not 0 <= a < g.m:
            raise WalkError(f"arc id {a} out of range")
    for x, y in zip(arcs, arcs[1:]):
        if g.head(x) != g.tail(y):
            raise WalkError(
                f"arcs {g.arc_names[x]} and {g.arc_names[y]} are not incident")
    if w.closed and g.head(arcs[-1]) != g.tail(arcs[0]):
        raise WalkError("closed walk does not return to its start")


def parse_walk(g: Graph, text: str) -> Walk:
    tokens = text.split()
    if tokens and tokens[0] == "walk":
        tokens = tokens[1:]
    closed = False
    if tokens and tokens[-1] == "closed":
        closed = True
        tokens = tokens[:-1]
    if not tokens:
        raise GraphParseError("walk has no arcs")
    w = Walk(tuple(g.arc_id(t) for t in tokens), closed)
    validate_walk(g, w)
    return w


def format_walk(g: Graph, w: Walk) -> str:
    s = " ".join(g.arc_names[a] for a in w.arcs)
    return s + " closed" if w.closed else s


# -- element views ---------------------------------------------------------


def internal_nodes(g: Graph, w: Walk) -> list[int]:
    """Nodes of the walk's element sequence, in order (head of each arc but the last)."""
    return [g.head(a) for a in w.arcs[:-1]]


def walk_elements(g: Graph, w: Walk) -> frozenset[int]:
    n = g.n
    elems = {n + a for a in w.arcs}
    elems.update(g.head(a) for a in w.arcs[:-1])
    return frozenset(elems)


def node_chain(g: Graph, w: Walk) -> list[int]:
    """All node visits including both endpoints: tail(a1), head(a1), ..., head(ak)."""
    return [g.tail(w.arcs[0])] + [g.head(a) for a in w.arcs]


def is_open_path(g: Graph, w: Walk) -> bool:
    """True iff the element sequence (arcs + internal nodes) has no repeats
    and the walk is open."""
    if w.closed:
        return False
    arcs = w.arcs
    if len(set(arcs)) != len(arcs):
        return False
    nodes = internal_nodes(g, w)
    return len(set(nodes)) == len(nodes)


# -- heart and wings -------------------------------------------------------


@dataclass(frozen=True)
class WalkAnatomy:
    walk: Walk
    heart_span: tuple[int, int]   # inclusive arc positions of the heart
    trivial: bool

    @property
    def heart(self) -> Walk:
        i, j = self.heart_span
        return Walk(self.walk.arcs[i:j + 1])

    @property
    def left_wing(self) -> tuple[int, ...]:
        return self.walk.arcs[:self.heart_span[0]]

    @property
    def right_wing(self) -> tuple[int, ...]:
        return self.walk.arcs[self.heart_span[1] + 1:]


def heart_and_wings(g: Graph, w: Walk) -> WalkAnatomy:
    """Split a walk into left wing, heart and right wing.

    With i the position of the first join arc and j the position of the last
    split arc, i < j gives the non-trivial heart spanning i..j; otherwise the
    walk is trivial with heart spanning j..i.  A walk without a join arc (or
    without a split arc) is always trivial: its heart then ends at the last
    arc (starts at the first arc) -- the arcs whose covering forces the whole
    walk.
    """
    arcs = w.arcs
    last = len(arcs) - 1
    i = next((p for p, a in enumerate(arcs) if g.is_join_arc(a)), None)
    j = next((last - p for p, a in enumerate(reversed(arcs)) if g.is_split_arc(a)), None)
    if i is not None and j is not None and i < j:
        return WalkAnatomy(w, (i, j), False)
    lo = 0 if j is None else j
    hi = last if i is None else i
    return WalkAnatomy(w, (lo, hi), True)


def left_wing_nodes(g: Graph, anatomy: WalkAnatomy) -> frozenset[int]:
    """Node elements of the left wing (arc-to-node walk: heads of its arcs)."""
    return frozenset(g.head(a) for a in anatomy.left_wing)


def right_wing_nodes(g: Graph, anatomy: WalkAnatomy) -> frozenset[int]:
    """Node elements of the right wing (node-to-arc walk: tails of its arcs)."""
    return frozenset(g.tail(a) for a in anatomy.right_wing)


# -- univocal extension ----------------------------------------------------


def univocal_extension(g: Graph, w: Walk) -> Walk:
    """Maximal R-univocal extension to the left and univocal extension to the
    right; the result contains w as a subwalk."""
    left: list[int] = []
    u = g.tail(w.arcs[0])
    seen = {u}
    while not g.is_join_node(u) and g.in_arcs[u]:
        a = g.in_arcs[u][0]
        left.append(a)
        u = g.tail(a)
        if u in seen:
            if g.is_cycle_graph:
                raise CycleGraphError("univocal extension does not terminate on a cycle")
            break  # join-free cycle apart from the walk; stop extending
        seen.add(u)
    right: list[int] = []
    v = g.head(w.arcs[-1])
    seen = {v}
    while not g.is_split_node(v) and g.out_arcs[v]:
        a = g.out_arcs[v][0]
        right.append(a)
        v = g.head(a)
        if v in seen:
            if g.is_cycle_graph:
                raise CycleGraphError("univocal extension does not terminate on a cycle")
            break
        seen.add(v)
    return Walk(tuple(reversed(left)) + w.arcs + tuple(right))


# -- subwalk tests ----------------------------------------------------------


def _occurs(inner: tuple[int, ...], outer: tuple[int, ...]) -> bool:
    li, lo = len(inner), len(outer)
    if li > lo:
        return False
    first = inner[0]
    for i in range(lo - li + 1):
        if outer[i] == first and outer[i:i + li] == inner:
            return True
    return False


def is_subwalk(inner: Walk, outer: Walk) -> bool:
    """True iff inner occurs contiguously in outer.

    Closed outer walks are matched against their periodic unrolling: the
    occurrence may run over the seam (any number of times) without the seam
    element being duplicated.  A closed inner is a subwalk of a closed outer
    iff they are rotations of each other.
    """
    if inner.closed:
        if not outer.closed or len(inner) != len(outer):
            return False
        return _occurs(inner.arcs, outer.arcs + outer.arcs)
    if outer.closed:
        lo = len(outer)
        reps = (len(inner) + lo - 1) // lo + 1
        unrolled = outer.arcs * reps
        first = inner.arcs[0]
        li = len(inner)
        for i in range(lo):
            if unrolled[i] == first and unrolled[i:i + li] == inner.arcs:
                return True
        return False
    return _occurs(inner.arcs, outer.arcs)
