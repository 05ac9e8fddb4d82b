"""Graph generators used by the experiments and the test harness."""

from __future__ import annotations

import random

from .graph import Graph


def path_of_cycles(c: int) -> Graph:
    """Chain of c two-cycles sharing nodes: v0 <-> v1 <-> ... <-> vc.

    Strongly connected, not a cycle (for c >= 2), n = c+1 nodes, m = 2c arcs.
    """
    if c < 2:
        raise ValueError("need at least two cycles")
    names = [f"v{i}" for i in range(c + 1)]
    arcs = []
    arc_names = []
    for i in range(c):
        arcs.append((i, i + 1))
        arc_names.append(f"f{i + 1}")
    for i in range(c):
        arcs.append((i + 1, i))
        arc_names.append(f"b{i + 1}")
    return Graph(names, arcs, arc_names)


def long_run_graph(cycle_len: int, chord_from: int, rng: random.Random | None = None) -> Graph:
    """A big cycle plus one chord from v0; the run after the chord's head is a
    long bridge-like walk (all its internal nodes have degree 1/1)."""
    if cycle_len < 3:
        raise ValueError("cycle too short")
    if not 1 <= chord_from < cycle_len:
        raise ValueError("chord head must be a non-start cycle node")
    names = [f"v{i}" for i in range(cycle_len)]
    arcs = [(i, (i + 1) % cycle_len) for i in range(cycle_len)]
    arc_names = [f"c{i}" for i in range(cycle_len)]
    arcs.append((0, chord_from))
    arc_names.append("chord")
    return Graph(names, arcs, arc_names)


def random_sc_multigraph(rng: random.Random, n: int, m: int) -> Graph:
    """Random strongly connected non-cycle multigraph: a backbone cycle over a
    random node permutation plus m - n random extra arcs (m > n)."""
    if m <= n:
        raise ValueError("need m > n for a non-cycle graph")
    perm = list(range(n))
    rng.shuffle(perm)
    arcs = [(perm[i], perm[(i + 1) % n]) for i in range(n)]
    for _ in range(m - n):
        arcs.append((rng.randrange(n), rng.randrange(n)))
    g = Graph([f"v{i}" for i in range(n)], arcs)
    assert g.is_strongly_connected and not g.is_cycle_graph
    return g


def random_walk(rng: random.Random, g: Graph, max_len: int, min_len: int = 1):
    """Random walk of min_len..max_len arcs, or None if it gets stuck."""
    from .walks import Walk

    arcs = [rng.randrange(g.m)]
    target = rng.randint(min_len, max_len)
    while len(arcs) < target:
        outs = g.out_arcs[g.head(arcs[-1])]
        if not outs:
            break
        arcs.append(rng.choice(outs))
    if len(arcs) < min_len:
        return None
    return Walk(tuple(arcs))


def random_chained_sccs(rng: random.Random, max_total_arcs: int = 12):
    """Random feasible non-strongly-connected 1-linear instance:
    a path of SCCs (single nodes, cycles, or small general SCCs) joined by
    single inter-SCC arcs.  Returns (graph, s, t)."""
    blocks = rng.randint(2, 3)
    node_names: list[str] = []
    arcs: list[tuple[int, int]] = []
    entries: list[int] = []
    exits: list[int] = []
    budget = max_total_arcs - (blocks - 1)

    def add_node() -> int:
        node_names.append(f"v{len(node_names)}")
        return len(node_names) - 1

    for b in range(blocks):
        kind = rng.choice(["single", "cycle", "general"])
        if kind == "single" or budget < 4:
            v = add_node()
            entries.append(v)
            exits.append(v)
        elif kind == "cycle":
            ln = rng.randint(2, 3)
            vs = [add_node() for _ in range(ln)]
            for i in range(ln):
                arcs.append((vs[i], vs[(i + 1) % ln]))
            budget -= ln
            entries.append(vs[0])
            exits.append(vs[rng.randrange(ln)])
        else:
            vs = [add_node() for _ in range(2)]
            arcs.append((vs[0], vs[1]))
            arcs.append((vs[1], vs[0]))
            arcs.append((vs[rng.randrange(2)], vs[rng.randrange(2)]))
            budget -= 3
            entries.append(vs[0])
            exits.append(vs[rng.randrange(2)])
    for b in range(blocks - 1):
        arcs.append((exits[b], entries[b + 1]))
    g = Graph(node_names, arcs)
    return g, entries[0], exits[-1]
