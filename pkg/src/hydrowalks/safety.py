"""Decision procedures for all safety models.

Circular models: a trivial walk is always safe; a non-trivial walk is
1-circular safe iff the Vapor of its heart is a path, and k-circular safe for
any k >= 2 iff additionally the River of its heart is non-empty.

Linear (s-t) models build on the circular ones: a trivial walk or non-trivial
heart is k-st safe iff it is a single arc, or its River cannot be covered
with k walks, or s is not backward reachable, or t is not forward reachable,
or (trivial only) some heart arc is not s-t suffix-prefix covered.  Wings of
non-trivial walks carry extra conditions on the location of s and t.

Subset-covering variants tighten these conditions to a required arc set F;
subset-visibility variants apply them over the visible hydrostructure.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import CycleGraphError, ModelError, WalkError
from .graph import Graph, induced_subgraph, scc_decompose
from .hydrostructure import (Hydrostructure, build_hydrostructure,
                             build_visible_hydrostructure, hydro_scc_view,
                             match_restricted_reachability, split_single_arc,
                             visible_adjacency, visible_subsequence)
from .walk_cover import (INF, StInducedView, element_wccs, min_walk_cover,
                         river_cover_exceeds, st_restricted_reachability)
from .walks import (Walk, WalkAnatomy, heart_and_wings, internal_nodes,
                    is_subwalk, left_wing_nodes, node_chain, right_wing_nodes,
                    univocal_extension, validate_walk)


@dataclass(frozen=True)
class SafetyModel:
    shape: str                                # "circular" | "linear"
    k: int | float = 1                        # positive int or INF
    s: int | None = None
    t: int | None = None
    f_cov: frozenset[int] | None = None       # None = all arcs
    f_vis: frozenset[int] | None = None       # None = all arcs

    def __post_init__(self):
        if self.shape not in ("circular", "linear"):
            raise ModelError(f"unknown shape {self.shape!r}")
        if self.k != INF and (not isinstance(self.k, int) or self.k < 1):
            raise ModelError("k must be a positive integer or INF")
        if self.shape == "linear" and (self.s is None or self.t is None):
            raise ModelError("linear models need s and t")


@dataclass(frozen=True)
class Verdict:
    safe: bool
    explain: dict


def _require_model_graph(g: Graph) -> None:
    if not g.is_strongly_connected:
        raise ModelError("model requires a strongly connected graph")
    if g.is_cycle_graph:
        raise CycleGraphError("safe walks are not defined on a cycle graph")


# -- circular ----------------------------------------------------------------


def verify_circular(g: Graph, w: Walk, k: int | float) -> bool:
    return _verify_circular(g, w, k).safe


def _verify_circular(g: Graph, w: Walk, k: int | float) -> Verdict:
    _require_model_graph(g)
    validate_walk(g, w)
    anatomy = heart_and_wings(g, w)
    if anatomy.trivial:
        return Verdict(True, {"trivial": True})
    h = build_hydrostructure(g, anatomy.heart)
    if not h.bridge_like:
        return Verdict(False, {"trivial": False, "vapor_is_path": False})
    if k == 1:
        return Verdict(True, {"trivial": False, "vapor_is_path": True})
    river_nonempty = bool(h.river)
    return Verdict(river_nonempty, {
        "trivial": False, "vapor_is_path": True, "river_nonempty": river_nonempty})


def split_k_circular(g: Graph, w: Walk, k: int | float) -> tuple[Walk, Walk]:
    """For a 1-circular safe non-trivial walk X.aZb.Y that is not k-circular
    safe (k >= 2), both X.aZ and Zb.Y are k-circular safe."""
    if k != INF and k < 2:
        raise ModelError("split_k_circular needs k >= 2")
    anatomy = heart_and_wings(g, w)
    if anatomy.trivial:
        raise ModelError("walk is trivial, nothing to split")
    if not verify_circular(g, w, 1):
        raise ModelError("walk is not 1-circular safe")
    if verify_circular(g, w, k):
        raise ModelError("walk is already k-circular safe")
    hi, hj = anatomy.heart_span
    return Walk(w.arcs[:hj]), Walk(w.arcs[hi + 1:])


# -- linear ------------------------------------------------------------------


def suffix_prefix_covered(g: Graph, w: Walk, arc: int, s: int, t: int) -> bool:
    """Whether an occurrence of `arc` in w lies in the maximal suffix starting
    at s or the maximal prefix ending at t (occurrences of s and t among the
    walk's internal nodes only)."""
    if arc not in w.arcs:
        raise WalkError("arc does not occur in the walk")
    inner = internal_nodes(g, w)
    # node position p sits between arcs p and p+1 (0-based arcs)
    first_s = next((p for p, v in enumerate(inner) if v == s), None)
    last_t = max((p for p, v in enumerate(inner) if v == t), default=None)
    for pos, a in enumerate(w.arcs):
        if a != arc:
            continue
        if first_s is not None and pos > first_s:
            return True
        if last_t is not None and pos <= last_t:
            return True
    return False


def _normalize_linear_k(g: Graph, k: int | float) -> int | float:
    # the k-st problems are equivalent for all k >= m
    return INF if k >= g.m else k


def _linear_core(g: Graph, w: Walk, k: int | float, s: int, t: int,
                 ) -> tuple[bool, dict]:
    """Theorem conditions for trivial walks and non-trivial hearts."""
    if len(w.arcs) == 1:
        return True, {"single_arc": True}
    h = build_hydrostructure(g, w)
    if river_cover_exceeds(g, h, k):
        return True, {"condition": "a"}
    if s not in h.in_r_minus:
        return True, {"condition": "b"}
    if t not in h.in_r_plus:
        return True, {"condition": "c"}
    anatomy = heart_and_wings(g, w)
    if anatomy.trivial:
        for a in set(anatomy.heart.arcs):
            if not suffix_prefix_covered(g, w, a, s, t):
                return True, {"condition": "d", "arc": g.arc_names[a]}
    return False, {"condition": None}


def verify_linear(g: Graph, w: Walk, k: int | float, s: int, t: int) -> bool:
    return _verify_linear(g, w, k, s, t).safe


def _verify_linear(g: Graph, w: Walk, k: int | float, s: int, t: int) -> Verdict:
    _require_model_graph(g)
    validate_walk(g, w)
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise ModelError("s and t must be nodes of the graph")
    k = _normalize_linear_k(g, k)
    anatomy = heart_and_wings(g, w)
    if anatomy.trivial:
        safe, why = _linear_core(g, w, k, s, t)
        return Verdict(safe, {"trivial": True, **why})
    heart = anatomy.heart
    safe, why = _linear_core(g, heart, k, s, t)
    if not safe:
        return Verdict(False, {"trivial": False, "heart_safe": False, **why})
    h = build_hydrostructure(g, heart)
    if river_cover_exceeds(g, h, k):
        return Verdict(True, {"trivial": False, "heart_safe": True, "wings": "a"})
    ok, detail = _wing_condition(g, anatomy, s, t,
                                 s_blockers=h.in_r_minus, t_blockers=h.in_r_plus)
    return Verdict(ok, {"trivial": False, "heart_safe": True,
                        "wings": "b" if ok else None, **detail})


def _wing_condition(g: Graph, anatomy: WalkAnatomy, s: int, t: int,
                    s_blockers: frozenset[int], t_blockers: frozenset[int],
                    s_case_ok=None, t_case_ok=None) -> tuple[bool, dict]:
    """Location-of-s/t condition shared by the plain and covering wing
    theorems.  The plain variant excludes s (t) occurring in the heart; the
    covering variant replaces that exclusion with an F-containment test,
    supplied lazily via s_case_ok/t_case_ok."""
    heart = anatomy.heart
    lw = left_wing_nodes(g, anatomy)
    rw = right_wing_nodes(g, anatomy)
    heart_nodes = frozenset(internal_nodes(g, heart))
    if s_case_ok is None:
        s_case_ok = lambda: s not in heart_nodes
    if t_case_ok is None:
        t_case_ok = lambda: t not in heart_nodes
    s_in_l = s in lw
    t_in_r = t in rw
    if not s_in_l and not t_in_r:
        return True, {"s_in_left_wing": False, "t_in_right_wing": False}
    if s_in_l and t_in_r:
        return False, {"s_in_left_wing": True, "t_in_right_wing": True}
    if s_in_l:
        ok = t not in t_blockers and t not in rw and s_case_ok()
        return ok, {"s_in_left_wing": True, "t_in_right_wing": False}
    ok = s not in s_blockers and s not in lw and t_case_ok()
    return ok, {"s_in_left_wing": False, "t_in_right_wing": True}


# -- linear models on general (non-strongly-connected) graphs ----------------


@dataclass(frozen=True)
class SequenceDecomposition:
    sccs: tuple[frozenset[int], ...]          # node sets in path order
    inter_arcs: tuple[int, ...]               # one arc between consecutive SCCs
    entry: tuple[int, ...]                    # entry point per SCC
    exit: tuple[int, ...]                     # exit point per SCC
    forms: tuple[str, ...]                    # "single-node" | "cycle" | "general"


def sequence_decomposition(g: Graph, s: int, t: int) -> SequenceDecomposition:
    """Structure of graphs admitting a single s-t arc-covering walk: the DAG
    of SCCs is a path with exactly one inter-SCC arc between consecutive
    SCCs, s in the source SCC and t in the sink SCC."""
    dec = g.scc
    ell = len(dec.components)
    by_pair: dict[tuple[int, int], list[int]] = {}
    for a, intra in enumerate(dec.arc_is_intra):
        if not intra:
            u, v = g.arcs[a]
            by_pair.setdefault((dec.comp_of[u], dec.comp_of[v]), []).append(a)
    expected = {(i, i + 1) for i in range(ell - 1)}
    if set(by_pair) != expected or any(len(v) != 1 for v in by_pair.values()):
        raise ModelError("no s-t arc-covering walk: SCC DAG is not a single-arc path")
    if s not in dec.components[0] or t not in dec.components[ell - 1]:
        raise ModelError("no s-t arc-covering walk: s or t in a wrong SCC")
    inter = tuple(by_pair[(i, i + 1)][0] for i in range(ell - 1))
    entry = tuple(s if i == 0 else g.head(inter[i - 1]) for i in range(ell))
    exit_ = tuple(t if i == ell - 1 else g.tail(inter[i]) for i in range(ell))
    forms = []
    for comp in dec.components:
        intra_m = sum(1 for a, intra in enumerate(dec.arc_is_intra)
                      if intra and g.tail(a) in comp)
        if len(comp) == 1 and intra_m == 0:
            forms.append("single-node")
        elif intra_m == len(comp):
            forms.append("cycle")
        else:
            forms.append("general")
    return SequenceDecomposition(tuple(dec.components), inter, entry, exit_, tuple(forms))


def inter_scc_univocal_extension(g: Graph, d: SequenceDecomposition, arc: int) -> Walk:
    """U'(arc) = X.Y.Z: Y spans inter-SCC arcs and single-node SCCs through
    the arc; X and Z extend R-univocally/univocally inside the flanking SCCs,
    visiting the entry/exit point at most twice."""
    if arc not in d.inter_arcs:
        raise WalkError("arc is not an inter-SCC arc")
    pos = d.inter_arcs.index(arc)
    comp_index = {}
    for i, comp in enumerate(d.sccs):
        for v in comp:
            comp_index[v] = i
    # Y: absorb single-node SCCs on both sides
    lo = pos
    while lo > 0 and d.forms[comp_index[g.tail(d.inter_arcs[lo])]] == "single-node":
        lo -= 1
    hi = pos
    while hi + 1 < len(d.inter_arcs) and d.forms[comp_index[g.head(d.inter_arcs[hi])]] == "single-node":
        hi += 1
    y = list(d.inter_arcs[lo:hi + 1])
    intra = g.scc.arc_is_intra

    left_comp = comp_index[g.tail(y[0])]
    x: list[int] = []
    if d.forms[left_comp] != "single-node":
        entry = d.entry[left_comp]
        u = g.tail(y[0])
        while True:
            in_intra = [a for a in g.in_arcs[u] if intra[a]]
            if len(in_intra) != 1:
                break
            a = in_intra[0]
            chain = node_chain(g, Walk(tuple([a] + x + [y[0]])))[:-1]
            occ = chain.count(entry)
            if occ > 2 or (occ == 2 and chain[0] != entry):
                break
            x.insert(0, a)
            u = g.tail(a)

    right_comp = comp_index[g.head(y[-1])]
    z: list[int] = []
    if d.forms[right_comp] != "single-node":
        exit_ = d.exit[right_comp]
        v = g.head(y[-1])
        while True:
            out_intra = [a for a in g.out_arcs[v] if intra[a]]
            if len(out_intra) != 1:
                break
            a = out_intra[0]
            chain = node_chain(g, Walk(tuple([y[-1]] + z + [a])))[1:]
            occ = chain.count(exit_)
            if occ > 2 or (occ == 2 and chain[-1] != exit_):
                break
            z.append(a)
            v = g.head(a)
    return Walk(tuple(x + y + z))


def verify_linear_general(g: Graph, w: Walk, k: int | float, s: int, t: int) -> bool:
    """k-st safety on graphs that need not be strongly connected (k in {1, INF})."""
    validate_walk(g, w)
    if g.is_strongly_connected:
        if g.is_cycle_graph:
            raise CycleGraphError("safe walks are not defined on a cycle graph")
        return verify_linear(g, w, k, s, t)
    if k == INF:
        from .graph import with_extra_arc
        g2 = with_extra_arc(g, t, s, "__ts")
        if not g2.is_strongly_connected:
            raise ModelError("no covering collection of s-t walks exists")
        if g2.is_cycle_graph:
            return True  # the single s-t path is the only solution walk
        return verify_linear(g2, w, INF, s, t)
    if k != 1:
        raise ModelError("general graphs are supported for k = 1 and k = INF only")
    d = sequence_decomposition(g, s, t)
    for arc in d.inter_arcs:
        if is_subwalk(w, inter_scc_univocal_extension(g, d, arc)):
            return True
    comp_of = g.scc.comp_of
    comps = {comp_of[g.tail(a)] for a in w.arcs} | {comp_of[g.head(a)] for a in w.arcs}
    if len(comps) != 1:
        return False
    seq_i = next(i for i, comp in enumerate(d.sccs) if g.tail(w.arcs[0]) in comp)
    if d.forms[seq_i] != "general":
        return False
    sub, node_map, arc_map = induced_subgraph(g, d.sccs[seq_i])
    w2 = Walk(tuple(arc_map[a] for a in w.arcs))
    return verify_linear(sub, w2, 1, node_map[d.entry[seq_i]], node_map[d.exit[seq_i]])


# -- subset covering ----------------------------------------------------------


def _split_and_recurse(g: Graph, w: Walk, f_cov: frozenset[int], fn):
    sp = split_single_arc(g, w.arcs[0])
    return fn(sp.graph, sp.walk, sp.translate_arcset(f_cov))


def verify_covering_circular(g: Graph, w: Walk, k: int | float,
                             f_cov: frozenset[int]) -> bool:
    """F-covering circular safety.

    Safe iff (a) k is less than the number of F-covered SCCs, (b) some F-arc
    of the River lies outside every River SCC, or (c) the walk has an
    F-covered trivial heart.
    """
    _require_model_graph(g)
    validate_walk(g, w)
    if not f_cov:
        return False
    if len(w.arcs) == 1:
        return _split_and_recurse(g, w, f_cov,
                                  lambda g2, w2, f2: verify_covering_circular(g2, w2, k, f2))
    if not verify_circular(g, w, 1):
        return False
    anatomy = heart_and_wings(g, w)
    target = w if anatomy.trivial else anatomy.heart
    heart_covered = anatomy.trivial and bool(f_cov & set(anatomy.heart.arcs))
    h = build_hydrostructure(g, target)
    if not h.bridge_like:
        return heart_covered
    return _covered_scc_conditions(g, h, k, f_cov) or heart_covered


def _covered_scc_conditions(g: Graph, h: Hydrostructure, k: int | float,
                            f_cov: frozenset[int]) -> bool:
    view = hydro_scc_view(g, h)
    w = h.walk

    def f_arcs(elems: frozenset[int] | None) -> frozenset[int]:
        if elems is None:
            return frozenset()
        return frozenset(x - g.n for x in elems if x >= g.n) & f_cov

    inner = internal_nodes(g, w)
    sea_region = view.sea_related_scc
    if sea_region is None:
        # Sea is just the start arc a: a is coverable without the walk only
        # by a cycle a . Z[head(a)..tail(a)] . a, which needs tail(a) on Z.
        a = w.arcs[0]
        if g.tail(a) in inner:
            p = inner.index(g.tail(a))
            sea_region = frozenset({g.n + a} | set(inner[:p + 1])
                                   | {g.n + x for x in w.arcs[1:p + 1]})
        elif a in f_cov:
            return True  # covering a forces traversing the whole walk
    cloud_region = view.cloud_related_scc
    if cloud_region is None:
        b = w.arcs[-1]
        if g.head(b) in inner:
            p = inner.index(g.head(b))
            last = len(inner) - 1
            cloud_region = frozenset({g.n + b} | set(inner[p:])
                                     | {g.n + x for x in w.arcs[p + 1:last + 1]})
        elif b in f_cov:
            return True
    sea_f = f_arcs(sea_region)
    cloud_f = f_arcs(cloud_region)
    count = sum(1 for scc in view.river_sccs if f_arcs(scc))
    if sea_f and cloud_f and sea_f == cloud_f:
        count += 1
    else:
        count += (1 if sea_f else 0) + (1 if cloud_f else 0)
    if k != INF and k < count:
        return True
    river_scc_arcs: set[int] = set()
    for scc in view.river_sccs:
        river_scc_arcs.update(x - g.n for x in scc if x >= g.n)
    river_arcs = h.river_arcs(g)
    return bool((f_cov & river_arcs) - river_scc_arcs)


def _covering_linear_core(g: Graph, w: Walk, k: int | float, s: int, t: int,
                          f_cov: frozenset[int]) -> bool:
    sv = st_restricted_reachability(g, w, s, t)
    river_f = frozenset(x - g.n for x in sv.st_induced_river if x >= g.n) & f_cov
    if k != INF and min_walk_cover(g, sv.st_induced_river, river_f).size > k:
        return True
    needed = {g.n + a for a in f_cov} | {s, t}
    wccs = element_wccs(g, sv.st_induced_subgraph)
    if not any(needed <= comp for comp in wccs):
        return True
    anatomy = heart_and_wings(g, w)
    if anatomy.trivial:
        for a in f_cov & set(anatomy.heart.arcs):
            if not suffix_prefix_covered(g, w, a, s, t):
                return True
    return False


def _st_coverable_arcs(g: Graph, pattern: tuple[int, ...], s: int, t: int,
                       candidates: frozenset[int],
                       visible: frozenset[int] | None = None) -> frozenset[int]:
    """Arcs traversable by some s-t walk whose (visible) arc sequence never
    contains `pattern` contiguously.

    Works on the product of the graph with the walk-match automaton: an arc
    is coverable iff one of its product copies lies on a non-accepting path
    from (s, 0) to t.
    """
    from .hydrostructure import _Matcher

    mat = _Matcher(pattern)
    L = mat.L

    def step(q, a):
        if visible is not None and a not in visible:
            return q
        return mat.step(q, a)

    fwd: set[tuple[int, int]] = {(s, 0)}
    stack = [(s, 0)]
    while stack:
        v, q = stack.pop()
        for a in g.out_arcs[v]:
            q2 = step(q, a)
            if q2 == L:
                continue
            nxt = (g.head(a), q2)
            if nxt not in fwd:
                fwd.add(nxt)
                stack.append(nxt)
    # backward co-reachability of t over the same product transitions
    preds: dict[tuple[int, int], list[tuple[int, int, int]]] = {}
    for (v, q) in fwd:
        for a in g.out_arcs[v]:
            q2 = step(q, a)
            if q2 == L:
                continue
            nxt = (g.head(a), q2)
            if nxt in fwd:
                preds.setdefault(nxt, []).append((v, q, a))
    bwd: set[tuple[int, int]] = {st for st in fwd if st[0] == t}
    stack = list(bwd)
    while stack:
        st = stack.pop()
        for (v, q, _a) in preds.get(st, ()):
            if (v, q) not in bwd:
                bwd.add((v, q))
                stack.append((v, q))
    out = set()
    for st, entries in preds.items():
        if st in bwd:
            for (v, q, a) in entries:
                if a in candidates:
                    out.add(a)
    return frozenset(out & candidates)


def verify_covering_linear(g: Graph, w: Walk, k: int | float, s: int, t: int,
                           f_cov: frozenset[int]) -> bool:
    """F-covering k-st safety (strongly connected graphs).

    Trivial walks follow the theorem conditions directly.  For non-trivial
    walks the heart is checked first; the wings are then decided by an exact
    product-reachability test, because a solution walk may start at s inside
    the left wing or end at t inside the right wing after covering all of F,
    which heart-relative reachability sets cannot express.  The verdict is
    exact for |F| = 1, F = E and k = INF; for other F the k-bound follows
    the walk-cover rule on the st-induced River.
    """
    _require_model_graph(g)
    validate_walk(g, w)
    if not f_cov:
        return False
    if len(w.arcs) == 1:
        return _split_and_recurse(
            g, w, f_cov,
            lambda g2, w2, f2: verify_covering_linear(g2, w2, k, s, t, f2))
    if not verify_circular(g, w, 1):
        return False
    k = _normalize_linear_k(g, k)
    anatomy = heart_and_wings(g, w)
    if anatomy.trivial:
        return _covering_linear_core(g, w, k, s, t, f_cov)
    if not _covering_linear_core(g, anatomy.heart, k, s, t, f_cov):
        return False
    coverable = _st_coverable_arcs(g, w.arcs, s, t, f_cov)
    if coverable != f_cov:
        return True  # some required arc forces the whole walk
    if k == INF:
        return False
    sv = st_restricted_reachability(g, w, s, t)
    river_f = frozenset(x - g.n for x in sv.st_induced_river if x >= g.n) & f_cov
    return min_walk_cover(g, sv.st_induced_river, river_f).size > k


# -- subset visibility --------------------------------------------------------


@dataclass(frozen=True)
class _VisibleAnatomy:
    heart_span: tuple[int, int]   # real arc positions, inclusive
    trivial: bool


def _visible_real_anatomy(g: Graph, w: Walk, adj) -> _VisibleAnatomy:
    """Heart/wings of a walk under visible adjacency.

    Forks may sit anywhere on the invisible connective between consecutive
    arcs, so merge/branch breaks are assigned to walk pairs: the pair
    (w_p, w_{p+1}) merges when more than one visible arc can immediately
    precede w_{p+1}, and branches when more than one visible arc can
    immediately follow w_p.  With everything visible this is the plain
    anatomy.  The heart may contain invisible arcs.
    """
    arcs = w.arcs
    L = len(arcs)
    join_breaks = [p for p in range(L - 1)
                   if len(adj.vis_in(g.tail(arcs[p + 1]))) > 1]
    split_breaks = [p for p in range(L - 1)
                    if len(adj.vis_out(g.head(arcs[p]))) > 1]
    first_join = join_breaks[0] if join_breaks else None
    last_split = split_breaks[-1] if split_breaks else None
    if first_join is not None and last_split is not None and first_join <= last_split:
        return _VisibleAnatomy((first_join, last_split + 1), False)
    lo = 0 if last_split is None else last_split + 1
    hi = L - 1 if first_join is None else first_join
    return _VisibleAnatomy((lo, hi), True)


def _visible_walk_hydro(g: Graph, w: Walk, lo: int, hi: int,
                        f_vis: frozenset[int]) -> Hydrostructure | None:
    """Visible hydrostructure of the real segment w[lo..hi], extended
    outward to the nearest visible endpoint arcs (the forcing of invisible
    heart flanks runs through them; the walk's own endpoints are visible).
    None when no well-formed visible query exists (fewer than two visible
    arcs, or equal endpoint arc ids, for which element-level reachability
    sets cannot separate the occurrences)."""
    left = next((p for p in range(lo, -1, -1) if w.arcs[p] in f_vis), None)
    right = next((p for p in range(hi, len(w.arcs)) if w.arcs[p] in f_vis), None)
    if left is None or right is None or left == right:
        return None
    seg = Walk(w.arcs[left:right + 1])
    if seg.arcs[0] == seg.arcs[-1]:
        return None
    return build_visible_hydrostructure(g, seg, f_vis)


def verify_visible(g: Graph, w: Walk, model: SafetyModel) -> bool:
    """Safety over the visible hydrostructure: solutions are judged on their
    F-visible subsequence, so contiguity is required only among visible arcs.
    Combines with a covering set per the node-centric/covering reductions."""
    _require_model_graph(g)
    validate_walk(g, w)
    f_vis = model.f_vis if model.f_vis is not None else frozenset(range(g.m))
    f_cov = model.f_cov if model.f_cov is not None else frozenset(range(g.m))
    if not f_cov:
        return False
    if w.arcs[0] not in f_vis or w.arcs[-1] not in f_vis:
        raise ModelError("first and last arcs of the walk must be visible")
    if len(visible_subsequence(w, f_vis)) == 1:
        sp = split_single_arc(g, w.arcs[0])
        pieces = {sp.first_piece: [sp.first_piece, sp.second_piece]}
        new_arcs = []
        for a in w.arcs:
            new_arcs.extend(pieces.get(a, [a]))
        model2 = replace(model, f_cov=sp.translate_arcset(f_cov),
                         f_vis=sp.translate_arcset(f_vis))
        return verify_visible(sp.graph, Walk(tuple(new_arcs)), model2)
    adj = visible_adjacency(g, f_vis)
    va = _visible_real_anatomy(g, w, adj)
    lo, hi = va.heart_span
    heart_arcs = set(w.arcs[lo:hi + 1])
    covered_all = f_cov == frozenset(range(g.m))
    if model.shape == "circular":
        if va.trivial:
            return covered_all or bool(f_cov & heart_arcs)
        h = _visible_walk_hydro(g, w, lo, hi, f_vis)
        if h is None or not h.bridge_like:
            return False
        if covered_all:
            return model.k == 1 or bool(h.river)
        return _covered_scc_conditions(g, h, model.k, f_cov)
    # linear
    s, t = model.s, model.t
    k = _normalize_linear_k(g, model.k)
    if not covered_all:
        return _verify_visible_covering_linear(g, w, va, k, s, t, f_cov, f_vis)
    if va.trivial:
        return _visible_linear_trivial(g, w, va, k, s, t, f_vis)
    h = _visible_walk_hydro(g, w, lo, hi, f_vis)
    if h is None or not h.bridge_like:
        return False
    # the heart must be safe on its own, and then either the River blocks
    # k walks or the wings are free of badly-placed s and t
    heart_safe = (river_cover_exceeds(g, h, k)
                  or s not in h.in_r_minus or t not in h.in_r_plus)
    if not heart_safe:
        return False
    if river_cover_exceeds(g, h, k):
        return True
    anatomy = WalkAnatomy(w, (lo, hi), False)
    ok, _ = _wing_condition(g, anatomy, s, t,
                            s_blockers=h.in_r_minus, t_blockers=h.in_r_plus)
    return ok


def _visible_linear_trivial(g: Graph, w: Walk, va: _VisibleAnatomy, k, s, t,
                            f_vis: frozenset[int],
                            f_cov: frozenset[int] | None = None) -> bool:
    """Trivial-walk conditions over the visible hydrostructure of the whole
    walk; with a covering set only covered heart arcs count."""
    pattern = visible_subsequence(w, f_vis)
    h = None
    if pattern[0] != pattern[-1]:
        h = build_visible_hydrostructure(g, w, f_vis)
    if h is not None and h.bridge_like:
        if river_cover_exceeds(g, h, k):
            return True
        if s not in h.in_r_minus or t not in h.in_r_plus:
            return True
    lo, hi = va.heart_span
    heart = set(w.arcs[lo:hi + 1])
    check = heart if f_cov is None else (f_cov & heart)
    for a in check:
        if not suffix_prefix_covered(g, w, a, s, t):
            return True
    return False


def _verify_visible_covering_linear(g: Graph, w: Walk, va: _VisibleAnatomy,
                                    k, s, t, f_cov: frozenset[int],
                                    f_vis: frozenset[int]) -> bool:
    """Combined covering + visibility, mirroring verify_covering_linear:
    heart conditions, then an exact product-coverability test on the whole
    walk, then the walk-cover bound on the st-induced River."""
    lo, hi = va.heart_span
    if va.trivial:
        h = None
        pattern = visible_subsequence(w, f_vis)
        if pattern[0] != pattern[-1]:
            h = build_visible_hydrostructure(g, w, f_vis)
        if h is not None and h.bridge_like:
            sv = _visible_st_view(g, w, s, t, f_vis, h)
            river_f = frozenset(x - g.n for x in sv.st_induced_river
                                if x >= g.n) & f_cov
            if k != INF and min_walk_cover(g, sv.st_induced_river, river_f).size > k:
                return True
            needed = {g.n + a for a in f_cov} | {s, t}
            if not any(needed <= comp
                       for comp in element_wccs(g, sv.st_induced_subgraph)):
                return True
        return _visible_linear_trivial(g, w, va, k, s, t, f_vis, f_cov)
    h = _visible_walk_hydro(g, w, lo, hi, f_vis)
    if h is None or not h.bridge_like:
        return False
    coverable = _st_coverable_arcs(g, visible_subsequence(w, f_vis), s, t,
                                   f_cov, visible=f_vis)
    if coverable != f_cov:
        return True
    if k == INF:
        return False
    pattern = visible_subsequence(w, f_vis)
    hw = build_visible_hydrostructure(g, w, f_vis) if pattern[0] != pattern[-1] else None
    if hw is None:
        return False
    sv = _visible_st_view(g, w, s, t, f_vis, hw)
    river_f = frozenset(x - g.n for x in sv.st_induced_river if x >= g.n) & f_cov
    return min_walk_cover(g, sv.st_induced_river, river_f).size > k


def _visible_st_view(g: Graph, w: Walk, s: int, t: int,
                     f_vis: frozenset[int], h: Hydrostructure) -> StInducedView:
    pattern = visible_subsequence(w, f_vis)
    everything = g.all_elements()
    if not h.bridge_like:
        rps = rmt = everything
    else:
        rps = (everything if s in h.in_r_minus else
               match_restricted_reachability(g, pattern, s, start_is_arc=False,
                                             forward=True, visible=f_vis))
        rmt = (everything if t in h.in_r_plus else
               match_restricted_reachability(g, pattern, t, start_is_arc=False,
                                             forward=False, visible=f_vis))
    induced = rps & rmt
    return StInducedView(rps, rmt, induced, induced & h.river)


# -- model dispatch ------------------------------------------------------------


def verify_model(g: Graph, w: Walk, model: SafetyModel) -> Verdict:
    all_arcs = frozenset(range(g.m))
    f_vis = model.f_vis if model.f_vis is not None else all_arcs
    f_cov = model.f_cov if model.f_cov is not None else all_arcs
    if f_vis != all_arcs:
        safe = verify_visible(g, w, model)
        return Verdict(safe, {"visible": True})
    if not f_cov:
        return Verdict(False, {"reason": "empty covering set"})
    if model.shape == "circular":
        if f_cov != all_arcs:
            return Verdict(verify_covering_circular(g, w, model.k, f_cov),
                           {"covering": True})
        return _verify_circular(g, w, model.k)
    if not g.is_strongly_connected:
        if f_cov != all_arcs:
            raise ModelError("covering models need a strongly connected graph")
        return Verdict(verify_linear_general(g, w, model.k, model.s, model.t),
                       {"general": True})
    if f_cov != all_arcs:
        return Verdict(verify_covering_linear(g, w, model.k, model.s, model.t, f_cov),
                       {"covering": True})
    return _verify_linear(g, w, model.k, model.s, model.t)
