"""Exhaustive oracle-vs-verifier sweep over small graphs.

Drives every verifier through every model on every walk of every small
strongly connected non-cycle multigraph and compares against the brute-force
oracle.  Also records the side equivalences (k-collapse identities and the
covering/visibility degenerations) so one pass serves several acceptance
criteria.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph
from .oracle import OracleEngine, enumerate_small_graphs
from .safety import (INF, SafetyModel, verify_circular, verify_covering_circular,
                     verify_covering_linear, verify_linear, verify_visible)
from .walks import Walk


def all_walks(g: Graph, max_len: int):
    stack = [(a,) for a in range(g.m)]
    while stack:
        arcs = stack.pop()
        yield Walk(arcs)
        if len(arcs) < max_len:
            for b in g.out_arcs[g.head(arcs[-1])]:
                stack.append(arcs + (b,))


@dataclass
class SweepResult:
    graphs: int = 0
    walks: int = 0
    checks: int = 0
    mismatches: list = field(default_factory=list)
    k_equiv_failures: int = 0
    degeneration_failures: int = 0

    @property
    def ok(self) -> bool:
        return (not self.mismatches and self.k_equiv_failures == 0
                and self.degeneration_failures == 0)


def run_sweep(max_nodes: int = 3, max_arcs: int = 5, max_walk: int = 4,
              ks=(1, 2, INF), fcov_singletons: bool = True,
              check_equivalences: bool = True, mismatch_cap: int = 25,
              progress=None) -> SweepResult:
    res = SweepResult()
    for g in enumerate_small_graphs(max_nodes, max_arcs):
        res.graphs += 1
        if progress and res.graphs % 50 == 0:
            progress(res)
        full_mask = (1 << g.m) - 1
        fcovs = [frozenset(range(g.m))]
        if fcov_singletons:
            fcovs += [frozenset({a}) for a in range(g.m)]
        for w in all_walks(g, max_walk):
            res.walks += 1
            eng = OracleEngine(g, w)
            circ_dp = eng.circular_dp()

            def circ_oracle(k, req):
                bound = k if k != INF else g.m
                return not circ_dp[req] <= bound

            for k in ks:
                got = verify_circular(g, w, k)
                res.checks += 1
                if got != circ_oracle(k, full_mask):
                    _record(res, mismatch_cap, g, w, ("circular", k, None, None, "E"),
                            got)
            if check_equivalences:
                base = verify_circular(g, w, 2)
                if any(verify_circular(g, w, k) != base for k in (3, 17, INF)):
                    res.k_equiv_failures += 1
                if verify_covering_circular(g, w, 1, frozenset(range(g.m))) != \
                        verify_circular(g, w, 1):
                    res.degeneration_failures += 1
                vis_model = SafetyModel("circular", 1, f_vis=frozenset(range(g.m)))
                if verify_visible(g, w, vis_model) != verify_circular(g, w, 1):
                    res.degeneration_failures += 1
            for f_cov in fcovs[1:]:
                req = 0
                for a in f_cov:
                    req |= 1 << a
                for k in ks:
                    got = verify_covering_circular(g, w, k, f_cov)
                    res.checks += 1
                    if got != circ_oracle(k, req):
                        _record(res, mismatch_cap, g, w,
                                ("circular", k, None, None, sorted(f_cov)), got)
            for s in range(g.n):
                lin_dp = {t: eng.linear_dp(s, t) for t in range(g.n)}

                def lin_oracle(t, k, req):
                    bound = k if k != INF else g.m
                    return not lin_dp[t][req] <= bound

                for t in range(g.n):
                    for k in ks:
                        got = verify_linear(g, w, k, s, t)
                        res.checks += 1
                        if got != lin_oracle(t, k, full_mask):
                            _record(res, mismatch_cap, g, w,
                                    ("linear", k, s, t, "E"), got)
                    if check_equivalences:
                        base = verify_linear(g, w, g.m, s, t)
                        if (verify_linear(g, w, g.m + 1, s, t) != base
                                or verify_linear(g, w, INF, s, t) != base):
                            res.k_equiv_failures += 1
                        if verify_covering_linear(g, w, 1, s, t,
                                                  frozenset(range(g.m))) != \
                                verify_linear(g, w, 1, s, t):
                            res.degeneration_failures += 1
                        vis_model = SafetyModel("linear", 1, s=s, t=t,
                                                f_vis=frozenset(range(g.m)))
                        if verify_visible(g, w, vis_model) != \
                                verify_linear(g, w, 1, s, t):
                            res.degeneration_failures += 1
                    for f_cov in fcovs[1:]:
                        req = 0
                        for a in f_cov:
                            req |= 1 << a
                        for k in ks:
                            got = verify_covering_linear(g, w, k, s, t, f_cov)
                            res.checks += 1
                            if got != lin_oracle(t, k, req):
                                _record(res, mismatch_cap, g, w,
                                        ("linear", k, s, t, sorted(f_cov)), got)
    return res


def _record(res: SweepResult, cap: int, g: Graph, w: Walk, model, got: bool):
    if len(res.mismatches) < cap:
        res.mismatches.append({
            "graph": [f"{g.arc_names[a]}:{g.node_names[u]}->{g.node_names[v]}"
                      for a, (u, v) in enumerate(g.arcs)],
            "walk": [g.arc_names[a] for a in w.arcs],
            "model": model,
            "verifier": got,
        })
    else:
        res.mismatches.append(None)
