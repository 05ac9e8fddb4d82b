"""Command-line front end: verify, enumerate, hydro, oracle, selftest,
gen-worstcase.

Exit status: 0 success / SAFE, 1 UNSAFE, 2 usage error, 3 infeasible model.
"""

from __future__ import annotations

import argparse
import json
import sys

from .enumeration import enumerate_maximal_circular, enumerate_maximal_linear, worst_case_family
from .errors import GraphParseError, HydrowalksError, ModelError, OracleSizeError, WalkError
from .graph import format_graph, node_centric_transform, parse_graph, st_sets_transform
from .hydrostructure import build_hydrostructure, hydro_to_json_dict
from .oracle import oracle_safe
from .safety import INF, SafetyModel, verify_linear_general, verify_model
from .walks import format_walk, parse_walk

EXIT_OK = 0
EXIT_UNSAFE = 1
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3


def _parse_k(text: str) -> int | float:
    if text == "inf":
        return INF
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("k must be a positive integer or 'inf'")
    if k < 1:
        raise argparse.ArgumentTypeError("k must be >= 1")
    return k


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hydrowalks")
    sub = p.add_subparsers(dest="command", required=True)

    def add_model_flags(sp, with_walk: bool):
        sp.add_argument("graph", help="graph file")
        sp.add_argument("--shape", choices=["circular", "linear"], default="circular")
        sp.add_argument("--k", type=_parse_k, default=1)
        sp.add_argument("--s", help="source node (linear)")
        sp.add_argument("--t", help="target node (linear)")
        sp.add_argument("--sources", help="space-separated source set (S/T reduction)")
        sp.add_argument("--targets", help="space-separated target set (S/T reduction)")
        sp.add_argument("--node-centric", dest="node_centric",
                        help="space-separated nodes to cover via the node-arc expansion")
        sp.add_argument("--fcov-from-file-flags", action="store_true",
                        help="use the file's C flags as the covering set")
        sp.add_argument("--fvis-from-file-flags", action="store_true",
                        help="use the file's V flags as the visibility set")
        sp.add_argument("--json", action="store_true")
        if with_walk:
            sp.add_argument("--walk", required=True,
                            help="space-separated arc names ('closed' suffix allowed)")
            sp.add_argument("--explain", action="store_true")

    add_model_flags(sub.add_parser("verify", help="verify one walk"), True)
    add_model_flags(sub.add_parser("oracle", help="brute-force verdict for one walk"), True)
    add_model_flags(sub.add_parser("enumerate", help="report all maximal safe walks"), False)

    sp = sub.add_parser("hydro", help="dump the hydrostructure of a walk")
    sp.add_argument("graph")
    sp.add_argument("--walk", required=True)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("selftest", help="oracle-vs-verifier sweep on small graphs")
    sp.add_argument("--max-nodes", type=int, default=3)
    sp.add_argument("--max-arcs", type=int, default=4)
    sp.add_argument("--max-walk", type=int, default=3)

    sp = sub.add_parser("gen-worstcase", help="write a worst-case family graph")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("-o", "--output", help="output file (default stdout)")
    return p


def _load_model(args) -> tuple:
    """Returns (graph, model, name_of) applying the requested reductions."""
    with open(args.graph) as fh:
        gf = parse_graph(fh.read())
    g = gf.graph
    f_cov = gf.f_cov if args.fcov_from_file_flags else None
    f_vis = gf.f_vis if args.fvis_from_file_flags else None
    s = t = None
    if args.node_centric:
        marked = frozenset(g.node_id(x) for x in args.node_centric.split())
        offset = g.n  # original arcs keep their order after the node-arcs
        g, node_arcs = node_centric_transform(g, marked)
        f_cov = node_arcs
        f_vis = None if f_vis is None else frozenset(a + offset for a in f_vis)
    if args.shape == "linear":
        if args.sources and args.targets:
            g, s, t, orig = st_sets_transform(
                g, [g.node_id(x) for x in args.sources.split()],
                [g.node_id(x) for x in args.targets.split()])
            f_cov = orig if f_cov is None else f_cov
        elif args.s and args.t:
            s, t = g.node_id(args.s), g.node_id(args.t)
        else:
            raise ModelError("linear models need --s/--t or --sources/--targets")
    model = SafetyModel(args.shape, args.k, s=s, t=t, f_cov=f_cov, f_vis=f_vis)
    return g, model


def _cmd_verify(args, use_oracle: bool) -> int:
    g, model = _load_model(args)
    w = parse_walk(g, args.walk)
    if use_oracle:
        safe = oracle_safe(g, w, model)
        explain = {"oracle": True}
    elif model.shape == "linear" and not g.is_strongly_connected:
        safe = verify_linear_general(g, w, model.k, model.s, model.t)
        explain = {"general": True}
    else:
        verdict = verify_model(g, w, model)
        safe, explain = verdict.safe, verdict.explain
    if args.json:
        payload = {"verdict": "SAFE" if safe else "UNSAFE"}
        if args.explain:
            payload["explain"] = explain
        print(json.dumps(payload))
    else:
        line = "SAFE" if safe else "UNSAFE"
        if args.explain:
            line += "  # " + json.dumps(explain)
        print(line)
    return EXIT_OK if safe else EXIT_UNSAFE


def _model_tag(model: SafetyModel) -> str:
    k = "inf" if model.k == INF else str(model.k)
    return f"{k}-circular" if model.shape == "circular" else f"{k}-st"


def _cmd_enumerate(args) -> int:
    g, model = _load_model(args)
    if model.shape == "circular":
        walks = enumerate_maximal_circular(g, model.k)
    else:
        walks = enumerate_maximal_linear(g, model.k, model.s, model.t)
    tag = _model_tag(model)
    if args.json:
        print(json.dumps({
            "model": {"shape": model.shape,
                      "k": "inf" if model.k == INF else model.k,
                      "s": None if model.s is None else g.node_names[model.s],
                      "t": None if model.t is None else g.node_names[model.t]},
            "walks": [[g.arc_names[a] for a in w.arcs] for w in walks],
        }))
    else:
        for w in walks:
            print(f"safe {tag} " + " ".join(g.arc_names[a] for a in w.arcs))
    return EXIT_OK


def _cmd_hydro(args) -> int:
    with open(args.graph) as fh:
        g = parse_graph(fh.read()).graph
    w = parse_walk(g, args.walk)
    h = build_hydrostructure(g, w)
    payload = hydro_to_json_dict(g, h)
    if args.json:
        print(json.dumps(payload))
    else:
        print(f"walk: {format_walk(g, w)}")
        print(f"bridge_like: {h.bridge_like}")
        for key in ("sea", "cloud", "vapor", "river"):
            print(f"{key}: " + " ".join(payload[key]))
    return EXIT_OK


def _cmd_selftest(args) -> int:
    from .selftest import run_sweep
    res = run_sweep(max_nodes=args.max_nodes, max_arcs=args.max_arcs,
                    max_walk=args.max_walk)
    print(f"graphs: {res.graphs}")
    print(f"walks: {res.walks}")
    print(f"checks: {res.checks}")
    print(f"mismatches: {len(res.mismatches)}")
    print(f"k-equivalence failures: {res.k_equiv_failures}")
    print(f"degeneration failures: {res.degeneration_failures}")
    print("PASS" if res.ok else "FAIL")
    return EXIT_OK if res.ok else EXIT_UNSAFE


def _cmd_gen_worstcase(args) -> int:
    fam = worst_case_family(args.n, args.m)
    g = fam.graph
    text = "# worst-case family: s = {}, t = {}\n".format(
        g.node_names[fam.s], g.node_names[fam.t])
    text += "# safe walks: " + "; ".join(
        " ".join(g.arc_names[a] for a in w.arcs) for w in fam.walks) + "\n"
    text += format_graph(g)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        if args.command == "verify":
            return _cmd_verify(args, use_oracle=False)
        if args.command == "oracle":
            return _cmd_verify(args, use_oracle=True)
        if args.command == "enumerate":
            return _cmd_enumerate(args)
        if args.command == "hydro":
            return _cmd_hydro(args)
        if args.command == "selftest":
            return _cmd_selftest(args)
        if args.command == "gen-worstcase":
            return _cmd_gen_worstcase(args)
        return EXIT_USAGE
    except (ModelError, OracleSizeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (GraphParseError, WalkError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HydrowalksError as exc:  # pragma: no cover
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
