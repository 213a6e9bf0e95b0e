"""Command-line entry point.

Exit status is 0 on success, 1 on domain errors (bad input files, budget
exhaustion, no valid labeling, ...) and 2 on usage errors.  With ``--json``
every result is one JSON document on stdout with sorted keys; counts are
decimal strings.  Vertex ids in output are 1-indexed, as in the files.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import cliques, decomposition, graph, labeling, oracle, problems, stable
from .errors import FormatError, PathcountError


class UsageError(Exception):
    pass


def _read(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _sample_rng(seed, index):
    # one derived stream per sample keeps sample i independent of --samples
    return random.Random(f"{seed}/{index}")


def _load_graph(args):
    return graph.parse_graph(_read(args.graph))


def _decomposition(args, g):
    """Resolve ``--decomp`` into a nice decomposition plus an echo for the output."""
    source = args.decomp
    if source in ("exact", "greedy"):
        if g.n == 0:
            pd = decomposition.PathDecomposition(())
        elif source == "exact":
            pd = decomposition.optimal_decomposition(g, budget_ms=args.budget_ms)
        else:
            pd = decomposition.greedy_decomposition(g)
    else:
        pd = decomposition.parse_pd(_read(source))
        if any(v >= g.n for b in pd.bags for v in b):
            raise FormatError("range", f"decomposition names vertices beyond n={g.n}")
    npd = decomposition.to_nice(g, pd) if g.n else decomposition.NicePathDecomposition((), -1)
    echo = {"source": "file" if source not in ("exact", "greedy") else source, "width": pd.width}
    if source == "exact":
        echo["bags"] = [[v + 1 for v in b] for b in pd.bags]
    return pd, npd, echo


def _need_seed(args):
    if args.seed is None:
        raise UsageError("sampling requires --seed")


def cmd_decompose(args):
    g = _load_graph(args)
    pd, npd, echo = _decomposition(args, g)
    doc = {"command": "decompose", "n": g.n, "width": pd.width, "source": echo["source"],
           "bags": [[v + 1 for v in b] for b in pd.bags]}
    return doc, decomposition.serialize_pd(pd, g.n)


def cmd_count(args):
    g = _load_graph(args)
    prob = problems.resolve_problem(args.problem)
    _, npd, echo = _decomposition(args, g)
    total = labeling.count_valid_labelings(g, npd, prob)
    doc = {"command": "count", "problem": prob.name, "n": g.n, "m": g.m,
           "count": str(total), "decomposition": echo}
    return doc, f"{total}\n"


def cmd_sample(args):
    _need_seed(args)
    g = _load_graph(args)
    prob = problems.resolve_problem(args.problem)
    _, npd, echo = _decomposition(args, g)
    if args.sampler == "fast":
        sampler = labeling.TraceSampler(g, npd, prob)
    else:
        sampler = labeling.ReferenceSampler(g, npd, prob)
    drawn = [" ".join(map(str, sampler.sample(_sample_rng(args.seed, i)))) for i in range(args.samples)]
    doc = {"command": "sample", "problem": prob.name, "n": g.n, "seed": args.seed,
           "sampler": args.sampler, "count": str(sampler.total), "samples": drawn, "decomposition": echo}
    return doc, "".join(s + "\n" for s in drawn)


def cmd_cliques_count(args):
    g = _load_graph(args)
    _, npd, echo = _decomposition(args, g)
    counts = cliques.count_cliques(g, npd)
    doc = {"command": "cliques count", "n": g.n, "count": str(counts.total), "decomposition": echo}
    if args.per_vertex:
        doc["per_vertex"] = [str(x) for x in counts.per_vertex]
    text = f"{counts.total}\n"
    if args.per_vertex:
        text += "".join(f"{v + 1} {x}\n" for v, x in enumerate(counts.per_vertex))
    return doc, text


def cmd_cliques_sample(args):
    _need_seed(args)
    g = _load_graph(args)
    _, npd, echo = _decomposition(args, g)
    counts = cliques.count_cliques(g, npd)
    drawn = [[v + 1 for v in cliques.sample_clique(g, npd, _sample_rng(args.seed, i), counts)]
             for i in range(args.samples)]
    doc = {"command": "cliques sample", "n": g.n, "seed": args.seed, "count": str(counts.total),
           "samples": drawn, "decomposition": echo}
    return doc, "".join(" ".join(map(str, s)) + "\n" for s in drawn)


def _load_sm(args):
    return stable.parse_sm(_read(args.instance))


def _matching_out(match):
    return [w + 1 for w in match]


def cmd_sm_count(args):
    inst = _load_sm(args)
    rd = stable.build_rotation_digraph(inst)
    total = stable.count_stable_matchings(inst, budget_ms=args.budget_ms)
    doc = {"command": "sm count", "n": inst.n, "rotations": len(rd.rotations), "count": str(total)}
    return doc, f"{total}\n"


def cmd_sm_sample(args):
    _need_seed(args)
    inst = _load_sm(args)
    sampler = stable.StableMatchingSampler(inst, budget_ms=args.budget_ms)
    drawn = [_matching_out(sampler.sample(_sample_rng(args.seed, i))) for i in range(args.samples)]
    doc = {"command": "sm sample", "n": inst.n, "seed": args.seed, "count": str(sampler.total),
           "samples": drawn}
    return doc, "".join(" ".join(map(str, s)) + "\n" for s in drawn)


def cmd_sm_rotations(args):
    inst = _load_sm(args)
    rd = stable.build_rotation_digraph(inst)
    rots = [[[m + 1, w + 1] for m, w in rot] for rot in rd.rotations]
    doc = {"command": "sm rotations", "n": inst.n, "rotations": rots,
           "edges": [[a + 1, b + 1] for a, b in rd.edges],
           "man_optimal": _matching_out(rd.man_optimal),
           "woman_optimal": _matching_out(rd.woman_optimal)}
    lines = [f"rotation {i + 1}: " + " ".join(f"({m},{w})" for m, w in r) for i, r in enumerate(rots)]
    lines += [f"edge {a} -> {b}" for a, b in doc["edges"]]
    return doc, "".join(x + "\n" for x in lines)


def cmd_sm_range(args):
    inst = _load_sm(args)
    k = stable.range_of(inst)
    return {"command": "sm range", "n": inst.n, "range": k}, f"{k}\n"


def cmd_sm_gen(args):
    _need_seed(args)
    if args.n is None or args.k is None:
        raise UsageError("sm gen requires --n and --k")
    inst = stable.gen_k_range(args.n, args.k, random.Random(args.seed))
    text = stable.serialize_sm(inst)
    return {"command": "sm gen", "n": args.n, "k": args.k, "seed": args.seed, "instance": text}, text


def cmd_gen(args):
    g = graph.generate(args.family, *args.sizes)
    text = graph.serialize_graph(g)
    return {"command": "gen", "family": args.family, "n": g.n, "m": g.m, "graph": text}, text


def cmd_oracle(args):
    what = args.what
    if what == "pathwidth":
        g = _load_graph(args)
        pw = oracle.exact_pathwidth(g.undirected())
        return {"command": "oracle pathwidth", "pathwidth": pw}, f"{pw}\n"
    if what == "count":
        g = _load_graph(args)
        if args.problem is None:
            raise UsageError("oracle count requires --problem")
        prob = problems.resolve_problem(args.problem)
        total = len(oracle.enumerate_valid_labelings(g, prob))
    elif what == "cliques":
        total = len(oracle.enumerate_cliques(_load_graph(args)))
    else:
        total = len(oracle.enumerate_stable_matchings(_load_sm(args)))
    return {"command": f"oracle {what}", "count": str(total)}, f"{total}\n"


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="emit one JSON document")
    p.add_argument("--seed", type=int, help="random seed (required for sampling)")
    p.add_argument("--budget-ms", type=float, default=None, help="time budget for exact decomposition search")
    p.add_argument("--decomp", default="greedy", help="decomposition source: exact, greedy, or a .pd file")
    return p


def build_parser():
    common = _common()
    parser = argparse.ArgumentParser(prog="pathcount", description=__doc__.splitlines()[0],
                                     parents=[common])
    sub = parser.add_subparsers(dest="command", required=True,
                                metavar="{decompose,count,sample,cliques,sm,gen}")

    p = sub.add_parser("decompose", parents=[common], help="compute a path decomposition")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("count", parents=[common], help="count valid labelings")
    p.add_argument("--graph", required=True)
    p.add_argument("--problem", required=True, help="coloring:<c>, indep, downset or custom:<path>")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("sample", parents=[common], help="sample uniform valid labelings")
    p.add_argument("--graph", required=True)
    p.add_argument("--problem", required=True)
    p.add_argument("--samples", type=int, default=1)
    p.add_argument("--sampler", choices=("fast", "reference"), default="fast")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("cliques", help="count or sample cliques")
    csub = p.add_subparsers(dest="action", required=True)
    q = csub.add_parser("count", parents=[common])
    q.add_argument("--graph", required=True)
    q.add_argument("--per-vertex", action="store_true")
    q.set_defaults(func=cmd_cliques_count)
    q = csub.add_parser("sample", parents=[common])
    q.add_argument("--graph", required=True)
    q.add_argument("--samples", type=int, default=1)
    q.set_defaults(func=cmd_cliques_sample)

    p = sub.add_parser("sm", help="stable matchings")
    ssub = p.add_subparsers(dest="action", required=True)
    for name, func in (("count", cmd_sm_count), ("sample", cmd_sm_sample),
                       ("rotations", cmd_sm_rotations), ("range", cmd_sm_range)):
        q = ssub.add_parser(name, parents=[common])
        q.add_argument("--instance", required=True)
        if name == "sample":
            q.add_argument("--samples", type=int, default=1)
        q.set_defaults(func=func)
    q = ssub.add_parser("gen", parents=[common])
    q.add_argument("--n", type=int)
    q.add_argument("--k", type=int)
    q.set_defaults(func=cmd_sm_gen)

    p = sub.add_parser("gen", parents=[common], help="generate a graph family")
    p.add_argument("family", choices=graph.FAMILIES)
    p.add_argument("sizes", type=int, nargs="+")
    p.set_defaults(func=cmd_gen)

    # debugging aid, left out of the help listing
    p = sub.add_parser("oracle", parents=[common])
    p.add_argument("what", choices=("count", "cliques", "pathwidth", "sm"))
    p.add_argument("--graph")
    p.add_argument("--problem")
    p.add_argument("--instance")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "samples", 1) < 1:
        parser.error("--samples must be >= 1")
    try:
        doc, text = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (PathcountError, ValueError, OSError) as exc:
        err = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        if args.json:
            print(json.dumps(err, sort_keys=True))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps(doc, sort_keys=True))
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
