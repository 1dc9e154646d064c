"""Command-line front end: build, assign, sample, solve, evaluate, intervene, trace, bench.

Every report is JSON on stdout (or ``--output``), bulk data is CSV. Stochastic
subcommands require ``--seed``; identical arguments and seed give identical
bytes. Errors are reported as a JSON object on stderr with exit status 2
(usage), 3 (data) or 4 (resource bound).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .cascade import exact_activation_probabilities, run_tic
from .errors import DataError, ResourceBoundError
from .evaluation import DEFAULT_SIMS, evaluate_solutions, metric_table, table_to_csv
from .ingest import (
    build_colocation_daily,
    build_colocation_slotted,
    generate_synthetic_network,
    generate_trajectories,
    load_checkins,
    load_contact_distances,
    load_edge_list,
    load_pois,
    load_transitions,
)
from .ingest.colocation import Colocation
from .ingest.loaders import _num, read_rows
from .interventions import (
    VenueMap,
    backward_contribution,
    drop_edges_priority,
    drop_edges_random,
    priority_allocation,
    spread_reduction,
    venue_coverage,
)
from .probability import PRESETS, ContactEvent, assign_from_contacts, assign_uniform_random, preset
from .sampler import DEFAULT_NETS, build_hypergraph, load_hypergraph, save_hypergraph
from .solvers import METHODS, SolutionSet, solve
from .temporal_graph import META_PREFIX, TemporalNetwork, _parse_meta, read_network_csv, write_network_csv

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_BOUND = 0, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- argument types ------------------------------------------------------------

def positive_int(text: str) -> int:
    try:
        val = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if val < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1 (got {val})")
    return val


def int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def positive_int_list(text: str) -> list[int]:
    vals = int_list(text)
    if not vals or min(vals) < 1:
        raise argparse.ArgumentTypeError(f"expected integers >= 1, got {text!r}")
    return vals


def window_arg(text: str) -> tuple[int, int]:
    parts = text.replace(":", ",").split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"window must look like I,J (got {text!r})")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must look like I,J (got {text!r})") from None


def method_list(text: str) -> list[str]:
    methods = [m.strip() for m in text.split(",") if m.strip()]
    bad = [m for m in methods if m not in METHODS]
    if bad or not methods:
        raise argparse.ArgumentTypeError(f"unknown method(s) {bad}; choose from {', '.join(METHODS)}")
    return methods


# -- file helpers --------------------------------------------------------------

def _dump(obj, path=None):
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _write_contacts(events, node_count, interval_count, path):
    lines = [f"{META_PREFIX} nodes={node_count} intervals={interval_count}", "u,v,t,d,m"]
    for e in events:
        d = "" if e.distance is None else repr(float(e.distance))
        m = "" if e.co_located is None else str(e.co_located)
        lines.append(f"{e.u},{e.v},{e.t},{d},{m}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _read_meta(path) -> dict[str, int]:
    meta = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.startswith(META_PREFIX):
                meta.update(_parse_meta(line))
            elif line.strip() and not line.startswith("#"):
                break
    return meta


def _write_labels(labels, path):
    lines = ["id,label"] + [f"{k},{lab}" for k, lab in enumerate(labels)]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _write_venues(col: Colocation, path):
    """Edge-record venue attribution: ``u,v,t,venue,category``."""
    rows = sorted(col.venue_map.record_venue.items())
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["u", "v", "t", "venue", "category"])
        for (u, v, t), venue in rows:
            w.writerow([u, v, t, venue, col.venue_map.category.get(venue, "")])


def _read_venues(path) -> VenueMap:
    vm = VenueMap()
    for lineno, row in read_rows(path, ("u", "v", "t", "venue")):
        key = (_num(row, "u", int, path, lineno), _num(row, "v", int, path, lineno),
               _num(row, "t", int, path, lineno))
        vm.record_venue[key] = row["venue"]
        if row.get("category"):
            vm.category.setdefault(row["venue"], row["category"])
    return vm


def _write_visits(col: Colocation, path):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["node", "venue", "t"])
        w.writerows(col.visits)


def _read_visits(path) -> list[tuple[int, str, int]]:
    return [(_num(row, "node", int, path, n), row["venue"], _num(row, "t", int, path, n))
            for n, row in read_rows(path, ("node", "venue", "t"))]


def _load_solution(path) -> list[SolutionSet]:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DataError(f"invalid JSON: {exc.msg}", path=path, line=exc.lineno) from None
    items = data if isinstance(data, list) else [data]
    try:
        return [SolutionSet.from_dict(d) for d in items]
    except (KeyError, TypeError, ValueError) as exc:
        raise DataError(f"not a solution set: {exc}", path=path) from None


def _net(args) -> TemporalNetwork:
    return read_network_csv(args.network)


def _colocation_outputs(col: Colocation, args):
    _write_contacts(col.events, len(col.index), col.interval_count, args.output)
    if args.labels:
        _write_labels(col.index.labels, args.labels)
    if args.venues:
        _write_venues(col, args.venues)
    if args.visits:
        _write_visits(col, args.visits)
    return {"kind": "contacts", "nodes": len(col.index), "intervals": col.interval_count,
            "events": len(col.events), "output": str(args.output)}


# -- subcommands ---------------------------------------------------------------

def cmd_build(args):
    src = args.source
    if src == "checkins":
        col = build_colocation_daily(load_checkins(args.input), start_day=args.start_day, n_days=args.days)
        return _colocation_outputs(col, args)
    if src == "trajectories":
        pois = load_pois(args.pois)
        visits = generate_trajectories(pois, args.individuals, args.days, args.seed,
                                       speed_kmh=args.speed_kmh, max_distance_km=args.max_distance_km)
        col = build_colocation_slotted(visits, args.slot_minutes,
                                       categories={p.poi: p.category for p in pois})
        if args.trajectories:
            with open(args.trajectories, "w", encoding="utf-8", newline="") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(["person", "poi", "arrive", "depart"])
                w.writerows((v.person, v.poi, v.arrive, v.depart) for v in visits)
        return _colocation_outputs(col, args)
    if src == "transitions":
        net = load_transitions(args.input, args.intervals)
        write_network_csv(net, args.output)
        if args.labels:
            _write_labels(net.labels, args.labels)
        return {"kind": "network", "nodes": net.node_count, "intervals": net.interval_count,
                "records": net.record_count, "output": str(args.output)}
    if src == "synthetic":
        net = generate_synthetic_network(args.nodes, args.intervals, args.family, args.seed)
        write_network_csv(net, args.output)
        return {"kind": "network", "family": args.family, "nodes": net.node_count,
                "intervals": net.interval_count, "records": net.record_count, "output": str(args.output)}
    raise UsageError(f"unknown build source {src!r}")


def _contacts_with_ids(path, nodes, intervals):
    """Contact events keyed by integer ids when every label is an integer, else densely remapped."""
    table = load_contact_distances(path)
    meta = _read_meta(path)
    labels = table.index.labels
    try:
        ids = [int(lab) for lab in labels]
    except ValueError:
        ids = None
    if ids is not None and min(ids) >= 0:
        n = max(nodes or 0, meta.get("nodes", 0), max(ids) + 1)
        events = [ContactEvent(ids[e.u], ids[e.v], e.t, e.distance, e.co_located) for e in table.events]
        labels = None
    else:
        n = max(nodes or 0, len(labels))
        events = table.events
    T = max(intervals or 0, meta.get("intervals", 0), table.interval_count)
    return events, n, T, labels


def cmd_assign(args):
    if args.model == "contacts":
        events, n, T, labels = _contacts_with_ids(args.input, args.nodes, args.intervals)
        params = preset(args.preset, a=args.a, b=args.b, rho1=args.rho1, rho2=args.rho2,
                        dist_threshold=args.l, history_window=args.t0)
        net = assign_from_contacts(params, events, n, T, symmetric=not args.directed)
        info = {"model": "contacts", "preset": args.preset,
                "params": {"a": params.a, "b": params.b, "rho1": params.rho1, "rho2": params.rho2,
                           "l": params.dist_threshold, "t0": params.history_window}}
    else:
        if args.seed is None:
            raise UsageError("assign uniform requires --seed")
        if args.intervals is None:
            raise UsageError("assign uniform requires --intervals")
        el = load_edge_list(args.input)
        labels = el.index.labels
        net = assign_uniform_random(el.pairs, el.node_count, args.intervals, args.p_max, args.seed)
        info = {"model": "uniform", "p_max": args.p_max}
    write_network_csv(net, args.output)
    if args.labels and labels:
        _write_labels(labels, args.labels)
    info.update({"nodes": net.node_count, "intervals": net.interval_count, "records": net.record_count,
                 "output": str(args.output)})
    return info


def cmd_sample(args):
    net = _net(args)
    h = build_hypergraph(net, args.window, args.n_nets, args.seed, workers=args.workers)
    save_hypergraph(h, args.output)
    sizes = np.diff(h.net_offsets)
    return {"nodes": h.node_count, "n_nets": h.n_nets, "pins": int(len(h.net_pins)),
            "mean_net_size": float(sizes.mean()), "window": list(net.window(args.window).as_tuple()),
            "seed": args.seed, "output": str(args.output)}


def _solve_all(methods, ks, h, net, window, seed):
    out = []
    for k in ks:
        for m in methods:
            if m == "random" and seed is None:
                raise UsageError("method random requires --seed")
            if m == "maxdeg" and net is None:
                raise UsageError("method maxdeg requires --network")
            out.append(solve(m, k, h=h, net=net, window=window, rng=seed))
    return out


def cmd_solve(args):
    h = load_hypergraph(args.hypergraph)
    net = _net(args) if args.network else None
    sols = _solve_all(args.method, args.k, h, net, args.window, args.seed)
    data = [s.to_dict() for s in sols]
    return data[0] if len(data) == 1 else data


def cmd_evaluate(args):
    net = _net(args)
    h = load_hypergraph(args.hypergraph)
    if h.node_count != net.node_count:
        raise DataError("hypergraph and network disagree on node count", path=args.hypergraph)
    sols = []
    for path in args.solutions or []:
        sols.extend(_load_solution(path))
    if args.methods:
        sols.extend(_solve_all(args.methods, args.k, h, net, args.window, args.seed))
    if not sols:
        raise UsageError("nothing to evaluate: give --methods or --solutions")
    reports = evaluate_solutions(net, h, sols, args.window, args.n_sims, args.seed,
                                 count_seed=not args.exclude_seed, workers=args.workers)
    rows = metric_table(reports)
    if args.csv:
        Path(args.csv).write_text(table_to_csv(rows), encoding="utf-8")
    return {"seed": args.seed, "n_sims": args.n_sims, "count_seed": not args.exclude_seed, "rows": rows}


def cmd_intervene(args):
    net = _net(args)
    rng = np.random.default_rng(args.seed)
    if args.seeds:
        seeds = args.seeds
    else:
        seeds = sorted(rng.choice(net.node_count, size=min(args.seed_count, net.node_count),
                                  replace=False).tolist())
    vm = _read_venues(args.venues) if args.venues else None
    results = []
    for strategy in args.strategy:
        child = np.random.default_rng([args.seed, 1 + ("random", "priority").index(strategy)])
        entry = {"strategy": strategy, "fraction": args.fraction}
        if strategy == "random":
            modified = drop_edges_random(net, args.fraction, child)
        else:
            if vm is None:
                vm = VenueMap.by_source_node(net)
                entry["venues"] = "source-node"
            entry["allocation"] = priority_allocation(net, args.fraction, vm, args.top_v)
            modified = drop_edges_priority(net, args.fraction, vm, args.top_v, child)
        red = spread_reduction(net, modified, seeds, args.window, args.n_sims, args.seed, workers=args.workers)
        entry.update({"removed": net.record_count - modified.record_count, "reduction_percent": red.percent,
                      "reduction_se": red.se, "baseline_mean": red.baseline_mean,
                      "modified_mean": red.modified_mean, "n_sims": red.n_sims})
        results.append(entry)
    return {"seed": args.seed, "seeds": [int(s) for s in seeds], "records": net.record_count,
            "window": list(net.window(args.window).as_tuple()), "results": results}


def cmd_trace(args):
    net = _net(args)
    if args.solution:
        nodes = list(_load_solution(args.solution)[0].nodes)
    elif args.nodes:
        nodes = args.nodes
    else:
        raise UsageError("give --solution or --nodes")
    sources = list(range(net.node_count)) if args.exhaustive else None
    res = backward_contribution(net, nodes, args.window, args.n_sims, args.top_c, args.seed,
                                sources=sources, include_members=args.include_members, workers=args.workers)
    out = {"nodes": sorted(set(nodes)), "seed": args.seed, "n_sims": args.n_sims if sources is None else len(sources),
           "ranking": [[v, c] for v, c in res.ranking], "contributors": list(res.contributors),
           "contribution_percent": res.contribution_percent, "activation_events": res.activation_events}
    if args.visits:
        vm = _read_venues(args.venues) if args.venues else VenueMap()
        hist, n_venues = venue_coverage(nodes, vm, _read_visits(args.visits), args.window)
        out["venue_coverage"] = {"distinct_venues": n_venues, "categories": [[c, n] for c, n in hist]}
    return out


def cmd_cascade(args):
    net = _net(args)
    tr = run_tic(net, args.seeds, args.window, args.seed, sim=args.sim)
    text = tr.to_jsonl()
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        return {"final": sorted(tr.final), "output": str(args.output)}
    return text


def cmd_oracle(args):
    net = _net(args)
    p = exact_activation_probabilities(net, args.window, args.max_pairs)
    return {"window": list(net.window(args.window).as_tuple()), "activation_probabilities": p.tolist()}


def _linear_fit(x, y):
    x, y = np.asarray(x, float), np.asarray(y, float)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - float((resid ** 2).sum()) / ss_tot if ss_tot > 0 else 1.0
    return float(slope), float(intercept), r2


def _best_of(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_nets(net, n_nets_list, seed, repeats=3, workers=None, window=None):
    """Best-of-``repeats`` hypergraph build time per net count, plus a linear fit."""
    build_hypergraph(net, window, 64, seed, workers=workers)  # warm the compiled kernel
    times = [_best_of(lambda n=n: build_hypergraph(net, window, n, seed, workers=workers), repeats)
             for n in n_nets_list]
    slope, intercept, r2 = _linear_fit(n_nets_list, times)
    return {"n_nets": list(n_nets_list), "seconds": times, "slope": slope, "intercept": intercept, "r2": r2}


def cmd_bench(args):
    if args.network:
        net = _net(args)
    else:
        net = generate_synthetic_network(args.nodes, args.intervals, args.family, args.seed)
    out = {"nodes": net.node_count, "intervals": net.interval_count, "records": net.record_count,
           "by_n_nets": bench_nets(net, args.n_nets, args.seed, args.repeats, args.workers)}
    spans = []
    for j in range(1, net.interval_count + 1):
        secs = _best_of(lambda: build_hypergraph(net, (1, j), args.window_nets, args.seed, workers=args.workers),
                        args.repeats)
        spans.append({"window": [1, j], "seconds": secs})
    out["by_window"] = spans
    out["note"] = "timings are machine dependent"
    return out


# -- parser ----------------------------------------------------------------------

def _common(p, *, network=True, seed=False, window=True, workers=False):
    if network:
        p.add_argument("--network", required=True, help="canonical u,v,t,p network CSV")
    if window:
        p.add_argument("--window", type=window_arg, default=None, help="interval window I,J (default: all)")
    if seed:
        p.add_argument("--seed", type=int, required=True, help="master random seed")
    if workers:
        p.add_argument("--workers", type=positive_int, default=None, help="worker threads (default: all cores)")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="tcascade", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"tcascade {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("build", help="ingest raw data into a contact or network file")
    bsub = b.add_subparsers(dest="source", required=True, parser_class=_Parser)
    for name in ("checkins", "trajectories"):
        p = bsub.add_parser(name)
        p.add_argument("--output", required=True, help="contacts CSV (u,v,t,d,m)")
        p.add_argument("--labels", help="write id,label mapping here")
        p.add_argument("--venues", help="write per-record venue attribution here")
        p.add_argument("--visits", help="write node,venue,t presences here")
        if name == "checkins":
            p.add_argument("--input", required=True, help="check-in CSV (user,venue,ts[,category])")
            p.add_argument("--start-day", type=int, default=None, help="first epoch day of the span")
            p.add_argument("--days", type=positive_int, default=None, help="span length in days")
        else:
            p.add_argument("--pois", required=True, help="POI CSV")
            p.add_argument("--individuals", type=positive_int, required=True)
            p.add_argument("--days", type=positive_int, required=True)
            p.add_argument("--seed", type=int, required=True)
            p.add_argument("--slot-minutes", type=positive_int, default=5)
            p.add_argument("--speed-kmh", type=float, default=5.0)
            p.add_argument("--max-distance-km", type=float, default=5.0)
            p.add_argument("--trajectories", help="write generated visits here")
    p = bsub.add_parser("transitions")
    p.add_argument("--input", required=True, help="transition CSV (src,dst,t,p)")
    p.add_argument("--output", required=True)
    p.add_argument("--intervals", type=positive_int, default=None)
    p.add_argument("--labels")
    p = bsub.add_parser("synthetic")
    p.add_argument("--family", choices=("er", "late_bloomer"), default="late_bloomer")
    p.add_argument("--nodes", type=positive_int, default=500)
    p.add_argument("--intervals", type=positive_int, default=10)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--output", required=True)

    a = sub.add_parser("assign", help="assign propagation probabilities")
    asub = a.add_subparsers(dest="model", required=True, parser_class=_Parser)
    p = asub.add_parser("contacts", help="force-of-infection model over contact events")
    p.add_argument("--preset", choices=sorted(PRESETS), default="density")
    for flag in ("a", "b", "rho1", "rho2", "l"):
        p.add_argument(f"--{flag}", type=float, default=None)
    p.add_argument("--t0", type=positive_int, default=None, help="history window in intervals")
    p.add_argument("--directed", action="store_true", help="events act only from u to v")
    p.add_argument("--nodes", type=positive_int, default=None)
    p.add_argument("--intervals", type=positive_int, default=None)
    q = asub.add_parser("uniform", help="edge list with uniform random interval and probability")
    q.add_argument("--p-max", type=float, default=0.3)
    q.add_argument("--intervals", type=positive_int, default=None)
    q.add_argument("--seed", type=int, default=None)
    for p in (p, q):
        p.add_argument("--input", required=True)
        p.add_argument("--output", required=True)
        p.add_argument("--labels")

    p = sub.add_parser("sample", help="build the random reachable set hypergraph cache")
    _common(p, seed=True, workers=True)
    p.add_argument("--n-nets", type=positive_int, default=DEFAULT_NETS)
    p.add_argument("--output", required=True, help="binary hypergraph cache")

    p = sub.add_parser("solve", help="select k nodes")
    p.add_argument("--hypergraph", required=True)
    p.add_argument("--network", default=None, help="needed for maxdeg")
    p.add_argument("--window", type=window_arg, default=None)
    p.add_argument("--method", type=method_list, required=True, help=f"one or more of {','.join(METHODS)}")
    p.add_argument("--k", type=positive_int_list, required=True)
    p.add_argument("--seed", type=int, default=None, help="required for random")
    p.add_argument("--output", default=None)

    p = sub.add_parser("evaluate", help="metric table over solution sets")
    _common(p, seed=True, workers=True)
    p.add_argument("--hypergraph", required=True)
    p.add_argument("--methods", type=method_list, default=None)
    p.add_argument("--k", type=positive_int_list, default=[10])
    p.add_argument("--solutions", nargs="*", default=None, help="solution JSON files")
    p.add_argument("--n-sims", type=positive_int, default=DEFAULT_SIMS)
    p.add_argument("--exclude-seed", action="store_true", help="a run's own seed does not count as detection")
    p.add_argument("--csv", default=None, help="also write the table as CSV")
    p.add_argument("--output", default=None)

    p = sub.add_parser("intervene", help="edge-drop strategies and spread reduction")
    _common(p, seed=True, workers=True)
    p.add_argument("--strategy", type=lambda s: [x for x in s.split(",") if x], default=["random", "priority"])
    p.add_argument("--fraction", type=float, default=0.3)
    p.add_argument("--top-v", type=positive_int, default=50)
    p.add_argument("--venues", default=None, help="venue attribution CSV (default: source node)")
    p.add_argument("--seeds", type=int_list, default=None, help="explicit seed nodes")
    p.add_argument("--seed-count", type=positive_int, default=10)
    p.add_argument("--n-sims", type=positive_int, default=20)
    p.add_argument("--output", default=None)

    p = sub.add_parser("trace", help="backward contribution of upstream nodes")
    _common(p, seed=True, workers=True)
    p.add_argument("--solution", default=None)
    p.add_argument("--nodes", type=int_list, default=None)
    p.add_argument("--n-sims", type=positive_int, default=DEFAULT_SIMS)
    p.add_argument("--top-c", type=positive_int, default=None, help="default: size of the solution set")
    p.add_argument("--exhaustive", action="store_true", help="one run per possible seed instead of random seeds")
    p.add_argument("--include-members", action="store_true")
    p.add_argument("--venues", default=None)
    p.add_argument("--visits", default=None, help="node,venue,t presences for venue coverage")
    p.add_argument("--output", default=None)

    p = sub.add_parser("cascade", help="one T-IC realization as JSON lines")
    _common(p, seed=True)
    p.add_argument("--seeds", type=int_list, required=True)
    p.add_argument("--sim", type=int, default=0)
    p.add_argument("--output", default=None)

    p = sub.add_parser("oracle", help="exact activation probabilities by enumeration")
    _common(p)
    p.add_argument("--max-pairs", type=positive_int, default=20)
    p.add_argument("--output", default=None)

    p = sub.add_parser("bench", help="hypergraph build time against net count and window length")
    p.add_argument("--network", default=None, help="default: synthetic network")
    p.add_argument("--family", choices=("er", "late_bloomer"), default="late_bloomer")
    p.add_argument("--nodes", type=positive_int, default=500)
    p.add_argument("--intervals", type=positive_int, default=10)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n-nets", type=positive_int_list, default=[20000, 40000, 80000])
    p.add_argument("--window-nets", type=positive_int, default=20000)
    p.add_argument("--repeats", type=positive_int, default=3)
    p.add_argument("--workers", type=positive_int, default=None)
    p.add_argument("--output", default=None)
    return ap


COMMANDS = {
    "build": cmd_build, "assign": cmd_assign, "sample": cmd_sample, "solve": cmd_solve,
    "evaluate": cmd_evaluate, "intervene": cmd_intervene, "trace": cmd_trace, "cascade": cmd_cascade,
    "oracle": cmd_oracle, "bench": cmd_bench,
}


def _fail(code: int, kind: str, message: str) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message, "exit": code}, sort_keys=True) + "\n")
    return code


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "intervene":
            bad = [s for s in args.strategy if s not in ("random", "priority")]
            if bad:
                raise UsageError(f"unknown strategy {bad}; choose from random, priority")
        result = COMMANDS[args.command](args)
    except UsageError as exc:
        return _fail(EXIT_USAGE, "usage", str(exc))
    except DataError as exc:
        return _fail(EXIT_DATA, "data", str(exc))
    except (FileNotFoundError, IsADirectoryError, PermissionError) as exc:
        return _fail(EXIT_DATA, "data", f"{exc.strerror}: {exc.filename}")
    except ResourceBoundError as exc:
        return _fail(EXIT_BOUND, "resource_bound", str(exc))
    except ValueError as exc:
        return _fail(EXIT_USAGE, "usage", str(exc))
    if isinstance(result, str):
        sys.stdout.write(result)
    else:
        _dump(result, getattr(args, "output", None) if args.command in ("solve", "evaluate", "intervene",
                                                                          "trace", "oracle", "bench") else None)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
