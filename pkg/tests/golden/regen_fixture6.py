"""Regenerate fixture6.json from the exhaustive oracles (run from the repo root)."""

import itertools
import json
from importlib import resources
from pathlib import Path

from tcascade import exact_activation_probabilities, exact_final_distribution, read_network_csv


def golden():
    net = read_network_csv(resources.files("tcascade") / "data" / "fixture6.csv")
    p = exact_activation_probabilities(net)
    n = net.node_count
    dists = [exact_final_distribution(net, [s]) for s in range(n)]

    def reach(S):
        S = set(S)
        return sum(pr for d in dists for f, pr in d.items() if f & S)

    opt = {}
    for k in (1, 2):
        best = max(itertools.combinations(range(n), k), key=lambda S: (reach(S), [-x for x in S]))
        opt[str(k)] = {"nodes": list(best), "reverse_spread": reach(best)}
    return {
        "activation_probabilities": p.tolist(),
        "esm_order": sorted(range(n), key=lambda v: (-p[v], v)),
        "rsm_optimum": opt,
    }


if __name__ == "__main__":
    out = Path(__file__).with_name("fixture6.json")
    out.write_text(json.dumps(golden(), sort_keys=True, indent=2) + "\n", encoding="utf-8")
