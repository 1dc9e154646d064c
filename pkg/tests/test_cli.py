import json
import math
import subprocess
import sys
from importlib import resources
from pathlib import Path

import numpy as np
import pytest

from tcascade.cli import main

FIXTURE = str(resources.files("tcascade") / "data" / "fixture6.csv")
GOLDEN = json.loads((Path(__file__).parent / "golden" / "fixture6.json").read_text())


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_k_zero_is_usage_error(capsys, tmp_path):
    code, _, err = run(capsys, "solve", "--hypergraph", tmp_path / "h.bin", "--method", "esm", "--k", "0")
    assert code == 2
    assert json.loads(err)["error"] == "usage"


def test_missing_seed_is_usage_error(capsys, tmp_path):
    code, _, err = run(capsys, "sample", "--network", FIXTURE, "--output", tmp_path / "h.bin")
    assert code == 2 and "--seed" in json.loads(err)["message"]


def test_data_and_bound_errors(capsys, tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("u,v,t,p\n0,1,1,2.0\n")
    code, _, err = run(capsys, "sample", "--network", bad, "--seed", 1, "--output", tmp_path / "h.bin")
    assert code == 3 and ":2:" in json.loads(err)["message"]
    code, _, err = run(capsys, "oracle", "--network", tmp_path / "nope.csv")
    assert code == 3
    big = tmp_path / "big.csv"
    big.write_text("u,v,t,p\n" + "".join(f"0,1,{t},0.5\n" for t in range(1, 25)))
    code, _, err = run(capsys, "oracle", "--network", big)
    assert code == 4 and json.loads(err)["error"] == "resource_bound"


def test_fixture_pipeline_matches_golden(capsys, tmp_path):
    h = tmp_path / "h.bin"
    info = run_json(capsys, "sample", "--network", FIXTURE, "--seed", 17, "--n-nets", 20000, "--output", h)
    assert info["n_nets"] == 20000
    rsm = run_json(capsys, "solve", "--hypergraph", h, "--method", "rsm", "--k", 2)
    assert sorted(rsm["nodes"]) == GOLDEN["rsm_optimum"]["2"]["nodes"]
    esm = run_json(capsys, "solve", "--hypergraph", h, "--method", "esm", "--k", 6)
    assert esm["nodes"] == GOLDEN["esm_order"]
    rsm_path = tmp_path / "rsm.json"
    rsm_path.write_text(json.dumps(rsm))
    table = run_json(capsys, "evaluate", "--network", FIXTURE, "--hypergraph", h, "--solutions", rsm_path,
                     "--seed", 5, "--n-sims", 20000)
    row = table["rows"][0]
    want = GOLDEN["rsm_optimum"]["2"]["reverse_spread"]
    q = want / 6
    assert abs(row["reverse_spread"] - want) < 3 * 6 * math.sqrt(q * (1 - q) / 20000)
    assert abs(row["binary_success_rate"] - q) < 3 * math.sqrt(q * (1 - q) / 20000)
    exact = run_json(capsys, "oracle", "--network", FIXTURE)
    assert exact["activation_probabilities"] == pytest.approx(GOLDEN["activation_probabilities"], abs=1e-12)


def test_golden_file_agrees_with_oracles():
    sys.path.insert(0, str(Path(__file__).parent / "golden"))
    from regen_fixture6 import golden
    fresh = golden()
    assert fresh["esm_order"] == GOLDEN["esm_order"]
    assert fresh["rsm_optimum"] == GOLDEN["rsm_optimum"]
    assert np.allclose(fresh["activation_probabilities"], GOLDEN["activation_probabilities"], atol=1e-12)


def test_outputs_byte_identical(capsys, tmp_path):
    outs = []
    for workers in (1, 3):
        h = tmp_path / f"h{workers}.bin"
        run_json(capsys, "sample", "--network", FIXTURE, "--seed", 2, "--n-nets", 3000,
                 "--workers", workers, "--output", h)
        ev = tmp_path / f"ev{workers}.json"
        code, _, err = run(capsys, "evaluate", "--network", FIXTURE, "--hypergraph", h, "--methods",
                           "rsm,esm,maxdeg,random", "--k", "1,2", "--seed", 4, "--n-sims", 2000,
                           "--workers", workers, "--output", ev)
        assert code == 0, err
        outs.append((h.read_bytes(), ev.read_bytes()))
    assert outs[0] == outs[1]


def test_evaluate_normalized_columns(capsys, tmp_path):
    h = tmp_path / "h.bin"
    run_json(capsys, "sample", "--network", FIXTURE, "--seed", 3, "--n-nets", 5000, "--output", h)
    table = run_json(capsys, "evaluate", "--network", FIXTURE, "--hypergraph", h, "--methods", "rsm,maxdeg",
                     "--k", 1, "--seed", 9, "--n-sims", 3000, "--csv", tmp_path / "t.csv")
    rows = table["rows"]
    assert len(rows) == 2
    for m in ("reverse_spread", "binary_success_rate", "expected_spread"):
        vals = sorted(r[m + "_norm"] for r in rows)
        assert vals in ([0.0, 10.0], [0.0, 0.0])
    assert (tmp_path / "t.csv").read_text().startswith("method,k,window")


def test_checkin_pipeline(capsys, tmp_path):
    day = 86400
    lines = ["user,venue,ts,category"]
    rng = np.random.default_rng(0)
    for d in range(4):
        for u in range(12):
            lines.append(f"user{u},venue{rng.integers(0, 4)},{d * day + int(rng.integers(0, day))},cat{u % 2}")
    (tmp_path / "c.csv").write_text("\n".join(lines) + "\n")
    info = run_json(capsys, "build", "checkins", "--input", tmp_path / "c.csv", "--output", tmp_path / "k.csv",
                    "--labels", tmp_path / "labels.csv", "--venues", tmp_path / "venues.csv",
                    "--visits", tmp_path / "visits.csv")
    assert info["nodes"] == 12 and info["intervals"] == 4
    net_info = run_json(capsys, "assign", "contacts", "--input", tmp_path / "k.csv", "--preset", "density",
                        "--b", 0.2, "--output", tmp_path / "net.csv")
    assert net_info["params"]["b"] == 0.2 and net_info["nodes"] == 12
    run_json(capsys, "sample", "--network", tmp_path / "net.csv", "--seed", 1, "--n-nets", 2000,
             "--output", tmp_path / "h.bin")
    code, out, _ = run(capsys, "solve", "--hypergraph", tmp_path / "h.bin", "--method", "rsm", "--k", 3,
                       "--output", tmp_path / "sol.json")
    assert code == 0 and out == ""
    sol = json.loads((tmp_path / "sol.json").read_text())
    assert len(sol["nodes"]) == 3
    inter = run_json(capsys, "intervene", "--network", tmp_path / "net.csv", "--venues", tmp_path / "venues.csv",
                     "--fraction", 0.3, "--top-v", 2, "--seed", 4, "--seed-count", 3)
    assert {r["strategy"] for r in inter["results"]} == {"random", "priority"}
    assert len({r["removed"] for r in inter["results"]}) == 1
    trace = run_json(capsys, "trace", "--network", tmp_path / "net.csv", "--solution", tmp_path / "sol.json",
                     "--seed", 2, "--n-sims", 500, "--venues", tmp_path / "venues.csv",
                     "--visits", tmp_path / "visits.csv")
    assert 0 <= trace["contribution_percent"] <= 100
    assert trace["venue_coverage"]["distinct_venues"] >= 1


def test_trajectory_and_other_builds(capsys, tmp_path):
    (tmp_path / "p.csv").write_text(
        "poi,category,open_min,close_min,dwell_min,lat,lon\n"
        "a,food,0,1440,60,40.70,-74.00\nb,gym,0,1440,60,40.701,-74.001\nc,shop,0,1440,60,40.702,-74.0\n")
    info = run_json(capsys, "build", "trajectories", "--pois", tmp_path / "p.csv", "--individuals", 40,
                    "--days", 2, "--seed", 3, "--output", tmp_path / "k.csv",
                    "--trajectories", tmp_path / "traj.csv")
    assert info["events"] > 0
    run_json(capsys, "assign", "contacts", "--input", tmp_path / "k.csv", "--output", tmp_path / "net.csv")

    (tmp_path / "t.csv").write_text("src,dst,t,p\nX,Y,1,0.5\nY,Z,2,0.25\n")
    tinfo = run_json(capsys, "build", "transitions", "--input", tmp_path / "t.csv", "--output", tmp_path / "tn.csv")
    assert tinfo["records"] == 2

    (tmp_path / "e.csv").write_text("u,v\n0,1\n1,2\n2,0\n")
    code, _, err = run(capsys, "assign", "uniform", "--input", tmp_path / "e.csv", "--output", tmp_path / "u.csv",
                       "--intervals", 3)
    assert code == 2
    uinfo = run_json(capsys, "assign", "uniform", "--input", tmp_path / "e.csv", "--output", tmp_path / "u.csv",
                     "--intervals", 3, "--seed", 1, "--p-max", 0.2)
    assert uinfo["records"] == 3

    sinfo = run_json(capsys, "build", "synthetic", "--family", "er", "--nodes", 20, "--intervals", 2,
                     "--seed", 1, "--output", tmp_path / "s.csv")
    assert sinfo["nodes"] == 20


def test_trace_exhaustive_chain(capsys, tmp_path):
    p = tmp_path / "chain.csv"
    p.write_text("u,v,t,p\n0,1,1,1.0\n1,2,1,1.0\n")
    res = run_json(capsys, "trace", "--network", p, "--nodes", 2, "--top-c", 1, "--exhaustive", "--seed", 0)
    assert res["ranking"] == [[1, 2], [0, 1]]
    assert res["contribution_percent"] == pytest.approx(200 / 3)


def test_cascade_jsonl(capsys):
    code, out, _ = run(capsys, "cascade", "--network", FIXTURE, "--seeds", "0", "--seed", 1)
    assert code == 0
    lines = [json.loads(x) for x in out.splitlines()]
    assert [x["interval"] for x in lines] == [1, 2, 3]
    assert all(a["active_count"] <= b["active_count"] for a, b in zip(lines, lines[1:]))


def test_bench_small(capsys):
    res = run_json(capsys, "bench", "--nodes", 50, "--intervals", 3, "--seed", 0, "--n-nets", "500,1000,2000",
                   "--window-nets", 500, "--repeats", 1)
    assert len(res["by_n_nets"]["seconds"]) == 3
    assert [w["window"] for w in res["by_window"]] == [[1, 1], [1, 2], [1, 3]]


def test_console_script_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "tcascade.cli", "solve", "--hypergraph", "x", "--method",
                           "esm", "--k", "0"], capture_output=True, text=True)
    assert proc.returncode == 2
    assert json.loads(proc.stderr)["exit"] == 2
