import json

import pytest

from totpcount import (
    DnfFormula,
    Graph,
    full_binary_tree,
    save_dnf,
    save_graph,
    save_tree,
)
from totpcount.cli import main
from totpcount.problems import CnfFormula, save_cnf
from totpcount.trees import ExplicitTree, random_tree
import numpy as np


@pytest.fixture
def dnf_file(tmp_path):
    path = tmp_path / "phi.dnf"
    save_dnf(DnfFormula(2, ((1,),)), path)
    return path


@pytest.fixture
def tree_file(tmp_path):
    path = tmp_path / "fb2.tree"
    save_tree(full_binary_tree(2), path)
    return path


@pytest.fixture
def triangle_file(tmp_path):
    path = tmp_path / "k3.graph"
    save_graph(Graph.from_edges(3, [(1, 2), (2, 3), (1, 3)]), path)
    return path


@pytest.fixture
def cnf_file(tmp_path):
    path = tmp_path / "phi.cnf"
    save_cnf(CnfFormula(2, ((1, 2),)), path)
    return path


@pytest.fixture
def unsat_cnf_file(tmp_path):
    path = tmp_path / "unsat.cnf"
    save_cnf(CnfFormula(2, ((1,), (-1,))), path)
    return path


def run_cli(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out.strip()
    return code, json.loads(out) if out else None


def test_estimate_dnf_record_shape(capsys, dnf_file):
    code, record = run_cli(
        capsys,
        ["estimate", "--problem", "dnf", "--input", str(dnf_file),
         "--xi", "0.05", "--delta", "0.1", "--seed", "7", "--transport", "exact"],
    )
    assert code == 0
    for key in ("estimate", "fraction", "error_radius", "steps"):
        assert key in record
    assert abs(record["estimate"] - 2) <= record["error_radius"]


def test_estimate_tree_fixture_near_seven(capsys, tree_file):
    code, record = run_cli(
        capsys,
        ["estimate", "--problem", "tree", "--input", str(tree_file),
         "--xi", "0.1", "--delta", "0.1", "--seed", "3", "--transport", "exact"],
    )
    assert code == 0
    assert abs(record["estimate"] - 7) <= record["error_radius"]


def test_estimate_missing_input_exits_two(tree_file):
    with pytest.raises(SystemExit) as err:
        main(["estimate", "--problem", "tree", "--xi", "0.1", "--delta", "0.1", "--seed", "1"])
    assert err.value.code == 2


def test_estimate_bad_xi_exits_two(capsys, tree_file):
    code = main(
        ["estimate", "--problem", "tree", "--input", str(tree_file),
         "--xi", "2.0", "--delta", "0.1", "--seed", "1"]
    )
    assert code == 2


def test_estimate_height_guard_exits_three(capsys, tmp_path):
    rng = np.random.default_rng(0)
    tall = random_tree(rng, 501, child_prob=0.0)
    path = tmp_path / "tall.tree"
    save_tree(tall, path)
    code = main(
        ["estimate", "--problem", "tree", "--input", str(path),
         "--xi", "0.5", "--delta", "0.1", "--seed", "1", "--transport", "exact"]
    )
    assert code == 3


def test_exact_triangle(capsys, triangle_file):
    code, record = run_cli(
        capsys, ["exact", "--problem", "is", "--input", str(triangle_file), "--threshold", "5"]
    )
    assert code == 0
    assert record["outcome"] == "exact" and record["value"] == 3


def test_exact_exceeds(capsys, triangle_file):
    code, record = run_cli(
        capsys, ["exact", "--problem", "is", "--input", str(triangle_file), "--threshold", "2"]
    )
    assert code == 0
    assert record["outcome"] == "exceeds" and "value" not in record
    assert record["nodes_visited"] <= 3


def test_exact_empty_instance(capsys, tmp_path):
    path = tmp_path / "empty.dnf"
    save_dnf(DnfFormula(2, ()), path)
    code, record = run_cli(
        capsys, ["exact", "--problem", "dnf", "--input", str(path), "--threshold", "0"]
    )
    assert code == 0
    assert record["outcome"] == "exact" and record["value"] == 0


def test_ras_exact_branch(capsys, triangle_file):
    code, record = run_cli(
        capsys,
        ["ras", "--problem", "is", "--input", str(triangle_file),
         "--k", "2", "--beta", "0.5", "--delta", "0.2", "--seed", "1"],
    )
    assert code == 0
    assert record["mode"] == "exact" and record["estimate"] == 3.0


def test_estimate_monotone_circuit(capsys, tmp_path):
    path = tmp_path / "or.mono"
    path.write_text("input 1\ninput 2\ngate 3 OR 1 2\noutput 3\n", encoding="utf-8")
    code, record = run_cli(
        capsys,
        ["estimate", "--problem", "mono", "--input", str(path),
         "--xi", "0.1", "--delta", "0.1", "--seed", "2", "--transport", "exact"],
    )
    assert code == 0
    assert abs(record["estimate"] - 3) <= record["error_radius"]


def test_ras_estimator_branch(capsys, tmp_path):
    # Tautological 6-variable formula (64 solutions) sits above the exact
    # cutoff ceil(2 * 2^3.5 * 2^(7/3)/2) = 51, so the sampling branch runs.
    path = tmp_path / "dense.dnf"
    path.write_text("p dnf 6 1\n0\n", encoding="utf-8")
    code, record = run_cli(
        capsys,
        ["ras", "--problem", "dnf", "--input", str(path),
         "--k", "2", "--beta", "0.3333", "--delta", "0.2", "--seed", "6",
         "--transport", "exact"],
    )
    assert code == 0
    assert record["mode"] == "telescoping"
    assert abs(record["estimate"] - 64) <= 64 * record["relative_error_bound"]


def test_ras_rejects_small_k(capsys, triangle_file):
    code = main(
        ["ras", "--problem", "is", "--input", str(triangle_file),
         "--k", "0.5", "--beta", "0.5", "--delta", "0.2", "--seed", "1"]
    )
    assert code == 2


def test_capp_cnf(capsys, cnf_file):
    code, record = run_cli(
        capsys,
        ["capp", "--problem", "cnf", "--input", str(cnf_file),
         "--epsilon", "0.1", "--delta", "0.1", "--seed", "5", "--transport", "exact"],
    )
    assert code == 0
    assert 0.65 <= record["p_hat"] <= 0.85
    assert record["route"] == "complement"


def test_capp_unsupported_family_exits_two(capsys, triangle_file):
    code = main(
        ["capp", "--problem", "is", "--input", str(triangle_file),
         "--epsilon", "0.1", "--delta", "0.1", "--seed", "5"]
    )
    assert code == 2


def test_gapcsat_unsat(capsys, unsat_cnf_file):
    code, record = run_cli(
        capsys,
        ["gapcsat", "--problem", "cnf", "--input", str(unsat_cnf_file),
         "--rho", "0.5", "--delta", "0.05", "--seed", "2", "--transport", "exact"],
    )
    assert code == 0
    assert record["verdict"] == "unsatisfiable"


def test_gapcsat_sat(capsys, cnf_file):
    code, record = run_cli(
        capsys,
        ["gapcsat", "--problem", "cnf", "--input", str(cnf_file),
         "--rho", "0.5", "--delta", "0.05", "--seed", "2", "--transport", "exact"],
    )
    assert code == 0
    assert record["verdict"] == "satisfiable"


def test_determinism_identical_records(capsys, dnf_file):
    argv = ["estimate", "--problem", "dnf", "--input", str(dnf_file),
            "--xi", "0.1", "--delta", "0.1", "--seed", "9", "--transport", "exact"]
    _, first = run_cli(capsys, argv)
    _, second = run_cli(capsys, argv)
    first.pop("wall_time_s")
    second.pop("wall_time_s")
    assert first == second


def test_bench_runs_manifest(capsys, tmp_path, tree_file):
    manifest = {
        "runs": [
            {"command": "estimate", "problem": "tree", "input": str(tree_file),
             "xi": 0.2, "delta": 0.2, "seed": s, "transport": "exact"}
            for s in range(3)
        ]
    }
    suite = tmp_path / "suite.json"
    suite.write_text(json.dumps(manifest), encoding="utf-8")
    out = tmp_path / "results.jsonl"
    code, record = run_cli(capsys, ["bench", "--suite", str(suite), "--out", str(out)])
    assert code == 0 and record["runs"] == 3
    lines = [json.loads(line) for line in out.read_text().splitlines()]
    assert len(lines) == 3
    for line in lines:
        assert abs(line["estimate"] - 7) <= line["error_radius"]


def test_bench_coverage_over_random_trees(capsys, tmp_path):
    rng = np.random.default_rng(99)
    runs = []
    truths = []
    for i in range(20):
        tree = random_tree(rng, int(rng.integers(1, 7)), child_prob=0.55, max_nodes=80)
        path = tmp_path / f"tree_{i}.tree"
        save_tree(tree, path)
        truths.append(len(tree.nodes))
        runs.append(
            {"command": "estimate", "problem": "tree", "input": path.name,
             "xi": 0.2, "delta": 0.2, "seed": i, "transport": "exact"}
        )
    suite = tmp_path / "suite.json"
    suite.write_text(json.dumps({"runs": runs}), encoding="utf-8")
    out = tmp_path / "results.jsonl"
    code, _ = run_cli(capsys, ["bench", "--suite", str(suite), "--out", str(out)])
    assert code == 0
    records = [json.loads(line) for line in out.read_text().splitlines()]
    covered = sum(
        abs(rec["estimate"] - truth) <= rec["error_radius"]
        for rec, truth in zip(records, truths)
    )
    assert covered / len(records) >= 1 - 0.2 - 0.05


def test_bench_empty_suite(capsys, tmp_path):
    suite = tmp_path / "suite.json"
    suite.write_text(json.dumps({"runs": []}), encoding="utf-8")
    out = tmp_path / "results.jsonl"
    code, record = run_cli(capsys, ["bench", "--suite", str(suite), "--out", str(out)])
    assert code == 0 and record["runs"] == 0
    assert out.read_text() == ""


def test_bench_malformed_manifest(capsys, tmp_path):
    suite = tmp_path / "suite.json"
    suite.write_text("[not a manifest", encoding="utf-8")
    code = main(["bench", "--suite", str(suite), "--out", str(tmp_path / "o.jsonl")])
    assert code == 2


def test_bench_relative_inputs(capsys, tmp_path):
    save_tree(ExplicitTree([(), (1,)]), tmp_path / "t.tree")
    suite = tmp_path / "suite.json"
    suite.write_text(
        json.dumps({"runs": [{"command": "exact", "problem": "tree",
                              "input": "t.tree", "threshold": 5}]}),
        encoding="utf-8",
    )
    out = tmp_path / "results.jsonl"
    code, record = run_cli(capsys, ["bench", "--suite", str(suite), "--out", str(out)])
    assert code == 0
    line = json.loads(out.read_text().splitlines()[0])
    assert line["value"] == 2
