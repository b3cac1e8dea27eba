import json

import pytest

from arbormatch import cli, harness
from arbormatch.graph import exact_arboricity, generate_forest_union, load


def invoke(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    report = json.loads(out) if out.strip() else None
    return code, report, err


@pytest.fixture
def edge_file(tmp_path):
    def make(text, name="g.el"):
        p = tmp_path / name
        p.write_text(text)
        return p

    return make


def test_exact_single_edge(capsys, edge_file):
    code, report, _ = invoke(capsys, "exact", edge_file("0 1\n"), "--alpha", 0)
    assert code == 0
    assert set(report) == {"command", "parameters", "results", "timing_ms"}
    r = report["results"]
    assert (r["e_alpha"], r["e_star"], r["matching"]) == (1, 1, 1)


def test_exact_late_bridge(capsys, edge_file):
    _, report, _ = invoke(capsys, "exact", edge_file("0 1\n2 3\n1 2\n"), "--alpha", 0)
    r = report["results"]
    assert (r["e_alpha"], r["e_star"], r["argmax_t"]) == (1, 2, 2)


def test_exact_large_input_nulls_oracles(capsys, edge_file):
    text = "".join(f"{i} {i + 1}\n" for i in range(40))
    code, report, _ = invoke(capsys, "exact", edge_file(text), "--alpha", 1)
    assert code == 0
    assert report["results"]["matching"] is None
    assert report["results"]["arboricity"] is None


def test_self_loop_is_parse_error(capsys, edge_file):
    code, report, err = invoke(capsys, "exact", edge_file("5 5\n"), "--alpha", 0)
    assert code == 2 and report is None
    assert "line 1" in err


def test_estimate_single_edge(capsys, edge_file):
    f = edge_file("0 1\n")
    code, report, _ = invoke(capsys, "estimate", f, "--alpha", 3, "--epsilon", 0.5, "--seed", 17)
    assert code == 0
    r = report["results"]
    assert r["estimate"] == 1
    assert r["match_lower"]["exact"] == "2/15"
    assert r["match_upper"]["exact"] == "2"
    assert report["parameters"]["n_inferred"] is True


def test_estimate_respects_capacity(capsys, tmp_path):
    out = tmp_path / "big.el"
    invoke(capsys, "generate", "--n", 1700, "--alpha", 3, "--seed", 2, "--out", out)
    stream, inferred = load(out)
    assert not inferred and len(stream) > 5000 - 100
    _, report, _ = invoke(capsys, "estimate", out, "--alpha", 3, "--epsilon", 0.2, "--capacity", 100)
    r = report["results"]
    assert r["peak_tracked_edges"] <= 100
    assert r["final_level"] >= 1
    assert report["parameters"]["capacity"] == 100


def test_invalid_epsilon(capsys, edge_file):
    code, _, err = invoke(capsys, "estimate", edge_file("0 1\n"), "--alpha", 1, "--epsilon", 1.5)
    assert code == 2 and "epsilon" in err


def test_env_seed_fallback(capsys, edge_file, monkeypatch):
    monkeypatch.setenv("ARBORMATCH_SEED", "99")
    _, report, _ = invoke(capsys, "estimate", edge_file("0 1\n"), "--alpha", 1, "--epsilon", 0.5)
    assert report["parameters"]["seed"] == 99


def test_generate(capsys, tmp_path):
    a, b = tmp_path / "a.el", tmp_path / "b.el"
    for p in (a, b):
        code, report, _ = invoke(capsys, "generate", "--n", 10, "--alpha", 3, "--seed", 4, "--out", p)
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().startswith("# n=10\n")
    assert report["results"]["edges"] == len(load(a)[0])

    tiny = tmp_path / "tiny.el"
    invoke(capsys, "generate", "--n", 2, "--alpha", 1, "--out", tiny)
    assert len(load(tiny)[0]) <= 1

    g12 = tmp_path / "g12.el"
    invoke(capsys, "generate", "--n", 12, "--alpha", 2, "--seed", 8, "--out", g12)
    assert exact_arboricity(load(g12)[0].graph()) <= 2


def test_verify_vacuous(capsys):
    code, report, _ = invoke(capsys, "verify", "--trials", 0)
    assert code == 0 and report["results"]["passed"] == 0


def test_verify_small(capsys):
    code, report, _ = invoke(capsys, "verify", "--trials", 20, "--seed", 3)
    assert code == 0
    assert report["results"]["passed"] == 20


def test_verify_catches_corrupted_oracle():
    broken = harness.Oracles(e_alpha=lambda s, a: 0)
    results = harness.verify(10, (4, 10), [1, 2], 0, orc=broken)
    assert results["failed"] > 0
    ce = results["first_counterexample"]
    assert ce["stream"] and any("sandwich" in v for v in ce["violations"])


def test_sweep_exact_regime(capsys, edge_file):
    f = edge_file("0 1\n2 3\n1 2\n3 4\n")
    code, report, _ = invoke(capsys, "sweep", f, "--alpha", 1, "--epsilon", 0.3, "--seeds", 1)
    assert code == 0
    assert report["results"]["runs"][0]["relative_error"] == 0.0


def test_sweep_needs_seeds(capsys, edge_file):
    code, _, _ = invoke(capsys, "sweep", edge_file("0 1\n"), "--alpha", 1, "--epsilon", 0.3, "--seeds", 0)
    assert code == 2


def test_sweep_matches_individual_estimates(capsys, tmp_path):
    f = tmp_path / "g.el"
    invoke(capsys, "generate", "--n", 300, "--alpha", 2, "--seed", 1, "--out", f)
    common = ["--alpha", 2, "--epsilon", 0.3, "--capacity", 20]
    _, sweep, _ = invoke(capsys, "sweep", f, *common, "--seeds", 4, "--seed", 10, "--threshold", 0)
    _, par, _ = invoke(capsys, "sweep", f, *common, "--seeds", 4, "--seed", 10, "--threshold", 0, "--jobs", 2)
    assert par["results"] == sweep["results"]
    for run in sweep["results"]["runs"]:
        _, single, _ = invoke(capsys, "estimate", f, *common, "--seed", run["seed"])
        assert single["results"]["estimate"] == run["estimate"]


def test_sweep_below_threshold_exits_nonzero(capsys, tmp_path):
    f = tmp_path / "g.el"
    invoke(capsys, "generate", "--n", 300, "--alpha", 2, "--seed", 1, "--out", f)
    code, report, _ = invoke(
        capsys, "sweep", f, "--alpha", 2, "--epsilon", 0.01, "--capacity", 2, "--seeds", 5,
        "--threshold", 1.0,
    )
    assert not report["results"]["passed"]
    assert code == 1


def test_forest_union_helper_used_by_cli_matches_library(tmp_path, capsys):
    f = tmp_path / "g.el"
    invoke(capsys, "generate", "--n", 30, "--alpha", 2, "--seed", 6, "--out", f)
    assert load(f)[0] == generate_forest_union(30, 2, 6)
