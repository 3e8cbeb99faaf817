import json

import pytest

from hecke_atlas.cli import normed_corpus, run, run_suite, standard_inventory


def out_json(capsys):
    return json.loads(capsys.readouterr().out)


def test_rank_must_be_positive(tmp_path, capsys):
    inv = tmp_path / "inv.json"
    standard_inventory().dump(inv)
    assert run(["enumerate", "--group", "sp", "--rank", "0", "--classes", str(inv)]) == 2
    assert run(["specialize", "--kind", "sp", "--rank", "-1"]) == 2


def test_bad_inputs_exit_2(tmp_path):
    assert run(["supports", "--param", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["supports", "--param", str(bad)]) == 2
    # argparse rejects unknown suites/flags with its own exit code
    assert run(["verify", "--suite", "nope"]) == 2
    assert run(["verify", "--suite", "lemA3", "--frobnicate"]) == 2


def test_enumerate_and_inspect_round_trip(tmp_path, capsys):
    inv_path = tmp_path / "inv.json"
    standard_inventory().dump(inv_path)
    out_path = tmp_path / "params.json"
    code = run(
        [
            "enumerate",
            "--group",
            "sp",
            "--rank",
            "2",
            "--classes",
            str(inv_path),
            "--out",
            str(out_path),
        ]
    )
    assert code == 0
    data = json.loads(out_path.read_text())
    assert data["ambient"] == {"family": "orthogonal", "dim": 5}
    assert data["parameters"]

    param_path = tmp_path / "p.json"
    param_path.write_text(
        json.dumps(
            {
                "inventory": json.loads(inv_path.read_text()),
                "parameter": data["parameters"][0],
            }
        )
    )
    assert run(["supports", "--param", str(param_path)]) == 0
    sup = out_json(capsys)
    assert sup and all({"S", "phiS", "LS", "lS", "dS", "levi", "epsilon"} <= set(p) for p in sup)
    assert run(["hecke", "--param", str(param_path)]) == 0
    hk = out_json(capsys)
    assert hk and all("factors" in row for row in hk)


def test_enumerate_cuspidal_is_subset(tmp_path, capsys):
    inv_path = tmp_path / "inv.json"
    standard_inventory().dump(inv_path)
    args = ["enumerate", "--group", "o-even", "--rank", "2", "--classes", str(inv_path)]
    assert run(args) == 0
    all_params = out_json(capsys)["parameters"]
    assert run(args + ["--cuspidal"]) == 0
    cuspidal = out_json(capsys)["parameters"]
    digests = [json.dumps(p) for p in all_params]
    assert all(json.dumps(p) in digests for p in cuspidal)
    assert len(cuspidal) < len(all_params)


def test_specialize_so_odd_rank2(capsys):
    assert run(["specialize", "--kind", "so-odd", "--rank", "2"]) == 0
    rows = out_json(capsys)
    assert len(rows) == 4
    assert {tuple(r["pair"]) for r in rows} == {(0, 0), (2, 0), (0, 2), (2, 2)}
    for r in rows:
        assert isinstance(r["factor"]["endLong"], str)  # exact fraction strings


def test_verify_lemA3(capsys, tmp_path):
    report_path = tmp_path / "r.json"
    code = run(["verify", "--suite", "lemA3", "--max-rank", "4", "--report", str(report_path)])
    assert code == 0
    report = out_json(capsys)
    assert report["suite"] == "lemA3"
    assert report["failed"] == 0 and report["flagged"] == 0
    assert json.loads(report_path.read_text()) == report


def test_verify_flagged_needs_opt_in(capsys):
    assert run(["verify", "--suite", "thm32", "--max-rank", "2"]) == 1
    capsys.readouterr()
    assert run(["verify", "--suite", "thm32", "--max-rank", "2", "--allow-flagged"]) == 0
    report = out_json(capsys)
    assert report["failed"] == 0 and report["flagged"] > 0
    for case in report["cases"]:
        if case["status"] == "flagged":
            assert case["input"].startswith("sp:")


def test_verify_suites_small_ranks(capsys):
    for suite, rank in (("thm11", 5), ("thm31", 3), ("thm33", 6), ("thm18", 4)):
        report = run_suite(suite, rank)
        assert report["failed"] == 0, report["cases"]


def test_thread_count_does_not_change_bytes(capsys, monkeypatch):
    def render():
        assert run(["verify", "--suite", "thm31", "--max-rank", "3"]) == 0
        return capsys.readouterr().out

    monkeypatch.setenv("HECKE_ATLAS_THREADS", "1")
    single = render()
    monkeypatch.setenv("HECKE_ATLAS_THREADS", "7")
    assert render() == single


def test_normed_corpus_is_normed():
    corpus = normed_corpus(standard_inventory(), 4)
    assert len(corpus) > 20
    for phi in corpus:
        assert all(s.point.f.is_one and s.sl2_dim == 1 for s in phi.summands)
        assert phi.total_dim == phi.ambient.ambient_dim
