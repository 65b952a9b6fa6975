import csv
import json

import jsonschema
import pytest

from vers import schemas
from vers.cli import main

from conftest import CONFIGS


def write_cfg(tmp_path, **cfg):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    return str(path)


def run(args, tmp_path, name="out"):
    out = tmp_path / name
    code = main(args + ["--out", str(out), "--jobs", "1"])
    return code, out


def load(path):
    return json.loads(path.read_text())


def test_simulate_beta_zero_recovers(tmp_path):
    cfg = write_cfg(tmp_path, p=97, K=3, N=6, seed=2, behavior_class="honest")
    code, out = run(["simulate", "--config", cfg], tmp_path)
    assert code == 0
    dec = load(out / "decode.json")
    jsonschema.validate(dec, schemas.DECODE)
    jsonschema.validate(load(out / "transcript.json"), schemas.TRANSCRIPT)
    assert all(o["status"] == "recovered" and o["correct"] for o in dec["outcomes"].values())


def test_simulate_converse_insufficient(tmp_path):
    code, out = run(["simulate", "--config", str(CONFIGS / "converse_d2_k3.json")], tmp_path)
    assert code == 0
    dec = load(out / "decode.json")
    assert dec["t"] == 8 and dec["t_star"] == 9
    assert {o["status"] for o in dec["outcomes"].values()} == {"insufficient"}
    assert dec["ambiguity"]["certified_non_unique"]


def test_simulate_fingerprint_and_key(tmp_path):
    cfg = write_cfg(tmp_path, p=10007, K=3, N=10, adversaries=[1], v=2, behavior_class="random",
                    tag_mode="fingerprint", include_tag_key=True)
    code, out = run(["simulate", "--config", cfg], tmp_path)
    assert code == 0
    tr = load(out / "transcript.json")
    assert tr["tag_mode"] == "fingerprint" and "tag_key" in tr
    assert all(isinstance(r["tag"], int) for r in tr["reports"])


def test_simulate_behavior_file(tmp_path):
    (tmp_path / "beh.json").write_text(json.dumps({"behavior": [[1, 0, 0]] * 5 + [[2, 0, 0]] * 5}))
    cfg = write_cfg(tmp_path, p=97, K=3, N=10, adversaries=[1], v=2, behavior_class="file", behavior_file="beh.json")
    code, out = run(["simulate", "--config", cfg], tmp_path)
    assert code == 0
    assert load(out / "decode.json")["partition"] == [[1, 2, 3, 4, 5], [6, 7, 8, 9, 10]]


def test_threshold_outputs(tmp_path, capsys):
    cfg = write_cfg(tmp_path, p=97, K=2, N=5, adversaries=[1], v=2, f=[0, 1], trials=2, seed=4)
    code, out = run(["threshold", "--config", cfg], tmp_path)
    assert code == 0
    assert "first zero-failure t: 3 (t* = 3)" in capsys.readouterr().out
    summary = load(out / "threshold.json")
    jsonschema.validate(summary, schemas.THRESHOLD_SUMMARY)
    rows = list(csv.DictReader((out / "threshold.csv").open()))
    assert list(rows[0]) == schemas.THRESHOLD_CSV_COLUMNS
    assert [int(r["t"]) for r in rows] == [2, 3, 4, 5]
    assert all(r["seed"] == "4" and r["config_hash"] == summary["meta"]["config_hash"] for r in rows)


def test_matrix_outputs(tmp_path):
    code, out = run(["matrix", "--config", str(CONFIGS / "example1.json")], tmp_path)
    assert code == 0
    m = load(out / "characteristic_matrix.json")
    jsonschema.validate(m, schemas.MATRIX)
    assert (m["rows"], m["cols"]) == (20, 13)
    jsonschema.validate(load(out / "relation_matrix.json"), schemas.MATRIX)
    mon = load(out / "monomials.json")
    jsonschema.validate(mon, schemas.MONOMIALS)
    assert len(mon["monomials"]) == 13
    perms = load(out / "permutations.json")
    jsonschema.validate(perms, schemas.PERMUTATIONS)
    assert (perms["total"], perms["non_effective"], perms["expected_non_effective"]) == (24, 4, 4)
    assert perms["non_effective_equals_product_form"]


def test_matrix_beta_zero_identity_only(tmp_path):
    cfg = write_cfg(tmp_path, p=97, K=3, N=3)
    code, out = run(["matrix", "--config", cfg], tmp_path)
    perms = load(out / "permutations.json")
    assert code == 0 and perms["total"] == 1 and perms["non_effective"] == 1


def test_matrix_over_cap_warns(tmp_path, capsys):
    cfg = write_cfg(tmp_path, p=97, K=3, N=3, adversaries=[1, 2], v=3, f=[0, 1])
    code, out = run(["matrix", "--config", cfg], tmp_path)
    assert code == 0
    assert "warning" in capsys.readouterr().err
    assert (out / "characteristic_matrix.json").exists()
    assert not (out / "permutations.json").exists()


def test_tag_collision_oracle(tmp_path):
    cfg = write_cfg(tmp_path, p=10007, K=3, N=3, adversaries=[1], v=2, collision_trials=10000)
    code, out = run(["tag-collision", "--config", cfg, "--tag-mode", "oracle"], tmp_path)
    res = load(out / "tag_collision.json")
    jsonschema.validate(res, schemas.COLLISION)
    assert code == 0 and res["rate"] == 0 and res["mode"] == "oracle"


def test_overrides_change_meta(tmp_path):
    cfg = write_cfg(tmp_path, p=97, K=2, N=2, collision_trials=1000)
    run(["tag-collision", "--config", cfg], tmp_path, "a")
    run(["tag-collision", "--config", cfg, "--seed", "5", "--field", "101"], tmp_path, "b")
    a = load(tmp_path / "a" / "tag_collision.json")
    b = load(tmp_path / "b" / "tag_collision.json")
    assert b["meta"]["seed"] == 5 and b["p"] == 101
    assert a["meta"]["config_hash"] != b["meta"]["config_hash"]


@pytest.mark.parametrize("cfg", [
    {"p": 97, "K": 3},
    {"p": 97, "K": 3, "N": 3, "bogus": 1},
    {"p": 97, "K": 4, "N": 3},
    {"p": 91, "K": 2, "N": 3},
    {"p": 97, "K": 3, "N": 3, "adversaries": [1], "v": 2, "subset": [1, 9]},
    {"p": 97, "K": 3, "N": 3, "behavior_class": "file", "behavior_file": "missing.json"},
])
def test_config_errors_exit_1(tmp_path, capsys, cfg):
    code, _ = run(["simulate", "--config", write_cfg(tmp_path, **cfg)], tmp_path)
    assert code == 1
    assert "config error" in capsys.readouterr().err


def test_missing_config_file(tmp_path):
    assert run(["matrix", "--config", str(tmp_path / "nope.json")], tmp_path)[0] == 1


def test_internal_violation_exit_2(tmp_path, monkeypatch):
    from vers import cli
    from vers.errors import InternalInconsistency

    def boom(*a, **k):
        raise InternalInconsistency("forced")

    monkeypatch.setitem(cli.COMMANDS, "matrix", boom)
    cfg = write_cfg(tmp_path, p=97, K=2, N=2)
    assert run(["matrix", "--config", cfg], tmp_path)[0] == 2


def test_sample_configs_validate():
    for path in CONFIGS.glob("*.json"):
        jsonschema.validate(json.loads(path.read_text()), schemas.EXPERIMENT_CONFIG)


def test_threshold_two_adversaries(tmp_path, capsys):
    # (v^beta)^N = 4^12 exceeds the exhaustive limit: converse plus random behaviors
    cfg = write_cfg(tmp_path, p=97, K=3, N=12, adversaries=[1, 2], v=2, f=[0, 1], seed=3,
                    behavior_class="exhaustive", behavior_samples=40, t_values=[8, 9, 10],
                    subset_policy="sample:60")
    code, out = run(["threshold", "--config", cfg], tmp_path)
    assert code == 0
    summary = load(out / "threshold.json")
    assert summary["t_hat"] == summary["t_star"] == 9
    assert summary["behaviors"] == 41
