import json
import os
import subprocess
import sys

import pytest

from rigidcount import catalog
from rigidcount.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count_named_and_file(capsys, tmp_path):
    code, out, _ = run(capsys, "count", "@U")
    assert code == 0 and json.loads(out)["count"] == 112
    path = tmp_path / "tri.txt"
    path.write_text(catalog.get("triangle").to_text())
    code, out, _ = run(capsys, "count", str(path))
    assert json.loads(out)["count"] == 2


def test_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("0 x\n")
    assert run(capsys, "count", str(bad))[0] == 2
    assert run(capsys, "count", str(tmp_path / "missing"))[0] == 2
    code, _, err = run(capsys, "count", "@L")
    assert code == 3 and "edge count" in err
    assert run(capsys, "class", "@triangle")[0] == 3
    assert run(capsys, "count", "@V", "--max-oracle-vertices", "4")[0] == 4


def test_class_and_trace(capsys, tmp_path):
    trace = tmp_path / "t.json"
    code, out, _ = run(capsys, "class", "@H", "--trace", str(trace))
    assert json.loads(out)["class"] == [6, 2, 2]
    tree = json.loads(trace.read_text())
    assert tree["value"] == [6, 2, 2] and tree["children"]


def test_invariants(capsys):
    code, out, _ = run(capsys, "invariants", "@H", "--n", "2", "--degrees", "6,6", "--n-sing", "3", "--with", "@C3")
    rep = json.loads(out)
    assert rep["degree"] == 12 and rep["thin"]
    assert rep["survivors"] == [[[3, 1, 1], [3, 1, 1]]]
    assert rep["intersections"][0]["count"] == 24


def test_oracle_and_centric(capsys):
    assert json.loads(run(capsys, "oracle", "@C3L")[1])["count"] == 4
    code, out, _ = run(capsys, "centric", "@C3")
    rep = json.loads(out)
    assert code == 0 and rep["verdict"] == "centric"
    assert run(capsys, "centric", "@C3", "--budget", "1")[0] == 5


def test_walks(capsys):
    code, out, _ = run(capsys, "walks", "@W", "--initial", "03,06,32,34,36,41,45,46,56")
    rep = json.loads(out)
    assert code == 0 and rep["ok"]
    assert rep["chain"][-1]["walks"] == ["032", "0341", "034560", "0345630", "03456430"]
    code, out, _ = run(capsys, "walks", "@C3", "--signs", "2-3:-")
    assert json.loads(out)["ideal"] == "<b0>"


def test_text_and_json_agree(capsys):
    _, js, _ = run(capsys, "count", "@V")
    _, txt, _ = run(capsys, "count", "@V", "--format", "text")
    assert f"count: {json.loads(js)['count']}" in txt


def _cli(*argv, env=None):
    full = {k: v for k, v in os.environ.items() if k != "RIGIDCOUNT_CACHE"}
    full.update(env or {})
    return subprocess.run([sys.executable, "-m", "rigidcount.cli", *argv], capture_output=True, text=True, env=full)


def test_byte_identical_reports():
    a = _cli("class", "@H", "--seed", "3")
    b = _cli("class", "@H", "--seed", "3")
    assert a.returncode == 0 and a.stdout == b.stdout


def test_environment_cache_overrides_flag(tmp_path):
    cache = tmp_path / "env.json"
    ignored = tmp_path / "flag.json"
    env = {"RIGIDCOUNT_CACHE": str(cache)}
    cold = _cli("class", "@H", "--cache", str(ignored), env=env)
    warm = _cli("class", "@H", "--cache", str(ignored), env=env)
    assert cache.exists() and not ignored.exists()
    assert json.loads(cold.stdout)["class"] == json.loads(warm.stdout)["class"] == [6, 2, 2]
    assert json.loads(warm.stdout)["oracle_calls"] == 0
