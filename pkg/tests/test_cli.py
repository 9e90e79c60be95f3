import json
import os
import subprocess
import sys

import pytest

from conftest import dumbbell, k4, two_k4
from xdecomp.cli import run
from xdecomp.io import dumps_graph


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, g in (("k4", k4()), ("dumbbell", dumbbell()), ("two_k4", two_k4())):
        p = tmp_path / f"{name}.txt"
        p.write_text(dumps_graph(g))
        paths[name] = str(p)
    tree = tmp_path / "tree.txt"
    tree.write_text("5 4\n0 1 1\n0 2 1\n0 3 1\n0 4 1\n")
    paths["tree"] = str(tree)
    return paths


def test_decompose_k4(files, tmp_path, capsys):
    out = tmp_path / "o"
    assert run(["decompose", "--graph", files["k4"], "--eps", "0.5", "--out-dir", str(out)]) == 0
    assert (out / "partition.txt").read_text() == "0 0 1 2 3\n"
    assert "k 1\n" in capsys.readouterr().out
    cert = json.loads((out / "certificate.json").read_text())
    assert cert["deleted_edge_weight"] == 0 and cert["parts"][0]["source"] == "prune"


def test_emitted_decomposition_verifies(files, tmp_path, capsys):
    out = tmp_path / "o"
    args = ["--graph", files["two_k4"], "--demands", "unit"]
    assert run(["decompose", *args, "--eps", "1/2", "--psi", "1/2", "--out-dir", str(out), "--json"]) == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["k"] == 2 and summary["deleted_weight"] == 1
    part = str(out / "partition.txt")
    assert run(["verify", *args, "--partition", part, "--eps", "1/2", "--psi", "1/2"]) == 0
    # a stricter psi than the parts support is a contract failure, not an input error
    assert run(["verify", *args, "--partition", part, "--eps", "1/2", "--psi", "3"]) == 1


def test_verify_corrupted_partition(files, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("0 0 1 2\n1 2 3\n")
    assert run(["verify", "--graph", files["k4"], "--partition", str(bad), "--eps", "1", "--psi", "1"]) == 1
    bad.write_text("0 0 1\n0 2 3\n")
    assert run(["verify", "--graph", files["k4"], "--partition", str(bad), "--eps", "1", "--psi", "1"]) == 2


def test_input_errors(files, tmp_path, capsys):
    loop = tmp_path / "loop.txt"
    loop.write_text("2 1\n0 0 1\n")
    assert run(["decompose", "--graph", str(loop), "--eps", "0.5"]) == 2
    assert "line 2" in capsys.readouterr().err
    assert run(["decompose", "--graph", files["k4"], "--eps", "0"]) == 2
    assert run(["decompose", "--graph", files["k4"], "--eps", "2"]) == 2
    assert run(["decompose", "--graph", files["k4"], "--eps", "0.5", "--bogus"]) == 2
    assert run(["treecut", "--graph", files["k4"], "--psi", "1"]) == 2
    zero = tmp_path / "zero.txt"
    zero.write_text("")
    assert run(["balcutprune", "--graph", files["k4"], "--demands", str(zero), "--psi", "1"]) == 2


def test_balcutprune_and_balcut(files, capsys, tmp_path):
    assert run(["balcutprune", "--graph", files["dumbbell"], "--demands", "unit", "--psi", "1/2"]) == 0
    out = capsys.readouterr().out
    assert "case Cut\n" in out and "demand_A 3\n" in out
    trace = tmp_path / "trace.jsonl"
    args = ["balcut", "--graph", files["dumbbell"], "--demands", "unit", "--psi", "1/2", "--psi-star", "1/24"]
    assert run([*args, "--trace", str(trace)]) == 0
    assert "side 0 1 2\n" in capsys.readouterr().out
    rec = json.loads(trace.read_text().splitlines()[-1])
    assert rec["route"] == "oracle"


def test_treecut(files, capsys):
    assert run(["treecut", "--graph", files["tree"], "--demands", "unit", "--psi", "1/2"]) == 0
    out = capsys.readouterr().out
    assert "root 0\n" in out and "side 1 2\n" in out


def test_bench(tmp_path, capsys):
    assert run(["bench", "--family", "cycle", "--sizes", "20,40,80", "--r", "1", "--out-dir", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("m,n,seconds,outcome\n20,20,")
    assert (tmp_path / "bench_cycle.csv").exists() and (tmp_path / "bench_cycle.png").stat().st_size > 0


def test_byte_identical_reruns(files, tmp_path):
    outs = []
    for k in range(2):
        out = tmp_path / f"run{k}"
        run(["decompose", "--graph", files["two_k4"], "--eps", "1/2", "--psi", "1/2", "--out-dir", str(out)])
        outs.append({p.name: p.read_bytes() for p in sorted(out.iterdir())})
    assert outs[0] == outs[1] and set(outs[0]) == {"partition.txt", "certificate.json", "summary.txt"}


def test_console_script_and_env_cap(files):
    env = dict(os.environ, XDECOMP_ORACLE_CAP="3")
    cmd = [sys.executable, "-m", "xdecomp.cli", "verify", "--graph", files["k4"], "--partition", "/dev/stdin", "--eps", "1", "--psi", "1"]
    proc = subprocess.run(cmd, input="0 0 1 2 3\n", capture_output=True, text=True, env=env)
    assert proc.returncode == 0 and "unverified_parts 1\n" in proc.stdout
