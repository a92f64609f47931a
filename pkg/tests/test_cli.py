"""Golden-file tests for the command line.

Each file under tests/golden holds ``$ <arguments>``, the expected stdout and
an ``exit <code>`` line. Set UPDATE_GOLDEN=1 to rewrite them from current output.
"""

import json
import os
import shlex
from pathlib import Path

import pytest

from deltamatroid.cli import run

GOLDEN = Path(__file__).parent / "golden"

CASES = {
    "validate_good": "validate data/good.dm",
    "validate_bad": "validate data/bad.dm",
    "validate_text": "validate data/bad.dm --format text",
    "interlace_k2": "interlace data/k2.dm",
    "interlace_recursive": "interlace data/good.dm --recursive --format text",
    "interlace_oracle": "interlace data/good.dm --oracle",
    "op_twist": "op twist data/k2.dm 1",
    "op_delete": "op delete data/good.dm 1",
    "op_contract": "op contract data/good.dm 1",
    "op_restrict": "op restrict data/good.dm 1,2",
    "move_slide": "move slide data/d3.dm 1 2",
    "move_exchange": "move exchange data/k2.dm 1 2 --format json",
    "four_term_pair": "four-term data/good.dm 1 2",
    "four_term_exhaustive": "four-term --exhaustive -n 3",
    "four_term_random": "four-term --random 50 -n 5 --seed 7",
    "binary_good": "binary data/good.dm",
    "binary_non": "binary data/nonbinary.dm",
    "binary_oracle": "binary data/good.dm --oracle",
    "project_d3": "project data/d3.dm",
    "families_tower": "families tower 2 1",
    "families_complete": "families complete 3 --format json",
    "enumerate_2": "enumerate -n 2",
    "convert_graph": "convert graph data/path3.graph",
    "convert_gf2": "convert gf2 data/tower.gf2",
    "canonical": "canonical data/k2.dm",
    "reproduce_theorem5": "reproduce theorem5 -n 3",
    "reproduce_lemma2": "reproduce lemma2 -n 4",
    "error_missing": "validate data/missing.dm",
    "error_broken": "interlace data/broken.dm",
    "error_usage": "op twist data/k2.dm 5",
}


def invoke(argv, capsys, monkeypatch):
    monkeypatch.chdir(GOLDEN)
    code = run(argv)
    out = capsys.readouterr().out
    return code, out


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, capsys, monkeypatch):
    cmd = CASES[name]
    code, out = invoke(shlex.split(cmd), capsys, monkeypatch)
    got = f"$ {cmd}\n{out}exit {code}\n"
    path = GOLDEN / f"{name}.txt"
    if os.environ.get("UPDATE_GOLDEN"):
        path.write_text(got)
    assert path.exists(), f"missing golden file {path.name}; run with UPDATE_GOLDEN=1"
    assert got == path.read_text()


def test_exit_codes(capsys, monkeypatch):
    assert invoke(["validate", "data/good.dm"], capsys, monkeypatch)[0] == 0
    assert invoke(["validate", "data/bad.dm"], capsys, monkeypatch)[0] == 1
    assert invoke(["validate", "data/missing.dm"], capsys, monkeypatch)[0] == 2
    assert invoke(["binary", "data/nonbinary.dm"], capsys, monkeypatch)[0] == 1


def test_error_message_names_line(capsys, monkeypatch):
    monkeypatch.chdir(GOLDEN)
    assert run(["validate", "data/broken.dm"]) == 2
    assert "line 4" in capsys.readouterr().err


def test_argparse_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        run(["no-such-command"])
    assert info.value.code == 2


@pytest.mark.parametrize("path", ["data/good.dm", "data/d3.dm", "data/k2.dm", "data/nonbinary.dm"])
def test_oracle_and_default_paths_agree(path, capsys, monkeypatch):
    for cmd in ("interlace", "binary"):
        c1, o1 = invoke([cmd, path], capsys, monkeypatch)
        c2, o2 = invoke([cmd, path, "--oracle"], capsys, monkeypatch)
        assert c1 == c2
        if cmd == "interlace":
            assert o1 == o2
        else:
            assert json.loads(o1)["status"] == json.loads(o2)["status"]
