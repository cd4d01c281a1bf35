import json
import random
from pathlib import Path

import pytest

from skewstrip.cli import run
from skewstrip.enumeration import random_path

GOLDEN = Path(__file__).parent / "golden"


def invoke(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def invoke_json(capsys, *argv):
    code, out, _ = invoke(capsys, *argv)
    return code, json.loads(out)


@pytest.mark.parametrize(
    "name, argv",
    [
        ("map_word", ["map", "--word", "11221113223"]),
        ("derive_21", ["derive", "--mu", "2,1,0"]),
        ("count_motzkin_10", ["count", "--kind", "motzkin", "--n", "10"]),
    ],
)
def test_golden_payloads(capsys, name, argv):
    code, result = invoke_json(capsys, *argv)
    assert code == 0
    assert result["status"] == "ok"
    assert result["command"] == argv[0]
    assert set(result) == {"command", "params", "payload", "status", "timing"}
    golden = json.loads((GOLDEN / f"{name}.json").read_text())
    assert result["payload"] == golden


def test_map_example_payload(capsys):
    _, result = invoke_json(capsys, "map", "--word", "11221113223")
    p = result["payload"]
    assert p["path"] == "UUDLLUUDDLD"
    assert p["tableau"] == [[1, 2, 5, 6, 7], [3, 4, 9, 10], [8, 11]]


def test_derive_payload(capsys):
    _, result = invoke_json(capsys, "derive", "--mu", "2,1,0")
    assert result["payload"]["formula"] == "m(n-1) - m(n-3), n >= 3"
    assert result["payload"]["combo"]["shifts"] == [{"s": -1, "a": 1}, {"s": -3, "a": -1}]


def test_count_is_decimal_string(capsys):
    _, result = invoke_json(capsys, "count", "--kind", "motzkin", "--n", "10")
    assert result["payload"]["value"] == "2188"
    _, result = invoke_json(capsys, "count", "--kind", "strip", "--k", "5", "--n", "60")
    assert isinstance(result["payload"]["value"], str) and int(result["payload"]["value"]) > 2**64


@pytest.mark.parametrize(
    "argv, value",
    [
        (["count", "--kind", "skew", "--mu", "2,1,0", "--n", "5"], "7"),
        (["count", "--kind", "x", "--i", "3", "--j", "1", "--n", "7"], "12"),
        (["count", "--kind", "entry", "--cell", "2,1", "--value", "2", "--n", "3"], "2"),
        (["count", "--kind", "grounded", "--n", "4"], "6"),
        (["count", "--kind", "strip", "--k", "4", "--n", "3"], "4"),
    ],
)
def test_count_kinds(capsys, argv, value):
    code, out, _ = invoke(capsys, *argv, "--format", "text")
    assert code == 0
    assert out.strip() == value


def test_cli_roundtrip_random_corpus(capsys):
    rng = random.Random(2024)
    for n in range(0, 15):
        for _ in range(100):
            path = random_path(n, rng).steps
            _, fwd = invoke_json(capsys, "map", "--path", path)
            _, back = invoke_json(capsys, "map", "--word", fwd["payload"]["word"])
            assert back["payload"]["path"] == path


def test_map_random_is_seeded(capsys):
    _, a = invoke_json(capsys, "map", "--random", "20", "--seed", "5")
    _, b = invoke_json(capsys, "map", "--random", "20", "--seed", "5")
    assert a["payload"] == b["payload"]
    assert len(a["payload"]["path"]) == 20


def test_seq_defaults_to_lines(capsys):
    code, out, _ = invoke(capsys, "seq", "--name", "motzkin", "--upto", "6")
    assert code == 0
    assert out.split() == ["1", "1", "2", "4", "9", "21", "51"]
    _, out, _ = invoke(capsys, "seq", "--name", "central-binomial", "--upto", "4")
    assert out.split() == ["1", "1", "2", "3", "6"]
    _, result = invoke_json(capsys, "seq", "--name", "catalan", "--upto", "4", "--format", "json")
    assert result["payload"]["values"] == ["1", "1", "2", "5", "14"]


def test_algebra(capsys):
    _, result = invoke_json(capsys, "algebra", "reduce", "--expr", "x^2*M^3", "--offset", "4")
    assert result["payload"]["combo"]["shifts"] == [{"s": -2, "a": 1}, {"s": -3, "a": -2}]
    _, out, _ = invoke(capsys, "algebra", "series", "--expr", "M", "--order", "5", "--format", "text")
    assert out.split() == ["1", "1", "2", "4", "9", "21"]


def test_derive_entry(capsys):
    _, result = invoke_json(capsys, "derive-entry", "--cell", "1,2", "--value", "3")
    p = result["payload"]
    assert p["shapes"] == [{"mu": "2,1", "weight": 1}]
    assert p["formula"] == "m(n-1) - m(n-3), n >= 3"


def test_catalog_markdown(capsys, tmp_path):
    target = tmp_path / "cat.md"
    code, out, _ = invoke(capsys, "catalog", "--mu-max", "2", "--format", "markdown", "--output", str(target))
    assert code == 0
    assert "| (2,1) | m(n-1) - m(n-3) | 3 | ok |" in out
    assert target.read_text() == out


def test_conjecture(capsys):
    code, result = invoke_json(capsys, "conjecture", "--ell-max", "2", "--n-max", "8")
    assert code == 0
    assert result["payload"]["summary"]["by_status"] == {"ok": 18}
    assert all(isinstance(c["odd_lhs"], str) for c in result["payload"]["cells"])


def test_conjecture_memory_cap_exit(capsys):
    code, result = invoke_json(capsys, "conjecture", "--ell-max", "3", "--n-max", "12", "--memory-cap", "2000")
    assert code == 3
    assert result["status"] == "partial"


@pytest.mark.parametrize(
    "argv, code",
    [
        (["map", "--path", "UDD"], 1),
        (["map", "--word", "1132"], 1),
        (["count", "--kind", "skew", "--n", "3"], 1),
        (["count", "--kind", "motzkin", "--n", "-1"], 1),
        (["derive", "--mu", "1,1,1,1"], 1),
        (["algebra", "reduce", "--expr", "y"], 1),
        (["frobnicate"], 1),
        (["count", "--kind", "motzkin"], 1),
        (["algebra", "series", "--expr", "M", "--order", "5000"], 3),
    ],
)
def test_exit_codes(capsys, argv, code):
    got, out, err = invoke(capsys, *argv)
    assert got == code
    assert err
    if out.strip():
        assert json.loads(out)["status"] == "error"


def test_invalid_path_reports_position(capsys):
    _, result = invoke_json(capsys, "map", "--path", "UDD")
    assert "3" in result["payload"]["message"]


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "skewstrip", "count", "--kind", "motzkin", "--n", "5", "--format", "text"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "21"
