import json
import subprocess
import sys
from pathlib import Path

import pytest

from splitalg.cli import main
from splitalg.poset import parse_poset, serialize_poset

CORPUS = Path(__file__).resolve().parent.parent / "corpus"
SHIPPED = sorted(CORPUS.glob("*.poset"))


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_corpus_is_shipped():
    assert {p.stem for p in SHIPPED} >= {"example5", "nonuniform4", "boolean3", "chain3"}


@pytest.mark.parametrize("path", SHIPPED, ids=lambda p: p.name)
def test_corpus_round_trip_and_validate(path, capsys):
    P = parse_poset(path.read_text())
    assert parse_poset(serialize_poset(P)) == P
    code, out, _ = run(capsys, "validate", path, "--json")
    assert code == 0 and json.loads(out)["valid"]


def test_ext_table_json(capsys):
    code, out, _ = run(capsys, "ext-table", CORPUS / "example5.poset", "--json")
    entries = {(e["p"], e["q"]): e["dim"] for e in json.loads(out)["entries"]}
    assert code == 0
    assert entries == {(0, 0): 1, (1, 1): 7, (2, 2): 3, (2, 3): 2, (3, 3): 1, (3, 4): 1}


def test_ext_table_prime_field(capsys):
    code, out, _ = run(capsys, "ext-table", CORPUS / "example5.poset", "--json", "--field", "fp:2")
    assert code == 0 and json.loads(out)["field"] == "fp:2"


def test_classify_text_and_assert(capsys):
    code, out, _ = run(capsys, "classify", CORPUS / "nonuniform4.poset")
    assert code == 0
    assert "uniform=false" in out and "quadratic=false" in out and "witness" in out
    code, _, _ = run(capsys, "classify", CORPUS / "nonuniform4.poset", "--assert")
    assert code == 3
    code, _, _ = run(capsys, "classify", CORPUS / "boolean3.poset", "--assert")
    assert code == 0


def test_verify_example5(capsys):
    code, out, _ = run(capsys, "verify-example5")
    assert code == 0 and "FAIL" not in out
    assert "(2,3)=1" in out and "(3,3)=0" in out and "(3,4)=1" in out


def test_betti_and_hilbert(capsys):
    code, out, _ = run(capsys, "betti", CORPUS / "example5.poset", "--b", "B", "--q", "3", "--json")
    assert code == 0 and json.loads(out)["betti"] == [0, 0, 1]
    code, out, _ = run(capsys, "hilbert", CORPUS / "example5.poset", "--max-degree", "3")
    assert out.split() == ["1", "7", "46", "300"]


def test_checks_commands(capsys):
    assert run(capsys, "resolution-check", CORPUS / "example5.poset", "--max-degree", "3")[0] == 0
    assert run(capsys, "oracle-check", CORPUS / "nonuniform4.poset", "--pmax", "3", "--qmax", "4")[0] == 0
    code, out, _ = run(capsys, "relations", CORPUS / "example5.poset", "--json")
    counts = {c["q"]: c["count"] for c in json.loads(out)["minimal_generator_counts"]}
    assert code == 0 and counts == {2: 3, 3: 1}


def test_gen(tmp_path, capsys):
    target = tmp_path / "r.poset"
    code, _, _ = run(capsys, "gen", "--family", "random", "--seed", "7", "--max-rank", "3", "-o", target)
    assert code == 0
    again = tmp_path / "r2.poset"
    run(capsys, "gen", "--family", "random", "--seed", "7", "--max-rank", "3", "-o", again)
    assert target.read_text() == again.read_text()
    assert run(capsys, "validate", target)[0] == 0


def test_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.poset"
    bad.write_text("cover b y\ncover b z\ncover y *\ncover z x\ncover x *\n")
    code, out, _ = run(capsys, "validate", bad, "--json")
    assert code == 2 and json.loads(out)["error"] == "RankConflict"
    assert run(capsys, "validate", tmp_path / "missing.poset")[0] == 2
    assert run(capsys, "gen", "--family", "torus")[0] == 2
    assert run(capsys, "betti", CORPUS / "example5.poset", "--b", "B", "--q", "9")[0] == 2


def test_bad_field_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["ext-table", str(CORPUS / "example5.poset"), "--field", "fp:4"])
    assert exc.value.code == 2


def test_console_module_entry():
    out = subprocess.run(
        [sys.executable, "-m", "splitalg", "hilbert", str(CORPUS / "chain3.poset"), "--max-degree", "2"],
        capture_output=True, text=True, check=True,
    )
    assert out.stdout.split() == ["1", "3", "9"]
