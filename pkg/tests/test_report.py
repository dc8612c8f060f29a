import json
import subprocess
import sys
from pathlib import Path

from splitalg.families import example5, nonuniform4
from splitalg.poset import parse_poset
from splitalg.report import build_report, dumps, poset_hash, report_ok

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def test_report_contents():
    r = build_report(example5(), max_degree=3)
    assert r["schema_version"] == 1 and r["poset"]["name"] == "example5"
    assert {v["property"] for v in r["verdicts"]} == {
        "uniform", "cohen_macaulay", "condition_star", "quadratic", "koszul",
    }
    assert set(r["checks"]) >= {
        "d_squared", "homotopy", "augmentation_image", "exactness",
        "euler", "oracle_equality", "relative_decomposition",
    }
    assert all(c["status"] == "pass" for c in r["checks"].values())
    assert all(r["example5_identities"].values())
    inferred = {(e["p"], e["q"]): e["dim"] for e in r["filtered_algebra"]["inferred_table"]}
    assert inferred[(2, 3)] == 1 and inferred[(3, 3)] == 0 and inferred[(3, 4)] == 1
    assert r["hilbert"][:3] == [1, 7, 46]
    assert report_ok(r)


def test_extras_only_for_example5():
    assert "example5_identities" not in build_report(nonuniform4(), max_degree=3)


def test_hash_ignores_name_and_order():
    a = parse_poset("poset one\ncover a *\ncover b a\n")
    b = parse_poset("cover b a\ncover a *\n")
    assert poset_hash(a) == poset_hash(b)
    assert poset_hash(a) != poset_hash(parse_poset("cover a *\n"))


def test_byte_stable_across_processes():
    cmd = [sys.executable, "-m", "splitalg", "report", str(CORPUS / "example5.poset"), "--max-degree", "3"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second
    assert first.decode() == dumps(json.loads(first)) + "\n"
