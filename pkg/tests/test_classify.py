import pytest

from splitalg.classify import (
    classify,
    cohen_macaulay,
    condition_star,
    equivalence_disagreements,
    koszul_verdict,
    quadratic_verdict,
    relative_decomposition_failures,
    uniform,
    uniform_via_windows,
)
from splitalg.families import boolean, chain, example5, nonuniform4, random_corpus, random_poset
from splitalg.tables import ext_table


def test_uniform_examples():
    assert uniform(boolean(3)).value and uniform(chain(4)).value
    v = uniform(nonuniform4())
    assert not v.value and v.witness == {"element": "b", "classes": [["x1"], ["x2"]]}
    v = uniform(example5())
    assert not v.value and v.witness == {"element": "X1", "classes": [["Y1"], ["Y2"]]}


def test_window_connectivity_examples():
    assert not uniform_via_windows(example5()).value
    assert uniform_via_windows(example5()).witness["element"] == "X1"
    assert uniform_via_windows(boolean(3)).value
    assert uniform_via_windows(chain(5)).value


def test_cohen_macaulay_examples(field):
    assert cohen_macaulay(chain(4), field).value
    assert cohen_macaulay(boolean(3), field).value
    v = cohen_macaulay(example5(), field)
    assert not v.value and (v.witness["a"], v.witness["b"], v.witness["n"]) == ("*", "X1", 0)


def test_condition_star_examples(field):
    v = condition_star(example5(), field)
    assert not v.value and (v.witness["b"], v.witness["q"], v.witness["n"]) == ("X1", 3, 2)
    assert condition_star(boolean(3), field).value
    v = condition_star(nonuniform4(), field)
    assert (v.witness["b"], v.witness["q"], v.witness["n"]) == ("b", 3, 2)


def test_table_verdicts():
    T = ext_table(example5())
    assert not quadratic_verdict(T).value and not koszul_verdict(T).value
    assert quadratic_verdict(T).witness["q"] == 3 and quadratic_verdict(T).witness["b"] == "X1"
    for P in (boolean(3), chain(3)):
        T = ext_table(P)
        assert quadratic_verdict(T).value and koszul_verdict(T).value
    w = quadratic_verdict(ext_table(nonuniform4())).witness
    assert (w["b"], w["q"]) == ("b", 3)


def test_uniform_but_not_cohen_macaulay():
    P = random_poset(2214, 4, 3, max_covers=2)
    verdicts = {v.property: v.value for v in classify(P)}
    assert verdicts == {"uniform": True, "cohen_macaulay": False, "condition_star": False,
                        "quadratic": True, "koszul": False}


@pytest.mark.parametrize("P", [chain(3), boolean(3), example5(), nonuniform4(), *random_corpus(15, 9, seed=2)], ids=repr)
def test_equivalences_and_decomposition(P, field):
    assert equivalence_disagreements(P, field) == []
    assert relative_decomposition_failures(P, field) == []


def test_classify_order():
    assert [v.property for v in classify(boolean(2))] == [
        "uniform", "cohen_macaulay", "condition_star", "quadratic", "koszul",
    ]
