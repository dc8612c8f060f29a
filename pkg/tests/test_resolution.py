import pytest

from splitalg.algebra import ONE, mono
from splitalg.errors import DegreeMismatch
from splitalg.families import boolean, chain, example5, nonuniform4, random_corpus
from splitalg.resolution import (
    ChainSymbol,
    Resolution,
    check_augmentation_image,
    check_d_squared,
    check_exactness,
    check_homotopy_identity,
    killed_betti,
)
from splitalg.tables import ext_table

S = ChainSymbol


def test_symbols_chain2():
    R = Resolution(chain(2))
    assert R.enumerate_symbols(-1, 2) == [S("a", 1), S("b", 1), S("b", 2)]
    assert R.enumerate_symbols(0, 1) == []


def test_symbols_example5():
    R = Resolution(example5())
    assert S("B", 3, ("X1", "Y1")) in R.enumerate_symbols(1, 3)
    assert R.is_valid(S("B", 3, ("X1", "Y1")))
    assert not R.is_valid(S("B", 3, ("Y1", "X1")))
    assert not R.is_valid(S("B", 2, ("Y1",)))


def test_differential_example():
    R = Resolution(example5())
    d = R.differential(R.term(ONE, S("B", 3, ("X1", "Y1"))))
    expect = (
        R.term(mono(("B", 1)), S("X1", 2, ("Y1",)))
        - R.term(ONE, S("B", 3, ("Y1",)))
        + R.term(ONE, S("B", 3, ("X1",)))
    )
    assert d == expect


def test_augmentation():
    R = Resolution(example5())
    assert R.differential(R.term(ONE, S("B", 2))) == R.algebra(mono(("B", 2)))
    assert R.augmentation(R.term(mono(("X1", 1)), S("Y1", 1))) == R.algebra(mono(("X1", 2)))


def test_homotopy_examples():
    R = Resolution(example5())
    assert R.homotopy(R.algebra(mono(("B", 2)))) == R.term(ONE, S("B", 2))
    assert not R.homotopy(R.term(ONE, S("B", 3, ("X1", "Y1"))))
    h = R.homotopy(R.term(mono(("B", 1)), S("X1", 2, ("Y1",))))
    assert h == R.term(ONE, S("B", 3, ("X1", "Y1")))


def test_mixed_degrees_rejected():
    R = Resolution(example5())
    mixed = R.term(ONE, S("B", 2)) + R.term(ONE, S("B", 3))
    with pytest.raises(DegreeMismatch):
        R.differential(mixed)


def test_chain2_d4():
    for fn in (check_d_squared, check_homotopy_identity, check_augmentation_image, check_exactness):
        assert fn(chain(2), 4).passed


def test_augmentation_spans_with_h2():
    r = check_augmentation_image(example5(), 3)
    assert r.passed and r.details["span_dims"] == {1: 7, 2: 46, 3: 300}
    assert check_augmentation_image(chain(1), 3).details["span_dims"] == {1: 1, 2: 1, 3: 1}
    assert check_augmentation_image(boolean(3), 3).passed


@pytest.mark.parametrize("P", [example5(), nonuniform4(), boolean(3)], ids=repr)
def test_checks_d4(P, field):
    for fn in (check_d_squared, check_homotopy_identity, check_exactness):
        r = fn(P, 4, field)
        assert r.passed, r.witness


@pytest.mark.parametrize("P", random_corpus(5, 8, seed=9), ids=repr)
def test_checks_random(P):
    for fn in (check_d_squared, check_homotopy_identity, check_augmentation_image, check_exactness):
        assert fn(P, 4).passed


def test_killed_cycles_match_window_homology(field):
    for P in (example5(), nonuniform4(), boolean(3)):
        assert killed_betti(P, field) == ext_table(P, field).breakdown


def test_check_json_shape():
    j = check_d_squared(example5(), 3).to_json()
    assert set(j) >= {"check", "poset", "degree_bound", "status"}
    assert j["status"] == "pass" and j["poset"] == "example5"
