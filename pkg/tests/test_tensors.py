import pytest

from splitalg.errors import IdentityFailed, IndexOutOfRange
from splitalg.families import boolean, chain, example5, nonuniform4
from splitalg.linalg import GF2, RATIONAL, span_rank
from splitalg.poset import STAR, Path, enumerate_paths
from splitalg.tensors import (
    FreeTensor,
    defining_relations,
    expand_e,
    minimal_generator_counts,
    example5_tensors,
    substitute_v,
    v_expr,
    verify_example5_identities,
)


def lin(text, field=RATIONAL):
    """``"B-X1"`` -> ``v_B - v_X1``."""
    terms, sign, tok = [], 1, ""
    for ch in text + "+":
        if ch in "+-":
            if tok:
                terms.append((tok, sign))
            sign, tok = (1 if ch == "+" else -1), ""
        else:
            tok += ch
    return v_expr(*terms, field=field)


def tens(*factors, field=RATIONAL):
    out = FreeTensor.one(field)
    for f in factors:
        out = out * lin(f, field)
    return out


def test_e_degree_zero_and_full():
    pi = Path(("X1", "Y1", "Z1", STAR))
    assert expand_e(pi, 0) == FreeTensor.one()
    assert expand_e(pi, 3) == FreeTensor.word(*pi.edges)
    with pytest.raises(IndexOutOfRange):
        expand_e(pi, 4)


def test_single_edge_to_star():
    assert substitute_v(expand_e(Path(("Z1", STAR)), 1)) == FreeTensor.gen("Z1")
    assert FreeTensor.gen(STAR).is_zero()


def test_e2_of_short_path():
    e = substitute_v(expand_e(Path(("B", "X1", "Y1")), 2))
    assert e == tens("B-X1", "X1-Y1")


def test_q3_first_half():
    e = substitute_v(expand_e(Path(("X1", "Y1", "Z1", STAR)), 2))
    assert e == tens("X1-Y1", "Y1-Z1") + tens("X1-Y1", "Z1") + tens("Y1-Z1", "Z1")


def test_linear_terms_telescope():
    P = boolean(3)
    for b in P.plus:
        for a in P.below(b):
            paths = enumerate_paths(P, b, a)
            first = substitute_v(expand_e(paths[0], 1))
            for pi in paths[1:]:
                assert substitute_v(expand_e(pi, 1)) == first


def test_literal_transcription_of_named_tensors(field):
    """Each named element equals its expansion as printed, factor by factor."""
    t = example5_tensors(field)

    def T(*fs):
        return tens(*fs, field=field)

    assert t["Q1"] == T("B-X1", "X1-Y1") - T("B-X2", "X2-Y1")
    assert t["Q2"] == T("B-X2", "X2-Y2") - T("B-X1", "X1-Y2")
    for name, x in (("Q3", "X1"), ("Q4", "X2")):
        expect = (T(f"{x}-Y1", "Y1-Z1") + T(f"{x}-Y1", "Z1") + T("Y1-Z1", "Z1")
                  - T(f"{x}-Y2", "Y2-Z2") - T(f"{x}-Y2", "Z2") - T("Y2-Z2", "Z2"))
        assert t[name] == expect
    for name, (x, y, z) in {"C1": ("X1", "Y1", "Z1"), "C2": ("X1", "Y2", "Z2"),
                            "C3": ("X2", "Y2", "Z2"), "C4": ("X2", "Y1", "Z1")}.items():
        expect = (T(f"B-{x}", f"{x}-{y}", f"{y}-{z}") + T(f"B-{x}", f"{x}-{y}", z)
                  + T(f"B-{x}", f"{y}-{z}", z) + T(f"{x}-{y}", f"{y}-{z}", z))
        assert t[name] == expect
    assert t["U1"] == T("X1-Y1", "Y1-Z1", "Z1")
    assert t["V1"] == T("X1-Y2", "Y2-Z2", "Z2")
    assert t["U2"] == T("X2-Y1", "Y1-Z1", "Z1")
    assert t["V2"] == T("X2-Y2", "Y2-Z2", "Z2")


def test_identities_pass(field):
    results = verify_example5_identities(field)
    assert results and all(results.values()), results


def test_printed_c1_minus_c4_is_a_typo():
    """The printed ``C1 - C4 = Q2 Y1`` fails; ``Q1 Y1`` is what holds."""
    t = example5_tensors()
    assert t["C1"] - t["C4"] != t["Q2"] * lin("Y1")
    assert t["C1"] - t["C4"] == t["Q1"] * lin("Y1")


def test_strict_mode_does_not_raise_when_all_pass():
    verify_example5_identities(RATIONAL, strict=True)
    assert issubclass(IdentityFailed, Exception)


def test_defining_relations_examples():
    assert defining_relations(chain(4), 4) == {}
    rels = defining_relations(example5(), 3)
    assert span_rank(r.terms for r in rels[2]) == 3
    t = example5_tensors()
    cubic = [r.terms for r in rels[3]]
    for target in (t["U1"] - t["V1"], t["U2"] - t["V2"]):
        assert span_rank(cubic + [target.terms]) == span_rank(cubic)


def test_minimal_counts(field):
    assert minimal_generator_counts(example5(), 3, field) == {2: 3, 3: 1}
    assert minimal_generator_counts(chain(3), 3, field) == {}
    # two disjoint paths b -> * give one quadratic and one cubic relation
    assert minimal_generator_counts(nonuniform4(), 3, field) == {2: 1, 3: 1}


def test_minimal_counts_boolean_matches_ext22():
    assert minimal_generator_counts(boolean(3), 3) == {2: 5}


def test_tensor_arithmetic_over_gf2():
    a = FreeTensor.word("x", field=GF2)
    assert (a + a).is_zero()
    assert (a * a).degrees() == {2}
