import pytest

from qlattice import corpus
from qlattice.duality import largest_cocommutative
from qlattice.hopfcore import dual
from qlattice.integrals import cosemisimple_test

from conftest import GROUPS


@pytest.mark.parametrize("g,order", [("C2", 2), ("S3", 6), ("D4", 8), ("Q8", 8), ("A4", 12), ("S4", 24)])
def test_group_orders(g, order):
    assert corpus.group(g).order == order
    assert corpus.get("k" + g).dim == order


@pytest.mark.parametrize("g", GROUPS)
def test_function_algebra_is_dual_of_group_algebra(g):
    G = corpus.group(g)
    assert corpus.function_algebra(G).same_structure(dual(corpus.group_algebra(G)))


@pytest.mark.parametrize("g", GROUPS)
def test_flags(g):
    kG, fG = corpus.get("k" + g), corpus.get("k^" + g)
    assert kG.is_cocommutative and fG.is_commutative


def test_h4_and_h8_flags():
    H4, H8 = corpus.get("H4"), corpus.get("H8")
    assert not cosemisimple_test(H4)
    assert cosemisimple_test(H8)
    assert not H8.is_commutative and not H8.is_cocommutative


def test_h8_largest_cocommutative():
    # [DERIVED] by the implementation's oracle run; contains the grouplike span
    assert largest_cocommutative(corpus.get("H8")).dim == 4


def test_oracle_examples():
    S3, S4 = corpus.group("S3"), corpus.group("S4")
    assert corpus.classical_oracle(S4, "composition factors") == [2, 2, 2, 3]
    A3 = corpus.named_subgroup(S3, "A3")
    assert corpus.classical_oracle(S3, "commutator subgroup") == A3
    C1 = corpus.group("C1")
    assert corpus.classical_oracle(C1, "subgroups") == [frozenset({0})]
    assert corpus.classical_oracle(C1, "composition factors") == []


@pytest.mark.parametrize("g,count", [("S3", 6), ("S4", 30), ("D4", 10), ("Q8", 6), ("A4", 10)])
def test_oracle_subgroup_counts(g, count):
    # textbook subgroup counts
    assert len(corpus.classical_oracle(corpus.group(g), "subgroups")) == count


@pytest.mark.parametrize("g,classes", [("S3", 3), ("S4", 5), ("D4", 5), ("Q8", 5), ("A4", 4)])
def test_oracle_conjugacy_classes(g, classes):
    assert len(corpus.classical_oracle(corpus.group(g), "conjugacy classes")) == classes


def test_named_subgroups():
    S4 = corpus.group("S4")
    sizes = {n: len(corpus.named_subgroup(S4, n)) for n in ("A4", "V4", "D4", "S3", "C3", "C4", "C2a")}
    assert sizes == {"A4": 12, "V4": 4, "D4": 8, "S3": 6, "C3": 3, "C4": 4, "C2a": 2}
    assert len(corpus.named_subgroup(S4, "gen:(12),(34)")) == 4


def test_unknown_item():
    with pytest.raises(KeyError):
        corpus.get("kS5")
