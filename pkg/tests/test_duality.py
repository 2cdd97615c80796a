import pytest

from qlattice import corpus
from qlattice.duality import (
    DescentFailure,
    ad_invariance,
    cd_of_quotient,
    cd_of_subalgebra,
    coadjoint_descends,
    largest_cocommutative,
    largest_cocommutative_direct,
    normality,
)
from qlattice.exactalg import Subspace
from qlattice.subobj import quotient_by_hopf_ideal

from conftest import GROUPS

S3 = corpus.group("S3")
kS3 = corpus.get("kS3")
fS3 = corpus.get("k^S3")


def sub(name):
    return corpus.group_subalgebra(S3, corpus.named_subgroup(S3, name))


def fideal(name):
    return corpus.function_ideal(S3, corpus.named_subgroup(S3, name))


def test_cd_of_subalgebra_a3():
    c = cd_of_subalgebra(kS3, sub("A3"))
    assert c.dim == 2
    assert c.hopf is not None and c.hopf.dim == 2
    assert cd_of_subalgebra(kS3, kS3.unit_space).dim == 6
    assert cd_of_subalgebra(kS3, Subspace.full(6)).dim == 1


def test_cd_of_function_subalgebra_gives_hopf_quotient():
    A = corpus.function_subalgebra(S3, corpus.named_subgroup(S3, "A3"))
    c = cd_of_subalgebra(fS3, A)
    assert c.hopf is not None and c.hopf.dim == 3


def test_takeuchi_round_trip_kA3():
    c = cd_of_subalgebra(kS3, sub("A3"))
    assert cd_of_quotient(kS3, c.module) == sub("A3")
    assert cd_of_quotient(kS3, Subspace.zero(6)) == kS3.unit_space
    assert cd_of_quotient(kS3, kS3.counit_kernel) == Subspace.full(6)


def test_normality_of_subalgebras():
    assert normality(kS3, sub("A3"), "subalgebra").normal
    assert normality(kS3, kS3.unit_space, "subalgebra").normal
    r = normality(kS3, sub("C2"), "subalgebra")
    assert not r.normal
    # conjugating (12) by a non-commuting element leaves the subgroup
    assert r.detail["a"] == "(12)"
    assert r.detail["image"] in ("(13)", "(23)")


def test_normality_witness():
    r = normality(kS3, sub("A3"), "subalgebra")
    assert r.witness.valid and r.witness.quot.dim == 2
    w = normality(kS3, Subspace.full(6), "subalgebra").witness
    assert w.quot.dim == 1


def test_ad_invariance_by_subalgebra():
    # conjugation by (123) moves (12)
    assert not ad_invariance(kS3, sub("C2"), "right", by=sub("A3")).ok
    assert ad_invariance(kS3, sub("A3"), "left", by=sub("C2")).ok


def test_coadjoint_descent():
    co = coadjoint_descends(fS3, quotient_by_hopf_ideal(fS3, fideal("A3")))
    assert co.coassociative and co.counital
    triv = coadjoint_descends(fS3, quotient_by_hopf_ideal(fS3, fS3.counit_kernel))
    assert triv.dim == 1
    with pytest.raises(DescentFailure):
        coadjoint_descends(fS3, quotient_by_hopf_ideal(fS3, fideal("C2")))


@pytest.mark.parametrize("g", GROUPS)
def test_largest_cocommutative_matches_abelianization(g):
    G = corpus.group(g)
    H = corpus.get("k^" + g)
    d = largest_cocommutative(H).dim
    assert d == corpus.classical_oracle(G, "abelianization order")
    assert largest_cocommutative(corpus.get("k" + g)).dim == G.order


@pytest.mark.parametrize("name", ["k^S3", "k^Q8", "H8", "H4", "kS3*k^C2"])
def test_largest_cocommutative_two_constructions_agree(name):
    H = corpus.get(name)
    assert largest_cocommutative(H) == largest_cocommutative_direct(H)
