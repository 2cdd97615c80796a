import pytest

from qlattice import corpus
from qlattice.isothms import PreconditionError, second_iso, third_iso, zassenhaus
from qlattice.lattice import QuantumSubgroup

from conftest import subgroup_objects


def named(name, picture):
    G, _ = corpus.group_of(name)
    subs = dict(subgroup_objects(name, picture))

    def get(n):
        if n == "1":
            return QuantumSubgroup.trivial(corpus.get(name), picture)
        if n == "G":
            return QuantumSubgroup.whole(corpus.get(name), picture)
        return subs[corpus.named_subgroup(G, n)]

    return get


@pytest.mark.parametrize("name,picture", [("kS3", "dqg"), ("k^S3", "qg")])
def test_second_iso_s3(name, picture):
    q = named(name, picture)
    r = second_iso(q("C2"), q("A3"))
    assert r.generation and r.iso
    assert r.source.dim == r.target.dim == 2
    assert r.certificate.verify()


def test_second_iso_without_generation():
    # C2 and the centre-free part of C4 do not generate D4
    q = named("kD4", "dqg")
    r = second_iso(q("C2"), q("Z"))
    assert not r.generation and r.certificate is None
    assert r.injective and not r.surjective
    q = named("k^D4", "qg")
    r = second_iso(q("C2"), q("Z"))
    assert not r.generation and r.certificate is None
    assert r.surjective and not r.injective


def test_second_iso_needs_normal_k():
    q = named("kS3", "dqg")
    with pytest.raises(PreconditionError):
        second_iso(q("A3"), q("C2"))


@pytest.mark.parametrize("name,picture", [("kS4", "dqg"), ("k^S4", "qg")])
def test_third_iso_s4(name, picture):
    q = named(name, picture)
    r = third_iso(q("V4"), q("A4"))
    assert r.certificate is not None and r.certificate.verify()
    assert r.double_quotient.dim == r.target.dim == 2


def test_third_iso_preconditions():
    q = named("kS4", "dqg")
    with pytest.raises(PreconditionError):
        third_iso(q("A4"), q("V4"))
    with pytest.raises(PreconditionError):
        third_iso(q("C2a"), q("A4"))


@pytest.mark.parametrize("name,picture", [("kS4", "dqg"), ("k^S4", "qg")])
def test_zassenhaus_s4(name, picture):
    q = named(name, picture)
    r = zassenhaus(q("1"), q("A4"), q("1"), q("D4"))
    assert r.left.dim == r.right.dim == 4
    assert r.certificate is not None and r.certificate.verify()
    assert r.modular_identity


def test_zassenhaus_dims_match_oracle():
    G = corpus.group("S4")
    q = named("kS4", "dqg")
    args = ("V4", "A4", "1", "S3")
    r = zassenhaus(*(q(n) for n in args))
    oracle = corpus.classical_oracle(G, "zassenhaus", *(corpus.named_subgroup(G, n) for n in args))
    assert oracle == (3, 3)
    assert (r.left.dim, r.right.dim) == oracle


def test_zassenhaus_needs_normality():
    q = named("kS4", "dqg")
    with pytest.raises(PreconditionError):
        zassenhaus(q("C2a"), q("A4"), q("1"), q("D4"))
