import itertools

import pytest

from qlattice import corpus
from qlattice.lattice import (
    PictureMismatch,
    QuantumSubgroup,
    TheoremViolation,
    check_modular_law,
    is_normal,
    is_normal_in,
    join,
    meet,
    normalizes,
)

from conftest import GROUPS, subgroup_objects


def test_meet_join_s3_qg():
    subs = dict(subgroup_objects("k^S3", "qg"))
    S3 = corpus.group("S3")
    A3 = subs[corpus.named_subgroup(S3, "A3")]
    C2 = subs[corpus.named_subgroup(S3, "C2")]
    assert meet(A3, C2).order == 1
    assert join(A3, C2).order == 6
    assert meet(A3, A3) == A3 and join(A3, A3) == A3


def test_meet_join_s3_dqg(s3_dqg):
    S3 = corpus.group("S3")
    A3 = s3_dqg[corpus.named_subgroup(S3, "A3")]
    C2 = s3_dqg[corpus.named_subgroup(S3, "C2")]
    assert meet(A3, C2).order == 1
    assert join(A3, C2).order == 6


@pytest.mark.parametrize("g", GROUPS)
@pytest.mark.parametrize("picture,name", [("dqg", "k{}"), ("qg", "k^{}")])
def test_meet_join_match_oracle(g, picture, name):
    G = corpus.group(g)
    subs = subgroup_objects(name.format(g), picture)
    for (K1, a), (K2, b) in itertools.combinations_with_replacement(subs, 2):
        assert meet(a, b).order == len(corpus.classical_oracle(G, "meet", K1, K2))
        assert join(a, b).order == len(corpus.classical_oracle(G, "join", K1, K2))
        assert (a <= b) == (K1 <= K2)


@pytest.mark.parametrize("g", GROUPS)
def test_normality_matches_oracle(g):
    G = corpus.group(g)
    for picture, name in (("dqg", "k"), ("qg", "k^")):
        for K, q in subgroup_objects(name + g, picture):
            assert is_normal(q).normal == corpus.classical_oracle(G, "normal", K)


@pytest.mark.parametrize("g", ["S3", "D4", "A4"])
def test_relative_normality_and_normalizes_match_oracle(g):
    G = corpus.group(g)
    for picture, name in (("dqg", "k"), ("qg", "k^")):
        subs = subgroup_objects(name + g, picture)
        for (L, a), (M, b) in itertools.product(subs, repeat=2):
            assert normalizes(a, b) == corpus.classical_oracle(G, "normalizes", L, M)
            if M <= L:
                assert is_normal_in(b, a).normal == corpus.classical_oracle(G, "normal", M, L)


def test_normalizes_examples(s3_dqg):
    S3 = corpus.group("S3")
    q = {n: s3_dqg[corpus.named_subgroup(S3, n)] for n in ("C2", "A3")}
    assert normalizes(q["C2"], q["A3"])
    assert not normalizes(q["A3"], q["C2"])


def test_picture_mismatch():
    H = corpus.get("kS3")
    with pytest.raises(PictureMismatch):
        meet(QuantumSubgroup.whole(H, "qg"), QuantumSubgroup.whole(H, "dqg"))


def test_whole_and_trivial():
    H = corpus.get("H8")
    for pic in ("qg", "dqg"):
        G, one = QuantumSubgroup.whole(H, pic), QuantumSubgroup.trivial(H, pic)
        assert G.order == 8 and one.order == 1
        assert one <= G and not G <= one
        assert meet(G, one) == one and join(G, one) == G


def test_modular_law_d4_example():
    D4 = corpus.group("D4")
    subs = dict(subgroup_objects("kD4", "dqg"))
    H, L, M = (subs[corpus.named_subgroup(D4, n)] for n in ("V4a", "C2", "Z"))
    r = check_modular_law(H, L, M)
    assert r.equal and r.theorem_applies


def test_modular_law_needs_containment_in_theorem_mode(s3_dqg):
    S3 = corpus.group("S3")
    a, b, c = (s3_dqg[corpus.named_subgroup(S3, n)] for n in ("C2a", "C2b", "C2c"))
    with pytest.raises(ValueError):
        check_modular_law(a, b, c)
    # without L <= H the identity fails: H ^ (M v L) = H but (H ^ M) v L = L
    r = check_modular_law(a, b, c, mode="survey")
    assert not r.equal and not r.theorem_applies


def test_theorem_violation_is_an_assertion():
    assert issubclass(TheoremViolation, AssertionError)
