import pytest
from hypothesis import given
from hypothesis import strategies as st

from qlattice import corpus
from qlattice.exactalg import ONE, Subspace
from qlattice.subobj import (
    CLOSURES,
    NotHopfIdeal,
    classify,
    generate_closed,
    largest_hopf_ideal_within,
    minus_part,
    quotient_by_hopf_ideal,
    quotient_module_coalgebra,
    sum_of_hopf_ideals,
)

S3 = corpus.group("S3")
kS3 = corpus.get("kS3")
fS3 = corpus.get("k^S3")


def el(H, label):
    return {H.labels.index(label): ONE}


def kA3():
    return corpus.group_subalgebra(S3, corpus.named_subgroup(S3, "A3"))


def test_classify_examples():
    W = Subspace.span([{0: ONE, kS3.labels.index("(123)"): ONE, kS3.labels.index("(132)"): ONE}], 6)
    c = classify(kS3, W)
    assert not c.subalgebra
    assert not c.right_coideal_subalgebra and not c.left_coideal_subalgebra
    assert classify(kS3, kA3()).hopf_subalgebra


@pytest.mark.parametrize("name", corpus.corpus_names())
def test_counit_kernel_is_hopf_ideal(name):
    H = corpus.get(name)
    assert classify(H, H.counit_kernel).hopf_ideal


def test_minus_part_dimensions():
    assert minus_part(kS3, kA3()).dim == 2
    assert minus_part(kS3, kS3.unit_space).dim == 0
    assert minus_part(kS3, Subspace.full(6)).dim == 5


def test_generation_examples():
    A = generate_closed(kS3, [el(kS3, "(123)")], ("mult", "unit"))
    assert A == kA3()
    assert generate_closed(kS3, [el(kS3, "(12)"), el(kS3, "(123)")]).dim == 6
    assert generate_closed(kS3, [], ("unit",)) == kS3.unit_space


vectors6 = st.lists(st.integers(-1, 1), min_size=6, max_size=6).map(
    lambda r: {i: ONE * x for i, x in enumerate(r) if x}
)


@given(st.lists(vectors6, max_size=2), st.lists(vectors6, max_size=2))
def test_closure_is_extensive_idempotent_monotone(a, b):
    H = fS3
    W1 = Subspace.span(a, 6)
    W2 = Subspace.span(a + b, 6)
    C1 = generate_closed(H, W1, CLOSURES)
    assert W1 <= C1
    assert generate_closed(H, C1, CLOSURES) == C1
    assert C1 <= generate_closed(H, W2, CLOSURES)
    assert classify(H, C1).hopf_subalgebra


def _kernel(name):
    return corpus.function_ideal(S3, corpus.named_subgroup(S3, name))


def test_sum_of_hopf_ideals():
    I1, I2 = _kernel("A3"), _kernel("C2")
    assert sum_of_hopf_ideals(fS3, I1, I2).dim == 5
    assert sum_of_hopf_ideals(fS3, I1, Subspace.zero(6)) == I1
    assert sum_of_hopf_ideals(fS3, I1, I1) == I1
    with pytest.raises(NotHopfIdeal):
        sum_of_hopf_ideals(fS3, I1, Subspace.span([{0: ONE}], 6))


def test_largest_hopf_ideal_within():
    I1, I2 = _kernel("A3"), _kernel("C2")
    assert largest_hopf_ideal_within(fS3, I1 & I2).dim == 0
    assert largest_hopf_ideal_within(fS3, fS3.counit_kernel) == fS3.counit_kernel
    assert largest_hopf_ideal_within(fS3, Subspace.zero(6)).dim == 0


def test_quotient_by_hopf_ideal():
    q = quotient_by_hopf_ideal(fS3, _kernel("A3"))
    assert q.dim == 3
    assert q.quotient.is_commutative and q.quotient.is_cocommutative
    assert q.projection.is_hopf_map and q.projection.is_surjective
    assert quotient_by_hopf_ideal(fS3, Subspace.zero(6)).dim == 6
    assert quotient_by_hopf_ideal(fS3, fS3.counit_kernel).dim == 1


def test_module_quotient_dimensions():
    assert quotient_module_coalgebra(kS3, kA3()).dim == 2
    assert quotient_module_coalgebra(kS3, kS3.unit_space).dim == 6
    assert quotient_module_coalgebra(kS3, Subspace.full(6)).dim == 1
