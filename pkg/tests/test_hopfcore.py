import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from qlattice import corpus
from qlattice.exactalg import ONE, to_dense
from qlattice.hopfcore import (
    HopfAxiomError,
    StructuredMap,
    build_validate,
    check_axioms,
    dual,
    grouplikes,
    identity_map,
    tensor_product,
    variant,
)

C2_MULT = [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]
C2_COMULT = [[(1, 0, 0)], [(1, 1, 1)]]


def test_build_validate_group_algebra_c2():
    H = build_validate(["e", "g"], C2_MULT, [1, 0], C2_COMULT, [1, 1], [[1, 0], [0, 1]])
    assert H.dim == 2
    assert H.is_commutative and H.is_cocommutative
    assert H.comul({1: ONE}) == {3: ONE}


def test_wrong_counit_is_reported():
    with pytest.raises(HopfAxiomError) as err:
        build_validate(["e", "g"], C2_MULT, [1, 0], C2_COMULT, [1, 2], [[1, 0], [0, 1]])
    assert "counit_multiplicative" in err.value.report.failed_axioms


def test_wrong_antipode_is_reported():
    with pytest.raises(HopfAxiomError) as err:
        build_validate(["e", "g"], C2_MULT, [1, 0], C2_COMULT, [1, 1], [[1, 1], [0, 0]])
    assert "antipode" in err.value.report.failed_axioms


@pytest.mark.parametrize("name", corpus.corpus_names())
def test_corpus_item_satisfies_axioms(name):
    assert check_axioms(corpus.get(name)).ok


@pytest.mark.parametrize("name", ["kS3", "H4", "H8", "kC2*k^C2"])
def test_dual_is_involutive(name):
    H = corpus.get(name)
    assert dual(dual(H)).same_structure(H)


def test_dual_swaps_commutative_and_cocommutative():
    H = corpus.get("kS3")
    D = dual(H)
    assert D.is_commutative and not D.is_cocommutative
    assert not H.is_commutative and H.is_cocommutative


def test_variants_of_h4_are_hopf_algebras():
    H = corpus.get("H4")
    assert check_axioms(variant(H, opposite_mult=True, opposite_comult=True)).ok


def test_tensor_product_dimension_and_flags():
    T = tensor_product(corpus.get("kC2"), corpus.get("k^S3"))
    assert T.dim == 12
    assert T.is_commutative and not T.is_cocommutative


# grouplike counts are [DERIVED] from the classical picture:
# |G| for kG, |G/[G,G]| for k^G, and by hand for H4 / H8.
@pytest.mark.parametrize(
    "name,count",
    [("kS3", 6), ("k^S3", 2), ("k^Q8", 4), ("H4", 2), ("H8", 4), ("kC2*kC3", 6)],
)
def test_grouplike_counts(name, count):
    res = grouplikes(corpus.get(name))
    assert len(res) == count
    assert res.complete


def test_rational_grouplike_search_flags_missing_characters():
    # the two nontrivial characters of A4 take values in Q(zeta_3)
    res = grouplikes(corpus.get("k^A4"))
    assert len(res) == 1
    assert not res.complete


def test_h8_grouplikes_form_klein_four():
    H = corpus.get("H8")
    gs = [g.vec for g in grouplikes(H)]
    for a in gs:
        assert H.mul(a, a) == {0: ONE}


def test_h4_antipode_has_order_four():
    H = corpus.get("H4")
    x = {2: ONE}
    v = x
    orders = []
    for k in range(1, 5):
        v = H.S(v)
        if v == x:
            orders.append(k)
    assert orders == [4]


@given(st.lists(st.integers(-2, 2), min_size=8, max_size=8), st.lists(st.integers(-2, 2), min_size=8, max_size=8))
def test_comultiplication_is_multiplicative_on_h8(a, b):
    H = corpus.get("H8")
    u = {i: mpq(x) for i, x in enumerate(a) if x}
    v = {i: mpq(x) for i, x in enumerate(b) if x}
    assert H.comul(H.mul(u, v)) == H.tensor_mul(H.comul(u), H.comul(v))


@given(st.lists(st.integers(-2, 2), min_size=8, max_size=8))
def test_antipode_is_antimultiplicative_and_invertible(a):
    H = corpus.get("H8")
    u = {i: mpq(x) for i, x in enumerate(a) if x}
    assert H.S_inv(H.S(u)) == u
    g = {1: ONE}
    assert H.S(H.mul(u, g)) == H.mul(H.S(g), H.S(u))


def test_structured_map_flags():
    H = corpus.get("kS3")
    idm = identity_map(H)
    assert idm.is_hopf_map and idm.is_bijective
    proj = StructuredMap(H, corpus.get("kC2"), [{0: ONE} if H.labels[i] in ("e", "(123)", "(132)") else {1: ONE} for i in range(6)])
    assert proj.is_algebra_map and proj.is_coalgebra_map
    assert proj.is_surjective and not proj.is_injective
    assert proj.kernel().dim == 4
    assert to_dense(proj.apply({1: ONE}), 2) in ([0, 1], [1, 0])
