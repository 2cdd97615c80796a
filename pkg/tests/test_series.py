import pytest

from qlattice import corpus
from qlattice.series import (
    SeriesError,
    Unsupported,
    enumerate_subgroups,
    find_composition_series,
    jordan_holder,
    schreier_refine,
    validate_series,
)

from conftest import GROUPS
from test_isothms import named


def chain(name, picture, names):
    q = named(name, picture)
    return [q("G")] + [q(n) for n in names] + [q("1")]


def test_validate_series_accepts_and_rejects():
    s = validate_series(chain("kS4", "dqg", ["A4", "V4", "C2a"]))
    assert s.factor_dims == [2, 3, 2, 2]
    assert not s.is_normal_series
    with pytest.raises(SeriesError) as err:
        validate_series(chain("kS4", "dqg", ["C2a"]))
    assert err.value.witness["index"] == 1
    with pytest.raises(SeriesError):
        validate_series(chain("kS4", "dqg", ["V4", "A4"]))


@pytest.mark.parametrize("name,picture", [("kS4", "dqg"), ("k^S4", "qg")])
def test_schreier_refinement(name, picture):
    cert = schreier_refine(chain(name, picture, ["A4"]), chain(name, picture, ["V4"]))
    assert cert.verify()
    assert sorted(cert.factor_dims1) == sorted(cert.factor_dims2) == [2, 3, 4]


def test_jordan_holder_s4():
    cert = jordan_holder(chain("kS4", "dqg", ["A4", "V4", "C2a"]), chain("kS4", "dqg", ["A4", "V4", "C2b"]))
    assert cert.verify()
    assert cert.factor_dims1 == [2, 3, 2, 2]


def test_jordan_holder_rejects_non_composition():
    with pytest.raises(SeriesError):
        jordan_holder(chain("kS4", "dqg", ["A4"]), chain("kS4", "dqg", ["A4", "V4", "C2a"]))


def test_jordan_holder_c6_permutes_factors():
    cert = jordan_holder(chain("kC6", "dqg", ["C3"]), chain("kC6", "dqg", ["C2"]))
    assert cert.verify()
    assert cert.factor_dims1 == [2, 3] and cert.factor_dims2 == [3, 2]
    assert cert.permutation == [1, 0]


@pytest.mark.parametrize("g", GROUPS)
@pytest.mark.parametrize("prefix", ["k", "k^"])
def test_found_composition_series_matches_oracle(g, prefix):
    G = corpus.group(g)
    s = find_composition_series(corpus.get(prefix + g))
    assert sorted(s.factor_dims) == corpus.classical_oracle(G, "composition factors")


@pytest.mark.parametrize("g,count", [("S3", 6), ("S4", 30), ("Q8", 6)])
def test_enumeration_counts(g, count):
    assert len(enumerate_subgroups(corpus.get("k" + g))) == count


def test_enumeration_of_function_algebra_is_normal_subgroups_over_q():
    # k^S3 as a qg: every subgroup of S3 is a quotient, found via the character group of kS3
    assert len(enumerate_subgroups(corpus.get("k^S3"))) == 6


def test_trivial_algebra():
    s = find_composition_series(corpus.get("k"))
    assert s.length == 0


def test_enumeration_unsupported_for_h8():
    with pytest.raises(Unsupported):
        enumerate_subgroups(corpus.get("H8"))
