import json
import os
import subprocess
import sys

import pytest

from qlattice import corpus
from qlattice.cli import SchemaError, hopf_from_json, hopf_to_json, load, main, save
from qlattice.exactalg import Cyclotomic
from qlattice.hopfcore import dual

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def run(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


@pytest.mark.parametrize("name", ["kS3", "H4", "H8", "kC2*k^C2"])
def test_save_load_round_trip(tmp_path, name):
    H = corpus.get(name)
    p = tmp_path / "h.json"
    save(H, str(p))
    first = p.read_text()
    H2 = load(str(p))
    assert H2.same_structure(H) and H2.labels == H.labels
    save(H2, str(p))
    assert p.read_text() == first


def test_schema_error_names_path():
    doc = hopf_to_json(corpus.get("kC2"))
    doc["mult"][1] = doc["mult"][1][:1]
    with pytest.raises(SchemaError, match=r"mult\[1\]"):
        hopf_from_json(doc)
    doc = hopf_to_json(corpus.get("kC2"))
    doc["comult"][1][0][1] = 7
    with pytest.raises(SchemaError, match=r"comult\[1\]\[0\]"):
        hopf_from_json(doc)


def test_shipped_h4_file(capsys):
    code, out = run(capsys, "validate", os.path.join(ROOT, "examples", "h4.json"))
    assert code == 0 and out == {"dim": 4, "valid": True}


def twisted_c3():
    """kC3 in the basis 1, zeta g, g^2 over Q(zeta_3)."""
    z = ["0", "1"]
    z2 = ["-1", "-1"]
    zero, one = "0", "1"
    # b0 = 1, b1 = zeta g, b2 = g^2
    mult = [
        [[one, zero, zero], [zero, one, zero], [zero, zero, one]],
        [[zero, one, zero], [zero, zero, z2], [z, zero, zero]],
        [[zero, zero, one], [z, zero, zero], [zero, z2, zero]],
    ]
    return {
        "format": "hopf-sc-v1",
        "field": {"cyclotomic": 3},
        "dim": 3,
        "labels": ["1", "zg", "g2"],
        "mult": mult,
        "unit": [one, zero, zero],
        "comult": [[[one, 0, 0]], [[z2, 1, 1]], [[one, 2, 2]]],
        "counit": [one, z, one],
        "antipode": [[one, zero, zero], [zero, zero, z2], [zero, z, zero]],
    }


def test_cyclotomic_algebra_loads_and_dualises(tmp_path):
    H = hopf_from_json(twisted_c3())
    assert H.dim == 3 and H.is_commutative and H.is_cocommutative
    z = Cyclotomic.zeta(3)
    assert H.counit[1] == z
    D = dual(H)
    assert dual(D).same_structure(H)
    p = tmp_path / "c3.json"
    save(H, str(p))
    assert load(str(p)).same_structure(H)


def test_cyclotomic_broken_structure_is_rejected(capsys, tmp_path):
    doc = twisted_c3()
    doc["counit"][1] = "1"
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    code, out = run(capsys, "validate", str(p))
    assert code == 2 and out["error"] == "axiom failure"


def test_corrupted_file_names_axiom(capsys, tmp_path):
    doc = hopf_to_json(corpus.get("kC2"))
    doc["comult"][1] = [["1", 1, 0]]
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    code, out = run(capsys, "validate", str(p))
    assert code == 2
    axioms = [f["axiom"] for f in out["report"]["failures"]]
    assert axioms and all(isinstance(a, str) for a in axioms)


def test_cocomm_max(capsys):
    assert run(capsys, "cocomm-max", "corpus:k^S3") == (0, {"dim": 2})


def test_jordan_holder_command(capsys, tmp_path):
    cert = tmp_path / "jh.json"
    code, out = run(
        capsys, "jordan-holder", "corpus:kS4", "--chain", "A4,V4,C2a", "--chain", "A4,V4,C2b", "--certify", str(cert)
    )
    assert code == 0 and out["factor_dims"] == [2, 3, 2, 2] and out["verified"]
    code, out = run(capsys, "verify-cert", str(cert))
    assert code == 0 and out["verified"]


def test_tampered_certificate_fails(capsys, tmp_path):
    cert = tmp_path / "c.json"
    run(capsys, "third-iso", "corpus:k^S4", "--subgroup", "V4", "--subgroup", "A4", "--certify", str(cert))
    doc = json.loads(cert.read_text())
    doc["matrix"] = [[("1" if i == 0 else "0") for _ in row] for i, row in enumerate(doc["matrix"])]
    cert.write_text(json.dumps(doc))
    code, out = run(capsys, "verify-cert", str(cert))
    assert code == 1 and not out["verified"]


def test_exit_codes(capsys):
    assert run(capsys, "info", "corpus:nope")[0] == 2
    assert run(capsys, "second-iso", "corpus:kS3", "--subgroup", "A3", "--subgroup", "C2")[0] == 2
    assert run(capsys, "normal", "corpus:kS3", "--subgroup", "C2")[1]["normal"] is False
    assert run(capsys, "haar", "corpus:H4")[0] == 2


def test_modular_survey(capsys):
    code, out = run(
        capsys, "modular", "corpus:kS3", "--survey", "--subgroup", "C2a", "--subgroup", "C2b", "--subgroup", "C2c"
    )
    assert code == 0 and out["equal"] is False and out["mode"] == "survey"


def test_deterministic_output():
    cmd = [sys.executable, "-m", "qlattice", "info", "corpus:H8"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b


def test_corpus_export(capsys, tmp_path):
    code, out = run(capsys, "corpus", "--export", str(tmp_path))
    assert code == 0
    assert len(os.listdir(tmp_path)) == len(out["items"])
    assert load(str(tmp_path / "H4.json")).same_structure(corpus.get("H4"))


@pytest.mark.parametrize(
    "argv",
    [
        ["grouplikes", "corpus:H8"],
        ["dual", "corpus:H4"],
        ["cd", "corpus:kS3", "--subgroup", "A3"],
        ["meet", "corpus:k^S3", "--subgroup", "A3", "--subgroup", "C2"],
        ["join", "corpus:kS3", "--subgroup", "A3", "--subgroup", "C2"],
        ["expectation", "corpus:k^S3", "--subgroup", "C2"],
        ["zassenhaus", "corpus:kS4", "--subgroup", "1", "--subgroup", "A4", "--subgroup", "1", "--subgroup", "D4"],
        ["refine", "corpus:k^S4", "--chain", "A4", "--chain", "V4"],
    ],
)
def test_commands_succeed(capsys, argv):
    assert run(capsys, *argv)[0] == 0


def test_cyclotomic_integral():
    from qlattice.integrals import haar, integral

    H = hopf_from_json(twisted_c3())
    z = Cyclotomic.zeta(3)
    third = Cyclotomic(3, ["1/3"])
    # Lambda = (1 + g + g^2) / 3 and g = zeta^-1 (zeta g)
    assert integral(H).left_integral.vec == {0: third, 1: third * z * z, 2: third}
    assert [x == v for x, v in zip(haar(H), (1, 0, 0))] == [True] * 3
