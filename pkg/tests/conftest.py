import pytest
from hypothesis import HealthCheck, settings

from qlattice import corpus
from qlattice.lattice import QuantumSubgroup

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

GROUPS = ["C2", "C3", "C4", "C6", "V4", "S3", "D4", "Q8", "A4", "S4"]


def subgroup_objects(name: str, picture: str):
    """All quantum subgroups of a corpus kG / k^G coming from classical subgroups.

    Returns pairs (classical subgroup, QuantumSubgroup).  For kG in the qg
    picture and k^G in the dqg picture only normal subgroups give Hopf
    ideals / subalgebras.
    """
    H = corpus.get(name)
    G, kind = corpus.group_of(name)
    out = []
    for K in corpus.classical_oracle(G, "subgroups"):
        if kind == "group":
            if picture == "dqg":
                out.append((K, QuantumSubgroup.from_subalgebra(H, corpus.group_subalgebra(G, K))))
            elif corpus.classical_oracle(G, "normal", K):
                out.append((K, QuantumSubgroup.from_ideal(H, corpus.group_quotient_ideal(G, K))))
        else:
            if picture == "qg":
                out.append((K, QuantumSubgroup.from_ideal(H, corpus.function_ideal(G, K))))
            elif corpus.classical_oracle(G, "normal", K):
                out.append((K, QuantumSubgroup.from_subalgebra(H, corpus.function_subalgebra(G, K))))
    return out


@pytest.fixture(scope="session")
def s3_dqg():
    return dict(subgroup_objects("kS3", "dqg"))


# acceptance summary: one line per criterion, printed at the end of the run
ACCEPTANCE: dict = {}
SESSION = {}


def pytest_sessionstart(session):
    import time

    SESSION["start"] = time.perf_counter()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
