import pytest
from hypothesis import HealthCheck, settings

from hhtate.hochschild import diagonal_pairing, extreme_pairing
from hhtate.strands import antipodal_pmc
from hhtate.tate import TateStructure

settings.register_profile(
    "repro",
    derandomize=True,
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repro")


@pytest.fixture(scope="session")
def genus2_tate():
    return TateStructure(diagonal_pairing(antipodal_pmc(2), 0))


@pytest.fixture(scope="session")
def genus2_chain(genus2_tate):
    from hhtate.tate import run_lift_chain

    return run_lift_chain(genus2_tate)


@pytest.fixture(scope="session")
def extreme_tate():
    return {k: TateStructure(extreme_pairing(k)) for k in (1, 2)}


@pytest.fixture(scope="session")
def genus1_tate():
    return TateStructure(diagonal_pairing(antipodal_pmc(1), 0))


@pytest.fixture(scope="session")
def matched_axioms():
    """Axiom reports for every weight of the genus-1 and genus-2 antipodal algebras."""
    from hhtate.algebra import check_dga_axioms
    from hhtate.strands import matched_algebra

    out = {}
    for k in (1, 2):
        z = antipodal_pmc(k)
        for w in range(-k, k + 1):
            out[k, w] = check_dga_axioms(matched_algebra(z, w))
    return out


# criterion lines printed by test_acceptance, repeated in the terminal summary
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])


@pytest.fixture
def report_criterion(capsys):
    """Print 'criterion N: PASS|FAIL detail' and keep it for the summary."""

    def record(n: int, passed: bool, detail: str) -> None:
        line = f"criterion {n}: {'PASS' if passed else 'FAIL'} {detail}"
        ACCEPTANCE_LINES[n] = line
        with capsys.disabled():
            print("\n" + line)

    return record


SLOW_FIXTURES = {"genus2_tate", "genus2_chain", "matched_axioms"}


def pytest_collection_modifyitems(items):
    for item in items:
        if SLOW_FIXTURES & set(getattr(item, "fixturenames", ())):
            item.add_marker(pytest.mark.slow)
