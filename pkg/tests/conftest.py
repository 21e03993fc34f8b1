import pytest

from homgadget.classical import hamming_code, ogsc_code, repetition_code
from homgadget.complexes import hgp, homological_3d, homological_4d


@pytest.fixture(scope="session")
def rep3():
    return repetition_code(3)


@pytest.fixture(scope="session")
def surface13(rep3):
    return hgp(rep3, rep3)


@pytest.fixture(scope="session")
def hamming_hgp():
    C = hamming_code()
    return hgp(C, C)


@pytest.fixture(scope="session")
def ogsc117():
    C = ogsc_code("ogsc_9_3_4")
    return hgp(C, C)


@pytest.fixture(scope="session")
def code3d(rep3):
    return homological_3d(rep3, rep3, rep3)


@pytest.fixture(scope="session")
def code4d(rep3):
    return homological_4d([rep3] * 4)


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
