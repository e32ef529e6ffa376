import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ydforge import catalog  # noqa: E402
from ydforge.matched_pairs import actions_from_R  # noqa: E402
from ydforge.ydbrace import YDBraceData, transmute_from_R  # noqa: E402


@pytest.fixture(scope="session")
def h4():
    return catalog.build_sweedler()


@pytest.fixture(scope="session")
def h4_actions(h4):
    return actions_from_R(h4.hopf, h4.R)


@pytest.fixture(scope="session")
def h4_brace(h4):
    return YDBraceData(h4.hopf, *transmute_from_R(h4.hopf, h4.R))


@pytest.fixture(scope="session")
def e2():
    return catalog.build_en(2)


@pytest.fixture(scope="session")
def slq2():
    return catalog.build_slq2(4)


@pytest.fixture(scope="session")
def slq2_brace(slq2):
    return YDBraceData(slq2.hopf, *transmute_from_R(slq2.hopf, slq2.R))


@pytest.fixture(scope="session")
def suzuki_point():
    return catalog.build_suzuki(1, 1, 1, 1)


@pytest.fixture(scope="session")
def c2():
    return catalog.build_group_algebra("C2")


@pytest.fixture(scope="session")
def s3():
    return catalog.build_group_algebra("S3")


@pytest.fixture(scope="session")
def dual_s3():
    return catalog.build_dual_group_algebra("S3")


# acceptance summary --------------------------------------------------------------------

ACCEPTANCE_LINES = pytest.StashKey[list]()


@pytest.fixture()
def acceptance_line(request):
    """Record one summary line ``(number, text)`` for the acceptance section of the report."""
    lines = request.config.stash.setdefault(ACCEPTANCE_LINES, [])
    return lines.append


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_LINES, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for _, text in sorted(lines):
        terminalreporter.write_line(text)
