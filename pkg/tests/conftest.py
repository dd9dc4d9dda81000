import pytest

from fdcell.network import NetworkConfig

# criterion id -> list of (part, passed, detail), filled by the acceptance suite
ACCEPTANCE = {}


@pytest.fixture
def cfg211():
    return NetworkConfig(2, 1, 1)


@pytest.fixture
def cfg222():
    return NetworkConfig(2, 2, 2)


class Recorder:
    """Collects acceptance outcomes of one test; ``verify`` asserts them all."""

    def __init__(self, capsys):
        self._capsys = capsys
        self._failed = []

    def __call__(self, criterion, part, passed, detail=""):
        ACCEPTANCE.setdefault(criterion, []).append((part, bool(passed), detail))
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {criterion} ({part}): {detail}"
        with self._capsys.disabled():
            print("\n" + line)
        if not passed:
            self._failed.append(line)

    def verify(self):
        assert not self._failed, "\n".join(self._failed)


@pytest.fixture
def record(capsys):
    return Recorder(capsys)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(ACCEPTANCE, key=lambda c: (int(str(c).split("-")[0]), str(c))):
        parts = ACCEPTANCE[criterion]
        ok = all(p for _, p, _ in parts)
        failed = [name for name, p, _ in parts if not p]
        note = "" if ok else f"  failing: {', '.join(failed)}"
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {criterion}{note}")
