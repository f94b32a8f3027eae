import pytest

_LINES: list[str] = []


class Criterion:
    """Records one PASS/FAIL line per acceptance check and prints them at the end."""

    def check(self, label: str, ok: bool, detail: str = "") -> None:
        line = f"{'PASS' if ok else 'FAIL'} {label}" + (f" ({detail})" if detail else "")
        _LINES.append(line)
        print(line)
        assert ok, line


@pytest.fixture
def criterion() -> Criterion:
    return Criterion()


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
