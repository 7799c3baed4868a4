import pytest

_LINES: list[tuple[str, bool, bool, str]] = []


class AcceptanceLog:
    def record(self, label: str, passed: bool, detail: str = "", gating: bool = True) -> None:
        _LINES.append((label, bool(passed), gating, detail))


@pytest.fixture(scope="session")
def acceptance() -> AcceptanceLog:
    return AcceptanceLog()


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, gating, detail in sorted(_LINES, key=lambda line: int(line[0].split()[0][2:])):
        status = "PASS" if passed else ("FAIL" if gating else "MISS")
        terminalreporter.write_line(f"[{status}] {label}  {detail}")
