ACCEPTANCE_LINES: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda s: (int(s.rstrip("b")), s)):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
