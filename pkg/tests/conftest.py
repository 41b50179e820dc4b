import _acclog


def pytest_terminal_summary(terminalreporter):
    if _acclog.lines:
        terminalreporter.section("acceptance criteria")
        for line in _acclog.lines:
            terminalreporter.write_line(line)
