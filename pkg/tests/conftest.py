ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for res in sorted(ACCEPTANCE_RESULTS, key=lambda r: r.num):
        terminalreporter.write_line(res.line())
    passed = sum(r.ok for r in ACCEPTANCE_RESULTS)
    terminalreporter.write_line(
        f"{passed}/{len(ACCEPTANCE_RESULTS)} criteria passed")
