ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        name, status, witness = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2} {status} {name}")
        for w in witness:
            terminalreporter.write_line(f"    {w}")
