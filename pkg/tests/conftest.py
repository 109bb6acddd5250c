from hypothesis import settings

# the sandbox pins everything to one contended core, so per-example wall-clock
# deadlines flake on cold caches; example counts stay at their defaults
settings.register_profile("single-core", deadline=None)
settings.load_profile("single-core")

# acceptance criteria results recorded by tests/test_acceptance.py;
# echoed after the run so the one-line verdicts survive output capture
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
