"""Shared test plumbing: collects acceptance-criterion verdict lines
and echoes them in the terminal summary so they are visible even with
output capture enabled."""

acceptance_lines: list[str] = []


def record_criterion(num: int, ok: bool, desc: str) -> bool:
    line = f"ACCEPTANCE CRITERION {num}: {'PASS' if ok else 'FAIL'} - {desc}"
    acceptance_lines.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if acceptance_lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(acceptance_lines):
            terminalreporter.write_line(line)
