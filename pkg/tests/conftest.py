import acceptance_log


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not acceptance_log.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(acceptance_log.RESULTS):
        label, ok = acceptance_log.RESULTS[number]
        terminalreporter.write_line(
            f"criterion {number:2d} [{'PASS' if ok else 'FAIL'}] {label}"
        )
