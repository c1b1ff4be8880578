import os
import time

os.environ.setdefault("QDELTA_THREADS", "1")

import acceptance_log  # noqa: E402

SUITE_LIMIT_S = 120.0


def pytest_terminal_summary(terminalreporter):
    res = acceptance_log.RESULTS
    if not res:
        return
    elapsed = time.perf_counter() - acceptance_log.SESSION_START
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(res, key=str):
        tr.write_line(acceptance_log.line(num))
    ok = elapsed < SUITE_LIMIT_S
    tr.write_line(f"[criterion 9 runtime] {'PASS' if ok else 'FAIL'} full session wall time "
                  f"{elapsed:.1f} s (limit {SUITE_LIMIT_S:.0f} s)")
