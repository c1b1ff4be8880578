"""Collects one verdict line per acceptance criterion for the terminal summary."""

import time

RESULTS = {}
SESSION_START = time.perf_counter()


def record(num, title, ok, detail):
    RESULTS[num] = (title, bool(ok), detail)
    print(line(num))


def line(num):
    title, ok, detail = RESULTS[num]
    return f"[criterion {num}] {'PASS' if ok else 'FAIL'} {title}: {detail}"
