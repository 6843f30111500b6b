"""Collects one verdict line per acceptance criterion for the terminal summary."""

LINES: dict = {}


def record(criterion: int, passed: bool, detail: str, status: str | None = None):
    status = status or ("PASS" if passed else "FAIL")
    LINES[criterion] = f"criterion {criterion}: {status}  {detail}"
    print(LINES[criterion])


def report():
    return [LINES[k] for k in sorted(LINES)]
