import sys
from collections import defaultdict
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_RESULTS: dict[int, list[tuple[str, bool, str]]] = defaultdict(list)

CRITERIA = {
    1: "exponent/eigenvalue law",
    2: "group orders",
    3: "orbit sizes",
    4: "frame orthonormality and rotation",
    5: "closed-form component concordance",
    6: "projection symmetry and tiling edges",
    7: "plane-swap faithfulness",
    8: "root lattice inside weight lattice",
    9: "CLI output determinism",
}


@pytest.fixture
def criterion():
    """``criterion(k, label, ok, detail)`` records one acceptance check, then asserts it."""

    def record(k: int, label: str, ok: bool, detail: str = ""):
        _RESULTS[k].append((label, bool(ok), detail))
        assert ok, f"criterion {k} ({label}): {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k, name in CRITERIA.items():
        rows = _RESULTS.get(k)
        if not rows:
            tr.write_line(f"criterion {k} [{name}]: NOT RUN")
            continue
        ok = all(r[1] for r in rows)
        tr.write_line(f"criterion {k} [{name}]: {'PASS' if ok else 'FAIL'}")
        for label, good, detail in rows:
            tr.write_line(f"    {'pass' if good else 'FAIL'}  {label}: {detail}")
