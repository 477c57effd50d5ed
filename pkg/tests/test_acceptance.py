"""Acceptance gate: one check per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines.
"""

import json
import subprocess
import sys
import time
from pathlib import Path

import pytest

from qptori.suites import CHECKS, check_root_systems, criterion_seed

SEED = 0
TIME_LIMITS = {1: 10.0, 2: 30.0, 9: 10.0, 11: 60.0}
GOLDEN = json.loads((Path(__file__).parent / "golden" / "tau.json").read_text())


def report(criterion, ok, detail):
    print(f"\n{'PASS' if ok else 'FAIL'} criterion {criterion:>2}: {detail}")


@pytest.mark.parametrize("criterion", sorted(CHECKS))
def test_criterion(criterion):
    start = time.perf_counter()
    if criterion == 12:
        result = check_root_systems(criterion_seed(SEED, 12), golden=GOLDEN)
    else:
        result = CHECKS[criterion](criterion_seed(SEED, criterion))
    elapsed = time.perf_counter() - start
    limit = TIME_LIMITS.get(criterion)
    in_time = limit is None or elapsed < limit
    ok = result.passed and in_time
    timing = f"{elapsed:.2f}s" + (f" (limit {limit:.0f}s)" if limit else "")
    report(criterion, ok, f"{result.title}: {result.violations} violations in {result.cases} cases, {timing}")
    assert result.cases > 0
    assert result.violations == 0, result.to_json()
    assert in_time, f"took {elapsed:.2f}s"


def test_criterion_13_cli_determinism(tmp_path):
    outs = []
    for t in range(2):
        out = tmp_path / f"suite{t}.json"
        subprocess.run(
            [sys.executable, "-m", "qptori.cli", "--suite", "acceptance", "--seed", str(SEED), "--out", str(out)],
            check=False, capture_output=True,
        )
        outs.append(out.read_bytes())
    ok = outs[0] == outs[1] and len(outs[0]) > 0
    report(13, ok, f"suite report {len(outs[0])} bytes, identical={outs[0] == outs[1]}")
    assert ok
