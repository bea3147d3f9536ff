"""Acceptance criteria 1-12, each at its stated tolerance.

Every criterion prints one PASS/FAIL line (also repeated in the terminal
summary). The exact-pipeline fluctuation ratio cannot reach 16; it is kept as
a strict expected failure so that it shows up if it ever starts passing.
"""

import subprocess
import sys
import time

import pytest

from invosc import validation

from conftest import ACCEPTANCE

RUNTIME_LIMITS = {1: 5.0, 2: 30.0, 8: 60.0}
UNATTAINABLE = {"sigma_ratio_n2_N0"}


def record(k, checks, elapsed=None, extra=""):
    failed = [c.name for c in checks if not c.passed]
    limit = RUNTIME_LIMITS.get(k)
    slow = limit is not None and elapsed >= limit
    ok = not failed and not slow
    timing = ""
    if elapsed is not None:
        timing = f" {elapsed:.2f}s" + (f" (limit {limit:g}s)" if limit else "")
    detail = f"{len(checks)} checks{timing}"
    if failed:
        detail += " failed: " + ", ".join(failed)
    detail += extra
    ACCEPTANCE[k] = (ok, detail)
    print(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    return failed, slow


def describe(checks):
    return "\n".join(
        f"{c.name}: expected {c.expected!r} observed {c.observed!r} ({c.kind} {c.tolerance:g})"
        for c in checks if not c.passed
    )


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6, 8, 9, 10, 11])
def test_criterion(k):
    t0 = time.perf_counter()
    checks = validation.CRITERIA[k]()
    elapsed = time.perf_counter() - t0
    failed, slow = record(k, checks, elapsed)
    assert not failed, describe(checks)
    assert not slow, f"criterion {k} took {elapsed:.1f}s"


def test_criterion_7():
    checks = validation.criterion_7()
    record(7, checks)
    rest = [c for c in checks if c.name not in UNATTAINABLE]
    assert all(c.passed for c in rest), describe(rest)


@pytest.mark.xfail(strict=True, reason="the adiabatic moments give sigma/<E>^2 = 16/9, not 16")
def test_criterion_7_exact_sigma_ratio():
    (check,) = [c for c in validation.criterion_7() if c.name == "sigma_ratio_n2_N0"]
    print(f"sigma_ratio_n2_N0: observed {check.observed:.6f}, expected 16")
    assert check.passed


def _cli(*argv):
    res = subprocess.run([sys.executable, "-m", "invosc", *argv], capture_output=True, check=False)
    return res.returncode, res.stdout


def test_criterion_12():
    checks = validation.criterion_12()
    a = _cli("validate")
    b = _cli("validate")
    sims = [_cli("simulate", "--profile", "power", "--n", "2", "--G", "50", "--steps", "600", "--oracle")
            for _ in range(2)]
    same = a == b and sims[0] == sims[1]
    record(12, checks, extra="; validate and simulate subprocess output byte-identical" if same else "; subprocess output differs")
    # validate exits 1 because of the unattainable fluctuation check
    assert a[0] == 1 and b"FAIL" in a[1]
    assert same
    assert all(c.passed for c in checks), describe(checks)
