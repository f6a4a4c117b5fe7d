"""The twelve acceptance criteria, each at exact equality.

A line per criterion is printed in the terminal summary and also written to
stdout as the test runs (visible with ``-s``).
"""

import json
import os
import subprocess
import sys

import pytest

from conftest import ACCEPTANCE
from iserre import suite


def record(k: int, ok: bool, text: str):
    ACCEPTANCE[k] = (ok, text)
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {text}")


@pytest.mark.parametrize("k", sorted(suite.CRITERIA))
def test_criterion(k):
    reports = suite.run_cells(suite.criterion_cells(k, seed=0))
    failed = [r for r in reports if not r.passed]
    record(k, not failed and bool(reports), f"{suite.CRITERIA[k]} ({len(reports) - len(failed)}/{len(reports)})")
    assert reports
    assert not failed, f"{failed[0].claim} {failed[0].args}: {failed[0].witness}"


def cli(*argv, env=None):
    full = dict(os.environ)
    full.pop("ISERRE_TEST_MUTATE_T", None)
    full.update(env or {})
    return subprocess.run([sys.executable, "-m", "iserre", *argv], capture_output=True, text=True, env=full)


def test_criterion_12_plumbing():
    problems = []
    first = cli("--format", "json", "--seed", "0", "all")
    second = cli("--format", "json", "--seed", "0", "all")
    if first.returncode != 0:
        problems.append(f"all exited {first.returncode}")
    if first.stdout != second.stdout or not first.stdout:
        problems.append("two runs with the same seed differ")
    else:
        doc = json.loads(first.stdout)
        if doc["summary"]["failed"] or doc["summary"]["total"] == 0:
            problems.append(f"all summary {doc['summary']}")

    mutated = cli("--format", "json", "identity", "t", "--w", "-8:8", "--u", "0:6", "--l", "0:6",
                  env={"ISERRE_TEST_MUTATE_T": "1"})
    if mutated.returncode != 1:
        problems.append(f"mutated T exited {mutated.returncode}")
    else:
        rows = json.loads(mutated.stdout)["rows"]
        bad = [r for r in rows if not r["pass"]]
        if not bad or any(r["witness"] in (None, "", "0") for r in bad):
            problems.append("mutated T failures carry no nonzero witness")

    usage = cli("identity", "t", "--w", "0:0", "--u", "0:0", "--l", "0:0")
    if usage.returncode != 2:
        problems.append(f"empty grid exited {usage.returncode}")

    record(12, not problems, "plumbing: all exits 0, mutated T exits 1 with witness, JSON byte-identical"
           + ("" if not problems else f" [{'; '.join(problems)}]"))
    assert not problems
