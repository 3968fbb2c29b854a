"""Acceptance gates, one test per criterion, each printing PASS/FAIL.

Heavy: enumerates orbit balls up to cutoff 2000 (several million elements
per run).  With the compiled kernel the whole module takes a couple of
minutes; the pure fallback works but is far slower.  Run with ``-s`` to
see the per-criterion lines.
"""

import pytest

from multicurves.acceptance import GATES, Workspace, run_gate


@pytest.fixture(scope="module")
def workspace():
    return Workspace()


@pytest.mark.parametrize("gate", GATES, ids=[f"criterion-{g.index}" for g in GATES])
def test_criterion(gate, workspace):
    result = run_gate(gate, workspace)
    print(result.line())
    assert result.passed, result.detail
