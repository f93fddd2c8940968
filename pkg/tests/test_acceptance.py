"""Acceptance gate: every contract criterion at its stated tolerance.

Heavy shared artifacts (the solved twindragon width, the million-point
sampling oracle) are built once per session.  Each test prints its own
pass/fail line so a verbose run doubles as the acceptance report.
"""

import pytest

from fractalhull import acceptance


@pytest.fixture(scope="session")
def workspace():
    return acceptance.Workspace()


def _run(criterion, workspace):
    result = criterion(workspace)
    print(f"{'PASS' if result.passed else 'FAIL'} {result.name}: "
          f"{result.detail} [{result.seconds:.1f}s]")
    assert result.passed, f"{result.name}: {result.detail}"


def test_criterion_1_contraction_rate(workspace):
    _run(acceptance.criterion_1, workspace)


def test_criterion_2_twindragon_closed_form(workspace):
    _run(acceptance.criterion_2, workspace)


def test_criterion_3_exact_polygon_metrics(workspace):
    _run(acceptance.criterion_3, workspace)


def test_criterion_4_perimeter_angle_independence(workspace):
    _run(acceptance.criterion_4, workspace)


def test_criterion_5_degenerate_real_base(workspace):
    _run(acceptance.criterion_5, workspace)


def test_criterion_6_oracle_containment_tightness(workspace):
    _run(acceptance.criterion_6, workspace)


def test_criterion_7_near1_soundness(workspace):
    _run(acceptance.criterion_7, workspace)


def test_criterion_8_inequality_audit(workspace):
    _run(acceptance.criterion_8, workspace)


def test_criterion_9_equal_matrix_series(workspace):
    _run(acceptance.criterion_9, workspace)
