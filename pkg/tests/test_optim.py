"""The shared scalar maximizer: bracketing, refinement, the tie guard."""

import pytest

from pairlaw import UnimodalityError
from pairlaw._optim import maximize_scalar


def test_quadratic_is_nailed():
    argmax, value, bracket, evals = maximize_scalar(
        lambda x: -(x - 2.0) ** 2, 0.0, 5.0, grid=64, width=1e-12, step=1e-5)
    assert abs(argmax - 2.0) < 1e-8
    assert abs(value) < 1e-16
    assert bracket[0] <= argmax <= bracket[1]
    assert evals >= 64


def test_flat_top_quartic():
    # fourth-order top: value comparisons alone bottom out around eps^(1/4),
    # the parabolic polish must not make things worse
    argmax, _, _, _ = maximize_scalar(
        lambda x: -(x - 1.0) ** 4, 0.0, 3.0, grid=64, width=1e-12, step=1e-5)
    assert abs(argmax - 1.0) < 1e-3


def test_equal_twin_peaks_refused():
    f = lambda x: -min(abs(x - 0.6), abs(x - 1.4)) ** 2
    with pytest.raises(UnimodalityError):
        maximize_scalar(f, 0.0, 2.0, grid=5, width=1e-10, step=1e-4)


def test_lopsided_twin_peaks_accepted():
    # a clearly lower second hump is not a tie; the guard must stay quiet
    f = lambda x: max(-(x - 0.6) ** 2, -0.5 - (x - 1.4) ** 2)
    argmax, _, _, _ = maximize_scalar(f, 0.0, 2.0, grid=64,
                                      width=1e-10, step=1e-4)
    assert abs(argmax - 0.6) < 1e-6


def test_scan_function_is_used_for_the_scan_only():
    scan_calls = []
    fine_calls = []

    def coarse(x):
        scan_calls.append(x)
        return -(x - 2.0) ** 2

    def fine(x):
        fine_calls.append(x)
        return -(x - 2.0) ** 2

    argmax, _, _, evals = maximize_scalar(
        fine, 0.0, 5.0, grid=32, width=1e-10, step=1e-5, scan_f=coarse)
    assert len(scan_calls) == 32
    assert all(x not in scan_calls for x in fine_calls)
    assert evals == len(scan_calls) + len(fine_calls)
    assert abs(argmax - 2.0) < 1e-8


def test_maximum_at_the_edge():
    # no polish room near the boundary; the bracket end is the answer
    argmax, value, _, _ = maximize_scalar(
        lambda x: -x, 0.0, 1.0, grid=16, width=1e-10, step=1e-2)
    assert argmax < 0.05
    assert value == -argmax
