"""Limit discrepancy curves and their universal constants.

Along the one-heavy-color family with head mass x = c / sqrt(n), the
discrepancy converges as n grows to a function ell(c) given by a
Gaussian-damped integral; the alternating left/right variant has an
analogous two-parameter surface ell(a, b).  This module evaluates both to
a requested tolerance with adaptive quadrature, locates their maxima, and
checks finite-n family values against the limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ._optim import maximize_scalar
from .errors import DomainError, NonPositiveC, NonPositiveParameter, ToleranceNotMet
from .family_opt import FamilyPoint, OptResult, family_discrepancy

DEFAULT_TOL = 1e-12
#: Below this the Richardson error estimate is round-off, not truncation.
MIN_TOL = 1e-14

#: Both limit curves are single-peaked with their maxima well inside
#: (0, 50); beyond, they decay like 1/c^2 toward zero.
SEARCH_HI = 50.0
ARGMAX_GRID = 256
ARGMAX_WIDTH = 1e-8
ARGMAX_STEP = 1e-4
#: Coarse evaluation tolerance used during argmax grid scans only.
SCAN_TOL_FLOOR = 1e-9

#: Interval-split depth cap of the adaptive quadrature.
MAX_DEPTH = 50

#: Empirical finite-size convergence thresholds at the two tabulated
#: sizes, calibrated once against this implementation (the limit theorem
#: itself carries no usable rate).
GAP_AT_1E4 = 5e-3
GAP_AT_1E6 = 5e-4


@dataclass(frozen=True)
class QuadratureResult:
    """A quadrature value with its accumulated error estimate."""

    value: float
    abs_error_estimate: float
    subdivisions: int


@dataclass(frozen=True)
class LimitCurveSample:
    """One sample of a limit curve or surface: parameters and value."""

    params: tuple[float, ...]
    value: float


def _adaptive_simpson(f: Callable[[np.ndarray], np.ndarray], upper: float,
                      tol: float, scale: float) -> tuple[float, float, int]:
    """Integral of f over [0, upper] by adaptive Simpson subdivision.

    Panels start on a geometric ladder with the first edge at scale / 8,
    so an integrand concentrated near zero at width `scale` is always
    probed inside its support; a uniform first split cannot miss it.  All
    pending intervals advance one Richardson step per pass as flat arrays;
    accepted intervals contribute value plus correction, and the error
    budget halves with each split, keeping the total additive below tol.
    """
    first = min(scale, upper) / 8.0
    edges = [0.0, first]
    while edges[-1] < upper:
        edges.append(min(upper, edges[-1] * 2.0))
    a = np.asarray(edges[:-1])
    b = np.asarray(edges[1:])
    fa = f(a)
    fb = f(b)
    mid = 0.5 * (a + b)
    fm = f(mid)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    budget = np.full(a.shape, tol / a.size)
    total = 0.0
    err_total = 0.0
    splits = 0
    for _ in range(MAX_DEPTH):
        if a.size == 0:
            return total, err_total, splits
        m = 0.5 * (a + b)
        lm = 0.5 * (a + m)
        rm = 0.5 * (m + b)
        flm = f(lm)
        frm = f(rm)
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        err = (left + right - whole) / 15.0
        done = np.abs(err) <= budget
        total += float(np.sum(left[done] + right[done] + err[done]))
        err_total += float(np.sum(np.abs(err[done])))
        keep = ~done
        splits += int(np.count_nonzero(keep))
        a = np.concatenate([a[keep], m[keep]])
        b = np.concatenate([m[keep], b[keep]])
        fa = np.concatenate([fa[keep], fm[keep]])
        fb = np.concatenate([fm[keep], fb[keep]])
        fm = np.concatenate([flm[keep], frm[keep]])
        whole = np.concatenate([left[keep], right[keep]])
        half = budget[keep] / 2.0
        budget = np.concatenate([half, half])
    raise ToleranceNotMet(
        f"quadrature hit the {MAX_DEPTH}-split depth cap at tol {tol!r}")


def _check_tol(tol: float) -> None:
    if not tol >= MIN_TOL:
        raise DomainError(f"tolerance {tol!r} below the {MIN_TOL} floor")


def ell(c: float, tol: float = DEFAULT_TOL) -> QuadratureResult:
    """The one-sequence limit curve.

    ell(c) = c^2 / (1 + c^2) - integral over t > 0 of
    c^2 t exp(-c t - t^2 / 2) dt: the first term is the limiting
    conditioned-pair head weight, the integral the limiting one-at-a-time
    head weight.  The integrand is the second-arrival density of a rate-c
    Poisson process damped by the no-tail-pair factor exp(-t^2 / 2); past
    max(12, 12 / c) that factor alone is below 1e-31, so the tail is cut
    there.
    """
    if c <= 0.0:
        raise NonPositiveC(f"c must be positive, got {c!r}")
    _check_tol(tol)
    cc = c * c

    def integrand(t: np.ndarray) -> np.ndarray:
        return cc * t * np.exp(-c * t - 0.5 * t * t)

    value, err, splits = _adaptive_simpson(
        integrand, max(12.0, 12.0 / c), tol, scale=min(1.0, 1.0 / c))
    return QuadratureResult(cc / (1.0 + cc) - value, err, splits)


def ell_argmax(tol: float = DEFAULT_TOL) -> OptResult:
    """Location and value of the maximum of ell."""
    if not tol >= 1e-12:
        raise DomainError(f"argmax tolerance {tol!r} below the 1e-12 floor")
    scan_tol = max(1e4 * tol, SCAN_TOL_FLOOR)
    result = maximize_scalar(
        lambda c: ell(c, tol).value, 0.0, SEARCH_HI,
        grid=ARGMAX_GRID, width=ARGMAX_WIDTH, step=ARGMAX_STEP,
        scan_f=lambda c: ell(c, scan_tol).value)
    return OptResult(*result)


def ell_shoes(a: float, b: float, tol: float = DEFAULT_TOL) -> QuadratureResult:
    """The alternating-pairs limit surface.

    ell(a, b) = a b / (1 + a b) - integral over t > 0 of
    (a e^{-a t} + b e^{-b t} - (a + b) e^{-(a+b) t}) e^{-t^2} dt.
    Symmetric in (a, b) by construction: the integrand is literally
    unchanged under swapping them, so no symmetrization step is needed.
    """
    if a <= 0.0 or b <= 0.0:
        raise NonPositiveParameter(f"parameters must be positive, got {a!r}, {b!r}")
    _check_tol(tol)

    def integrand(t: np.ndarray) -> np.ndarray:
        return (a * np.exp(-a * t) + b * np.exp(-b * t)
                - (a + b) * np.exp(-(a + b) * t)) * np.exp(-t * t)

    small = min(a, b)
    value, err, splits = _adaptive_simpson(
        integrand, max(12.0, 12.0 / small), tol, scale=min(1.0, 1.0 / (a + b)))
    ab = a * b
    return QuadratureResult(ab / (1.0 + ab) - value, err, splits)


def ell_shoes_diag_argmax(tol: float = DEFAULT_TOL) -> OptResult:
    """Maximum of the alternating-pairs surface along its diagonal a = b."""
    if not tol >= 1e-12:
        raise DomainError(f"argmax tolerance {tol!r} below the 1e-12 floor")
    scan_tol = max(1e4 * tol, SCAN_TOL_FLOOR)
    result = maximize_scalar(
        lambda a: ell_shoes(a, a, tol).value, 0.0, SEARCH_HI,
        grid=ARGMAX_GRID, width=ARGMAX_WIDTH, step=ARGMAX_STEP,
        scan_f=lambda a: ell_shoes(a, a, scan_tol).value)
    return OptResult(*result)


@dataclass(frozen=True)
class ConvergenceRow:
    """Family discrepancy at head mass c / sqrt(n) and its gap to ell(c)."""

    n: int
    value: float
    gap: float


def convergence_check(c: float, n_list: Sequence[int]) -> list[ConvergenceRow]:
    """Finite-size family values against the limit, one row per size.

    The family point exists only when n exceeds both 1 / c^2 (head above
    the uniform floor) and c^2 (head mass below one); sizes outside that
    range are domain errors, not silently skipped rows.
    """
    if c <= 0.0:
        raise NonPositiveC(f"c must be positive, got {c!r}")
    limit = ell(c).value
    rows = []
    for n in n_list:
        size = int(n)
        if size * c * c <= 1.0 or size <= c * c:
            raise DomainError(f"size {size} leaves the family domain for c = {c!r}")
        value = family_discrepancy(FamilyPoint(size, c / math.sqrt(size)))
        rows.append(ConvergenceRow(size, value, abs(value - limit)))
    return rows
