"""The one-heavy-color family, its discrepancy in closed form, and the
finite-size extremizers.

The family fixes one color of mass x and n colors sharing the remaining
mass equally.  Along it the discrepancy has a closed form that needs no
law derivation at all, which makes the family cheap enough to optimize,
tabulate, and compare against random search over the whole simplex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._optim import maximize_scalar
from ._parallel import map_ordered
from .dist_core import Distribution, RngSeed, _sorted_simplex_rows
from .errors import DomainError, NoSignChange
from .pair_laws import SIM_CHUNK, _discrepancy_rows, tvd

#: Grid, bracket width, and parabolic step of the family maximizer.
ARGMAX_GRID = 2048
ARGMAX_WIDTH = 1e-12
ARGMAX_STEP = 1e-5

#: Curves are sampled up to, not at, the degenerate x = 1 edge.
CURVE_EDGE = 1e-9

#: Random-search points scored per seed stream (mirrors the Monte Carlo
#: chunking, and likewise keeps results independent of the thread count;
#: shrinks with m only to bound the scoring matrices near 64 MB).
def _search_chunk(m: int) -> int:
    return min(SIM_CHUNK, max(64, (1 << 23) // m))


@dataclass(frozen=True)
class FamilyPoint:
    """Index (n, x) of the family: one color of mass x, n colors of mass
    (1 - x) / n each.  x ranges over [1/(n+1), 1); the left endpoint is the
    uniform distribution on n + 1 colors."""

    n: int
    x: float

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DomainError("family needs at least one tail color")
        if not 1.0 / (self.n + 1) <= self.x < 1.0:
            raise DomainError(
                f"head mass {self.x!r} outside [{1.0 / (self.n + 1)!r}, 1)")

    def realize(self) -> Distribution:
        tail = (1.0 - self.x) / self.n
        return Distribution((self.x,) + (tail,) * self.n)


@dataclass(frozen=True)
class OptResult:
    """Outcome of a one-dimensional maximization."""

    argmax: float
    value: float
    bracket: tuple[float, float]
    evaluations: int


@dataclass(frozen=True)
class PolySpec:
    """A polynomial (coefficients by ascending power) plus a root bracket."""

    coefficients: tuple[float, ...]
    bracket: tuple[float, float]


#: Stationarity numerator of the two-color discrepancy; its root in
#: (0.6, 0.8) is the interior maximizer (the remaining real roots are 0,
#: 1/2, and 1, none of them maxima).
TWO_COLOR_STATIONARY = PolySpec(
    (0.0, -1.0, 7.0, -18.0, 24.0, -18.0, 6.0), (0.6, 0.8))

#: The three-color (n = 2) maximizer head mass is the unique root of this
#: quintic in (0.5, 0.6).
THREE_COLOR_ARGMAX = PolySpec(
    (-5.0, 42.0, -114.0, 168.0, -153.0, 54.0), (0.5, 0.6))

#: z = twice the three-color maximal discrepancy is the unique root of
#: this quintic in (0, 0.2).
THREE_COLOR_DOUBLED_MAX = PolySpec(
    (32000.0, 168192.0, -4557600.0, 14567472.0, -821583.0, 314928.0),
    (0.0, 0.2))


def family_discrepancy(fp: FamilyPoint) -> float:
    """Discrepancy along the family, in closed form.

    D = x^2 / (x^2 + (1-x)^2 / n) - x^2 * sum_{k=0}^{n} (k+1)! C(n,k) q^k
    with q = (1-x)/n: the first term is the head's conditioned-pair weight,
    the sum is its one-at-a-time weight divided by x^2, and the head color
    is the only color whose two weights can disagree in sign, so its gap
    is the whole total variation.

    The sum is accumulated through the term ratio t_{k+1}/t_k =
    (k+2)(n-k) q / (k+1), so no factorial or binomial is ever formed.
    Terms rise to a single peak and then decay with a strictly decreasing
    ratio, so once past the peak the remainder is below t * r / (1 - r)
    and the loop stops when that bound cannot move the total.
    """
    n, x = fp.n, fp.x
    if x == 1.0 / (n + 1):
        return 0.0
    q = (1.0 - x) / n
    f2 = x * x + (1.0 - x) * (1.0 - x) / n
    t = 1.0
    s = 1.0
    for k in range(n):
        r = (k + 2) * (n - k) * q / (k + 1)
        t *= r
        s += t
        if r < 1.0 and t * r < 1e-16 * s * (1.0 - r):
            break
    return x * x / f2 - x * x * s


def family_argmax(n: int) -> OptResult:
    """Maximizer of the family discrepancy in x for fixed tail count n."""
    if n < 1:
        raise DomainError("family needs at least one tail color")
    lo = 1.0 / (n + 1)
    result = maximize_scalar(
        lambda x: family_discrepancy(FamilyPoint(n, x)), lo, 1.0,
        grid=ARGMAX_GRID, width=ARGMAX_WIDTH, step=ARGMAX_STEP)
    return OptResult(*result)


def _horner(coefficients: tuple[float, ...], x: float) -> float:
    acc = 0.0
    for c in reversed(coefficients):
        acc = acc * x + c
    return acc


def solve_poly(ps: PolySpec) -> float:
    """The root of ps inside its bracket, to near machine precision.

    Bisection narrows the sign-change interval to 1e-6 (unconditionally
    robust), then Newton polishes; a Newton step leaving the current
    interval falls back to its midpoint, so convergence never depends on
    derivative quality.  Requires a strict sign change across the bracket.
    """
    lo, hi = ps.bracket
    flo = _horner(ps.coefficients, lo)
    fhi = _horner(ps.coefficients, hi)
    if not flo * fhi < 0.0:
        raise NoSignChange(f"no sign change on [{lo!r}, {hi!r}]")
    while hi - lo > 1e-6:
        mid = 0.5 * (lo + hi)
        fm = _horner(ps.coefficients, mid)
        if fm == 0.0:
            return mid
        if (fm < 0.0) == (flo < 0.0):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    deriv = tuple(k * c for k, c in enumerate(ps.coefficients))[1:]
    x = 0.5 * (lo + hi)
    for _ in range(80):
        fx = _horner(ps.coefficients, x)
        if fx == 0.0:
            return x
        if (fx < 0.0) == (flo < 0.0):
            lo, flo = x, fx
        else:
            hi, fhi = x, fx
        dfx = _horner(deriv, x)
        nxt = x - fx / dfx if dfx != 0.0 else 0.5 * (lo + hi)
        if not lo < nxt < hi:
            nxt = 0.5 * (lo + hi)
        if abs(nxt - x) <= 1e-15 * max(1.0, abs(x)):
            return nxt
        x = nxt
    return x


def exact_two_color_extreme() -> tuple[float, float]:
    """Closed forms of the two-color maximizer and its discrepancy value."""
    x = (3.0 + math.sqrt(3.0 * (2.0 * math.sqrt(3.0) - 3.0))) / 6.0
    d = 1.0 / math.sqrt(135.0 + 78.0 * math.sqrt(3.0))
    return x, d


def simplex_search(m: int, points: int, seed: RngSeed, *,
                   threads: int | None = None,
                   ) -> tuple[Distribution, float, float]:
    """Best discrepancy over uniform random points of the sorted simplex.

    Points are drawn and scored in fixed-size chunks, one derived seed
    stream per chunk, and the per-chunk winners are reduced in chunk order
    with a (value, entries) lexicographic tie-break; the outcome is a pure
    function of (m, points, seed).  Returns the best point, its
    discrepancy, and its total variation distance to the family point
    with the same head mass.
    """
    if m < 2:
        raise DomainError("search needs at least two colors")
    if points < 1:
        raise DomainError("points must be at least 1")

    def score(block: int, count: int) -> tuple[float, tuple[float, ...]]:
        rows = _sorted_simplex_rows(m, count, seed.stream(block).generator())
        values = _discrepancy_rows(rows)
        j = int(np.argmax(values))
        return float(values[j]), tuple(rows[j].tolist())

    chunk = _search_chunk(m)
    blocks = []
    done = 0
    while done < points:
        count = min(chunk, points - done)
        blocks.append((len(blocks), count))
        done += count
    value, probs = max(map_ordered(score, blocks, threads))
    best = Distribution(probs)
    family_gap = tvd(best, FamilyPoint(m - 1, probs[0]).realize())
    return best, value, family_gap


@dataclass(frozen=True)
class FamilyCurveRow:
    """One sample of one rescaled family curve."""

    n: int
    u: float
    value: float


def figure_family_curves(n_max: int, samples_per_curve: int) -> list[FamilyCurveRow]:
    """Family discrepancy curves rescaled to a common unit domain.

    u = ((n+1) x - 1) / n maps [1/(n+1), 1) onto [0, 1), so curves of
    different n share an axis; the u = 1 edge is evaluated just inside.
    """
    if n_max < 1:
        raise DomainError("need at least one curve")
    if samples_per_curve < 2:
        raise DomainError("need at least two samples per curve")
    rows = []
    for n in range(1, n_max + 1):
        for j in range(samples_per_curve):
            u = j / (samples_per_curve - 1)
            x = min((u * n + 1.0) / (n + 1.0), 1.0 - CURVE_EDGE)
            rows.append(FamilyCurveRow(n, u, family_discrepancy(FamilyPoint(n, x))))
    return rows
