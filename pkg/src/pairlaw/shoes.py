"""Alternating left/right pair collection.

Left objects follow distribution p, right objects follow q, and draws
alternate left, right, left, ...  A pair is a left and a right object of
the same color; the one-at-a-time procedure stops at the first draw that
completes such a pair.  Repeats on one side are wasted draws, which makes
the sequential law genuinely different from the single-sequence case even
when p equals q, and lets the discrepancy between the two pair laws climb
arbitrarily close to one along a suitable family of sources.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._parallel import map_ordered
from .dist_core import Distribution, RngSeed, _alias_draw, _alias_tables
from .errors import (DomainError, ExcessTruncation, IndexMismatch, InvalidPair,
                     NTooSmall, TooManyColors)
from .pair_laws import M1, M2, PairLaw, SimReport, _chunk_rows, \
    _report_from_counts, tvd

#: The exact solve walks all (left seen, right seen) set pairs: 3^m of
#: them, each with a two-state turn cycle.
SHOES_EXACT_MAX_COLORS = 10

#: Per-walk survival probability the default horizon is engineered for;
#: far below TRUNCATION_FRACTION so expected truncations stay near zero at
#: any realistic trial count.
HORIZON_SURVIVAL = 1e-12

#: A truncated fraction at or above this fails the run rather than biasing
#: the estimate quietly.
TRUNCATION_FRACTION = 1e-6


@dataclass(frozen=True)
class ShoePair:
    """A left distribution and a right distribution over one color set.

    At least one color must have positive mass on both sides, or no pair
    can ever be completed.
    """

    left: Distribution
    right: Distribution

    def __post_init__(self) -> None:
        if len(self.left) != len(self.right):
            raise IndexMismatch(
                f"left has {len(self.left)} colors, right {len(self.right)}")
        if shoes_match_probability(self) == 0.0:
            raise InvalidPair("left and right supports are disjoint")

    def __len__(self) -> int:
        return len(self.left)


@dataclass(frozen=True)
class AbsorptionState:
    """A state of the alternating walk: colors seen on each side, and whose
    turn is next.  Sides are disjoint (an overlap means already absorbed)."""

    left_seen: frozenset[int]
    right_seen: frozenset[int]
    next_side: str

    def __post_init__(self) -> None:
        if self.next_side not in ("left", "right"):
            raise DomainError(f"unknown side {self.next_side!r}")
        if self.left_seen & self.right_seen:
            raise DomainError("overlapping sides describe an absorbed walk")


def shoes_match_probability(sp: ShoePair) -> float:
    """Chance that one left draw and one right draw agree in color."""
    return math.fsum(p * q for p, q in zip(sp.left.probs, sp.right.probs))


def shoes_m1(sp: ShoePair) -> PairLaw:
    """Law of the pair color when left/right rounds are drawn memorylessly:
    color i gets weight p_i q_i, normalized by the match probability."""
    f2 = shoes_match_probability(sp)
    return PairLaw(M1, tuple(p * q / f2 for p, q in
                             zip(sp.left.probs, sp.right.probs)))


def shoes_m2_exact(sp: ShoePair) -> PairLaw:
    """Exact law of the first completed pair color under alternation.

    Dynamic programming over (left colors seen, right colors seen).  A
    draw repeating a color on its own side changes nothing but whose turn
    it is, so each set pair carries a two-state cycle whose total
    occupation has a closed form: with alpha = p-mass of the left-seen
    set, beta = q-mass of the right-seen set, and inflows I_L (arriving on
    the left's turn) and I_R, the occupations are u = (I_L + beta I_R) /
    (1 - alpha beta) and v = I_R + alpha u.  alpha beta < 1 whenever some
    color has mass on both sides, which the pair invariant guarantees, so
    no weight escapes into an endless cycle.  States advance by total
    colors seen; 3^m set pairs, hence the size cap.
    """
    m = len(sp)
    if m > SHOES_EXACT_MAX_COLORS:
        raise TooManyColors(f"exact solve capped at {SHOES_EXACT_MAX_COLORS} colors")
    p = sp.left.probs
    q = sp.right.probs
    size = 1 << m
    pmass = [0.0] * size
    qmass = [0.0] * size
    for mask in range(1, size):
        low = mask & -mask
        rest = mask ^ low
        i = low.bit_length() - 1
        pmass[mask] = pmass[rest] + p[i]
        qmass[mask] = qmass[rest] + q[i]
    absorb = [0.0] * m
    level: dict[tuple[int, int], list[float]] = {(0, 0): [1.0, 0.0]}
    for _ in range(2 * m + 1):
        nxt: dict[tuple[int, int], list[float]] = {}
        for (lmask, rmask), (in_left, in_right) in level.items():
            alpha = pmass[lmask]
            beta = qmass[rmask]
            u = (in_left + beta * in_right) / (1.0 - alpha * beta)
            v = in_right + alpha * u
            for c in range(m):
                bit = 1 << c
                flow = u * p[c]
                if flow > 0.0:
                    if rmask & bit:
                        absorb[c] += flow
                    elif not lmask & bit:
                        nxt.setdefault((lmask | bit, rmask), [0.0, 0.0])[1] += flow
                flow = v * q[c]
                if flow > 0.0:
                    if lmask & bit:
                        absorb[c] += flow
                    elif not rmask & bit:
                        nxt.setdefault((lmask, rmask | bit), [0.0, 0.0])[0] += flow
        level = nxt
        if not level:
            break
    return PairLaw(M2, tuple(absorb))


def _default_horizon(sp: ShoePair) -> int:
    """Step cap with per-walk survival below HORIZON_SURVIVAL, by union
    bound.

    Take the color i maximizing s = min(p_i, q_i); s > 0 because the pair
    is valid.  Once both sides have drawn i, the walk has absorbed (the
    later of the two draws completes a pair, if nothing did earlier), and
    within 2k steps each side gets k draws, so P(still running) is at most
    2 (1 - s)^k.  A scale like 1 / f_2 alone would miss the coupon-wait of
    pairs whose heavy colors sit on opposite sides.
    """
    s = max(min(p, q) for p, q in zip(sp.left.probs, sp.right.probs))
    k = math.ceil(math.log(2.0 / HORIZON_SURVIVAL) / s)
    return 2 * k + 2


def _simulate_chunk(tables: tuple, m: int, g: np.random.Generator,
                    count: int, max_steps: int) -> tuple[np.ndarray, int]:
    """Absorption counts and truncation count for one chunk of walks.

    All active walks are at the same step, so one side's tables serve the
    whole batch each iteration; a row absorbs when its drawn color was
    already seen on the opposite side.
    """
    l_accept, l_alias, r_accept, r_alias = tables
    seen_left = np.zeros((count, m), dtype=bool)
    seen_right = np.zeros((count, m), dtype=bool)
    rows = np.arange(count)
    counts = np.zeros(m, dtype=np.int64)
    for step in range(max_steps):
        if rows.size == 0:
            break
        if step % 2 == 0:
            c = _alias_draw(l_accept, l_alias, g, rows.size)
            opposite, own = seen_right, seen_left
        else:
            c = _alias_draw(r_accept, r_alias, g, rows.size)
            opposite, own = seen_left, seen_right
        hit = opposite[rows, c]
        if hit.any():
            counts += np.bincount(c[hit], minlength=m)
            rows = rows[~hit]
            c = c[~hit]
        own[rows, c] = True
    return counts, int(rows.size)


def shoes_m2_simulate(sp: ShoePair, trials: int, seed: RngSeed,
                      max_steps: int | None = None, *,
                      threads: int | None = None) -> SimReport:
    """Monte Carlo of the alternating procedure.

    Chunked over derived seed streams exactly like the one-sequence
    simulator, so results depend only on (pair, trials, seed, max_steps).
    Walks that outlive max_steps (default: the union-bound horizon, per-walk
    survival below HORIZON_SURVIVAL) are dropped from the tally and counted;
    a truncated fraction reaching TRUNCATION_FRACTION raises
    ExcessTruncation, since truncation preferentially discards
    slow-absorbing colors.
    """
    if trials < 1:
        raise DomainError("trials must be at least 1")
    if max_steps is None:
        max_steps = _default_horizon(sp)
    if max_steps < 2:
        raise DomainError("need at least two steps to complete a pair")
    m = len(sp)
    tables = _alias_tables(sp.left.probs) + _alias_tables(sp.right.probs)

    def run(block: int, count: int) -> tuple[np.ndarray, int]:
        return _simulate_chunk(tables, m, seed.stream(block).generator(),
                               count, max_steps)

    chunk = _chunk_rows(m)
    blocks = []
    done = 0
    while done < trials:
        count = min(chunk, trials - done)
        blocks.append((len(blocks), count))
        done += count
    counts = np.zeros(m, dtype=np.int64)
    truncated = 0
    for chunk_counts, chunk_trunc in map_ordered(run, blocks, threads):
        counts += chunk_counts
        truncated += chunk_trunc
    if truncated >= TRUNCATION_FRACTION * trials:
        raise ExcessTruncation(
            f"{truncated} of {trials} walks ran past {max_steps} steps")
    return _report_from_counts(counts, seed.seed, truncated=truncated)


@dataclass(frozen=True)
class ValueWithError:
    """A point estimate and a one-sigma error bound (zero when exact)."""

    value: float
    error: float


def shoes_discrepancy(sp: ShoePair, exact_if_small: bool = True,
                      trials: int = 1_000_000, seed: RngSeed | None = None,
                      max_steps: int | None = None, *,
                      threads: int | None = None) -> ValueWithError:
    """Total variation distance between the two alternating pair laws.

    Solved exactly when the color count allows it and exact_if_small is
    left on; otherwise estimated by simulation, which needs a seed.  The
    error field propagates the per-color binomial variances through the
    half-L1 form (the deviations are negatively correlated, so this is an
    upper bound on the one-sigma error).
    """
    m1 = shoes_m1(sp)
    if exact_if_small and len(sp) <= SHOES_EXACT_MAX_COLORS:
        return ValueWithError(tvd(m1, shoes_m2_exact(sp)), 0.0)
    if seed is None:
        raise DomainError("the simulation path needs a seed")
    report = shoes_m2_simulate(sp, trials, seed, max_steps, threads=threads)
    spread = math.fsum(s * s for s in report.std_errors)
    return ValueWithError(tvd(m1, report), 0.5 * math.sqrt(spread))


def witness_family(n: int) -> ShoePair:
    """Head-heavy pair pushing the alternating discrepancy toward one.

    Both sides put most mass on n equal tail colors; the left head mass
    n^(-1/4) dwarfs the right head mass n^(-2/3), so a conditioned pair is
    almost surely the head color, while a sequential walk almost surely
    completes a tail pair first (the head needs a right-side head draw,
    which almost never arrives before some tail collision).
    """
    if n < 16:
        raise NTooSmall("need n of at least 16 to keep both head masses small")
    a = n ** -0.25
    b = n ** (-2.0 / 3.0)
    left = Distribution((a,) + ((1.0 - a) / n,) * n)
    right = Distribution((b,) + ((1.0 - b) / n,) * n)
    return ShoePair(left, right)


@dataclass(frozen=True)
class TrendRow:
    """Witness discrepancy at one family size."""

    n: int
    value: float
    error: float


def sup_one_demo(n_list: Sequence[int], trials: int, seed: RngSeed, *,
                 threads: int | None = None) -> list[TrendRow]:
    """Witness-family discrepancy along a ladder of sizes.

    Each size gets its own derived seed stream; values climb toward one as
    n grows, exhibiting the supremum (never attained at any finite size).
    """
    rows = []
    for j, n in enumerate(n_list):
        est = shoes_discrepancy(witness_family(int(n)), exact_if_small=False,
                                trials=trials, seed=seed.stream(j),
                                threads=threads)
        rows.append(TrendRow(int(n), est.value, est.error))
    return rows
