"""The two pair-color laws of a matching experiment and their discrepancy.

Method 1 draws two objects at a time, with no memory, discarding mismatched
pairs until a draw matches; Method 2 draws one object at a time, keeping
everything, until some color has been seen twice.  Both procedures stop at
a same-color pair and so induce a law on colors, and the two laws disagree
for every non-uniform source.  This module computes both laws exactly,
their total variation distance, expected draw-count statistics, and two
independent verification routes: an exhaustive absorption solve over
subsets of seen colors, and seeded Monte Carlo.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ._parallel import map_ordered
from .dist_core import Distribution, _alias_draw, _alias_tables
from .errors import DomainError, IndexMismatch, ToleranceNotMet, TooManyColors

M1 = "m1"
M2 = "m2"

#: The exhaustive solve walks all 2^m subsets of colors; past this size the
#: reachability table no longer fits in a sensible footprint.
ORACLE_MAX_COLORS = 20

#: Monte Carlo trials per independent seed stream.  Fixed, never derived
#: from the thread count, so a (seed, trials) pair fully determines every
#: simulation result.
SIM_CHUNK = 1 << 16


def _chunk_rows(m: int) -> int:
    """Trials per seed stream for an m-color walk.

    Shrinks with m only to bound the seen-color matrix near 64 MB; a pure
    function of m, so chunk boundaries (and hence results) stay identical
    across thread counts.
    """
    return min(SIM_CHUNK, max(64, (1 << 26) // (2 * m)))

#: Derived laws must renormalize to one at least this well.
LAW_SUM_TOL = 1e-10

#: Agreement demanded between the three equivalent total-variation forms.
TVD_FORM_TOL = 1e-12


@dataclass(frozen=True)
class PairLaw:
    """A probability law over colors produced by one of the two methods."""

    method: str
    probs: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.method not in (M1, M2):
            raise DomainError(f"unknown method {self.method!r}")
        total = math.fsum(self.probs)
        if abs(total - 1.0) > LAW_SUM_TOL or min(self.probs) < 0.0:
            raise DomainError(f"law entries sum to {total!r}; derivation bug")

    def __len__(self) -> int:
        return len(self.probs)


@dataclass(frozen=True)
class DrawStats:
    """Expected draw counts of the two procedures on one source."""

    expected_draws_m2: float
    expected_pairs_m1: float


@dataclass(frozen=True)
class SimReport:
    """Monte Carlo estimate of a pair law.

    trials counts the runs that actually absorbed (and were tallied);
    truncated counts runs cut off at the step horizon.  estimated_probs
    sums to 1.0 exactly, and std_errors are the per-color binomial
    sqrt(q * (1 - q) / trials) at the estimated q.
    """

    estimated_probs: tuple[float, ...]
    trials: int
    seed: int
    std_errors: tuple[float, ...]
    truncated: int = field(default=0)


def match_probability(d: Distribution) -> float:
    """f_2 = sum of squared entries: the chance one two-draw round matches."""
    return math.fsum(p * p for p in d.probs)


def derive_m1(d: Distribution) -> PairLaw:
    """Law of the pair color under memoryless two-at-a-time draws.

    Conditioning a single round on "both draws agree" weights color i by
    p_i squared; f_2 normalizes.
    """
    f2 = match_probability(d)
    return PairLaw(M1, tuple(p * p / f2 for p in d.probs))


def _scaled_elem_sym(probs: Sequence[float]) -> list[float]:
    """E_k = k! * e_k for the whole vector.

    E_k is the probability that the first k one-at-a-time draws are all
    distinct; working in this scaling keeps every table entry in [0, 1],
    so neither k! overflow nor e_k underflow can occur even for thousands
    of colors.  The descending-k update absorbs one entry per pass.
    """
    m = len(probs)
    E = [0.0] * (m + 1)
    E[0] = 1.0
    for seen, p in enumerate(probs):
        for k in range(min(seen + 1, m), 0, -1):
            E[k] += k * p * E[k - 1]
    return E


def derive_m2(d: Distribution) -> PairLaw:
    """Law of the first color completed under one-at-a-time draws.

    P(Y = i) = p_i^2 * sum_k (k+1)! e_k(p with entry i removed): the k-th
    summand is the chance the first k draws are distinct, avoid color i,
    and draw k+1 then repeats one earlier color, with the repeat being i.

    All arithmetic stays in the scaled space A_k = k! e'_k, where each
    summand (k+1) A_k is at most k+1.  The leave-one-out downdate runs
    forward, A_k = E_k - k p_i A_{k-1}, only while the subtracted term
    stays below E_k / 2, and backward, A_{k-1} = (E_k - A_k) / (k p_i),
    beyond that point.  The subtracted-term ratio is monotone in k (the
    scaled table inherits log-concavity from Newton's inequalities), so
    the two regimes are contiguous and each recurrence runs only where it
    is a contraction; the backward sweep even self-corrects when E_m has
    underflowed to zero.
    """
    m = len(d)
    E = _scaled_elem_sym(d.probs)
    out = []
    for i, pi in enumerate(d.probs):
        if pi == 0.0:
            out.append(0.0)
            continue
        A = [0.0] * m
        A[0] = 1.0
        switch = m
        for k in range(1, m):
            t = k * pi * A[k - 1]
            if t > 0.5 * E[k]:
                switch = k
                break
            A[k] = E[k] - t
        if switch < m:
            back = E[m] / (m * pi)
            for k in range(m - 1, switch - 1, -1):
                A[k] = back
                back = (E[k] - back) / (k * pi)
        weight = 0.0
        for k in range(m - 1, -1, -1):
            weight += (k + 1) * A[k]
        out.append(pi * pi * weight)
    return PairLaw(M2, tuple(out))


def m2_oracle_exact(d: Distribution) -> PairLaw:
    """The one-at-a-time law by exhaustive absorption over seen-color sets.

    The state is the set S of colors seen so far (each exactly once, or the
    walk would have stopped).  Drawing c in S absorbs with pair color c;
    drawing c outside S moves to S + {c}.  The reach weight R[S], the
    probability of ever visiting S, satisfies R[S] = sum over i in S of
    R[S - i] * p_i and is filled level by level in subset size; absorption
    at color i is then p_i * sum of R[S] over S containing i.  Exponential
    in m by construction, which is the point: it shares no code path with
    derive_m2.
    """
    m = len(d)
    if m > ORACLE_MAX_COLORS:
        raise TooManyColors(f"exhaustive solve capped at {ORACLE_MAX_COLORS} colors")
    p = d.as_array()
    size = 1 << m
    reach = np.zeros(size)
    reach[0] = 1.0
    idx = np.arange(size)
    pop = np.zeros(size, dtype=np.int64)
    for i in range(m):
        pop += (idx >> i) & 1
    levels = [idx[pop == k] for k in range(m + 1)]
    for k in range(m):
        masks = levels[k]
        for i in range(m):
            bit = 1 << i
            src = masks[(masks & bit) == 0]
            np.add.at(reach, src | bit, reach[src] * p[i])
    probs = tuple(float(p[i] * reach[(idx >> i) & 1 == 1].sum()) for i in range(m))
    return PairLaw(M2, probs)


def _simulate_chunk(accept: np.ndarray, alias: np.ndarray, m: int,
                    g: np.random.Generator, count: int) -> np.ndarray:
    """Absorption counts for one chunk of one-at-a-time walks."""
    seen = np.zeros((count, m), dtype=bool)
    rows = np.arange(count)
    counts = np.zeros(m, dtype=np.int64)
    # every walk stops within m + 1 draws: m + 1 objects force a repeat
    for _ in range(m + 1):
        if rows.size == 0:
            break
        c = _alias_draw(accept, alias, g, rows.size)
        hit = seen[rows, c]
        if hit.any():
            counts += np.bincount(c[hit], minlength=m)
            rows = rows[~hit]
            c = c[~hit]
        seen[rows, c] = True
    return counts


def m2_simulate(d: Distribution, trials: int, seed, *, threads: int | None = None) -> SimReport:
    """Monte Carlo of the one-at-a-time procedure.

    Trials are split into SIM_CHUNK-sized blocks, one derived seed stream
    per block, and the blocks are reduced in index order, so the report is
    a pure function of (d, trials, seed) whatever the thread count.
    """
    if trials < 1:
        raise DomainError("trials must be at least 1")
    m = len(d)
    accept, alias = _alias_tables(d.probs)

    def run(block: int, count: int) -> np.ndarray:
        return _simulate_chunk(accept, alias, m, seed.stream(block).generator(), count)

    chunk = _chunk_rows(m)
    blocks = []
    done = 0
    while done < trials:
        count = min(chunk, trials - done)
        blocks.append((len(blocks), count))
        done += count
    counts = sum(map_ordered(run, blocks, threads))
    return _report_from_counts(counts, seed.seed, truncated=0)


def _report_from_counts(counts: np.ndarray, seed_value: int, truncated: int) -> SimReport:
    tallied = int(counts.sum())
    if tallied == 0:
        raise DomainError("no trial absorbed; nothing to estimate")
    freqs = counts / tallied
    # push the float summation residue into the largest entry so the
    # estimate is a bona fide probability vector, exactly
    j = int(np.argmax(freqs))
    freqs[j] += 1.0 - math.fsum(freqs)
    std = np.sqrt(freqs * (1.0 - freqs) / tallied)
    return SimReport(tuple(freqs.tolist()), tallied, seed_value,
                     tuple(std.tolist()), truncated=truncated)


def _probs_of(law) -> Sequence[float]:
    """Probability entries of a PairLaw, Distribution, SimReport, or plain
    sequence, so distances can be taken across exact and estimated laws."""
    for attr in ("probs", "estimated_probs"):
        entries = getattr(law, attr, None)
        if entries is not None:
            return entries
    return tuple(float(v) for v in law)


def tvd(a, b) -> float:
    """Total variation distance between two laws on the same color set.

    Computed three equivalent ways (half the L1 distance, the sum of
    positive parts, the sum of negative parts) which must agree to
    TVD_FORM_TOL; disagreement means an unnormalized law slipped in, and
    is reported rather than papered over.
    """
    pa = _probs_of(a)
    pb = _probs_of(b)
    if len(pa) != len(pb):
        raise IndexMismatch(f"laws over {len(pa)} vs {len(pb)} colors")
    diffs = [x - y for x, y in zip(pa, pb)]
    half_l1 = 0.5 * math.fsum(abs(v) for v in diffs)
    pos = math.fsum(v for v in diffs if v > 0.0)
    neg = -math.fsum(v for v in diffs if v < 0.0)
    if abs(pos - half_l1) > TVD_FORM_TOL or abs(neg - half_l1) > TVD_FORM_TOL:
        raise ToleranceNotMet(
            f"total variation forms disagree: {half_l1!r}, {pos!r}, {neg!r}")
    return half_l1


def discrepancy(d: Distribution) -> float:
    """D(p): total variation distance between the two pair laws of d."""
    return tvd(derive_m1(d), derive_m2(d))


def draw_stats(d: Distribution) -> DrawStats:
    """Expected draw counts of both procedures.

    One-at-a-time: E[draws] = sum_k P(first k draws distinct) = sum_k k! e_k,
    at most m + 1.  Two-at-a-time: rounds are geometric with success f_2.
    """
    return DrawStats(
        expected_draws_m2=math.fsum(_scaled_elem_sym(d.probs)),
        expected_pairs_m1=1.0 / match_probability(d),
    )


def _m2_rows(P: np.ndarray) -> np.ndarray:
    """derive_m2 applied to each row of a matrix of distributions.

    Vectorized mirror of the scalar hybrid: the forward/backward switch
    index is tracked per row, and backward values overwrite the forward
    placeholders wherever a row has switched.  Zero entries short out to
    zero law entries exactly as in the scalar path.
    """
    N, m = P.shape
    E = np.zeros((N, m + 1))
    E[:, 0] = 1.0
    for j in range(m):
        v = P[:, j]
        for k in range(min(j + 1, m), 0, -1):
            E[:, k] += k * v * E[:, k - 1]
    out = np.empty_like(P)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        for i in range(m):
            pi = P[:, i]
            safe = np.where(pi > 0.0, pi, 1.0)
            A = np.zeros((N, m))
            A[:, 0] = 1.0
            switch = np.full(N, m)
            for k in range(1, m):
                t = k * pi * A[:, k - 1]
                fresh = (switch == m) & (t > 0.5 * E[:, k])
                switch[fresh] = k
                A[:, k] = np.where(switch <= k, 0.0, E[:, k] - t)
            back = E[:, m] / (m * safe)
            for k in range(m - 1, 0, -1):
                taken = switch <= k
                A[:, k] = np.where(taken, back, A[:, k])
                back = (E[:, k] - A[:, k]) / (k * safe)
            weight = np.zeros(N)
            for k in range(m - 1, -1, -1):
                weight += (k + 1) * A[:, k]
            out[:, i] = pi * pi * weight
    return out


def _discrepancy_rows(P: np.ndarray) -> np.ndarray:
    """Discrepancy of each row; vectorized mirror of discrepancy()."""
    p2 = P * P
    m1 = p2 / p2.sum(axis=1, keepdims=True)
    return 0.5 * np.abs(m1 - _m2_rows(P)).sum(axis=1)
