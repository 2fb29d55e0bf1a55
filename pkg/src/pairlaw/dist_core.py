"""Validated probability vectors and the machinery the rest of the library
leans on.

A Distribution is an immutable, validated vector of color probabilities.
Elementary symmetric polynomials of such a vector, and their leave-one-out
variants, carry all the combinatorial weight of the sequential-draw law:
k! * e_k is the probability that the first k one-at-a-time draws show k
distinct colors.  The module also provides uniform sampling from the
sorted probability simplex and a constant-time discrete sampler, both
fully determined by an explicit 64-bit seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .errors import BadSum, DomainError, Empty, IndexOutOfRange, NegativeEntry

#: Absolute tolerance for "entries sum to one".  Tight enough to catch real
#: normalization bugs, loose enough for honest round-off in long sums.
SUM_TOL = 1e-12

_MASK64 = 0xFFFFFFFFFFFFFFFF
_GOLDEN_GAMMA = 0x9E3779B97F4A7C15  # splitmix64 stream increment


def _mix64(z: int) -> int:
    """splitmix64 finalizer; a bijective scramble of a 64-bit word."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class RngSeed:
    """Explicit 64-bit seed; equal seeds give bit-identical sample streams."""

    seed: int

    def __post_init__(self) -> None:
        if not isinstance(self.seed, int) or not 0 <= self.seed <= _MASK64:
            raise DomainError("seed must be an integer in [0, 2**64)")

    def stream(self, index: int) -> "RngSeed":
        """Seed of the index-th derived stream.

        (seed, index) is mixed through a bijective 64-bit scramble, so
        neighbouring indices do not yield correlated generators and distinct
        indices never collide for a fixed seed.
        """
        if index < 0:
            raise DomainError("stream index must be nonnegative")
        return RngSeed(_mix64(self.seed + _GOLDEN_GAMMA * (index + 1)))

    def generator(self) -> np.random.Generator:
        """A fresh generator positioned at the start of this stream."""
        return np.random.Generator(np.random.PCG64(self.seed))


@dataclass(frozen=True)
class Distribution:
    """Finite vector of color probabilities.

    Entries are nonnegative and sum to one within SUM_TOL; nothing is ever
    renormalized silently.  Sortedness is not an invariant; use
    canonical_sorted for the nonincreasing representative.
    """

    probs: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.probs) == 0:
            raise Empty("a distribution needs at least one entry")
        for v in self.probs:
            if not (v >= 0.0):  # catches NaN as well as negatives
                raise NegativeEntry(f"entry {v!r} is not a nonnegative number")
        total = math.fsum(self.probs)
        if abs(total - 1.0) > SUM_TOL:
            raise BadSum(f"entries sum to {total!r}, not 1 within {SUM_TOL}")

    def __len__(self) -> int:
        return len(self.probs)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.probs, dtype=float)


def validate(raw: Iterable[float]) -> Distribution:
    """Build a Distribution from any iterable of numbers, or raise.

    Raises Empty, NegativeEntry, or BadSum; never adjusts the entries.
    """
    return Distribution(tuple(float(v) for v in raw))


def canonical_sorted(d: Distribution) -> Distribution:
    """The nonincreasing rearrangement of d.

    Both pair laws are equivariant under color permutation, so this is the
    canonical representative of d's equivalence class.
    """
    return Distribution(tuple(sorted(d.probs, reverse=True)))


@dataclass(frozen=True)
class ElemSymTable:
    """Values e_0 .. e_k of the elementary symmetric polynomials of a vector.

    e_k is the sum over k-subsets of distinct entries of their product.  For
    a probability vector, k! * e_k is the probability that k one-at-a-time
    draws show k distinct colors, so e_0 = 1 and k! * e_k <= 1 throughout.
    """

    values: tuple[float, ...]
    source_len: int


def elem_sym(d: Distribution) -> ElemSymTable:
    """All elementary symmetric values of d.

    Entries are folded in one at a time with k descending, so each e_k
    accumulates p * e_{k-1} exactly once per entry; O(m^2) total work and
    every intermediate is a partial e_k of a sub-vector, hence in [0, 1].
    """
    m = len(d)
    e = [0.0] * (m + 1)
    e[0] = 1.0
    for seen, p in enumerate(d.probs):
        for k in range(min(seen + 1, m), 0, -1):
            e[k] += p * e[k - 1]
    return ElemSymTable(tuple(e), m)


def elem_sym_leave_one_out(d: Distribution, i: int) -> ElemSymTable:
    """Elementary symmetric values of d with entry i removed, in O(m).

    Downdates the full table through e'_k = e_k - p_i * e'_{k-1}.  The
    forward recurrence loses relative precision once the subtracted term
    dominates e_k, so past the first k where p_i * e'_{k-1} > e_k / 2 the
    same identity is run backward, e'_{k-1} = (e_k - e'_k) / p_i, seeded
    from e'_{m-1} = e_m / p_i.  The crossover ratio is monotone in k
    (Newton's inequalities make the table log-concave), so each direction
    is used exactly where it is contractive.
    """
    m = len(d)
    if not 0 <= i < m:
        raise IndexOutOfRange(f"color index {i} outside 0..{m - 1}")
    pi = d.probs[i]
    e = elem_sym(d).values
    out = [0.0] * m
    out[0] = 1.0
    switch = m
    for k in range(1, m):
        t = pi * out[k - 1]
        if t > 0.5 * e[k]:
            switch = k
            break
        out[k] = e[k] - t
    if switch < m:
        # switch < m forces pi > 0: a zero entry never trips the crossover.
        back = e[m] / pi
        for k in range(m - 1, switch - 1, -1):
            out[k] = back
            back = (e[k] - back) / pi
    return ElemSymTable(tuple(out), m - 1)


def sample_sorted_simplex(m: int, seed: RngSeed) -> Distribution:
    """Uniform draw from the nonincreasing probability vectors of length m.

    m standard exponentials normalized by their sum are uniform on the
    simplex (Dirichlet with all parameters 1); sorting folds the draw onto
    the nonincreasing chamber, where the density is again constant.
    """
    if m < 1:
        raise Empty("need at least one color")
    rows = _sorted_simplex_rows(m, 1, seed.generator())
    return Distribution(tuple(rows[0].tolist()))


def _sorted_simplex_rows(m: int, count: int, g: np.random.Generator) -> np.ndarray:
    """count independent sorted-simplex points as rows, nonincreasing."""
    e = g.standard_exponential((count, m))
    e /= e.sum(axis=1, keepdims=True)
    e.sort(axis=1)
    return e[:, ::-1]


def _alias_tables(probs: Iterable[float]) -> tuple[np.ndarray, np.ndarray]:
    """Alias-method tables (acceptance threshold, alias index) for a
    probability vector.  Small and large entries are paired two-stack
    style; the tables depend only on the vector, never on any seed."""
    p = np.asarray(tuple(probs), dtype=float)
    m = p.size
    scaled = p * m
    accept = np.ones(m)
    alias = np.arange(m, dtype=np.int64)
    small = [i for i in range(m) if scaled[i] < 1.0]
    large = [i for i in range(m) if scaled[i] >= 1.0]
    while small and large:
        s = small.pop()
        l = large.pop()
        accept[s] = scaled[s]
        alias[s] = l
        scaled[l] = (scaled[l] + scaled[s]) - 1.0
        (small if scaled[l] < 1.0 else large).append(l)
    # leftovers are within round-off of 1; treat them as certain
    return accept, alias


def _alias_draw(accept: np.ndarray, alias: np.ndarray,
                g: np.random.Generator, count: int) -> np.ndarray:
    """count color indices in one vectorized pass, one uniform per draw."""
    m = accept.size
    u = g.random(count) * m
    idx = u.astype(np.int64)
    np.minimum(idx, m - 1, out=idx)  # guard the u == m round-up corner
    frac = u - idx
    return np.where(frac < accept[idx], idx, alias[idx])


class AliasSampler:
    """Constant-time discrete sampler over the colors of a distribution.

    Vose's alias method: one uniform, one table lookup, and one comparison
    per draw.  draw(count) yields a vectorized batch; iterating the sampler
    yields single indices from the same stream.  The sequence of draws is a
    pure function of (distribution, seed).
    """

    _BUFFER = 1024

    def __init__(self, d: Distribution, seed: RngSeed):
        self.distribution = d
        self.seed = seed
        self._accept, self._alias = _alias_tables(d.probs)
        self._rng = seed.generator()

    def draw(self, count: int) -> np.ndarray:
        if count < 0:
            raise DomainError("draw count must be nonnegative")
        return _alias_draw(self._accept, self._alias, self._rng, count)

    def __iter__(self) -> Iterator[int]:
        while True:
            for c in self.draw(self._BUFFER):
                yield int(c)


def discrete_sampler(d: Distribution, seed: RngSeed) -> AliasSampler:
    """A reproducible stream of color indices distributed as d."""
    return AliasSampler(d, seed)
