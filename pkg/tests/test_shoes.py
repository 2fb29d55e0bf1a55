"""Two-sided (left/right) pairs: exact chain, simulation, witness family."""

import math

import numpy as np
import pytest

from pairlaw import (AbsorptionState, DomainError, ExcessTruncation,
                     IndexMismatch, InvalidPair, NTooSmall, RngSeed, ShoePair,
                     TooManyColors, shoes_discrepancy, shoes_m1,
                     shoes_m2_exact, shoes_m2_simulate,
                     shoes_match_probability, sup_one_demo, tvd, validate,
                     witness_family)

DIAG_SKEW = ShoePair(validate([0.75, 0.25]), validate([0.75, 0.25]))
TRIPLE = validate([0.5, 0.3, 0.2])
DIAG_TRIPLE = ShoePair(TRIPLE, TRIPLE)


def test_pair_validation():
    with pytest.raises(IndexMismatch):
        ShoePair(validate([0.5, 0.5]), validate([1.0]))
    with pytest.raises(InvalidPair):
        ShoePair(validate([1.0, 0.0]), validate([0.0, 1.0]))


def test_absorption_state_validation():
    AbsorptionState(frozenset({0}), frozenset({1}), "left")
    with pytest.raises(DomainError):
        AbsorptionState(frozenset({0}), frozenset({0}), "left")
    with pytest.raises(DomainError):
        AbsorptionState(frozenset(), frozenset(), "up")


def test_match_probability_and_m1():
    assert shoes_match_probability(DIAG_SKEW) == 0.625
    assert shoes_m1(DIAG_SKEW).probs == (0.9, 0.1)
    # a diagonal pair reduces to the one-sequence conditioned law
    got = shoes_m1(DIAG_TRIPLE).probs
    for g, w in zip(got, (25 / 38, 9 / 38, 2 / 19)):
        assert abs(g - w) < 1e-15


def test_exact_chain_diagonal_two_colors():
    got = shoes_m2_exact(DIAG_SKEW).probs
    assert abs(got[0] - 45 / 52) < 1e-15
    assert abs(got[1] - 7 / 52) < 1e-15
    est = shoes_discrepancy(DIAG_SKEW)
    assert est.error == 0.0
    assert abs(est.value - 9 / 260) < 1e-15  # 0.9 - 45/52


def test_exact_chain_diagonal_three_colors():
    got = shoes_m2_exact(DIAG_TRIPLE).probs
    want = (0.601904429964822, 0.2628108825000509, 0.13528468753512718)
    for g, w in zip(got, want):
        assert abs(g - w) < 1e-14


def test_exact_chain_uniform_is_uniform():
    sp = ShoePair(validate([0.5, 0.5]), validate([0.5, 0.5]))
    got = shoes_m2_exact(sp).probs
    assert max(abs(g - 0.5) for g in got) < 1e-14
    assert shoes_discrepancy(sp).value < 1e-14


def test_single_shared_color_takes_all_the_mass():
    sp = ShoePair(validate([0.5, 0.5, 0.0]), validate([0.0, 0.5, 0.5]))
    assert shoes_m2_exact(sp).probs == (0.0, 1.0, 0.0)
    assert shoes_m1(sp).probs == (0.0, 1.0, 0.0)
    assert shoes_discrepancy(sp).value == 0.0


def test_exact_chain_color_cap():
    d11 = validate([1.0 / 11] * 11)
    with pytest.raises(TooManyColors):
        shoes_m2_exact(ShoePair(d11, d11))
    d10 = validate([1.0 / 10] * 10)
    shoes_m2_exact(ShoePair(d10, d10))  # the cap itself is fine


def test_exact_chain_asymmetric_pair_against_simulation():
    sp = ShoePair(validate([0.6, 0.3, 0.1]), validate([0.2, 0.2, 0.6]))
    exact = shoes_m2_exact(sp).probs
    report = shoes_m2_simulate(sp, 1_000_000, RngSeed(0))
    for est, ex, std in zip(report.estimated_probs, exact, report.std_errors):
        assert abs(est - ex) < 4.0 * std
    assert report.truncated == 0
    assert math.fsum(report.estimated_probs) == 1.0


def test_simulation_diagonal_three_colors():
    report = shoes_m2_simulate(DIAG_TRIPLE, 1_000_000, RngSeed(2))
    exact = shoes_m2_exact(DIAG_TRIPLE).probs
    for est, ex, std in zip(report.estimated_probs, exact, report.std_errors):
        assert abs(est - ex) < 4.0 * std


def test_heavy_colors_on_opposite_sides_still_absorb():
    # the shared mass is tiny, so the walk is long; the default horizon
    # has to stretch with it rather than truncate en masse
    sp = ShoePair(validate([0.98, 0.01, 0.01]), validate([0.01, 0.495, 0.495]))
    report = shoes_m2_simulate(sp, 100_000, RngSeed(7))
    assert report.truncated == 0
    assert report.trials == 100_000
    exact = shoes_m2_exact(sp).probs
    for est, ex, std in zip(report.estimated_probs, exact, report.std_errors):
        assert abs(est - ex) < 4.5 * std


def test_excess_truncation_is_raised():
    # two steps almost never complete a pair on this source
    with pytest.raises(ExcessTruncation):
        shoes_m2_simulate(DIAG_TRIPLE, 10_000, RngSeed(1), 2)
    with pytest.raises(DomainError):
        shoes_m2_simulate(DIAG_TRIPLE, 10_000, RngSeed(1), 1)


def test_simulation_determinism_and_thread_invariance():
    a = shoes_m2_simulate(DIAG_TRIPLE, 200_000, RngSeed(9), threads=1)
    b = shoes_m2_simulate(DIAG_TRIPLE, 200_000, RngSeed(9), threads=4)
    c = shoes_m2_simulate(DIAG_TRIPLE, 200_000, RngSeed(10), threads=1)
    assert a.estimated_probs == b.estimated_probs
    assert a.estimated_probs != c.estimated_probs


def test_discrepancy_simulation_path():
    est = shoes_discrepancy(DIAG_TRIPLE, exact_if_small=False,
                            trials=400_000, seed=RngSeed(3))
    exact = shoes_discrepancy(DIAG_TRIPLE)
    assert est.error > 0.0
    assert abs(est.value - exact.value) < 4.0 * est.error + 1e-4
    with pytest.raises(DomainError):
        shoes_discrepancy(DIAG_TRIPLE, exact_if_small=False)  # no seed


def test_side_swap_moves_m2_by_at_most_the_side_gap():
    # swapping who draws first changes the law by less than the sides differ
    rng = np.random.default_rng(23)
    for _ in range(60):
        m = int(rng.integers(2, 7))
        p = validate(rng.dirichlet(np.ones(m)).tolist())
        q = validate(rng.dirichlet(np.ones(m)).tolist())
        try:
            fwd = shoes_m2_exact(ShoePair(p, q))
            rev = shoes_m2_exact(ShoePair(q, p))
        except InvalidPair:
            continue
        assert tvd(fwd, rev) <= tvd(p.probs, q.probs) + 1e-12


def test_witness_family_shape():
    with pytest.raises(NTooSmall):
        witness_family(15)
    w = witness_family(16)
    assert len(w) == 17
    assert abs(w.left.probs[0] - 0.5) < 1e-15  # 16^(-1/4)
    assert w.right.probs[0] < w.left.probs[0]
    assert abs(math.fsum(w.left.probs) - 1.0) < 1e-12


def test_witness_conditioned_head_grows():
    heads = [shoes_m1(witness_family(n)).probs[0] for n in (1000, 10_000, 1_000_000)]
    assert abs(heads[1] - 0.7057945047625049) < 1e-12
    assert heads[0] < heads[1] < heads[2]
    assert heads[2] > 0.75


def test_witness_sequential_head_shrinks():
    freqs = []
    for j, n in enumerate((100, 1000, 10_000)):
        report = shoes_m2_simulate(witness_family(n), 100_000, RngSeed(40 + j))
        freqs.append(report.estimated_probs[0])
    # the sequential walk almost never completes the head color: its
    # frequency decays with n while the conditioned head frequency grows
    assert freqs[0] > freqs[1] > freqs[2]
    assert freqs[2] < 0.2


def test_sup_one_demo_trend():
    rows = sup_one_demo([100, 1000, 10_000], 100_000, RngSeed(0))
    assert [r.n for r in rows] == [100, 1000, 10_000]
    values = [r.value for r in rows]
    assert values[0] < values[1] < values[2]
    assert all(r.error > 0.0 for r in rows)
    assert abs(values[0] - 0.322) < 0.02
    assert abs(values[1] - 0.431) < 0.02
    assert abs(values[2] - 0.529) < 0.02


def test_sup_one_demo_is_deterministic():
    a = sup_one_demo([100, 1000], 50_000, RngSeed(6), threads=2)
    b = sup_one_demo([100, 1000], 50_000, RngSeed(6), threads=1)
    assert a == b
