from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from umbral.verify import (
    EXACT_SUITES,
    RNG_ALGORITHM,
    MonteCarloConfig,
    VerificationReport,
    classical_bernoulli,
    classical_euler,
    perturbed,
    run_exact_suite,
    run_montecarlo_rademacher,
    run_montecarlo_uniform,
    run_oracle_suite,
    run_reduction_suite,
)


def test_classical_tables():
    assert classical_bernoulli(6) == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30), 0, Fraction(1, 42)]
    assert classical_euler(6) == [1, 0, -1, 0, 5, 0, -61]


@settings(max_examples=50)
@given(st.lists(st.booleans(), max_size=20))
def test_report_invariants(outcomes):
    rep = VerificationReport("x")
    for i, ok in enumerate(outcomes):
        rep.record(ok, {"i": i}, i, -i)
    assert rep.passed <= rep.attempted == len(outcomes)
    assert (rep.counterexample is not None) == (rep.passed < rep.attempted)
    if rep.counterexample is not None:
        assert rep.counterexample["inputs"]["i"] == outcomes.index(False)


def test_report_to_dict_drops_timings():
    rep = VerificationReport("x", seconds=1.5, details={"gf_path_seconds": 0.1, "seed": 3})
    rep.record(False, {"v": [1]}, Fraction(1, 2), 0)
    full, bare = rep.to_dict(), rep.to_dict(timings=False)
    assert full["seconds"] == 1.5 and "seconds" not in bare
    assert bare["details"] == {"seed": 3}
    assert bare["counterexample"] == {"inputs": {"v": [1]}, "lhs": "1/2", "rhs": "0"}


def test_exact_suite_small_passes():
    reports = run_exact_suite(4, 2)
    assert tuple(r.suite for r in reports) == EXACT_SUITES
    assert all(r.ok and r.attempted > 0 for r in reports)
    assert all(r.seconds is not None for r in reports)


def test_exact_suite_degree_zero_is_trivial():
    reports = run_exact_suite(0, 3, gf_max_n=0, split_max_n=0)
    assert all(r.ok for r in reports)


def test_exact_suite_preconditions():
    with pytest.raises(ValueError):
        run_exact_suite(13, 1)
    with pytest.raises(ValueError):
        run_exact_suite(2, 0)


def test_exact_suite_is_deterministic():
    a = [r.to_dict(timings=False) for r in run_exact_suite(3, 2)]
    b = [r.to_dict(timings=False) for r in run_exact_suite(3, 2)]
    assert a == b


def test_perturbed():
    b = perturbed("bernoulli", 2)
    assert b.moment(2) == Fraction(7, 6)
    assert perturbed("euler", 4).moment(4) == 6
    with pytest.raises(ValueError):
        perturbed("gamma", 2)


@pytest.mark.parametrize("name, n", [("bernoulli", 2), ("bernoulli", 4), ("euler", 2), ("euler", 4)])
def test_mutation_is_detected(name, n):
    kw = {name: perturbed(name, n)}
    failing = [r for r in run_exact_suite(4, 2, **kw) if not r.ok]
    assert failing
    for r in failing:
        ce = r.counterexample
        assert ce is not None and ce["lhs"] != ce["rhs"]


def test_bernoulli_mutation_counterexample_location():
    reports = {r.suite: r for r in run_exact_suite(4, 1, bernoulli=perturbed("bernoulli", 2))}
    # B_2 cancels from both sides at v=(2); v=(3) is the first case that sees it
    rep = reports["bernoulli_binomial_sum"]
    assert rep.counterexample["inputs"]["v"] == [3]


def test_oracle_and_reduction_small():
    oracle = run_oracle_suite(5, 2)
    assert [r.suite for r in oracle] == ["oracle_iota", "oracle_eta", "oracle_u", "oracle_eta-u"]
    assert all(r.ok for r in oracle)
    assert set(oracle[0].details) == {"partition_path_seconds", "gf_path_seconds"}
    assert all(r.ok for r in run_reduction_suite(8, 3))


@pytest.mark.parametrize(
    "kwargs",
    [{"samples": 9999}, {"d": 0}, {"seed": -1}, {"seed": 2**64}, {"workers": 0}, {"confidence": 0}, {"max_degree": -1}],
)
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        MonteCarloConfig(**kwargs)


def test_montecarlo_uniform():
    rep = run_montecarlo_uniform(MonteCarloConfig(samples=200_000, d=2, max_degree=3))
    assert rep.ok and rep.suite == "uniform_d2"
    assert rep.details["generator"] == RNG_ALGORITHM
    assert rep.attempted == 10


def test_montecarlo_rademacher_even_moments_exact():
    rep = run_montecarlo_rademacher(MonteCarloConfig(samples=50_000, d=1, max_degree=4))
    assert rep.ok
    # no counterexample, so inspect through a forced failure: zero confidence band
    tight = run_montecarlo_rademacher(MonteCarloConfig(samples=50_000, d=1, max_degree=1, confidence=1e-12))
    ce = tight.counterexample
    assert ce["inputs"]["v"] == [1] and ce["rhs"] == 0


def test_montecarlo_reproducible():
    cfg = MonteCarloConfig(samples=50_000, seed=7, d=2, max_degree=4)
    a = run_montecarlo_uniform(cfg).to_dict(timings=False)
    b = run_montecarlo_uniform(cfg).to_dict(timings=False)
    assert a == b
    sharded = MonteCarloConfig(samples=50_000, seed=7, d=2, max_degree=4, workers=3)
    c = run_montecarlo_uniform(sharded)
    d = run_montecarlo_uniform(sharded)
    assert c.ok and c.to_dict(timings=False) == d.to_dict(timings=False)
