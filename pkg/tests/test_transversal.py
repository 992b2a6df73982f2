import numpy as np
import pytest

from diffract.errors import IndexOutOfRange, NotARepresentativeSystem, ParseError
from diffract.families import symmetric
from diffract.group import left_cosets, subgroup_generate
from diffract.transversal import (
    Lcg64,
    TransversalStrategy,
    bar,
    check_representative_calculus,
    choose,
)

import oracles

MIN = TransversalStrategy("min_index")


def _decomp(G, gens):
    return left_cosets(G, subgroup_generate(G, gens))


def test_lcg_recurrence():
    rng = Lcg64(0)
    # first state is the increment itself
    assert rng.next32() == 1442695040888963407 >> 32
    s1 = (1442695040888963407 * 6364136223846793005 + 1442695040888963407) % 2**64
    assert rng.next32() == s1 >> 32


def test_min_index_extremes():
    G = symmetric(3)
    T = choose(_decomp(G, range(6)), MIN)
    assert T.reps == (0,) and T.is_transversal
    T = choose(_decomp(G, []), MIN)
    assert T.reps == tuple(range(6)) and T.is_transversal


def test_random_is_reproducible_and_may_skip_identity():
    G = symmetric(3)
    C = _decomp(G, [1])
    strat = TransversalStrategy("random", seed=7)
    a = choose(C, strat, allow_non_transversal=True)
    b = choose(C, strat, allow_non_transversal=True)
    assert a.reps == b.reps
    assert np.array_equal(a.bar_of, b.bar_of)
    # some seed picks the non-identity member of H's coset
    flags = {choose(C, TransversalStrategy("random", seed=s), allow_non_transversal=True).is_transversal
             for s in range(10)}
    assert flags == {True, False}


def test_random_forces_identity_by_default():
    G = symmetric(4)
    C = _decomp(G, [1, 3])
    for s in range(20):
        T = choose(C, TransversalStrategy("random", seed=s))
        assert T.is_transversal and T.reps[0] == 0


def test_explicit_strategy():
    G = symmetric(3)
    C = _decomp(G, [1])
    T = choose(C, TransversalStrategy("explicit", elements=(1, 3, 5)))
    assert T.reps == (1, 3, 5) and not T.is_transversal
    with pytest.raises(NotARepresentativeSystem):
        choose(C, TransversalStrategy("explicit", elements=(0, 1, 3, 5)))
    with pytest.raises(NotARepresentativeSystem):
        choose(C, TransversalStrategy("explicit", elements=(0, 2)))


def test_strategy_parsing():
    assert TransversalStrategy.parse("min").kind == "min_index"
    assert TransversalStrategy.parse("random:42").seed == 42
    assert TransversalStrategy.parse("list:0,2,4").elements == (0, 2, 4)
    G = symmetric(3)
    assert TransversalStrategy.parse("list:(0 1),()", G).elements == (2, 0)
    with pytest.raises(ParseError):
        TransversalStrategy.parse("random:x")
    with pytest.raises(ParseError):
        TransversalStrategy.parse("greedy")


def test_bar_against_coset_oracle():
    G = symmetric(3)
    t = G.table.tolist()
    H = [0, 1]
    T = choose(_decomp(G, H), MIN)
    for g in range(6):
        assert bar(T, g) == oracles.rep_of(t, g, T.reps, H)
    for r in T.reps:
        assert bar(T, r) == r
    for h in H:
        assert bar(T, h) == 0
    with pytest.raises(IndexOutOfRange):
        bar(T, 6)


def test_bar_idempotent_and_in_coset():
    G = symmetric(4)
    C = _decomp(G, [3])
    for strat in (MIN, TransversalStrategy("random", seed=5)):
        T = choose(C, strat, allow_non_transversal=True)
        b = T.bar_of
        assert np.array_equal(b[b], b)
        assert np.array_equal(C.coset_of[b], C.coset_of)


def test_representative_calculus_trivial_and_corrupted():
    G = symmetric(1)
    T = choose(_decomp(G, []), MIN)
    res = check_representative_calculus(T)
    assert res.passed and res.checks_run == 2

    G = symmetric(3)
    T = choose(_decomp(G, [1]), MIN)
    assert check_representative_calculus(T).passed
    corrupted = np.array(T.bar_of)
    corrupted[3] = 3  # still in the right coset, but not the representative
    res = check_representative_calculus(T, corrupted)
    assert res.status == "fail" and res.counterexample["item"] == "ii"
    corrupted = np.array(T.bar_of)
    corrupted[3] = 4  # wrong coset
    res = check_representative_calculus(T, corrupted)
    assert res.status == "fail" and res.counterexample["item"] == "i"


def test_representative_calculus_non_transversal():
    G = symmetric(3)
    T = choose(_decomp(G, [1]), TransversalStrategy("explicit", elements=(1, 3, 5)))
    assert check_representative_calculus(T).passed
