import itertools

import numpy as np
import pytest

from diffract.diffraction import (
    FiberMap,
    Spectrum,
    alpha,
    beta,
    build_fibration,
    delta,
    delta_zero,
    dual_delta,
    fibermap_mul,
    gamma,
    nabla,
    nabla_inv,
)
from diffract.errors import (
    FibrationMismatch,
    InvalidSpectrum,
    NotARepresentative,
    RequiresTransversal,
)
from diffract.families import cyclic, quaternion, symmetric
from diffract.group import left_cosets, subgroup_generate
from diffract.perm import Permutation
from diffract.transversal import TransversalStrategy, choose

import oracles

MIN = TransversalStrategy("min_index")

# δ(g, t) for S3 (lexicographic order), H = {e, (1 2)}, reps (0, 2, 4):
# computed by oracles.delta_by_scan (factor g t = t' h' by exhaustive scan)
S3_DELTA = [
    [0, 0, 0],
    [1, 0, 0],
    [0, 0, 1],
    [1, 1, 0],
    [0, 1, 1],
    [1, 1, 1],
]


def fib(G, gens, strategy=MIN, allow=False):
    C = left_cosets(G, subgroup_generate(G, gens))
    return build_fibration(choose(C, strategy, allow_non_transversal=allow))


@pytest.fixture
def s3():
    return fib(symmetric(3), [1])


def test_s3_delta_table_frozen(s3):
    assert s3.reps == (0, 2, 4)
    got = [[delta(s3, g, t) for t in s3.reps] for g in range(6)]
    assert got == S3_DELTA


def test_s3_delta_table_matches_scan_oracle(s3):
    t = s3.group.table.tolist()
    H = list(s3.subgroup.members)
    expect = [[oracles.delta_by_scan(t, g, r, s3.reps, H) for r in s3.reps] for g in range(6)]
    assert expect == S3_DELTA


def test_gamma_identity_and_homomorphism():
    for G, gens in [(symmetric(3), [1]), (symmetric(4), [3, 7]), (quaternion(), [1])]:
        F = fib(G, gens)
        T = F.transversal
        assert gamma(T, 0).is_identity()
        for h in F.subgroup.members:
            assert gamma(T, h)(0) == 0  # fixes the position of e
        for a in range(G.order):
            assert gamma(T, a) == gamma(F, a)
            for b in range(G.order):
                assert gamma(T, G.mul(a, b)) == gamma(T, a) * gamma(T, b)


def test_delta_basics(s3):
    for t in s3.reps:
        assert delta(s3, 0, t) == 0
    for h in s3.subgroup.members:
        assert delta(s3, h, 0) == h
    with pytest.raises(NotARepresentative):
        delta(s3, 0, 1)


def test_delta_zero_reconstructs(s3):
    G = s3.group
    assert delta_zero(s3, 0) == 0
    for h in s3.subgroup.members:
        assert delta_zero(s3, h) == h
    for g in range(G.order):
        assert G.mul(s3.transversal.bar(g), delta_zero(s3, g)) == g


def test_delta_zero_requires_transversal():
    F = fib(symmetric(3), [1], TransversalStrategy("explicit", elements=(1, 3, 5)))
    with pytest.raises(RequiresTransversal):
        delta_zero(F, 0)
    with pytest.raises(RequiresTransversal):
        nabla(F, 0)


def test_nabla_values(s3):
    assert nabla(s3, 0) == Spectrum(0, 0)
    for h in s3.subgroup.members:
        assert nabla(s3, h) == (0, h)
    for t in s3.reps:
        assert nabla(s3, t) == (t, 0)


def test_nabla_roundtrip_s4():
    G = symmetric(4)
    for gens in ([3, 7], [1], [], list(range(24))):
        F = fib(G, gens, TransversalStrategy("random", seed=11))
        assert nabla_inv(F, (0, 0)) == 0
        assert [nabla_inv(F, nabla(F, g)) for g in range(24)] == list(range(24))
        for t, h in itertools.product(F.reps, F.subgroup.members):
            assert nabla(F, nabla_inv(F, (t, h))) == (t, h)


def test_nabla_inv_rejects(s3):
    with pytest.raises(InvalidSpectrum):
        nabla_inv(s3, (1, 0))
    with pytest.raises(InvalidSpectrum):
        nabla_inv(s3, (0, 2))


def test_dual_delta(s3):
    assert dual_delta(s3, 0).is_identity()
    for g in range(6):
        assert all(h in s3.subgroup for h in dual_delta(s3, g).elements())


def test_dual_delta_injectivity_witnesses():
    # C4 mod its order-2 subgroup: no complement exists and δ̂ turns out injective
    F = fib(cyclic(4), [2])
    assert len({dual_delta(F, g) for g in range(4)}) == 4
    # S4 mod A4 with T = {e, (2 3)}: T is closed under the product and δ̂ collapses
    F = fib(symmetric(4), [3, 7])
    assert F.reps == (0, 1)
    images = [dual_delta(F, g) for g in range(24)]
    assert len(set(images)) < 24


def test_fibermap_group_laws():
    F = fib(quaternion(), [1])
    one = FiberMap.identity(F)
    rng = np.random.default_rng(3)
    maps = [FiberMap(F, tuple(int(x) for x in rng.integers(0, F.h_size, F.t_size)))
            for _ in range(3)]
    f1, f2, f3 = maps
    assert f1 * one == f1
    assert (f1 * f1.inverse()).is_identity()
    assert (f1 * f2) * f3 == f1 * (f2 * f3)
    other = fib(quaternion(), [1])
    with pytest.raises(FibrationMismatch):
        fibermap_mul(f1, FiberMap.identity(other))
    with pytest.raises(FibrationMismatch):
        FiberMap(F, (0,))


def test_beta(s3):
    m = s3.h_size
    assert beta(FiberMap.identity(s3)).is_identity()
    for g in range(6):
        p = beta(dual_delta(s3, g))
        assert all(p(k) // m == k // m for k in range(s3.degree))
    for g1 in range(6):
        for g2 in range(6):
            f1, f2 = dual_delta(s3, g1), dual_delta(s3, g2)
            assert beta(f1 * f2) == beta(f1) * beta(f2)
    for f in itertools.product(range(m), repeat=s3.t_size):
        fm = FiberMap(s3, f)
        assert beta(fm).is_identity() == fm.is_identity()


def test_alpha():
    for G, gens in [(symmetric(3), [1]), (symmetric(4), [3, 7]), (quaternion(), [1])]:
        F = fib(G, gens)
        assert alpha(F, 0).is_identity()
        perms = [alpha(F, g) for g in range(G.order)]
        assert len(set(perms)) == G.order
        for a in range(G.order):
            for b in range(G.order):
                assert perms[G.mul(a, b)] == perms[a] * perms[b]
        m = F.h_size
        for h in F.subgroup.members:
            for h2 in F.subgroup.members:
                k = F.pair_index((0, h2))
                assert F.pair(alpha(F, h)(k)) == (0, G.mul(h, h2))


def test_alpha_factored_form(s3):
    m = s3.h_size
    for g in range(6):
        lift = Permutation.from_array(
            [gamma(s3, g)(k // m) * m + k % m for k in range(s3.degree)])
        assert alpha(s3, g) == lift * beta(dual_delta(s3, g))


def test_alpha_non_transversal_still_faithful():
    G = symmetric(3)
    F = fib(G, [1], TransversalStrategy("explicit", elements=(1, 3, 5)))
    perms = [alpha(F, g) for g in range(6)]
    assert len(set(perms)) == 6
    for a in range(6):
        for b in range(6):
            assert perms[G.mul(a, b)] == perms[a] * perms[b]


def test_with_delta_copy(s3):
    d = np.array(s3.delta)
    d[1, 0] ^= 1
    F2 = s3.with_delta(d)
    assert F2.delta[1, 0] != s3.delta[1, 0]
    assert not F2.delta.flags.writeable
