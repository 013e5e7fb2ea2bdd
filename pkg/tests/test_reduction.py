import random
from fractions import Fraction

import pytest

from signstab import (
    Cone,
    DimensionMismatchError,
    Flip,
    FrozenIndexError,
    IntPoly,
    MutationPath,
    Permute,
    Seed,
    SplitViolationError,
    block_structure_check,
    char_poly,
    edge_compatibility,
    enumerate_realizable_signs,
    freeze,
    hereditary_check,
    mutate_b,
    permutation_factor_check,
    project_point,
    reduced_subsequence,
    sign_of_path,
    trop_mutate,
)

from test_seeds import kronecker, random_seed

F = Fraction


def frac(*xs):
    return tuple(F(x) for x in xs)


def test_annulus_single_flip_compatibility(annulus_seed, annulus_cone):
    uf = Seed(annulus_seed.unfrozen_block(), frozenset(range(6)))
    at_1 = MutationPath(uf, (Flip(0),))
    at_2 = MutationPath(uf, (Flip(1),))
    assert edge_compatibility(at_1, annulus_cone) == [True]
    assert edge_compatibility(at_2, annulus_cone) == [False]
    assert reduced_subsequence(at_2, annulus_cone) == []
    assert reduced_subsequence(at_1, annulus_cone) == [(0, 0)]


def test_zero_cone_everything_compatible():
    seed = kronecker(3)
    path = MutationPath(seed, (Flip(0), Flip(1), Flip(0)))
    zero = Cone((frac(0, 0),))
    assert edge_compatibility(path, zero) == [True, True, True]
    assert reduced_subsequence(path, zero) == [(0, 0), (1, 1), (2, 0)]
    report = hereditary_check(path, zero, (1, -1, 1))
    assert report.passes and report.violations == []


def test_hereditary_zero_at_compatible_position_fails():
    seed = kronecker(3)
    path = MutationPath(seed, (Flip(0), Flip(1)))
    zero = Cone((frac(0, 0),))
    report = hereditary_check(path, zero, (1, 0))
    assert not report.passes
    assert report.violations == [1]


def test_hereditary_length_mismatch():
    seed = kronecker(3)
    path = MutationPath(seed, (Flip(0),))
    with pytest.raises(DimensionMismatchError):
        hereditary_check(path, Cone((frac(0, 0),)), (1, 1))


def test_compatible_flip_keeps_generator_on_wall():
    # transporting a generator across a compatible flip leaves the
    # mutating coordinate at zero (both branches agree there)
    rng = random.Random(21)
    for _ in range(40):
        s = random_seed(rng, max_rank=4)
        k = rng.choice(sorted(s.unfrozen))
        kp = s.unfrozen_order.index(k)
        g = [F(rng.randint(-4, 4)) for _ in range(s.n_uf)]
        g[kp] = F(0)
        moved = trop_mutate(s, k, tuple(g))
        assert moved[kp] == 0


def test_freeze():
    seed = random_seed(random.Random(22), max_rank=4)
    assert freeze(seed, ()).unfrozen == seed.unfrozen
    smaller = freeze(seed, (0,))
    assert smaller.unfrozen == seed.unfrozen - {0}
    assert smaller.b == seed.b
    with pytest.raises(FrozenIndexError):
        mutate_b(smaller, 0)
    with pytest.raises(FrozenIndexError):
        freeze(smaller, (0,))


def test_project_point():
    seed = Seed(
        [[0, 1, 0, 0], [-1, 0, 1, 0], [0, -1, 0, 1], [0, 0, -1, 0]],
        {0, 1, 2, 3},
    )
    w = frac(1, 2, 3, 4)
    assert project_point(seed, w, (0, 1, 2, 3)) == w
    assert project_point(seed, w, (0, 2)) == frac(1, 3)
    with pytest.raises(DimensionMismatchError):
        project_point(seed, w, (0, 9))


def test_freeze_respects_sign_enumeration():
    # J-only paths see the same realizable signs before and after freezing
    rng = random.Random(23)
    for _ in range(15):
        s = random_seed(rng, max_rank=4)
        if s.n_uf < 3:
            continue
        j = sorted(s.unfrozen)[:2]
        path_steps = tuple(Flip(rng.choice(j)) for _ in range(3))
        full = MutationPath(s, path_steps)
        reduced = MutationPath(freeze(s, set(s.unfrozen) - set(j)), path_steps)
        full_signs = enumerate_realizable_signs(full, rng_seed=1)
        red_signs = enumerate_realizable_signs(reduced, rng_seed=1)
        assert red_signs == full_signs


def block_seed(ell_j: int, ell_k: int) -> Seed:
    return Seed(
        [
            [0, -ell_j, 0, 0],
            [ell_j, 0, 0, 0],
            [0, 0, 0, -ell_k],
            [0, 0, ell_k, 0],
        ],
        {0, 1, 2, 3},
    )


def test_block_structure_kronecker_example():
    seed = block_seed(3, 5)
    sigma = (1, 0, 2, 3)
    path = MutationPath(seed, (Flip(0), Permute(sigma)))
    report = block_structure_check(path, frozen_out=(2, 3))
    assert report.ok and report.zero_block_exact
    assert report.max_radius_diff <= 1e-9
    golden = (3 + 5 ** 0.5) / 2
    by_sign = {eps: (rho_full, rho_j) for eps, rho_full, rho_j in report.details}
    assert abs(by_sign[(1,)][0] - golden) <= 1e-9
    assert abs(by_sign[(1,)][1] - golden) <= 1e-9


def test_block_structure_no_flips():
    seed = block_seed(2, 2)
    report = block_structure_check(MutationPath(seed, ()), frozen_out=(2, 3))
    assert report.ok
    assert report.details[0][1] == pytest.approx(1.0, abs=1e-9)
    assert report.details[0][2] == pytest.approx(1.0, abs=1e-9)


def test_block_structure_rejects_escaping_flip():
    seed = block_seed(2, 2)
    path = MutationPath(seed, (Flip(2),))
    with pytest.raises(SplitViolationError):
        block_structure_check(path, frozen_out=(2, 3))


def test_block_structure_rejects_mixing_permutation():
    seed = block_seed(2, 2)
    path = MutationPath(seed, (Permute((2, 3, 0, 1)),))
    with pytest.raises(SplitViolationError):
        block_structure_check(path, frozen_out=(2, 3))


def test_permutation_factor_check_examples():
    assert not permutation_factor_check(IntPoly((1, -3, 1)), [1])
    assert permutation_factor_check(IntPoly((1, -2, 1)), [1])
    assert permutation_factor_check(
        char_poly(((0, 0, 1), (1, 0, 0), (0, 1, 0))), [3]
    )


def test_sign_restriction_property(sphere_path, sphere_cone):
    # strict full signs restrict to strict signs at compatible positions
    rng = random.Random(24)
    compat = edge_compatibility(sphere_path, sphere_cone)
    positions = [i for i, c in enumerate(compat) if c]
    assert positions
    for _ in range(5):
        w = frac(*(rng.randint(-9, 9) for _ in range(12)))
        eps = sign_of_path(sphere_path, w)
        if 0 in eps:
            continue
        assert all(eps[p] != 0 for p in positions)


def test_cone_sign_caveat(sphere_path, sphere_cone):
    from signstab import cone_sign_caveat

    assert cone_sign_caveat(sphere_path, sphere_cone)  # generators differ
    single = Cone((sphere_cone.generators[0],))
    assert not cone_sign_caveat(sphere_path, single)
