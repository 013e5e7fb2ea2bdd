import random

import pytest

from signstab import (
    Flip,
    FrozenIndexError,
    MutationPath,
    Permute,
    Seed,
    SignCoherenceError,
    SplitViolationError,
    Triangulation,
    apply_perm,
    b_from_triangulation,
    c_matrix,
    g_matrix,
    is_loop,
    mutate_b,
    seeds_along,
)
from signstab.matrices import det, int_inverse, is_skew_symmetric, transpose

A2 = Seed([[0, 1], [-1, 0]], {0, 1})


def kronecker(ell: int) -> Seed:
    return Seed([[0, -ell], [ell, 0]], {0, 1})


def random_seed(rng, max_rank=5, max_entry=3, frozen=0):
    n = rng.randint(2, max_rank) + frozen
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            b[i][j] = rng.randint(-max_entry, max_entry)
            b[j][i] = -b[i][j]
    return Seed(b, frozenset(range(n - frozen)))


def random_flip_path(rng, seed, length):
    steps = [Flip(rng.choice(sorted(seed.unfrozen))) for _ in range(length)]
    return MutationPath(seed, tuple(steps))


def test_mutate_example():
    assert mutate_b(A2, 0).b == ((0, -1), (1, 0))


def test_mutate_kronecker_sign_flip():
    assert mutate_b(kronecker(4), 0).b == ((0, 4), (-4, 0))


def test_mutate_involution_random():
    rng = random.Random(1)
    for _ in range(50):
        s = random_seed(rng)
        k = rng.choice(sorted(s.unfrozen))
        assert mutate_b(mutate_b(s, k), k).b == s.b
        assert is_skew_symmetric(mutate_b(s, k).b)


def test_mutate_frozen_rejected():
    s = Seed([[0, 1], [-1, 0]], {0})
    with pytest.raises(FrozenIndexError):
        mutate_b(s, 1)
    with pytest.raises(FrozenIndexError):
        mutate_b(s, 5)


def test_apply_perm_examples():
    assert apply_perm(A2, (0, 1)).b == A2.b
    assert apply_perm(A2, (1, 0)).b == ((0, -1), (1, 0))


def test_apply_perm_group_action():
    rng = random.Random(2)
    for _ in range(30):
        s = random_seed(rng)
        sigma = list(range(s.n))
        rng.shuffle(sigma)
        inv = [0] * s.n
        for i, v in enumerate(sigma):
            inv[v] = i
        assert apply_perm(apply_perm(s, tuple(sigma)), tuple(inv)).b == s.b


def test_apply_perm_split_violation():
    s = Seed([[0, 1], [-1, 0]], {0})
    with pytest.raises(SplitViolationError):
        apply_perm(s, (1, 0))


def test_seeds_along():
    assert [s.b for s in seeds_along(MutationPath(A2, ()))] == [A2.b]
    path = MutationPath(A2, (Flip(0), Flip(1), Flip(0)))
    bs = [s.b for s in seeds_along(path)]
    assert bs == [
        ((0, 1), (-1, 0)),
        ((0, -1), (1, 0)),
        ((0, 1), (-1, 0)),
        ((0, -1), (1, 0)),
    ]


def test_kronecker_loop():
    path = MutationPath(kronecker(3), (Flip(0), Permute((1, 0))))
    assert seeds_along(path)[-1].b == kronecker(3).b
    assert is_loop(path)
    assert not is_loop(MutationPath(A2, (Flip(0),)))
    assert is_loop(MutationPath(A2, ()))


def test_c_matrix_examples():
    assert c_matrix(MutationPath(A2, ())) == ((1, 0), (0, 1))
    assert c_matrix(MutationPath(A2, (Flip(0),))) == ((-1, 1), (0, 1))
    assert c_matrix(MutationPath(A2, (Flip(0), Flip(1)))) == ((0, -1), (1, -1))


def test_g_matrix_examples():
    assert g_matrix(MutationPath(A2, ())) == ((1, 0), (0, 1))
    assert g_matrix(MutationPath(A2, (Flip(0),))) == ((-1, 0), (1, 1))
    assert g_matrix(MutationPath(A2, (Flip(0), Flip(1)))) == ((-1, -1), (1, 0))


def test_tropical_duality_random():
    rng = random.Random(3)
    for _ in range(120):
        s = random_seed(rng, max_rank=5)
        path = random_flip_path(rng, s, rng.randint(0, 8))
        c = c_matrix(path)
        g = g_matrix(path)
        assert g == transpose(int_inverse(c))
        assert det(c) in (1, -1)


def test_c_matrix_sign_coherence_violation_detected():
    # a non-skew-symmetric input breaks sign coherence; Seed refuses to
    # build it, so feed the recurrence a hand-made bad "seed" instead
    class Fake:
        b = ((0, 1), (1, 0))
        unfrozen = frozenset({0, 1})
        unfrozen_order = (0, 1)
        n = 2
        n_uf = 2

        def require_unfrozen(self, k):
            pass

    from signstab.seeds import _cg_matrices

    bad = MutationPath.__new__(MutationPath)
    object.__setattr__(bad, "initial", Fake())
    object.__setattr__(bad, "steps", (Flip(0), Flip(0), Flip(0)))
    with pytest.raises((SignCoherenceError, ValueError)):
        _cg_matrices(bad)


def test_permutation_steps_in_cg():
    path = MutationPath(kronecker(3), (Flip(0), Permute((1, 0))))
    c = c_matrix(path)
    g = g_matrix(path)
    assert g == transpose(int_inverse(c))


# -- triangulations -----------------------------------------------------------


def test_single_clockwise_triangle_all_frozen():
    tri = Triangulation(("a", "b", "c"), frozenset("abc"), (("a", "b", "c"),))
    seed = b_from_triangulation(tri)
    assert seed.b == ((0, 1, -1), (-1, 0, 1), (1, -1, 0))
    assert seed.unfrozen == frozenset()


def test_square_with_diagonal():
    tri = Triangulation(
        ("d", "p", "q", "r", "s"),
        frozenset("pqrs"),
        (("p", "d", "s"), ("d", "q", "r")),
    )
    seed = b_from_triangulation(tri)
    i = {a: n for n, a in enumerate(("d", "p", "q", "r", "s"))}
    row_d = seed.b[i["d"]]
    assert row_d[i["p"]] == -1
    assert row_d[i["s"]] == 1
    assert row_d[i["q"]] == 1
    assert row_d[i["r"]] == -1
    assert seed.unfrozen == frozenset({i["d"]})


def test_self_folded_rejected():
    with pytest.raises(ValueError):
        Triangulation(("a", "b"), frozenset(), (("a", "a", "b"),))


def test_arc_incidence_violations():
    with pytest.raises(ValueError):
        Triangulation(("a", "b", "c"), frozenset(), (("a", "b", "c"),))
    with pytest.raises(ValueError):
        Triangulation(
            ("a", "b", "c", "d"),
            frozenset("d"),
            (("a", "b", "c"), ("a", "b", "d")),
        )


def test_sphere_triangulation_loads(data_dir):
    from signstab.io import load_triangulation

    tri = load_triangulation(data_dir / "sphere3b_triangulation.json")
    seed = b_from_triangulation(tri)
    assert seed.n == 18
    assert seed.n_uf == 12
    assert is_skew_symmetric(seed.b)
    assert seed.b[0][1] == -1 and seed.b[0][6] == 1 and seed.b[0][8] == -1
