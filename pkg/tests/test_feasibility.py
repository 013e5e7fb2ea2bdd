import random
from fractions import Fraction

from signstab.feasibility import (
    _fm_feasible,
    _simplex_feasible,
    mixed_cone_witness,
    open_cone_witness,
    verify_open,
)


def test_contradiction_infeasible():
    assert open_cone_witness([(1, 0), (-1, 0)], 2) is None


def test_open_quadrant_feasible():
    w = open_cone_witness([(1, 0), (0, 1)], 2)
    assert w is not None and w[0] > 0 and w[1] > 0


def test_zero_row_infeasible():
    assert open_cone_witness([(0, 0, 0)], 3) is None


def test_no_rows_feasible():
    assert open_cone_witness([], 4) is not None


def test_witness_strictness_high_dim():
    rows = [tuple(1 if i == j else 0 for j in range(10)) for i in range(10)]
    w = open_cone_witness(rows, 10)  # simplex branch
    assert w is not None and verify_open(rows, w)


def random_rows(rng, dim, count):
    return [
        tuple(rng.randint(-4, 4) for _ in range(dim)) for _ in range(count)
    ]


def test_fm_and_simplex_agree():
    rng = random.Random(11)
    for _ in range(300):
        dim = rng.randint(1, 5)
        rows = random_rows(rng, dim, rng.randint(1, 6))
        fm = _fm_feasible([(r, True) for r in rows], dim)
        sx = _simplex_feasible(rows, [], [], dim)
        assert (fm is None) == (sx is None)
        if fm is not None:
            assert verify_open(rows, fm)
            assert verify_open(rows, sx)


def test_mixed_constraints():
    # x > 0, y >= 0, x + y = 0 forces y = -x < 0: infeasible
    assert mixed_cone_witness([(1, 0)], [(0, 1)], [(1, 1)], 2) is None
    # x > 0, -x + y >= 0 feasible
    w = mixed_cone_witness([(1, 0)], [(-1, 1)], [], 2)
    assert w is not None
    assert w[0] > 0 and -w[0] + w[1] >= 0
    # equality plane through a strict cone
    w = mixed_cone_witness([(1, 1, 0)], [], [(0, 0, 1)], 3)
    assert w is not None and w[0] + w[1] > 0 and w[2] == 0


def test_weak_only_always_feasible_at_origin():
    w = mixed_cone_witness([], [(1, 2), (-3, 4)], [], 2)
    assert w is not None  # the origin satisfies weak rows


def test_fm_witness_respects_weak_rows():
    rows = [((1, 0), True), ((-1, 1), False)]
    w = _fm_feasible(rows, 2)
    assert w is not None
    assert w[0] > 0 and -w[0] + w[1] >= 0


def test_fraction_rows_supported():
    rows = [(Fraction(1, 2), Fraction(-1, 3)), (Fraction(0), Fraction(2, 7))]
    w = open_cone_witness(rows, 2)
    assert w is not None and verify_open(rows, w)
