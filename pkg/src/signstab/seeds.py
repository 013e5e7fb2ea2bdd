"""Seeds, matrix mutation, paths in the labeled exchange graph, C/G-matrices,
and exchange matrices of ideal triangulations.

Only skew-symmetric seeds are accepted.  Frozen rows and columns of B are
carried along but ignored by every tropical computation, which works on
the unfrozen block.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import matrices as mx
from .errors import (
    FrozenIndexError,
    SignCoherenceError,
    SplitViolationError,
)


@dataclass(frozen=True)
class Seed:
    """Skew-symmetric integer exchange matrix with an unfrozen index subset."""

    b: mx.Matrix
    unfrozen: frozenset[int]

    def __post_init__(self):
        b = mx.freeze(self.b)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "unfrozen", frozenset(self.unfrozen))
        n = len(b)
        if not mx.is_skew_symmetric(b):
            raise ValueError("exchange matrix must be skew-symmetric")
        if any(not isinstance(x, int) for row in b for x in row):
            raise ValueError("exchange matrix must be integer")
        if not all(0 <= i < n for i in self.unfrozen):
            raise ValueError("unfrozen indices out of range")

    @property
    def n(self) -> int:
        return len(self.b)

    @property
    def unfrozen_order(self) -> tuple[int, ...]:
        return tuple(sorted(self.unfrozen))

    @property
    def n_uf(self) -> int:
        return len(self.unfrozen)

    def unfrozen_block(self) -> mx.Matrix:
        order = self.unfrozen_order
        return tuple(tuple(self.b[i][j] for j in order) for i in order)

    def require_unfrozen(self, k: int):
        if k not in self.unfrozen:
            raise FrozenIndexError(f"index {k} is frozen or out of range")


@dataclass(frozen=True)
class Flip:
    k: int


@dataclass(frozen=True)
class Permute:
    sigma: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(self.sigma))
        if sorted(self.sigma) != list(range(len(self.sigma))):
            raise ValueError(f"not a permutation: {self.sigma}")


PathStep = Flip | Permute


@dataclass(frozen=True)
class MutationPath:
    initial: Seed
    steps: tuple[PathStep, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))

    @property
    def h(self) -> int:
        """Number of horizontal (flip) steps."""
        return sum(1 for s in self.steps if isinstance(s, Flip))

    def flip_indices(self) -> tuple[int, ...]:
        return tuple(s.k for s in self.steps if isinstance(s, Flip))


def mutate_b(seed: Seed, k: int) -> Seed:
    """Matrix mutation in direction k (unfrozen)."""
    seed.require_unfrozen(k)
    b = seed.b
    n = seed.n
    new = [
        [
            -b[i][j]
            if i == k or j == k
            else b[i][j]
            + max(b[i][k], 0) * max(b[k][j], 0)
            - max(-b[i][k], 0) * max(-b[k][j], 0)
            for j in range(n)
        ]
        for i in range(n)
    ]
    return Seed(new, seed.unfrozen)


def check_split(seed: Seed, sigma: tuple[int, ...]):
    if len(sigma) != seed.n:
        raise SplitViolationError("permutation length differs from seed size")
    for i in range(seed.n):
        if (i in seed.unfrozen) != (sigma[i] in seed.unfrozen):
            raise SplitViolationError(
                f"permutation maps index {i} across the unfrozen/frozen split"
            )


def apply_perm(seed: Seed, sigma: tuple[int, ...]) -> Seed:
    """Relabeled seed: b'_{sigma(i) sigma(j)} = b_{ij}."""
    check_split(seed, sigma)
    n = seed.n
    new = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            new[sigma[i]][sigma[j]] = seed.b[i][j]
    return Seed(new, seed.unfrozen)


def step_seed(seed: Seed, step: PathStep) -> Seed:
    if isinstance(step, Flip):
        return mutate_b(seed, step.k)
    return apply_perm(seed, step.sigma)


def seeds_along(path: MutationPath) -> list[Seed]:
    """Seeds at every vertex of the path; element i precedes step i."""
    out = [path.initial]
    for step in path.steps:
        out.append(step_seed(out[-1], step))
    return out


def is_loop(path: MutationPath) -> bool:
    """End matrix equal to start matrix, entrywise."""
    return seeds_along(path)[-1].b == path.initial.b


def _uf_position_perm(seed: Seed, sigma: tuple[int, ...]) -> tuple[int, ...]:
    """Permutation induced on unfrozen coordinate positions."""
    order = seed.unfrozen_order
    pos = {idx: p for p, idx in enumerate(order)}
    return tuple(pos[sigma[idx]] for idx in order)


def _column_sign(col) -> int:
    """Common sign of a sign-coherent integer column."""
    has_pos = any(x > 0 for x in col)
    has_neg = any(x < 0 for x in col)
    if has_pos and has_neg:
        raise SignCoherenceError(f"column {col} is not sign-coherent")
    if not has_pos and not has_neg:
        raise SignCoherenceError("zero C-matrix column")
    return 1 if has_pos else -1


def c_matrix(path: MutationPath) -> mx.Matrix:
    """C-matrix of the end vertex relative to the start (unfrozen block)."""
    return _cg_matrices(path)[0]


def g_matrix(path: MutationPath) -> mx.Matrix:
    """G-matrix of the end vertex relative to the start (unfrozen block)."""
    return _cg_matrices(path)[1]


def _cg_matrices(path: MutationPath) -> tuple[mx.Matrix, mx.Matrix]:
    """Run the sign-coherent C/G recurrences along the path.

    At a flip in direction k with tropical sign eps (the common sign of the
    current column c_k): c'_k = -c_k and c'_j = c_j + [eps*b_kj]_+ c_k, while
    g'_k = -g_k + sum_j [-eps*b_jk]_+ g_j.  A vertical step relabels the
    COLUMNS the same way it relabels B (rows stay in the initial basis);
    relabeling rows instead silently desynchronizes the columns from the
    b-entries used at later flips and breaks sign coherence.
    """
    seed = path.initial
    order = seed.unfrozen_order
    pos = {idx: p for p, idx in enumerate(order)}
    n = len(order)
    c = [list(row) for row in mx.identity(n)]
    g = [list(row) for row in mx.identity(n)]
    for step in path.steps:
        if isinstance(step, Flip):
            seed.require_unfrozen(step.k)
            kp = pos[step.k]
            col = [c[i][kp] for i in range(n)]
            eps = _column_sign(col)
            b = seed.b
            for jp, j in enumerate(order):
                if jp == kp:
                    continue
                coef = max(eps * b[step.k][j], 0)
                if coef:
                    for i in range(n):
                        c[i][jp] += coef * col[i]
            for i in range(n):
                c[i][kp] = -col[i]
            gcol = [
                -g[i][kp]
                + sum(
                    max(-eps * seed.b[j][step.k], 0) * g[i][pos[j]]
                    for j in order
                    if j != step.k
                )
                for i in range(n)
            ]
            for i in range(n):
                g[i][kp] = gcol[i]
            seed = mutate_b(seed, step.k)
        else:
            check_split(seed, step.sigma)
            col_perm = _uf_position_perm(seed, step.sigma)
            for matrix in (c, g):
                for i in range(n):
                    new_row = [None] * n
                    for jp, img in enumerate(col_perm):
                        new_row[img] = matrix[i][jp]
                    matrix[i] = new_row
            seed = apply_perm(seed, step.sigma)
    return mx.freeze(c), mx.freeze(g)


# -- triangulations ----------------------------------------------------------


@dataclass(frozen=True)
class Triangulation:
    """Ideal triangulation given by arc labels and clockwise triangle triples.

    Every non-frozen arc must bound exactly two triangle slots and every
    frozen (boundary) arc exactly one; repeated arcs inside one triangle
    (self-folded) are rejected.
    """

    arcs: tuple[str, ...]
    frozen_arcs: frozenset[str]
    triangles: tuple[tuple[str, str, str], ...]

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(self.arcs))
        object.__setattr__(self, "frozen_arcs", frozenset(self.frozen_arcs))
        object.__setattr__(
            self, "triangles", tuple(tuple(t) for t in self.triangles)
        )
        known = set(self.arcs)
        if len(self.arcs) != len(known):
            raise ValueError("duplicate arc labels")
        if not self.frozen_arcs <= known:
            raise ValueError("frozen arcs not among arcs")
        counts = {a: 0 for a in self.arcs}
        for tri in self.triangles:
            if len(tri) != 3:
                raise ValueError(f"triangle {tri} does not have three sides")
            if len(set(tri)) != 3:
                raise ValueError(f"self-folded triangle {tri} is unsupported")
            for a in tri:
                if a not in counts:
                    raise ValueError(f"unknown arc {a!r} in triangle {tri}")
                counts[a] += 1
        for a, cnt in counts.items():
            want = 1 if a in self.frozen_arcs else 2
            if cnt != want:
                raise ValueError(
                    f"arc {a!r} occurs in {cnt} triangle slots, expected {want}"
                )


def b_from_triangulation(tri: Triangulation) -> Seed:
    """Exchange matrix B = sum over triangles of B(t).

    b_ab(t) = +1 when the triangle t has a and b as consecutive sides in the
    clockwise order, -1 for counter-clockwise.  Arc order in ``tri.arcs``
    fixes the index order of the seed; unfrozen = non-frozen arcs.
    """
    index = {a: i for i, a in enumerate(tri.arcs)}
    n = len(tri.arcs)
    b = [[0] * n for _ in range(n)]
    for t in tri.triangles:
        for a, bb in zip(t, t[1:] + t[:1]):
            i, j = index[a], index[bb]
            b[i][j] += 1
            b[j][i] -= 1
    unfrozen = frozenset(
        i for i, a in enumerate(tri.arcs) if a not in tri.frozen_arcs
    )
    return Seed(b, unfrozen)
