"""Reduction cones, compatibility of path edges, reduced-subsequence
extraction, hereditariness verification, freezing, and block-structure
checks for cluster reduction.

Compatibility is tested on cone generators only: a flip direction is
compatible when its coordinate vanishes at that vertex for every
generator.  The reduced seed pattern itself is user input, never
synthesized here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionMismatchError, FrozenIndexError, SplitViolationError
from .scalars import Scalar, scalar_sign
from .seeds import Flip, MutationPath, Seed, apply_perm, mutate_b
from .stability import (
    IntPoly,
    cyclotomic_like_product,
    enumerate_realizable_signs,
    spectral_radius,
)
from .tropical import (
    SignSeq,
    TropPoint,
    _permute_point,
    check_point,
    presentation_matrix_for_sign,
    trop_mutate,
)


@dataclass(frozen=True)
class Cone:
    """Rational polyhedral cone spanned by generator points (initial chart)."""

    generators: tuple[TropPoint, ...]

    def __post_init__(self):
        gens = tuple(tuple(g) for g in self.generators)
        if not gens:
            raise ValueError("cone needs at least one generator")
        if len({len(g) for g in gens}) != 1:
            raise DimensionMismatchError("generators of mixed dimension")
        object.__setattr__(self, "generators", gens)


def _walk_with_generators(path: MutationPath, cone: Cone):
    """Yield (flip position, seed, unfrozen position, transported generators)
    at each flip; generators are carried through every step."""
    seed = path.initial
    gens = [check_point(seed, g) for g in cone.generators]
    nu = 0
    for step in path.steps:
        if isinstance(step, Flip):
            kp = seed.unfrozen_order.index(step.k)
            yield nu, seed, kp, gens
            gens = [trop_mutate(seed, step.k, g) for g in gens]
            seed = mutate_b(seed, step.k)
            nu += 1
        else:
            gens = [_permute_point(seed, step.sigma, g) for g in gens]
            seed = apply_perm(seed, step.sigma)


def edge_compatibility(path: MutationPath, cone: Cone) -> list[bool]:
    """Per-flip: does the mutating coordinate vanish on every generator."""
    out = []
    for _, _, kp, gens in _walk_with_generators(path, cone):
        out.append(all(scalar_sign(g[kp]) == 0 for g in gens))
    return out


def generator_coordinate_trace(path: MutationPath, cone: Cone):
    """Per-flip list of the mutating coordinate of each generator.

    Useful for spot-checking transported cone data against known values.
    """
    return [
        [g[kp] for g in gens]
        for _, _, kp, gens in _walk_with_generators(path, cone)
    ]


def cone_sign_caveat(path: MutationPath, cone: Cone) -> bool:
    """True when the generators have differing sign sequences.

    Compatibility is decided on generators; when their sign histories
    disagree the cone straddles walls and per-generator transport, while
    still exact, no longer describes one linear regime for the whole cone.
    """
    from .tropical import sign_of_path

    seqs = {sign_of_path(path, g) for g in cone.generators}
    return len(seqs) > 1


@dataclass
class HereditaryReport:
    passes: bool
    compatible_positions: list[int]
    violations: list[int]


def hereditary_check(
    path: MutationPath, cone: Cone, eps_stab: SignSeq
) -> HereditaryReport:
    """Every cone-compatible flip position must carry a strict stable sign."""
    if len(eps_stab) != path.h:
        raise DimensionMismatchError("stable sign has wrong length")
    compat = edge_compatibility(path, cone)
    positions = [i for i, c in enumerate(compat) if c]
    violations = [i for i in positions if eps_stab[i] == 0]
    return HereditaryReport(not violations, positions, violations)


def reduced_subsequence(path: MutationPath, cone: Cone) -> list[tuple[int, int]]:
    """(flip position, flip index) at the cone-compatible flips, in order.

    This is the horizontal skeleton of the reduced path; the vertical tail
    is left to the caller.
    """
    flips = path.flip_indices()
    compat = edge_compatibility(path, cone)
    return [(i, flips[i]) for i, c in enumerate(compat) if c]


def freeze(seed: Seed, frozen_out: Sequence[int]) -> Seed:
    """Cluster reduction: declare the given unfrozen directions frozen."""
    frozen_out = frozenset(frozen_out)
    if not frozen_out <= seed.unfrozen:
        raise FrozenIndexError("can only freeze unfrozen indices")
    return Seed(seed.b, seed.unfrozen - frozen_out)


def project_point(seed: Seed, w: Sequence[Scalar], j_uf: Sequence[int]) -> TropPoint:
    """Coordinate restriction onto the unfrozen subset j_uf."""
    w = check_point(seed, w)
    j_uf = frozenset(j_uf)
    if not j_uf <= seed.unfrozen:
        raise DimensionMismatchError("projection target not unfrozen")
    order = seed.unfrozen_order
    return tuple(w[p] for p, idx in enumerate(order) if idx in j_uf)


@dataclass
class BlockReport:
    ok: bool
    zero_block_exact: bool
    sign_count: int
    max_radius_diff: float
    details: list[tuple[SignSeq, float, float]]


def block_structure_check(
    path: MutationPath,
    frozen_out: Sequence[int],
    tolerance: float = 1e-9,
    rng_seed: int = 0,
) -> BlockReport:
    """Check the block form of presentation matrices for a J-only loop.

    With J = unfrozen minus frozen_out, every flip must lie in J and every
    permutation must preserve both J and frozen_out.  For each realizable
    strict sign the (J rows, K columns) block of E must vanish exactly and
    rho(E) must match rho(E restricted to J) within the tolerance.
    """
    seed = path.initial
    k_set = frozenset(frozen_out)
    if not k_set <= seed.unfrozen:
        raise FrozenIndexError("frozen_out must be unfrozen in the seed")
    j_set = seed.unfrozen - k_set
    for step in path.steps:
        if isinstance(step, Flip):
            if step.k not in j_set:
                raise SplitViolationError(f"flip at {step.k} leaves J")
        else:
            for i in j_set | k_set:
                if (step.sigma[i] in j_set) != (i in j_set):
                    raise SplitViolationError("permutation mixes J and K")
    order = seed.unfrozen_order
    j_pos = [p for p, idx in enumerate(order) if idx in j_set]
    k_pos = [p for p, idx in enumerate(order) if idx in k_set]
    details = []
    zero_ok = True
    max_diff = 0.0
    for eps in sorted(enumerate_realizable_signs(path, rng_seed=rng_seed)):
        e = presentation_matrix_for_sign(path, eps)
        if any(e[p][q] != 0 for p in j_pos for q in k_pos):
            zero_ok = False
        e_j = tuple(tuple(e[p][q] for q in j_pos) for p in j_pos)
        rho_full, _ = spectral_radius(e)
        rho_j, _ = spectral_radius(e_j)
        details.append((eps, rho_full, rho_j))
        max_diff = max(max_diff, abs(rho_full - rho_j))
    ok = zero_ok and max_diff <= tolerance
    return BlockReport(ok, zero_ok, len(details), max_diff, details)


def permutation_factor_check(p: IntPoly, cycle_lengths: Sequence[int]) -> bool:
    """Does the product of (nu^c - 1) over cycle lengths divide p exactly."""
    if p.coeffs[-1] != 1:
        raise ValueError("characteristic polynomial must be monic")
    factor = cyclotomic_like_product(cycle_lengths)
    return factor.divides_into(p) is not None
