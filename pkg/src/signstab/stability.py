"""Orbit iteration, strict and weak sign-stability detection, exact
enumeration of realizable sign sequences, characteristic polynomials,
spectral radii, cluster stretch factors, and exact eigenpair checks.

Floats appear only inside spectral-radius estimation and are never used
for sign decisions; exactness claims are routed through verify_eigenpair
or polynomial evaluation in Q(sqrt(d)).
"""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np


def _thread_cap() -> int:
    """Parallelism cap from SIGNSTAB_THREADS (default 1)."""
    try:
        return max(1, int(os.environ.get("SIGNSTAB_THREADS", "1")))
    except ValueError:
        return 1

from . import matrices as mx
from .errors import (
    DimensionMismatchError,
    LoopRequiredError,
    NotRealizableError,
    SignstabError,
)
from .feasibility import mixed_cone_witness, open_cone_witness
from .scalars import Scalar, scalar_sign
from .seeds import Flip, MutationPath, Seed, is_loop, seeds_along
from .tropical import (
    SignSeq,
    TropPoint,
    check_point,
    is_strict,
    normalize_point,
    sign_str,
)


# -- orbits -------------------------------------------------------------------


@dataclass
class OrbitReport:
    """Signs and normalized points along the forward orbit of a loop.

    iterations[i] pairs the sign of the path at phi^i(w) with the
    normalized point phi^{i+1}(w).  Detection fields are empirical: they
    look at the trailing `window` iterations only.
    """

    point: TropPoint
    iterations: list[tuple[SignSeq, TropPoint]]
    window: int
    detected_stable: Optional[SignSeq] = None
    detected_weak_stable: Optional[SignSeq] = None
    stabilization_index: Optional[int] = None
    all_zero_warning: bool = False


def _sign_and_transport(path: MutationPath, w: TropPoint):
    """One pass recording both the sign sequence and the end point."""
    from .seeds import apply_perm, mutate_b
    from .tropical import _permute_point, trop_mutate

    seed = path.initial
    signs = []
    for step in path.steps:
        if isinstance(step, Flip):
            kp = seed.unfrozen_order.index(step.k)
            signs.append(scalar_sign(w[kp]))
            w = trop_mutate(seed, step.k, w)
            seed = mutate_b(seed, step.k)
        else:
            w = _permute_point(seed, step.sigma, w)
            seed = apply_perm(seed, step.sigma)
    return tuple(signs), w


def iterate_orbit(
    path: MutationPath,
    w: Sequence[Scalar],
    n_max: int,
    window: Optional[int] = None,
) -> OrbitReport:
    """Iterate the loop n_max times from w, normalizing between iterations."""
    if not is_loop(path):
        raise LoopRequiredError("orbit iteration needs a mutation loop")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if window is None:
        window = max(2, n_max // 2)
    w = check_point(path.initial, w)
    iterations = []
    current = w
    for _ in range(n_max):
        signs, nxt = _sign_and_transport(path, current)
        current = normalize_point(nxt)
        iterations.append((signs, current))
    report = OrbitReport(point=w, iterations=iterations, window=window)
    report.detected_stable = detect_stable_sign(report, window)
    weak = detect_weak_stable_sign(report, window)
    report.detected_weak_stable = weak
    report.all_zero_warning = all(e == 0 for e in weak)
    report.stabilization_index = _stabilization_index(iterations)
    return report


def _stabilization_index(iterations) -> Optional[int]:
    if len(iterations) < 2:
        return None
    last = iterations[-1][0]
    idx = len(iterations) - 1
    while idx > 0 and iterations[idx - 1][0] == last:
        idx -= 1
    return idx if idx < len(iterations) - 1 else None


def detect_stable_sign(report: OrbitReport, window: int) -> Optional[SignSeq]:
    """Common strict sign of the last `window` iterations, if constant."""
    if window < 2:
        raise ValueError("window must be >= 2")
    if len(report.iterations) < window:
        return None
    tail = [s for s, _ in report.iterations[-window:]]
    if all(s == tail[0] for s in tail) and is_strict(tail[0]):
        return tail[0]
    return None


def detect_weak_stable_sign(report: OrbitReport, window: int) -> SignSeq:
    """Entrywise: the constant value over the tail where constant, else 0."""
    if window < 2:
        raise ValueError("window must be >= 2")
    tail = [s for s, _ in report.iterations[-window:]]
    h = len(tail[0]) if tail else 0
    out = []
    for i in range(h):
        vals = {s[i] for s in tail}
        out.append(vals.pop() if len(vals) == 1 else 0)
    return tuple(out)


def sign_geq(a: SignSeq, b: SignSeq) -> bool:
    """a >= b in the zeroing order: b arises from a by zeroing strict entries."""
    if len(a) != len(b):
        raise DimensionMismatchError("sign sequences of different length")
    return all(y == 0 or y == x for x, y in zip(a, b))


# -- realizable sign sequences ------------------------------------------------


def _int_b_list(seed: Seed) -> list[list[int]]:
    order = seed.unfrozen_order
    return [[seed.b[i][j] for j in order] for i in order]


def _path_tables(path: MutationPath):
    """Per-step data on unfrozen positions: ('flip', kp, B) or ('perm', pos)."""
    steps = []
    for seed, step in zip(seeds_along(path), path.steps):
        order = seed.unfrozen_order
        pos = {idx: p for p, idx in enumerate(order)}
        if isinstance(step, Flip):
            seed.require_unfrozen(step.k)
            steps.append(("flip", pos[step.k], _int_b_list(seed)))
        else:
            steps.append(("perm", tuple(pos[step.sigma[idx]] for idx in order)))
    return steps


def _fast_signseq(tables, w: list) -> SignSeq:
    """Sign sequence of an integer point, plain int arithmetic."""
    signs = []
    for entry in tables:
        if entry[0] == "flip":
            _, kp, b = entry
            wk = w[kp]
            s = (wk > 0) - (wk < 0)
            signs.append(s)
            nxt = list(w)
            nxt[kp] = -wk
            if s:
                for i in range(len(w)):
                    if i != kp:
                        c = s * b[i][kp]
                        if c > 0:
                            nxt[i] = w[i] + c * wk
            w = nxt
        else:
            _, perm = entry
            nxt = [0] * len(w)
            for i, p in enumerate(perm):
                nxt[p] = w[i]
            w = nxt
    return tuple(signs)


def _apply_edge_left(m, kp, coeffs):
    """Left-multiply the running matrix by an edge matrix, in place."""
    krow = m[kp]
    for i, c in enumerate(coeffs):
        if c and i != kp:
            row = m[i]
            for j in range(len(row)):
                row[j] += c * krow[j]
    m[kp] = [-x for x in krow]


def _apply_perm_left(m, perm):
    out = [None] * len(m)
    for i, p in enumerate(perm):
        out[p] = m[i]
    m[:] = out


def enumerate_realizable_signs_with_witnesses(
    path: MutationPath,
    rng_seed: int = 0,
    samples: Optional[int] = None,
    max_branch: Optional[int] = None,
) -> dict[SignSeq, TropPoint]:
    """All realizable strict sign sequences, each with a rational witness.

    Branch-and-prune on the sign tree: each branch carries the running
    linear map; a flip splits on the sign of the mutating functional and
    branches whose open cone is empty are pruned exactly.  Random integer
    points seed the tree with witnesses first, so the exact feasibility
    oracle only runs at the undiscovered fringe.
    """
    n = path.initial.n_uf
    h = path.h
    tables = _path_tables(path)
    if h == 0:
        return {(): tuple(Fraction(0) for _ in range(n))}

    rng = random.Random(rng_seed)
    if samples is None:
        samples = min(60000, 200 * (2 ** min(h, 8)))
    prefix_witness: dict[tuple, list] = {}
    for _ in range(samples):
        w = [rng.randint(-40, 40) for _ in range(n)]
        seq = _fast_signseq(tables, list(w))
        pre = []
        for e in seq:
            if e == 0:
                break
            pre.append(e)
            prefix_witness.setdefault(tuple(pre), w)

    found: dict[SignSeq, TropPoint] = {}
    budget = [max_branch if max_branch is not None else -1]

    def dfs(step_idx, nu, matrix, constraints, prefix, witness):
        if budget[0] == 0:
            raise SignstabError("branch budget exhausted (max_branch)")
        if budget[0] > 0:
            budget[0] -= 1
        while step_idx < len(tables) and tables[step_idx][0] == "perm":
            _apply_perm_left(matrix, tables[step_idx][1])
            step_idx += 1
        if nu == h:
            found[tuple(prefix)] = tuple(Fraction(v) for v in witness)
            return
        _, kp, b = tables[step_idx]
        functional = tuple(matrix[kp])
        w_side = 0
        if witness is not None:
            val = sum(f * x for f, x in zip(functional, witness))
            w_side = (val > 0) - (val < 0)
        for side in (1, -1):
            child_prefix = prefix + [side]
            child_witness = None
            if side == w_side:
                child_witness = witness
            else:
                sampled = prefix_witness.get(tuple(child_prefix))
                if sampled is not None:
                    child_witness = sampled
            rows = constraints + [
                tuple(side * f for f in functional)
            ]
            if child_witness is None:
                child_witness = open_cone_witness(rows, n)
                if child_witness is None:
                    continue
            child_matrix = [list(row) for row in matrix]
            coeffs = [max(side * b[i][kp], 0) for i in range(n)]
            _apply_edge_left(child_matrix, kp, coeffs)
            dfs(step_idx + 1, nu + 1, child_matrix, rows, child_prefix,
                child_witness)

    identity = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    start_witness = prefix_witness.get((), None)
    if start_witness is None:
        start_witness = [1] + [0] * (n - 1)
    dfs(0, 0, identity, [], [], start_witness)
    return found


def enumerate_realizable_signs(
    path: MutationPath,
    rng_seed: int = 0,
    samples: Optional[int] = None,
    max_branch: Optional[int] = None,
) -> set[SignSeq]:
    return set(
        enumerate_realizable_signs_with_witnesses(
            path, rng_seed=rng_seed, samples=samples, max_branch=max_branch
        )
    )


def _sign_constraint_rows(path: MutationPath, eps: SignSeq):
    """Rows eps_nu * (row k_nu of the running linear map), one per flip."""
    if len(eps) != path.h or not is_strict(eps):
        raise DimensionMismatchError("need a strict sequence of length h")
    n = path.initial.n_uf
    tables = _path_tables(path)
    matrix = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    rows = []
    nu = 0
    for entry in tables:
        if entry[0] == "perm":
            _apply_perm_left(matrix, entry[1])
            continue
        _, kp, b = entry
        rows.append(tuple(eps[nu] * f for f in matrix[kp]))
        coeffs = [max(eps[nu] * b[i][kp], 0) for i in range(n)]
        _apply_edge_left(matrix, kp, coeffs)
        nu += 1
    return rows


def sign_cone(path: MutationPath, eps: SignSeq) -> "SignCone":
    """The open cone of points whose sign sequence along the path is eps."""
    rows = _sign_constraint_rows(path, eps)
    return SignCone(tuple((row, ">") for row in rows))


def realization_witness(path: MutationPath, eps: SignSeq):
    """A rational point whose sign sequence is exactly eps, or None."""
    rows = _sign_constraint_rows(path, eps)
    witness = open_cone_witness(rows, path.initial.n_uf)
    if witness is None:
        return None
    return tuple(Fraction(v) for v in witness)


# -- sign cones ---------------------------------------------------------------


@dataclass(frozen=True)
class SignCone:
    """Conjunction of homogeneous constraints (functional, relation)."""

    constraints: tuple[tuple[tuple, str], ...]

    def __post_init__(self):
        good = {">", ">=", "="}
        object.__setattr__(
            self,
            "constraints",
            tuple((tuple(f), rel) for f, rel in self.constraints),
        )
        for _, rel in self.constraints:
            if rel not in good:
                raise ValueError(f"bad relation {rel!r}")


def cone_feasible(cone: SignCone) -> bool:
    """Exact feasibility of the mixed system (strict handled exactly)."""
    if not cone.constraints:
        return True
    dim = len(cone.constraints[0][0])
    strict = [f for f, rel in cone.constraints if rel == ">"]
    weak = [f for f, rel in cone.constraints if rel == ">="]
    eq = [f for f, rel in cone.constraints if rel == "="]
    return mixed_cone_witness(strict, weak, eq, dim) is not None


# -- polynomials ---------------------------------------------------------------


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial, coefficients in ascending degree."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c = c[:-1]
        if not c:
            c = (0,)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return IntPoly(tuple(out))

    def divides_into(self, other: "IntPoly"):
        """other / self when self is monic; None if not exactly divisible."""
        if self.coeffs[-1] != 1:
            raise ValueError("divisor must be monic")
        rem = list(other.coeffs)
        if len(rem) < len(self.coeffs):
            return None if any(rem) else IntPoly((0,))
        quot = [0] * (len(rem) - len(self.coeffs) + 1)
        for i in range(len(quot) - 1, -1, -1):
            q = rem[i + self.degree]
            quot[i] = q
            if q:
                for j, c in enumerate(self.coeffs):
                    rem[i + j] -= q * c
        if any(rem):
            return None
        return IntPoly(tuple(quot))

    def __str__(self):
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "1" if i == 0 else ("nu" if i == 1 else f"nu^{i}")
            if i > 0 and abs(c) == 1:
                term = mono if c == 1 else f"-{mono}"
            else:
                term = f"{c}" if i == 0 else f"{c}*{mono}"
            terms.append(term)
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out


def char_poly(m: mx.Matrix) -> IntPoly:
    """det(nu*I - M), exact integer coefficients (Faddeev-LeVerrier)."""
    return IntPoly(mx.charpoly(m))


def cyclotomic_like_product(cycle_lengths: Sequence[int]) -> IntPoly:
    """Product of (nu^c - 1) over the given cycle lengths."""
    out = IntPoly((1,))
    for c in cycle_lengths:
        factor = [0] * (c + 1)
        factor[0], factor[c] = -1, 1
        out = out * IntPoly(tuple(factor))
    return out


# -- spectral radius ----------------------------------------------------------


def spectral_radius(m: mx.Matrix, max_squarings: int = 40) -> tuple[float, float]:
    """Estimate rho(M) by normalized repeated squaring.

    Returns (estimate, reported bound): rho ~ ||M^(2^k)||^(1/2^k) with the
    norm renormalized before every squaring.  When the normalized square
    keeps collapsing (defective top eigenvalue, e.g. a unipotent block),
    float64 roundoff puts a floor under the decay, so the squaring is
    redone in high-precision arithmetic before reporting.
    """
    n = len(m)
    if n == 0:
        return 0.0, 0.0
    est, delta, collapsed = _squaring_pass_float(m, max_squarings)
    if est == 0.0:
        return 0.0, 0.0
    if collapsed:
        est, delta = _squaring_pass_mp(m, max_squarings)
    bound = 2.0 * min(delta, 1.0) + 1e-11 * max(1.0, abs(est))
    return est, bound


def _squaring_pass_float(m, max_squarings):
    a = np.array(m, dtype=float)
    log_scale = 0.0
    prev = None
    est = 0.0
    last_delta = math.inf
    norm_now = 1.0
    for k in range(1, max_squarings + 1):
        s = float(np.linalg.norm(a))
        if s == 0.0:
            return 0.0, 0.0, False
        a = a / s
        log_scale = 2.0 * (log_scale + math.log(s))
        a = a @ a
        norm_now = float(np.linalg.norm(a))
        if norm_now == 0.0:
            return 0.0, 0.0, False
        est = math.exp((log_scale + math.log(norm_now)) / 2.0 ** k)
        if prev is not None:
            last_delta = abs(est - prev)
            if last_delta < 1e-14 * max(1.0, abs(est)):
                break
        prev = est
    return est, last_delta, norm_now < 1e-3


def _squaring_pass_mp(m, max_squarings):
    from mpmath import mp

    with mp.workdps(60):
        a = [[mp.mpf(x) for x in row] for row in m]
        n = len(a)
        log_scale = mp.mpf(0)
        prev = None
        est = mp.mpf(0)
        last_delta = mp.inf
        for k in range(1, max_squarings + 1):
            s = mp.sqrt(sum(x * x for row in a for x in row))
            if s == 0:
                return 0.0, 0.0
            a = [[x / s for x in row] for row in a]
            log_scale = 2 * (log_scale + mp.log(s))
            a = [
                [sum(a[i][t] * a[t][j] for t in range(n)) for j in range(n)]
                for i in range(n)
            ]
            norm_now = mp.sqrt(sum(x * x for row in a for x in row))
            if norm_now == 0:
                return 0.0, 0.0
            est = mp.e ** ((log_scale + mp.log(norm_now)) / mp.mpf(2) ** k)
            if prev is not None:
                last_delta = abs(est - prev)
            prev = est
        return float(est), float(last_delta)


# -- stretch factor -----------------------------------------------------------


@dataclass
class StretchReport:
    value: float
    table: list[tuple[SignSeq, float, float]]
    radii_all_equal: bool
    exact_verified: Optional[bool] = None
    exact_value: Optional[Scalar] = None


def _strict_completions(eps_stab: SignSeq):
    zero_at = [i for i, e in enumerate(eps_stab) if e == 0]
    for mask in range(2 ** len(zero_at)):
        out = list(eps_stab)
        for bit, pos in enumerate(zero_at):
            out[pos] = 1 if (mask >> bit) & 1 else -1
        yield tuple(out)


def stretch_factor(
    path: MutationPath,
    eps_stab: SignSeq,
    candidate: Optional[Scalar] = None,
) -> StretchReport:
    """lambda = max spectral radius of E_gamma^eps over realizable strict
    completions eps >= eps_stab.  When eps_stab is strict this is the
    cluster stretch factor of the loop."""
    from .tropical import presentation_matrix_for_sign

    if not is_loop(path):
        raise LoopRequiredError("stretch factor needs a mutation loop")
    if len(eps_stab) != path.h:
        raise DimensionMismatchError("stable sign has wrong length")

    def entry(eps):
        if realization_witness(path, eps) is None:
            return None
        e = presentation_matrix_for_sign(path, eps)
        rho, bound = spectral_radius(e)
        return (eps, rho, bound)

    completions = list(_strict_completions(eps_stab))
    workers = _thread_cap()
    if workers > 1 and len(completions) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(entry, completions))
    else:
        rows = [entry(eps) for eps in completions]
    table = [row for row in rows if row is not None]
    if not table:
        raise NotRealizableError(
            f"no realizable strict completion of {sign_str(eps_stab)}"
        )
    value = max(rho for _, rho, _ in table)
    tol = max(bound for _, _, bound in table) + 1e-9
    radii_all_equal = all(abs(rho - value) <= tol for _, rho, _ in table)
    report = StretchReport(value, table, radii_all_equal)
    if candidate is not None:
        ok = True
        for eps, _, _ in table:
            p = char_poly(presentation_matrix_for_sign(path, eps))
            if p(candidate) != 0:
                ok = False
                break
        report.exact_verified = ok and abs(float(candidate) - value) <= 1e-9
        if report.exact_verified:
            report.exact_value = candidate
    return report


# -- eigenpairs and cones -------------------------------------------------------


def verify_eigenpair(m: mx.Matrix, lam: Scalar, x: Sequence[Scalar]) -> bool:
    """Exact check M x = lambda x."""
    if len(m) != len(x):
        raise DimensionMismatchError("matrix and vector sizes differ")
    for row in m:
        if len(row) != len(x):
            raise DimensionMismatchError("matrix is not square")
    for i, row in enumerate(m):
        lhs = sum((c * xi for c, xi in zip(row, x)), start=Fraction(0))
        if lhs != lam * x[i]:
            return False
    return True


def canonical_cone_membership(seed: Seed, w: Sequence[Scalar]) -> str:
    """Classify against Omega_can: interior of the all-positive or
    all-negative orthant, else outside."""
    w = check_point(seed, w)
    signs = {scalar_sign(x) for x in w}
    if signs == {1}:
        return "plus_interior"
    if signs == {-1}:
        return "minus_interior"
    return "outside"
