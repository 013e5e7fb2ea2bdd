"""Tropical points, the signed piecewise-linear X-transformation, transport
along mutation paths, sign sequences, and presentation matrices.

A tropical point is a tuple of exact scalars indexed by the seed's unfrozen
indices in increasing order.  Frozen coordinates do not exist here.
"""

from __future__ import annotations

from typing import Sequence

from . import matrices as mx
from .errors import DimensionMismatchError, NonStrictSignError
from .scalars import Scalar, scalar_sign
from .seeds import Flip, MutationPath, Seed, apply_perm, mutate_b

TropPoint = tuple[Scalar, ...]
SignSeq = tuple[int, ...]

_SIGN_TO_CHAR = {1: "+", 0: "0", -1: "-"}
_CHAR_TO_SIGN = {"+": 1, "0": 0, "-": -1}


def sign_str(eps: SignSeq) -> str:
    return "".join(_SIGN_TO_CHAR[e] for e in eps)


def parse_sign_str(text: str) -> SignSeq:
    cleaned = text.replace(",", "").replace(" ", "")
    try:
        return tuple(_CHAR_TO_SIGN[c] for c in cleaned)
    except KeyError as exc:
        raise ValueError(f"bad sign character in {text!r}") from exc


def is_strict(eps: SignSeq) -> bool:
    return all(e != 0 for e in eps)


def check_point(seed: Seed, w: Sequence[Scalar]) -> TropPoint:
    if len(w) != seed.n_uf:
        raise DimensionMismatchError(
            f"point has {len(w)} coordinates, seed has {seed.n_uf} unfrozen"
        )
    return tuple(w)


def trop_mutate(seed: Seed, k: int, w: Sequence[Scalar]) -> TropPoint:
    """Signed tropical X-transformation at direction k:

    x'_k = -x_k and x'_i = x_i + [sgn(x_k) * b_ik]_+ * x_k for i != k.
    """
    seed.require_unfrozen(k)
    w = check_point(seed, w)
    order = seed.unfrozen_order
    kp = order.index(k)
    s = scalar_sign(w[kp])
    out = list(w)
    out[kp] = -w[kp]
    if s != 0:
        b = seed.b
        for ip, i in enumerate(order):
            if i == k:
                continue
            coef = max(s * b[i][k], 0)
            if coef:
                out[ip] = w[ip] + coef * w[kp]
    return tuple(out)


def _permute_point(seed: Seed, sigma: tuple[int, ...], w: TropPoint) -> TropPoint:
    order = seed.unfrozen_order
    pos = {idx: p for p, idx in enumerate(order)}
    out = [None] * len(w)
    for idx in order:
        out[pos[sigma[idx]]] = w[pos[idx]]
    return tuple(out)


def transport(path: MutationPath, w: Sequence[Scalar]):
    """Carry a point along the path.

    Returns (final point, list of points before each step).
    """
    seed = path.initial
    w = check_point(seed, w)
    intermediates = []
    for step in path.steps:
        intermediates.append(w)
        if isinstance(step, Flip):
            w = trop_mutate(seed, step.k, w)
            seed = mutate_b(seed, step.k)
        else:
            w = _permute_point(seed, step.sigma, w)
            seed = apply_perm(seed, step.sigma)
    return w, intermediates


def sign_of_path(path: MutationPath, w: Sequence[Scalar]) -> SignSeq:
    """Sign of the mutating coordinate just before each flip."""
    seed = path.initial
    w = check_point(seed, w)
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
    return tuple(signs)


def edge_matrix(seed: Seed, k: int, eps: int) -> mx.Matrix:
    """Linear branch of the tropical transformation on the half-space
    sgn(x_k) = eps: E_kk = -1, E_ik = [eps*b_ik]_+, identity elsewhere."""
    if eps not in (1, -1):
        raise NonStrictSignError((0,), "edge matrix requires a strict sign")
    seed.require_unfrozen(k)
    order = seed.unfrozen_order
    kp = order.index(k)
    n = len(order)
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    rows[kp][kp] = -1
    for ip, i in enumerate(order):
        if i != k:
            rows[ip][kp] = max(eps * seed.b[i][k], 0)
    return mx.freeze(rows)


def _uf_perm_matrix(seed: Seed, sigma: tuple[int, ...]) -> mx.Matrix:
    order = seed.unfrozen_order
    pos = {idx: p for p, idx in enumerate(order)}
    return mx.perm_matrix(tuple(pos[sigma[idx]] for idx in order))


def presentation_matrix_for_sign(path: MutationPath, eps: SignSeq) -> mx.Matrix:
    """E_gamma^eps: the product, in application order (right to left), of edge
    matrices at the recorded seeds and permutation matrices."""
    if len(eps) != path.h:
        raise DimensionMismatchError(
            f"sign sequence length {len(eps)} differs from h = {path.h}"
        )
    if not is_strict(eps):
        raise NonStrictSignError(
            tuple(i for i, e in enumerate(eps) if e == 0),
            "presentation matrix requires a strict sign sequence",
        )
    seed = path.initial
    result = mx.identity(seed.n_uf)
    nu = 0
    for step in path.steps:
        if isinstance(step, Flip):
            result = mx.mat_mul(edge_matrix(seed, step.k, eps[nu]), result)
            nu += 1
            seed = mutate_b(seed, step.k)
        else:
            result = mx.mat_mul(_uf_perm_matrix(seed, step.sigma), result)
            seed = apply_perm(seed, step.sigma)
    return result


def presentation_matrix_at_point(path: MutationPath, w: Sequence[Scalar]) -> mx.Matrix:
    """Presentation matrix at a differentiable point (strict sign required)."""
    eps = sign_of_path(path, w)
    if not is_strict(eps):
        raise NonStrictSignError(tuple(i for i, e in enumerate(eps) if e == 0))
    return presentation_matrix_for_sign(path, eps)


def normalize_point(w: TropPoint) -> TropPoint:
    """Divide by the largest absolute coordinate (exact); fixes rays."""
    if not w:
        return w
    biggest = None
    for x in w:
        ax = -x if scalar_sign(x) < 0 else x
        if biggest is None or scalar_sign(ax - biggest) > 0:
            biggest = ax
    if biggest is None or scalar_sign(biggest) == 0:
        return w
    return tuple(x / biggest for x in w)


def rescale(w: Sequence[Scalar], c) -> TropPoint:
    return tuple(c * x for x in w)
