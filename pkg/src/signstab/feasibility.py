"""Exact feasibility of homogeneous linear systems with strict/weak/equality
constraints, with rational witness points.

The open-cone question "is there x with r.x > 0 for all rows r" drives the
realizable-sign enumeration.  Backends: Fourier-Motzkin elimination with
redundancy pruning in dimension <= 8, phase-1 rational simplex (Bland's
rule) above; strict constraints become ">= 1" by homogeneity.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

FM_MAX_DIM = 8


def _normalize_row(row):
    """Scale an integer/rational row to a primitive integer row."""
    den = 1
    for x in row:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in row]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


# -- Fourier-Motzkin ---------------------------------------------------------


def _fm_eliminate(rows, dim):
    """Eliminate variables one by one; rows are (coeffs, strict) pairs.

    Returns the elimination stack for back-substitution, or None when an
    inconsistent all-zero strict row shows up.
    """
    stack = []
    current = list(rows)
    for var in range(dim - 1, -1, -1):
        pos, neg, rest = [], [], []
        for coeffs, strict in current:
            c = coeffs[var]
            if c > 0:
                pos.append((coeffs, strict))
            elif c < 0:
                neg.append((coeffs, strict))
            else:
                rest.append((coeffs, strict))
        stack.append((var, pos, neg))
        combined = {}
        for pc, ps in pos:
            for nc, ns in neg:
                a, b = pc[var], -nc[var]
                new = tuple(
                    b * pc[j] + a * nc[j] if j != var else 0 for j in range(dim)
                )
                strict = ps or ns
                key = _normalize_row(new)
                combined[key] = combined.get(key, False) or strict
        current = []
        seen = {}
        for coeffs, strict in rest + [
            (tuple(k), s) for k, s in combined.items()
        ]:
            key = _normalize_row(coeffs)
            if all(x == 0 for x in key):
                if strict:
                    return None
                continue
            seen[key] = seen.get(key, False) or strict
        current = [(k, s) for k, s in seen.items()]
    return stack


def _fm_witness(stack, dim):
    """Back-substitute through the elimination stack to build a point."""
    x = [Fraction(0)] * dim
    for var, pos, neg in reversed(stack):
        lowers, uppers = [], []
        for coeffs, strict in pos:
            # coeffs[var] * x_var + rest > 0 (or >= 0)
            rest = sum(Fraction(coeffs[j]) * x[j] for j in range(dim) if j != var)
            bound = -rest / coeffs[var]
            lowers.append((bound, strict))
        for coeffs, strict in neg:
            rest = sum(Fraction(coeffs[j]) * x[j] for j in range(dim) if j != var)
            bound = -rest / coeffs[var]
            uppers.append((bound, strict))
        lo = max((b for b, _ in lowers), default=None)
        hi = min((b for b, _ in uppers), default=None)
        if lo is None and hi is None:
            x[var] = Fraction(0)
        elif lo is None:
            x[var] = hi - 1
        elif hi is None:
            x[var] = lo + 1
        else:
            x[var] = (lo + hi) / 2
    return x


def _fm_feasible(rows, dim):
    stack = _fm_eliminate(rows, dim)
    if stack is None:
        return None
    return _fm_witness(stack, dim)


# -- phase-1 simplex with fraction-free integer pivoting -------------------------


def _simplex_phase1(eq_rows, rhs):
    """Solve min sum(artificials) for A z = rhs, z >= 0 (artificial start).

    eq_rows: integer rows (length nv), rhs: nonnegative integers.  Returns
    the basic solution for the z variables (Fractions) if the optimum is
    zero, else None.  Fraction-free integer pivoting (Bareiss updates) with
    Bland's anti-cycling rule; every entry stays an exact integer and the
    running pivot is the common denominator.
    """
    m = len(eq_rows)
    nv = len(eq_rows[0]) if m else 0
    total = nv + m
    tableau = []
    for i, row in enumerate(eq_rows):
        r = [int(x) for x in row]
        r.extend(1 if i == j else 0 for j in range(m))
        r.append(int(rhs[i]))
        tableau.append(r)
    basis = list(range(nv, nv + m))
    # reduced-cost row for min sum of artificials, artificial basis start
    cost = [0] * (total + 1)
    for row in tableau:
        for j in range(total + 1):
            cost[j] += row[j]
    for j in range(nv, total):
        cost[j] -= 1
    prev_piv = 1
    while True:
        enter = next((j for j in range(total) if cost[j] > 0), None)
        if enter is None:
            break
        leave = None
        for i in range(m):
            t = tableau[i][enter]
            if t <= 0:
                continue
            if leave is None:
                leave = i
                continue
            lhs = tableau[i][total] * tableau[leave][enter]
            rhs_cmp = tableau[leave][total] * t
            if lhs < rhs_cmp or (lhs == rhs_cmp and basis[i] < basis[leave]):
                leave = i
        if leave is None:
            break  # phase-1 objective is bounded; defensive
        piv = tableau[leave][enter]
        prow = tableau[leave]
        for i in range(m):
            if i == leave:
                continue
            row = tableau[i]
            f = row[enter]
            if f:
                tableau[i] = [
                    (piv * a - f * b) // prev_piv for a, b in zip(row, prow)
                ]
            elif piv != prev_piv:
                tableau[i] = [(piv * a) // prev_piv for a in row]
        f = cost[enter]
        if f:
            cost = [(piv * a - f * b) // prev_piv for a, b in zip(cost, prow)]
        elif piv != prev_piv:
            cost = [(piv * a) // prev_piv for a in cost]
        basis[leave] = enter
        prev_piv = piv
    if cost[total] != 0:
        return None
    solution = [Fraction(0)] * total
    for i, b in enumerate(basis):
        solution[b] = Fraction(tableau[i][total], prev_piv)
    if any(solution[j] != 0 for j in range(nv, total)):
        return None
    return solution[:nv]


def _simplex_feasible(strict_rows, weak_rows, eq_rows, dim):
    """Witness for {S x >= 1, W x >= 0, E x = 0} via x = u - v, u,v >= 0.

    Rows must already be integer (the public entry points normalize).
    """
    rows, rhs = [], []

    def expand(coeffs):
        c = [int(x) for x in coeffs]
        return c + [-x for x in c]

    slack_count = len(strict_rows) + len(weak_rows)
    slot = 0
    for coeffs in strict_rows:
        r = expand(coeffs) + [0] * slack_count
        r[2 * dim + slot] = -1
        slot += 1
        rows.append(r)
        rhs.append(1)
    for coeffs in weak_rows:
        r = expand(coeffs) + [0] * slack_count
        r[2 * dim + slot] = -1
        slot += 1
        rows.append(r)
        rhs.append(0)
    for coeffs in eq_rows:
        rows.append(expand(coeffs) + [0] * slack_count)
        rhs.append(0)
    sol = _simplex_phase1(rows, rhs)
    if sol is None:
        return None
    x = [sol[j] - sol[dim + j] for j in range(dim)]
    # exact re-check of the witness guards the fraction-free pivoting
    for coeffs in strict_rows:
        if sum(Fraction(c) * v for c, v in zip(coeffs, x)) < 1:
            raise ArithmeticError("simplex witness failed exact verification")
    for coeffs in weak_rows:
        if sum(Fraction(c) * v for c, v in zip(coeffs, x)) < 0:
            raise ArithmeticError("simplex witness failed exact verification")
    for coeffs in eq_rows:
        if sum(Fraction(c) * v for c, v in zip(coeffs, x)) != 0:
            raise ArithmeticError("simplex witness failed exact verification")
    return x


# -- public API ---------------------------------------------------------------


def open_cone_witness(rows, dim):
    """A rational x with r.x > 0 for every row, or None if the open cone is
    empty.  Rows may be empty (any point works, the origin is returned)."""
    if not rows:
        return [Fraction(0)] * dim
    norm = [_normalize_row(r) for r in rows]
    if any(all(x == 0 for x in r) for r in norm):
        return None
    if dim <= FM_MAX_DIM:
        return _fm_feasible([(r, True) for r in norm], dim)
    return _simplex_feasible(norm, [], [], dim)


def mixed_cone_witness(strict, weak, eq, dim):
    """Witness for the mixed system {s.x > 0, w.x >= 0, e.x = 0}."""
    strict = [_normalize_row(r) for r in strict]
    weak = [_normalize_row(r) for r in weak]
    eq = [_normalize_row(r) for r in eq]
    for r in strict:
        if all(x == 0 for x in r):
            return None
    weak = [r for r in weak if any(x != 0 for x in r)]
    eq = [r for r in eq if any(x != 0 for x in r)]
    if dim <= FM_MAX_DIM and not eq:
        rows = [(r, True) for r in strict] + [(r, False) for r in weak]
        return _fm_feasible(rows, dim)
    return _simplex_feasible(strict, weak, eq, dim)


def verify_open(rows, x) -> bool:
    return all(sum(Fraction(c) * xi for c, xi in zip(r, x)) > 0 for r in rows)
