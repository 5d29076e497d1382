"""Exact feasibility LPs over the rationals.

Only one problem shape is needed: find ``y >= 0`` with ``A y = b``.  It is
solved by the phase-one simplex method on a dense ``Fraction`` tableau with
Bland's rule, so it always terminates and never rounds.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from . import exact as ex


def nonnegative_solution(columns: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...] | None:
    """Return ``y >= 0`` with ``sum_k y_k columns[k] = b``, or None if infeasible."""
    b = ex.vec(b)
    m = len(b)
    k = len(columns)
    if k == 0:
        return () if ex.is_zero(b) else None
    # tableau rows: [A | I_art | rhs], with rhs >= 0
    T = []
    for i in range(m):
        sign = -1 if b[i] < 0 else 1
        row = [sign * Fraction(columns[j][i]) for j in range(k)]
        row += [Fraction(int(i == r)) for r in range(m)]
        row.append(sign * b[i])
        T.append(row)
    basis = [k + i for i in range(m)]
    ncol = k + m
    # phase-one objective: minimise the sum of artificials; reduced costs
    cost = [Fraction(0)] * ncol + [Fraction(0)]
    for row in T:
        for j in range(k):
            cost[j] -= row[j]
        cost[-1] -= row[-1]

    while True:
        entering = next((j for j in range(ncol) if cost[j] < 0), None)
        if entering is None:
            break
        best = None
        for i, row in enumerate(T):
            if row[entering] > 0:
                ratio = row[-1] / row[entering]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:  # cannot happen in phase one: objective bounded below by 0
            raise ArithmeticError("unbounded phase-one problem")
        _pivot(T, cost, best[1], entering)
        basis[best[1]] = entering

    if cost[-1] != 0:
        return None
    y = [Fraction(0)] * k
    for i, var in enumerate(basis):
        if var < k:
            y[var] = T[i][-1]
    return tuple(y)


def _pivot(T, cost, r, c) -> None:
    piv = T[r][c]
    T[r] = [x / piv for x in T[r]]
    pr = T[r]
    for i, row in enumerate(T):
        if i != r and row[c] != 0:
            f = row[c]
            T[i] = [a - f * p for a, p in zip(row, pr)]
    f = cost[c]
    if f != 0:
        cost[:] = [a - f * p for a, p in zip(cost, pr)]


def conic_combination(generators: Sequence[Sequence], target: Sequence):
    """Nonnegative coefficients expressing ``target`` in the cone of ``generators``."""
    return nonnegative_solution(generators, target)


def convex_hull_contains(points: Sequence[Sequence], target: Sequence) -> bool:
    """Exact test ``target in conv(points)``."""
    if not points:
        return False
    cols = [tuple(p) + (1,) for p in points]
    return nonnegative_solution(cols, tuple(target) + (1,)) is not None
