"""Rational linear subspaces of Q^n in canonical (reduced row echelon) form."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import exact as ex


@dataclass(frozen=True, order=True)
class Subspace:
    """RREF basis rows, so equal subspaces compare (and hash) equal."""

    ambient: int
    rows: tuple

    @classmethod
    def span(cls, vectors: Sequence[Sequence], ambient: int) -> "Subspace":
        red, _ = ex.row_echelon([ex.vec(v) for v in vectors]) if vectors else ([], [])
        return cls(ambient, tuple(tuple(r) for r in red))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def is_proper(self) -> bool:
        return 0 < self.dim < self.ambient

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(list(self.rows) + list(other.rows), self.ambient)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def contains(self, other: "Subspace") -> bool:
        return (self + other).dim == self.dim

    def __repr__(self) -> str:
        rows = ", ".join("(" + " ".join(ex.fmt(x) for x in r) + ")" for r in self.rows)
        return f"Subspace[{rows}]"


def span(vectors: Sequence[Sequence], ambient: int) -> Subspace:
    return Subspace.span(vectors, ambient)


def intersect(u: Subspace, v: Subspace) -> Subspace:
    n = u.ambient
    if u.dim == 0 or v.dim == 0:
        return Subspace(n, ())
    # x = sum a_i u_i = sum b_j v_j  <=>  [U^T | -V^T] (a, b) = 0
    cols = [list(r) for r in u.rows] + [[-x for x in r] for r in v.rows]
    system = [[c[i] for c in cols] for i in range(n)]
    vecs = []
    for sol in ex.nullspace(system, len(cols)):
        a = sol[: u.dim]
        vecs.append(tuple(sum((a[k] * u.rows[k][i] for k in range(u.dim)), Fraction(0))
                          for i in range(n)))
    return Subspace.span(vecs, n)


def orthogonal(v: Subspace, form) -> Subspace:
    """``V^perp = {x : b(v, x) = 0 for all v in V}``."""
    n = v.ambient
    if v.dim == 0:
        return Subspace.span([[int(i == j) for j in range(n)] for i in range(n)], n)
    rows = [ex.vecmat(r, form) for r in v.rows]
    return Subspace.span(ex.nullspace(rows, n), n)


def is_isotropic(v: Subspace, form) -> bool:
    return all(ex.dot(ex.vecmat(a, form), b) == 0 for a in v.rows for b in v.rows)
