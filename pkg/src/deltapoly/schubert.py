"""Integral cohomology of the two Grassmannians G/P_1, G/P_2 of a rank-two group.

Each graded piece ``H^{2j}(G/P_i)`` is infinite cyclic, generated by a Schubert
class ``gamma_j``.  Multiplication by the hyperplane class is given by
Chevalley's formula, ``gamma_1 * gamma_j = b_j gamma_{j+1}``, and the whole ring
follows from the ratios ``gamma_1^j = a_j gamma_j``:

    gamma_j * gamma_k = (a_{j+k} / (a_j a_k)) gamma_{j+k}.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import prod

from . import exact as ex
from .coxeter import RootSystemData, build_root_system, coset_representatives
from .exact import Vector

# Tabulated multiplication data, used as a cross-check of the Chevalley computation:
# hyperplane-class rows b_0 .. b_{m-2}.
TABULATED_CHEVALLEY = {
    ("A2", 1): (1, 1),
    ("A2", 2): (1, 1),
    ("B2", 1): (1, 2, 1),
    ("B2", 2): (1, 1, 1),
    ("G2", 1): (1, 1, 2, 1, 1),
    ("G2", 2): (1, 3, 2, 3, 1),
}


class SchubertError(ValueError):
    pass


@dataclass(frozen=True)
class SchubertClass:
    degree: int
    weight: Vector  # lambda_j, a functional on a
    coweight: Vector  # the vertex of the W-orbit of zeta_i dual to the cycle
    cycle_dim: int


@dataclass(frozen=True)
class CohomologyRing:
    root_system: str
    vertex: int
    m: int
    classes: tuple[SchubertClass, ...]
    chevalley_row: tuple[int, ...]

    @property
    def grassmannian_id(self) -> tuple[str, int]:
        return (self.root_system, self.vertex)

    @property
    def top(self) -> int:
        return self.m - 1

    @property
    def weights(self) -> tuple[Vector, ...]:
        return tuple(c.weight for c in self.classes)

    @property
    def a(self) -> tuple[int, ...]:
        """``gamma_1^j = a_j gamma_j``."""
        out = [1, 1]
        for j in range(1, self.m - 1):
            out.append(out[j] * self.chevalley_row[j])
        return tuple(out[: self.m])

    def c(self, j: int, k: int) -> int:
        """Structure constant ``c_{jk}`` with ``gamma_j gamma_k = c_{jk} gamma_{j+k}``."""
        if j + k > self.top:
            return 0
        a = self.a
        r = Fraction(a[j + k], a[j] * a[k])
        if r.denominator != 1:
            raise SchubertError(f"non-integral structure constant c_{j}{k} = {r}")
        return int(r)

    @property
    def structure(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.c(j, k) for k in range(self.m)) for j in range(self.m))

    def product_coefficient(self, degrees) -> int:
        """Coefficient of ``gamma_{sum}`` in ``gamma_{j_1} ... gamma_{j_n}`` (0 past the top)."""
        total = sum(degrees)
        if total > self.top:
            return 0
        a = self.a
        r = Fraction(a[total], prod(a[j] for j in degrees))
        if r.denominator != 1:
            raise SchubertError(f"non-integral product coefficient for {tuple(degrees)}")
        return int(r)


def class_table(rs: RootSystemData, vertex: int) -> list[SchubertClass]:
    """Schubert classes of ``G/P_vertex`` indexed by cohomological degree.

    The cycle of complex dimension ``d`` corresponds to the coset of length ``d``
    in ``W / Stab(zeta)``, with weight ``lambda_P o w^{-1}``; the class of degree
    ``j`` is Poincare dual to the cycle of dimension ``m - 1 - j``.
    """
    if vertex not in (1, 2):
        raise SchubertError(f"vertex index must be 1 or 2, got {vertex}")
    reps = coset_representatives(rs, vertex)
    m = len(reps)
    lam = rs.parabolic_weights[vertex - 1]
    zeta = rs.fundamental_coweights[vertex - 1]
    by_dim = {}
    for w in reps:
        winv = rs.inverse(w)
        by_dim[w.length] = (ex.vecmat(lam, winv.matrix), w(zeta))
    if sorted(by_dim) != list(range(m)):
        raise SchubertError("expected exactly one Schubert cell in each dimension")
    return [
        SchubertClass(degree=j, weight=by_dim[m - 1 - j][0], coweight=by_dim[m - 1 - j][1],
                      cycle_dim=m - 1 - j)
        for j in range(m)
    ]


def chevalley_multiply(rs: RootSystemData, vertex: int) -> tuple[int, ...]:
    """Coefficients ``b_j`` of ``gamma_1 * gamma_j = b_j gamma_{j+1}`` for j = 0..m-2.

    Chevalley's formula in terms of minimal coset representatives ``w`` of
    length ``j``: the coefficient of ``[w s_beta]`` in ``[s_i] * [w]`` is
    ``<omega_i, beta^vee>`` summed over positive roots ``beta`` with
    ``l(w s_beta) = l(w) + 1`` and ``w s_beta`` minimal in its coset.
    The j = 0 entry is 1 by convention (``gamma_0`` is the unit).
    """
    reps = coset_representatives(rs, vertex)
    minimal = {w.matrix for w in reps}
    omega = rs.fundamental_weights[vertex - 1]
    n = rs.ambient_dim
    row = [1]
    for w in reps[1:-1]:
        total = Fraction(0)
        for beta, cobeta in rs.positive_roots:
            s_beta = tuple(tuple(Fraction(int(r == c)) - cobeta[r] * beta[c] for c in range(n))
                           for r in range(n))
            ws = rs._by_matrix[ex.matmul(w.matrix, s_beta)]
            if ws.length == w.length + 1 and ws.matrix in minimal:
                total += ex.dot(omega, cobeta)
        if total.denominator != 1 or total <= 0:
            raise SchubertError(f"bad Chevalley coefficient {total} at degree {w.length}")
        row.append(int(total))
    return tuple(row)


@lru_cache(maxsize=None)
def cohomology_ring(name: str, vertex: int) -> CohomologyRing:
    rs = build_root_system(name)
    classes = class_table(rs, vertex)
    row = chevalley_multiply(rs, vertex)
    tabulated = TABULATED_CHEVALLEY[(rs.name, vertex)]
    if row != tabulated:
        raise SchubertError(
            f"Chevalley row {row} for {rs.name} P{vertex} disagrees with the tabulated {tabulated}")
    return CohomologyRing(rs.name, vertex, len(classes), tuple(classes), row)


def structure_constants(ring: CohomologyRing) -> tuple[tuple[int, ...], ...]:
    return ring.structure


def point_products(ring: CohomologyRing, n: int, mode: str = "exact_point") -> list[tuple[int, ...]]:
    """Ordered degree tuples ``(j_1..j_n)`` whose product hits the top degree.

    ``exact_point`` keeps the tuples whose product equals the point class,
    ``nonzero`` keeps all tuples of total degree ``m - 1``.
    """
    if n < 3:
        raise SchubertError("need n >= 3")
    if mode not in ("exact_point", "nonzero"):
        raise SchubertError(f"unknown mode {mode!r}")
    out = []
    for t in itertools.product(range(ring.m), repeat=n):
        if sum(t) != ring.top:
            continue
        if mode == "exact_point" and ring.product_coefficient(t) != 1:
            continue
        out.append(t)
    return out


def format_table(ring: CohomologyRing) -> str:
    """Multiplication table laid out with 1, g1, g2, ... headers."""
    names = ["1"] + [f"g{j}" for j in range(1, ring.m)]

    def cell(j, k):
        c = ring.c(j, k)
        if c == 0:
            return "0"
        return names[j + k] if c == 1 else f"{c}{names[j + k]}"

    rows = [[f"H*({ring.root_system} P{ring.vertex})"] + names]
    for j in range(ring.m):
        rows.append([names[j]] + [cell(j, k) for k in range(ring.m)])
    width = max(len(x) for r in rows for x in r)
    return "\n".join(" ".join(x.ljust(width) for x in r).rstrip() for r in rows) + "\n"
