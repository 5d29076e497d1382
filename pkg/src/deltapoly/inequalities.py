"""Stability and weak stability inequalities for n-tuples of Delta-lengths.

An inequality is stored as one integral functional per polygon side and reads

    sum_i  coeffs[i] . h_i  <=  0 .
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import exact as ex
from .coxeter import RootSystemData, build_root_system, sharp
from .lp import convex_hull_contains
from .schubert import cohomology_ring, point_products

MAX_SIDES = 8


class InequalityError(ValueError):
    pass


def _canonical(rows) -> tuple[tuple[int, ...], ...]:
    """Positive rescaling of a rational coefficient block to coprime integers."""
    flat = ex.primitive([x for r in rows for x in r])
    width = len(rows[0])
    return tuple(tuple(flat[i * width:(i + 1) * width]) for i in range(len(rows)))


@dataclass(frozen=True)
class LinearInequality:
    coefficients: tuple[tuple[int, ...], ...]
    provenance: tuple = field(default=(), compare=False)

    @classmethod
    def make(cls, rows, provenance=()) -> "LinearInequality":
        coeffs = _canonical(rows)
        if all(c == 0 for r in coeffs for c in r):
            raise InequalityError("zero inequality")
        return cls(coeffs, tuple(provenance))

    @property
    def n(self) -> int:
        return len(self.coefficients)

    def evaluate(self, hs) -> Fraction:
        return sum((ex.dot(c, h) for c, h in zip(self.coefficients, hs)), Fraction(0))

    def permuted(self, perm) -> "LinearInequality":
        """Coefficients for the tuple ``(h_perm[0], ..., h_perm[n-1])``."""
        coeffs = [None] * self.n
        for new, old in enumerate(perm):
            coeffs[new] = self.coefficients[old]
        return LinearInequality(tuple(coeffs), self.provenance)

    def orbit_representative(self) -> tuple[tuple[int, ...], ...]:
        """Lexicographically smallest coefficient block in the S_n-orbit."""
        return min(tuple(self.coefficients[p] for p in perm)
                   for perm in itertools.permutations(range(self.n)))

    def flat(self) -> tuple[int, ...]:
        return tuple(c for r in self.coefficients for c in r)

    def to_text(self) -> str:
        return " | ".join(" ".join(str(c) for c in r) for r in self.coefficients) + " <= 0"

    @classmethod
    def from_text(cls, line: str) -> "LinearInequality":
        body, sep, rhs = line.partition("<=")
        if not sep or rhs.strip() != "0":
            raise InequalityError(f"expected '... <= 0', got {line!r}")
        rows = [[int(t) for t in part.split()] for part in body.split("|")]
        if len({len(r) for r in rows}) != 1:
            raise InequalityError(f"ragged coefficient groups in {line!r}")
        return cls.make(rows)


@dataclass(frozen=True)
class InequalitySystem:
    root_system: str
    n: int
    inequalities: tuple[LinearInequality, ...]
    includes_chamber: bool

    def __len__(self) -> int:
        return len(self.inequalities)

    def __iter__(self):
        return iter(self.inequalities)

    def coefficient_set(self) -> set:
        return {q.coefficients for q in self.inequalities}


def _merge(rs, n, ineqs, chamber: bool) -> InequalitySystem:
    seen = {}
    for q in ineqs:
        seen.setdefault(q.coefficients, q)
    if chamber:
        for q in chamber_system(rs, n):
            seen.setdefault(q.coefficients, q)
    ordered = tuple(seen[k] for k in sorted(seen))
    return InequalitySystem(rs.name, n, ordered, chamber)


def _check_n(n: int, max_sides: int) -> None:
    if n < 3:
        raise InequalityError("need n >= 3")
    if n > max_sides:
        raise InequalityError(f"n = {n} exceeds the configured limit {max_sides}")


def chamber_system(rs: RootSystemData, n: int) -> list[LinearInequality]:
    """``-alpha(h_i) <= 0`` for each side and each simple root."""
    zero = (0,) * rs.ambient_dim
    out = []
    for i in range(n):
        for k, a in enumerate(rs.chamber_inequalities, start=1):
            rows = [zero] * n
            rows[i] = ex.neg(a)
            out.append(LinearInequality.make(rows, ("chamber", i + 1, k)))
    return out


def stability_system(rs: RootSystemData, n: int, mode: str = "exact_point",
                     with_chamber: bool = True, max_sides: int = MAX_SIDES) -> InequalitySystem:
    """One inequality ``sum_i lambda_{j_i}(h_i) <= 0`` per admissible degree tuple."""
    _check_n(n, max_sides)
    ineqs = []
    for vertex in (1, 2):
        ring = cohomology_ring(rs.name, vertex)
        for t in point_products(ring, n, mode):
            rows = [ring.classes[j].weight for j in t]
            ineqs.append(LinearInequality.make(rows, ("grassmannian", rs.name, vertex, t)))
    return _merge(rs, n, ineqs, with_chamber)


def weak_system(rs: RootSystemData, n: int, with_chamber: bool = True,
                max_sides: int = MAX_SIDES, roles=None) -> InequalitySystem:
    """Scalar components of ``w h_a^# <= w h_b + sum_{k != a,b} h_k``.

    Expanded over all ``w`` in W, all ordered pairs of distinct sides ``(a, b)``
    (or only ``roles``, 1-based) and both fundamental weights.
    """
    _check_n(n, max_sides)
    w0 = rs.longest.matrix
    minus_w0 = tuple(tuple(-x for x in r) for r in w0)
    ineqs = []
    for w in rs.weyl_group:
        for zi, lam in enumerate(rs.parabolic_weights, start=1):
            lam_w = ex.vecmat(lam, w.matrix)
            on_a = ex.vecmat(lam_w, minus_w0)
            on_b = ex.neg(lam_w)
            rest = ex.neg(lam)
            pairs = [(roles[0] - 1, roles[1] - 1)] if roles else itertools.permutations(range(n), 2)
            for a, b in pairs:
                rows = [rest] * n
                rows[a] = on_a
                rows[b] = on_b
                if all(x == 0 for r in rows for x in r):
                    continue
                ineqs.append(LinearInequality.make(rows, ("weak", w.word, zi, a + 1, b + 1)))
    return _merge(rs, n, ineqs, with_chamber)


def system(rs: RootSystemData, n: int, mode: str = "exact_point", with_chamber: bool = True,
           max_sides: int = MAX_SIDES) -> InequalitySystem:
    if mode == "weak":
        return weak_system(rs, n, with_chamber, max_sides)
    if mode in ("exact", "exact_point"):
        return stability_system(rs, n, "exact_point", with_chamber, max_sides)
    if mode == "nonzero":
        return stability_system(rs, n, "nonzero", with_chamber, max_sides)
    raise InequalityError(f"unknown mode {mode!r}")


def orbit_representatives(sys: InequalitySystem, grassmannian=None) -> list:
    """Sorted S_n-orbit representatives, optionally for one Grassmannian family."""
    reps = set()
    for q in sys:
        prov = q.provenance
        if grassmannian is not None and (not prov or prov[0] != "grassmannian"
                                         or prov[2] != grassmannian):
            continue
        reps.add(q.orbit_representative())
    return sorted(reps)


@dataclass(frozen=True)
class Membership:
    member: bool
    violated: tuple[LinearInequality, ...] = ()
    tight: tuple[LinearInequality, ...] = ()

    def __bool__(self) -> bool:
        return self.member


def membership(sys: InequalitySystem, hs) -> Membership:
    """Exact evaluation of every inequality at a tuple of dominant vectors."""
    rs = build_root_system(sys.root_system)
    hs = [rs.check_vector(h) for h in hs]
    if len(hs) != sys.n:
        raise InequalityError(f"expected {sys.n} side lengths, got {len(hs)}")
    for h in hs:
        if not rs.is_dominant(h):
            raise InequalityError(f"{tuple(map(str, h))} is not in the Weyl chamber")
    violated, tight = [], []
    for q in sys:
        v = q.evaluate(hs)
        if v > 0:
            violated.append(q)
        elif v == 0:
            tight.append(q)
    return Membership(not violated, tuple(violated), tuple(tight))


def weak_geometric_test(rs: RootSystemData, hs) -> bool:
    """``h_1^# - h_2`` lies in the convex hull of the W-orbit of ``h_3 + ... + h_n``."""
    hs = [rs.check_vector(h) for h in hs]
    if len(hs) < 3:
        raise InequalityError("need at least three side lengths")
    target = ex.sub(sharp(rs, hs[0]), hs[1])
    s = hs[2]
    for h in hs[3:]:
        s = ex.add(s, h)
    orbit = sorted({w(s) for w in rs.weyl_group})
    return convex_hull_contains(orbit, target)


def weak_ordered_test(rs: RootSystemData, hs) -> bool:
    """All inequalities ``w h_1^# <= w h_2 + h_3 + ... + h_n`` with sides in their given roles."""
    hs = [rs.check_vector(h) for h in hs]
    s1 = sharp(rs, hs[0])
    rest = hs[2]
    for h in hs[3:]:
        rest = ex.add(rest, h)
    for w in rs.weyl_group:
        rhs = ex.add(w(hs[1]), rest)
        if any(ex.dot(lam, ex.sub(rhs, w(s1))) < 0 for lam in rs.parabolic_weights):
            return False
    return True
