"""Exact polyhedral cones ``{x : A x <= 0}``.

Rows and rays are integer tuples throughout.  Extreme rays are found with the
double description method; redundancy and containment questions are settled by
Farkas certificates from :mod:`deltapoly.lp`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import exact as ex
from .coxeter import build_root_system
from .inequalities import InequalitySystem
from .lp import conic_combination


class ConeError(ValueError):
    pass


class NotPointedError(ConeError):
    def __init__(self, lineality):
        super().__init__(f"cone is not pointed; lineality space has dimension {len(lineality)}")
        self.lineality = lineality


def _idot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


@dataclass(frozen=True)
class ConeHRep:
    dim: int
    rows: tuple[tuple[int, ...], ...]
    names: tuple = ()

    @classmethod
    def make(cls, rows, dim=None, names=None) -> "ConeHRep":
        rows = [ex.primitive(r) for r in rows]
        if dim is None:
            dim = len(rows[0])
        names = list(names) if names is not None else [None] * len(rows)
        keep = {}
        for r, nm in zip(rows, names):
            if any(r):
                keep.setdefault(r, nm)
        ordered = sorted(keep)
        return cls(dim, tuple(ordered), tuple(keep[r] for r in ordered))

    def satisfied_by(self, x) -> bool:
        return all(_idot(r, x) <= 0 for r in self.rows)


@dataclass(frozen=True)
class ConeVRep:
    dim: int
    rays: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.rays)


# --- conversion from inequality systems ----------------------------------------


def hrep_from_system(sys: InequalitySystem) -> ConeHRep:
    """Flatten a system to a cone in ``a^n`` (A2: drop z = -x - y on each side)."""
    rs = build_root_system(sys.root_system)
    rows, names = [], []
    for q in sys:
        flat = []
        for c in q.coefficients:
            if rs.sum_zero:
                flat += [c[0] - c[2], c[1] - c[2]]
            else:
                flat += list(c)
        rows.append(flat)
        names.append(q.provenance)
    dim = sys.n * (2 if rs.sum_zero else rs.ambient_dim)
    return ConeHRep.make(rows, dim, names)


def to_ambient(root_system: str, n: int, x) -> tuple[tuple[int, ...], ...]:
    """Split a reduced-coordinate vector into per-side ambient vectors."""
    rs = build_root_system(root_system)
    out = []
    for i in range(n):
        if rs.sum_zero:
            a, b = x[2 * i], x[2 * i + 1]
            out.append((a, b, -a - b))
        else:
            k = rs.ambient_dim
            out.append(tuple(x[k * i:k * (i + 1)]))
    return tuple(out)


def from_ambient(root_system: str, hs) -> tuple:
    rs = build_root_system(root_system)
    flat = []
    for h in hs:
        flat += list(h[:2]) if rs.sum_zero else list(h)
    return tuple(flat)


# --- double description ----------------------------------------------------------


def extreme_rays(h: ConeHRep) -> ConeVRep:
    rows = list(h.rows)
    d = h.dim
    if ex.rank(rows) < d if rows else d > 0:
        raise NotPointedError([ex.primitive(v) for v in ex.nullspace(rows, d)] if rows
                              else [tuple(int(i == j) for j in range(d)) for i in range(d)])

    # initial simplicial cone from d independent rows
    basis_idx: list[int] = []
    for i, r in enumerate(rows):
        if ex.rank([rows[j] for j in basis_idx] + [r]) > len(basis_idx):
            basis_idx.append(i)
            if len(basis_idx) == d:
                break
    binv = ex.inverse(ex.mat([rows[i] for i in basis_idx]))
    rays: list[tuple[int, ...]] = []
    masks: list[int] = []
    for k in range(d):
        col = [-binv[r][k] for r in range(d)]
        ray = ex.primitive(col)
        rays.append(ray)
        masks.append(sum(1 << basis_idx[j] for j in range(d) if j != k))

    remaining = [i for i in range(len(rows)) if i not in basis_idx]
    while remaining:
        # insert the row that the fewest current rays satisfy
        def satisfied(i):
            return sum(1 for r in rays if _idot(rows[i], r) <= 0)
        idx = min(remaining, key=lambda i: (satisfied(i), i))
        remaining.remove(idx)
        a = rows[idx]
        vals = [_idot(a, r) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        if not pos:
            bit = 1 << idx
            masks = [m | bit if v == 0 else m for m, v in zip(masks, vals)]
            continue
        neg = [k for k, v in enumerate(vals) if v < 0]
        new_rays, new_masks = [], []
        bit = 1 << idx
        for k, v in enumerate(vals):
            if v < 0:
                new_rays.append(rays[k])
                new_masks.append(masks[k])
            elif v == 0:
                new_rays.append(rays[k])
                new_masks.append(masks[k] | bit)
        need = d - 2
        for p in pos:
            mp = masks[p]
            for q in neg:
                common = mp & masks[q]
                if bin(common).count("1") < need:
                    continue
                if any((masks[t] & common) == common for t in range(len(rays)) if t != p and t != q):
                    continue
                vp, vq = vals[p], vals[q]
                r = tuple(vp * y - vq * x for x, y in zip(rays[p], rays[q]))
                new_rays.append(ex.primitive(r))
                new_masks.append(common | bit)
        rays, masks = new_rays, new_masks
    return ConeVRep(d, tuple(sorted(set(rays))))


def facets(v: ConeVRep) -> ConeHRep:
    """Irredundant H-representation of the cone spanned by ``v.rays`` (full-dimensional)."""
    polar = ConeHRep.make(v.rays, v.dim)
    return ConeHRep.make(extreme_rays(polar).rays, v.dim)


# --- redundancy -------------------------------------------------------------------


@dataclass(frozen=True)
class Redundancy:
    irredundant: ConeHRep
    redundant: tuple[bool, ...]
    implicit_equalities: tuple[int, ...]
    certificates: tuple  # per redundant row: {other row index: multiplier}


def irredundant(h: ConeHRep) -> Redundancy:
    """Flag row ``i`` iff it is a nonnegative combination of the other rows.

    By Farkas' lemma this is exactly the condition that dropping the row leaves
    the solution cone unchanged.
    """
    rows = h.rows
    flags, certs = [], []
    for i, r in enumerate(rows):
        others = [rows[j] for j in range(len(rows)) if j != i]
        y = conic_combination(others, r)
        flags.append(y is not None)
        if y is None:
            certs.append(None)
        else:
            idx = [j for j in range(len(rows)) if j != i]
            certs.append({idx[k]: c for k, c in enumerate(y) if c != 0})
    implicit = tuple(i for i, r in enumerate(rows) if conic_combination(rows, ex.neg(r)) is not None)
    keep = [i for i, f in enumerate(flags) if not f]
    sub = ConeHRep(h.dim, tuple(rows[i] for i in keep), tuple(h.names[i] for i in keep))
    return Redundancy(sub, tuple(flags), implicit, tuple(certs))


# --- containment -------------------------------------------------------------------


def _check_dims(h1: ConeHRep, h2: ConeHRep) -> None:
    if h1.dim != h2.dim:
        raise ConeError(f"dimension mismatch: {h1.dim} vs {h2.dim}")


def cone_contains(outer: ConeHRep, inner: ConeHRep, method: str = "rays") -> bool:
    """True iff ``{inner} subset {outer}``.

    ``rays`` enumerates the extreme rays of ``inner`` and tests them against the
    rows of ``outer``; ``farkas`` certifies each row of ``outer`` as a conic
    combination of the rows of ``inner``.
    """
    _check_dims(outer, inner)
    if method == "rays":
        v = extreme_rays(inner)
        return all(outer.satisfied_by(r) for r in v.rays)
    if method == "farkas":
        return all(conic_combination(inner.rows, r) is not None for r in outer.rows)
    raise ConeError(f"unknown method {method!r}")


def cones_equal(h1: ConeHRep, h2: ConeHRep, method: str = "rays") -> bool:
    return cone_contains(h1, h2, method) and cone_contains(h2, h1, method)


def same_rays(a: Sequence[Sequence], b: Sequence[Sequence]) -> bool:
    """Set equality of two ray lists up to positive scaling."""
    return {ex.primitive(r) for r in a} == {ex.primitive(r) for r in b}


def tight_rank(h: ConeHRep, ray) -> int:
    """Rank of the rows vanishing at ``ray``."""
    tight = [r for r in h.rows if _idot(r, ray) == 0]
    return ex.rank(tight) if tight else 0


def as_fraction_rows(h: ConeHRep) -> list[list[Fraction]]:
    return [[Fraction(x) for x in r] for r in h.rows]
