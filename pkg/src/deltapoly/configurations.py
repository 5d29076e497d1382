"""Weighted configurations at infinity and their (semi)stability.

Two finite models are supported:

* apartment configurations for A2/B2/G2, where the i-th ideal point carries the
  mass-scaled vector ``w_i h_i`` and the slope at an ideal point ``eta`` is
  ``-<v, eta> / |eta|`` with ``v = sum_i w_i h_i``;
* finitely supported measures on Grassmannians of ``Q^n`` (special linear
  case) and of isotropic subspaces for a symmetric or alternating form.

Only signs of pairings are ever compared, so no irrational normalisation is
needed.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import exact as ex
from .coxeter import RootSystemData, WeylElement, dominant_representative
from .exact import Vector
from .subspaces import Subspace, intersect, is_isotropic, orthogonal, span

LATTICE_CAP = 10_000

SEMISTABLE = "semistable"
STABLE = "stable"
UNSTABLE = "unstable"
UNDETERMINED = "undetermined"


class ConfigurationError(ValueError):
    pass


class LatticeCapExceeded(ConfigurationError):
    pass


# --- apartment model ---------------------------------------------------------------


@dataclass(frozen=True)
class ApartmentConfiguration:
    rs: RootSystemData
    points: tuple[tuple[WeylElement, Vector], ...]

    @classmethod
    def from_words(cls, rs: RootSystemData, points) -> "ApartmentConfiguration":
        out = []
        for word, h in points:
            h = rs.check_vector(h)
            if not rs.is_dominant(h):
                raise ConfigurationError(f"{tuple(map(str, h))} is not dominant")
            out.append((rs.element(tuple(word)), h))
        return cls(rs, tuple(out))

    def vectors(self) -> list[Vector]:
        return [w(h) for w, h in self.points]


def closing_vector(cfg: ApartmentConfiguration) -> Vector:
    v = tuple(Fraction(0) for _ in range(cfg.rs.ambient_dim))
    for u in cfg.vectors():
        v = ex.add(v, u)
    return v


@dataclass(frozen=True)
class HNVertex:
    vertex: Vector  # w zeta_i, unnormalised
    type_index: int
    orbit_size: int
    unique_minimum: bool


@dataclass(frozen=True)
class ApartmentVerdict:
    status: str
    direction: Vector | None = None
    dominant_type: Vector | None = None
    chamber: WeylElement | None = None
    hn_vertices: tuple[HNVertex, ...] = ()
    note: str = ""


def slope_sign(cfg: ApartmentConfiguration, eta) -> int:
    """Sign of the slope at the ideal point in direction ``eta``."""
    p = cfg.rs.pairing(closing_vector(cfg), eta)
    return (p < 0) - (p > 0)


def apartment_semistability(cfg: ApartmentConfiguration) -> ApartmentVerdict:
    rs = cfg.rs
    v = closing_vector(cfg)
    if ex.is_zero(v):
        return ApartmentVerdict(
            SEMISTABLE,
            note="closing vector vanishes, so the slope is zero on every apartment vertex; "
                 "stability cannot be decided from apartment data")
    d, w = dominant_representative(rs, v)
    hn = []
    for i, (alpha, zeta) in enumerate(zip(rs.simple_roots, rs.fundamental_coweights), start=1):
        if ex.dot(alpha, d) == 0:
            continue  # zeta_i is not a vertex of the face containing d
        eta = w(zeta)
        orbit = {u(zeta) for u in rs.weyl_group}
        top = rs.pairing(v, eta)
        others = [rs.pairing(v, e) for e in orbit if e != eta]
        hn.append(HNVertex(eta, i, len(orbit), all(p < top for p in others)))
    return ApartmentVerdict(UNSTABLE, v, d, w, tuple(hn))


# --- Grassmannian measures -----------------------------------------------------------


@dataclass(frozen=True)
class Atom:
    subspace: Subspace
    mass: Fraction


@dataclass(frozen=True)
class GrassmannianMeasure:
    n_ambient: int
    q: int
    atoms: tuple[Atom, ...]
    form: tuple | None = None

    @classmethod
    def make(cls, n_ambient: int, q: int, atoms, form=None) -> "GrassmannianMeasure":
        out = []
        for basis, mass in atoms:
            mass = ex.frac(mass)
            if mass <= 0:
                raise ConfigurationError(f"atom masses must be positive, got {mass}")
            s = span(basis, n_ambient)
            if s.dim != q:
                raise ConfigurationError(f"atom basis spans dimension {s.dim}, expected {q}")
            out.append(Atom(s, mass))
        if not 0 < q < n_ambient:
            raise ConfigurationError(f"need 0 < q < n, got q={q}, n={n_ambient}")
        f = ex.mat(form) if form is not None else None
        if f is not None:
            if ex.rank(f) < n_ambient:
                raise ConfigurationError("bilinear form is degenerate")
            sym = all(f[i][j] == f[j][i] for i in range(n_ambient) for j in range(n_ambient))
            alt = all(f[i][j] == -f[j][i] for i in range(n_ambient) for j in range(n_ambient))
            if not (sym or alt):
                raise ConfigurationError("form must be symmetric or alternating")
            for a in out:
                if not is_isotropic(a.subspace, f):
                    raise ConfigurationError(f"atom {a.subspace} is not isotropic")
        return cls(n_ambient, q, tuple(out), f)

    @property
    def total(self) -> Fraction:
        return sum((a.mass for a in self.atoms), Fraction(0))


@dataclass(frozen=True)
class GrassmannianVerdict:
    status: str
    witness: Subspace | None = None
    excess: Fraction | None = None  # lhs - rhs at the witness
    candidates: int = 0
    complete: bool = False
    extra: dict = field(default_factory=dict, compare=False)


def sl_tits_cosine(u: Subspace, v: Subspace) -> tuple[int, int]:
    """Exact Tits-angle cosine between ``[U]`` and ``[V]``.

    Returns ``(numerator, radicand)`` with
    ``cos = numerator / sqrt(radicand)``, ``numerator = s n - p q`` and
    ``radicand = p (n - p) q (n - q)``.
    """
    n = u.ambient
    p, q = u.dim, v.dim
    if not (u.is_proper() and v.is_proper()):
        raise ConfigurationError("Tits cosine needs proper non-zero subspaces")
    s = intersect(u, v).dim
    return s * n - p * q, p * (n - p) * q * (n - q)


def dim_ratio(u: Subspace, v: Subspace) -> Fraction:
    """``dim(U & V) / dim U``."""
    return Fraction(intersect(u, v).dim, u.dim)


def sl_excess(m: GrassmannianMeasure, u: Subspace) -> Fraction:
    """``sum m_V dim_U(V) - (q/n) |mu|``; positive means the slope at ``[U]`` is negative."""
    lhs = sum((a.mass * dim_ratio(u, a.subspace) for a in m.atoms), Fraction(0))
    return lhs - Fraction(m.q, m.n_ambient) * m.total


def iso_excess(m: GrassmannianMeasure, u: Subspace) -> Fraction:
    """``sum m_V (dim_U(V) + dim_U(V^perp)) - |mu|``."""
    lhs = Fraction(0)
    for a in m.atoms:
        lhs += a.mass * (dim_ratio(u, a.subspace) + dim_ratio(u, orthogonal(a.subspace, m.form)))
    return lhs - m.total


# candidate families


def span_family(generators: Sequence[Subspace], ambient: int) -> set[Subspace]:
    fam = set()
    for k in range(1, len(generators) + 1):
        for sub in itertools.combinations(generators, k):
            s = sub[0]
            for t in sub[1:]:
                s = s + t
            fam.add(s)
    return fam


def lattice_family(generators: Sequence[Subspace], ambient: int, cap: int = LATTICE_CAP) -> set[Subspace]:
    fam = set(generators)
    frontier = list(fam)
    while frontier:
        new = []
        current = list(fam)
        for a in frontier:
            for b in current:
                for c in (a + b, intersect(a, b)):
                    if c not in fam:
                        fam.add(c)
                        new.append(c)
                        if len(fam) > cap:
                            raise LatticeCapExceeded(f"lattice closure exceeded {cap} subspaces")
        frontier = new
    return fam


def random_subspaces(ambient: int, k: int, seed: int = 0, bound: int = 3) -> list[Subspace]:
    rng = random.Random(seed)
    out = []
    for _ in range(k):
        d = rng.randint(1, ambient - 1)
        while True:
            s = span([[rng.randint(-bound, bound) for _ in range(ambient)] for _ in range(d)], ambient)
            if s.dim == d:
                break
        out.append(s)
    return out


def _parse_strategy(strategy: str) -> tuple[str, int]:
    if strategy in ("spans", "lattice"):
        return strategy, 0
    if strategy.startswith("mc:") or strategy.startswith("montecarlo:"):
        return "montecarlo", int(strategy.split(":", 1)[1])
    raise ConfigurationError(f"unknown strategy {strategy!r}")


def _decide(excess_fn, candidates, complete: bool) -> GrassmannianVerdict:
    worst = None
    for u in sorted(candidates):
        e = excess_fn(u)
        if worst is None or e > worst[0]:
            worst = (e, u)
    if worst is not None and worst[0] > 0:
        return GrassmannianVerdict(UNSTABLE, worst[1], worst[0], len(candidates), complete)
    if not complete:
        return GrassmannianVerdict(UNDETERMINED, None, worst[0] if worst else None,
                                   len(candidates), complete)
    status = STABLE if worst is None or worst[0] < 0 else SEMISTABLE
    return GrassmannianVerdict(status, worst[1] if worst else None, worst[0] if worst else None,
                               len(candidates), complete)


def sl_semistable(m: GrassmannianMeasure, strategy: str = "spans", cap: int = LATTICE_CAP,
                  seed: int = 0) -> GrassmannianVerdict:
    """Check ``int dim_U(V) dmu <= (q/n) |mu|`` over a family of proper subspaces ``U``.

    For ``q = 1`` the span family is complete: for a fixed set of atoms inside
    ``U`` the left side only grows when ``U`` shrinks to their span.
    """
    kind, k = _parse_strategy(strategy)
    gens = [a.subspace for a in m.atoms]
    if kind == "spans":
        fam = span_family(gens, m.n_ambient)
    elif kind == "lattice":
        fam = lattice_family(gens, m.n_ambient, cap)
    else:
        fam = set(random_subspaces(m.n_ambient, k, seed))
    fam = {u for u in fam if u.is_proper()}
    complete = kind != "montecarlo" and (m.q == 1 or not m.atoms)
    if not m.atoms:
        return GrassmannianVerdict(SEMISTABLE, complete=True)
    return _decide(lambda u: sl_excess(m, u), fam, complete)


def iso_semistable(m: GrassmannianMeasure, strategy: str = "lattice", cap: int = LATTICE_CAP,
                   seed: int = 0) -> GrassmannianVerdict:
    """Check ``int (dim_U(V) + dim_U(V^perp)) dmu <= |mu|`` over isotropic ``U``.

    Candidates are generated from the atoms and their orthogonals; no finite
    family is known to be complete here, so only the empty measure is ever
    certified semistable.
    """
    if m.form is None:
        raise ConfigurationError("isotropic criterion needs a bilinear form")
    if not m.atoms:
        return GrassmannianVerdict(SEMISTABLE, complete=True)
    kind, k = _parse_strategy(strategy)
    gens = [a.subspace for a in m.atoms] + [orthogonal(a.subspace, m.form) for a in m.atoms]
    gens = sorted(set(gens))
    if kind == "spans":
        fam = span_family(gens, m.n_ambient)
    elif kind == "lattice":
        fam = lattice_family(gens, m.n_ambient, cap)
    else:
        fam = set(random_subspaces(m.n_ambient, k, seed))
    fam = {u for u in fam if u.dim > 0 and is_isotropic(u, m.form)}
    return _decide(lambda u: iso_excess(m, u), fam, complete=False)
