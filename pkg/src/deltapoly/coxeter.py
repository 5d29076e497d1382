"""Rank-two root systems A2, B2 (= C2) and G2 with exact rational data.

Coordinates on the Cartan subspace ``a``:

* A2 -- ambient ``(x, y, z)`` with ``x + y + z = 0``; chamber ``x >= y >= z``.
* B2 -- ``(x, y)`` with chamber ``x >= y >= 0`` and the standard inner product.
* G2 -- ``(x, y)`` in the basis of fundamental coweights, chamber ``x, y >= 0``
  and inner product ``3dx^2 + 3dxdy + dy^2``.

Linear functionals (roots, weights, chamber walls) are row vectors in the same
coordinates; vectors (coroots, coweights, Delta-lengths) are column vectors.
Simple reflections are indexed 1 and 2, ``s_i`` being the reflection in the
wall of the i-th simple root.  The i-th maximal parabolic ``P_i`` stabilises
the fundamental coweight ``zeta_i`` (fixed by ``s_j`` for ``j != i``).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from . import exact as ex
from .exact import Matrix, Vector

NAMES = ("A2", "B2", "G2")


class RootSystemError(ValueError):
    pass


@dataclass(frozen=True)
class WeylElement:
    matrix: Matrix
    word: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.word)

    def __call__(self, v) -> Vector:
        return ex.matvec(self.matrix, v)

    def __repr__(self) -> str:
        w = "".join(f"s{i}" for i in self.word) or "e"
        return f"WeylElement({w})"


@dataclass(frozen=True)
class RootSystemData:
    name: str
    ambient_dim: int
    gram: Matrix
    simple_roots: tuple[Vector, ...]
    simple_coroots: tuple[Vector, ...]
    # lambda_{P_i}: positive multiples of the fundamental weights, in the
    # integral normalisation used for the inequality tables
    parabolic_weights: tuple[Vector, ...]
    sum_zero: bool = False

    # --- derived data -----------------------------------------------------
    @property
    def rank(self) -> int:
        return 2

    @cached_property
    def simple_reflections(self) -> tuple[Matrix, ...]:
        n = self.ambient_dim
        refl = []
        for a, av in zip(self.simple_roots, self.simple_coroots):
            refl.append(tuple(tuple(Fraction(int(i == j)) - av[i] * a[j] for j in range(n))
                              for i in range(n)))
        return tuple(refl)

    @cached_property
    def fundamental_weights(self) -> tuple[Vector, ...]:
        """Functionals dual to the simple coroots (and vanishing on (1,1,1) for A2)."""
        rows = [list(c) for c in self.simple_coroots]
        if self.sum_zero:
            rows.append([1] * self.ambient_dim)
        m = ex.mat(rows)
        # solve  omega . m^T = delta  <=>  m omega^T = e_i
        out = []
        for i in range(2):
            rhs = [Fraction(int(i == j)) for j in range(len(rows))]
            out.append(ex.solve(m, rhs))
        return tuple(out)

    @cached_property
    def fundamental_coweights(self) -> tuple[Vector, ...]:
        """Vectors zeta_i with alpha_j(zeta_i) = delta_ij (summing to zero for A2)."""
        rows = [list(a) for a in self.simple_roots]
        if self.sum_zero:
            rows.append([1] * self.ambient_dim)
        m = ex.mat(rows)
        out = []
        for i in range(2):
            rhs = [Fraction(int(i == j)) for j in range(len(rows))]
            out.append(ex.solve(m, rhs))
        return tuple(out)

    @property
    def chamber_inequalities(self) -> tuple[Vector, ...]:
        """Functionals that are >= 0 exactly on the Euclidean Weyl chamber."""
        return self.simple_roots

    def pairing(self, u, v) -> Fraction:
        return ex.dot(u, ex.matvec(self.gram, v))

    def in_space(self, v) -> bool:
        return len(v) == self.ambient_dim and (not self.sum_zero or sum(v) == 0)

    def check_vector(self, v) -> Vector:
        v = ex.vec(v)
        if not self.in_space(v):
            raise RootSystemError(f"{v} is not a vector of the Cartan subspace of {self.name}")
        return v

    def is_dominant(self, v) -> bool:
        return self.in_space(v) and all(ex.dot(a, v) >= 0 for a in self.chamber_inequalities)

    def interior_point(self) -> Vector:
        return ex.add(*self.fundamental_coweights)

    @cached_property
    def weyl_group(self) -> tuple[WeylElement, ...]:
        return _enumerate(self)

    @cached_property
    def longest(self) -> WeylElement:
        return max(self.weyl_group, key=lambda w: w.length)

    @cached_property
    def _by_matrix(self) -> dict:
        return {w.matrix: w for w in self.weyl_group}

    def element(self, word) -> WeylElement:
        m = ex.identity(self.ambient_dim)
        for i in word:
            m = ex.matmul(m, self.simple_reflections[i - 1])
        return self._by_matrix[m]

    def inverse(self, w: WeylElement) -> WeylElement:
        return self._by_matrix[ex.inverse(w.matrix)]

    def compose(self, u: WeylElement, w: WeylElement) -> WeylElement:
        return self._by_matrix[ex.matmul(u.matrix, w.matrix)]

    @cached_property
    def positive_roots(self) -> tuple[tuple[Vector, Vector], ...]:
        """Pairs (root functional, coroot vector) for the positive roots."""
        rho = self.interior_point()
        seen = {}
        for w in self.weyl_group:
            winv = ex.inverse(w.matrix)
            for a, av in zip(self.simple_roots, self.simple_coroots):
                beta = ex.vecmat(a, winv)
                if ex.dot(beta, rho) > 0 and beta not in seen:
                    seen[beta] = w(av)
        return tuple(sorted(seen.items()))


def _enumerate(rs: RootSystemData) -> tuple[WeylElement, ...]:
    """Breadth-first closure under right multiplication by s1, s2.

    Words are generated in shortlex order, so each element keeps its
    lexicographically smallest reduced word.
    """
    e = ex.identity(rs.ambient_dim)
    found = {e: ()}
    queue = deque([e])
    while queue:
        m = queue.popleft()
        for i, s in enumerate(rs.simple_reflections, start=1):
            nm = ex.matmul(m, s)
            if nm not in found:
                found[nm] = found[m] + (i,)
                queue.append(nm)
    return tuple(WeylElement(m, w) for m, w in sorted(found.items(), key=lambda kv: (len(kv[1]), kv[1])))


_TABLE = {
    "A2": dict(
        ambient_dim=3,
        gram=[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        simple_roots=[[1, -1, 0], [0, 1, -1]],
        simple_coroots=[[1, -1, 0], [0, 1, -1]],
        parabolic_weights=[[1, 0, 0], [0, 0, -1]],
        sum_zero=True,
    ),
    "B2": dict(
        ambient_dim=2,
        gram=[[1, 0], [0, 1]],
        simple_roots=[[1, -1], [0, 1]],
        simple_coroots=[[1, -1], [0, 2]],
        parabolic_weights=[[1, 0], [1, 1]],
    ),
    "G2": dict(
        ambient_dim=2,
        gram=[[3, Fraction(3, 2)], [Fraction(3, 2), 1]],
        simple_roots=[[1, 0], [0, 1]],
        simple_coroots=[[2, -3], [-1, 2]],
        parabolic_weights=[[2, 1], [3, 2]],
    ),
}

_BUILT: dict[str, RootSystemData] = {}


def build_root_system(name: str) -> RootSystemData:
    name = name.upper()
    if name == "C2":
        name = "B2"
    if name not in _TABLE:
        raise RootSystemError(f"unknown root system {name!r}; expected one of {', '.join(NAMES)}")
    if name not in _BUILT:
        d = _TABLE[name]
        _BUILT[name] = RootSystemData(
            name=name,
            ambient_dim=d["ambient_dim"],
            gram=ex.mat(d["gram"]),
            simple_roots=ex.mat(d["simple_roots"]),
            simple_coroots=ex.mat(d["simple_coroots"]),
            parabolic_weights=ex.mat(d["parabolic_weights"]),
            sum_zero=d.get("sum_zero", False),
        )
    return _BUILT[name]


def enumerate_weyl(rs: RootSystemData) -> list[WeylElement]:
    return list(rs.weyl_group)


def dominant_representative(rs: RootSystemData, v) -> tuple[Vector, WeylElement]:
    """Return ``(d, w)`` with ``d`` dominant and ``w(d) == v``."""
    v = rs.check_vector(v)
    d = v
    word: list[int] = []
    while True:
        bad = next((i for i, a in enumerate(rs.simple_roots, start=1) if ex.dot(a, d) < 0), None)
        if bad is None:
            break
        d = ex.matvec(rs.simple_reflections[bad - 1], d)
        word.append(bad)
    # v = s_{i1} s_{i2} ... s_{ik} d
    return d, rs.element(word)


def sharp(rs: RootSystemData, h) -> Vector:
    """The involution ``h -> -w0 h`` of the Weyl chamber."""
    h = rs.check_vector(h)
    return ex.neg(rs.longest(h))


def dominance_leq(rs: RootSystemData, a, b) -> bool:
    """``a <= b`` in the dominance order: ``b - a`` pairs >= 0 with every fundamental weight."""
    diff = ex.sub(ex.vec(b), ex.vec(a))
    return all(ex.dot(lam, diff) >= 0 for lam in rs.parabolic_weights)


def coset_representatives(rs: RootSystemData, i: int) -> list[WeylElement]:
    """Minimal-length representatives of ``W / Stab(zeta_i)``, ordered by length."""
    zeta = rs.fundamental_coweights[i - 1]
    best: dict[Vector, WeylElement] = {}
    for w in rs.weyl_group:  # shortlex order, so the first hit is minimal
        best.setdefault(w(zeta), w)
    return sorted(best.values(), key=lambda w: (w.length, w.word))
