"""Mod-p graded Dieudonne modules over explicit finite fields.

A module here is Z/gZ-graded with a 2-dimensional piece in every degree,
spanned by (X_i, Y_i).  Vectors of degree i are coordinate pairs (x, y)
meaning x X_i + y Y_i.  F is sigma-semilinear from degree i-1 to degree i and
V is sigma^-1-semilinear from degree i+1 to degree i; both are stored as 2x2
matrices indexed by the target degree, columns being the images of X and Y.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .finite_field import FiniteField

Matrix = tuple[tuple[int, int], tuple[int, int]]
Vector = tuple[int, int]

ZERO: Matrix = ((0, 0), (0, 0))


@dataclass(frozen=True)
class GradedSemilinearModule:
    field: FiniteField
    F: tuple[Matrix, ...]  # F[i]: degree i-1 -> degree i
    V: tuple[Matrix, ...]  # V[i]: degree i+1 -> degree i

    def __post_init__(self) -> None:
        if len(self.F) != len(self.V) or not self.F:
            raise ValueError("F and V need one matrix per degree")

    @property
    def g(self) -> int:
        return len(self.F)

    def apply_F(self, i: int, v: Vector) -> Vector:
        """F applied to a vector of degree i-1, landing in degree i."""
        k = self.field
        x, y = k.frobenius(v[0], 1), k.frobenius(v[1], 1)
        return _matvec(k, self.F[i % self.g], (x, y))

    def apply_V(self, i: int, v: Vector) -> Vector:
        """V applied to a vector of degree i+1, landing in degree i."""
        k = self.field
        x, y = k.frobenius(v[0], -1), k.frobenius(v[1], -1)
        return _matvec(k, self.V[i % self.g], (x, y))


def _matvec(k: FiniteField, a: Matrix, v: Vector) -> Vector:
    return (k.add(k.mul(a[0][0], v[0]), k.mul(a[0][1], v[1])),
            k.add(k.mul(a[1][0], v[0]), k.mul(a[1][1], v[1])))


def rank(k: FiniteField, vectors: Iterable[Sequence[int]]) -> int:
    """Rank of a list of vectors over the field, by Gaussian elimination."""
    rows = [list(v) for v in vectors if any(v)]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((j for j in range(r, len(rows)) if rows[j][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = k.inv(rows[r][col])
        rows[r] = [k.mul(inv, c) for c in rows[r]]
        for j in range(len(rows)):
            if j != r and rows[j][col]:
                factor = rows[j][col]
                rows[j] = [k.sub(a, k.mul(factor, b)) for a, b in zip(rows[j], rows[r])]
        r += 1
    return r


def standard_module(g: int, tau: Iterable[int], field: FiniteField) -> GradedSemilinearModule:
    """The mod-p module attached to the alpha index tau.

    F: X_{i-1} -> X_i (i not in tau) or Y_i (i in tau), Y_{i-1} -> 0.
    V: Y_i -> Y_{i-1} (i not in tau) or X_i -> Y_{i-1} (i in tau), other basis vector -> 0.
    The V-action is forced by FV = VF = p on the integral lattice.
    """
    tau = frozenset(tau)
    if any(not 0 <= i < g for i in tau):
        raise ValueError(f"tau {sorted(tau)} outside [0, {g})")
    to_x: Matrix = ((1, 0), (0, 0))
    to_y: Matrix = ((0, 0), (1, 0))
    keep_y: Matrix = ((0, 0), (0, 1))
    F = tuple(to_y if i in tau else to_x for i in range(g))
    # V[i] reads degree i+1, so its shape is decided by membership of i+1
    V = tuple(to_y if (i + 1) % g in tau else keep_y for i in range(g))
    return GradedSemilinearModule(field, F, V)


def fv_image_module(g: int, field: FiniteField) -> GradedSemilinearModule:
    """The module (F,V)M of a superspecial point, reduced mod p.

    Integrally F X_i = -p Y_{i+1}, F Y_i = p X_{i+1} for even i and
    F X_i = -Y_{i+1}, F Y_i = X_{i+1} for odd i; V is recovered from VF = p.
    """
    if g % 2:
        raise ValueError("this module exists only for even g")
    minus_one = field.neg(1)
    # source odd -> target even: X -> -Y, Y -> X
    f_odd_source: Matrix = ((0, 1), (minus_one, 0))
    # source odd -> target even for V: X -> Y, Y -> -X
    v_odd_source: Matrix = ((0, minus_one), (1, 0))
    F = tuple(f_odd_source if i % 2 == 0 else ZERO for i in range(g))
    V = tuple(v_odd_source if i % 2 == 0 else ZERO for i in range(g))
    return GradedSemilinearModule(field, F, V)


def alpha_type_of(module: GradedSemilinearModule) -> tuple[int, ...]:
    """a_i = dim of the degree-i part of M / (F, V)M."""
    k = module.field
    out = []
    for i in range(module.g):
        f, v = module.F[i], module.V[i]
        images = [(f[0][0], f[1][0]), (f[0][1], f[1][1]), (v[0][0], v[1][0]), (v[0][1], v[1][1])]
        out.append(2 - rank(k, images))
    return tuple(out)


def compose_zero(module: GradedSemilinearModule) -> bool:
    """Whether F o V and V o F vanish on every basis vector."""
    g = module.g
    basis = ((1, 0), (0, 1))
    for i in range(g):
        for e in basis:
            # V o F: degree i-1 -> i -> i-1
            if any(module.apply_V(i - 1, module.apply_F(i, e))):
                return False
            # F o V: degree i+1 -> i -> i+1
            if any(module.apply_F(i + 1, module.apply_V(i, e))):
                return False
    return True


@dataclass(frozen=True)
class ProjectivePointTuple:
    """Points [s_i : t_i] of P^1, normalized so the first nonzero coordinate is 1."""

    coords: tuple[tuple[int, int], ...]
    field: FiniteField

    @classmethod
    def make(cls, field: FiniteField, coords: Iterable[Sequence[int]]) -> ProjectivePointTuple:
        normalized = []
        for s, t in coords:
            if s:
                normalized.append((1, field.mul(t, field.inv(s))))
            elif t:
                normalized.append((0, 1))
            else:
                raise ValueError("[0:0] is not a projective point")
        return cls(tuple(normalized), field)

    @property
    def g(self) -> int:
        return len(self.coords)


def random_point_tuple(field: FiniteField, g: int, rng: random.Random,
                       special: float = 0.6) -> ProjectivePointTuple:
    """Random point of (P^1)^g.

    Each coordinate is [1:0] or [0:1] with total probability ``special`` and
    uniform on P^1 otherwise, so points on X_tau turn up often enough to
    exercise both outcomes of the comparison.
    """
    coords = []
    for _ in range(g):
        u = rng.random()
        if u < special / 2:
            coords.append((1, 0))
        elif u < special:
            coords.append((0, 1))
        else:
            n = rng.randrange(field.q + 1)
            coords.append((0, 1) if n == field.q else (1, n))
    return ProjectivePointTuple.make(field, coords)


def _in_line(k: FiniteField, u: Vector, v: Vector) -> bool:
    return rank(k, (u, v)) <= 1


def submodule_check(module: GradedSemilinearModule, point: ProjectivePointTuple) -> bool:
    """Whether the span of s_i Y_i + t_i X_i is stable under F and V."""
    k = module.field
    g = module.g
    if point.g != g:
        raise ValueError(f"point in (P^1)^{point.g} for a module with g={g}")
    vecs = [(t, s) for s, t in point.coords]
    for i in range(g):
        if not _in_line(k, module.apply_F(i, vecs[i - 1]), vecs[i]):
            return False
        if not _in_line(k, module.apply_V(i, vecs[(i + 1) % g]), vecs[i]):
            return False
    return True


def equations_check(g: int, tau: Iterable[int], point: ProjectivePointTuple) -> bool:
    """Evaluate t_{i-1} s_i (i not in tau) and t_{i-1} t_i (i in tau) at the point."""
    tau = frozenset(tau)
    k = point.field
    c = point.coords
    if len(c) != g:
        raise ValueError(f"point in (P^1)^{len(c)}, expected g={g}")
    for i in range(g):
        t_prev = c[i - 1][1]
        other = c[i][1] if i in tau else c[i][0]
        if k.mul(t_prev, other):
            return False
    return True


# --- vectorized variants over a batch of points --------------------------


def random_point_batch(field: FiniteField, g: int, n: int, rng: np.random.Generator,
                       special: float = 0.6) -> tuple[np.ndarray, np.ndarray]:
    """``n`` normalized random points as arrays S, T of shape (n, g); same law as random_point_tuple."""
    u = rng.random((n, g))
    affine = rng.integers(0, field.q + 1, size=(n, g))
    s = np.where(affine == field.q, 0, 1)
    t = np.where(affine == field.q, 1, affine)
    s = np.where(u < special, np.where(u < special / 2, 1, 0), s)
    t = np.where(u < special, np.where(u < special / 2, 0, 1), t)
    return s.astype(np.int64), t.astype(np.int64)


def _batch_apply(k: FiniteField, a: Matrix, power: int, x: np.ndarray, y: np.ndarray):
    fx, fy = k.frob_tables[power % k.m][x], k.frob_tables[power % k.m][y]
    mul, add = k.mul_table, k.add_table
    return (add[mul[a[0][0], fx], mul[a[0][1], fy]],
            add[mul[a[1][0], fx], mul[a[1][1], fy]])


def _batch_dependent(k: FiniteField, ux, uy, vx, vy) -> np.ndarray:
    """Two vectors in a 2-dimensional space are dependent iff their determinant vanishes."""
    return k.mul_table[ux, vy] == k.mul_table[uy, vx]


def submodule_check_batch(module: GradedSemilinearModule, S: np.ndarray, T: np.ndarray) -> np.ndarray:
    k = module.field
    g = module.g
    ok = np.ones(S.shape[0], dtype=bool)
    for i in range(g):
        vx, vy = T[:, i], S[:, i]
        fx, fy = _batch_apply(k, module.F[i], 1, T[:, i - 1], S[:, i - 1])
        ok &= _batch_dependent(k, fx, fy, vx, vy)
        j = (i + 1) % g
        wx, wy = _batch_apply(k, module.V[i], -1, T[:, j], S[:, j])
        ok &= _batch_dependent(k, wx, wy, vx, vy)
    return ok


def equations_check_batch(g: int, tau: Iterable[int], S: np.ndarray, T: np.ndarray) -> np.ndarray:
    tau = frozenset(tau)
    ok = np.ones(S.shape[0], dtype=bool)
    for i in range(g):
        other = T[:, i] if i in tau else S[:, i]
        ok &= (T[:, i - 1] == 0) | (other == 0)
    return ok
