"""Roots, reflections, divisibility, and exact short-vector enumeration."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterator, Sequence

from . import intmat
from .discriminant import _mod
from .lattice import (Lattice, LatticeError, Sublattice, determinant, orthogonal_complement,
                      signature)

UNDECIDED = "indefinite: undecided by enumeration"


class IndefiniteLatticeError(LatticeError):
    """Enumeration was requested on a lattice that is not definite."""


def is_root(L: Lattice, v: Sequence[int]) -> bool:
    if len(v) != L.rank:
        raise LatticeError("vector length does not match the lattice rank")
    return L.norm(v) == -2


def reflect(L: Lattice, delta: Sequence[int], v: Sequence[int]) -> list[int]:
    """v + (v.delta) delta."""
    if not is_root(L, delta):
        raise LatticeError("reflection vector is not a root")
    c = L.pair(v, delta)
    return [a + c * d for a, d in zip(v, delta)]


def reflection_matrix(L: Lattice, delta: Sequence[int]) -> list[list[int]]:
    """Coordinate matrix of the reflection in ``delta`` (acts on column vectors)."""
    cols = [reflect(L, delta, e) for e in intmat.identity(L.rank)]
    return intmat.transpose(cols)


def divisibility(L: Lattice, v: Sequence[int]) -> int:
    if not any(v):
        raise LatticeError("divisibility of the zero vector")
    return intmat.content(intmat.matvec(L.gram, v))


@dataclass(frozen=True)
class RootInvariant:
    norm: int
    divisibility: int
    disc_order: int
    q_value: Fraction

    def as_tuple(self):
        return (self.norm, self.divisibility, self.disc_order, self.q_value)


def root_orbit_invariant(L: Lattice, v: Sequence[int]) -> RootInvariant:
    """O(L)-invariant data of a root: (norm, div, order of v/div in L*/L, q(v/div)).

    Equal tuples do not imply that two roots lie in one orbit.
    """
    if not is_root(L, v):
        raise LatticeError("vector is not a root")
    div = divisibility(L, v)
    order = div // gcd(div, intmat.content(v))
    q = _mod(Fraction(L.norm(v), div * div), 2)
    return RootInvariant(-2, div, order, q)


# ---------------------------------------------------------------- LLL

def lll_gram(A: Sequence[Sequence[int]], delta: Fraction = Fraction(3, 4)):
    """LLL on a positive definite Gram matrix, exact rationals throughout.

    Returns (R, A') with A' = R A R^T; rows of R are the reduced basis in
    the original coordinates. Only used to make enumeration cheaper.
    """
    n = len(A)
    R = intmat.identity(n)

    def gso():
        G = intmat.matmul(intmat.matmul(R, A), intmat.transpose(R))
        mu = [[Fraction(0)] * n for _ in range(n)]
        bstar = [Fraction(0)] * n
        for i in range(n):
            for j in range(i):
                s = Fraction(G[i][j]) - sum(mu[j][k] * mu[i][k] * bstar[k] for k in range(j))
                mu[i][j] = s / bstar[j]
            bstar[i] = G[i][i] - sum(mu[i][k] ** 2 * bstar[k] for k in range(i))
        return mu, bstar

    mu, bstar = gso()
    k = 1
    while k < n:
        changed = False
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                R[k] = [a - q * b for a, b in zip(R[k], R[j])]
                # b_k changed: only row k of mu moves.
                for l in range(j + 1):
                    mu[k][l] -= q * (mu[j][l] if l < j else 1)
                changed = True
        if changed:
            mu, bstar = gso()
        if bstar[k] >= (delta - mu[k][k - 1] ** 2) * bstar[k - 1]:
            k += 1
        else:
            R[k], R[k - 1] = R[k - 1], R[k]
            mu, bstar = gso()
            k = max(k - 1, 1)
    G = intmat.matmul(intmat.matmul(R, A), intmat.transpose(R))
    return R, G


# ---------------------------------------------------------------- Fincke-Pohst

def _ldl(A: Sequence[Sequence[int]]):
    """Q(x) = sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2 for positive definite A."""
    n = len(A)
    q = [[Fraction(x) for x in row] for row in A]
    for i in range(n):
        if q[i][i] <= 0:
            raise IndefiniteLatticeError("form is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    d = [q[i][i] for i in range(n)]
    u = [[q[i][j] if j > i else Fraction(0) for j in range(n)] for i in range(n)]
    return d, u


def _range(c: Fraction, budget: Fraction, d: Fraction) -> range:
    """All integers x with d (x - c)^2 <= budget, as a superset range to filter."""
    if budget < 0:
        return range(0)
    u = budget / d
    s = isqrt(u.numerator // u.denominator) + 1
    lo = (c - s).__floor__()
    hi = (c + s).__ceil__()
    return range(lo, hi + 1)


def _fp_search(d, u, t: Fraction, fixed_tail: Sequence[int] = ()) -> Iterator[list[int]]:
    """Yield all x with Q(x) <= t; coordinates past len(x) - len(fixed_tail) are pinned."""
    n = len(d)
    x = [0] * n
    start = n - 1 - len(fixed_tail)
    budget = t
    for k, val in enumerate(fixed_tail):
        i = n - 1 - k
        x[i] = val
    # Consume budget of the pinned coordinates.
    for i in range(n - 1, start, -1):
        c = -sum(u[i][j] * x[j] for j in range(i + 1, n))
        budget -= d[i] * (x[i] - c) ** 2
    if budget < 0:
        return

    def rec(i: int, budget: Fraction):
        if i < 0:
            yield list(x)
            return
        c = -sum(u[i][j] * x[j] for j in range(i + 1, n))
        for v in _range(c, budget, d[i]):
            rem = budget - d[i] * (v - c) ** 2
            if rem >= 0:
                x[i] = v
                yield from rec(i - 1, rem)
        x[i] = 0

    yield from rec(start, budget)


def _enumerate_slice(args):
    A, t, top = args
    d, u = _ldl(A)
    out = []
    for y in _fp_search(d, u, Fraction(t), (top,)):
        if intmat.dot(y, intmat.matvec(A, y)) == t:
            out.append(y)
    return out


def _definiteness(L: Lattice) -> int:
    """+1 positive definite, -1 negative definite, 0 otherwise."""
    sig = signature(L)
    if sig.positive == L.rank:
        return 1
    if sig.negative == L.rank:
        return -1
    return 0


def enumerate_norm_vectors(L: Lattice, target_norm: int, workers: int = 1,
                           reduce: bool = True) -> list[list[int]]:
    """Every v with v^T G v = target_norm, sorted lexicographically.

    L must be definite. Vectors with the wrong sign of norm do not exist
    and give an empty list. ``workers > 1`` splits the outermost
    coordinate range across processes; the output is identical.
    """
    if L.rank == 0:
        return [[]] if target_norm == 0 else []
    sign = _definiteness(L)
    if sign == 0:
        raise IndefiniteLatticeError("enumeration needs a definite lattice")
    t = sign * target_norm
    if t < 0:
        return []
    if t == 0:
        return [[0] * L.rank]
    A = [[sign * x for x in row] for row in L.gram]
    R = None
    if reduce and L.rank > 1:
        R, A = lll_gram(A)
    d, u = _ldl(A)
    n = L.rank
    tops = list(_range(Fraction(0), Fraction(t), d[n - 1]))
    if workers > 1 and len(tops) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            chunks = ex.map(_enumerate_slice, [(A, t, v) for v in tops])
            found = [y for chunk in chunks for y in chunk]
    else:
        found = [y for v in tops for y in _enumerate_slice((A, t, v))]
    if R is not None:
        found = [intmat.vecmat(y, R) for y in found]
    found.sort()
    return found


def has_root_in_complement(L: Lattice, S: Sublattice):
    """True/False when S^perp is definite; the UNDECIDED sentinel otherwise."""
    comp = orthogonal_complement(S)
    if comp.rank == 0:
        return False
    C = comp.as_lattice()
    if determinant(C) == 0:
        return UNDECIDED
    sign = _definiteness(C)
    if sign == 0:
        return UNDECIDED
    if sign > 0:
        return False
    return bool(enumerate_norm_vectors(C, -2))
