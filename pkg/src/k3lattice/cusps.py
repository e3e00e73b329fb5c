"""Isotropic sublattices, bounded isotropic search, and cusp classification for D_rho."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import gcd
from typing import Iterator, Sequence

import numpy as np

from . import intmat
from .isometry import (Isometry, IsometryError, _order_of, eigenlattice_decomposition)
from .lattice import DegenerateLatticeError, Lattice, LatticeError, Sublattice, determinant
from .roots import _definiteness

NONE_WITHIN_BOUND = "none within bound"
MAX_BOX_POINTS = 50_000_000
ADMISSIBLE_ORDERS = (3, 4, 6)


@dataclass(frozen=True)
class IsotropicSublattice:
    """Primitive sublattice with identically zero Gram, of rank 1 or 2."""
    sub: Sublattice

    def __post_init__(self):
        if self.sub.rank not in (1, 2):
            raise LatticeError("isotropic sublattices here have rank 1 or 2")
        if not self.sub.is_isotropic():
            raise LatticeError("sublattice is not isotropic")
        if not self.sub.is_saturated():
            raise LatticeError("isotropic sublattice is not primitive")

    @classmethod
    def of(cls, L: Lattice, rows: Sequence[Sequence[int]]) -> "IsotropicSublattice":
        return cls(Sublattice.of(L, rows))

    @property
    def rank(self) -> int:
        return self.sub.rank

    @property
    def ambient(self) -> Lattice:
        return self.sub.ambient

    def key(self):
        return self.sub.key()

    def rows(self) -> list[list[int]]:
        return self.sub.rows()


@dataclass(frozen=True)
class CuspReport:
    J: IsotropicSublattice
    rho_invariant: bool
    restricted_order: int | str
    admissible: bool
    j_invariant_class: str
    restricted_matrix: tuple[tuple[int, ...], ...] | None = None


# ---------------------------------------------------------------- search

def _value_order(bound: int) -> list[int]:
    out = []
    for k in range(1, bound + 1):
        out += [k, -k]
    return out


def find_isotropic_vector(L: Lattice, bound: int):
    """A primitive v != 0 with v.v = 0 and max|v_i| <= bound, or NONE_WITHIN_BOUND.

    Candidates are tried by support size, then support position, then
    coordinate size, so the answer is deterministic. The first nonzero
    coordinate is positive.
    """
    if bound < 1:
        raise ValueError("bound must be a positive integer")
    if determinant(L) == 0:
        raise DegenerateLatticeError("isotropic search needs a nondegenerate lattice")
    if _definiteness(L) != 0:
        return NONE_WITHIN_BOUND
    n = L.rank
    # Hyperbolic-summand shortcut: a zero diagonal entry is already isotropic.
    for i in range(n):
        if L.gram[i][i] == 0:
            return [1 if j == i else 0 for j in range(n)]
    vals = _value_order(bound)
    first = [v for v in vals if v > 0]
    G = L.gram
    for s in range(2, n + 1):
        for supp in combinations(range(n), s):
            for head in first:
                for tail in product(vals, repeat=s - 1):
                    coeffs = (head,) + tail
                    q = 0
                    for a, i in enumerate(supp):
                        ci = coeffs[a]
                        q += ci * ci * G[i][i]
                        for b in range(a):
                            q += 2 * ci * coeffs[b] * G[i][supp[b]]
                    if q == 0 and gcd(*coeffs) == 1:
                        v = [0] * n
                        for a, i in enumerate(supp):
                            v[i] = coeffs[a]
                        return v
    return NONE_WITHIN_BOUND


def _box_isotropic(G: Sequence[Sequence[int]], bound: int) -> Iterator[list[int]]:
    """Primitive isotropic vectors in [-bound, bound]^r with first nonzero entry positive."""
    r = len(G)
    if r == 0:
        return
    total = (2 * bound + 1) ** r
    if total > MAX_BOX_POINTS:
        raise ValueError(f"search box has {total} points, above the limit {MAX_BOX_POINTS}")
    peak = sum(abs(x) for row in G for x in row) * bound * bound
    dtype = np.int64 if peak < 2 ** 62 else object
    Gm = np.array(G, dtype=dtype)
    side = np.arange(-bound, bound + 1, dtype=dtype)
    # Fix enough leading coordinates that each chunk stays small.
    lead = 0
    while lead < r and (2 * bound + 1) ** (r - lead) > 1_000_000:
        lead += 1
    free = r - lead
    if free:
        grid = np.stack(np.meshgrid(*([side] * free), indexing="ij"), axis=-1).reshape(-1, free)
    else:
        grid = np.zeros((1, 0), dtype=dtype)
    for prefix in product(range(-bound, bound + 1), repeat=lead):
        if prefix and any(prefix):
            first_nz = next(x for x in prefix if x)
            if first_nz < 0:
                continue
        P = np.array(prefix, dtype=dtype).reshape(1, lead)
        X = np.concatenate([np.repeat(P, len(grid), axis=0), grid], axis=1)
        norms = ((X @ Gm) * X).sum(axis=1)
        X = X[norms == 0]
        if len(X) == 0:
            continue
        nz = X != 0
        has = nz.any(axis=1)
        X, nz = X[has], nz[has]
        idx = nz.argmax(axis=1)
        X = X[X[np.arange(len(X)), idx] > 0]
        for row in X.tolist():
            v = [int(x) for x in row]
            if gcd(*v) == 1:
                yield v


# ---------------------------------------------------------------- classification

def _j_class(n: int) -> str:
    if n in (3, 6):
        return "j=0"
    if n == 4:
        return "j=1728"
    return "n/a"


def classify_cusp(J: IsotropicSublattice, rho: Isometry, T: Sublattice | None = None) -> CuspReport:
    """Invariance of J under rho, order of rho on J, and admissibility.

    A rank-2 J is admissible when rho(J) = J and rho restricted to J has
    order exactly n. GL_2(Z) has elements of order 1, 2, 3, 4, 6 only, so
    admissibility forces n in {3, 4, 6}.
    """
    n = rho.order
    if n < 3:
        raise IsometryError("cusp classification needs an isometry of order n >= 3")
    if J.ambient != rho.lattice:
        raise LatticeError("J does not live in the lattice of rho")
    if T is None:
        T = eigenlattice_decomposition(rho).transcendental
    if not all(T.contains(v) for v in J.sub.basis):
        raise LatticeError("J is not contained in the transcendental lattice T_rho")
    image = J.sub.image(rho.M())
    invariant = image.same_subgroup(J.sub)
    if not invariant or J.rank != 2:
        return CuspReport(J, invariant, "n/a", False, "n/a")
    cols = [J.sub.coords(rho.apply(b)) for b in J.sub.basis]
    r = [[int(cols[j][i]) for j in range(2)] for i in range(2)]
    k = _order_of(r)
    admissible = k == n
    if admissible:
        assert n in ADMISSIBLE_ORDERS, "admissible cusp for an order outside {3, 4, 6}"
    return CuspReport(J, True, k, admissible, _j_class(n) if admissible else "n/a",
                      tuple(tuple(x) for x in r))


@dataclass(frozen=True)
class ScanReport:
    bound: int
    cusps: tuple[CuspReport, ...]
    vectors_examined: int

    @property
    def admissible(self) -> list[CuspReport]:
        return [c for c in self.cusps if c.admissible]

    @property
    def warning(self) -> str:
        return (f"bounded scan: only isotropic vectors of T_rho with coordinates in "
                f"[-{self.bound}, {self.bound}] were used; planes not of the form "
                f"sat(span(v, rho v)) for such v are not reported")


def scan_cusps(rho: Isometry, bound: int) -> ScanReport:
    """Rank-2 isotropic planes sat(span{v, rho v}) for isotropic v in a T_rho box.

    Coordinates are taken in the HNF basis of T_rho. Output is deduplicated
    by subgroup equality and sorted by the HNF basis of J.
    """
    if bound < 1:
        raise ValueError("bound must be a positive integer")
    dec = eigenlattice_decomposition(rho)
    T = dec.transcendental
    L = rho.lattice
    if T.rank == 0 or _definiteness(T.as_lattice()) != 0:
        return ScanReport(bound, (), 0)
    R = dec.transcendental_action()
    found: dict = {}
    examined = 0
    for y in _box_isotropic(T.gram(), bound):
        examined += 1
        v = intmat.vecmat(y, T.basis)
        if any(J.sub.contains(v) for J in found.values()):
            continue
        rv = intmat.vecmat(intmat.matvec(R, y), T.basis)
        if intmat.rank([v, rv]) < 2:
            # rho has no real eigenvector on T_rho for n >= 3; order 2 lands here.
            continue
        if L.pair(v, rv) != 0:
            continue
        J = IsotropicSublattice(Sublattice.of(L, intmat.saturate_rows([v, rv], L.rank)))
        found.setdefault(J.key(), J)
    reports = [classify_cusp(found[k], rho, T) for k in sorted(found)]
    return ScanReport(bound, tuple(reports), examined)
