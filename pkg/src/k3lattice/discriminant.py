"""Discriminant group L*/L with its finite quadratic form."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import intmat
from .lattice import DegenerateLatticeError, Lattice, LatticeError, determinant


@dataclass(frozen=True)
class DiscriminantForm:
    """Generators g_i of orders d_1 | d_2 | ... with q(g_i) mod 2Z and b(g_i, g_j) mod Z.

    ``generators`` holds each g_i as a rational vector in lattice
    coordinates (an element of the dual lattice). For odd lattices q is
    still reported mod 2Z, but only its class mod Z is meaningful.
    """
    orders: tuple[int, ...]
    generators: tuple[tuple[Fraction, ...], ...]
    q: tuple[Fraction, ...]
    b: tuple[tuple[Fraction, ...], ...]
    even: bool

    @property
    def order(self) -> int:
        out = 1
        for d in self.orders:
            out *= d
        return out

    @property
    def length(self) -> int:
        return len(self.orders)


def _mod(x: Fraction, m: int) -> Fraction:
    return x - m * (x.numerator // (x.denominator * m))


def discriminant_form(L: Lattice) -> DiscriminantForm:
    if determinant(L) == 0:
        raise DegenerateLatticeError("discriminant form of a degenerate lattice")
    D, _, V = intmat.smith_form(L.G())
    n = L.rank
    gens, orders = [], []
    for i in range(n):
        d = D[i][i]
        if d > 1:
            orders.append(d)
            gens.append(tuple(Fraction(V[k][i], d) for k in range(n)))

    def pair(u, v):
        return sum(a * b for a, b in zip(u, intmat.matvec(L.gram, v)))

    q = tuple(_mod(pair(g, g), 2) for g in gens)
    b = tuple(tuple(_mod(pair(g, h), 1) for h in gens) for g in gens)
    return DiscriminantForm(tuple(orders), tuple(gens), q, b, L.is_even)


@dataclass(frozen=True)
class TwoElementaryFingerprint:
    rank: int
    length_a: int
    parity_delta: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.rank, self.length_a, self.parity_delta)


def two_elementary_fingerprint(L: Lattice) -> TwoElementaryFingerprint:
    """(rank, a, delta) for a lattice whose discriminant group is (Z/2)^a.

    Over a 2-elementary group q(x + y) = q(x) + q(y) mod Z, so checking the
    generators decides whether q is integral everywhere.
    """
    disc = discriminant_form(L)
    if any(d != 2 for d in disc.orders):
        raise LatticeError(f"discriminant group is not 2-elementary: orders {list(disc.orders)}")
    delta = 0 if all(v.denominator == 1 for v in disc.q) else 1
    return TwoElementaryFingerprint(L.rank, disc.length, delta)
