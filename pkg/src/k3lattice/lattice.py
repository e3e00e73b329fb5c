"""Integral lattices given by Gram matrices, and sublattices in ambient coordinates."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import intmat
from .intmat import Matrix


class LatticeError(ValueError):
    """Invalid lattice data or an operation outside its domain."""


class DegenerateLatticeError(LatticeError):
    """The operation requires a nondegenerate form and got one with a radical."""


def _freeze(M: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in M)


@dataclass(frozen=True)
class Lattice:
    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        g = _freeze(self.gram)
        n = len(g)
        if any(len(row) != n for row in g):
            raise LatticeError("Gram matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if g[i][j] != g[j][i]:
                    raise LatticeError(f"Gram matrix is not symmetric at ({i}, {j})")
        object.__setattr__(self, "gram", g)

    @classmethod
    def from_gram(cls, gram: Sequence[Sequence[int]]) -> "Lattice":
        return cls(_freeze(gram))

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def G(self) -> Matrix:
        return [list(r) for r in self.gram]

    def pair(self, u: Sequence[int], v: Sequence[int]) -> int:
        return intmat.dot(u, intmat.matvec(self.gram, v))

    def norm(self, v: Sequence[int]) -> int:
        return self.pair(v, v)

    def is_nondegenerate(self) -> bool:
        return determinant(self) != 0


@dataclass(frozen=True)
class Signature:
    positive: int
    negative: int
    zero: int = 0

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.positive, self.negative, self.zero)

    def __add__(self, other: "Signature") -> "Signature":
        return Signature(self.positive + other.positive,
                         self.negative + other.negative,
                         self.zero + other.zero)


@dataclass(frozen=True)
class Sublattice:
    """Subgroup of ``ambient`` spanned by the rows of ``basis``.

    ``primitive`` is only set by operations that guarantee saturation.
    """
    ambient: Lattice
    basis: tuple[tuple[int, ...], ...]
    primitive: bool = False

    def __post_init__(self):
        b = _freeze(self.basis)
        if any(len(r) != self.ambient.rank for r in b):
            raise LatticeError("basis vectors must have the ambient rank")
        if intmat.rank(b) != len(b):
            raise LatticeError("basis rows are linearly dependent")
        object.__setattr__(self, "basis", b)

    @classmethod
    def of(cls, ambient: Lattice, rows: Sequence[Sequence[int]], primitive: bool = False):
        return cls(ambient, _freeze(rows), primitive)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def rows(self) -> Matrix:
        return [list(r) for r in self.basis]

    def gram(self) -> Matrix:
        B = self.rows()
        return intmat.matmul(intmat.matmul(B, self.ambient.G()), intmat.transpose(B, self.ambient.rank))

    def as_lattice(self) -> Lattice:
        return Lattice.from_gram(self.gram())

    def key(self) -> tuple[tuple[int, ...], ...]:
        """Canonical HNF basis; equal keys means equal subgroups."""
        return _freeze(intmat.hnf(self.rows()))

    def same_subgroup(self, other: "Sublattice") -> bool:
        return self.key() == other.key()

    def contains(self, v: Sequence[int]) -> bool:
        if not any(v):
            return True
        if not self.basis:
            return False
        return intmat.integer_coords(self.basis, v) is not None

    def coords(self, v: Sequence[int]) -> list[int]:
        y = intmat.integer_coords(self.basis, v)
        if y is None:
            raise LatticeError("vector is not in the sublattice")
        return y

    def is_isotropic(self) -> bool:
        return intmat.is_zero(self.gram())

    def is_saturated(self) -> bool:
        if self.rank == 0:
            return True
        return intmat.saturate_rows(self.rows(), self.ambient.rank) == intmat.hnf(self.rows())

    def image(self, M: Sequence[Sequence[int]]) -> "Sublattice":
        """Image under the coordinate map v -> M v."""
        return Sublattice.of(self.ambient, [intmat.matvec(M, r) for r in self.basis], self.primitive)


# ---------------------------------------------------------------- catalog

# Bourbaki labelling: 1-3-4-5-6-7-8 is a chain, node 2 hangs off node 4.
_E8_EDGES = [(0, 2), (2, 3), (1, 3), (3, 4), (4, 5), (5, 6), (6, 7)]


def _negated_cartan(n: int, edges) -> Matrix:
    G = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        G[i][j] = G[j][i] = 1
    return G


def hyperbolic_plane() -> Lattice:
    return Lattice.from_gram([[0, 1], [1, 0]])


def e8() -> Lattice:
    return Lattice.from_gram(_negated_cartan(8, _E8_EDGES))


def a_n(n: int) -> Lattice:
    if n < 1:
        raise LatticeError("A_n needs n >= 1")
    return Lattice.from_gram(_negated_cartan(n, [(i, i + 1) for i in range(n - 1)]))


def d_n(n: int) -> Lattice:
    if n < 4:
        raise LatticeError("D_n needs n >= 4")
    edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    return Lattice.from_gram(_negated_cartan(n, edges))


def diagonal(*entries: int) -> Lattice:
    if not entries:
        raise LatticeError("diag needs at least one entry")
    if any(k == 0 for k in entries):
        raise LatticeError("diag entries must be nonzero")
    return Lattice.from_gram([[k if i == j else 0 for j in range(len(entries))]
                              for i, k in enumerate(entries)])


def k3_lattice() -> Lattice:
    """H + H + H + E8 + E8 in that block order."""
    H = hyperbolic_plane()
    E = e8()
    return direct_sum([H, H, H, E, E])


BUILTIN_NAMES = ("H", "E8", "A", "D", "diag", "LK3")


def build_standard(name: str, params: Sequence[int] = ()) -> Lattice:
    """Catalog lattice by name. E8, A_n, D_n come out negative definite."""
    params = tuple(params)
    if name in ("H", "U"):
        _no_params(name, params)
        return hyperbolic_plane()
    if name == "E8":
        _no_params(name, params)
        return e8()
    if name == "LK3":
        _no_params(name, params)
        return k3_lattice()
    if name in ("A", "An"):
        return a_n(_one_param(name, params))
    if name in ("D", "Dn"):
        return d_n(_one_param(name, params))
    if name in ("diag", "rank1", "<k>"):
        return diagonal(*params)
    raise LatticeError(f"unknown catalog name {name!r}")


def _no_params(name, params):
    if params:
        raise LatticeError(f"{name} takes no parameters")


def _one_param(name, params) -> int:
    if len(params) != 1:
        raise LatticeError(f"{name} takes exactly one integer parameter")
    return int(params[0])


# ---------------------------------------------------------------- basic ops

def rescale(L: Lattice, m: int) -> Lattice:
    if m == 0:
        raise LatticeError("rescaling by zero")
    return Lattice.from_gram(intmat.scale(L.gram, m))


def direct_sum(Ls: Sequence[Lattice]) -> Lattice:
    if not Ls:
        raise LatticeError("direct sum of an empty list")
    return Lattice.from_gram(intmat.block_diag([L.gram for L in Ls]))


def determinant(L: Lattice) -> int:
    return intmat.determinant(L.gram)


def signature(L: Lattice) -> Signature:
    """Exact inertia by symmetric elimination over Q.

    Diagonal pivots are used when available; otherwise a 2x2 block
    [[0, a], [a, 0]] is split off, which contributes one positive and one
    negative direction.
    """
    A = [[Fraction(x) for x in row] for row in L.gram]
    pos = neg = 0
    idx = list(range(L.rank))
    while idx:
        p = next((i for i in idx if A[i][i] != 0), None)
        if p is not None:
            d = A[p][p]
            if d > 0:
                pos += 1
            else:
                neg += 1
            idx.remove(p)
            for i in idx:
                f = A[i][p] / d
                if f:
                    for j in idx:
                        A[i][j] -= f * A[p][j]
            continue
        pair = next(((i, j) for i in idx for j in idx if i < j and A[i][j] != 0), None)
        if pair is None:
            break
        i, j = pair
        a = A[i][j]
        pos += 1
        neg += 1
        idx.remove(i)
        idx.remove(j)
        # Schur complement against P = [[0, a], [a, 0]], P^-1 = [[0, 1/a], [1/a, 0]].
        col_i = {k: A[k][i] for k in idx}
        col_j = {k: A[k][j] for k in idx}
        for k in idx:
            for l in idx:
                A[k][l] -= (col_i[k] * col_j[l] + col_j[k] * col_i[l]) / a
    return Signature(pos, neg, L.rank - pos - neg)


# ---------------------------------------------------------------- sublattices

def saturate(S: Sublattice) -> Sublattice:
    rows = intmat.saturate_rows(S.rows(), S.ambient.rank)
    return Sublattice.of(S.ambient, rows, primitive=True)


def span(L: Lattice, vectors: Sequence[Sequence[int]]) -> Sublattice:
    """Sublattice generated by arbitrary (possibly dependent) vectors."""
    return Sublattice.of(L, intmat.hnf([list(v) for v in vectors]) if vectors else [])


def orthogonal_complement(S: Sublattice) -> Sublattice:
    L = S.ambient
    if determinant(L) == 0:
        raise DegenerateLatticeError("orthogonal complement needs a nondegenerate ambient form")
    if S.rank == 0:
        return Sublattice.of(L, intmat.identity(L.rank), primitive=True)
    BG = intmat.matmul(S.rows(), L.G())
    return Sublattice.of(L, intmat.integer_kernel(BG), primitive=True)


def intersection(A: Sublattice, B: Sublattice) -> Sublattice:
    rows = intmat.intersect_rows(A.rows(), B.rows(), A.ambient.rank)
    return Sublattice.of(A.ambient, rows, primitive=A.primitive and B.primitive)


@dataclass(frozen=True)
class QuotientLattice:
    """J^perp / J for a primitive isotropic J.

    ``reps`` are ambient vectors in J^perp whose classes form the quotient
    basis; ``lattice`` carries the induced form in that basis.
    """
    J: Sublattice
    perp: Sublattice
    reps: tuple[tuple[int, ...], ...]
    lattice: Lattice
    _change: tuple = field(repr=False, compare=False, default=())

    def project(self, x: Sequence[int]) -> list[int]:
        """Quotient coordinates of an ambient vector lying in J^perp."""
        y = intmat.integer_coords(self.perp.basis, x)
        if y is None:
            raise LatticeError("vector is not in J^perp")
        z = intmat.vecmat(y, self._change)
        return [int(v) for v in z[self.J.rank:]]

    def lift(self, coords: Sequence[int]) -> list[int]:
        if not self.reps:
            return [0] * self.J.ambient.rank
        return intmat.vecmat(coords, self.reps)

    def preimage(self, rows: Sequence[Sequence[int]]) -> Sublattice:
        """Preimage in the ambient of the span of quotient-coordinate rows."""
        vecs = [self.lift(r) for r in rows] + self.J.rows()
        return span(self.J.ambient, vecs)


def quotient_lattice(J: Sublattice) -> QuotientLattice:
    if not J.is_isotropic():
        raise LatticeError("J is not isotropic")
    if not J.is_saturated():
        raise LatticeError("J is not primitive")
    perp = orthogonal_complement(J)
    P = perp.rows()
    C = [intmat.integer_coords(P, v) for v in J.rows()]
    m = len(P)
    D = intmat.complete_to_unimodular(C, m)
    full = C + D
    change = intmat.inverse_unimodular(full)
    reps = intmat.matmul(D, P) if D else []
    Q = Sublattice.of(J.ambient, reps) if reps else None
    gram = Q.gram() if Q is not None else []
    return QuotientLattice(J, perp, _freeze(reps), Lattice.from_gram(gram), _freeze(change))


def restrict(S: Sublattice) -> Lattice:
    return S.as_lattice()
