"""Finite-order isometries: order, eigenlattices, commutation, Hermitian structure.

Isometries act on column coordinate vectors: v -> M v, and preserve the
form when M^T G M = G.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from . import intmat, poly, zeta
from .lattice import (DegenerateLatticeError, Lattice, LatticeError, Signature, Sublattice,
                      _freeze, determinant, orthogonal_complement, signature)
from .roots import enumerate_norm_vectors

ORDER_CEILING = 10_000


class IsometryError(LatticeError):
    """Matrix is not an isometry, or its order could not be established."""


@dataclass(frozen=True)
class Isometry:
    lattice: Lattice
    matrix: tuple[tuple[int, ...], ...]
    order: int

    def M(self) -> list[list[int]]:
        return [list(r) for r in self.matrix]

    def apply(self, v: Sequence[int]) -> list[int]:
        return intmat.matvec(self.matrix, v)

    def power(self, k: int) -> "Isometry":
        k %= self.order
        return Isometry(self.lattice, _freeze(intmat.matpow(self.M(), k)),
                        self.order // gcd(self.order, k) if k else 1)


def preserves_form(L: Lattice, M: Sequence[Sequence[int]]) -> bool:
    Mt = intmat.transpose(M)
    return intmat.matmul(intmat.matmul(Mt, L.gram), M) == L.G()


def _order_of(M: list[list[int]]) -> int:
    n = len(M)
    I = intmat.identity(n)
    if M == I:
        return 1
    cp = poly.charpoly(M)
    found = []
    rest = cp
    for d in poly.orders_with_phi_at_most(n):
        phi = poly.cyclotomic(d)
        while len(rest) > 1:
            q, r = poly.divmod_monic(rest, phi)
            if r != (0,):
                break
            rest = q
            found.append(d)
    if rest != (1,):
        raise IsometryError("order not established: characteristic polynomial is not cyclotomic")
    n_ord = 1
    for d in set(found):
        n_ord = poly.lcm(n_ord, d)
    if n_ord > ORDER_CEILING:
        raise IsometryError(f"order not established: exceeds ceiling {ORDER_CEILING}")
    if intmat.matpow(M, n_ord) != I:
        raise IsometryError("order not established: matrix has infinite order")
    # Minimality: no M^(n/p) = I.
    for p in {p for p in range(2, n_ord + 1) if n_ord % p == 0 and all(p % q for q in range(2, p))}:
        if intmat.matpow(M, n_ord // p) == I:
            raise AssertionError("cyclotomic data inconsistent with matrix powers")
    return n_ord


def verify_isometry(L: Lattice, M: Sequence[Sequence[int]]) -> Isometry:
    M = [list(map(int, r)) for r in M]
    if len(M) != L.rank or any(len(r) != L.rank for r in M):
        raise IsometryError("matrix size does not match the lattice rank")
    if not preserves_form(L, M):
        raise IsometryError("matrix does not preserve the form")
    return Isometry(L, _freeze(M), _order_of(M))


def order_feasible_for_k3(n: int) -> bool:
    """phi(n) <= 20 and n != 60."""
    if n < 2:
        raise ValueError("order must be at least 2")
    return poly.euler_phi(n) <= 20 and n != 60


def fixed_lattice(rho: Isometry) -> Sublattice:
    K = intmat.sub(rho.M(), intmat.identity(rho.lattice.rank))
    return Sublattice.of(rho.lattice, intmat.integer_kernel(K), primitive=True)


def cyclotomic_kernel(rho: Isometry, d: int | None = None) -> Sublattice:
    """Saturated kernel of Phi_d(M); d defaults to the order of rho."""
    d = rho.order if d is None else d
    P = poly.evaluate_at_matrix(poly.cyclotomic(d), rho.M())
    return Sublattice.of(rho.lattice, intmat.integer_kernel(P), primitive=True)


@dataclass(frozen=True)
class EigenlatticeDecomposition:
    rho: Isometry
    fixed: Sublattice
    transcendental: Sublattice
    picard: Sublattice

    @property
    def order(self) -> int:
        return self.rho.order

    def transcendental_action(self) -> list[list[int]]:
        """Matrix R of rho on T in T-basis coordinates (column convention)."""
        B = self.transcendental
        cols = [B.coords(self.rho.apply(b)) for b in B.basis]
        return intmat.transpose(cols, B.rank) if cols else []


def eigenlattice_decomposition(rho: Isometry) -> EigenlatticeDecomposition:
    if rho.order < 2:
        raise IsometryError("eigenlattice decomposition needs order >= 2")
    if determinant(rho.lattice) == 0:
        raise DegenerateLatticeError("eigenlattice decomposition needs a nondegenerate lattice")
    T = cyclotomic_kernel(rho)
    S = orthogonal_complement(T)
    return EigenlatticeDecomposition(rho, fixed_lattice(rho), T, S)


@dataclass(frozen=True)
class SignatureReport:
    transcendental_signature: Signature
    picard_signature: Signature
    transcendental_ok: bool
    picard_ok: bool

    @property
    def passed(self) -> bool:
        return self.transcendental_ok and self.picard_ok


def signature_condition_check(dec: EigenlatticeDecomposition) -> SignatureReport:
    """Necessary conditions: sign(T) = (2, l) and sign(S) = (1, rank S - 1)."""
    sT = signature(dec.transcendental.as_lattice())
    sS = signature(dec.picard.as_lattice())
    t_ok = sT.positive == 2 and sT.zero == 0
    s_ok = sS.positive == 1 and sS.zero == 0 and dec.picard.rank >= 1
    return SignatureReport(sT, sS, t_ok, s_ok)


def commutes_with(gamma: Sequence[Sequence[int]], rho: Isometry) -> bool:
    g = [list(map(int, r)) for r in gamma]
    if len(g) != rho.lattice.rank or not preserves_form(rho.lattice, g):
        raise IsometryError("gamma is not an isometry of the lattice")
    M = rho.M()
    return intmat.matmul(g, M) == intmat.matmul(M, g)


# ---------------------------------------------------------------- Hermitian module

@dataclass(frozen=True)
class HermitianModule:
    """Q = {x in T (x) Z[zeta] : rho(x) = zeta x} with h(x, y) = x . conj(y).

    Basis element i is a + zeta*b with a = w_i and b = -rho(w_i), where
    {w_i, rho(w_i)} runs over a Z-basis of T. The integral form is recovered
    from h as  a.c = Tr(h(x, y)) / trace_scale, trace_scale = 3 (n = 3, 6)
    or 4 (n = 4).
    """
    order: int
    rank_over_ring: int
    basis: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    hermitian_gram: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def trace_scale(self) -> int:
        return zeta.trace_scale(self.order)

    def generators(self) -> list[list[int]]:
        return [list(a) for a, _ in self.basis]


def _ring_basis(R: list[list[int]], n: int) -> list[list[int]]:
    """Vectors w_i with {w_i, R w_i} a Z-basis of Z^k, R satisfying Phi_n(R) = 0.

    Works because Z[zeta_n] is a PID for n in {3, 4, 6}: peel off one free
    rank-one summand at a time and recurse on the quotient.
    """
    k = len(R)
    if k == 0:
        return []
    y = [1] + [0] * (k - 1)
    Ry = intmat.matvec(R, y)
    S = intmat.saturate_rows([y, Ry], k)
    if len(S) != 2:
        raise LatticeError("rho has a real eigenvector on T")
    u1, u2 = S
    # R restricted to span{u1, u2}: columns are coordinates of R u1, R u2.
    cu1 = intmat.integer_coords(S, intmat.matvec(R, u1))
    cu2 = intmat.integer_coords(S, intmat.matvec(R, u2))
    r = [[cu1[0], cu2[0]], [cu1[1], cu2[1]]]
    # det[c, r c] is a definite binary form; a generator has |det| = 1.
    a, b, c = r[1][0], r[1][1] - r[0][0], -r[0][1]
    binary = Lattice.from_gram([[2 * a, b], [b, 2 * c]])
    sign = 1 if a > 0 else -1
    cands = enumerate_norm_vectors(binary, 2 * sign, reduce=False)
    if not cands:
        raise AssertionError("no generator found for a rank-one Z[zeta] summand")
    cx, cy = cands[-1]
    w = [cx * p + cy * q for p, q in zip(u1, u2)]
    Rw = intmat.matvec(R, w)
    D = intmat.complete_to_unimodular([w, Rw], k)
    if not D:
        return [w]
    basis = [w, Rw] + D
    change = intmat.inverse_rational(basis)  # row coords: x = y * basis  ->  y = x * change
    # Induced action on the quotient spanned by the classes of D.
    Rq_cols = []
    for d in D:
        Rd = intmat.matvec(R, d)
        y = intmat.vecmat(Rd, change)
        Rq_cols.append([int(v) for v in y[2:]])
    Rq = intmat.transpose(Rq_cols)
    rest = _ring_basis(Rq, n)
    return [w] + [intmat.vecmat(z, D) for z in rest]


def hermitian_module(dec: EigenlatticeDecomposition) -> HermitianModule:
    n = dec.order
    zeta.check_order(n)
    T = dec.transcendental
    rho = dec.rho
    phi = poly.evaluate_at_matrix(poly.cyclotomic(n), rho.M())
    if any(any(intmat.matvec(phi, t)) for t in T.basis):
        raise IsometryError("minimal polynomial of rho on T is not Phi_n")
    R = dec.transcendental_action()
    coords = _ring_basis(R, n)
    ws = [intmat.vecmat(c, T.basis) for c in coords]
    basis = []
    for w in ws:
        rw = rho.apply(w)
        basis.append((tuple(w), tuple(-x for x in rw)))
    L = rho.lattice
    s0 = zeta.trace_of_zeta(n)  # conj(zeta) = s0 - zeta

    def h(x, y):
        a, b = x
        c, d = y
        # (a + zeta b) . (c + conj(zeta) d)
        ac, bd, bc, ad = L.pair(a, c), L.pair(b, d), L.pair(b, c), L.pair(a, d)
        return (ac + bd + s0 * ad, bc - ad)

    gram = tuple(tuple(h(x, y) for y in basis) for x in basis)
    return HermitianModule(n, len(basis), tuple(basis), gram)


def hermitian_signature(H: HermitianModule) -> Signature:
    """Inertia of the Hermitian Gram over Q(zeta), by congruence elimination."""
    n = H.order
    A = [[(Fraction(p), Fraction(q)) for p, q in row] for row in H.hermitian_gram]
    idx = list(range(len(A)))
    pos = neg = 0
    while idx:
        p = next((i for i in idx if A[i][i][0] != 0), None)
        if p is None:
            pair = next(((i, j) for i in idx for j in idx if i < j and A[i][j] != (0, 0)), None)
            if pair is None:
                break
            i, j = pair
            # x_i <- x_i + t x_j with t = h_ij makes h_ii = 2|h_ij|^2 > 0.
            t = A[i][j]
            tc = zeta.conj(n, t)
            m = len(A)
            for k in range(m):
                A[i][k] = zeta.add(A[i][k], zeta.mul(n, t, A[j][k]))
            for k in range(m):
                A[k][i] = zeta.add(A[k][i], zeta.mul(n, A[k][j], tc))
            continue
        d = A[p][p]
        assert zeta.is_real(d)
        if d[0] > 0:
            pos += 1
        else:
            neg += 1
        idx.remove(p)
        dinv = zeta.inv(n, d)
        for i in idx:
            f = zeta.mul(n, A[i][p], dinv)
            if f != (0, 0):
                for j in idx:
                    A[i][j] = zeta.add(A[i][j], zeta.neg(zeta.mul(n, f, A[p][j])))
    return Signature(pos, neg, len(A) - pos - neg)


def zeta_power(n: int, k: int):
    out = (1, 0)
    for _ in range(k % n):
        out = zeta.mul(n, out, (0, 1))
    return out


def trace_form_roundtrip(H: HermitianModule) -> list[list[Fraction]]:
    """Integral Gram on the Z-basis (w_1, rho w_1, w_2, rho w_2, ...) recovered from h.

    zeta^a x_i corresponds to rho^a w_i, and w.w' = Tr h / trace_scale.
    """
    n, s = H.order, H.trace_scale
    m = H.rank_over_ring
    out = []
    for i in range(m):
        for a in (0, 1):
            row = []
            for j in range(m):
                for b in (0, 1):
                    h = zeta.mul(n, zeta.mul(n, zeta_power(n, a), H.hermitian_gram[i][j]),
                                 zeta.conj(n, zeta_power(n, b)))
                    row.append(Fraction(zeta.trace(n, h), s))
            out.append(row)
    return out


def ring_z_basis(H: HermitianModule, rho: Isometry) -> list[list[int]]:
    """The Z-basis (w_1, rho w_1, ...) of T that matches trace_form_roundtrip."""
    out = []
    for w in H.generators():
        out += [w, rho.apply(w)]
    return out
