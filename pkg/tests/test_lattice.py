from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from k3lattice import intmat
from k3lattice.discriminant import discriminant_form, two_elementary_fingerprint
from k3lattice.lattice import (DegenerateLatticeError, Lattice, LatticeError, Signature,
                               Sublattice, build_standard, determinant, direct_sum,
                               orthogonal_complement, quotient_lattice, rescale, saturate,
                               signature, span)


def sym(lo=-5, hi=5, max_rank=5):
    def build(n):
        return st.lists(st.integers(lo, hi), min_size=n * (n + 1) // 2,
                        max_size=n * (n + 1) // 2).map(lambda xs: _fill(n, xs))
    return st.integers(1, max_rank).flatmap(build)


def _fill(n, xs):
    G = [[0] * n for _ in range(n)]
    it = iter(xs)
    for i in range(n):
        for j in range(i, n):
            G[i][j] = G[j][i] = next(it)
    return G


H = build_standard("H")
E8 = build_standard("E8")
LK3 = build_standard("LK3")


# ---------------------------------------------------------------- catalog

def test_catalog_values():
    assert H.gram == ((0, 1), (1, 0))
    assert signature(H) == Signature(1, 1, 0)
    assert determinant(H) == -1
    assert signature(E8) == Signature(0, 8, 0) and determinant(E8) == 1 and E8.is_even
    assert LK3.rank == 22 and signature(LK3).as_tuple() == (3, 19, 0)
    assert determinant(LK3) == -1 and LK3.is_even
    assert build_standard("diag", [2]).gram == ((2,),)
    assert direct_sum([H, H, H, E8, E8]) == LK3


def test_root_systems_are_negative_definite():
    for n in range(1, 8):
        A = build_standard("A", [n])
        assert signature(A).negative == n and determinant(A) == (-1) ** n * (n + 1)
    for n in range(4, 9):
        D = build_standard("D", [n])
        assert signature(D).negative == n and determinant(D) == (-1) ** n * 4


def test_catalog_errors():
    with pytest.raises(LatticeError):
        build_standard("F4")
    with pytest.raises(LatticeError):
        build_standard("A", [0])
    with pytest.raises(LatticeError):
        build_standard("D", [3])
    with pytest.raises(LatticeError):
        build_standard("H", [1])


def test_gram_must_be_symmetric():
    with pytest.raises(LatticeError):
        Lattice.from_gram([[0, 1], [2, 0]])


def test_rescale_and_sum():
    assert rescale(H, 3).gram == ((0, 3), (3, 0))
    assert determinant(rescale(H, 3)) == -9
    assert rescale(H, 1) == H
    assert rescale(build_standard("diag", [2]), -1).gram == ((-2,),)
    with pytest.raises(LatticeError):
        rescale(H, 0)
    assert direct_sum([H]) == H
    T = direct_sum([build_standard("diag", [-2]), H, H, E8, E8])
    assert T.rank == 21 and signature(T).as_tuple() == (2, 19, 0)


def test_zero_rank_signature():
    assert signature(Lattice.from_gram([])) == Signature(0, 0, 0)


# ---------------------------------------------------------------- properties

@settings(max_examples=60, deadline=None)
@given(sym(), st.integers(-4, 4).filter(bool))
def test_rescale_determinant(G, m):
    L = Lattice.from_gram(G)
    assert determinant(rescale(L, m)) == m ** L.rank * determinant(L)


@settings(max_examples=60, deadline=None)
@given(sym(max_rank=4), sym(max_rank=4))
def test_signature_additive_and_matches_eigenvalues(G1, G2):
    L1, L2 = Lattice.from_gram(G1), Lattice.from_gram(G2)
    assert signature(direct_sum([L1, L2])) == signature(L1) + signature(L2)
    ev = np.linalg.eigvalsh(np.array(G1, dtype=float))
    s = signature(L1)
    assert s.positive == int((ev > 1e-9).sum())
    assert s.negative == int((ev < -1e-9).sum())
    assert s.zero == L1.rank - intmat.rank(G1)


@settings(max_examples=60, deadline=None)
@given(sym(max_rank=5))
def test_discriminant_group_order_is_abs_det(G):
    L = Lattice.from_gram(G)
    d = determinant(L)
    if d == 0:
        with pytest.raises(DegenerateLatticeError):
            discriminant_form(L)
        return
    D = discriminant_form(L)
    assert D.order == abs(d)
    for a, b in zip(D.orders, D.orders[1:]):
        assert b % a == 0
    # generators are dual vectors: g . e_k is integral for every basis vector
    for g in D.generators:
        assert all(Fraction(x).denominator == 1 for x in intmat.vecmat(list(g), L.gram))


@settings(max_examples=40, deadline=None)
@given(sym(max_rank=5), st.data())
def test_double_complement_is_saturation(G, data):
    L = Lattice.from_gram(G)
    if determinant(L) == 0:
        return
    n = L.rank
    k = data.draw(st.integers(1, n))
    rows = data.draw(st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n),
                              min_size=k, max_size=k))
    rows = intmat.hnf(rows)
    if not rows:
        return
    S = Sublattice.of(L, rows)
    assert orthogonal_complement(orthogonal_complement(S)).same_subgroup(saturate(S))
    sat = saturate(S)
    assert saturate(sat).same_subgroup(sat)


# ---------------------------------------------------------------- sublattices

def test_saturate_examples():
    assert saturate(Sublattice.of(H, [[2, 0]])).rows() == [[1, 0]]
    assert saturate(Sublattice.of(H, [[1, 1], [1, -1]])).same_subgroup(
        Sublattice.of(H, [[1, 0], [0, 1]]))
    with pytest.raises(LatticeError):
        Sublattice.of(H, [[1, 1], [2, 2]])


def test_orthogonal_complement_examples():
    HH = direct_sum([H, H])
    first = Sublattice.of(HH, [[1, 0, 0, 0], [0, 1, 0, 0]])
    assert orthogonal_complement(first).same_subgroup(
        Sublattice.of(HH, [[0, 0, 1, 0], [0, 0, 0, 1]]))
    assert orthogonal_complement(Sublattice.of(HH, [])).rank == 4
    with pytest.raises(DegenerateLatticeError):
        orthogonal_complement(Sublattice.of(Lattice.from_gram([[0, 0], [0, 1]]), [[1, 0]]))


def test_degree_two_complement():
    h = [1, 1] + [0] * 20
    T = orthogonal_complement(Sublattice.of(LK3, [h])).as_lattice()
    assert T.rank == 21
    assert signature(T).as_tuple() == (2, 19, 0)
    assert determinant(T) == -2
    assert discriminant_form(T).orders == (2,)
    assert two_elementary_fingerprint(T).as_tuple() == (21, 1, 1)


def test_quotient_lattice_examples():
    HH = direct_sum([H, H])
    Q = quotient_lattice(Sublattice.of(HH, [[1, 0, 0, 0]]))
    assert Q.lattice.rank == 2 and determinant(Q.lattice) == -1 and Q.lattice.is_even
    assert signature(Q.lattice) == Signature(1, 1, 0)
    Q2 = quotient_lattice(Sublattice.of(HH, [[1, 0, 0, 0], [0, 0, 1, 0]]))
    assert Q2.lattice.rank == 0
    with pytest.raises(LatticeError):
        quotient_lattice(Sublattice.of(HH, [[1, 1, 0, 0]]))
    with pytest.raises(LatticeError):
        quotient_lattice(Sublattice.of(HH, [[2, 0, 0, 0]]))


def test_quotient_of_unimodular_is_unimodular():
    # rank-1 and rank-2 isotropic J in LK3
    e = lambda i: [1 if k == i else 0 for k in range(22)]
    for rows in ([e(0)], [e(0), e(2)], [[1, 0, 1, 0] + [0] * 18]):
        J = Sublattice.of(LK3, rows)
        Q = quotient_lattice(saturate(J))
        assert abs(determinant(Q.lattice)) == 1
        assert Q.lattice.is_even
        assert Q.lattice.rank == 22 - 2 * J.rank
        # projection and lift are inverse on J^perp / J
        for v in Q.perp.basis:
            c = Q.project(v)
            assert Q.project(Q.lift(c)) == c


def test_span_accepts_dependent_vectors():
    S = span(H, [[1, 0], [2, 0], [0, 1]])
    assert S.rank == 2


# ---------------------------------------------------------------- discriminant forms

def test_discriminant_examples():
    assert discriminant_form(H).orders == ()
    D = discriminant_form(build_standard("diag", [-2]))
    assert D.orders == (2,) and D.q == (Fraction(3, 2),)  # -1/2 mod 2
    D = discriminant_form(rescale(H, 3))
    assert D.orders == (3, 3)
    assert {D.b[0][1], D.b[1][0]} == {Fraction(1, 3)}
    assert two_elementary_fingerprint(build_standard("diag", [2])).as_tuple() == (1, 1, 1)
    assert two_elementary_fingerprint(H).as_tuple() == (2, 0, 0)
    T = direct_sum([build_standard("diag", [-2]), H, H, E8, E8])
    assert two_elementary_fingerprint(T).as_tuple() == (21, 1, 1)
    assert two_elementary_fingerprint(build_standard("D", [4])).as_tuple() == (4, 2, 0)
    with pytest.raises(LatticeError):
        two_elementary_fingerprint(rescale(H, 3))
