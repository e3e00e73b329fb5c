import random

import pytest

from k3lattice import intmat
from k3lattice.lattice import Sublattice, build_standard, direct_sum, quotient_lattice
from k3lattice.monodromy import (TYPE_I, TYPE_II, TYPE_III, KulikovData, MonodromyError,
                                 kulikov_counts, kulikov_type, monodromy_exp_log,
                                 monodromy_lattice_J, picard_lefschetz_N)

from constructions import kulikov_vec as vec, random_kulikov as _random_trial

H = build_standard("H")
HH = direct_sum([H, H])
HHE8 = direct_sum([H, H, build_standard("E8")])

E1, F1, E2, F2 = (vec(4, **{f"i{k}": 1}) for k in range(4))


def data(lam, L=HH, delta=E1):
    return KulikovData(L, tuple(delta), tuple(lam))


def pw(*terms):
    out = [0] * 4
    for c, v in terms:
        out = [a + c * b for a, b in zip(out, v)]
    return out


def test_examples():
    assert intmat.is_zero(picard_lefschetz_N(data([0] * 4)))
    assert kulikov_type(data([0] * 4)) == TYPE_I

    d = data(E2)
    N = picard_lefschetz_N(d)
    assert not intmat.is_zero(N) and intmat.is_zero(intmat.matmul(N, N))
    assert kulikov_type(d) == TYPE_II
    assert kulikov_counts(d) == {"double_curves": 1}
    assert monodromy_lattice_J(d).rows() == [E1, E2]

    d = data(pw((1, E2), (1, F2)))
    N = picard_lefschetz_N(d)
    N2 = intmat.matmul(N, N)
    assert not intmat.is_zero(N2) and intmat.is_zero(intmat.matmul(N, N2))
    assert kulikov_type(d) == TYPE_III
    assert kulikov_counts(d) == {"triple_points": 2}
    assert monodromy_lattice_J(d).rows() == [E1]
    T, back = monodromy_exp_log(N, HH.G())
    assert back == N
    assert intmat.matmul(intmat.matmul(intmat.transpose(T), HH.G()), T) == HH.G()

    d = data(pw((3, E2)))
    assert kulikov_type(d) == TYPE_II
    assert kulikov_counts(d) == {"double_curves": 3}
    assert monodromy_lattice_J(d).rows() == [E1, E2]


def test_exp_log_examples():
    T, back = monodromy_exp_log(intmat.zeros(4, 4))
    assert T == intmat.identity(4) and back == intmat.zeros(4, 4)
    N = picard_lefschetz_N(data(E2))
    T, back = monodromy_exp_log(N)
    assert T == intmat.add(intmat.identity(4), N) and back == N


def test_errors():
    with pytest.raises(MonodromyError):
        data(E2, delta=[2, 0, 0, 0])
    with pytest.raises(MonodromyError):
        data(E2, delta=pw((1, E1), (1, F1)))
    with pytest.raises(MonodromyError):
        data(F1)                                   # F1 . E1 = 1
    with pytest.raises(MonodromyError):
        data([0] * 4, delta=[0] * 4)
    with pytest.raises(MonodromyError):
        kulikov_type(data(pw((1, E2), (-1, F2))))   # lambda^2 = -2
    with pytest.raises(MonodromyError):
        kulikov_counts(data(E1))                   # lambda = delta: Type I
    with pytest.raises(MonodromyError):
        monodromy_lattice_J(data([0] * 4))
    with pytest.raises(MonodromyError):
        monodromy_exp_log([[0, 1, 0], [0, 0, 1], [0, 0, 0]][:2] + [[1, 0, 0]])
    # N^2 odd: exp is not integral
    with pytest.raises(MonodromyError):
        monodromy_exp_log([[0, 1, 0], [0, 0, 1], [0, 0, 0]])


# ---------------------------------------------------------------- randomized trials

def _oracle_N_columns(d):
    L = d.ambient
    cols = []
    for j in range(L.rank):
        x = [int(i == j) for i in range(L.rank)]
        cols.append([L.pair(x, d.lambda_) * a - L.pair(x, d.delta) * b
                     for a, b in zip(d.delta, d.lambda_)])
    return intmat.transpose(cols)


def test_random_kulikov_trials():
    rng = random.Random(2024)
    G = HHE8.G()
    for _ in range(500):
        d, kind, lam0 = _random_trial(rng)
        N = picard_lefschetz_N(d)
        assert N == _oracle_N_columns(d)
        assert kulikov_type(d) == kind
        N2 = intmat.matmul(N, N)
        assert intmat.is_zero(intmat.matmul(N, N2))
        assert (kind == TYPE_I) == intmat.is_zero(N)
        assert (kind == TYPE_II) == (not intmat.is_zero(N) and intmat.is_zero(N2))
        assert (kind == TYPE_III) == (not intmat.is_zero(N2))
        T, back = monodromy_exp_log(N, G)
        assert back == N
        # N is form-skew
        for _ in range(2):
            x = [rng.randint(-2, 2) for _ in range(12)]
            y = [rng.randint(-2, 2) for _ in range(12)]
            assert HHE8.pair(intmat.matvec(N, x), y) + HHE8.pair(x, intmat.matvec(N, y)) == 0
        if kind != TYPE_I:
            J = monodromy_lattice_J(d)
            assert J.sub.is_isotropic() and J.sub.is_saturated()
            counts = kulikov_counts(d)
            k = rng.randint(-3, 3)
            shifted = KulikovData(HHE8, d.delta, tuple(a + k * b for a, b in
                                                        zip(d.lambda_, d.delta)))
            assert kulikov_type(shifted) == kind
            assert kulikov_counts(shifted) == counts
            assert monodromy_lattice_J(shifted).sub.same_subgroup(J.sub)
            if kind == TYPE_III:
                assert counts == {"triple_points": HHE8.norm(lam0)}
            else:
                # imprimitivity is an isometry invariant: compare with the untransformed class
                ref = KulikovData(HHE8, tuple(vec(12, i0=1)), tuple(lam0))
                assert counts == kulikov_counts(ref)


def _oracle_imprimitivity(d):
    Q = quotient_lattice(Sublattice.of(d.ambient, [list(d.delta)]))
    c = Q.project(list(d.lambda_))
    return intmat.content(c) if any(c) else None


def test_imprimitivity_matches_quotient_projection():
    rng = random.Random(77)
    for _ in range(150):
        d, kind, _ = _random_trial(rng)
        assert d.lambda_imprimitivity == _oracle_imprimitivity(d)
        assert d.lambda_is_zero == (kind == TYPE_I)


def test_imprimitivity_matches_content_in_standard_position():
    # delta = e1: delta^perp / delta has coordinates (e2, f2, E8)
    for m in range(1, 6):
        for k in range(-2, 3):
            lam = [k, 0, m, 0] + [0] * 8
            d = KulikovData(HHE8, tuple(vec(12, i0=1)), tuple(lam))
            assert kulikov_counts(d) == {"double_curves": m}
            assert monodromy_lattice_J(d).rows()[1][2] == 1
