"""Picard-Lefschetz logarithm of monodromy and Kulikov type from (delta, lambda)."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from . import intmat
from .cusps import IsotropicSublattice
from .lattice import Lattice, LatticeError

TYPE_I, TYPE_II, TYPE_III = "I", "II", "III"


class MonodromyError(LatticeError):
    """Invalid monodromy data, or a logarithm that does not exponentiate integrally."""


@dataclass(frozen=True)
class KulikovData:
    """delta primitive isotropic; lambda a representative of a class in delta^perp / delta."""
    ambient: Lattice
    delta: tuple[int, ...]
    lambda_: tuple[int, ...]

    def __post_init__(self):
        L = self.ambient
        d, lam = tuple(int(x) for x in self.delta), tuple(int(x) for x in self.lambda_)
        object.__setattr__(self, "delta", d)
        object.__setattr__(self, "lambda_", lam)
        if len(d) != L.rank or len(lam) != L.rank:
            raise MonodromyError("delta and lambda must have the lattice rank")
        if not any(d):
            raise MonodromyError("delta is zero")
        if intmat.content(d) != 1:
            raise MonodromyError("delta is not primitive")
        if L.norm(d) != 0:
            raise MonodromyError("delta is not isotropic")
        if L.pair(d, lam) != 0:
            raise MonodromyError("lambda is not orthogonal to delta")

    @property
    def lambda_norm(self) -> int:
        # Independent of the representative: (l + k d)^2 = l^2 when d^2 = d.l = 0.
        return self.ambient.norm(self.lambda_)

    def _wedge_content(self) -> int:
        # delta is primitive and delta^perp is saturated, so the content of lambda in
        # delta^perp / delta equals the gcd of the 2x2 minors of [delta; lambda].
        d, lam = self.delta, self.lambda_
        g = 0
        for i in range(len(d)):
            if d[i] or lam[i]:
                for j in range(i + 1, len(d)):
                    g = gcd(g, d[i] * lam[j] - d[j] * lam[i])
        return g

    @property
    def lambda_is_zero(self) -> bool:
        return self._wedge_content() == 0

    @property
    def lambda_imprimitivity(self) -> int | None:
        """Largest m with lambda = m mu in delta^perp / delta; None when lambda = 0 there."""
        return self._wedge_content() or None


def picard_lefschetz_N(data: KulikovData) -> list[list[int]]:
    """Matrix of x -> (x.lambda) delta - (x.delta) lambda (column vectors)."""
    def build(lam):
        Gl = intmat.matvec(data.ambient.gram, lam)
        Gd = intmat.matvec(data.ambient.gram, data.delta)
        return [[Gl[j] * data.delta[i] - Gd[j] * lam[i] for j in range(len(lam))]
                for i in range(len(lam))]
    N = build(data.lambda_)
    shifted = [a + b for a, b in zip(data.lambda_, data.delta)]
    assert build(shifted) == N, "N depends on the representative of lambda"
    return N


def _nilpotency_index(N: list[list[int]]) -> int:
    if intmat.is_zero(N):
        return 1
    if intmat.is_zero(intmat.matmul(N, N)):
        return 2
    if intmat.is_zero(intmat.matmul(N, intmat.matmul(N, N))):
        return 3
    raise MonodromyError("N is not nilpotent of index <= 3")


def kulikov_type(data: KulikovData) -> str:
    """I if lambda = 0 mod delta, II if lambda^2 = 0 otherwise, III if lambda^2 > 0.

    The answer is cross-checked against the nilpotency index of N.
    """
    if data.lambda_norm < 0:
        raise MonodromyError("lambda^2 < 0 is not valid monodromy data")
    if data.lambda_is_zero:
        t = TYPE_I
    elif data.lambda_norm == 0:
        t = TYPE_II
    else:
        t = TYPE_III
    idx = _nilpotency_index(picard_lefschetz_N(data))
    if {TYPE_I: 1, TYPE_II: 2, TYPE_III: 3}[t] != idx:
        raise AssertionError(f"type {t} disagrees with nilpotency index {idx} of N")
    return t


def kulikov_counts(data: KulikovData) -> dict[str, int]:
    t = kulikov_type(data)
    if t == TYPE_I:
        raise MonodromyError("Type I data has no triple points or double curves")
    if t == TYPE_III:
        return {"triple_points": data.lambda_norm}
    return {"double_curves": data.lambda_imprimitivity}


def monodromy_lattice_J(data: KulikovData) -> IsotropicSublattice:
    t = kulikov_type(data)
    L = data.ambient
    if t == TYPE_I:
        raise MonodromyError("Type I data has no monodromy lattice J")
    if t == TYPE_III:
        return IsotropicSublattice.of(L, [data.delta])
    rows = intmat.saturate_rows([list(data.delta), list(data.lambda_)], L.rank)
    return IsotropicSublattice.of(L, rows)


def monodromy_exp_log(N: Sequence[Sequence[int]], gram: Sequence[Sequence[int]] | None = None):
    """T = I + N + N^2/2 and N_back = log T, both verified.

    With ``gram`` given, T is also checked to preserve the form.
    """
    N = [list(map(int, r)) for r in N]
    n = len(N)
    I = intmat.identity(n)
    N2 = intmat.matmul(N, N)
    if not intmat.is_zero(intmat.matmul(N, N2)):
        raise MonodromyError("N^3 != 0")
    if any(x % 2 for row in N2 for x in row):
        raise MonodromyError("T = exp(N) is not integral")
    T = [[I[i][j] + N[i][j] + N2[i][j] // 2 for j in range(n)] for i in range(n)]
    E = intmat.sub(T, I)
    E2 = intmat.matmul(E, E)
    E3 = intmat.matmul(E2, E)
    # 6 log T = 6E - 3E^2 + 2E^3, exactly, since E^4 = 0
    six_back = [[6 * E[i][j] - 3 * E2[i][j] + 2 * E3[i][j] for j in range(n)] for i in range(n)]
    if six_back != [[6 * x for x in row] for row in N]:
        raise AssertionError("log(exp(N)) != N")
    back = [[x // 6 for x in row] for row in six_back]
    if gram is not None:
        if intmat.matmul(intmat.matmul(intmat.transpose(T), gram), T) != [list(r) for r in gram]:
            raise MonodromyError("T does not preserve the form")
    return T, back
