"""Integer polynomials as coefficient lists, lowest degree first."""

from __future__ import annotations

from functools import lru_cache
from math import gcd
from typing import Sequence

from . import intmat

Poly = tuple[int, ...]


def trim(p: Sequence[int]) -> Poly:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return tuple(p)


def mul(p: Sequence[int], q: Sequence[int]) -> Poly:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def divmod_monic(p: Sequence[int], d: Sequence[int]) -> tuple[Poly, Poly]:
    p = list(trim(p))
    d = trim(d)
    if d[-1] != 1:
        raise ValueError("divisor must be monic")
    if len(p) < len(d):
        return (0,), tuple(p)
    q = [0] * (len(p) - len(d) + 1)
    for k in range(len(p) - len(d), -1, -1):
        c = p[k + len(d) - 1]
        q[k] = c
        if c:
            for j, b in enumerate(d):
                p[k + j] -= c * b
    return trim(q), trim(p[:len(d) - 1] or [0])


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("phi needs n >= 1")
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> Poly:
    """Phi_n via x^n - 1 = prod_{d | n} Phi_d."""
    p = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        p, r = divmod_monic(p, cyclotomic(d))
        assert r == (0,)
    return tuple(p)


def orders_with_phi_at_most(r: int) -> list[int]:
    # phi(n) >= sqrt(n/2), so n <= 2 r^2 covers every candidate.
    return [n for n in range(1, 2 * r * r + 3) if euler_phi(n) <= r]


def charpoly(A: Sequence[Sequence[int]]) -> Poly:
    """det(xI - A) by Faddeev-LeVerrier; all divisions are exact."""
    n = len(A)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    M = intmat.zeros(n, n)
    for k in range(1, n + 1):
        AM = intmat.matmul(A, M) if k > 1 else intmat.zeros(n, n)
        c_prev = coeffs[n - k + 1]
        M = [[AM[i][j] + (c_prev if i == j else 0) for j in range(n)] for i in range(n)]
        AM = intmat.matmul(A, M)
        tr = sum(AM[i][i] for i in range(n))
        assert tr % k == 0
        coeffs[n - k] = -tr // k
    return tuple(coeffs)


def evaluate_at_matrix(p: Sequence[int], A: Sequence[Sequence[int]]) -> list[list[int]]:
    """p(A) by Horner's rule."""
    n = len(A)
    out = intmat.zeros(n, n)
    for c in reversed(trim(p)):
        out = intmat.matmul(out, A) if any(any(r) for r in out) else out
        for i in range(n):
            out[i][i] += c
    return out


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)
