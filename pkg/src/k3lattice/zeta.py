"""Arithmetic in Q(zeta_n) for n in {3, 4, 6}, elements stored as pairs p + q*zeta.

zeta satisfies zeta^2 = c0 + c1*zeta with c0 = -1 and c1 = zeta + conj(zeta):
    n = 3: zeta^2 = -zeta - 1
    n = 4: zeta^2 = -1
    n = 6: zeta^2 = zeta - 1
"""

from __future__ import annotations

from fractions import Fraction

SUPPORTED = (3, 4, 6)

# c1 = zeta + zeta-bar (the real trace of zeta).
_TRACE = {3: -1, 4: 0, 6: 1}


def check_order(n: int) -> None:
    if n not in SUPPORTED:
        raise ValueError(f"Z[zeta_n] arithmetic is only provided for n in {SUPPORTED}, got {n}")


def trace_of_zeta(n: int) -> int:
    check_order(n)
    return _TRACE[n]


def mul(n: int, x, y):
    c1 = _TRACE[n]
    p1, q1 = x
    p2, q2 = y
    return (p1 * p2 - q1 * q2, p1 * q2 + q1 * p2 + c1 * q1 * q2)


def add(x, y):
    return (x[0] + y[0], x[1] + y[1])


def neg(x):
    return (-x[0], -x[1])


def conj(n: int, x):
    # conj(zeta) = c1 - zeta
    p, q = x
    return (p + _TRACE[n] * q, -q)


def norm(n: int, x):
    """Field norm p^2 + c1*p*q + q^2 (a nonnegative rational)."""
    p, q = x
    return p * p + _TRACE[n] * p * q + q * q


def inv(n: int, x):
    N = Fraction(norm(n, x))
    if N == 0:
        raise ZeroDivisionError("inverse of zero")
    c = conj(n, x)
    return (c[0] / N, c[1] / N)


def trace(n: int, x):
    """Tr_{Q(zeta)/Q}(p + q zeta) = 2p + c1 q."""
    return 2 * x[0] + _TRACE[n] * x[1]


def is_real(x) -> bool:
    return x[1] == 0


def trace_scale(n: int) -> int:
    """|zeta - conj(zeta)|^2 = 4 - c1^2: 3 for n = 3, 6 and 4 for n = 4."""
    check_order(n)
    return 4 - _TRACE[n] ** 2
