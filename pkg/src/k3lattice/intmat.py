"""Exact integer and rational matrix routines.

Matrices are lists of rows of Python ints (or Fractions where noted).
Vectors are plain lists. Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[int]]
Vector = list[int]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def transpose(A: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    if not A:
        return []
    if not B:
        return [[] for _ in A]
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence], v: Sequence) -> list:
    return [sum(a * b for a, b in zip(row, v)) for row in A]


def vecmat(v: Sequence, A: Sequence[Sequence]) -> list:
    if not A:
        return []
    return [sum(a * b for a, b in zip(v, col)) for col in zip(*A)]


def dot(u: Sequence, v: Sequence) -> int:
    return sum(a * b for a, b in zip(u, v))


def add(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def sub(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def scale(A: Sequence[Sequence], c) -> list[list]:
    return [[c * a for a in row] for row in A]


def is_zero(A: Sequence[Sequence]) -> bool:
    return all(x == 0 for row in A for x in row)


def matpow(A: Matrix, k: int) -> Matrix:
    """A**k by repeated squaring (k >= 0)."""
    result = identity(len(A))
    base = [list(r) for r in A]
    while k:
        if k & 1:
            result = matmul(result, base)
        k >>= 1
        if k:
            base = matmul(base, base)
    return result


def block_diag(blocks: Sequence[Sequence[Sequence[int]]]) -> Matrix:
    n = sum(len(b) for b in blocks)
    out = zeros(n, n)
    off = 0
    for b in blocks:
        k = len(b)
        for i in range(k):
            for j in range(k):
                out[off + i][off + j] = b[i][j]
        off += k
    return out


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def determinant(A: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * pivot - M[i][k] * M[k][j]) // prev
        prev = pivot
    return sign * M[n - 1][n - 1]


def rank(A: Sequence[Sequence]) -> int:
    M = [[Fraction(x) for x in row] for row in A]
    if not M:
        return 0
    r = 0
    ncols = len(M[0])
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        for i in range(r + 1, len(M)):
            if M[i][c]:
                f = M[i][c] / M[r][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
        if r == len(M):
            break
    return r


def inverse_rational(A: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [x / piv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return [row[n:] for row in M]


def inverse_unimodular(A: Sequence[Sequence[int]]) -> Matrix:
    inv = inverse_rational(A)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def solve_left(B: Sequence[Sequence[int]], x: Sequence) -> list[Fraction] | None:
    """Rational y with y*B = x, or None when x is outside the row space.

    Rows of B are assumed linearly independent.
    """
    k = len(B)
    if k == 0:
        return [] if all(v == 0 for v in x) else None
    # Augmented system B^T y = x.
    n = len(x)
    M = [[Fraction(B[i][j]) for i in range(k)] + [Fraction(x[j])] for j in range(n)]
    r = 0
    pivots = []
    for c in range(k):
        p = next((i for i in range(r, n) if M[i][c] != 0), None)
        if p is None:
            raise ValueError("basis rows are linearly dependent")
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        M[r] = [v / piv for v in M[r]]
        for i in range(n):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(r)
        r += 1
    if any(M[i][k] != 0 for i in range(r, n)):
        return None
    return [M[i][k] for i in range(k)]


def integer_coords(B: Sequence[Sequence[int]], x: Sequence[int]) -> list[int] | None:
    """Integer y with y*B = x, or None if x is not in the Z-span of the rows."""
    y = solve_left(B, x)
    if y is None or any(v.denominator != 1 for v in y):
        return None
    return [int(v) for v in y]


def hnf_with_transform(A: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Row Hermite normal form.

    Returns (H, U) with U unimodular and U*A = H. H is in row echelon form
    with positive pivots and entries above each pivot reduced into
    [0, pivot). Zero rows of H sit at the bottom.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    H = [list(r) for r in A]
    U = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        rows = [i for i in range(r, m) if H[i][c] != 0]
        if not rows:
            continue
        # Bring the smallest entry up, then fold the rest in with gcd steps.
        p = min(rows, key=lambda i: abs(H[i][c]))
        H[r], H[p] = H[p], H[r]
        U[r], U[p] = U[p], U[r]
        for i in range(r + 1, m):
            b = H[i][c]
            if b == 0:
                continue
            a = H[r][c]
            if b % a == 0:
                q = b // a
                H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
                continue
            g, s, t = xgcd(a, b)
            ag, bg = a // g, b // g
            Hr, Hi = H[r], H[i]
            H[r] = [s * x + t * y for x, y in zip(Hr, Hi)]
            H[i] = [-bg * x + ag * y for x, y in zip(Hr, Hi)]
            Ur, Ui = U[r], U[i]
            U[r] = [s * x + t * y for x, y in zip(Ur, Ui)]
            U[i] = [-bg * x + ag * y for x, y in zip(Ur, Ui)]
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        piv = H[r][c]
        for i in range(r):
            q = H[i][c] // piv
            if q:
                H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return H, U


def hnf(A: Sequence[Sequence[int]]) -> Matrix:
    """Nonzero rows of the row HNF: a canonical basis of the row Z-span."""
    if not A:
        return []
    H, _ = hnf_with_transform(A)
    return [row for row in H if any(row)]


def integer_kernel(A: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """HNF basis (as rows) of {x in Z^n : A x = 0}.

    The result is always saturated. ``ncols`` is needed when A has no rows.
    """
    n = len(A[0]) if A else ncols
    if n is None:
        raise ValueError("ncols required for an empty matrix")
    if not A:
        return identity(n)
    At = transpose(A)
    H, U = hnf_with_transform(At)
    kernel = [U[i] for i in range(n) if not any(H[i])]
    return hnf(kernel)


def saturate_rows(B: Sequence[Sequence[int]], n: int) -> Matrix:
    """HNF basis of (Q-span of rows) intersected with Z^n."""
    if not B:
        return []
    perp = integer_kernel(B)
    if not perp:
        return identity(n)
    return integer_kernel(perp)


def intersect_rows(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], n: int) -> Matrix:
    """HNF basis of span_Z(A) ∩ span_Z(B)."""
    if not A or not B:
        return []
    # x = a*A = b*B  <=>  (a, -b) in left kernel of [A; B].
    stacked = [list(r) for r in A] + [[-x for x in r] for r in B]
    rel = integer_kernel(transpose(stacked), ncols=len(stacked))
    vecs = [vecmat(r[:len(A)], A) for r in rel]
    return hnf([v for v in vecs if any(v)]) if vecs else []


def complete_to_unimodular(C: Sequence[Sequence[int]], n: int) -> Matrix:
    """Rows D such that [C; D] is unimodular, for a primitive row set C."""
    k = len(C)
    if k == 0:
        return identity(n)
    H, U = hnf_with_transform(transpose(C))
    top = [H[i][:] for i in range(k)]
    if abs(determinant(top)) != 1:
        raise ValueError("rows are not a primitive system")
    W = inverse_unimodular(U)
    Wt = transpose(W)
    return [Wt[i] for i in range(k, n)]


def smith_form(A: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form with transforms: U*A*V = D, D diagonal, d_i | d_{i+1}."""
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(r) for r in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    for t in range(min(m, n)):
        while True:
            nz = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
            if not nz:
                break
            _, pi, pj = min(nz)
            swap_rows(t, pi)
            swap_cols(t, pj)
            piv = D[t][t]
            clean = True
            for i in range(t + 1, m):
                q = D[i][t] // piv
                if q:
                    D[i] = [x - q * y for x, y in zip(D[i], D[t])]
                    U[i] = [x - q * y for x, y in zip(U[i], U[t])]
                if D[i][t]:
                    clean = False
            for j in range(t + 1, n):
                q = D[t][j] // piv
                if q:
                    for row in D:
                        row[j] -= q * row[t]
                    for row in V:
                        row[j] -= q * row[t]
                if D[t][j]:
                    clean = False
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % piv), None)
            if bad is None:
                break
            i = bad[0]
            D[t] = [x + y for x, y in zip(D[t], D[i])]
            U[t] = [x + y for x, y in zip(U[t], U[i])]
        if t < m and t < n and D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return D, U, V
