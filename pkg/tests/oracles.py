"""Independent brute-force oracles (numpy boxes), kept apart from the library code."""

import itertools
import random
from fractions import Fraction
from math import isqrt

import numpy as np
import sympy


def cauchy_schwarz_box(G, t):
    """Per-coordinate bounds b_i with x_i^2 <= |t| (G^-1)_ii for any x with x.Gx = t, G definite."""
    inv = sympy.Matrix(G).inv()
    out = []
    for i in range(len(G)):
        v = Fraction(int(sympy.fraction(inv[i, i])[0]), int(sympy.fraction(inv[i, i])[1]))
        v = abs(v) * abs(t)
        out.append(isqrt(v.numerator // v.denominator))
    return out


def box_vectors(G, bounds, norms):
    """All x in the box prod [-b_i, b_i] whose norm lies in ``norms``; a dict norm -> sorted list."""
    n = len(G)
    Gm = np.array(G, dtype=np.int64)
    found = {t: [] for t in norms}
    axes = [np.arange(-b, b + 1, dtype=np.int64) for b in bounds]
    lead = 0
    while lead < n and int(np.prod([2 * b + 1 for b in bounds[lead:]])) > 2_000_000:
        lead += 1
    free = axes[lead:]
    grid = (np.stack(np.meshgrid(*free, indexing="ij"), axis=-1).reshape(-1, len(free))
            if free else np.zeros((1, 0), dtype=np.int64))
    for prefix in itertools.product(*[range(-b, b + 1) for b in bounds[:lead]]):
        X = np.concatenate([np.tile(np.array(prefix, dtype=np.int64), (len(grid), 1)), grid], 1)
        q = ((X @ Gm) * X).sum(axis=1)
        for t in norms:
            found[t] += X[q == t].tolist()
    return {t: sorted(v) for t, v in found.items()}


def random_definite_gram(rng: random.Random, max_rank=6, max_entry=6, box_limit=2_000_000,
                         max_target=6):
    """Random definite Gram with entries bounded by max_entry and a manageable brute-force box."""
    while True:
        n = rng.randint(1, max_rank)
        sign = rng.choice([1, -1])
        G = [[0] * n for _ in range(n)]
        for i in range(n):
            G[i][i] = sign * rng.randint(1, max_entry)
            for j in range(i):
                G[i][j] = G[j][i] = rng.randint(-max_entry // 2, max_entry // 2)
        ev = np.linalg.eigvalsh(np.array(G, dtype=float))
        if not (all(ev > 0.05) or all(ev < -0.05)):
            continue
        bounds = cauchy_schwarz_box(G, max_target)
        if int(np.prod([2 * b + 1 for b in bounds])) <= box_limit:
            return G, sign, bounds


def d8_plus_root_count():
    """Norm-2 vectors of E8 in the even coordinate model Z^8 u (Z + 1/2)^8 with even coordinate sum."""
    count = 0
    for x in itertools.product(range(-1, 2), repeat=8):
        if sum(v * v for v in x) == 2 and sum(x) % 2 == 0:
            count += 1
    for s in itertools.product((1, -1), repeat=8):
        # all coordinates +-1/2: norm 8/4 = 2; the coordinate sum sum(s)/2 must be even
        if (sum(s) // 2) % 2 == 0:
            count += 1
    return count
