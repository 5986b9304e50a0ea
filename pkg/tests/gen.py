"""Seeded random instances for the property and acceptance suites."""
from __future__ import annotations

import random

from semireach.instances import PLUS, STAR, CornerReach, MatrixReach, ScalarReach, VectorReach
from semireach.matrix import Matrix, Morphism


def pool(s):
    """Entries drawn from {0, 1, 2, zero, one}."""
    return list(dict.fromkeys([0, 1, 2, s.zero, s.one]))


def rand_matrix(rng, s, rows, cols=None, values=None, zero_bias=0.3):
    values = values or pool(s)
    cols = rows if cols is None else cols
    return Matrix.of(s, [[s.zero if rng.random() < zero_bias else rng.choice(values) for _ in range(cols)]
                         for _ in range(rows)])


def rand_morphism(rng, s, r, n, **kw):
    return Morphism(s, tuple(rand_matrix(rng, s, n, **kw) for _ in range(r)))


def rand_instance(rng, s, kind, r=None, n=None, words=PLUS, zero_target=None):
    r = r or rng.randint(1, 3)
    n = n or rng.randint(1, 2)
    mu = rand_morphism(rng, s, r, n)
    zt = rng.random() < 0.3 if zero_target is None else zero_target
    if kind == "matrix":
        if zt:
            return MatrixReach(mu, (Matrix.zeros(s, n),), words)
        # aim at a product that exists about half the time
        w = tuple(rng.randint(1, r) for _ in range(rng.randint(1, 3)))
        M = mu(w) if rng.random() < 0.5 else rand_matrix(rng, s, n)
        if zero_target is False and M.is_zero():
            M = Matrix.identity(s, n)
        return MatrixReach(mu, (M,), words)
    alpha = rand_matrix(rng, s, 1, n, zero_bias=0.1)
    if kind == "vector":
        if zt:
            eta = Matrix.zeros(s, 1, n)
        else:
            w = tuple(rng.randint(1, r) for _ in range(rng.randint(1, 3)))
            eta = alpha @ mu(w) if rng.random() < 0.5 else rand_matrix(rng, s, 1, n)
            if zero_target is False and eta.is_zero():
                eta = Matrix.row(s, [s.one] * n)
        return VectorReach(mu, alpha, eta, words)
    gamma = s.zero if zt else rng.choice([x for x in pool(s) + [3, 4] if x != s.zero])
    if kind == "scalar":
        beta = rand_matrix(rng, s, n, 1, zero_bias=0.1)
        return ScalarReach(mu, alpha, beta, gamma, words)
    return CornerReach(mu, gamma, words)


def corpus(seed, s, kind, count, **kw):
    rng = random.Random(seed)
    return [rand_instance(rng, s, kind, **kw) for _ in range(count)]
