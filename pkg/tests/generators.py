"""Random data with the ADHM equation holding by construction."""

import random

from adhmcert.adhm import AdhmDatum, gl_action_datum, random_datum, random_invertible, random_matrix
from adhmcert.exactnum import GaussRational
from adhmcert.matpoly import Matrix


def commuting_zero_mu(n, r, c, rng, bound=2):
    """A_k, B_k polynomials in one matrix M; J = 0, so mu = 0 but J is degenerate."""
    M = random_matrix(c, c, rng, bound)
    ident = Matrix.identity(c)
    def pencil():
        return ident * GaussRational(rng.randint(-bound, bound)) + M * GaussRational(rng.randint(-bound, bound))
    k = n - 1
    d = AdhmDatum(
        n, r, c,
        tuple(pencil() for _ in range(k)),
        tuple(pencil() for _ in range(k)),
        tuple(random_matrix(c, r, rng, bound) for _ in range(k)),
        tuple(Matrix.zeros(r, c) for _ in range(k)),
    )
    return gl_action_datum(random_invertible(c, rng), d)


def charge_one_zero_mu(n, r, rng, bound=2):
    """c = 1 with I_k parallel to u and J_k parallel to w, u.w = 0: often regular."""
    assert r >= 2
    k = n - 1
    u = [GaussRational(1)] + [GaussRational(0)] * (r - 1)
    w = [GaussRational(0)] + [GaussRational(rng.randint(-bound, bound)) for _ in range(r - 1)]
    def scaled(v, rows):
        s = GaussRational(rng.randint(-bound, bound))
        return Matrix([[s * x for x in v]]) if rows else Matrix([[s * x] for x in v])
    return AdhmDatum(
        n, r, 1,
        tuple(Matrix([[rng.randint(-bound, bound)]]) for _ in range(k)),
        tuple(Matrix([[rng.randint(-bound, bound)]]) for _ in range(k)),
        tuple(scaled(u, True) for _ in range(k)),
        tuple(scaled(w, False) for _ in range(k)),
    )


def mixed_datum(seed):
    """Alternate between mu = 0 constructions and unconstrained random data."""
    rng = random.Random(seed)
    kind = seed % 3
    n = rng.choice([2, 3])
    if kind == 0:
        return charge_one_zero_mu(n, rng.choice([2, 3]), rng)
    if kind == 1:
        return commuting_zero_mu(n, rng.choice([1, 2]), rng.choice([1, 2, 3]), rng)
    return random_datum(n, rng.choice([1, 2]), rng.choice([1, 2]), rng)
