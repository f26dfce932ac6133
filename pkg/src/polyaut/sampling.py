"""Seeded random generators for test corpora and the CLI ``--seed`` flag."""

from __future__ import annotations

import random

from .automorphism import Automorphism, make_affine, make_elementary
from .linalg import det
from .polycore import Polynomial, to_rational
from .vectorfield import VectorField


def random_rational(rng: random.Random, bound: int = 3, den: int = 3):
    return to_rational(rng.randint(-bound, bound)) / rng.randint(1, den)


def random_nonzero_rational(rng: random.Random, bound: int = 3, den: int = 3):
    while True:
        q = random_rational(rng, bound, den)
        if q:
            return q


def random_poly(rng: random.Random, nvars: int, max_degree: int, nterms: int = 3,
                allowed=None, min_degree: int = 0, coeff_bound: int = 3) -> Polynomial:
    """Sparse random polynomial in the 1-based variables ``allowed`` (default: all)."""
    allowed = list(range(1, nvars + 1)) if allowed is None else list(allowed)
    terms = {}
    for _ in range(nterms):
        d = rng.randint(min_degree, max_degree)
        e = [0] * nvars
        if allowed:
            for _ in range(d):
                e[rng.choice(allowed) - 1] += 1
        elif d:
            continue
        terms[tuple(e)] = terms.get(tuple(e), 0) + rng.randint(-coeff_bound, coeff_bound)
    return Polynomial(nvars, terms)


def random_invertible_matrix(rng: random.Random, n: int, bound: int = 2):
    while True:
        A = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]
        if det(A) != 0:
            return A


def random_affine(rng: random.Random, n: int) -> Automorphism:
    A = random_invertible_matrix(rng, n)
    b = [rng.randint(-2, 2) for _ in range(n)]
    return make_affine(A, b)


def random_elementary(rng: random.Random, n: int, max_degree: int = 3) -> Automorphism:
    i = rng.randint(1, n)
    others = [k for k in range(1, n + 1) if k != i]
    p = random_poly(rng, n, max_degree, nterms=rng.randint(1, 3), allowed=others,
                    min_degree=1)
    return make_elementary(i, p)


def random_tame(rng: random.Random, n: int, max_length: int = 5, max_degree: int = 3,
                degree_cap: int | None = None) -> Automorphism:
    """Composition of at most ``max_length`` random affine and elementary factors.

    ``degree_cap`` rejects words whose forward or inverse degree exceeds it,
    keeping symbolic certification affordable.
    """
    while True:
        length = rng.randint(1, max_length)
        f = Automorphism.identity(n)
        for _ in range(length):
            g = random_affine(rng, n) if rng.random() < 0.4 else random_elementary(rng, n, max_degree)
            f = f @ g
        if degree_cap is None or max(f.forward.degree, f.inverse.degree) <= degree_cap:
            return f


def random_triangular_field(rng: random.Random, n: int, max_degree: int = 3,
                            last_zero: bool | None = None) -> VectorField:
    """``sum g_i d/dx_i`` with ``g_i`` in ``Q[x_{i+1}, ..., x_n]``: always locally nilpotent.

    With ``last_zero`` the last coefficient vanishes, making ``x_n`` an invariant.
    """
    if last_zero is None:
        last_zero = rng.random() < 0.5
    coeffs = []
    for i in range(1, n + 1):
        later = list(range(i + 1, n + 1))
        if i == n:
            c = 0 if last_zero else rng.randint(-2, 2)
            coeffs.append(Polynomial.constant(c, n))
        else:
            coeffs.append(random_poly(rng, n, max_degree, nterms=rng.randint(1, 3), allowed=later))
    return VectorField(coeffs)


def random_point(rng: random.Random, n: int, bound: int = 5, den: int = 4):
    return tuple(random_rational(rng, bound, den) for _ in range(n))


def random_distinct_point(rng: random.Random, n: int, bound: int = 9, den: int = 4):
    while True:
        p = random_point(rng, n, bound, den)
        if len(set(p)) == n:
            return p
