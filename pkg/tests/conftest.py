"""Shared helpers: random ring elements, random validated Z-algebras, and
small independent oracles used to freeze expected values."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

import pytest

from lowrank.algebra import transport_table, validate
from lowrank.exceptional import make_exceptional
from lowrank.rings import (
    QQ,
    ZZ,
    PolynomialRing,
    PrimeField,
    ResidueRing,
    Ring,
)


def standard_rings():
    return [
        ZZ,
        QQ,
        PrimeField(2),
        PrimeField(3),
        PrimeField(5),
        ResidueRing(2, 2),
        ResidueRing(3, 2),
        PolynomialRing(PrimeField(2)),
        PolynomialRing(PrimeField(3)),
        PolynomialRing(QQ),
    ]


def random_elem(ring: Ring, rng: random.Random, small=False):
    bound = 3 if small else 9
    if ring.is_finite:
        return rng.randrange(ring.size)
    if ring == ZZ:
        return rng.randint(-bound, bound)
    if ring == QQ:
        return Fraction(rng.randint(-bound, bound), rng.randint(1, 4))
    if isinstance(ring, PolynomialRing):
        deg = rng.randint(0, 2)
        return ring.canon(
            tuple(random_elem(ring.coeff, rng, small=True) for _ in range(deg + 1))
        )
    raise AssertionError(f"no random elements for {ring}")


def random_unimodular_fixing_unit(n: int, rng: random.Random, steps=4):
    """A small-entry integer matrix with first row (1, 0, ..) and det +-1."""
    P = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i = rng.randrange(1, n)
        j = rng.randrange(n)
        if i == j:
            continue
        c = rng.choice([-2, -1, 1, 2])
        for k in range(n):
            P[i][k] += c * P[j][k]
    return P


def monogenic_table(ring: Ring, coeffs):
    """Z[x]/(f) with f = x^r - c_{r-1} x^{r-1} - ... - c_0, companion style."""
    r = len(coeffs)
    pows = [[ring.one if k == i else ring.zero for k in range(r)] for i in range(r)]
    for _ in range(r - 1):
        prev = pows[-1]
        top = prev[r - 1]
        new = [ring.zero] + list(prev[: r - 1])
        for k in range(r):
            new[k] = ring.add(new[k], ring.mul(top, coeffs[k]))
        pows.append(new)
    table = [[tuple(pows[i + j]) for j in range(r)] for i in range(r)]
    return table


def product_table(ring: Ring, t1, t2):
    """Structure table of the direct product; the identity is not a basis
    vector, so validation re-bases."""
    n1, n2 = len(t1), len(t2)
    n = n1 + n2
    z = ring.zero
    table = [[tuple(z for _ in range(n)) for _ in range(n)] for _ in range(n)]
    for i in range(n1):
        for j in range(n1):
            table[i][j] = tuple(t1[i][j]) + tuple(z for _ in range(n2))
    for i in range(n2):
        for j in range(n2):
            table[n1 + i][n1 + j] = tuple(z for _ in range(n1)) + tuple(t2[i][j])
    return table


def random_z_algebra(rng: random.Random, max_rank=4, scramble=True):
    """A random validated Z-algebra of rank <= max_rank."""
    kind = rng.choice(["exceptional", "monogenic", "product", "matrix"])
    if kind == "exceptional":
        r = rng.randint(2, max_rank)
        B, _ = make_exceptional(ZZ, r, tuple(rng.randint(-4, 4) for _ in range(r - 1)))
        table = B.table
    elif kind == "monogenic":
        r = rng.randint(2, max_rank)
        table = monogenic_table(ZZ, [rng.randint(-3, 3) for _ in range(r)])
    elif kind == "product":
        r1 = rng.randint(1, max_rank - 1)
        r2 = rng.randint(1, max_rank - r1)
        t1 = monogenic_table(ZZ, [rng.randint(-2, 2) for _ in range(r1)])
        t2 = monogenic_table(ZZ, [rng.randint(-2, 2) for _ in range(r2)])
        table = product_table(ZZ, t1, t2)
    else:
        from lowrank.corpus import mat2, upper_tri

        table = rng.choice([mat2(ZZ), upper_tri(ZZ)]).table
    B = validate(ZZ, table)
    if scramble and rng.random() < 0.7:
        from lowrank.linalg import invert_matrix

        P = random_unimodular_fixing_unit(B.rank, rng)
        Q = invert_matrix(ZZ, P)
        B = validate(ZZ, transport_table(ZZ, B.table, P, Q))
    return B


def brute_force_char_poly(ring, M):
    """det(T I - M) by permutation expansion; the oracle for Berkowitz."""
    from itertools import permutations

    n = len(M)

    def poly_mul(a, b):
        out = [ring.zero] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            for j, cb in enumerate(b):
                out[i + j] = ring.add(out[i + j], ring.mul(ca, cb))
        return out

    def sign(perm):
        s = 1
        for i in range(len(perm)):
            for j in range(i + 1, len(perm)):
                if perm[i] > perm[j]:
                    s = -s
        return s

    total = [ring.zero] * (n + 1)
    for perm in permutations(range(n)):
        term = [ring.one]
        for i in range(n):
            j = perm[i]
            if i == j:
                term = poly_mul(term, [ring.neg(M[i][j]), ring.one])
            else:
                term = poly_mul(term, [ring.neg(M[i][j])])
        sgn = sign(perm)
        for k, c in enumerate(term):
            val = c if sgn == 1 else ring.neg(c)
            total[k] = ring.add(total[k], val)
    return total


def all_elements(B):
    elems = list(B.ring.enumerate_elements())
    return [tuple(c) for c in product(elems, repeat=B.rank)]


@pytest.fixture
def rng():
    return random.Random(20260810)
