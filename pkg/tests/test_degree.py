import random
from itertools import product

import pytest

from lowrank.algebra import base_change, hom_Z_to_Fp, hom_Z_to_Q, validate
from lowrank.corpus import (
    boolean_algebra,
    mat2,
    nc_uv,
    rank4_deg3,
    square_zero_3vars,
    zp2_dual,
)
from lowrank.degree import (
    algebra_degree,
    algebra_degree_with_method,
    element_degree,
    element_degree_local,
    geometric_degree,
    geometric_degree_relation,
    restriction_of_homogeneity_check,
)
from lowrank.errors import UnsupportedRingError
from lowrank.polynomials import MonicPolynomial
from lowrank.rank3 import nc_table
from lowrank.rings import QQ, ZZ, PolynomialRing, PrimeField, ResidueRing

from conftest import all_elements, monogenic_table, random_z_algebra


def brute_force_element_degree(B, x):
    """Independent oracle over finite rings: try every monic relation."""
    ring = B.ring
    elems = list(ring.enumerate_elements())
    pows = [B.one()]
    for _ in range(B.rank):
        pows.append(B.mul(pows[-1], x))
    for d in range(1, B.rank + 1):
        for coeffs in product(elems, repeat=d):
            acc = pows[d]
            for e, c in enumerate(coeffs):
                acc = B.add(acc, B.scalar_mul(c, pows[e]))
            if B.is_zero_element(acc):
                return d
    raise AssertionError("no relation found")


def test_element_degree_examples():
    B = boolean_algebra(3)
    assert element_degree(B, B.one()).degree == 1
    cert = element_degree(B, (0, 1, 0))
    assert cert.degree == 2
    assert cert.unique
    # minimal polynomial T^2 - T
    assert cert.minimal_poly == MonicPolynomial.make(B.ring, [0, 1])


def test_element_degree_non_unique():
    B = zp2_dual(2)  # Z/4 with x = 2 eps satisfying x^2 = 0 and 2x = 0
    cert = element_degree(B, (0, 2))
    assert cert.degree == 2
    assert not cert.unique
    assert cert.minimal_poly is None


def test_element_degree_matches_brute_force(rng):
    for ring in (PrimeField(2), PrimeField(3), ResidueRing(2, 2)):
        B = validate(ring, nc_table(ring, ring.one, ring.zero))
        for x in all_elements(B):
            assert element_degree(B, x).degree == brute_force_element_degree(B, x)


def test_algebra_degree_examples():
    assert algebra_degree(boolean_algebra(3)) == 2
    F3 = PrimeField(3)
    assert algebra_degree(square_zero_3vars(F3)) == 2
    assert algebra_degree(rank4_deg3(F3)) == 3
    from lowrank.exceptional import make_exceptional

    B, _ = make_exceptional(ZZ, 1, ())
    assert algebra_degree(B) == 1
    assert algebra_degree_with_method(mat2(ZZ)) == (2, "fraction-field-gdeg")
    assert algebra_degree_with_method(boolean_algebra(3))[1] == "exhaustive"


def test_degree_sampling_cross_check(rng):
    """The fraction-field shortcut for infinite domains, cross-checked by
    sampling: no sampled element exceeds the reported degree and at least
    one attains it."""
    for B, expected in ((mat2(ZZ), 2), (rank4_deg3(ZZ), 3), (nc_uv(ZZ, 2, 6), 2)):
        deg, method = algebra_degree_with_method(B)
        assert deg == expected and method == "fraction-field-gdeg"
        attained = 1
        for _ in range(10000):
            x = tuple(rng.randint(-9, 9) for _ in range(B.rank))
            d = element_degree(B, x).degree
            assert d <= deg
            attained = max(attained, d)
        assert attained == deg


def test_element_degree_local_examples():
    tab = [[(1, 0), (0, 1)], [(0, 1), (0, 2)]]  # Z[x]/(x^2 - 2x)
    B = validate(ZZ, tab)
    x = (0, 3)
    assert element_degree(B, x).degree == 2
    for p in (2, 3, 5, 7):
        assert element_degree_local(B, x, p) == 2
    Bq = base_change(B, hom_Z_to_Q())
    assert element_degree(Bq, Bq.element((0, 3))).degree == 2
    assert element_degree_local(B, B.one(), 5) == 1
    with pytest.raises(UnsupportedRingError):
        element_degree_local(Bq, (0, 1), 3)


def test_degree_semicontinuity_random(rng):
    for _ in range(40):
        B = random_z_algebra(rng)
        Bq = base_change(B, hom_Z_to_Q())
        x = tuple(rng.randint(-4, 4) for _ in range(B.rank))
        dz = element_degree(B, x).degree
        dq = element_degree(Bq, Bq.element(x)).degree
        for p in (2, 3, 5):
            dl = element_degree_local(B, x, p)
            assert dq <= dl <= dz


def test_geometric_degree_examples():
    assert geometric_degree(boolean_algebra(3)) == 3
    assert algebra_degree(boolean_algebra(3)) == 2
    for u, v in ((0, 0), (1, 0), (3, 5), (-2, 4)):
        assert geometric_degree(nc_uv(ZZ, u, v)) == 2
    from lowrank.exceptional import make_exceptional

    B, _ = make_exceptional(ZZ, 1, ())
    assert geometric_degree(B) == 1


def test_geometric_degree_relation_nc(rng):
    for _ in range(5):
        u, v = rng.randint(-6, 6), rng.randint(-6, 6)
        B = nc_uv(ZZ, u, v)
        d, rel = geometric_degree_relation(B)
        assert d == 2
        # xi^2 - (2x + uy + vz) xi + (x^2 + uxy + vxz) = 0
        expected_c1 = {(1, 0, 0): -2}
        if u:
            expected_c1[(0, 1, 0)] = -u
        if v:
            expected_c1[(0, 0, 1)] = -v
        expected_c0 = {(2, 0, 0): 1}
        if u:
            expected_c0[(1, 1, 0)] = u
        if v:
            expected_c0[(1, 0, 1)] = v
        assert rel[1] == expected_c1
        assert rel[0] == expected_c0


def test_geometric_degree_relation_at_rank():
    B = boolean_algebra(3)
    d, rel = geometric_degree_relation(B)
    assert d == 3
    assert all(all(sum(e) == 3 - j for e in cj) for j, cj in enumerate(rel))


def test_restriction_of_homogeneity():
    assert restriction_of_homogeneity_check(nc_uv(ZZ, 3, 5), 2)
    M = mat2(PrimeField(3))
    assert restriction_of_homogeneity_check(M, 2)
    for B in (boolean_algebra(3), nc_uv(ZZ, 1, 1)):
        assert restriction_of_homogeneity_check(B, B.rank)


def test_gdeg_flat_invariance_and_dominance(rng):
    for _ in range(15):
        B = random_z_algebra(rng)
        gz = geometric_degree(B)
        gq = geometric_degree(base_change(B, hom_Z_to_Q()))
        assert gz == gq
        for p in (2, 3, 5):
            gp = geometric_degree(base_change(B, hom_Z_to_Fp(p)))
            assert gz >= gp
        assert gz >= algebra_degree(B)
        assert gz <= B.rank


def test_gdeg_bounds_on_finite(rng):
    for ring in (PrimeField(2), PrimeField(3)):
        for _ in range(10):
            u = rng.randrange(ring.size)
            v = rng.randrange(ring.size)
            B = nc_uv(ring, u, v)
            assert algebra_degree(B) <= geometric_degree(B) <= B.rank


def test_constant_degree_commutative_over_f2():
    """Over a finite field, degree equal to the rank forces commutativity;
    exhaustive over the rank-3 tables."""
    from lowrank.rank3 import _associative_tables_rank3

    F2 = PrimeField(2)
    _, tables = _associative_tables_rank3(F2, 1 << 24)
    for tab in tables:
        B = validate(F2, tab)
        if algebra_degree(B) == 3:
            assert B.is_commutative


def test_poly_ring_degree():
    PR = PolynomialRing(PrimeField(2))
    B = nc_uv(PR, PR.gen, PR.one)
    assert algebra_degree_with_method(B) == (2, "fraction-field-gdeg")
    assert geometric_degree(B) == 2
    PQ = PolynomialRing(QQ)
    tab = monogenic_table(PQ, [PQ.gen, PQ.zero, PQ.one])  # x^3 = x^2 + t
    B2 = validate(PQ, tab)
    assert algebra_degree(B2) == 3


def test_vectorized_max_degree_matches_pure(rng):
    from lowrank.degree import _max_degree_finite, _max_degree_finite_pure
    from lowrank.exceptional import make_exceptional

    cases = [
        boolean_algebra(3),
        boolean_algebra(4),
        square_zero_3vars(PrimeField(3)),
        rank4_deg3(PrimeField(3)),
        zp2_dual(2),
        mat2(PrimeField(2)),
    ]
    for ring in (PrimeField(2), PrimeField(3), ResidueRing(2, 2), ResidueRing(3, 2)):
        for _ in range(5):
            u = rng.randrange(ring.size)
            v = rng.randrange(ring.size)
            cases.append(nc_uv(ring, u, v))
    for B in cases:
        assert _max_degree_finite(B) == _max_degree_finite_pure(B)
