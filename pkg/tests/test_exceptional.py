from fractions import Fraction

import pytest

from lowrank.algebra import base_change, hom_Z_to_Fp, transport_table, validate
from lowrank.corpus import mat2, nc_uv
from lowrank.errors import LowRankError
from lowrank.exceptional import (
    exceptional_charpoly_identities,
    make_exceptional,
    quadratic_roots,
    recognize_exceptional,
)
from lowrank.involution import find_standard_involution
from lowrank.linalg import invert_matrix
from lowrank.polynomials import MonicPolynomial
from lowrank.rings import QQ, ZZ, PolynomialRing, PrimeField, ResidueRing

from conftest import brute_force_char_poly, random_elem, standard_rings


def test_make_exceptional_shapes():
    B, data = make_exceptional(ZZ, 3, (3, 5))
    assert B.table == nc_uv(ZZ, 3, 5).table
    # rank 2 with t = 0 is the dual numbers; t = 1 splits as a product
    B0, _ = make_exceptional(ZZ, 2, (0,))
    x = B0.basis_element(1)
    assert B0.mul(x, x) == B0.zero()
    B1, _ = make_exceptional(ZZ, 2, (1,))
    y = B1.basis_element(1)
    assert B1.mul(y, y) == y  # idempotent: R x R
    # zero map in any rank is the commutative square-zero algebra
    B2, _ = make_exceptional(ZZ, 4, (0, 0, 0))
    assert B2.is_commutative


def test_make_exceptional_has_involution_everywhere(rng):
    for ring in standard_rings():
        for n in (1, 2, 3, 4, 5):
            t = tuple(random_elem(ring, rng) for _ in range(n - 1))
            B, data = make_exceptional(ring, n, t)
            inv = find_standard_involution(B)
            assert inv is not None
            # t agrees with the reduced trace on M
            for idx, ti in enumerate(data.t_vector, start=1):
                assert inv.trd(B.basis_element(idx)) == ti


def test_charpoly_identities_nc():
    B, data = make_exceptional(ZZ, 3, (3, 5))
    i = B.basis_element(1)
    assert exceptional_charpoly_identities(B, data, i)
    chi = B.char_poly_left(i)
    T = MonicPolynomial.make(ZZ, [0])
    assert chi == T.mul(MonicPolynomial.linear(ZZ, 3).pow(2))  # T (T-3)^2
    assert B.trace_left(i) == 6
    assert exceptional_charpoly_identities(B, data, B.zero())
    with pytest.raises(LowRankError):
        exceptional_charpoly_identities(B, data, B.one())


def test_charpoly_identities_f7_rank4():
    F7 = PrimeField(7)
    B, data = make_exceptional(F7, 4, (1, 2, 3))
    x = B.add(B.basis_element(1), B.basis_element(2))  # trd = 3
    assert exceptional_charpoly_identities(B, data, x)
    # independent check by permanent-expansion determinant
    chi = B.char_poly_left(x)
    assert chi.full_coeffs() == brute_force_char_poly(F7, B.left_mul_matrix(x))
    T = MonicPolynomial.make(F7, [0])
    assert chi == T.mul(MonicPolynomial.linear(F7, 3).pow(3))


def test_charpoly_identities_random(rng):
    for ring in (ZZ, PrimeField(3), ResidueRing(2, 2), QQ):
        for n in (2, 3, 4, 5):
            t = tuple(random_elem(ring, rng, small=True) for _ in range(n - 1))
            B, data = make_exceptional(ring, n, t)
            coeffs = tuple(random_elem(ring, rng, small=True) for _ in range(n - 1))
            x = B.zero()
            for idx, c in enumerate(coeffs, start=1):
                x = B.add(x, B.scalar_mul(c, B.basis_element(idx)))
            assert exceptional_charpoly_identities(B, data, x)


def test_recognize_round_trip(rng):
    for ring in standard_rings():
        for n in (1, 2, 3, 4, 5):
            t = tuple(random_elem(ring, rng, small=True) for _ in range(n - 1))
            B, _ = make_exceptional(ring, n, t)
            found = recognize_exceptional(B)
            assert found, f"recognition failed over {ring} rank {n}"
            assert any(d.t_vector == t for d in found)


def test_recognize_translated_basis():
    """nc(3, 0) written on the shifted basis 1, i+2, j-1."""
    B0, _ = make_exceptional(ZZ, 3, (3, 0))
    P = [[1, 0, 0], [2, 1, 0], [-1, 0, 1]]
    Q = invert_matrix(ZZ, P)
    B = validate(ZZ, transport_table(ZZ, B0.table, P, Q))
    found = recognize_exceptional(B)
    assert len(found) == 1
    data = found[0]
    from lowrank.rings import ext_gcd

    g, _, _ = ext_gcd(ZZ, *data.t_vector)
    assert g == 3
    # f_i f_j = t_i f_j on the recovered ideal basis
    f1, f2 = data.m_basis()
    assert B.mul(f1, f2) == B.scalar_mul(data.t_vector[0], f2)


def test_recognize_mat2_fails():
    assert recognize_exceptional(mat2(PrimeField(3))) == []
    assert recognize_exceptional(mat2(ZZ)) == []


def test_recognize_zx_x2_minus_1():
    """Z[x]/(x^2 - 1) splits with M spanned by x - 1 and t = -2."""
    tab = [[(1, 0), (0, 1)], [(0, 1), (1, 0)]]  # x^2 = 1
    B = validate(ZZ, tab)
    found = recognize_exceptional(B)
    assert len(found) == 2  # both conjugate splittings
    ts = sorted(d.t_vector[0] for d in found)
    assert ts == [-2, 2]
    data = next(d for d in found if d.t_vector[0] == -2)
    (f,) = data.m_basis()
    assert f == (-1, 1)  # x - 1
    assert B.mul(f, f) == B.scalar_mul(-2, f)
    # isomorphic to the built exceptional model with t = (-2)
    model, _ = make_exceptional(ZZ, 2, (-2,))
    P = [list(B.one()), list(f)]
    Q = invert_matrix(ZZ, P)
    assert transport_table(ZZ, B.table, P, Q) == model.table


def test_rank2_exceptional_classification_exhaustive():
    """Free rank-2 exceptional algebras are exactly the split product and
    the dual numbers, exhaustively over small rings."""
    for ring in (PrimeField(2), PrimeField(3), ResidueRing(2, 2)):
        z, o = ring.zero, ring.one
        product_model, _ = make_exceptional(ring, 2, (o,))
        dual_model, _ = make_exceptional(ring, 2, (z,))
        for n_ in ring.enumerate_elements():
            for t_ in ring.enumerate_elements():
                B = validate(ring, [[(o, z), (z, o)], [(z, o), (n_, t_)]])
                found = recognize_exceptional(B)
                if not found:
                    continue
                data = found[0]
                (f,) = data.m_basis()
                P = [list(B.one()), list(f)]
                Q = invert_matrix(ring, P)
                if Q is None:
                    continue  # splitting exists but f does not extend the basis
                moved = transport_table(ring, B.table, P, Q)
                t0 = data.t_vector[0]
                target = make_exceptional(ring, 2, (t0,))[0].table
                assert moved == target


def test_m_is_two_sided_ideal(rng):
    for ring in (ZZ, PrimeField(5)):
        B, data = make_exceptional(ring, 4, tuple(random_elem(ring, rng, small=True) for _ in range(3)))
        for e in range(B.rank):
            for m in data.m_basis():
                left = B.mul(B.basis_element(e), B.element(m))
                right = B.mul(B.element(m), B.basis_element(e))
                assert data.contains_in_m(left)
                assert data.contains_in_m(right)


def test_specialization_stability(rng):
    for _ in range(10):
        t = tuple(rng.randint(-5, 5) for _ in range(3))
        B, _ = make_exceptional(ZZ, 4, t)
        for p in (2, 3, 5):
            Bp = base_change(B, hom_Z_to_Fp(p))
            found = recognize_exceptional(Bp)
            assert found
            assert any(
                d.t_vector == tuple(v % p for v in t) for d in found
            )


def test_quadratic_roots_finite_matches_enumeration(rng):
    for ring in (PrimeField(2), PrimeField(5), ResidueRing(2, 3), ResidueRing(3, 2)):
        for _ in range(20):
            t = random_elem(ring, rng)
            n = random_elem(ring, rng)
            roots = quadratic_roots(ring, t, n)
            brute = [
                r
                for r in ring.enumerate_elements()
                if ring.is_zero(ring.add(ring.sub(ring.mul(r, r), ring.mul(t, r)), n))
            ]
            assert sorted(roots) == sorted(brute)


def test_quadratic_roots_z_and_q():
    assert sorted(quadratic_roots(ZZ, 5, 6)) == [2, 3]
    assert quadratic_roots(ZZ, 0, 1) == []  # T^2 + 1
    assert quadratic_roots(ZZ, 1, 1) == []  # disc -3
    assert quadratic_roots(ZZ, 2, 1) == [1]  # (T-1)^2
    assert quadratic_roots(ZZ, 1, -1) == []  # disc 5 not square
    assert sorted(quadratic_roots(QQ, Fraction(1), Fraction(-3, 4))) == [
        Fraction(-1, 2),
        Fraction(3, 2),
    ]
    # completeness cross-check against a scan of small integers
    for t in range(-6, 7):
        for n in range(-6, 7):
            roots = quadratic_roots(ZZ, t, n)
            scan = [r for r in range(-80, 81) if r * r - t * r + n == 0]
            assert sorted(roots) == scan


def test_quadratic_roots_poly_rings():
    # char 3: (T - t)(T - 2t) = T^2 - 3t T + 2t^2 = T^2 + 2 t^2 over F_3
    PR = PolynomialRing(PrimeField(3))
    t = PR.gen
    trd = PR.zero
    nrd = PR.mul(PR.constant(2), PR.mul(t, t))
    roots = quadratic_roots(PR, trd, nrd)
    assert sorted(roots) == sorted([t, PR.neg(t)])
    # Q[t]: (T - t)(T - (t+1))
    PQ = PolynomialRing(QQ)
    s = PQ.gen
    s1 = PQ.add(s, PQ.one)
    roots = quadratic_roots(PQ, PQ.add(s, s1), PQ.mul(s, s1))
    assert sorted(roots) == sorted([s, s1])
    # F_2[t]: Artin-Schreier case, roots of T^2 + t T + (t^3 + t^2)
    P2 = PolynomialRing(PrimeField(2))
    u = P2.gen
    r1 = P2.mul(u, u)  # t^2
    r2 = P2.add(r1, u)  # t^2 + t
    trd2 = P2.add(r1, r2)  # = t
    nrd2 = P2.mul(r1, r2)
    roots = quadratic_roots(P2, trd2, nrd2)
    assert sorted(roots) == sorted([r1, r2])
    # no roots when the discriminant is not a square
    assert quadratic_roots(PQ, PQ.zero, PQ.neg(s)) == []
