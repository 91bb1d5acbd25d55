import pytest

from lowrank.algebra import validate
from lowrank.corpus import (
    boolean_algebra,
    dual_numbers_char2,
    mat2,
    nc_uv,
    square_zero_3vars,
)
from lowrank.errors import LowRankError
from lowrank.exceptional import make_exceptional
from lowrank.involution import (
    check_uniqueness,
    commutative_classification,
    conjugate,
    degree_two_equivalence_report,
    find_standard_involution,
    involution_obstruction,
    polarization_identity_holds,
    reduced_norm,
    reduced_trace,
)
from lowrank.linalg import invert_matrix
from lowrank.rank3 import nc_table
from lowrank.rings import ZZ, PolynomialRing, PrimeField, ResidueRing

from conftest import all_elements, random_z_algebra


def test_mat2_adjugate():
    M = mat2(ZZ)
    inv = find_standard_involution(M)
    assert inv is not None
    # x = [[1,2],[3,4]] in matrix units; move to the re-based coordinates
    P = M.input_basis_change
    Q = invert_matrix(ZZ, [list(r) for r in P])
    orig = (1, 2, 3, 4)
    x = tuple(sum(orig[k] * Q[k][c] for k in range(4)) for c in range(4))
    assert reduced_trace(inv, x) == 5
    assert reduced_norm(inv, x) == -2
    # conj is the adjugate: x * conj(x) = det * 1
    prod = M.mul(x, conjugate(inv, x))
    assert prod == M.from_scalar(-2)


def test_boolean_obstruction():
    B = boolean_algebra(3)
    assert find_standard_involution(B) is None
    assert involution_obstruction(B) == ("pair", 1, 2)
    # the failing pair: (x + y)^2 - (trd x + trd y)(x + y) is not scalar
    x = B.basis_element(1)
    y = B.basis_element(2)
    s = B.add(x, y)
    val = B.sub(B.mul(s, s), B.scalar_mul(2, s))
    assert any(not B.ring.is_zero(c) for c in val[1:])


def test_trivial_involution():
    B = dual_numbers_char2(PrimeField(2))
    inv = find_standard_involution(B)
    assert inv is not None and inv.is_trivial
    # nontrivial over Z
    B2, _ = make_exceptional(ZZ, 2, (0,))
    inv2 = find_standard_involution(B2)
    assert inv2 is not None and not inv2.is_trivial


def test_triviality_criterion_on_finite_algebras():
    """conj = id exactly when the algebra is commutative and every basis
    square is scalar."""
    for B in (
        boolean_algebra(2),
        dual_numbers_char2(PrimeField(2)),
        nc_uv(PrimeField(2), 1, 0),
        nc_uv(PrimeField(2), 0, 0),
        validate(PrimeField(2), nc_table(PrimeField(2), 1, 1)),
    ):
        inv = find_standard_involution(B)
        if inv is None:
            continue
        squares_scalar = all(
            all(
                B.ring.is_zero(c)
                for c in B.mul(B.basis_element(i), B.basis_element(i))[1:]
            )
            for i in range(1, B.rank)
        )
        assert inv.is_trivial == (B.is_commutative and squares_scalar)


def test_trd_nrd_basics():
    B = nc_uv(ZZ, 3, 5)
    inv = find_standard_involution(B)
    assert reduced_trace(inv, B.one()) == 2
    assert reduced_norm(inv, B.one()) == 1
    # x = a i + b j in the trace-zero part has nrd 0, trd = 3a + 5b
    x = (0, 2, -7)
    assert reduced_norm(inv, x) == 0
    assert reduced_trace(inv, x) == 2 * 3 + (-7) * 5


def test_nrd_multiplicative(rng):
    count = 0
    while count < 30:
        B = random_z_algebra(rng)
        inv = find_standard_involution(B)
        if inv is None:
            continue
        count += 1
        x = tuple(rng.randint(-4, 4) for _ in range(B.rank))
        y = tuple(rng.randint(-4, 4) for _ in range(B.rank))
        assert inv.nrd(B.mul(x, y)) == ZZ.mul(inv.nrd(x), inv.nrd(y))
        assert polarization_identity_holds(inv, x, y)


def test_reduced_quadratic_relation(rng):
    for _ in range(20):
        B = random_z_algebra(rng)
        inv = find_standard_involution(B)
        if inv is None:
            continue
        x = tuple(rng.randint(-5, 5) for _ in range(B.rank))
        val = B.add(
            B.sub(B.mul(x, x), B.scalar_mul(inv.trd(x), x)),
            B.from_scalar(inv.nrd(x)),
        )
        assert B.is_zero_element(val)


def test_check_uniqueness():
    for B in (nc_uv(ZZ, 3, 5), mat2(ZZ), square_zero_3vars(ZZ)):
        assert check_uniqueness(B)
    B1, _ = make_exceptional(ZZ, 1, ())
    assert check_uniqueness(B1)
    with pytest.raises(LowRankError):
        check_uniqueness(boolean_algebra(3))


def test_uniqueness_exhaustive_f2_rank3():
    from lowrank.rank3 import _associative_tables_rank3

    F2 = PrimeField(2)
    _, tables = _associative_tables_rank3(F2, 1 << 24)
    for tab in tables:
        B = validate(F2, tab)
        if find_standard_involution(B) is not None:
            assert check_uniqueness(B)


def test_degree_two_equivalence_reports():
    rep = degree_two_equivalence_report(boolean_algebra(3))
    assert rep.deg2 is True and rep.gdeg2 is False and not rep.has_involution
    assert rep.witness_a is None and rep.consistent

    rep = degree_two_equivalence_report(nc_uv(ZZ, 3, 5))
    assert rep.deg2 and rep.gdeg2 and rep.has_involution
    assert rep.witness_a == -1 and rep.consistent

    B1, _ = make_exceptional(ZZ, 1, ())
    rep = degree_two_equivalence_report(B1)
    assert rep.degenerate and rep.has_involution and not rep.gdeg2
    assert rep.consistent


def test_quadratic_always_has_involution_exhaustive():
    for ring in (PrimeField(2), PrimeField(3), ResidueRing(2, 2)):
        z, o = ring.zero, ring.one
        for n_ in ring.enumerate_elements():
            for t_ in ring.enumerate_elements():
                B = validate(ring, [[(o, z), (z, o)], [(z, o), (n_, t_)]])
                inv = find_standard_involution(B)
                assert inv is not None
                assert check_uniqueness(B)


def test_commutative_classification():
    # F_2[x, y]/(x^2 - a1, y^2 - a2) on the basis 1, x, y, xy with a1 = a2 = 1
    F2 = PrimeField(2)
    z, o = 0, 1
    e = lambda k: tuple(o if i == k else z for i in range(4))
    table = [
        [e(0), e(1), e(2), e(3)],
        [e(1), e(0), e(3), e(2)],
        [e(2), e(3), e(0), e(1)],
        [e(3), e(2), e(1), e(0)],
    ]
    B = validate(F2, table)
    inv = find_standard_involution(B)
    assert inv is not None and inv.is_trivial
    res = commutative_classification(B, inv)
    assert res.kind == "generators"

    # Z[x, y]/(x, y)^2: J = (0), x^2 = xy = 0
    B2 = square_zero_3vars(ZZ)
    inv2 = find_standard_involution(B2)
    res2 = commutative_classification(B2, inv2)
    assert res2.kind == "generators"
    assert res2.shifts == (0, 0, 0)

    B3, _ = make_exceptional(ZZ, 2, (4,))
    inv3 = find_standard_involution(B3)
    assert commutative_classification(B3, inv3).kind == "rank_le_2"

    with pytest.raises(LowRankError):
        commutative_classification(nc_uv(ZZ, 1, 0), find_standard_involution(nc_uv(ZZ, 1, 0)))


def test_involution_over_poly_ring():
    PR = PolynomialRing(PrimeField(2))
    B = nc_uv(PR, PR.gen, PR.one)
    inv = find_standard_involution(B)
    assert inv is not None
    assert inv.trd_vector == (PR.zero, PR.gen, PR.one)
    assert check_uniqueness(B)
