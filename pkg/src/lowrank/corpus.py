"""Built-in example algebras with their expected property vectors.

Each entry is a constructor for one of the standing examples exercised by
the test suite: product rings, square-zero quotients, matrix algebras, the
good-basis families, and the non-constant-degree specializations.  The
expected vectors are the ground truth the analysis pipeline must reproduce.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import StructureAlgebra, validate
from .errors import LowRankError
from .exceptional import make_exceptional
from .rank3 import c_family_table, nc_table
from .rings import QQ, ZZ, PolynomialRing, PrimeField, ResidueRing, Ring


def _product_ring_table(ring: Ring, n: int):
    """R^n on the basis 1, f_1, ..., f_{n-1} of orthogonal idempotents."""
    z, one = ring.zero, ring.one
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == 0:
                row.append(tuple(one if k == j else z for k in range(n)))
            elif j == 0:
                row.append(tuple(one if k == i else z for k in range(n)))
            elif i == j:
                row.append(tuple(one if k == i else z for k in range(n)))
            else:
                row.append(tuple(z for _ in range(n)))
        table.append(tuple(row))
    return tuple(table)


def boolean_algebra(n: int) -> StructureAlgebra:
    return validate(PrimeField(2), _product_ring_table(PrimeField(2), n))


def fp_product(p: int, n: int) -> StructureAlgebra:
    return validate(PrimeField(p), _product_ring_table(PrimeField(p), n))


def square_zero_3vars(ring: Ring) -> StructureAlgebra:
    B, _ = make_exceptional(ring, 4, (ring.zero,) * 3)
    return B


def rank4_deg3(ring: Ring) -> StructureAlgebra:
    """R[x, y] / (x^3, x y, y^2) on the basis 1, x, y, x^2."""
    z, one = ring.zero, ring.one
    names = ("1", "x", "y", "x2")
    e = lambda k: tuple(one if i == k else z for i in range(4))
    zero = (z, z, z, z)
    table = [
        [e(0), e(1), e(2), e(3)],
        [e(1), e(3), zero, zero],
        [e(2), zero, zero, zero],
        [e(3), zero, zero, zero],
    ]
    return validate(ring, table, names)


def dual_numbers(ring: Ring) -> StructureAlgebra:
    z, one = ring.zero, ring.one
    table = [
        [(one, z), (z, one)],
        [(z, one), (z, z)],
    ]
    return validate(ring, table, ("1", "e"))


def dual_numbers_char2(ring: Ring) -> StructureAlgebra:
    if ring.characteristic != 2:
        raise LowRankError("this entry needs a ring of characteristic 2")
    return dual_numbers(ring)


def zp2_dual(p: int) -> StructureAlgebra:
    return dual_numbers(ResidueRing(p, 2))


def mat2(ring: Ring) -> StructureAlgebra:
    """M_2(R) fed in on the matrix-unit basis; validation re-bases so the
    identity becomes basis vector 0."""
    z, one = ring.zero, ring.one
    units = [(0, 0), (0, 1), (1, 0), (1, 1)]
    table = []
    for a, b in units:
        row = []
        for c, d in units:
            prod = [z] * 4
            if b == c:
                prod[units.index((a, d))] = one
            row.append(tuple(prod))
        table.append(tuple(row))
    return validate(ring, table)


def upper_tri(ring: Ring) -> StructureAlgebra:
    """Upper-triangular 2x2 matrices on the basis e11, e12, e22."""
    z, one = ring.zero, ring.one
    table = [
        [(one, z, z), (z, one, z), (z, z, z)],
        [(z, z, z), (z, z, z), (z, one, z)],
        [(z, z, z), (z, z, z), (z, z, one)],
    ]
    return validate(ring, table)


def nc_uv(ring: Ring, u, v) -> StructureAlgebra:
    return validate(ring, nc_table(ring, u, v), ("1", "i", "j"))


def c_abcd(ring: Ring, a, b, c, d, r, s, t) -> StructureAlgebra:
    return validate(ring, c_family_table(ring, a, b, c, d, r, s, t), ("1", "i", "j"))


def glued_degree(ring: Ring, a, b) -> StructureAlgebra:
    """The non-constant-degree family at a scalar point with a b = 0:
    i^2 = b i - a j, j^2 = a i - b j, i j = -a^2, j i = b^2 - a^2 - b i + b j."""
    a, b = ring.canon(a), ring.canon(b)
    if not ring.is_zero(ring.mul(a, b)):
        raise LowRankError("the family needs a b = 0")
    z, one, neg, mul = ring.zero, ring.one, ring.neg, ring.mul
    a2 = mul(a, a)
    b2 = mul(b, b)
    table = [
        [(one, z, z), (z, one, z), (z, z, one)],
        [(z, one, z), (z, b, neg(a)), (neg(a2), z, z)],
        [(z, z, one), (ring.sub(b2, a2), neg(b), b), (z, a, neg(b))],
    ]
    return validate(ring, table, ("1", "i", "j"))


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    summary: str
    builder: object
    default_args: tuple
    expected: dict  # property vector for the default arguments


def _entries():
    return [
        CorpusEntry(
            "boolean_3",
            "product of three copies of F_2",
            lambda: boolean_algebra(3),
            (),
            {
                "rank": 3,
                "degree": 2,
                "gdeg": 3,
                "has_involution": False,
                "commutative": True,
                "exceptional": False,
            },
        ),
        CorpusEntry(
            "boolean_4",
            "product of four copies of F_2",
            lambda: boolean_algebra(4),
            (),
            {
                "rank": 4,
                "degree": 2,
                "gdeg": 4,
                "has_involution": False,
                "commutative": True,
                "exceptional": False,
            },
        ),
        CorpusEntry(
            "fp_product_3_3",
            "product of three copies of F_3",
            lambda: fp_product(3, 3),
            (),
            {
                "rank": 3,
                "degree": 3,
                "gdeg": 3,
                "has_involution": False,
                "commutative": True,
                "exceptional": False,
            },
        ),
        CorpusEntry(
            "square_zero_3vars",
            "Z[x,y,z]/(x,y,z)^2",
            lambda: square_zero_3vars(ZZ),
            (),
            {
                "rank": 4,
                "degree": 2,
                "gdeg": 2,
                "has_involution": True,
                "involution_trivial": False,
                "commutative": True,
                "exceptional": True,
            },
        ),
        CorpusEntry(
            "rank4_deg3",
            "Z[x,y]/(x^3, xy, y^2)",
            lambda: rank4_deg3(ZZ),
            (),
            {
                "rank": 4,
                "degree": 3,
                "gdeg": 3,
                "has_involution": False,
                "commutative": True,
                "exceptional": False,
            },
        ),
        CorpusEntry(
            "dual_numbers_char2",
            "F_2[e]/(e^2), trivial involution",
            lambda: dual_numbers_char2(PrimeField(2)),
            (),
            {
                "rank": 2,
                "degree": 2,
                "gdeg": 2,
                "has_involution": True,
                "involution_trivial": True,
                "commutative": True,
                "exceptional": True,
            },
        ),
        CorpusEntry(
            "zp2_dual",
            "Z/p^2[e]/(e^2) (p = 2): rank-2 with a non-unique minimal relation inside",
            lambda: zp2_dual(2),
            (),
            {
                "rank": 2,
                "degree": 2,
                "gdeg": 2,
                "has_involution": True,
                "involution_trivial": False,
                "commutative": True,
                "exceptional": True,
            },
        ),
        CorpusEntry(
            "mat2",
            "2x2 matrices over Z (adjugate involution)",
            lambda: mat2(ZZ),
            (),
            {
                "rank": 4,
                "degree": 2,
                "gdeg": 2,
                "has_involution": True,
                "involution_trivial": False,
                "commutative": False,
                "exceptional": False,
            },
        ),
        CorpusEntry(
            "nc_uv",
            "good-basis laws with (u, v) over Z, default (3, 5)",
            lambda: nc_uv(ZZ, 3, 5),
            (3, 5),
            {
                "rank": 3,
                "degree": 2,
                "gdeg": 2,
                "has_involution": True,
                "involution_trivial": False,
                "commutative": False,
                "exceptional": True,
                "orbit_generator": 1,
            },
        ),
        CorpusEntry(
            "c_abcd",
            "cubic-table laws over Z, default a=d=0, b=1, c=-1, (r,s,t)=(-1,1,1)",
            lambda: c_abcd(ZZ, 0, 1, -1, 0, -1, 1, 1),
            (0, 1, -1, 0, -1, 1, 1),
            {
                "rank": 3,
                "degree": 2,
                "gdeg": 2,
                "has_involution": True,
                "commutative": False,
                "exceptional": True,
                "orbit_generator": 1,
            },
        ),
        CorpusEntry(
            "glued_degree",
            "non-constant-degree family over F_5, default point (1, 0)",
            lambda: glued_degree(PrimeField(5), 1, 0),
            (1, 0),
            {
                "rank": 3,
                "degree": 3,
                "gdeg": 3,
                "has_involution": False,
                "commutative": True,
                "exceptional": False,
            },
        ),
        CorpusEntry(
            "upper_tri",
            "upper-triangular 2x2 matrices over Z",
            lambda: upper_tri(ZZ),
            (),
            {
                "rank": 3,
                "degree": 2,
                "gdeg": 2,
                "has_involution": True,
                "involution_trivial": False,
                "commutative": False,
                "exceptional": True,
                "orbit_generator": 1,
            },
        ),
    ]


REGISTRY = {e.name: e for e in _entries()}


def corpus_names():
    return sorted(REGISTRY)


def build(name: str, ring: Ring | None = None, params=None) -> StructureAlgebra:
    """Build a corpus algebra by name.

    Parametrized families accept a ring and parameters: nc_uv(ring, u, v),
    c_abcd(ring, a..d, r, s, t), glued_degree(ring, a, b), mat2(ring),
    upper_tri(ring), square_zero_3vars(ring), rank4_deg3(ring),
    dual_numbers_char2(ring), zp2_dual(p), boolean_N, fp_product_P_N.
    """
    if name.startswith("boolean_"):
        return boolean_algebra(int(name.split("_")[1]))
    if name.startswith("fp_product_"):
        _, _, p, n = name.split("_")
        return fp_product(int(p), int(n))
    if name not in REGISTRY:
        raise LowRankError(f"unknown corpus entry {name!r}")
    if ring is None and params is None:
        return REGISTRY[name].builder()
    if name == "zp2_dual":
        return zp2_dual(int((params or (2,))[0]))
    ring_only = {
        "square_zero_3vars": square_zero_3vars,
        "rank4_deg3": rank4_deg3,
        "dual_numbers_char2": dual_numbers_char2,
        "mat2": mat2,
        "upper_tri": upper_tri,
    }
    parametrized = {"nc_uv": nc_uv, "c_abcd": c_abcd, "glued_degree": glued_degree}
    if ring is None:
        raise LowRankError(f"corpus entry {name!r} needs a ring")
    if name in ring_only:
        return ring_only[name](ring)
    if name in parametrized:
        parsed = tuple(ring.elem_from_json(p) for p in (params or ()))
        return parametrized[name](ring, *parsed)
    raise LowRankError(f"corpus entry {name!r} takes no parameters")
