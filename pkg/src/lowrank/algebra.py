"""Structure-constant algebras: validation, element arithmetic, regular
representations, characteristic polynomials, and base change.

An algebra of rank n over a base ring is stored as the n*n*n tensor
``table`` with ``table[i][j][k]`` the coefficient of basis vector e_k in the
product e_i * e_j.  Validation certifies the two-sided unit law (with basis
vector 0 acting as 1, re-basing if the identity exists but is not a basis
vector) and associativity on all n^3 triples.  Elements are coordinate
tuples; all values are immutable after validation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .errors import (
    AlgebraFormatError,
    InternalCheckError,
    NoUnitError,
    NotAssociativeError,
    UnsupportedRingError,
)
from .polynomials import MonicPolynomial
from .rings import (
    QQ,
    ZZ,
    PolynomialRing,
    PrimeField,
    ResidueRing,
    Ring,
    ring_from_descriptor,
)

MAX_RANK = 8


@dataclass(frozen=True)
class StructureAlgebra:
    ring: Ring
    rank: int
    table: tuple  # table[i][j] is the coordinate tuple of e_i * e_j
    basis_names: tuple
    input_basis_change: tuple | None = field(default=None, compare=False)

    # -- elements ----------------------------------------------------

    def zero(self):
        return (self.ring.zero,) * self.rank

    def one(self):
        return tuple(
            self.ring.one if i == 0 else self.ring.zero for i in range(self.rank)
        )

    def basis_element(self, i: int):
        return tuple(
            self.ring.one if j == i else self.ring.zero for j in range(self.rank)
        )

    def from_scalar(self, r):
        r = self.ring.canon(r)
        return tuple(r if i == 0 else self.ring.zero for i in range(self.rank))

    def element(self, coords):
        coords = tuple(self.ring.canon(c) for c in coords)
        if len(coords) != self.rank:
            raise ValueError(f"element needs {self.rank} coordinates")
        return coords

    def add(self, x, y):
        return tuple(self.ring.add(a, b) for a, b in zip(x, y))

    def sub(self, x, y):
        return tuple(self.ring.sub(a, b) for a, b in zip(x, y))

    def neg(self, x):
        return tuple(self.ring.neg(a) for a in x)

    def scalar_mul(self, r, x):
        r = self.ring.canon(r)
        return tuple(self.ring.mul(r, a) for a in x)

    def mul(self, x, y):
        R = self.ring
        out = [R.zero] * self.rank
        for i, xi in enumerate(x):
            if R.is_zero(xi):
                continue
            for j, yj in enumerate(y):
                if R.is_zero(yj):
                    continue
                c = R.mul(xi, yj)
                for k, t in enumerate(self.table[i][j]):
                    if not R.is_zero(t):
                        out[k] = R.add(out[k], R.mul(c, t))
        return tuple(out)

    def is_zero_element(self, x) -> bool:
        return all(self.ring.is_zero(c) for c in x)

    # -- regular representation ---------------------------------------

    def left_mul_matrix(self, x):
        """Matrix of y -> x*y; column j is the coordinate vector of x*e_j."""
        cols = [self.mul(x, self.basis_element(j)) for j in range(self.rank)]
        return [[cols[j][i] for j in range(self.rank)] for i in range(self.rank)]

    def right_mul_matrix(self, x):
        cols = [self.mul(self.basis_element(j), x) for j in range(self.rank)]
        return [[cols[j][i] for j in range(self.rank)] for i in range(self.rank)]

    def trace_left(self, x):
        M = self.left_mul_matrix(x)
        acc = self.ring.zero
        for i in range(self.rank):
            acc = self.ring.add(acc, M[i][i])
        return acc

    def char_poly_left(self, x) -> MonicPolynomial:
        return self._char_poly(self.left_mul_matrix(x), x)

    def char_poly_right(self, x) -> MonicPolynomial:
        return self._char_poly(self.right_mul_matrix(x), x)

    def _char_poly(self, M, x) -> MonicPolynomial:
        chi = MonicPolynomial.from_full(self.ring, linalg.char_poly(self.ring, M))
        if not self.is_zero_element(chi.eval_in(self, x)):
            raise InternalCheckError("characteristic polynomial does not annihilate")
        return chi

    # -- commutativity -------------------------------------------------

    def commutator_witness(self):
        """None if commutative, else the first basis pair (i, j) with
        e_i e_j != e_j e_i."""
        for i in range(1, self.rank):
            for j in range(i + 1, self.rank):
                if self.table[i][j] != self.table[j][i]:
                    return (i, j)
        return None

    @property
    def is_commutative(self) -> bool:
        return self.commutator_witness() is None

    # -- serialization --------------------------------------------------

    def to_json(self) -> dict:
        R = self.ring
        return {
            "ring": R.descriptor(),
            "rank": self.rank,
            "basis": list(self.basis_names),
            "table": [
                [[R.elem_to_json(c) for c in cell] for cell in row]
                for row in self.table
            ],
        }

    def element_to_json(self, x):
        return [self.ring.elem_to_json(c) for c in x]

    def element_from_json(self, obj):
        if not isinstance(obj, list) or len(obj) != self.rank:
            raise AlgebraFormatError("element must be a coordinate array")
        return tuple(self.ring.elem_from_json(c) for c in obj)

    def __repr__(self):
        return f"StructureAlgebra(rank {self.rank} over {self.ring})"


def _default_names(rank: int):
    if rank == 1:
        return ("1",)
    if rank == 2:
        return ("1", "x")
    if rank == 3:
        return ("1", "i", "j")
    return ("1",) + tuple(f"x{i}" for i in range(1, rank))


def transport_table(ring: Ring, table, P, Q):
    """Structure table with respect to the new basis f_a = sum_i P[a][i] e_i.

    Q must be the inverse of P (e_k = sum_c Q[k][c] f_c).
    """
    n = len(table)
    out = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            # product f_a * f_b in the old coordinates
            prod = [ring.zero] * n
            for i in range(n):
                pai = P[a][i]
                if ring.is_zero(pai):
                    continue
                for j in range(n):
                    pbj = P[b][j]
                    if ring.is_zero(pbj):
                        continue
                    c = ring.mul(pai, pbj)
                    for k in range(n):
                        t = table[i][j][k]
                        if not ring.is_zero(t):
                            prod[k] = ring.add(prod[k], ring.mul(c, t))
            # re-express in the new basis
            newc = [ring.zero] * n
            for k in range(n):
                if ring.is_zero(prod[k]):
                    continue
                for c in range(n):
                    q = Q[k][c]
                    if not ring.is_zero(q):
                        newc[c] = ring.add(newc[c], ring.mul(prod[k], q))
            out[a][b] = tuple(newc)
    return tuple(tuple(row) for row in out)


def _find_identity(ring: Ring, table, n):
    """Coordinates of a two-sided identity, or None."""
    # e * e_j = e_j and e_j * e = e_j, unknowns the n coordinates of e
    rows, rhs = [], []
    for j in range(n):
        for k in range(n):
            rows.append([table[i][j][k] for i in range(n)])  # left action
            rhs.append(ring.one if k == j else ring.zero)
            rows.append([table[j][i][k] for i in range(n)])  # right action
            rhs.append(ring.one if k == j else ring.zero)
    return linalg.solve(ring, rows, rhs)


def _complete_to_basis(ring: Ring, c):
    """An invertible matrix whose first row is the unimodular vector c."""
    n = len(c)
    unit_at = next((i for i, v in enumerate(c) if ring.is_unit(v)), None)
    if unit_at is not None:
        P = [list(c)]
        for i in range(n):
            if i != unit_at:
                P.append([ring.one if j == i else ring.zero for j in range(n)])
        return P
    if not ring.is_euclidean or ring.is_field:
        raise NoUnitError("identity coordinates cannot be completed to a basis")
    # euclidean domain: column-reduce c to (g, 0, ..., 0) and invert
    D, _, T = linalg.smith_normal_form(ring, [list(c)])
    g = D[0][0]
    if not ring.is_unit(g):
        raise InternalCheckError("identity coordinates are not unimodular")
    ginv = ring.inv(g)
    U = [[ring.mul(v, ginv) if j == 0 else v for j, v in enumerate(row)] for row in T]
    P = linalg.invert_matrix(ring, U)
    if P is None or [ring.canon(v) for v in P[0]] != [ring.canon(v) for v in c]:
        raise InternalCheckError("basis completion failed")
    return P


def validate(ring: Ring, table, basis_names=None) -> StructureAlgebra:
    """Certify a structure tensor as a unital associative algebra.

    The identity is normalized to basis vector 0; when it exists but is not
    a basis vector, the basis is changed and the change recorded.  Raises
    NoUnitError or NotAssociativeError (with a witness triple) otherwise.
    """
    n = len(table)
    if n == 0:
        raise AlgebraFormatError("rank-0 tables are rejected; the algebra must contain 1")
    if n > MAX_RANK:
        raise UnsupportedRingError(f"rank {n} exceeds the supported bound {MAX_RANK}")
    tab = []
    for row in table:
        if len(row) != n:
            raise AlgebraFormatError("structure tensor must be n*n*n")
        cells = []
        for cell in row:
            if len(cell) != n:
                raise AlgebraFormatError("structure tensor must be n*n*n")
            cells.append(tuple(ring.canon(v) for v in cell))
        tab.append(tuple(cells))
    tab = tuple(tab)

    names = tuple(basis_names) if basis_names else _default_names(n)
    if len(names) != n:
        raise AlgebraFormatError("basis name list has wrong length")

    change = None
    e0 = tuple(ring.one if i == 0 else ring.zero for i in range(n))
    if not _acts_as_identity(ring, tab, 0):
        ident = _find_identity(ring, tab, n)
        if ident is None:
            raise NoUnitError("no identity element solves the unit equations")
        P = _complete_to_basis(ring, [ring.canon(v) for v in ident])
        Q = linalg.invert_matrix(ring, P)
        tab = transport_table(ring, tab, P, Q)
        change = tuple(tuple(v for v in row) for row in P)
        names = _default_names(n)
        if not _acts_as_identity(ring, tab, 0):
            raise InternalCheckError("unit normalization failed")

    alg = StructureAlgebra(ring, n, tab, names, change)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                left = alg.mul(alg.mul(alg.basis_element(i), alg.basis_element(j)),
                               alg.basis_element(k))
                right = alg.mul(alg.basis_element(i),
                                alg.mul(alg.basis_element(j), alg.basis_element(k)))
                if left != right:
                    raise NotAssociativeError((i, j, k))
    return alg


def _acts_as_identity(ring: Ring, tab, idx: int) -> bool:
    n = len(tab)
    for j in range(n):
        ej = tuple(ring.one if k == j else ring.zero for k in range(n))
        if tab[idx][j] != ej or tab[j][idx] != ej:
            return False
    return True


# -- base change ------------------------------------------------------------


@dataclass(frozen=True)
class RingHom:
    """One of the supported base-change homomorphisms, applied entrywise."""

    src: Ring
    dst: Ring
    name: str
    _fn: object = field(compare=False)

    def __call__(self, x):
        return self.dst.canon(self._fn(self.src.canon(x)))


def hom_identity(R: Ring) -> RingHom:
    return RingHom(R, R, f"id_{R.kind}", lambda x: x)


def hom_Z_to_Q() -> RingHom:
    from fractions import Fraction

    return RingHom(ZZ, QQ, "Z->Q", Fraction)


def hom_Z_to_Fp(p: int) -> RingHom:
    F = PrimeField(p)
    return RingHom(ZZ, F, f"Z->F{p}", lambda x: x % p)


def hom_Z_to_Zmod(p: int, k: int) -> RingHom:
    R = ResidueRing(p, k)
    return RingHom(ZZ, R, f"Z->Z/{p}^{k}", lambda x: x % R.modulus)


def hom_Zmod_reduce(p: int, k: int, j: int) -> RingHom:
    if j > k:
        raise UnsupportedRingError("can only reduce Z/p^k to Z/p^j with j <= k")
    src = ResidueRing(p, k)
    dst = PrimeField(p) if j == 1 else ResidueRing(p, j)
    return RingHom(src, dst, f"Z/{p}^{k}->Z/{p}^{j}", lambda x: x % p**j)


def hom_poly_eval(PR: PolynomialRing, point) -> RingHom:
    point = PR.coeff.canon(point)

    def ev(f):
        acc = PR.coeff.zero
        for c in reversed(f):
            acc = PR.coeff.add(PR.coeff.mul(acc, point), c)
        return acc

    return RingHom(PR, PR.coeff, f"{PR.kind}->eval(t={point})", ev)


def base_change(B: StructureAlgebra, hom: RingHom) -> StructureAlgebra:
    """Apply a supported homomorphism to the structure tensor and revalidate."""
    if hom.src != B.ring:
        raise UnsupportedRingError(
            f"homomorphism {hom.name} does not start at {B.ring}"
        )
    new_table = [
        [[hom(c) for c in cell] for cell in row] for row in B.table
    ]
    return validate(hom.dst, new_table, B.basis_names)


# -- JSON -------------------------------------------------------------------


def algebra_from_json(obj) -> StructureAlgebra:
    if not isinstance(obj, dict):
        raise AlgebraFormatError("algebra JSON must be an object")
    try:
        ring = ring_from_descriptor(obj["ring"])
        rank = int(obj["rank"])
        table_json = obj["table"]
        names = obj.get("basis")
    except (KeyError, TypeError, ValueError) as exc:
        raise AlgebraFormatError(f"bad algebra JSON: {exc}") from exc
    if not isinstance(table_json, list) or len(table_json) != rank:
        raise AlgebraFormatError("table does not match the declared rank")
    table = []
    for row in table_json:
        if not isinstance(row, list) or len(row) != rank:
            raise AlgebraFormatError("table does not match the declared rank")
        cells = []
        for cell in row:
            if not isinstance(cell, list) or len(cell) != rank:
                raise AlgebraFormatError("table does not match the declared rank")
            cells.append([ring.elem_from_json(c) for c in cell])
        table.append(cells)
    return validate(ring, table, names)
