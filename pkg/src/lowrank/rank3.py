"""Rank-3 machinery: good bases, the GL2 orbit of (u, v), isomorphism
testing, the square-zero radical element, the right-multiplication
embedding, and exhaustive censuses over small finite rings.

Every rank-3 algebra with a standard involution over a supported ring
splits off its trace-zero ideal, and any basis i, j of that ideal obeys

    i^2 = u i    i j = u j
    j^2 = v j    j i = v i

with u, v the reduced traces of i, j.  Changing the good basis acts on
(u, v) through GL2, so the canonical form of that orbit classifies the
algebra; the censuses verify the classification against brute-force
basis-change search.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product

from . import linalg
from .algebra import StructureAlgebra, transport_table, validate
from .errors import (
    InternalCheckError,
    LowRankError,
    SearchSpaceExceededError,
    UnsupportedRingError,
)
from .exceptional import make_exceptional, recognize_exceptional
from .involution import StandardInvolution, find_standard_involution
from .rings import PolynomialRing, ResidueRing, Ring, ext_gcd

DEFAULT_CENSUS_LIMIT = 1 << 24
CENSUS_LIMIT_ENV = "LOWRANK_LIMIT"


def nc_table(ring: Ring, u, v):
    """The good-basis structure table for the pair (u, v)."""
    u, v = ring.canon(u), ring.canon(v)
    z, one = ring.zero, ring.one
    return (
        ((one, z, z), (z, one, z), (z, z, one)),
        ((z, one, z), (z, u, z), (z, z, u)),
        ((z, z, one), (z, v, z), (z, z, v)),
    )


def nc_algebra(ring: Ring, u, v) -> StructureAlgebra:
    return validate(ring, nc_table(ring, u, v), ("1", "i", "j"))


@dataclass(frozen=True)
class GoodBasisForm:
    """A change of basis to 1, i, j realizing the scaled multiplication laws,
    together with the pair (u, v) = (trd(i), trd(j))."""

    algebra: StructureAlgebra
    change: tuple  # rows are 1, i, j in the input coordinates
    u: object
    v: object

    @property
    def nc(self) -> StructureAlgebra:
        return nc_algebra(self.algebra.ring, self.u, self.v)

    def to_json(self):
        R = self.algebra.ring
        return {
            "u": R.elem_to_json(self.u),
            "v": R.elem_to_json(self.v),
            "basis_change": [[R.elem_to_json(c) for c in row] for row in self.change],
        }


def normalize_rank3(B: StructureAlgebra, inv: StandardInvolution) -> GoodBasisForm:
    """Good-basis form of a rank-3 algebra with standard involution.

    Recognition cannot fail over a supported ring; a failure is reported as
    an internal inconsistency carrying the offending algebra.
    """
    if B.rank != 3:
        raise LowRankError("good bases exist for rank-3 algebras only")
    if inv.algebra != B:
        raise LowRankError("involution belongs to a different algebra")
    splittings = recognize_exceptional(B)
    if not splittings:
        raise InternalCheckError(
            f"rank-3 algebra with involution failed recognition: {B.to_json()}"
        )
    data = splittings[0]
    u, v = data.t_vector
    P = [list(row) for row in data.basis_change]
    Q = linalg.invert_matrix(B.ring, P)
    transported = transport_table(B.ring, B.table, P, Q)
    if transported != nc_table(B.ring, u, v):
        raise InternalCheckError("splitting basis does not realize the good-basis laws")
    return GoodBasisForm(B, data.basis_change, u, v)


# -- orbits of (u, v) under GL2 ----------------------------------------------


def gl2_reduce(ring: Ring, u, v):
    """(E, g) with E in GL2(R), E (u, v)^T = (g, 0)^T, g canonical.

    Extended gcd over the euclidean domains and fields; over Z/p^k the pair
    is p^m times a unimodular vector, which is completed directly.
    """
    u, v = ring.canon(u), ring.canon(v)
    one, zero = ring.one, ring.zero
    if ring.is_zero(u) and ring.is_zero(v):
        return [[one, zero], [zero, one]], zero
    if isinstance(ring, ResidueRing):
        m = min(ring.valuation(u), ring.valuation(v))
        g = ring.p**m % ring.modulus
        alpha, beta = ring.canon(u // ring.p**m), ring.canon(v // ring.p**m)
        if ring.is_unit(alpha):
            row1 = [ring.inv(alpha), zero]
        else:
            row1 = [zero, ring.inv(beta)]
        E = [row1, [ring.neg(beta), alpha]]
    else:
        g, x, y = ext_gcd(ring, u, v)
        qu, ru = ring.quo_rem(u, g)
        qv, rv = ring.quo_rem(v, g)
        if not (ring.is_zero(ru) and ring.is_zero(rv)):
            raise InternalCheckError("gcd does not divide the pair")
        E = [[x, y], [ring.neg(qv), qu]]
    got = linalg.mat_vec(ring, E, [u, v])
    if got != [g, zero] or not ring.is_unit(linalg.determinant(ring, E)):
        raise InternalCheckError("GL2 reduction failed")
    return E, g


@dataclass(frozen=True)
class OrbitInvariant:
    """Canonical form of the GL2(R)-orbit of (u, v): the canonical generator
    of the ideal (u, v), paired with zero."""

    ring: Ring
    generator: object

    @property
    def pair(self):
        return (self.generator, self.ring.zero)

    @property
    def label(self) -> str:
        R = self.ring
        if R.is_field:
            return "zero" if R.is_zero(self.generator) else "nonzero"
        if isinstance(R, ResidueRing):
            return f"p-valuation {R.valuation(self.generator)}"
        return f"ideal ({R.elem_str(self.generator)})"

    def sort_key(self):
        R = self.ring
        if isinstance(R, ResidueRing):
            return (R.valuation(self.generator),)
        return (0 if R.is_zero(self.generator) else 1, str(self.generator))


def orbit_invariant(ring: Ring, u, v) -> OrbitInvariant:
    _, g = gl2_reduce(ring, u, v)
    return OrbitInvariant(ring, g)


def _lift_gl2(ring: Ring, E):
    one, zero = ring.one, ring.zero
    return [
        [one, zero, zero],
        [zero, E[0][0], E[0][1]],
        [zero, E[1][0], E[1][1]],
    ]


def iso_test(B1: StructureAlgebra, B2: StructureAlgebra):
    """An explicit isomorphism matrix between two rank-3 algebras with
    standard involution, or None when the orbit invariants differ.

    The returned matrix rows express the image basis: transporting the first
    table through it reproduces the second exactly (verified).
    """
    if B1.ring != B2.ring:
        raise LowRankError("isomorphism testing needs a common base ring")
    inv1 = find_standard_involution(B1)
    inv2 = find_standard_involution(B2)
    if inv1 is None or inv2 is None:
        raise LowRankError("isomorphism testing requires standard involutions")
    ring = B1.ring
    f1 = normalize_rank3(B1, inv1)
    f2 = normalize_rank3(B2, inv2)
    E1, g1 = gl2_reduce(ring, f1.u, f1.v)
    E2, g2 = gl2_reduce(ring, f2.u, f2.v)
    if g1 != g2:
        return None
    # B1 -> (g, 0) form via lift(E1) after the good-basis change, then back
    M1 = linalg.mat_mul(ring, _lift_gl2(ring, E1), [list(r) for r in f1.change])
    M2 = linalg.mat_mul(ring, _lift_gl2(ring, E2), [list(r) for r in f2.change])
    T = linalg.mat_mul(ring, linalg.invert_matrix(ring, M2), M1)
    Tinv = linalg.invert_matrix(ring, T)
    if transport_table(ring, B1.table, T, Tinv) != B2.table:
        raise InternalCheckError("isomorphism verification failed")
    return tuple(tuple(row) for row in T)


# -- distinguished elements ---------------------------------------------------


def jacobson_element(form: GoodBasisForm):
    """k = v i - u j in good-basis coordinates; k^2 = 0, k i = k j = 0,
    i k = u k, j k = v k, all verified exactly."""
    ring = form.algebra.ring
    nc = form.nc
    k = (ring.zero, ring.canon(form.v), ring.neg(form.u))
    i = nc.basis_element(1)
    j = nc.basis_element(2)
    checks = [
        (nc.mul(k, k), nc.zero()),
        (nc.mul(k, i), nc.zero()),
        (nc.mul(k, j), nc.zero()),
        (nc.mul(i, k), nc.scalar_mul(form.u, k)),
        (nc.mul(j, k), nc.scalar_mul(form.v, k)),
    ]
    for got, want in checks:
        if got != want:
            raise InternalCheckError("radical element identities failed")
    return k


def annihilator_generator(ring: Ring, u, v):
    """Generator of ann_R(u, v)."""
    if ring.is_domain:
        both_zero = ring.is_zero(u) and ring.is_zero(v)
        return ring.one if both_zero else ring.zero
    if isinstance(ring, ResidueRing):
        m = min(ring.valuation(u), ring.valuation(v))
        return ring.canon(ring.p ** (ring.k - m)) if m else ring.zero
    raise UnsupportedRingError(f"no annihilator computation over {ring}")


@dataclass(frozen=True)
class RightEmbedding:
    """Right multiplication on the trace-zero ideal in a good basis, acting
    on row vectors; injective exactly when ann(u, v) = 0."""

    mat_i: tuple
    mat_j: tuple
    injective: bool
    annihilator: object  # generator of ann_R(u, v)
    radical: tuple  # the square-zero element spanning the annihilated line


def right_regular_embedding(form: GoodBasisForm) -> RightEmbedding:
    ring = form.algebra.ring
    u, v, z = form.u, form.v, ring.zero
    mat_i = ((u, z), (v, z))
    mat_j = ((z, u), (z, v))
    nc = form.nc
    for col, mat in ((1, mat_i), (2, mat_j)):
        for r in (1, 2):
            got = nc.mul(nc.basis_element(r), nc.basis_element(col))
            want_row = mat[r - 1]
            if got != (z, want_row[0], want_row[1]):
                raise InternalCheckError("right multiplication matrices are wrong")
    ann = annihilator_generator(ring, u, v)
    return RightEmbedding(
        mat_i, mat_j, ring.is_zero(ann), ann, jacobson_element(form)
    )


# -- censuses -----------------------------------------------------------------


@dataclass(frozen=True)
class CensusRow:
    invariant: object  # OrbitInvariant for rank 3, a canonical key for rank 2
    count: int
    representative: StructureAlgebra
    exceptional: bool

    def to_json(self):
        inv = self.invariant
        return {
            "invariant": inv.label if isinstance(inv, OrbitInvariant) else str(inv),
            "count": self.count,
            "representative": self.representative.to_json(),
            "exceptional": self.exceptional,
        }


@dataclass(frozen=True)
class CensusResult:
    ring: Ring
    rank: int
    total_tables: int
    associative_count: int
    involution_count: int
    rows: tuple
    groupings_agree: bool

    def to_json(self):
        return {
            "ring": self.ring.descriptor(),
            "rank": self.rank,
            "total_tables": self.total_tables,
            "associative": self.associative_count,
            "with_involution": self.involution_count,
            "classes": [row.to_json() for row in self.rows],
            "groupings_agree": self.groupings_agree,
        }


def census_limit(limit=None) -> int:
    if limit is not None:
        return int(limit)
    env = os.environ.get(CENSUS_LIMIT_ENV)
    return int(env) if env else DEFAULT_CENSUS_LIMIT


def _unit_group_generators(ring: Ring):
    """A small generating set of the unit group, by greedy closure."""
    units = [x for x in ring.enumerate_elements() if ring.is_unit(x)]
    gens = []
    closure = {ring.one}
    for u in units:
        if u in closure:
            continue
        gens.append(u)
        frontier = [u]
        while frontier:
            x = frontier.pop()
            for known in list(closure):
                y = ring.mul(x, known)
                if y not in closure:
                    closure.add(y)
                    frontier.append(y)
        if len(closure) == len(units):
            break
    return gens


def basis_change_generators(ring: Ring, rank: int):
    """Generators of the invertible basis changes fixing the unit vector."""
    one, zero = ring.one, ring.zero
    if rank == 2:
        gens = [[[one, zero], [one, one]]]
        for g in _unit_group_generators(ring):
            gens.append([[one, zero], [zero, g]])
        return gens
    if rank == 3:
        gens = [
            [[one, zero, zero], [one, one, zero], [zero, zero, one]],
            [[one, zero, zero], [zero, one, zero], [one, zero, one]],
            [[one, zero, zero], [zero, one, one], [zero, zero, one]],
            [[one, zero, zero], [zero, one, zero], [zero, one, one]],
            [[one, zero, zero], [zero, zero, one], [zero, one, zero]],
        ]
        for g in _unit_group_generators(ring):
            gens.append([[one, zero, zero], [zero, g, zero], [zero, zero, one]])
        return gens
    raise LowRankError("basis-change generators are provided for rank 2 and 3")


def _associative_tables_rank3(ring: Ring, limit: int):
    """All associative unital rank-3 structure tables over a finite ring,
    by vectorized sieving over the 12 free entries followed by exact
    validation of the survivors."""
    import numpy as np

    m = ring.size
    space = m**12
    if space > limit:
        raise SearchSpaceExceededError(
            f"census space {m}^12 = {space} exceeds the bound {limit}"
        )
    survivors = []
    chunk = 1 << 19
    for start in range(0, space, chunk):
        idx = np.arange(start, min(start + chunk, space), dtype=np.int64)
        cols = [((idx // m**e) % m).astype(np.int32) for e in range(12)]

        def entry(a, b, k):
            return cols[((a - 1) * 2 + (b - 1)) * 3 + k]

        keep = np.ones(idx.shape, dtype=bool)
        for a in (1, 2):
            for b in (1, 2):
                for c in (1, 2):
                    for d in range(3):
                        lhs = entry(a, b, 1) * entry(1, c, d) + entry(a, b, 2) * entry(2, c, d)
                        if c == d:
                            lhs = lhs + entry(a, b, 0)
                        rhs = entry(b, c, 1) * entry(a, 1, d) + entry(b, c, 2) * entry(a, 2, d)
                        if a == d:
                            rhs = rhs + entry(b, c, 0)
                        keep &= (lhs - rhs) % m == 0
                    if not keep.all():
                        idx = idx[keep]
                        cols = [col[keep] for col in cols]
                        keep = np.ones(idx.shape, dtype=bool)
                    if idx.shape[0] == 0:
                        break
                if idx.shape[0] == 0:
                    break
            if idx.shape[0] == 0:
                break
        survivors.extend(int(v) for v in idx)
    tables = []
    for code in survivors:
        digits = [(code // m**e) % m for e in range(12)]
        tables.append(_table_from_digits(ring, digits))
    return space, tables


def _table_from_digits(ring: Ring, digits):
    z, one = ring.zero, ring.one
    def unit_row(j):
        return tuple(one if k == j else z for k in range(3))

    cells = {}
    for a in (1, 2):
        for b in (1, 2):
            base = ((a - 1) * 2 + (b - 1)) * 3
            cells[(a, b)] = tuple(ring.canon(int(digits[base + k])) for k in range(3))
    return (
        (unit_row(0), unit_row(1), unit_row(2)),
        (unit_row(1), cells[(1, 1)], cells[(1, 2)]),
        (unit_row(2), cells[(2, 1)], cells[(2, 2)]),
    )


def _orbit_partition(ring: Ring, tables, rank: int):
    """Partition of the tables into basis-change orbits (union-find driven
    by the generator transports, applied in vectorized batches)."""
    import numpy as np

    m = ring.size
    n = rank
    index_of = {}
    arr = np.zeros((len(tables), n, n, n), dtype=np.int64)
    for t_idx, tab in enumerate(tables):
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    arr[t_idx, i, j, k] = tab[i][j][k]
        index_of[arr[t_idx].astype(np.uint8).tobytes()] = t_idx

    parent = list(range(len(tables)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for P in basis_change_generators(ring, n):
        Q = linalg.invert_matrix(ring, P)
        Pn = np.array([[int(v) for v in row] for row in P], dtype=np.int64)
        Qn = np.array([[int(v) for v in row] for row in Q], dtype=np.int64)
        moved = np.einsum("ai,bj,nijk,kc->nabc", Pn, Pn, arr, Qn) % m
        for t_idx in range(len(tables)):
            key = moved[t_idx].astype(np.uint8).tobytes()
            other = index_of.get(key)
            if other is None:
                raise InternalCheckError(
                    "basis change left the associative census set"
                )
            union(t_idx, other)
    groups = {}
    for i in range(len(tables)):
        groups.setdefault(find(i), set()).add(i)
    return list(groups.values())


def census(ring: Ring, rank: int, limit=None) -> CensusResult:
    """Exhaustive census of unital associative structure tables.

    Filters associativity, then the standard involution, then groups the
    involution classes both by the canonical orbit invariant and by
    brute-force basis-change orbits; the groupings must agree.
    """
    if not ring.is_finite:
        raise UnsupportedRingError("census enumeration requires a finite ring")
    if rank not in (2, 3):
        raise SearchSpaceExceededError("census supports rank 2 or 3 only")
    limit = census_limit(limit)
    if rank == 2:
        return _census_rank2(ring, limit)
    space, tables = _associative_tables_rank3(ring, limit)
    algebras = []
    for tab in tables:
        algebras.append(validate(ring, tab))
    with_inv = [(tab, B) for tab, B in zip(tables, algebras)
                if find_standard_involution(B) is not None]
    inv_tables = [tab for tab, _ in with_inv]
    by_invariant = {}
    for tab, B in with_inv:
        form = normalize_rank3(B, find_standard_involution(B))
        key = orbit_invariant(ring, form.u, form.v)
        by_invariant.setdefault(key, []).append(tab)
    orbit_groups = _orbit_partition(ring, inv_tables, 3)
    table_pos = {tab: i for i, tab in enumerate(inv_tables)}
    invariant_groups = [
        frozenset(table_pos[t] for t in tabs) for tabs in by_invariant.values()
    ]
    agree = set(invariant_groups) == {frozenset(g) for g in orbit_groups}
    rows = []
    for key in sorted(by_invariant, key=lambda k: k.sort_key()):
        rep = nc_algebra(ring, *key.pair)
        rows.append(
            CensusRow(key, len(by_invariant[key]), rep, True)
        )
    return CensusResult(
        ring, 3, space, len(tables), len(inv_tables), tuple(rows), agree
    )


def _census_rank2(ring: Ring, limit: int) -> CensusResult:
    space = ring.size**2
    if space > limit:
        raise SearchSpaceExceededError(
            f"census space {space} exceeds the bound {limit}"
        )
    z, one = ring.zero, ring.one
    tables = []
    for n_ in ring.enumerate_elements():
        for t_ in ring.enumerate_elements():
            tables.append((
                ((one, z), (z, one)),
                ((z, one), (n_, t_)),
            ))
    algebras = [validate(ring, tab) for tab in tables]
    for B in algebras:
        if find_standard_involution(B) is None:
            raise InternalCheckError("a quadratic algebra lost its involution")
    orbit_groups = _orbit_partition(ring, tables, 2)
    rows = []
    for group in sorted(orbit_groups, key=lambda g: min(g)):
        rep_idx = min(group)
        rep = algebras[rep_idx]
        key = "table " + ",".join(
            ring.elem_str(c) for c in tables[rep_idx][1][1]
        )
        rows.append(
            CensusRow(key, len(group), rep, bool(recognize_exceptional(rep)))
        )
    return CensusResult(
        ring, 2, space, len(tables), len(tables), tuple(rows), True
    )


def census_c_family(ring: Ring):
    """The complete rank-3 family over a finite local ring, through the
    classical cubic-table parametrization.

    Tables take the form i^2 = -ac + bi - aj, j^2 = -bd + di - cj,
    ij = -ad, ji = r + si + tj.  The full associativity conditions, derived
    symbolically and checked against brute force, are

        a s = a t = d s = d t = 0,    t^2 = b t + a s,
        s^2 = -c s - d t,    b s = s t,    c t = -s t,

    with r determined by r = -a d - b s.  Every rank-3 algebra over a local
    ring is isomorphic to one of these tables, so the family covers every
    isomorphism class without raw-table enumeration.
    """
    if not ring.is_finite:
        raise UnsupportedRingError("the parametrized census requires a finite ring")
    import numpy as np

    m = ring.size
    space = m**6
    idx = np.arange(space, dtype=np.int64)
    digit = [((idx // m**e) % m).astype(np.int64) for e in range(6)]
    a, b, c, d, s, t = digit
    keep = (
        ((a * s) % m == 0)
        & ((a * t) % m == 0)
        & ((d * s) % m == 0)
        & ((d * t) % m == 0)
        & ((t * t - b * t - a * s) % m == 0)
        & ((s * s + c * s + d * t) % m == 0)
        & ((b * s - s * t) % m == 0)
        & ((c * t + s * t) % m == 0)
    )
    out = []
    for code in idx[keep]:
        av, bv, cv, dv, sv, tv = [int((code // m**e) % m) for e in range(6)]
        out.append(c_family_table(ring, av, bv, cv, dv,
                                  ring.canon(-(bv * sv) - (av * dv)), sv, tv))
    return [validate(ring, tab) for tab in out]


def c_family_table(ring: Ring, a, b, c, d, r, s, t):
    """Structure table of the cubic parametrization (no associativity check)."""
    a, b, c, d = (ring.canon(v) for v in (a, b, c, d))
    r, s, t = (ring.canon(v) for v in (r, s, t))
    z, one = ring.zero, ring.one
    neg, mul = ring.neg, ring.mul
    return (
        ((one, z, z), (z, one, z), (z, z, one)),
        (
            (z, one, z),
            (neg(mul(a, c)), b, neg(a)),  # i^2
            (neg(mul(a, d)), z, z),  # ij
        ),
        (
            (z, z, one),
            (r, s, t),  # ji
            (neg(mul(b, d)), d, neg(c)),  # j^2
        ),
    )
