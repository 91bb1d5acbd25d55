"""Exceptional rings: construction, recognition, and their characteristic
polynomial identities.

An exceptional ring splits as R + M with M a left ideal on which left
multiplication factors through a linear functional t, so x y = t(x) y for
x, y in M.  Recognition searches for the multiplicative projection pi onto
the R summand: pi of each basis element must be a root of its reduced
quadratic, which bounds the search by quadratic root finding over the base
ring, and every surviving candidate is certified on the explicit kernel
basis f_i = e_i - pi(e_i).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import isqrt

from .algebra import StructureAlgebra, validate
from .errors import InternalCheckError, LowRankError, UnsupportedRingError
from .involution import StandardInvolution, find_standard_involution
from .polynomials import MonicPolynomial, poly_sqrt
from .rings import (
    QQ,
    ZZ,
    PolynomialRing,
    PrimeField,
    ResidueRing,
    Ring,
)

_ENUMERATION_BOUND = 1 << 16


@dataclass(frozen=True)
class ExceptionalData:
    """A certified splitting B = R + M with its trace functional.

    ``basis_change`` rows are 1, f_1, ..., f_{n-1} in the input coordinates;
    the f_i span M and satisfy f_i f_j = t_i f_j.
    """

    algebra: StructureAlgebra
    pi: tuple  # the multiplicative functional on the input basis
    t_vector: tuple  # t(f_1) .. t(f_{n-1})
    basis_change: tuple

    def m_basis(self):
        return [self.basis_change[i] for i in range(1, self.algebra.rank)]

    def pi_of(self, x):
        R = self.algebra.ring
        acc = R.zero
        for p, c in zip(self.pi, x):
            acc = R.add(acc, R.mul(p, c))
        return acc

    def contains_in_m(self, x) -> bool:
        return self.algebra.ring.is_zero(self.pi_of(x))

    def to_json(self):
        R = self.algebra.ring
        return {
            "pi": [R.elem_to_json(c) for c in self.pi],
            "t": [R.elem_to_json(c) for c in self.t_vector],
            "basis_change": [
                [R.elem_to_json(c) for c in row] for row in self.basis_change
            ],
        }


def make_exceptional(ring: Ring, n: int, t_vector):
    """The rank-n algebra R + M with m_i m_j = t_i m_j, plus its data."""
    if n < 1:
        raise LowRankError("rank must be at least 1")
    t_vector = tuple(ring.canon(c) for c in t_vector)
    if len(t_vector) != n - 1:
        raise LowRankError(f"t-vector must have length {n - 1}")
    table = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == 0:
                cell = [ring.one if k == j else ring.zero for k in range(n)]
            elif j == 0:
                cell = [ring.one if k == i else ring.zero for k in range(n)]
            else:
                cell = [
                    t_vector[i - 1] if k == j else ring.zero for k in range(n)
                ]
            table[i][j] = cell
    B = validate(ring, table)
    identity = tuple(
        tuple(ring.one if a == b else ring.zero for b in range(n)) for a in range(n)
    )
    pi = tuple(ring.one if i == 0 else ring.zero for i in range(n))
    data = ExceptionalData(B, pi, t_vector, identity)
    if find_standard_involution(B) is None:
        raise InternalCheckError("exceptional construction lost its involution")
    return B, data


# -- quadratic root finding over each supported ring -------------------------


def quadratic_roots(ring: Ring, t, n):
    """All roots in the ring of T^2 - t T + n, exactly."""
    t = ring.canon(t)
    n = ring.canon(n)
    if ring.is_finite:
        if ring.size > _ENUMERATION_BOUND:
            raise UnsupportedRingError(
                f"quadratic roots over {ring} exceed the enumeration bound"
            )
        return [
            r
            for r in ring.enumerate_elements()
            if ring.is_zero(ring.add(ring.sub(ring.mul(r, r), ring.mul(t, r)), n))
        ]
    if ring == ZZ:
        disc = t * t - 4 * n
        if disc < 0:
            return []
        s = isqrt(disc)
        if s * s != disc:
            return []
        roots = []
        for sign in (s, -s):
            if (t + sign) % 2 == 0:
                r = (t + sign) // 2
                if r not in roots:
                    roots.append(r)
        return roots
    if ring == QQ:
        disc = t * t - 4 * n
        if disc < 0:
            return []
        np_, dp_ = disc.numerator, disc.denominator
        rn, rd = isqrt(np_), isqrt(dp_)
        if rn * rn != np_ or rd * rd != dp_:
            return []
        s = Fraction(rn, rd)
        return sorted({(t + s) / 2, (t - s) / 2})
    if isinstance(ring, PolynomialRing):
        return _quadratic_roots_poly(ring, t, n)
    raise UnsupportedRingError(f"no quadratic root finder over {ring}")


def _quadratic_roots_poly(PR: PolynomialRing, t, n):
    if PR.characteristic != 2:
        disc = PR.sub(PR.mul(t, t), PR.mul(PR.from_int(4), n))
        s = poly_sqrt(PR, disc)
        if s is None:
            return []
        half = PR.inv(PR.from_int(2))
        roots = [PR.mul(half, PR.add(t, s))]
        other = PR.mul(half, PR.sub(t, s))
        if other not in roots:
            roots.append(other)
        return _verified_roots(PR, t, n, roots)
    # characteristic 2: T^2 + t T + n
    if PR.is_zero(t):
        s = poly_sqrt(PR, n)
        return [] if s is None else _verified_roots(PR, t, n, [s])
    t2 = PR.mul(t, t)
    w, rem = PR.quo_rem(n, t2)
    if not PR.is_zero(rem):
        return []
    u = _artin_schreier_solve(PR, w)
    if u is None:
        return []
    r1 = PR.mul(t, u)
    r2 = PR.add(r1, t)
    return _verified_roots(PR, t, n, [r1] if r1 == r2 else [r1, r2])


def _verified_roots(ring, t, n, roots):
    out = []
    for r in roots:
        val = ring.add(ring.sub(ring.mul(r, r), ring.mul(t, r)), n)
        if not ring.is_zero(val):
            raise InternalCheckError("quadratic root verification failed")
        if r not in out:
            out.append(r)
    return out


def _artin_schreier_solve(PR: PolynomialRing, w):
    """Solve u^2 + u = w over F_2[t] by F_2-linear algebra on coefficients."""
    from .linalg import solve

    K = PR.coeff
    d = PR.degree(w) if w else 0
    bound = max(d, 0)
    rows = []
    rhs = []
    for m in range(2 * bound + 1):
        row = [K.zero] * (bound + 1)
        if m % 2 == 0 and m // 2 <= bound:
            row[m // 2] = K.add(row[m // 2], K.one)
        if m <= bound:
            row[m] = K.add(row[m], K.one)
        rows.append(row)
        rhs.append(w[m] if m < len(w) else K.zero)
    sol = solve(K, rows, rhs)
    if sol is None:
        return None
    return PR.canon(tuple(sol))


# -- recognition --------------------------------------------------------------


def recognize_exceptional(B: StructureAlgebra):
    """All certified splittings of B as an exceptional ring.

    Empty when B is not exceptional.  Rank 2 can return the two conjugate
    splittings; for rank above 2 the splitting is unique and a second
    candidate raises an internal error.
    """
    inv = find_standard_involution(B)
    if inv is None:
        return []
    R = B.ring
    n = B.rank
    if n == 1:
        return [ExceptionalData(B, (R.one,), (), ((R.one,),))]
    root_sets = []
    for i in range(1, n):
        ei = B.basis_element(i)
        roots = quadratic_roots(R, inv.trd(ei), inv.nrd(ei))
        if not roots:
            return []
        root_sets.append(roots)
    results = []
    seen = set()
    for combo in product(*root_sets):
        pi = (R.one,) + tuple(combo)
        if pi in seen:
            continue
        if not _pi_is_multiplicative(B, pi):
            continue
        data = _certify_splitting(B, inv, pi)
        if data is not None:
            seen.add(pi)
            results.append(data)
    if n > 2 and len(results) > 1:
        raise InternalCheckError("splitting of a rank > 2 exceptional ring is not unique")
    return results


def _pi_is_multiplicative(B: StructureAlgebra, pi) -> bool:
    R = B.ring
    n = B.rank
    for i in range(n):
        for j in range(n):
            acc = R.zero
            for k in range(n):
                c = B.table[i][j][k]
                if not R.is_zero(c):
                    acc = R.add(acc, R.mul(c, pi[k]))
            if acc != R.mul(pi[i], pi[j]):
                return False
    return True


def _certify_splitting(B: StructureAlgebra, inv: StandardInvolution, pi):
    R = B.ring
    n = B.rank
    fs = [
        B.sub(B.basis_element(i), B.from_scalar(pi[i])) for i in range(1, n)
    ]
    ts = [inv.trd(f) for f in fs]
    for a, fa in enumerate(fs):
        for fb in fs:
            if B.mul(fa, fb) != B.scalar_mul(ts[a], fb):
                return None
    change = (tuple(B.one()),) + tuple(tuple(f) for f in fs)
    from .linalg import invert_matrix

    if invert_matrix(R, [list(r) for r in change]) is None:
        raise InternalCheckError("splitting basis change is not invertible")
    return ExceptionalData(B, tuple(pi), tuple(ts), change)


def exceptional_charpoly_identities(
    B: StructureAlgebra, data: ExceptionalData, x
) -> bool:
    """Exact comparison of the characteristic, minimal, and trace identities
    for an element of the distinguished ideal M."""
    x = B.element(x)
    if not data.contains_in_m(x):
        raise LowRankError("element does not lie in the distinguished ideal")
    inv = find_standard_involution(B)
    if inv is None:
        raise InternalCheckError("exceptional ring without involution")
    R = B.ring
    n = B.rank
    trdx = inv.trd(x)
    T = MonicPolynomial.make(R, [R.zero])  # T
    T_minus = MonicPolynomial.linear(R, trdx)
    expected_left = T.mul(T_minus.pow(n - 1))
    expected_right = T.pow(n - 1).mul(T_minus)
    chi_l = B.char_poly_left(x)
    chi_r = B.char_poly_right(x)
    mu_ok = R.is_zero(inv.nrd(x))
    trace_ok = B.trace_left(x) == R.mul(R.from_int(n - 1), trdx)
    factored_ok = True
    if n >= 2:
        factored_ok = chi_l == T.mul(T_minus).mul(T_minus.pow(n - 2))
    return (
        chi_l == expected_left
        and chi_r == expected_right
        and mu_ok
        and trace_ok
        and factored_ok
    )
