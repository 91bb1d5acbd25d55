"""Element and algebra degree, degree at localizations of Z, and geometric
degree via the graded universal element.

The degree of x is the least d with a monic degree-d relation over the base
ring, decided by exact membership of x^d in the span of lower powers.  The
geometric degree is computed as the degree of xi = sum a_i e_i over the
polynomial ring in the basis coefficients: one exact linear system over the
base ring per candidate degree, with unknowns the coefficients of the
homogeneous companion polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .algebra import StructureAlgebra
from .errors import InternalCheckError, UnsupportedRingError
from .linalg import kernel_is_trivial, solvable_over_fraction_field, solve, solve_local_at
from .polynomials import (
    MonicPolynomial,
    MPolyOps,
    monomials_of_degree,
    monomials_up_to_degree,
    mp_add_term,
    mp_homogeneous_component,
)
from .rings import ZZ


@dataclass(frozen=True)
class DegreeCertificate:
    """Degree of an element, with the minimal polynomial when it is unique.

    ``unique`` is the kernel-triviality of the membership system; the
    minimal polynomial is stored exactly when it is unique (equivalently,
    when the subring generated by the element is free).
    """

    degree: int
    minimal_poly: MonicPolynomial | None
    unique: bool


def element_powers(B: StructureAlgebra, x, up_to: int):
    pows = [B.one()]
    for _ in range(up_to):
        pows.append(B.mul(pows[-1], x))
    return pows


def _membership_system(B: StructureAlgebra, pows, d):
    """Columns 1, x, ..., x^(d-1); right-hand side x^d."""
    A = [[pows[j][k] for j in range(d)] for k in range(B.rank)]
    return A, list(pows[d])


def element_degree(B: StructureAlgebra, x) -> DegreeCertificate:
    x = B.element(x)
    n = B.rank
    pows = element_powers(B, x, n)
    for d in range(1, n + 1):
        A, b = _membership_system(B, pows, d)
        w = solve(B.ring, A, b)
        if w is None:
            continue
        poly = MonicPolynomial.make(B.ring, [B.ring.neg(c) for c in w])
        if not B.is_zero_element(poly.eval_in(B, x)):
            raise InternalCheckError("minimal relation fails to annihilate")
        unique = kernel_is_trivial(B.ring, A)
        return DegreeCertificate(d, poly if unique else None, unique)
    raise InternalCheckError("no monic relation up to the rank; this cannot happen")


def _element_degree_value(B: StructureAlgebra, x, pows=None) -> int:
    """Degree only, with a fast exact path for the quadratic test over
    finite rings (enumerate the trace candidate)."""
    R = B.ring
    n = B.rank
    if all(R.is_zero(c) for c in x[1:]):
        return 1
    if pows is None:
        pows = element_powers(B, x, min(n, 2))
    if n == 2:
        return 2
    x2 = pows[2]
    if R.is_finite:
        if any(_quadratic_span_check(R, x, x2, t) for t in R.enumerate_elements()):
            return 2
    else:
        A, b = _membership_system(B, pows, 2)
        if solve(R, A, b) is not None:
            return 2
    pows = element_powers(B, x, n)
    for d in range(3, n):
        A, b = _membership_system(B, pows, d)
        if solve(R, A, b) is not None:
            return d
    return n


def _quadratic_span_check(R, x, x2, t) -> bool:
    return all(x2[k] == R.mul(t, x[k]) for k in range(1, len(x)))


def element_degree_local(B: StructureAlgebra, x, p: int) -> int:
    """Least degree of a monic relation solvable over Z localized at p."""
    if B.ring != ZZ:
        raise UnsupportedRingError("local degrees are only computed for Z-algebras")
    x = B.element(x)
    n = B.rank
    pows = element_powers(B, x, n)
    for d in range(1, n + 1):
        A, b = _membership_system(B, pows, d)
        if solve_local_at(A, b, p) is not None:
            return d
    raise InternalCheckError("no local relation up to the rank; this cannot happen")


def algebra_degree(B: StructureAlgebra) -> int:
    return algebra_degree_with_method(B)[0]


def algebra_degree_with_method(B: StructureAlgebra):
    """(degree, method): exhaustive maximum over finite rings, the fraction
    field geometric degree over the supported infinite domains.

    Over an infinite field the generic degree is attained at a rational
    point, and over the integrally closed domains here an integral element's
    fraction-field minimal monic has coefficients downstairs; the test suite
    cross-checks this reasoning by large random sampling.
    """
    R = B.ring
    if R.is_finite:
        return _max_degree_finite(B), "exhaustive"
    if R.is_domain:
        return _geometric_degree_value(B, over_fraction_field=True), "fraction-field-gdeg"
    raise UnsupportedRingError(f"algebra degree is not computable over {R}")


def _max_degree_finite(B: StructureAlgebra) -> int:
    """Exhaustive maximum of the element degrees over a finite ring.

    The quadratic membership test is vectorized over all |R|^n elements
    (exact residue arithmetic); only elements of degree above 2 fall back to
    per-element solves, and for rank <= 3 none are needed since the degree
    is capped by the rank.
    """
    import numpy as np

    R = B.ring
    m = R.size
    n = B.rank
    if n == 1:
        return 1
    elems = np.arange(m, dtype=np.int64)
    X = np.stack(np.meshgrid(*([elems] * n), indexing="ij"), axis=-1).reshape(-1, n)
    T = np.array([[list(cell) for cell in row] for row in B.table], dtype=np.int64)
    X2 = np.einsum("ei,ej,ijk->ek", X, X, T) % m
    deg1 = (X[:, 1:] == 0).all(axis=1)
    deg_le2 = np.zeros(len(X), dtype=bool)
    for t in range(m):
        deg_le2 |= ((X2[:, 1:] - t * X[:, 1:]) % m == 0).all(axis=1)
    best = 1 if bool(deg1.all()) else 2
    if bool(deg_le2.all()):
        return best
    if n <= 3:
        return n
    for coords in X[~deg_le2]:
        d = _element_degree_value(B, tuple(int(c) for c in coords))
        best = max(best, d)
        if best == n:
            break
    return best


def _max_degree_finite_pure(B: StructureAlgebra) -> int:
    """Reference implementation of the exhaustive maximum, kept as the
    oracle for the vectorized path."""
    elems = list(B.ring.enumerate_elements())
    best = 1
    for coords in product(elems, repeat=B.rank):
        d = _element_degree_value(B, coords)
        if d > best:
            best = d
            if best == B.rank:
                break
    return best


# -- the universal element ---------------------------------------------------


class UniversalElement:
    """Powers of xi = a_0 e_0 + ... + a_{n-1} e_{n-1} over the coefficient
    polynomial ring, stored per power as sparse homogeneous tables mapping
    exponent vectors to coordinate vectors."""

    def __init__(self, B: StructureAlgebra):
        self.algebra = B
        self.nvars = B.rank
        self._tables = [{(0,) * B.rank: B.one()}]

    def power_table(self, e: int) -> dict:
        B = self.algebra
        R = B.ring
        while len(self._tables) <= e:
            prev = self._tables[-1]
            new: dict = {}
            for exps, vec in prev.items():
                for i in range(B.rank):
                    prod = B.mul(vec, B.basis_element(i))
                    if B.is_zero_element(prod):
                        continue
                    bumped = list(exps)
                    bumped[i] += 1
                    key = tuple(bumped)
                    cur = new.get(key)
                    new[key] = prod if cur is None else B.add(cur, prod)
            new = {k: v for k, v in new.items() if not B.is_zero_element(v)}
            deg = len(self._tables)
            if any(sum(k) != deg for k in new):
                raise InternalCheckError("universal power table lost homogeneity")
            self._tables.append(new)
        return self._tables[e]


def _graded_system(B: StructureAlgebra, U: UniversalElement, d: int):
    """Linear system whose solutions are homogeneous companion coefficients
    c_j (degree d-j) with xi^d + sum c_j xi^j = 0."""
    R = B.ring
    n = B.rank
    unknowns = [(j, nu) for j in range(d) for nu in monomials_of_degree(n, d - j)]
    pw = [U.power_table(j) for j in range(d + 1)]
    A, b = [], []
    for mu in monomials_of_degree(n, d):
        for k in range(n):
            row = []
            for j, nu in unknowns:
                rho = tuple(m - v for m, v in zip(mu, nu))
                if any(c < 0 for c in rho):
                    row.append(R.zero)
                else:
                    vec = pw[j].get(rho)
                    row.append(R.zero if vec is None else vec[k])
            A.append(row)
            vec = pw[d].get(mu)
            b.append(R.zero if vec is None else R.neg(vec[k]))
    return A, b, unknowns


def _relation_from_witness(B, unknowns, w, d):
    coeffs = [dict() for _ in range(d)]
    for (j, nu), val in zip(unknowns, w):
        mp_add_term(B.ring, coeffs[j], nu, val)
    return coeffs


def _geometric_degree_value(B: StructureAlgebra, over_fraction_field=False) -> int:
    U = UniversalElement(B)
    # degree-1 relations force rank 1: the coordinate of e_i in xi is a_i
    start = 1 if B.rank == 1 else 2
    for d in range(start, B.rank):
        A, b, _ = _graded_system(B, U, d)
        if over_fraction_field:
            if solvable_over_fraction_field(B.ring, A, b):
                return d
        elif solve(B.ring, A, b) is not None:
            return d
    return B.rank


def geometric_degree(B: StructureAlgebra) -> int:
    """Least d with a monic degree-d relation for the universal element;
    bounded by the rank (the generic characteristic polynomial)."""
    return _geometric_degree_value(B)


def geometric_degree_relation(B: StructureAlgebra):
    """(gdeg, coefficients): the graded relation as a list of sparse
    polynomials c_0 .. c_{d-1} with xi^d + c_{d-1} xi^{d-1} + ... + c_0 = 0.

    At d = rank the coefficients come from the characteristic polynomial of
    the generic left-multiplication matrix.
    """
    U = UniversalElement(B)
    start = 1 if B.rank == 1 else 2
    for d in range(start, B.rank):
        A, b, unknowns = _graded_system(B, U, d)
        w = solve(B.ring, A, b)
        if w is not None:
            return d, _relation_from_witness(B, unknowns, w, d)
    n = B.rank
    ops = MPolyOps(B.ring, n)
    generic = [[{} for _ in range(n)] for _ in range(n)]
    for i in range(n):
        L = B.left_mul_matrix(B.basis_element(i))
        for r in range(n):
            for c in range(n):
                mp_add_term(B.ring, generic[r][c], _unit_exps(n, i), L[r][c])
    from .linalg import char_poly

    chi = char_poly(ops, generic)
    coeffs = chi[:n]
    for j, cj in enumerate(coeffs):
        if not all(sum(e) == n - j for e in cj):
            raise InternalCheckError("generic characteristic polynomial is not graded")
    _verify_universal_relation(B, U, n, coeffs)
    return n, coeffs


def _unit_exps(n, i):
    e = [0] * n
    e[i] = 1
    return tuple(e)


def _verify_universal_relation(B, U, d, coeffs) -> None:
    """Check xi^d + sum c_j xi^j = 0 exactly, coordinate by coordinate."""
    R = B.ring
    n = B.rank
    total = [{} for _ in range(n)]
    for mu, vec in U.power_table(d).items():
        for k in range(n):
            mp_add_term(R, total[k], mu, vec[k])
    for j, cj in enumerate(coeffs):
        for nu, cval in cj.items():
            for rho, vec in U.power_table(j).items():
                mu = tuple(a + b for a, b in zip(nu, rho))
                for k in range(n):
                    mp_add_term(R, total[k], mu, R.mul(cval, vec[k]))
    if any(total[k] for k in range(n)):
        raise InternalCheckError("universal relation fails to annihilate")


def restriction_of_homogeneity_check(B: StructureAlgebra, d: int) -> bool:
    """Oracle for the graded solver: solve the membership of xi^d in lower
    powers with unconstrained (inhomogeneous) coefficients, then confirm the
    homogeneous components alone still satisfy the relation."""
    R = B.ring
    n = B.rank
    U = UniversalElement(B)
    unknowns = [(j, nu) for j in range(d) for nu in monomials_up_to_degree(n, d - j)]
    pw = [U.power_table(j) for j in range(d + 1)]
    A, b = [], []
    for mu in monomials_up_to_degree(n, d):
        for k in range(n):
            row = []
            for j, nu in unknowns:
                rho = tuple(m - v for m, v in zip(mu, nu))
                if any(c < 0 for c in rho) or sum(rho) != j:
                    row.append(R.zero)
                else:
                    vec = pw[j].get(rho)
                    row.append(R.zero if vec is None else vec[k])
            A.append(row)
            vec = pw[d].get(mu) if sum(mu) == d else None
            b.append(R.zero if vec is None else R.neg(vec[k]))
    w = solve(R, A, b)
    graded_solvable = _geometric_degree_value(B) <= d
    if w is None:
        return not graded_solvable
    full = [dict() for _ in range(d)]
    for (j, nu), val in zip(unknowns, w):
        mp_add_term(R, full[j], nu, val)
    projected = [mp_homogeneous_component(full[j], d - j) for j in range(d)]
    try:
        _verify_universal_relation(B, U, d, projected)
    except InternalCheckError:
        return False
    return True
