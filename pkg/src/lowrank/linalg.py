"""Exact linear algebra over the supported base rings.

Solving dispatches on ring capabilities: Gaussian elimination over fields,
Smith normal form over the euclidean domains (Z and the polynomial rings),
and an integer Smith-normal-form lift for Z/p^k.  Every witness returned by
a solver is verified by substitution before it leaves this module.

Also here: kernels, solvability over the localization of Z at a prime and
over fraction fields of domains (fraction-free Bareiss elimination), matrix
inversion, and a division-free characteristic polynomial (Berkowitz).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalCheckError, UnsupportedRingError
from .rings import ZZ, Ring, ResidueRing, is_prime


def identity_matrix(ring: Ring, n: int):
    return [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]


def mat_vec(ring: Ring, A, x):
    if A and len(A[0]) != len(x):
        raise ValueError(f"dimension mismatch: {len(A[0])} columns vs vector of {len(x)}")
    out = []
    for row in A:
        acc = ring.zero
        for a, b in zip(row, x):
            acc = ring.add(acc, ring.mul(a, b))
        out.append(acc)
    return out


def mat_mul(ring: Ring, X, Y):
    if X and Y and len(X[0]) != len(Y):
        raise ValueError("dimension mismatch in matrix product")
    cols = len(Y[0]) if Y else 0
    out = []
    for row in X:
        new = [ring.zero] * cols
        for k, a in enumerate(row):
            if ring.is_zero(a):
                continue
            yk = Y[k]
            for j in range(cols):
                new[j] = ring.add(new[j], ring.mul(a, yk[j]))
        out.append(new)
    return out


def transpose(A):
    return [list(col) for col in zip(*A)] if A else []


def _shape(A, b):
    m = len(A)
    n = len(A[0]) if m else 0
    if any(len(row) != n for row in A):
        raise ValueError("ragged coefficient matrix")
    if len(b) != m:
        raise ValueError(f"dimension mismatch: {m} rows vs rhs of {len(b)}")
    return m, n


# -- fields ---------------------------------------------------------------


def _rref(ring: Ring, M):
    """In-place reduced row echelon form; returns pivot column list."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if not ring.is_zero(M[i][c])), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = ring.inv(M[r][c])
        M[r] = [ring.mul(inv, v) for v in M[r]]
        for i in range(rows):
            if i != r and not ring.is_zero(M[i][c]):
                f = M[i][c]
                M[i] = [ring.sub(v, ring.mul(f, w)) for v, w in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return pivots


def _solve_field(ring: Ring, A, b):
    m, n = _shape(A, b)
    M = [list(row) + [bi] for row, bi in zip(A, b)]
    pivots = _rref(ring, M)
    if n in pivots:
        return None
    x = [ring.zero] * n
    for r, c in enumerate(pivots):
        x[c] = M[r][n]
    return x


def _kernel_field(ring: Ring, A):
    m = len(A)
    n = len(A[0]) if m else 0
    M = [list(row) for row in A]
    pivots = _rref(ring, M)
    pivot_set = set(pivots)
    basis = []
    for f in range(n):
        if f in pivot_set:
            continue
        v = [ring.zero] * n
        v[f] = ring.one
        for r, c in enumerate(pivots):
            v[c] = ring.neg(M[r][f])
        basis.append(v)
    return basis


# -- euclidean domains (Z, F_p[t], Q[t]) ----------------------------------


def smith_normal_form(ring: Ring, A):
    """Return (D, S, T) with S*A*T = D diagonal and d_i | d_{i+1}.

    S and T are invertible over the ring; diagonal entries are canonical
    associates (nonnegative over Z, monic over polynomial rings).
    """
    m = len(A)
    n = len(A[0]) if m else 0
    M = [[ring.canon(v) for v in row] for row in A]
    S = identity_matrix(ring, m)
    T = identity_matrix(ring, n)

    def row_op(i, j, q):  # row_i -= q * row_j
        M[i] = [ring.sub(a, ring.mul(q, b)) for a, b in zip(M[i], M[j])]
        S[i] = [ring.sub(a, ring.mul(q, b)) for a, b in zip(S[i], S[j])]

    def col_op(j, i, q):  # col_j -= q * col_i
        for r in range(m):
            M[r][j] = ring.sub(M[r][j], ring.mul(q, M[r][i]))
        for r in range(n):
            T[r][j] = ring.sub(T[r][j], ring.mul(q, T[r][i]))

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        S[i], S[j] = S[j], S[i]

    def swap_cols(i, j):
        for r in range(m):
            M[r][i], M[r][j] = M[r][j], M[r][i]
        for r in range(n):
            T[r][i], T[r][j] = T[r][j], T[r][i]

    def clear_pivot(s):
        while True:
            dirty = False
            for i in range(s + 1, m):
                if not ring.is_zero(M[i][s]):
                    q, _ = ring.quo_rem(M[i][s], M[s][s])
                    row_op(i, s, q)
                    if not ring.is_zero(M[i][s]):
                        swap_rows(i, s)
                        dirty = True
            if dirty:
                continue
            for j in range(s + 1, n):
                if not ring.is_zero(M[s][j]):
                    q, _ = ring.quo_rem(M[s][j], M[s][s])
                    col_op(j, s, q)
                    if not ring.is_zero(M[s][j]):
                        swap_cols(j, s)
                        dirty = True
            if not dirty:
                return

    def diagonalize():
        for s in range(min(m, n)):
            piv, best = None, None
            for i in range(s, m):
                for j in range(s, n):
                    if not ring.is_zero(M[i][j]):
                        sz = ring.euclid_size(M[i][j])
                        if best is None or sz < best:
                            piv, best = (i, j), sz
            if piv is None:
                return
            if piv[0] != s:
                swap_rows(piv[0], s)
            if piv[1] != s:
                swap_cols(piv[1], s)
            clear_pivot(s)

    diagonalize()
    # enforce the divisibility chain d_i | d_{i+1}
    for _ in range(8 * (min(m, n) + 1)):
        bad = None
        for i in range(min(m, n) - 1):
            a, b = M[i][i], M[i + 1][i + 1]
            if ring.is_zero(a):
                if not ring.is_zero(b):
                    swap_rows(i, i + 1)
                    swap_cols(i, i + 1)
                    bad = i
                    break
                continue
            _, r = ring.quo_rem(b, a)
            if not ring.is_zero(r):
                row_op(i, i + 1, ring.neg(ring.one))  # row_i += row_{i+1}
                bad = i
                break
        if bad is None:
            break
        diagonalize()
    else:
        raise InternalCheckError("smith normal form divisibility chain did not stabilize")
    # canonical associates on the diagonal
    for i in range(min(m, n)):
        u = ring.canonical_unit(M[i][i])
        if u != ring.one:
            M[i] = [ring.mul(u, v) for v in M[i]]
            S[i] = [ring.mul(u, v) for v in S[i]]
    return M, S, T


def _solve_euclidean(ring: Ring, A, b):
    m, n = _shape(A, b)
    D, S, T = smith_normal_form(ring, A)
    c = mat_vec(ring, S, [ring.canon(v) for v in b])
    y = [ring.zero] * n
    for i in range(m):
        d = D[i][i] if i < n else ring.zero
        if ring.is_zero(d):
            if not ring.is_zero(c[i]):
                return None
        else:
            q, r = ring.quo_rem(c[i], d)
            if not ring.is_zero(r):
                return None
            y[i] = q
    return mat_vec(ring, T, y)


def _kernel_euclidean(ring: Ring, A):
    m = len(A)
    n = len(A[0]) if m else 0
    D, _, T = smith_normal_form(ring, A)
    basis = []
    for j in range(n):
        d = D[j][j] if j < m else ring.zero
        if ring.is_zero(d):
            basis.append([T[i][j] for i in range(n)])
    return basis


# -- residue rings Z/p^k (lift to Z, per the design of this layer) --------


def _lift_residue(ring: ResidueRing, A, b=None):
    m = len(A)
    n = len(A[0]) if m else 0
    lifted = [[int(v) for v in row] + [ring.modulus if j == i else 0 for j in range(m)]
              for i, row in enumerate(A)]
    return lifted, (None if b is None else [int(v) for v in b]), m, n


def _solve_residue(ring: ResidueRing, A, b):
    _shape(A, b)
    lifted, bz, _, n = _lift_residue(ring, A, b)
    w = _solve_euclidean(ZZ, lifted, bz)
    if w is None:
        return None
    return [ring.canon(w[j]) for j in range(n)]


def _kernel_residue(ring: ResidueRing, A):
    lifted, _, _, n = _lift_residue(ring, A)
    out = []
    seen = set()
    for gen in _kernel_euclidean(ZZ, lifted):
        v = tuple(ring.canon(gen[j]) for j in range(n))
        if any(not ring.is_zero(c) for c in v) and v not in seen:
            seen.add(v)
            out.append(list(v))
    return out


# -- public dispatch -------------------------------------------------------


def solve(ring: Ring, A, b):
    """Witness x with A x = b over the ring, or None when no solution exists
    (over the ring itself, not merely its fraction field)."""
    m, n = _shape(A, b)
    if m == 0:
        return [ring.zero] * n
    if ring.is_field:
        x = _solve_field(ring, A, b)
    elif isinstance(ring, ResidueRing):
        x = _solve_residue(ring, A, b)
    elif ring.is_euclidean:
        x = _solve_euclidean(ring, A, b)
    else:
        raise UnsupportedRingError(f"no linear solver for ring {ring}")
    if x is not None:
        check = mat_vec(ring, A, x)
        if any(ring.canon(u) != ring.canon(v) for u, v in zip(check, b)):
            raise InternalCheckError("linear solver returned a bad witness")
    return x


def kernel(ring: Ring, A):
    """Generators of the solution module of A x = 0."""
    if not A:
        return []
    if ring.is_field:
        gens = _kernel_field(ring, A)
    elif isinstance(ring, ResidueRing):
        gens = _kernel_residue(ring, A)
    elif ring.is_euclidean:
        gens = _kernel_euclidean(ring, A)
    else:
        raise UnsupportedRingError(f"no kernel computation for ring {ring}")
    for g in gens:
        if any(not ring.is_zero(v) for v in mat_vec(ring, A, g)):
            raise InternalCheckError("kernel generator fails to annihilate")
    return gens


def kernel_is_trivial(ring: Ring, A) -> bool:
    return all(all(ring.is_zero(v) for v in g) for g in kernel(ring, A))


def _vp(x: int, p: int) -> int:
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def solve_local_at(A, b, p: int):
    """Solvability of an integer system over Z localized at the prime p.

    Returns a rational witness whose denominators are coprime to p, or None.
    Decided through the Smith normal form: each invariant factor must divide
    the transformed right-hand side up to p-adic valuation.
    """
    if not is_prime(p):
        raise UnsupportedRingError(f"{p} is not prime")
    m, n = _shape(A, b)
    D, S, T = smith_normal_form(ZZ, A)
    c = mat_vec(ZZ, S, list(b))
    y = [Fraction(0)] * n
    for i in range(m):
        d = D[i][i] if i < n else 0
        if d == 0:
            if c[i] != 0:
                return None
        elif c[i] != 0:
            if _vp(d, p) > _vp(c[i], p):
                return None
            y[i] = Fraction(c[i], d)
        # c[i] == 0 leaves y[i] = 0
    x = [sum(Fraction(T[i][j]) * y[j] for j in range(n)) for i in range(n)]
    for row, bi in zip(A, b):
        if sum(Fraction(a) * xi for a, xi in zip(row, x)) != bi:
            raise InternalCheckError("local solver returned a bad witness")
    if any(xi.denominator % p == 0 for xi in x):
        raise InternalCheckError("local witness has a denominator divisible by p")
    return x


def rank_over_fraction_field(ring: Ring, A) -> int:
    """Rank over Frac(ring) by fraction-free (Bareiss) elimination."""
    if not ring.is_domain:
        raise UnsupportedRingError(f"{ring} is not a domain")
    M = [[ring.canon(v) for v in row] for row in A]
    m = len(M)
    n = len(M[0]) if m else 0
    prev = ring.one
    r = 0
    for c in range(n):
        if r >= m:
            break
        piv = next((i for i in range(r, m) if not ring.is_zero(M[i][c])), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, m):
            for j in range(c + 1, n):
                num = ring.sub(ring.mul(M[r][c], M[i][j]), ring.mul(M[i][c], M[r][j]))
                q, rem = ring.quo_rem(num, prev)
                if not ring.is_zero(rem):
                    raise InternalCheckError("Bareiss division was not exact")
                M[i][j] = q
            M[i][c] = ring.zero
        prev = M[r][c]
        r += 1
    return r


def solvable_over_fraction_field(ring: Ring, A, b) -> bool:
    m, n = _shape(A, b)
    if m == 0:
        return True
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    return rank_over_fraction_field(ring, A) == rank_over_fraction_field(ring, aug)


def invert_matrix(ring: Ring, M):
    """Inverse of a square matrix over the ring, or None if not invertible."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("matrix must be square")
    cols = []
    for j in range(n):
        e = [ring.one if i == j else ring.zero for i in range(n)]
        x = solve(ring, M, e)
        if x is None:
            return None
        cols.append(x)
    X = transpose(cols)
    if mat_mul(ring, M, X) != identity_matrix(ring, n):
        raise InternalCheckError("matrix inverse verification failed")
    return X


def char_poly(ring: Ring, M):
    """Coefficients of det(T*I - M), low degree first, length n+1, monic.

    Berkowitz's division-free algorithm, valid over any commutative ring.
    """
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("matrix must be square")
    if n == 0:
        return [ring.one]
    C = [ring.one, ring.neg(M[0][0])]  # highest degree first
    for r in range(2, n + 1):
        sub = [row[: r - 1] for row in M[: r - 1]]
        R = M[r - 1][: r - 1]
        col = [M[i][r - 1] for i in range(r - 1)]
        toep = [ring.one, ring.neg(M[r - 1][r - 1])]
        vec = col
        for j in range(2, r + 1):
            acc = ring.zero
            for a, v in zip(R, vec):
                acc = ring.add(acc, ring.mul(a, v))
            toep.append(ring.neg(acc))
            if j < r:
                vec = mat_vec(ring, sub, vec)
        new = []
        for i in range(r + 1):
            acc = ring.zero
            for j in range(max(0, i - len(C) + 1), min(i, r) + 1):
                if i - j < len(C):
                    acc = ring.add(acc, ring.mul(toep[j], C[i - j]))
            new.append(acc)
        C = new
    C.reverse()
    return C


def determinant(ring: Ring, M):
    n = len(M)
    c0 = char_poly(ring, M)[0]  # det(-M)
    return c0 if n % 2 == 0 else ring.neg(c0)


@dataclass(frozen=True)
class LinearSystem:
    """A linear system bundled with the solving method its ring supports."""

    ring: Ring
    matrix: tuple
    rhs: tuple

    @staticmethod
    def build(ring, matrix, rhs):
        mat = tuple(tuple(ring.canon(v) for v in row) for row in matrix)
        vec = tuple(ring.canon(v) for v in rhs)
        _shape(mat, vec)
        return LinearSystem(ring, mat, vec)

    @property
    def method(self) -> str:
        if self.ring.is_field:
            return "gauss"
        if isinstance(self.ring, ResidueRing):
            return "smith-lift"
        if self.ring.is_euclidean:
            return "smith"
        raise UnsupportedRingError(f"no linear solver for ring {self.ring}")

    def solve(self):
        return solve(self.ring, [list(r) for r in self.matrix], list(self.rhs))

    def kernel(self):
        return kernel(self.ring, [list(r) for r in self.matrix])
