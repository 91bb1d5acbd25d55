"""Polynomial values over a base ring.

Two representations live here.  ``MonicPolynomial`` is a dense monic
univariate polynomial (characteristic and minimal polynomials take this
form).  The ``mp_*`` functions implement sparse multivariate polynomials as
exponent-vector dicts; the graded solver for the universal element is built
on them.  Monomial orderings are graded lexicographic throughout so that
system assembly is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from .errors import InternalCheckError
from .rings import Ring


@dataclass(frozen=True)
class MonicPolynomial:
    """T^d + c_{d-1} T^{d-1} + ... + c_0 with coefficients in a base ring.

    ``coeffs`` stores c_0 .. c_{d-1}; the leading 1 is implicit.
    """

    ring: Ring
    coeffs: tuple

    @staticmethod
    def make(ring: Ring, coeffs) -> "MonicPolynomial":
        return MonicPolynomial(ring, tuple(ring.canon(c) for c in coeffs))

    @staticmethod
    def from_full(ring: Ring, full) -> "MonicPolynomial":
        """From a low-to-high coefficient list whose leading entry must be 1."""
        full = [ring.canon(c) for c in full]
        if not full or full[-1] != ring.one:
            raise ValueError("polynomial is not monic")
        return MonicPolynomial(ring, tuple(full[:-1]))

    @staticmethod
    def linear(ring: Ring, root) -> "MonicPolynomial":
        """T - root."""
        return MonicPolynomial.make(ring, [ring.neg(ring.canon(root))])

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def full_coeffs(self):
        return list(self.coeffs) + [self.ring.one]

    def eval_scalar(self, x):
        R = self.ring
        x = R.canon(x)
        acc = R.one
        for c in reversed(self.coeffs):
            acc = R.add(R.mul(acc, x), c)
        return acc

    def eval_in(self, algebra, x):
        """Horner evaluation inside an algebra over the same base ring."""
        acc = algebra.one()
        for c in reversed(self.coeffs):
            acc = algebra.add(algebra.mul(acc, x), algebra.from_scalar(c))
        return acc

    def mul(self, other: "MonicPolynomial") -> "MonicPolynomial":
        if self.ring != other.ring:
            raise ValueError("coefficient ring mismatch")
        R = self.ring
        a = self.full_coeffs()
        b = other.full_coeffs()
        out = [R.zero] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if R.is_zero(ca):
                continue
            for j, cb in enumerate(b):
                out[i + j] = R.add(out[i + j], R.mul(ca, cb))
        return MonicPolynomial.from_full(R, out)

    def pow(self, e: int) -> "MonicPolynomial":
        out = MonicPolynomial(self.ring, ())
        for _ in range(e):
            out = out.mul(self)
        return out

    def __str__(self):
        R = self.ring
        parts = [f"T^{self.degree}" if self.degree > 1 else ("T" if self.degree == 1 else "1")]
        for e in range(self.degree - 1, -1, -1):
            c = self.coeffs[e]
            if R.is_zero(c):
                continue
            mono = "" if e == 0 else ("T" if e == 1 else f"T^{e}")
            s = R.elem_str(c)
            parts.append(f"({s}){mono}" if mono else f"({s})")
        return " + ".join(parts)


# -- sparse multivariate polynomials ---------------------------------------
#
# A polynomial in variables a_0 .. a_{m-1} is a dict mapping exponent tuples
# to nonzero ring elements.  The zero polynomial is the empty dict.


def grlex_key(exps):
    return (sum(exps), tuple(-e for e in exps))


def monomials_of_degree(nvars: int, d: int):
    """All exponent tuples of total degree d, in graded-lex order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    out.sort(key=grlex_key)
    return out


def monomials_up_to_degree(nvars: int, d: int):
    out = []
    for k in range(d + 1):
        out.extend(monomials_of_degree(nvars, k))
    return out


def mp_add_term(ring: Ring, p: dict, exps, coeff):
    """Accumulate coeff * a^exps into p, dropping zero results."""
    if ring.is_zero(coeff):
        return
    cur = p.get(exps)
    if cur is None:
        p[exps] = coeff
    else:
        s = ring.add(cur, coeff)
        if ring.is_zero(s):
            del p[exps]
        else:
            p[exps] = s


def mp_add(ring: Ring, p: dict, q: dict) -> dict:
    out = dict(p)
    for e, c in q.items():
        mp_add_term(ring, out, e, c)
    return out


def mp_neg(ring: Ring, p: dict) -> dict:
    return {e: ring.neg(c) for e, c in p.items()}

def mp_scale(ring: Ring, c, p: dict) -> dict:
    if ring.is_zero(c):
        return {}
    out = {}
    for e, v in p.items():
        mp_add_term(ring, out, e, ring.mul(c, v))
    return out


def mp_mul(ring: Ring, p: dict, q: dict) -> dict:
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            mp_add_term(ring, out, e, ring.mul(c1, c2))
    return out


def mp_is_zero(p: dict) -> bool:
    return not p


def mp_homogeneous_component(p: dict, d: int) -> dict:
    return {e: c for e, c in p.items() if sum(e) == d}


def mp_is_homogeneous(p: dict, d: int) -> bool:
    return all(sum(e) == d for e in p)


def mp_eval(ring: Ring, p: dict, point) -> "object":
    acc = ring.zero
    for e, c in p.items():
        term = c
        for v, k in zip(point, e):
            for _ in range(k):
                term = ring.mul(term, v)
        acc = ring.add(acc, term)
    return acc


class MPolyOps:
    """Ring-like operation table for sparse multivariate polynomials.

    Lets generic algorithms (the division-free characteristic polynomial in
    particular) run with polynomial entries.
    """

    def __init__(self, ring: Ring, nvars: int):
        self.base = ring
        self.nvars = nvars
        self.zero = {}
        self.one = {(0,) * nvars: ring.one}

    def add(self, p, q):
        return mp_add(self.base, p, q)

    def sub(self, p, q):
        return mp_add(self.base, p, mp_neg(self.base, q))

    def neg(self, p):
        return mp_neg(self.base, p)

    def mul(self, p, q):
        return mp_mul(self.base, p, q)

    def is_zero(self, p):
        return not p

    def canon(self, p):
        out = {}
        for e, c in p.items():
            mp_add_term(self.base, out, tuple(e), self.base.canon(c))
        return out

    def variable(self, i):
        e = [0] * self.nvars
        e[i] = 1
        return {tuple(e): self.base.one}


def poly_sqrt(poly_ring, f):
    """Square root of f in F_p[t] or Q[t], or None when f is not a square.

    Characteristic 2 squares have only even-degree terms with coefficient
    squares; elsewhere the root is found by matching coefficients downward
    from the leading term.
    """
    K = poly_ring.coeff
    if not f:
        return poly_ring.zero
    d = poly_ring.degree(f)
    if d % 2 == 1:
        return None
    if poly_ring.characteristic == 2:
        # (sum c_i t^i)^2 = sum c_i^2 t^(2i); over F_2 coefficients are fixed
        coeffs = []
        for i in range(d // 2 + 1):
            even = f[2 * i] if 2 * i <= d else K.zero
            if 2 * i + 1 <= d and not K.is_zero(f[2 * i + 1]):
                return None
            root = next((c for c in K.enumerate_elements() if K.mul(c, c) == even), None)
            if root is None:
                return None
            coeffs.append(root)
        g = poly_ring.canon(tuple(coeffs))
    else:
        lead = f[-1]
        s = _coeff_sqrt(K, lead)
        if s is None:
            return None
        half = d // 2
        g = [K.zero] * (half + 1)
        g[half] = s
        # match coefficients from degree d-1 downward: f - g^2 must vanish
        for i in range(half - 1, -1, -1):
            # coefficient of t^(half+i) in g^2, excluding the 2*g[half]*g[i] term
            acc = K.zero
            for a in range(i + 1, half):
                b = half + i - a
                if i < b <= half:
                    acc = K.add(acc, K.mul(g[a], g[b]))
            target = f[half + i] if half + i <= d else K.zero
            num = K.sub(target, acc)
            den = K.mul(K.from_int(2), g[half])
            g[i] = K.mul(num, K.inv(den))
        g = poly_ring.canon(tuple(g))
    if poly_ring.mul(g, g) != poly_ring.canon(f):
        return None
    return g


def _coeff_sqrt(K, c):
    """Square root in F_p (enumeration) or Q (perfect-square test)."""
    if K.is_finite:
        return next((x for x in K.enumerate_elements() if K.mul(x, x) == c), None)
    from math import isqrt

    if c < 0:
        return None
    pn, qd = c.numerator, c.denominator
    rn, rd = isqrt(pn), isqrt(qd)
    if rn * rn != pn or rd * rd != qd:
        return None
    from fractions import Fraction

    return Fraction(rn, rd)
