"""Exact arithmetic over the supported commutative base rings.

Supported kinds: the integers Z, the rationals Q, prime fields F_p,
prime-power residue rings Z/p^k, and univariate polynomial rings F_p[t] and
Q[t].  Ring objects are cheap immutable descriptors; elements are plain
Python values (int, Fraction, or coefficient tuples) kept in canonical form,
so element equality is structural and values hash.

The capability flags (finite / domain / field / euclidean) drive dispatch in
the exact linear-algebra layer.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Any, Iterator

from .errors import AlgebraFormatError, UnsupportedRingError

Elem = Any

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every modulus within reach here."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Ring:
    """Common surface of all base rings.

    Subclasses fix the capability flags and implement arithmetic on the raw
    element representation.  ``canon`` both validates and normalizes, and all
    other methods assume canonical inputs.
    """

    kind: str = ""
    is_finite = False
    is_domain = False
    is_field = False
    is_pid = False
    is_euclidean = False  # exact quo_rem available (fields trivially so)
    characteristic: int = 0
    size: int | None = None

    zero: Elem = 0
    one: Elem = 1

    def canon(self, x) -> Elem:
        raise NotImplementedError

    def from_int(self, n: int) -> Elem:
        raise NotImplementedError

    def add(self, a, b) -> Elem:
        raise NotImplementedError

    def neg(self, a) -> Elem:
        raise NotImplementedError

    def mul(self, a, b) -> Elem:
        raise NotImplementedError

    def sub(self, a, b) -> Elem:
        return self.add(a, self.neg(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def inv(self, a) -> Elem:
        raise NotImplementedError

    def is_nonzerodivisor(self, a) -> bool:
        """Exact test; exhaustive over finite rings, nonzero over domains."""
        if self.is_domain:
            return not self.is_zero(a)
        return all(
            self.is_zero(b) or not self.is_zero(self.mul(a, b))
            for b in self.enumerate_elements()
        )

    def quo_rem(self, a, b) -> tuple[Elem, Elem]:
        raise UnsupportedRingError(f"no euclidean division over {self}")

    def euclid_size(self, a) -> int:
        raise UnsupportedRingError(f"no euclidean size over {self}")

    def canonical_unit(self, a) -> Elem:
        """A unit u such that u*a is the canonical associate of a."""
        raise UnsupportedRingError(f"no canonical associates over {self}")

    def canonical_associate(self, a) -> Elem:
        return self.mul(self.canonical_unit(a), a)

    def enumerate_elements(self) -> Iterator[Elem]:
        raise UnsupportedRingError(f"{self} is infinite and cannot be enumerated")

    def descriptor(self) -> dict:
        raise NotImplementedError

    def elem_to_json(self, a):
        raise NotImplementedError

    def elem_from_json(self, obj) -> Elem:
        raise NotImplementedError

    def elem_str(self, a) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, Ring) and self.descriptor() == other.descriptor()

    def __hash__(self):
        return hash(tuple(sorted(self.descriptor().items())))

    def __repr__(self):
        return self.kind


def _check_int_str(s) -> int:
    if isinstance(s, int) and not isinstance(s, bool):
        return s
    if isinstance(s, str):
        try:
            return int(s, 10)
        except ValueError:
            pass
    raise AlgebraFormatError(f"expected a decimal integer string, got {s!r}")


class IntegerRing(Ring):
    kind = "Z"
    is_domain = True
    is_pid = True
    is_euclidean = True

    def canon(self, x):
        if isinstance(x, bool) or not isinstance(x, int):
            raise TypeError(f"Z element must be int, got {type(x).__name__}")
        return x

    def from_int(self, n):
        return n

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_unit(self, a):
        return a in (1, -1)

    def inv(self, a):
        if not self.is_unit(a):
            raise ValueError(f"{a} is not a unit in Z")
        return a

    def quo_rem(self, a, b):
        return divmod(a, b)

    def euclid_size(self, a):
        return abs(a)

    def canonical_unit(self, a):
        return -1 if a < 0 else 1

    def descriptor(self):
        return {"kind": "Z"}

    def elem_to_json(self, a):
        return str(a)

    def elem_from_json(self, obj):
        return _check_int_str(obj)


class RationalField(Ring):
    kind = "Q"
    is_domain = True
    is_field = True
    is_pid = True
    is_euclidean = True

    zero = Fraction(0)
    one = Fraction(1)

    def canon(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int) and not isinstance(x, bool):
            return Fraction(x)
        raise TypeError(f"Q element must be Fraction or int, got {type(x).__name__}")

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_unit(self, a):
        return a != 0

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 is not a unit in Q")
        return 1 / a

    def quo_rem(self, a, b):
        return a / b, Fraction(0)

    def euclid_size(self, a):
        return 0 if a == 0 else 1

    def canonical_unit(self, a):
        return Fraction(1) if a == 0 else 1 / a

    def descriptor(self):
        return {"kind": "Q"}

    def elem_to_json(self, a):
        return str(a)

    def elem_from_json(self, obj):
        if isinstance(obj, int) and not isinstance(obj, bool):
            return Fraction(obj)
        if isinstance(obj, str):
            try:
                return Fraction(obj)
            except (ValueError, ZeroDivisionError):
                pass
        raise AlgebraFormatError(f"expected 'p/q' rational string, got {obj!r}")


class PrimeField(Ring):
    is_finite = True
    is_domain = True
    is_field = True
    is_pid = True
    is_euclidean = True

    def __init__(self, p: int):
        if not is_prime(p):
            raise UnsupportedRingError(f"F_p needs a prime p, got {p}")
        self.p = p
        self.kind = f"F{p}"
        self.characteristic = p
        self.size = p

    def canon(self, x):
        if isinstance(x, bool) or not isinstance(x, int):
            raise TypeError(f"F_{self.p} element must be int, got {type(x).__name__}")
        return x % self.p

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def is_unit(self, a):
        return a % self.p != 0

    def inv(self, a):
        return pow(a, -1, self.p)

    def quo_rem(self, a, b):
        return self.mul(a, self.inv(b)), 0

    def euclid_size(self, a):
        return 0 if a == 0 else 1

    def canonical_unit(self, a):
        return 1 if a == 0 else self.inv(a)

    def enumerate_elements(self):
        return iter(range(self.p))

    def descriptor(self):
        return {"kind": "Fp", "p": self.p}

    def elem_to_json(self, a):
        return str(a)

    def elem_from_json(self, obj):
        return _check_int_str(obj) % self.p


class ResidueRing(Ring):
    """Z/p^k with k >= 2.  For k = 1 use PrimeField."""

    is_finite = True

    def __init__(self, p: int, k: int):
        if not is_prime(p):
            raise UnsupportedRingError(
                f"residue ring modulus must be a prime power; {p}^{k} has composite "
                f"base {p} (such rings split into a product and are rejected)"
            )
        if k < 2:
            raise UnsupportedRingError(f"Z/p^k needs k >= 2, use F_{p} for k = 1")
        self.p = p
        self.k = k
        self.modulus = p**k
        self.kind = f"Z/{p}^{k}"
        self.characteristic = self.modulus
        self.size = self.modulus

    def canon(self, x):
        if isinstance(x, bool) or not isinstance(x, int):
            raise TypeError(f"{self.kind} element must be int, got {type(x).__name__}")
        return x % self.modulus

    def from_int(self, n):
        return n % self.modulus

    def add(self, a, b):
        return (a + b) % self.modulus

    def neg(self, a):
        return -a % self.modulus

    def mul(self, a, b):
        return (a * b) % self.modulus

    def is_unit(self, a):
        return a % self.p != 0

    def inv(self, a):
        return pow(a, -1, self.modulus)

    def valuation(self, a) -> int:
        """p-adic valuation, capped at k for the zero class."""
        if a % self.modulus == 0:
            return self.k
        v = 0
        while a % self.p == 0:
            a //= self.p
            v += 1
        return v

    def canonical_unit(self, a):
        if a % self.modulus == 0:
            return 1
        v = self.valuation(a)
        return self.inv(a // self.p**v)

    def canonical_associate(self, a):
        return self.p ** self.valuation(a) % self.modulus

    def enumerate_elements(self):
        return iter(range(self.modulus))

    def descriptor(self):
        return {"kind": "Zmod", "p": self.p, "k": self.k}

    def elem_to_json(self, a):
        return str(a)

    def elem_from_json(self, obj):
        return _check_int_str(obj) % self.modulus


class PolynomialRing(Ring):
    """Univariate polynomials over F_p or Q, as trailing-zero-free tuples."""

    is_domain = True
    is_pid = True
    is_euclidean = True

    def __init__(self, coeff_ring: Ring):
        if not isinstance(coeff_ring, (PrimeField, RationalField)):
            raise UnsupportedRingError(
                f"polynomial base rings are limited to F_p and Q, got {coeff_ring}"
            )
        self.coeff = coeff_ring
        self.kind = f"{coeff_ring.kind}[t]"
        self.characteristic = coeff_ring.characteristic
        self.zero = ()
        self.one = (coeff_ring.one,)

    @property
    def gen(self):
        return (self.coeff.zero, self.coeff.one)

    def constant(self, c):
        c = self.coeff.canon(c)
        return () if self.coeff.is_zero(c) else (c,)

    def degree(self, a) -> int:
        return len(a) - 1

    def leading(self, a):
        return a[-1]

    def _strip(self, coeffs):
        n = len(coeffs)
        while n and self.coeff.is_zero(coeffs[n - 1]):
            n -= 1
        return tuple(coeffs[:n])

    def canon(self, x):
        if not isinstance(x, tuple):
            raise TypeError(f"{self.kind} element must be tuple, got {type(x).__name__}")
        return self._strip([self.coeff.canon(c) for c in x])

    def from_int(self, n):
        return self.constant(self.coeff.from_int(n))

    def add(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = self.coeff.add(out[i], c)
        return self._strip(out)

    def neg(self, a):
        return tuple(self.coeff.neg(c) for c in a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        out = [self.coeff.zero] * (len(a) + len(b) - 1)
        K = self.coeff
        for i, ca in enumerate(a):
            if K.is_zero(ca):
                continue
            for j, cb in enumerate(b):
                out[i + j] = K.add(out[i + j], K.mul(ca, cb))
        return self._strip(out)

    def is_unit(self, a):
        return len(a) == 1

    def inv(self, a):
        if not self.is_unit(a):
            raise ValueError(f"{self.elem_str(a)} is not a unit in {self.kind}")
        return (self.coeff.inv(a[0]),)

    def quo_rem(self, a, b):
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        K = self.coeff
        rem = list(a)
        quo = [K.zero] * max(len(a) - len(b) + 1, 0)
        inv_lead = K.inv(b[-1])
        for i in range(len(rem) - len(b), -1, -1):
            c = K.mul(rem[i + len(b) - 1], inv_lead)
            if K.is_zero(c):
                continue
            quo[i] = c
            for j, cb in enumerate(b):
                rem[i + j] = K.sub(rem[i + j], K.mul(c, cb))
        return self._strip(quo), self._strip(rem)

    def euclid_size(self, a):
        return len(a)

    def canonical_unit(self, a):
        return self.one if not a else (self.coeff.inv(a[-1]),)

    def descriptor(self):
        if isinstance(self.coeff, PrimeField):
            return {"kind": "PolyFp", "p": self.coeff.p}
        return {"kind": "PolyQ"}

    def elem_to_json(self, a):
        return [self.coeff.elem_to_json(c) for c in a]

    def elem_from_json(self, obj):
        if not isinstance(obj, list):
            raise AlgebraFormatError(f"expected coefficient array, got {obj!r}")
        return self._strip([self.coeff.elem_from_json(c) for c in obj])

    def elem_str(self, a):
        if not a:
            return "0"
        parts = []
        for e, c in enumerate(a):
            if self.coeff.is_zero(c):
                continue
            if e == 0:
                parts.append(str(c))
            elif e == 1:
                parts.append(f"{c}*t" if c != self.coeff.one else "t")
            else:
                parts.append(f"{c}*t^{e}" if c != self.coeff.one else f"t^{e}")
        return " + ".join(reversed(parts))


ZZ = IntegerRing()
QQ = RationalField()


def ext_gcd(ring: Ring, a, b):
    """Extended euclidean algorithm: returns (g, x, y) with x*a + y*b = g,
    g the canonical associate of gcd(a, b)."""
    r0, r1 = a, b
    x0, x1 = ring.one, ring.zero
    y0, y1 = ring.zero, ring.one
    while not ring.is_zero(r1):
        q, r = ring.quo_rem(r0, r1)
        r0, r1 = r1, r
        x0, x1 = x1, ring.sub(x0, ring.mul(q, x1))
        y0, y1 = y1, ring.sub(y0, ring.mul(q, y1))
    u = ring.canonical_unit(r0)
    return ring.mul(u, r0), ring.mul(u, x0), ring.mul(u, y0)


def nonzerodivisor_witness(ring: Ring):
    """Some a with a*(a-1) a nonzerodivisor, or None if no such a exists.

    Over finite rings the search is exhaustive, hence exact.  Over the
    supported infinite domains, -1 works away from characteristic 2, and the
    polynomial variable works in characteristic 2.
    """
    if ring.is_finite:
        for a in ring.enumerate_elements():
            if ring.is_nonzerodivisor(ring.mul(a, ring.sub(a, ring.one))):
                return a
        return None
    if ring.characteristic != 2:
        return ring.from_int(-1)
    if isinstance(ring, PolynomialRing):
        return ring.gen
    return None


def ring_from_descriptor(desc: dict) -> Ring:
    """Parse a JSON ring descriptor into a ring object."""
    if not isinstance(desc, dict) or "kind" not in desc:
        raise AlgebraFormatError(f"bad ring descriptor: {desc!r}")
    kind = desc["kind"]
    try:
        if kind == "Z":
            return ZZ
        if kind == "Q":
            return QQ
        if kind == "Fp":
            return PrimeField(int(desc["p"]))
        if kind == "Zmod":
            return ResidueRing(int(desc["p"]), int(desc["k"]))
        if kind == "PolyFp":
            return PolynomialRing(PrimeField(int(desc["p"])))
        if kind == "PolyQ":
            return PolynomialRing(QQ)
    except (KeyError, ValueError, TypeError) as exc:
        raise AlgebraFormatError(f"bad ring descriptor {desc!r}: {exc}") from exc
    raise UnsupportedRingError(f"unknown ring kind {kind!r}")
