"""Exact arithmetic in GF(p^f) with reproducible moduli.

Field elements are plain ints in [0, q).  The base-p digits of the int are
the coefficients of the element in the polynomial basis (digit i is the
coefficient of x^i), so the int *is* the serialized form.

Multiplication, inversion and powering go through exp/log tables built once
per field, keyed to a canonical primitive element: the class of x when the
modulus is one of the frozen Conway polynomials (Conway polynomials are
primitive), the least primitive element otherwise.  Using Conway moduli makes
the subfield embedding GF(p^s) -> GF(p^f) canonical: the generator of the
small field maps to g^((p^f-1)/(p^s-1)).

Moduli: the frozen CONWAY table below (recomputed from the definition and
checked by the test suite for primitivity and norm compatibility); for other
(p, f) the lexicographically least monic irreducible polynomial, coefficient
tuples (c_0, ..., c_{f-1}) compared left to right.
"""

from __future__ import annotations

import functools
import itertools

from .errors import BoundExceeded, DivisionByZero, NotPrime

DEFAULT_FIELD_BOUND = 2 ** 20

# modulus coefficients, low degree first, monic (degree f).
CONWAY = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (3, 8): (2, 2, 2, 0, 1, 2, 0, 0, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (5, 4): (2, 4, 4, 0, 1),
    (7, 2): (3, 6, 1),
    (11, 2): (2, 7, 1),
    (13, 2): (2, 12, 1),
    (19, 2): (2, 18, 1),
    (29, 2): (2, 24, 1),
    (31, 2): (3, 29, 1),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    fs = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            fs.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        fs.append(n)
    return fs


def factor_prime_power(q: int) -> tuple[int, int]:
    """Write q = p^f with p prime, or raise ValueError."""
    fs = prime_factors(q)
    if len(fs) != 1:
        raise ValueError(f"{q} is not a prime power")
    p = fs[0]
    f = 0
    while q > 1:
        q //= p
        f += 1
    return p, f


# ---------------------------------------------------------------------------
# polynomial helpers over GF(p), coefficient lists low degree first


def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, b, p):
    a = list(a)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b) and a:
        c = (a[-1] * inv_lead) % p
        shift = len(a) - len(b)
        for j in range(len(b)):
            a[shift + j] = (a[shift + j] - c * b[j]) % p
        _poly_trim(a)
    return a


def _poly_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _poly_mulmod(a, b, mod, p):
    if not a or not b:
        return []
    n = len(mod) - 1
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    for i in range(len(res) - 1, n - 1, -1):
        c = res[i]
        if c:
            res[i] = 0
            for j in range(n):
                res[i - n + j] = (res[i - n + j] - c * mod[j]) % p
    return _poly_trim(res)


def _poly_powmod(a, e, mod, p):
    result = [1]
    base = list(a)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _is_irreducible(mod, p, f):
    if f == 1:
        return True
    if mod[0] == 0:
        return False
    if _poly_powmod([0, 1], p ** f, mod, p) != [0, 1]:
        return False
    for ell in prime_factors(f):
        xm = _poly_powmod([0, 1], p ** (f // ell), mod, p)
        diff = [(xi - yi) % p
                for xi, yi in itertools.zip_longest(xm, [0, 1], fillvalue=0)]
        if len(_poly_gcd(_poly_trim(diff), list(mod), p)) != 1:
            return False
    return True


def _least_irreducible(p, f):
    """Lexicographically least monic irreducible of degree f over GF(p)."""
    for low in itertools.product(range(p), repeat=f):
        mod = list(low) + [1]
        if _is_irreducible(mod, p, f):
            return tuple(mod)
    raise AssertionError("no irreducible polynomial found")


# ---------------------------------------------------------------------------


class GF:
    """The field GF(p^f); elements are ints in [0, q)."""

    def __init__(self, p: int, f: int = 1, *, bound: int = DEFAULT_FIELD_BOUND):
        if not is_prime(p):
            raise NotPrime(f"p = {p} is not prime")
        if f < 1:
            raise ValueError("f must be >= 1")
        q = p ** f
        if q > bound:
            raise BoundExceeded(f"q = {q} exceeds field bound {bound}")
        self.p = p
        self.f = f
        self.q = q
        if f == 1:
            self.modulus = (0, 1)  # GF(p)[x]/(x)
        elif (p, f) in CONWAY:
            self.modulus = CONWAY[(p, f)]
        else:
            self.modulus = _least_irreducible(p, f)
        self._build_tables()

    def __repr__(self):
        return f"GF({self.p}^{self.f})" if self.f > 1 else f"GF({self.p})"

    # -- representation -----------------------------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        """Base-p digits of a: polynomial-basis coefficients, low degree first."""
        out = []
        for _ in range(self.f):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def from_coeffs(self, cs) -> int:
        a = 0
        for c in reversed(list(cs)):
            a = a * self.p + c % self.p
        return a

    def elements(self) -> range:
        return range(self.q)

    # -- arithmetic ----------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.f == 1:
            return (a + b) % self.p
        p = self.p
        out = 0
        mult = 1
        while a or b:
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        p = self.p
        out = 0
        mult = 1
        while a:
            out += (-a % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of 0")
        return self._exp[-self._log[a] % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e > 0:
                return 0
            if e == 0:
                return 1
            raise DivisionByZero("0 to a negative power")
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def frob(self, a: int, e: int = 1) -> int:
        """Frobenius a -> a^(p^e)."""
        return self.pow(a, self.p ** e)

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("order of 0")
        n = self.q - 1
        k = self._log[a]
        from math import gcd
        return n // gcd(n, k)

    def trace(self, a: int) -> int:
        """Absolute trace into GF(p), returned as an int in [0, p)."""
        t = a
        x = a
        for _ in range(self.f - 1):
            x = self.frob(x)
            t = self.add(t, x)
        return t  # lies in the prime subfield, i.e. in [0, p)

    def is_square(self, a: int) -> bool:
        if a == 0 or self.p == 2:
            return True
        return self._log[a] % 2 == 0

    # -- structure -----------------------------------------------------------

    @property
    def generator(self) -> int:
        """The canonical primitive element the exp/log tables are built on."""
        return self._gen

    def embed_into(self, other: "GF") -> list[int]:
        """Embedding table GF(p^s) -> GF(p^f) for s | f.

        Canonical when both moduli are Conway-compatible: generator maps to
        generator^((q_big-1)/(q_small-1)).  The returned list maps each int of
        self to its image in other.
        """
        if other.p != self.p or other.f % self.f:
            raise ValueError(f"no embedding {self} -> {other}")
        e = (other.q - 1) // (self.q - 1)
        tab = [0] * self.q
        for k in range(self.q - 1):
            tab[self._exp[k]] = other._exp[(k * e) % (other.q - 1)]
        return tab

    # -- internals -----------------------------------------------------------

    def _mul_poly(self, a: int, b: int) -> int:
        """Table-free multiplication (used once to build the tables)."""
        ca = list(self.coeffs(a))
        cb = list(self.coeffs(b))
        prod = _poly_mulmod(_poly_trim(ca), _poly_trim(cb), list(self.modulus), self.p)
        return self.from_coeffs(prod + [0] * (self.f - len(prod)))

    def _order_via_poly(self, a: int) -> int:
        n = self.q - 1
        order = n
        for ell in prime_factors(n):
            while order % ell == 0:
                x = a
                # compute a^(order/ell) by repeated squaring on ints
                e = order // ell
                acc = 1
                base = a
                while e:
                    if e & 1:
                        acc = self._mul_poly(acc, base)
                    base = self._mul_poly(base, base)
                    e >>= 1
                if acc == 1:
                    order //= ell
                else:
                    break
        return order

    def _build_tables(self):
        if self.f == 1:
            # least primitive root mod p
            gen = 1 if self.p == 2 else next(
                a for a in range(2, self.p) if self._order_via_poly(a) == self.p - 1)
        elif (self.p, self.f) in CONWAY:
            gen = self.p  # the class of x; Conway polynomials are primitive
            assert self._order_via_poly(gen) == self.q - 1
        else:
            gen = next(a for a in range(2, self.q)
                       if self._order_via_poly(a) == self.q - 1)
        self._gen = gen
        exp = [1] * (self.q - 1)
        for k in range(1, self.q - 1):
            exp[k] = self._mul_poly(exp[k - 1], gen)
        log = [0] * self.q
        for k, v in enumerate(exp):
            log[v] = k
        self._exp = exp
        self._log = log


@functools.lru_cache(maxsize=None)
def field(q: int, *, bound: int = DEFAULT_FIELD_BOUND) -> GF:
    """Cached field of order q (a prime power)."""
    p, f = factor_prime_power(q)
    return GF(p, f, bound=bound)


def field_make(p: int, f: int, *, bound: int = DEFAULT_FIELD_BOUND) -> GF:
    return GF(p, f, bound=bound)
