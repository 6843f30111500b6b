"""Finite fields F_{p^k} and extension towers over them.

Field elements are plain Python ints.  For an extension ``F = B[z]/(mu)`` of a
base field ``B`` of order ``b`` the element ``c_0 + c_1 z + ... + c_{k-1} z^{k-1}``
is encoded as ``c_0 + c_1 b + ... + c_{k-1} b^{k-1}``.  Elements of ``B`` are
therefore encoded by the same ints inside ``F``, so coefficients can be moved
up a tower without conversion.

Small extension fields (order <= ``TABLE_LIMIT``) use exp/log/Zech tables;
larger ones fall back to coefficient-vector arithmetic.
"""

from __future__ import annotations

import functools

TABLE_LIMIT = 1 << 17


class FieldError(ValueError):
    """Raised for invalid field parameters or elements."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def factor_int(n: int) -> dict[int, int]:
    """Trial-division factorization of a positive integer."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class FiniteField:
    """A finite field, either prime or a simple extension of another field.

    Use :func:`prime_field` and :meth:`extension` rather than the constructor;
    both are cached so equal fields are the same object.
    """

    def __init__(self, p: int, base: "FiniteField | None" = None, modulus=None):
        self.p = p
        self.base = base
        if base is None:
            self.degree = 1
            self.order = p
            self.absdeg = 1
            self.modulus = None
        else:
            modulus = tuple(modulus)
            if modulus[-1] != 1:
                raise FieldError("extension modulus must be monic")
            self.modulus = modulus
            self.degree = len(modulus) - 1
            self.order = base.order ** self.degree
            self.absdeg = base.absdeg * self.degree
        self.is_prime = base is None
        self.minus_one = p - 1
        self._exp = self._log = self._zech = None
        if not self.is_prime and self.order <= TABLE_LIMIT:
            self._build_tables()

    # -- encoding -------------------------------------------------------
    def to_vec(self, a: int) -> list[int]:
        """Coordinates of ``a`` over the immediate base field."""
        b = self.base.order
        out = []
        for _ in range(self.degree):
            a, r = divmod(a, b)
            out.append(r)
        return out

    def from_vec(self, v) -> int:
        b = self.base.order
        a = 0
        for c in reversed(list(v)):
            a = a * b + c
        return a

    def prime_coords(self, a: int) -> list[int]:
        """Coordinates of ``a`` over the prime field (length ``absdeg``)."""
        return [(a // self.p**i) % self.p for i in range(self.absdeg)]

    def from_prime_coords(self, v) -> int:
        a = 0
        for c in reversed(list(v)):
            a = a * self.p + (c % self.p)
        return a

    # -- slow vector arithmetic (used to build tables and for big fields) --
    def _vmul(self, a: int, b: int) -> int:
        B = self.base
        va, vb = self.to_vec(a), self.to_vec(b)
        k = self.degree
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(va):
            if x:
                for j, y in enumerate(vb):
                    if y:
                        prod[i + j] = B.add(prod[i + j], B.mul(x, y))
        mod = self.modulus
        for i in range(2 * k - 2, k - 1, -1):
            c = prod[i]
            if c:
                for j in range(k):
                    if mod[j]:
                        prod[i - k + j] = B.sub(prod[i - k + j], B.mul(c, mod[j]))
        return self.from_vec(prod[:k])

    def _vadd(self, a: int, b: int) -> int:
        B = self.base
        return self.from_vec(B.add(x, y) for x, y in zip(self.to_vec(a), self.to_vec(b)))

    def _vneg(self, a: int) -> int:
        B = self.base
        return self.from_vec(B.neg(x) for x in self.to_vec(a))

    def _vpow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._vmul(r, a)
            a = self._vmul(a, a)
            e >>= 1
        return r

    def _build_tables(self):
        n = self.order - 1
        primes = list(factor_int(n)) if n > 1 else []
        g = None
        for cand in range(2 if self.order > 2 else 1, self.order):
            if all(self._vpow(cand, n // r) != 1 for r in primes):
                g = cand
                break
        if g is None:  # order 2 cannot happen for extensions
            raise FieldError("no primitive element found")
        exp = [0] * (2 * n + 2)
        log = [0] * self.order
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._vmul(x, g)
        for i in range(n, 2 * n + 2):
            exp[i] = exp[i - n]
        zech = [0] * n
        for i in range(n):
            s = self._vadd(1, exp[i])
            zech[i] = -1 if s == 0 else log[s]
        self._exp, self._log, self._zech = exp, log, zech
        self._n = n
        self._half = n // 2 if self.p != 2 else 0
        self.generator = g

    # -- arithmetic ------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.is_prime:
            return (a + b) % self.p
        if self._exp is None:
            return self._vadd(a, b)
        if a == 0:
            return b
        if b == 0:
            return a
        la, lb = self._log[a], self._log[b]
        d = lb - la
        if d < 0:
            d += self._n
        z = self._zech[d]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a: int) -> int:
        if self.is_prime:
            return -a % self.p
        if a == 0 or self.p == 2:
            return a
        if self._exp is None:
            return self._vneg(a)
        la = self._log[a] + self._half
        return self._exp[la]

    def sub(self, a: int, b: int) -> int:
        if self.is_prime:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.is_prime:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if self._exp is None:
            return self._vmul(a, b)
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in finite field")
        if self.is_prime:
            return pow(a, self.p - 2, self.p)
        if self._exp is None:
            return self._vpow(a, self.order - 2)
        return self._exp[self._n - self._log[a]]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if self.is_prime:
            return pow(a, e, self.p)
        if a == 0:
            return 0 if e else 1
        if self._exp is None:
            return self._vpow(a, e)
        return self._exp[(self._log[a] * e) % self._n]

    def frobenius(self, a: int, times: int = 1) -> int:
        """``a ** (p ** (absdeg_base * times))`` relative to the immediate base."""
        return self.pow(a, self.base.order ** times if self.base else self.p**times)

    def is_square(self, a: int) -> bool:
        if a == 0 or self.p == 2:
            return True
        if self.is_prime:
            return pow(a, (self.p - 1) // 2, self.p) == 1
        if self._exp is not None:
            return self._log[a] % 2 == 0
        return self._vpow(a, (self.order - 1) // 2) == 1

    def trace(self, a: int) -> int:
        """Absolute trace down to the prime field."""
        s = 0
        t = a
        for _ in range(self.absdeg):
            s = self.add(s, t)
            t = self.pow(t, self.p)
        return s

    def elements(self):
        return range(self.order)

    def element(self, v) -> int:
        """Build an element from an int or a prime-field coordinate list."""
        if isinstance(v, int):
            if self.is_prime:
                return v % self.p
            if not 0 <= v < self.order:
                raise FieldError(f"{v} is not an element encoding of F_{self.order}")
            return v
        return self.from_prime_coords(v)

    def prime(self) -> "FiniteField":
        f = self
        while f.base is not None:
            f = f.base
        return f

    def contains(self, other: "FiniteField") -> bool:
        f = self
        while f is not None:
            if f is other:
                return True
            f = f.base
        return False

    @functools.lru_cache(maxsize=None)
    def extension(self, e: int) -> "FiniteField":
        """The degree-``e`` extension over ``self`` with the least monic irreducible modulus."""
        if e == 1:
            return self
        from .factor import least_irreducible

        return FiniteField(self.p, self, least_irreducible(self, e))

    def __repr__(self):
        if self.is_prime:
            return f"GF({self.p})"
        return f"GF({self.order}; over {self.base!r})"

    def __reduce__(self):
        if self.is_prime:
            return (prime_field, (self.p,))
        return (_rebuild_extension, (self.base, self.degree))


def _rebuild_extension(base, e):
    return base.extension(e)


@functools.lru_cache(maxsize=None)
def prime_field(p: int) -> FiniteField:
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    return FiniteField(p)


def gf(p: int, k: int = 1) -> FiniteField:
    """The field F_{p^k} with the deterministic (least) modulus."""
    if k < 1:
        raise FieldError("extension degree must be positive")
    return prime_field(p).extension(k)
