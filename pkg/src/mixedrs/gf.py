"""Finite fields GF(p^m) and their quadratic extensions GF(q^2).

Elements are plain integers. A base-field element with coefficient vector
(c_0, ..., c_{m-1}) over GF(p) is encoded as sum(c_i * p**i). An element
a + b*beta of the quadratic extension is encoded as a + q*b, where beta is
a root of the extension modulus.

Moduli are chosen deterministically: the lexicographically smallest monic
irreducible polynomial of the required degree.
"""

from __future__ import annotations

import functools
import re

import numpy as np

MAX_ORDER = 1 << 16
_TABLE_LIMIT = 256


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def parse_field(descriptor: str) -> tuple[int, int]:
    """Parse a field descriptor such as ``"2^3"`` or ``"7"`` into (p, m)."""
    match = re.fullmatch(r"\s*(\d+)\s*(?:\^\s*(\d+))?\s*", descriptor)
    if not match:
        raise ValueError(f"bad field descriptor {descriptor!r}, expected 'p^m'")
    p = int(match.group(1))
    m = int(match.group(2) or 1)
    return p, m


# --- polynomials over GF(p), coefficient lists low -> high -------------------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = _poly_trim(list(a))
    inv_lead = pow(b[-1], p - 2, p)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * bc) % p
        _poly_trim(a)
    return a


def _monic_polys(degree: int, p: int):
    """Monic polynomials of the given degree, in ascending order of their
    lower coefficients read as a base-p number (c_{d-1} most significant)."""
    for v in range(p ** degree):
        coeffs = []
        for _ in range(degree):
            coeffs.append(v % p)
            v //= p
        yield coeffs + [1]


def _is_irreducible_gfp(poly: list[int], p: int) -> bool:
    degree = len(poly) - 1
    if degree <= 1:
        return True
    for d in range(1, degree // 2 + 1):
        for divisor in _monic_polys(d, p):
            if not _poly_mod(poly, divisor, p):
                return False
    return True


def _smallest_irreducible(m: int, p: int) -> tuple[int, ...]:
    for poly in _monic_polys(m, p):
        if _is_irreducible_gfp(poly, p):
            return tuple(poly)
    raise AssertionError("irreducible polynomials exist in every degree")


class BaseField:
    """GF(q) with q = p^m, elements encoded as integers 0..q-1."""

    def __init__(self, p: int, m: int = 1):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if m < 1:
            raise ValueError("extension degree m must be >= 1")
        if p ** m > MAX_ORDER:
            raise ValueError(f"field order {p}^{m} exceeds cap {MAX_ORDER}")
        self.p = p
        self.m = m
        self.q = p ** m
        self.modulus = _smallest_irreducible(m, p)
        self._build_log_tables()
        self._tables = self._build_tables() if self.q <= _TABLE_LIMIT else None
        self._add_rows = self._tables["add"].tolist() if self._tables is not None else None

    def __repr__(self):
        return f"GF({self.p}^{self.m})"

    def __reduce__(self):
        return (build_base_field, (self.p, self.m))

    @property
    def descriptor(self) -> str:
        return f"{self.p}^{self.m}"

    # -- setup -----------------------------------------------------------

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.m):
            out.append(a % self.p)
            a //= self.p
        return out

    def _undigits(self, digits) -> int:
        v = 0
        for c in reversed(digits):
            v = v * self.p + c
        return v

    def _slow_mul(self, a: int, b: int) -> int:
        p = self.p
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        rem = _poly_mod(prod, list(self.modulus), p)
        return self._undigits(rem + [0] * (self.m - len(rem)))

    def _slow_pow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._slow_mul(result, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return result

    def _build_log_tables(self):
        q = self.q
        order = q - 1
        factors = _prime_factors(order) if order > 1 else []
        gen = None
        for g in range(1, q):
            if all(self._slow_pow(g, order // r) != 1 for r in factors):
                gen = g
                break
        self.generator = gen
        exp = [0] * (2 * order)
        log = [0] * q
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, gen)
        for i in range(order, 2 * order):
            exp[i] = exp[i - order]
        self._exp = exp
        self._log = log
        self._exp_np = np.array(exp, dtype=np.int64)
        self._log_np = np.array(log, dtype=np.int64)

    def _build_tables(self):
        q = self.q
        idx = np.arange(q, dtype=np.int64)
        add = self._vadd_generic(idx[:, None], idx[None, :])
        neg = self._vneg_generic(idx)
        sub = add[:, neg]
        mul = self._vmul_generic(idx[:, None], idx[None, :])
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = self._exp_np[(q - 1 - self._log_np[1:]) % (q - 1)]
        return {"add": add, "sub": sub, "mul": mul, "neg": neg, "inv": inv}

    # -- scalar arithmetic -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add_rows is not None:
            return self._add_rows[a][b]
        return self._undigits([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self._undigits([(-x) % self.p for x in self._digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    # -- vectorized arithmetic on integer arrays ---------------------------

    def _vadd_generic(self, a, b):
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        out = np.zeros(a.shape, dtype=np.int64)
        scale = 1
        for _ in range(self.m):
            out += ((a // scale % self.p + b // scale % self.p) % self.p) * scale
            scale *= self.p
        return out

    def _vneg_generic(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.m == 1:
            return (-a) % self.p
        if self.p == 2:
            return a.copy()
        out = np.zeros(a.shape, dtype=np.int64)
        scale = 1
        for _ in range(self.m):
            out += ((-(a // scale % self.p)) % self.p) * scale
            scale *= self.p
        return out

    def _vmul_generic(self, a, b):
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        out = self._exp_np[self._log_np[a] + self._log_np[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def vadd(self, a, b):
        if self._tables is not None:
            return self._tables["add"][a, b]
        return self._vadd_generic(a, b)

    def vsub(self, a, b):
        if self._tables is not None:
            return self._tables["sub"][a, b]
        return self._vadd_generic(a, self._vneg_generic(b))

    def vmul(self, a, b):
        if self._tables is not None:
            return self._tables["mul"][a, b]
        return self._vmul_generic(a, b)

    def vinv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self._tables is not None:
            return self._tables["inv"][a]
        return self._exp_np[(self.q - 1 - self._log_np[a]) % (self.q - 1)]

    def elements(self) -> range:
        return range(self.q)


class QuadraticExtension:
    """GF(q^2) = GF(q)[x] / (x^2 + c1*x + c0); element a + b*beta encoded as a + q*b."""

    def __init__(self, base: BaseField):
        self.base = base
        self.q = base.q
        self.order = base.q * base.q
        self.c1, self.c0 = self._smallest_modulus()

    def __repr__(self):
        return f"GF({self.q}^2) over {self.base!r}"

    def __reduce__(self):
        return (build_quadratic_extension, (self.base,))

    def _smallest_modulus(self) -> tuple[int, int]:
        F = self.base
        xs = np.arange(F.q, dtype=np.int64)
        squares = F.vmul(xs, xs)
        for c1 in range(F.q):
            lin = F.vadd(squares, F.vmul(xs, np.full_like(xs, c1)))
            for c0 in range(F.q):
                values = F.vadd(lin, np.full_like(xs, c0))
                if not np.any(values == 0):
                    return c1, c0
        raise AssertionError("an irreducible quadratic exists over every finite field")

    @property
    def modulus(self) -> tuple[int, int, int]:
        """Coefficients (c0, c1, 1) of the modulus, low degree first."""
        return (self.c0, self.c1, 1)

    def components(self, z: int) -> tuple[int, int]:
        return z % self.q, z // self.q

    def recompose(self, a: int, b: int) -> int:
        return a + self.q * b

    def embed(self, a: int) -> int:
        return a

    def in_base(self, z: int) -> bool:
        return z < self.q

    def add(self, z: int, w: int) -> int:
        F = self.base
        a, b = self.components(z)
        c, d = self.components(w)
        return F.add(a, c) + self.q * F.add(b, d)

    def neg(self, z: int) -> int:
        a, b = self.components(z)
        return self.base.neg(a) + self.q * self.base.neg(b)

    def sub(self, z: int, w: int) -> int:
        return self.add(z, self.neg(w))

    def mul(self, z: int, w: int) -> int:
        # (a + b beta)(c + d beta) with beta^2 = -c1 beta - c0
        F = self.base
        a, b = self.components(z)
        c, d = self.components(w)
        bd = F.mul(b, d)
        low = F.sub(F.mul(a, c), F.mul(bd, self.c0))
        high = F.sub(F.add(F.mul(a, d), F.mul(b, c)), F.mul(bd, self.c1))
        return low + self.q * high

    def pow(self, z: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(z), -e)
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, z)
            z = self.mul(z, z)
            e >>= 1
        return result

    def frobenius(self, z: int) -> int:
        return self.pow(z, self.q)

    def norm(self, z: int) -> int:
        n = self.mul(z, self.frobenius(z))
        assert n < self.q
        return n

    def inv(self, z: int) -> int:
        if z == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self.mul(self.frobenius(z), self.base.inv(self.norm(z)))

    def div(self, z: int, w: int) -> int:
        return self.mul(z, self.inv(w))

    def elements(self) -> range:
        return range(self.order)

    def iter_representatives(self):
        """Yield conjugate-pair representatives in ascending order."""
        for z in range(self.q, self.order):
            if z < self.frobenius(z):
                yield z


@functools.lru_cache(maxsize=None)
def build_base_field(p: int, m: int = 1) -> BaseField:
    return BaseField(p, m)


@functools.lru_cache(maxsize=None)
def build_quadratic_extension(base: BaseField) -> QuadraticExtension:
    return QuadraticExtension(base)


def field_from_descriptor(descriptor: str) -> BaseField:
    return build_base_field(*parse_field(descriptor))


@functools.lru_cache(maxsize=None)
def conjugate_pair_representatives(ext: QuadraticExtension) -> tuple[int, ...]:
    """One element per Frobenius orbit of GF(q^2) minus GF(q), the smaller encoding, ascending."""
    return tuple(ext.iter_representatives())
