"""Exact arithmetic in GF(p^m).

Elements are integer codes: the coefficient vector (c_0, ..., c_{m-1}) of the
residue polynomial, packed base p (code = sum c_i p^i).  Code 0 is the additive
identity and code 1 the multiplicative identity.  The modulus is the
lexicographically smallest monic irreducible of degree m, comparing the
coefficient vectors (c_0, c_1, ...) as integer sequences, so a given (p, m)
always produces the same field.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np

from . import config
from .errors import FieldMismatch, GuardExceeded, InputError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, m) with q == p**m, or None if q is not a prime power."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            m = 0
            while q % p == 0:
                q //= p
                m += 1
            return (p, m) if q == 1 else None
    return None


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# Dense polynomials over GF(p), lists of ints, lowest degree first.

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], f: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        _trim(a)
    return a


def _pmulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return _pmod(prod, f, p)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _is_irreducible(f: list[int], p: int) -> bool:
    """Ben-Or test: f has no factor of degree d for every d <= deg f / 2."""
    m = len(f) - 1
    if m == 1:
        return True
    x = [0, 1]
    power = x
    for _ in range(m // 2):
        # power <- power^p mod f, i.e. x^(p^d)
        acc, base, e = [1], power, p
        while e:
            if e & 1:
                acc = _pmulmod(acc, base, f, p)
            base = _pmulmod(base, base, f, p)
            e >>= 1
        power = acc
        diff = list(power) + [0] * max(0, 2 - len(power))
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(f, _trim(diff), p)) != 1:
            return False
    return True


def canonical_modulus(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree m over GF(p)."""
    for low in itertools.product(range(p), repeat=m):
        f = list(low) + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class Field:
    """The finite field GF(p^m) with its canonical modulus.

    Immutable after construction; obtain instances through :func:`field_create`
    so that equal parameters share one object.
    """

    def __init__(self, p: int, m: int = 1):
        if not isinstance(p, int) or not is_prime(p):
            raise InputError(f"characteristic must be prime, got {p!r}")
        if not isinstance(m, int) or m < 1:
            raise InputError(f"extension degree must be a positive integer, got {m!r}")
        if p**m > config.FIELD_ORDER_MAX:
            raise GuardExceeded(f"field order {p}^{m} exceeds {config.FIELD_ORDER_MAX}")
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = canonical_modulus(p, m)
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._np_log = None

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and (self.p, self.m) == (other.p, other.m)

    def __hash__(self) -> int:
        return hash(("Field", self.p, self.m))

    def __reduce__(self):
        return (field_create, (self.p, self.m))

    def __call__(self, code: int) -> FieldElem:
        return FieldElem(self._check(code), self)

    def _check(self, code: int) -> int:
        if not 0 <= code < self.q:
            raise InputError(f"code {code} out of range for {self!r}")
        return code

    @property
    def zero(self) -> FieldElem:
        return FieldElem(0, self)

    @property
    def one(self) -> FieldElem:
        return FieldElem(1, self)

    def digits(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.m):
            code, d = divmod(code, self.p)
            out.append(d)
        return tuple(out)

    def from_digits(self, digits) -> int:
        code = 0
        for d in reversed(list(digits)):
            code = code * self.p + d % self.p
        return code

    # -- scalar arithmetic on codes -------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.m == 1:
            return (a + b) % p
        if p == 2:
            return a ^ b
        out, scale = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * scale
            a //= p
            b //= p
            scale *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if self.m == 1:
            return (-a) % p
        if p == 2:
            return a
        out, scale = 0, 1
        while a:
            out += ((-(a % p)) % p) * scale
            a //= p
            scale *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        exp, log = self._tables()
        return exp[(log[a] + log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"division by zero in {self!r}")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        exp, log = self._tables()
        return exp[(-log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self.m == 1:
            return pow(a, e, self.p)
        exp, log = self._tables()
        return exp[(log[a] * e) % (self.q - 1)]

    def _mul_slow(self, a: int, b: int) -> int:
        f = list(self.modulus)
        prod = _pmulmod(_trim(list(self.digits(a))), _trim(list(self.digits(b))), f, self.p)
        return self.from_digits(prod)

    def _tables(self) -> tuple[list[int], list[int]]:
        if self._exp is None:
            q, f, p = self.q, list(self.modulus), self.p
            order = q - 1
            factors = _prime_factors(order)
            gen = None
            for g in range(2, q):
                if all(self._pow_slow(g, order // r) != 1 for r in factors):
                    gen = g
                    break
            assert gen is not None
            g_poly = _trim(list(self.digits(gen)))
            exp = [0] * order
            log = [0] * q
            cur = [1]
            for i in range(order):
                code = self.from_digits(cur)
                exp[i] = code
                log[code] = i
                cur = _pmulmod(cur, g_poly, f, p)
            self._exp, self._log = exp, log
        return self._exp, self._log

    def _pow_slow(self, a: int, e: int) -> int:
        acc, base = 1, a
        while e:
            if e & 1:
                acc = self._mul_slow(acc, base)
            base = self._mul_slow(base, base)
            e >>= 1
        return acc

    # -- enumeration and tables -----------------------------------------------

    def codes(self) -> range:
        return range(self.q)

    def elements(self) -> list[FieldElem]:
        return [FieldElem(c, self) for c in range(self.q)]

    def add_table(self) -> tuple[tuple[int, ...], ...]:
        self._table_guard()
        return tuple(tuple(self.add(a, b) for b in range(self.q)) for a in range(self.q))

    def mul_table(self) -> tuple[tuple[int, ...], ...]:
        self._table_guard()
        return tuple(tuple(self.mul(a, b) for b in range(self.q)) for a in range(self.q))

    def _table_guard(self) -> None:
        if self.q > config.FIELD_TABLE_MAX:
            raise GuardExceeded(f"table for q={self.q} exceeds {config.FIELD_TABLE_MAX}")

    # -- vectorized arithmetic on integer arrays ------------------------------

    def np_add(self, a, b):
        p = self.p
        if self.m == 1:
            return (a + b) % p
        if p == 2:
            return np.bitwise_xor(a, b)
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        out = np.zeros(a.shape, dtype=np.int64)
        scale = 1
        for _ in range(self.m):
            out += (((a // scale) % p + (b // scale) % p) % p) * scale
            scale *= p
        return out

    def np_neg(self, a):
        p = self.p
        if self.m == 1:
            return (-a) % p
        if p == 2:
            return a
        a = np.asarray(a, dtype=np.int64)
        out = np.zeros(a.shape, dtype=np.int64)
        scale = 1
        for _ in range(self.m):
            out += ((-((a // scale) % p)) % p) * scale
            scale *= p
        return out

    def np_sub(self, a, b):
        return self.np_add(a, self.np_neg(b))

    def np_mul(self, a, b):
        if self.m == 1:
            return (a * b) % self.p
        if self._np_log is None:
            exp, log = self._tables()
            self._np_exp = np.array(exp, dtype=np.int64)
            self._np_log = np.array(log, dtype=np.int64)
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        out = self._np_exp[(self._np_log[a] + self._np_log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)


@functools.lru_cache(maxsize=None)
def field_create(p: int, m: int = 1) -> Field:
    """Canonical GF(p^m); repeated calls return the same object."""
    return Field(p, m)


def field_from_order(q: int) -> Field:
    pm = prime_power(q)
    if pm is None:
        raise InputError(f"{q} is not a prime power")
    return field_create(*pm)


@dataclass(frozen=True)
class FieldElem:
    value: int
    field: Field

    def _other(self, other: FieldElem) -> int:
        if not isinstance(other, FieldElem):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatch(f"cannot combine elements of {self.field!r} and {other.field!r}")
        return other.value

    def __add__(self, other):
        b = self._other(other)
        return b if b is NotImplemented else FieldElem(self.field.add(self.value, b), self.field)

    def __sub__(self, other):
        b = self._other(other)
        return b if b is NotImplemented else FieldElem(self.field.sub(self.value, b), self.field)

    def __mul__(self, other):
        b = self._other(other)
        return b if b is NotImplemented else FieldElem(self.field.mul(self.value, b), self.field)

    def __truediv__(self, other):
        b = self._other(other)
        return b if b is NotImplemented else FieldElem(self.field.div(self.value, b), self.field)

    def __neg__(self):
        return FieldElem(self.field.neg(self.value), self.field)

    def __pow__(self, e: int):
        return FieldElem(self.field.pow(self.value, e), self.field)

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.field!r}({self.value})"

    def __str__(self) -> str:
        if self.field.m == 1:
            return str(self.value)
        terms = []
        for i, c in reversed(list(enumerate(self.field.digits(self.value)))):
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(terms) or "0"


def field_arith(a: FieldElem, b: FieldElem, op: str) -> FieldElem:
    ops = {"add": FieldElem.__add__, "sub": FieldElem.__sub__,
           "mul": FieldElem.__mul__, "div": FieldElem.__truediv__}
    if op not in ops:
        raise InputError(f"unknown field operation {op!r}")
    if not isinstance(a, FieldElem) or not isinstance(b, FieldElem):
        raise InputError("field_arith expects FieldElem operands")
    return ops[op](a, b)


def field_enumerate(F: Field) -> list[FieldElem]:
    return F.elements()
