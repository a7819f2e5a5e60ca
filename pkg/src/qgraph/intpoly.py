"""Univariate polynomials in t with exact integer coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

JSON_SAFE_INT = 2**53


class IntPolynomial:
    """Immutable polynomial; ``coeffs[d]`` is the coefficient of t^d.

    Trailing zeros are stripped, so the zero polynomial has ``coeffs == ()``
    and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = []
        for c in coeffs:
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ValueError(f"non-integer coefficient {c}")
                c = c.numerator
            cs.append(int(c))
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    @classmethod
    def constant(cls, c: int) -> IntPolynomial:
        return cls([c])

    @classmethod
    def t(cls) -> IntPolynomial:
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> IntPolynomial:
        out = cls([1])
        for r in roots:
            out = out * cls([-r, 1])
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.leading() == 1

    def __getitem__(self, d: int) -> int:
        return self.coeffs[d] if 0 <= d < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPolynomial([other])
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def _coerce(self, other) -> IntPolynomial:
        if isinstance(other, IntPolynomial):
            return other
        if isinstance(other, int):
            return IntPolynomial([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial([self[d] + other[d] for d in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out, base = IntPolynomial([1]), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def divmod_monic(self, divisor: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
        """Division by a monic polynomial, exact over the integers."""
        if not divisor.is_monic():
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        dd = divisor.degree
        quot = [0] * max(0, len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c:
                quot[i - dd] = c
                for j, b in enumerate(divisor.coeffs):
                    rem[i - dd + j] -= c * b
        return IntPolynomial(quot), IntPolynomial(rem[:dd])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def scale_coefficients(self, factor_by_degree) -> IntPolynomial:
        return IntPolynomial([c * factor_by_degree(d) for d, c in enumerate(self.coeffs)])

    def substitute(self, inner: list) -> list:
        """Compose with a polynomial given as a coefficient list (any exact type)."""
        acc: list = [0]
        for c in reversed(self.coeffs):
            prod = [0] * (len(acc) + len(inner) - 1)
            for i, a in enumerate(acc):
                for j, b in enumerate(inner):
                    prod[i + j] += a * b
            prod[0] += c
            acc = prod
        while len(acc) > 1 and acc[-1] == 0:
            acc.pop()
        return acc

    def shift(self, s: int) -> IntPolynomial:
        """The polynomial P(t + s)."""
        return IntPolynomial(self.substitute([s, 1]))

    def integer_roots(self) -> list[int]:
        """Integer roots with multiplicity (exact, by divisor search)."""
        roots: list[int] = []
        poly = self
        while poly.degree > 0 and poly[0] == 0:
            roots.append(0)
            poly = IntPolynomial(poly.coeffs[1:])
        changed = True
        while changed and poly.degree > 0:
            changed = False
            c0 = abs(poly[0])
            for r in _divisors(c0):
                for cand in (r, -r):
                    if poly(cand) == 0:
                        roots.append(cand)
                        poly, _ = poly.divmod_monic(IntPolynomial([-cand, 1]))
                        changed = True
                        break
                if changed:
                    break
        return sorted(roots)

    def factors_into_integer_linear(self) -> bool:
        """True iff a monic polynomial is a product of (t - a) with integer a."""
        if not self.is_monic():
            return False
        return len(self.integer_roots()) == self.degree

    def to_json(self) -> list:
        return [c if abs(c) < JSON_SAFE_INT else str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: list) -> IntPolynomial:
        return cls([int(c) for c in data])

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        return format_poly(self.coeffs, "t")


def _divisors(n: int) -> list[int]:
    if n == 0:
        return [0]
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def format_poly(coeffs, var: str) -> str:
    terms = []
    for d in range(len(coeffs) - 1, -1, -1):
        c = coeffs[d]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if d == 0:
            body = str(a)
        else:
            mono = var if d == 1 else f"{var}^{d}"
            body = mono if a == 1 else f"{a}*{mono}"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def falling_factorial(i: int) -> IntPolynomial:
    """t(t-1)...(t-i+1); the empty product for i = 0."""
    return IntPolynomial.from_roots(range(i))


def falling_factorial_expansion(poly: IntPolynomial) -> list[int]:
    """Coefficients a_i with poly = sum a_i * t(t-1)...(t-i+1)."""
    rem = poly
    out = [0] * (max(poly.degree, 0) + 1)
    for i in range(poly.degree, -1, -1):
        c = rem[i]
        out[i] = c
        if c:
            rem = rem - c * falling_factorial(i)
    assert not rem.coeffs
    return out
