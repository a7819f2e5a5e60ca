"""Sparse multivariate polynomials over a finite field."""

from __future__ import annotations

from typing import Iterable, Mapping

from .errors import FieldMismatch, InexactDivision, InputError
from .field import Field

Exps = tuple[int, ...]


def _grlex(e: Exps) -> tuple:
    return (sum(e), e)


class MPoly:
    """Polynomial in x_1..x_n as a map from exponent vectors to nonzero codes."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: Field, nvars: int, terms: Mapping[Exps, int] | None = None):
        self.field = field
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            if len(e) != nvars:
                raise InputError(f"exponent vector {e} does not have {nvars} entries")
            if c:
                clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def constant(cls, field: Field, nvars: int, c: int) -> MPoly:
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, field: Field, nvars: int, i: int, power: int = 1) -> MPoly:
        e = [0] * nvars
        e[i] = power
        return cls(field, nvars, {tuple(e): 1})

    @classmethod
    def linear(cls, field: Field, coeffs: Iterable[int]) -> MPoly:
        coeffs = list(coeffs)
        n = len(coeffs)
        terms = {}
        for i, a in enumerate(coeffs):
            if a:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = a
        return cls(field, n, terms)

    def _same(self, other: MPoly) -> None:
        if not isinstance(other, MPoly):
            raise TypeError(f"expected MPoly, got {type(other).__name__}")
        if other.field != self.field or other.nvars != self.nvars:
            raise FieldMismatch("polynomials live in different rings")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (isinstance(other, MPoly) and self.field == other.field
                and self.nvars == other.nvars and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other: MPoly) -> MPoly:
        self._same(other)
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = F.add(out.get(e, 0), c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MPoly(F, self.nvars, out)

    def __neg__(self) -> MPoly:
        F = self.field
        return MPoly(F, self.nvars, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other: MPoly) -> MPoly:
        return self + (-other)

    def scale(self, c: int) -> MPoly:
        F = self.field
        if c == 0:
            return MPoly(F, self.nvars)
        return MPoly(F, self.nvars, {e: F.mul(c, v) for e, v in self.terms.items()})

    def __mul__(self, other: MPoly) -> MPoly:
        self._same(other)
        F = self.field
        out: dict[Exps, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = F.add(out.get(e, 0), F.mul(c1, c2))
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MPoly(F, self.nvars, out)

    def __pow__(self, k: int) -> MPoly:
        out = MPoly.constant(self.field, self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def leading(self) -> tuple[Exps, int]:
        e = max(self.terms, key=_grlex)
        return e, self.terms[e]

    def sorted_terms(self) -> list[tuple[Exps, int]]:
        """Terms in decreasing graded lexicographic order."""
        return sorted(self.terms.items(), key=lambda kv: _grlex(kv[0]), reverse=True)

    def divmod(self, divisor: MPoly) -> tuple[MPoly, MPoly]:
        """Division by one polynomial under graded lex order."""
        self._same(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        F = self.field
        lt_e, lt_c = divisor.leading()
        inv = F.inv(lt_c)
        rem = MPoly(F, self.nvars, self.terms)
        quot: dict[Exps, int] = {}
        out_rem: dict[Exps, int] = {}
        while rem.terms:
            e, c = rem.leading()
            if all(a >= b for a, b in zip(e, lt_e)):
                qe = tuple(a - b for a, b in zip(e, lt_e))
                qc = F.mul(c, inv)
                quot[qe] = F.add(quot.get(qe, 0), qc)
                rem = rem - MPoly(F, self.nvars, {qe: qc}) * divisor
            else:
                out_rem[e] = c
                del rem.terms[e]
        return MPoly(F, self.nvars, quot), MPoly(F, self.nvars, out_rem)

    def exact_divide(self, divisor: MPoly) -> MPoly:
        quot, rem = self.divmod(divisor)
        if rem:
            raise InexactDivision(f"division leaves remainder {rem}", remainder=rem)
        assert quot * divisor == self
        return quot

    def substitute_linear(self, var: int, form: MPoly) -> MPoly:
        """Replace x_var by a polynomial (typically a linear form without x_var)."""
        self._same(form)
        F = self.field
        groups: dict[int, dict[Exps, int]] = {}
        for e, c in self.terms.items():
            rest = list(e)
            k = rest[var]
            rest[var] = 0
            groups.setdefault(k, {})[tuple(rest)] = c
        out = MPoly(F, self.nvars)
        power = MPoly.constant(F, self.nvars, 1)
        for k in range(max(groups, default=-1) + 1):
            if k in groups:
                out = out + MPoly(F, self.nvars, groups[k]) * power
            power = power * form
        return out

    def vanishes_on(self, normal: Iterable[int]) -> bool:
        """True iff the polynomial lies in the ideal of the linear form `normal`.

        The form's first nonzero variable is solved for and substituted; the
        result is zero exactly when the linear form divides the polynomial.
        """
        F = self.field
        normal = list(normal)
        p = next(i for i, a in enumerate(normal) if a)
        inv = F.inv(normal[p])
        solved = [0 if j == p else F.neg(F.mul(inv, a)) for j, a in enumerate(normal)]
        return self.substitute_linear(p, MPoly.linear(F, solved)).is_zero()

    def evaluate(self, point: Iterable[int]) -> int:
        F = self.field
        point = list(point)
        acc = 0
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = F.mul(term, F.pow(x, k))
            acc = F.add(acc, term)
        return acc

    def permute(self, perm: list[int]) -> MPoly:
        """Rename x_i to x_{perm[i]}."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * self.nvars
            for i, k in enumerate(e):
                ne[perm[i]] = k
            out[tuple(ne)] = c
        return MPoly(self.field, self.nvars, out)

    def to_json(self) -> list:
        return [[list(e), c] for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, field: Field, nvars: int, data) -> MPoly:
        return cls(field, nvars, {tuple(e): c for e, c in data})

    def __repr__(self) -> str:
        return f"MPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            coef = str(self.field(c))
            if not mono:
                parts.append(coef)
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"({coef})*{mono}" if self.field.m > 1 else f"{coef}*{mono}")
        return " + ".join(parts)


def mpoly_arith(a: MPoly, b: MPoly, op: str) -> MPoly:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "exact_divide":
        return a.exact_divide(b)
    raise InputError(f"unknown polynomial operation {op!r}")


def determinant(matrix: list[list[MPoly]]) -> MPoly:
    """Cofactor expansion along the first row."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise InputError("determinant needs a square matrix")
    if n == 1:
        return matrix[0][0]
    first = matrix[0][0]
    if n == 2:
        return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    out = MPoly(first.field, first.nvars)
    for j in range(n):
        entry = matrix[0][j]
        if entry.is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = entry * determinant(minor)
        out = out - term if j % 2 else out + term
    return out
