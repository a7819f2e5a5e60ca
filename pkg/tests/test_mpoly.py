from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from qgraph.errors import FieldMismatch, InexactDivision, InputError
from qgraph.field import field_create
from qgraph.mpoly import MPoly, determinant, mpoly_arith

F2 = field_create(2)
F3 = field_create(3)


def x(F, i, n=2, k=1):
    return MPoly.var(F, n, i, k)


def test_exact_divide_example():
    x1, x2 = x(F2, 0), x(F2, 1)
    a = x1 * x2 * x2 + x2 * x1 * x1
    assert mpoly_arith(a, x1, "exact_divide") == x2 * x2 + x1 * x2


def test_multiply_by_one():
    a = x(F3, 0) * x(F3, 1) + MPoly.constant(F3, 2, 2)
    assert mpoly_arith(a, MPoly.constant(F3, 2, 1), "mul") == a


def test_frobenius_square():
    s = x(F2, 0) + x(F2, 1)
    assert s * s == x(F2, 0, k=2) + x(F2, 1, k=2)
    assert (x(F3, 0) + x(F3, 1)) ** 3 == x(F3, 0, k=3) + x(F3, 1, k=3)


def test_inexact_division_reports_remainder():
    a = x(F3, 0) * x(F3, 0) + x(F3, 1)
    with pytest.raises(InexactDivision) as info:
        a.exact_divide(x(F3, 0))
    assert info.value.remainder == x(F3, 1)
    with pytest.raises(ZeroDivisionError):
        a.exact_divide(MPoly(F3, 2))


def test_ring_mismatch():
    with pytest.raises(FieldMismatch):
        x(F2, 0) + x(F3, 0)
    with pytest.raises(FieldMismatch):
        x(F2, 0) + MPoly.var(F2, 3, 0)
    with pytest.raises(InputError):
        mpoly_arith(x(F2, 0), x(F2, 1), "pow")


def test_grlex_serialization():
    x1, x2 = x(F3, 0), x(F3, 1)
    p = x1 + x2 * x2 + x1 * x2
    assert p.to_json() == [[[1, 1], 1], [[0, 2], 1], [[1, 0], 1]]
    assert MPoly.from_json(F3, 2, p.to_json()) == p


def test_substitution_and_vanishing():
    x1, x2 = x(F3, 0), x(F3, 1)
    p = x1 * x1 - x2 * x2
    assert p.vanishes_on((1, 2))  # x1 = x2
    assert p.vanishes_on((1, 1))  # x1 = -x2
    assert not p.vanishes_on((1, 0))
    assert p.substitute_linear(0, x2) == MPoly(F3, 2)


def test_evaluate_and_permute():
    x1, x2 = x(F3, 0), x(F3, 1)
    p = x1 * x2 * x2 + MPoly.constant(F3, 2, 1)
    assert p.evaluate([2, 2]) == F3.add(F3.mul(2, 1), 1)
    assert p.permute([1, 0]) == x2 * x1 * x1 + MPoly.constant(F3, 2, 1)


def test_determinant():
    x1, x2 = x(F3, 0), x(F3, 1)
    one = MPoly.constant(F3, 2, 1)
    zero = MPoly(F3, 2)
    assert determinant([[x1, zero], [zero, x2]]) == x1 * x2
    assert determinant([[one, x1, x2], [zero, one, x1], [zero, zero, one]]) == one
    with pytest.raises(InputError):
        determinant([[x1, x2]])


@st.composite
def sparse(draw, F, n=3):
    terms = draw(st.dictionaries(st.tuples(*[st.integers(0, 3)] * n), st.integers(1, F.q - 1), max_size=5))
    return MPoly(F, n, terms)


@given(st.data(), st.sampled_from([2, 3, 5]))
def test_exact_divide_round_trip(data, p):
    F = field_create(p)
    a = data.draw(sparse(F))
    b = data.draw(sparse(F))
    if b.is_zero():
        b = MPoly.constant(F, 3, 1)
    assert (a * b).exact_divide(b) == a


@given(st.data())
def test_ring_laws(data):
    a, b, c = (data.draw(sparse(F3)) for _ in range(3))
    assert a * (b + c) == a * b + a * c
    assert (a - b) + b == a
    assert a * b == b * a
