from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from qgraph.arrangement import arrangement_all, build_central, empty_arrangement, graph_characteristic_polynomial
from qgraph.errors import GuardExceeded, InputError
from qgraph.field import field_create, field_from_order
from qgraph.graph import path_graph
from qgraph.intpoly import IntPolynomial
from qgraph.qcomb import (
    expand_q_falling,
    q_binomial,
    q_falling,
    q_int,
    q_stirling,
    subspace_count_oracle,
    subspace_counts_oracle,
)
from qgraph.subspaces import count_rref

t = IntPolynomial.t()


def test_small_values():
    assert q_binomial(2, 1, 2) == 3
    assert q_int(3, 2) == 7
    assert q_falling(2, 2) == t**2 - 3 * t + 2
    assert q_falling(0, 5) == IntPolynomial([1])


def test_range_errors():
    with pytest.raises(InputError):
        q_binomial(2, 3, 2)
    with pytest.raises(InputError):
        q_int(2, 1)


@pytest.mark.parametrize("q", [2, 3, 4])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_q_binomial_counts_subspaces(q, n):
    counts = count_rref(field_from_order(q), n)
    assert counts == [q_binomial(n, i, q) for i in range(n + 1)]


def test_stirling_values():
    for q in (2, 3, 7):
        assert q_stirling(2, 1, q) == 1
        assert all(q_stirling(n, n, q) == 1 for n in range(6))
    assert [q_stirling(3, i, 2) for i in range(4)] == [0, 1, 4, 1]


def test_expand_examples():
    assert expand_q_falling(t**2, 2).coeffs == (1, 3, 1)
    assert expand_q_falling(q_falling(3, 5), 5).coeffs == (0, 0, 0, 1)
    # (t-1)(t-2)^2 - (t-1)(t-2)(t-4) = 2(t-1)(t-2)
    assert expand_q_falling((t - 1) * (t - 2) ** 2, 2).coeffs == (0, 0, 2, 1)


def test_subspace_oracle_examples():
    F = field_create(2)
    assert subspace_count_oracle(arrangement_all(F, 2), 1) == 0
    assert subspace_count_oracle(empty_arrangement(F, 2), 1) == 3
    A = build_central(path_graph(3), F)
    chi = graph_characteristic_polynomial(path_graph(3), F)
    assert subspace_count_oracle(A, 2) == expand_q_falling(chi, 2)[2] == 2


def test_subspace_oracle_guard():
    A = empty_arrangement(field_create(2), 21)
    with pytest.raises(GuardExceeded):
        subspace_counts_oracle(A)


@given(st.lists(st.integers(-1000, 1000), max_size=9), st.sampled_from([2, 3, 4, 5]))
def test_expansion_round_trip(coeffs, q):
    P = IntPolynomial(coeffs)
    assert expand_q_falling(P, q).reconstruct() == P


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_power_identities(q):
    for ell in range(9):
        lhs = sum((q_binomial(ell, i, q) * q_falling(i, q) for i in range(ell + 1)), IntPolynomial())
        assert lhs == t**ell
        lhs = sum(((q - 1) ** (ell - i) * q_stirling(ell, i, q) * q_falling(i, q) for i in range(ell + 1)),
                  IntPolynomial())
        assert lhs == (t - 1) ** ell
