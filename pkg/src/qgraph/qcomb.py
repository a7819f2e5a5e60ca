"""q-integers, Gaussian binomials, q-Stirling numbers and the q-falling basis."""

from __future__ import annotations

import functools
from dataclasses import dataclass

from . import config
from .errors import GuardExceeded, InputError
from .intpoly import IntPolynomial
from .subspaces import count_rref, hyperplane_predicate


def _check_q(q: int) -> None:
    if not isinstance(q, int) or q < 2:
        raise InputError(f"q must be an integer >= 2, got {q!r}")


def q_int(k: int, q: int) -> int:
    """[k]_q = 1 + q + ... + q^(k-1)."""
    _check_q(q)
    if k < 0:
        raise InputError("k must be non-negative")
    return (q**k - 1) // (q - 1)


def q_binomial(n: int, i: int, q: int) -> int:
    """Number of i-dimensional subspaces of F_q^n."""
    _check_q(q)
    if not 0 <= i <= n:
        raise InputError(f"need 0 <= i <= n, got i={i}, n={n}")
    num = den = 1
    for j in range(i):
        num *= q ** (n - j) - 1
        den *= q ** (j + 1) - 1
    value, rem = divmod(num, den)
    assert rem == 0
    return value


@functools.lru_cache(maxsize=None)
def q_falling(i: int, q: int) -> IntPolynomial:
    """(t - 1)(t - q)...(t - q^(i-1)); equal to 1 for i = 0."""
    _check_q(q)
    if i < 0:
        raise InputError("i must be non-negative")
    return IntPolynomial.from_roots(q**j for j in range(i))


@functools.lru_cache(maxsize=None)
def q_stirling(n: int, i: int, q: int) -> int:
    """S_q(n, i) from S_q(n, i) = S_q(n-1, i-1) + [i]_q S_q(n-1, i)."""
    if n < 0 or i < 0:
        raise InputError("q_stirling needs n, i >= 0")
    if n == 0:
        return 1 if i == 0 else 0
    if i == 0:
        return 0
    return q_stirling(n - 1, i - 1, q) + q_int(i, q) * q_stirling(n - 1, i, q)


@dataclass(frozen=True)
class QFallingExpansion:
    q: int
    coeffs: tuple[int, ...]

    def reconstruct(self) -> IntPolynomial:
        out = IntPolynomial()
        for i, c in enumerate(self.coeffs):
            out = out + c * q_falling(i, self.q)
        return out

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0


def expand_q_falling(P: IntPolynomial, q: int) -> QFallingExpansion:
    """Coordinates of P in the monic basis t_q^(falling i)."""
    _check_q(q)
    rem = P
    coeffs = [0] * (max(P.degree, 0) + 1)
    for i in range(P.degree, -1, -1):
        c = rem[i]
        coeffs[i] = c
        if c:
            rem = rem - c * q_falling(i, q)
    assert not rem.coeffs
    return QFallingExpansion(q, tuple(coeffs))


def subspace_counts_oracle(A) -> list[int]:
    """For each i, the number of i-dim subspaces of F_q^ell in no hyperplane of A."""
    if A.kind != "central":
        raise InputError("subspace counting needs a central arrangement")
    F = A.field
    if F.q**A.ell > config.SUBSPACE_ORACLE_MAX:
        raise GuardExceeded(f"q^ell = {F.q ** A.ell} exceeds {config.SUBSPACE_ORACLE_MAX}")
    normals = [h.normal for h in A.hyperplanes]
    return count_rref(F, A.ell, hyperplane_predicate(F, normals))


def subspace_count_oracle(A, i: int) -> int:
    if not 0 <= i <= A.ell:
        raise InputError(f"dimension {i} outside 0..{A.ell}")
    return subspace_counts_oracle(A)[i]
