"""Logarithmic derivations of A_G^q for chordal G and a Saito-type certificate.

The basis is first written in the coordinates of a perfect elimination
ordering (position k carries the variable of the k-th vertex), then renamed
back to vertex coordinates, so that it can be checked directly against
``build_central(G, F)``.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from . import config
from .arrangement import Arrangement, build_central
from .errors import GuardExceeded, InputError, NotChordal
from .field import Field
from .graph import Graph, chordality, induced_cycle_witness, is_peo
from .mpoly import MPoly, determinant


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _moore_guard(F: Field, k: int) -> None:
    if k > config.MOORE_MAX_VARS:
        raise GuardExceeded(f"Moore determinant on {k} variables exceeds {config.MOORE_MAX_VARS}")
    degree = (F.q**k - 1) // (F.q - 1)
    terms = math.comb(degree + k - 1, k - 1) if k else 1
    if terms > config.MOORE_MAX_TERMS:
        raise GuardExceeded(f"Moore determinant of degree {degree} in {k} variables is over the size guard")


def moore_product(F: Field, nvars: int, variables: Sequence[int]) -> MPoly:
    """prod_i prod_{c in F^(i-1)} (c_1 y_1 + ... + c_(i-1) y_(i-1) + y_i)."""
    out = MPoly.constant(F, nvars, 1)
    for i, v in enumerate(variables):
        for c in itertools.product(F.codes(), repeat=i):
            normal = [0] * nvars
            for u, a in zip(variables[:i], c):
                normal[u] = a
            normal[v] = 1
            out = out * MPoly.linear(F, normal)
    return out


@functools.lru_cache(maxsize=None)
def _moore_cached(F: Field, nvars: int, variables: tuple[int, ...], verify: bool) -> MPoly:
    k = len(variables)
    _moore_guard(F, k)
    minus_one = F.neg(1)
    terms = {}
    for perm in itertools.permutations(range(k)):
        e = [0] * nvars
        for i, j in enumerate(perm):
            e[variables[i]] = F.q**j
        terms[tuple(e)] = 1 if _perm_sign(perm) > 0 else minus_one
    det = MPoly(F, nvars, terms)
    if verify:
        assert det == moore_product(F, nvars, variables), "Moore determinant disagrees with product form"
    return det


def moore_det(F: Field, nvars: int, variables: Sequence[int], verify: bool = True) -> MPoly:
    """det [y_i^(q^j)] for the listed variable indices (0-based), in that order.

    Distinct permutations give distinct monomials, so the Leibniz expansion is
    already the sparse polynomial.  With ``verify`` the product of all monic
    linear forms is computed as well and compared.
    """
    variables = tuple(variables)
    if len(set(variables)) != len(variables) or any(not 0 <= v < nvars for v in variables):
        raise InputError(f"bad variable list {variables}")
    return _moore_cached(F, nvars, variables, verify)


# -- PEO sets -----------------------------------------------------------------

@dataclass(frozen=True)
class PeoSets:
    """Index sets in PEO positions 1..ell; entry k-1 belongs to position k."""

    c_geq: tuple[frozenset, ...]
    e_lt: tuple[frozenset, ...]


def peo_sets(G: Graph, peo: Sequence[int]) -> PeoSets:
    peo = list(peo)
    if not is_peo(G, peo):
        raise InputError(f"{peo} is not a perfect elimination ordering")
    pos = {v: k for k, v in enumerate(peo, start=1)}
    ell = G.ell
    adj = {k: {pos[u] for u in G.neighbors(v)} for k, v in enumerate(peo, start=1)}
    c_geq, e_lt = [], []
    for k in range(1, ell + 1):
        reach = {k}
        # increasing paths k < j_1 < ... < j_n < i
        for i in range(k + 1, ell + 1):
            if any(j in reach for j in adj[i] if j < i):
                reach.add(i)
        c_geq.append(frozenset(reach))
        e_lt.append(frozenset(j for j in adj[k] if j < k))
    return PeoSets(tuple(c_geq), tuple(e_lt))


# -- derivations --------------------------------------------------------------

@dataclass(frozen=True)
class Derivation:
    """sum_i coeffs[i] * d/dx_i."""

    coeffs: tuple[MPoly, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise InputError("a derivation needs at least one coordinate")
        F, n = self.coeffs[0].field, self.coeffs[0].nvars
        if n != len(self.coeffs) or any(c.field != F or c.nvars != n for c in self.coeffs):
            raise InputError("derivation coefficients must share one polynomial ring")

    @property
    def field(self) -> Field:
        return self.coeffs[0].field

    @property
    def ell(self) -> int:
        return len(self.coeffs)

    @classmethod
    def zero(cls, F: Field, ell: int) -> Derivation:
        return cls(tuple(MPoly(F, ell) for _ in range(ell)))

    @classmethod
    def partial(cls, F: Field, ell: int, i: int) -> Derivation:
        return cls(tuple(MPoly.constant(F, ell, 1 if j == i else 0) for j in range(ell)))

    def apply(self, normal: Sequence[int]) -> MPoly:
        """theta applied to the linear form sum_i normal[i] x_i."""
        out = MPoly(self.field, self.ell)
        for c, a in zip(self.coeffs, normal):
            if a:
                out = out + c.scale(a)
        return out

    def pdeg(self) -> int:
        return max(c.total_degree() for c in self.coeffs)

    def permute(self, perm: list[int]) -> Derivation:
        """Rename coordinate i to perm[i]."""
        out: list[MPoly | None] = [None] * self.ell
        for i, c in enumerate(self.coeffs):
            out[perm[i]] = c.permute(perm)
        return Derivation(tuple(out))

    def to_json(self) -> list:
        return [c.to_json() for c in self.coeffs]

    def __str__(self) -> str:
        parts = [f"({c})*d{i + 1}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(parts) if parts else "0"


def basis_theta(G: Graph, F: Field, peo: Sequence[int] | None = None) -> list[Derivation]:
    """theta_1..theta_ell for chordal G, indexed by PEO position, in vertex coordinates.

    theta_k = sum_{i in C_{>=k}} Delta(E_{<k}, x_i) / Delta(E_{<k}) d_i.
    """
    if peo is None:
        ok, peo = chordality(G)
        if not ok:
            witness = induced_cycle_witness(G)
            raise NotChordal(f"graph is not chordal; induced cycle {witness}", witness)
    peo = list(peo)
    sets = peo_sets(G, peo)
    ell = G.ell
    basis = []
    for k in range(ell):
        lower = sorted(j - 1 for j in sets.e_lt[k])
        denom = moore_det(F, ell, lower)
        coeffs = [MPoly(F, ell) for _ in range(ell)]
        for i in sorted(sets.c_geq[k]):
            numer = moore_det(F, ell, lower + [i - 1])
            coeffs[i - 1] = numer.exact_divide(denom)
        basis.append(Derivation(tuple(coeffs)))
    to_vertex = [v - 1 for v in peo]
    return [theta.permute(to_vertex) for theta in basis]


def is_logarithmic(theta: Derivation, A: Arrangement) -> bool:
    """theta(alpha_H) lies in the ideal (alpha_H) for every H in A."""
    if A.kind != "central":
        raise InputError("logarithmic derivations need a central arrangement")
    if theta.field != A.field or theta.ell != A.ell:
        raise InputError("derivation and arrangement live over different spaces")
    return all(theta.apply(h.normal).vanishes_on(h.normal) for h in A.hyperplanes)


@dataclass
class SaitoCertificate:
    field: Field
    ell: int
    basis: list[Derivation]
    degree_check: list[int]
    vanishing_check: list[bool]
    det_nonzero: bool
    det_degree: int
    determinant: MPoly
    n_hyperplanes: int
    verdict: str
    graph: Graph | None = None
    peo: list[int] | None = None

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


def saito_check(basis: Sequence[Derivation], A: Arrangement) -> SaitoCertificate:
    """Certify that ``basis`` is a basis of D(A).

    det(coefficient matrix) is divisible by each of the |A| distinct linear
    forms when it vanishes on every hyperplane; if it is also nonzero of
    degree |A| it equals c * prod alpha_H with c a nonzero constant.
    """
    basis = list(basis)
    ell = A.ell
    if len(basis) != ell:
        raise InputError(f"need {ell} derivations, got {len(basis)}")
    if ell > config.DET_MAX_DIM:
        raise GuardExceeded(f"cofactor determinant of size {ell} exceeds {config.DET_MAX_DIM}")
    for k, theta in enumerate(basis):
        if not is_logarithmic(theta, A):
            raise InputError(f"derivation {k + 1} is not logarithmic")
    D = determinant([list(theta.coeffs) for theta in basis])
    degrees = [theta.pdeg() for theta in basis]
    nonzero = not D.is_zero()
    vanishing = [nonzero and D.vanishes_on(h.normal) for h in A.hyperplanes]
    det_degree = D.total_degree()
    ok = (nonzero and D.is_homogeneous() and det_degree == len(A)
          and sum(degrees) == len(A) and all(vanishing))
    return SaitoCertificate(A.field, ell, basis, degrees, vanishing, nonzero, det_degree, D,
                            len(A), "pass" if ok else "fail")


def certify_chordal(G: Graph, F: Field) -> SaitoCertificate:
    """Build the theta basis for chordal G and run the Saito check on A_G^q."""
    ok, peo = chordality(G)
    if not ok:
        witness = induced_cycle_witness(G)
        raise NotChordal(f"graph is not chordal; induced cycle {witness}", witness)
    basis = basis_theta(G, F, peo)
    cert = saito_check(basis, build_central(G, F))
    cert.graph = G
    cert.peo = list(peo)
    return cert


def all_arrangement_basis(F: Field, ell: int) -> list[Derivation]:
    """sum_i x_i^(q^k) d_i for k = 0..ell-1."""
    return [Derivation(tuple(MPoly.var(F, ell, i, F.q**k) for i in range(ell))) for k in range(ell)]
