"""Closed forms and executable checks of the congruence-type theorems."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import NamedTuple, Sequence

from .arrangement import graph_characteristic_polynomial
from .errors import InputError, VerificationError
from .field import field_from_order, prime_power
from .graph import (
    Graph,
    chordality,
    chromatic_polynomial,
    contract_edge,
    dc_hypotheses,
    delete_edge,
    earlier_neighbor_counts,
    is_peo,
    is_triangle_free,
    join_complete,
    maximal_cliques,
    stable_partition_counts,
)
from .intpoly import IntPolynomial
from .qcomb import expand_q_falling, q_falling


def _need_prime_power(q: int) -> None:
    if not isinstance(q, int) or prime_power(q) is None:
        raise InputError(f"q must be a prime power, got {q!r}")


def _chi(G: Graph, q: int, chi: IntPolynomial | None = None) -> IntPolynomial:
    if chi is not None:
        return chi
    return graph_characteristic_polynomial(G, field_from_order(q))


# -- closed forms ------------------------------------------------------------

def closed_form(kind: str, **params) -> IntPolynomial:
    """Known formulas for chi(A_G^q, t).

    kinds and parameters:
      path(ell, q), cycle(ell, q), complete(ell, q), triangle_free(G, q),
      join(G, m, q, base=None), supersolvable(G, q, peo=None).
    """
    if kind not in ("path", "cycle", "complete", "triangle_free", "join", "supersolvable"):
        raise InputError(f"unknown closed form {kind!r}")
    q = params.get("q")
    _need_prime_power(q)
    t = IntPolynomial.t()
    if kind in ("path", "cycle", "complete"):
        ell = params["ell"]
        if ell < 1:
            raise InputError("ell must be positive")
        if kind == "path":
            return (t - 1) * (t - q) ** (ell - 1)
        if kind == "complete":
            return q_falling(ell, q)
        if ell < 4:
            raise InputError("the cycle formula needs ell >= 4")
        sign = -1 if ell % 2 else 1
        return (t - q) ** ell + sign * (q - 1) ** (ell - 1) * (t - q)
    G: Graph = params.get("G")
    if not isinstance(G, Graph):
        raise InputError(f"closed form {kind!r} needs a graph G")
    if kind == "triangle_free":
        if not is_triangle_free(G):
            raise InputError("graph has a triangle")
        inner = [Fraction(-1, q - 1), Fraction(1, q - 1)]
        scale = (q - 1) ** G.ell
        vals = [c * scale for c in chromatic_polynomial(G).substitute(inner)]
        if any(v.denominator != 1 for v in vals):
            raise VerificationError("triangle-free formula produced a non-integer coefficient")
        return IntPolynomial(vals)
    if kind == "join":
        m = params["m"]
        if m < 1:
            raise InputError("m must be at least 1")
        base = params.get("base") or _chi(G, q)
        ell = G.ell
        scaled = base.scale_coefficients(lambda d: q ** (m * (ell - d)))
        return q_falling(m, q) * scaled
    # supersolvable: one factor per vertex of a perfect elimination ordering
    peo = params.get("peo")
    if peo is None:
        ok, peo = chordality(G)
        if not ok:
            raise InputError("graph is not chordal")
    elif not is_peo(G, list(peo)):
        raise InputError("not a perfect elimination ordering")
    return IntPolynomial.from_roots(q**n for n in earlier_neighbor_counts(G, list(peo)))


# -- congruences -------------------------------------------------------------

class CongruenceCheck(NamedTuple):
    lhs_residue: int
    rhs_residue: int
    ok: bool
    status: str  # pass | fail | degenerate
    quotient: int


def verify_congruence(G: Graph, q: int, k: int, chi: IntPolynomial | None = None) -> CongruenceCheck:
    """chi(A_G^q, q^k) / (q-1)^ell against chi(G, k) modulo q - 1."""
    _need_prime_power(q)
    if k < 0:
        raise InputError("k must be non-negative")
    value = _chi(G, q, chi)(q**k)
    quotient, rem = divmod(value, (q - 1) ** G.ell)
    if rem:
        raise VerificationError(f"(q-1)^{G.ell} does not divide chi(q^{k}) = {value}")
    mod = q - 1
    lhs = quotient % mod
    rhs = chromatic_polynomial(G)(k) % mod
    ok = lhs == rhs
    status = "degenerate" if mod == 1 else ("pass" if ok else "fail")
    return CongruenceCheck(lhs, rhs, ok, status, quotient)


@dataclass(frozen=True)
class StableRow:
    i: int
    c: int
    quotient: Fraction
    s: int
    ok: bool


def stable_partition_rows(G: Graph, q: int, chi: IntPolynomial | None = None) -> list[StableRow]:
    _need_prime_power(q)
    ell = G.ell
    exp = expand_q_falling(_chi(G, q, chi), q)
    s = stable_partition_counts(G)
    rows = []
    for i in range(ell + 1):
        c = exp[i]
        quo = Fraction(c, (q - 1) ** (ell - i))
        ok = quo.denominator == 1 and quo >= 0 and (quo.numerator - s.s(i)) % (q - 1) == 0
        rows.append(StableRow(i, c, quo, s.s(i), ok))
    return rows


def verify_stable_partition_theorem(G: Graph, q: int, chi: IntPolynomial | None = None) -> bool:
    return all(r.ok for r in stable_partition_rows(G, q, chi))


def verify_triangle_free(G: Graph, q: int, chi: IntPolynomial | None = None) -> bool:
    return _chi(G, q, chi) == closed_form("triangle_free", G=G, q=q)


def verify_join(G: Graph, m: int, q: int) -> bool:
    F = field_from_order(q)
    lhs = graph_characteristic_polynomial(join_complete(G, m), F)
    return lhs == closed_form("join", G=G, m=m, q=q)


def verify_deletion_contraction(G: Graph, e, q: int) -> bool:
    """chi(G) = chi(G - e) - (q - 1) chi(G / e) at the arrangement level."""
    if not dc_hypotheses(G, e):
        raise InputError(f"edge {tuple(e)} does not satisfy the deletion-contraction hypotheses")
    F = field_from_order(q)
    lhs = graph_characteristic_polynomial(G, F)
    rhs = (graph_characteristic_polynomial(delete_edge(G, e), F)
           - (q - 1) * graph_characteristic_polynomial(contract_edge(G, e), F))
    return lhs == rhs


def verify_vanishing_monotone(chi: IntPolynomial, q: int, kmax: int) -> bool:
    """Once chi(q^k) = 0, every chi(q^j) with j <= k vanishes too."""
    zero = [chi(q**k) == 0 for k in range(kmax + 1)]
    return all(all(zero[: k + 1]) for k in range(kmax + 1) if zero[k])


# -- polynomiality probe -----------------------------------------------------

def interpolate(xs: Sequence[int], ys: Sequence[int]) -> list[Fraction]:
    """Coefficients (low to high) of the interpolating polynomial, exact."""
    n = len(xs)
    if len(set(xs)) != n:
        raise InputError("interpolation nodes must be distinct")
    dd = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j])
    coeffs = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # coeffs <- coeffs * (x - xs[i]) + dd[i]
        shifted = [Fraction(0)] + coeffs[:-1]
        coeffs = [s - xs[i] * c for s, c in zip(shifted, coeffs)]
        coeffs[0] += dd[i]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _eval(coeffs: Sequence, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@dataclass
class CoefficientFit:
    degree: int  # power of t
    poly_in_q: list[int] | None  # integer coefficients in q, low to high
    integral: bool
    consistent: bool


@dataclass
class LimitCheck:
    k: int
    value: int | None
    expected: int
    match: bool


@dataclass
class ProbeReport:
    """Exploratory: records what the samples are consistent with, nothing more."""

    ell: int
    qs: list[int]
    degree_bound: int
    chis: dict[int, IntPolynomial]
    fits: list[CoefficientFit]
    limits: list[LimitCheck] = dc_field(default_factory=list)

    @property
    def fitted(self) -> bool:
        return all(f.integral and f.consistent for f in self.fits)

    def at(self, q: int) -> IntPolynomial:
        """The fitted polynomial in t specialised at q."""
        if not self.fitted:
            raise InputError("no integral fit available")
        return IntPolynomial([_eval(f.poly_in_q, q) for f in self.fits])

    def limits_match(self) -> bool:
        return bool(self.limits) and all(c.match for c in self.limits)


def default_degree_bound(G: Graph) -> int:
    # a clique K contributes up to q^(|K| choose 2) to the constant term
    return sum(len(K) * (len(K) - 1) // 2 for K in maximal_cliques(G))


def _divide_by_q_minus_1(coeffs: list[int]) -> tuple[list[int], int]:
    # synthetic division by (q - 1)
    n = len(coeffs)
    if n <= 1:
        return [], (coeffs[0] if coeffs else 0)
    out = [0] * (n - 1)
    acc = 0
    for d in range(n - 1, 0, -1):
        acc = coeffs[d] + acc
        out[d - 1] = acc
    return out, coeffs[0] + acc


def probe_polynomiality(G: Graph, qs: Sequence[int], degree_bound: int | None = None) -> ProbeReport:
    """Fit each t-coefficient of chi(A_G^q, t) as a polynomial in q.

    The first bound+1 sample points determine the fit; the rest are held out.
    When every coefficient fits with integer coefficients, the q -> 1 limit of
    chi(A_G^q, q^k) / (q-1)^ell is read off for k = 1..ell.
    """
    qs = sorted(set(qs))
    for q in qs:
        _need_prime_power(q)
    bound = default_degree_bound(G) if degree_bound is None else degree_bound
    if bound < 0:
        raise InputError("degree bound must be non-negative")
    if len(qs) < bound + 2:
        raise InputError(f"need at least {bound + 2} sample values of q, got {len(qs)}")
    ell = G.ell
    chis = {q: graph_characteristic_polynomial(G, field_from_order(q)) for q in qs}
    fit_q, held = qs[: bound + 1], qs[bound + 1:]
    fits = []
    for d in range(ell + 1):
        coeffs = interpolate(fit_q, [chis[q][d] for q in fit_q])
        integral = all(c.denominator == 1 for c in coeffs)
        consistent = all(_eval(coeffs, q) == chis[q][d] for q in held)
        fits.append(CoefficientFit(d, [int(c) for c in coeffs] if integral else None,
                                   integral, consistent))
    report = ProbeReport(ell, qs, bound, chis, fits)
    if not report.fitted:
        return report
    chrom = chromatic_polynomial(G)
    for k in range(1, ell + 1):
        # P(q) = sum_d f_d(q) q^(k d), then divide by (q-1)^ell
        P: list[int] = [0]
        for f in report.fits:
            shifted = [0] * (k * f.degree) + f.poly_in_q
            if len(shifted) > len(P):
                P += [0] * (len(shifted) - len(P))
            for i, c in enumerate(shifted):
                P[i] += c
        value = None
        for _ in range(ell):
            P, rem = _divide_by_q_minus_1(P)
            if rem:
                break
        else:
            value = sum(P)
        expected = chrom(k)
        report.limits.append(LimitCheck(k, value, expected, value == expected))
    return report
