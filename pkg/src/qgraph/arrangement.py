"""Arrangements A_G^q and their affine variant over a finite field.

Hyperplanes are stored as projective representatives: the normal vector's
first nonzero coordinate is 1.  An affine hyperplane a.x = b is handled as the
augmented row (a, b); a set of augmented rows defines a nonempty intersection
iff its row span avoids (0, ..., 0, 1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import config
from .errors import GuardExceeded, InputError
from .field import Field
from .graph import Graph, join_complete, maximal_cliques
from .intpoly import IntPolynomial
from .qcomb import q_falling
from .subspaces import clique_predicate, count_rref


@dataclass(frozen=True, order=True)
class Hyperplane:
    normal: tuple[int, ...]
    constant: int = 0

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, a in enumerate(self.normal) if a)

    @property
    def pivot(self) -> int:
        return next(i for i, a in enumerate(self.normal) if a)


@dataclass(frozen=True)
class Arrangement:
    field: Field
    ell: int
    hyperplanes: tuple[Hyperplane, ...]
    kind: str = "central"

    def __post_init__(self):
        if self.kind not in ("central", "affine"):
            raise InputError(f"unknown arrangement kind {self.kind!r}")
        if len(set(self.hyperplanes)) != len(self.hyperplanes):
            raise InputError("duplicate hyperplanes")

    def __len__(self) -> int:
        return len(self.hyperplanes)

    @cached_property
    def rows(self) -> np.ndarray:
        """Hyperplanes as integer rows (augmented by the constant when affine)."""
        width = self.ell + (1 if self.kind == "affine" else 0)
        if not self.hyperplanes:
            return np.zeros((0, width), dtype=np.int64)
        if self.kind == "affine":
            data = [h.normal + (h.constant,) for h in self.hyperplanes]
        else:
            data = [h.normal for h in self.hyperplanes]
        return np.array(data, dtype=np.int64)

    def without(self, index: int) -> Arrangement:
        hs = self.hyperplanes[:index] + self.hyperplanes[index + 1:]
        return Arrangement(self.field, self.ell, hs, self.kind)

    def subarrangement(self, indices) -> Arrangement:
        hs = tuple(self.hyperplanes[i] for i in sorted(set(indices)))
        return Arrangement(self.field, self.ell, hs, self.kind)


def normalize(F: Field, normal, constant: int = 0) -> Hyperplane:
    normal = tuple(normal)
    lead = next((a for a in normal if a), None)
    if lead is None:
        raise InputError("a hyperplane needs a nonzero normal")
    inv = F.inv(lead)
    return Hyperplane(tuple(F.mul(inv, a) for a in normal), F.mul(inv, constant))


def make_arrangement(F: Field, ell: int, hyperplanes, kind: str = "central") -> Arrangement:
    return Arrangement(F, ell, tuple(sorted(set(hyperplanes))), kind)


def empty_arrangement(F: Field, ell: int) -> Arrangement:
    return Arrangement(F, ell, ())


def _projective_vectors(F: Field, r: int):
    """Nonzero vectors of F^r whose first nonzero entry is 1."""
    for lead in range(r):
        for tail in itertools.product(F.codes(), repeat=r - lead - 1):
            yield (0,) * lead + (1,) + tail


def build_central(G: Graph, F: Field) -> Arrangement:
    """All hyperplanes sum a_i x_i = 0 whose support lies in a clique of G.

    Maximal cliques suffice: a normal supported on a smaller clique also
    appears among the normals of any maximal clique containing it.
    """
    seen = set()
    for K in maximal_cliques(G):
        for vec in _projective_vectors(F, len(K)):
            normal = [0] * G.ell
            for v, a in zip(K, vec):
                normal[v - 1] = a
            seen.add(Hyperplane(tuple(normal)))
    return Arrangement(F, G.ell, tuple(sorted(seen)))


def build_affine(G: Graph, F: Field) -> Arrangement:
    central = build_central(G, F)
    hs = [Hyperplane(h.normal, b) for h in central.hyperplanes for b in F.codes()]
    return Arrangement(F, G.ell, tuple(sorted(hs)), "affine")


def arrangement_all(F: Field, ell: int) -> Arrangement:
    hs = tuple(sorted(Hyperplane(v) for v in _projective_vectors(F, ell)))
    return Arrangement(F, ell, hs)


def restriction(A: Arrangement, index: int) -> Arrangement:
    """A^H for H = A[index], in coordinates of H obtained by dropping H's pivot."""
    if A.kind != "central":
        raise InputError("restriction is implemented for central arrangements")
    F = A.field
    H = A.hyperplanes[index]
    p = H.pivot
    out = set()
    for k, K in enumerate(A.hyperplanes):
        if k == index:
            continue
        c = K.normal[p]
        reduced = [F.sub(a, F.mul(c, b)) for a, b in zip(K.normal, H.normal)]
        del reduced[p]
        out.add(normalize(F, reduced))
    return Arrangement(F, A.ell - 1, tuple(sorted(out)))


# -- intersection lattice ----------------------------------------------------

@dataclass(frozen=True)
class Flat:
    basis: tuple[tuple[int, ...], ...]  # RREF rows spanning the defining forms
    hyperplanes: frozenset  # indices of hyperplanes containing the flat
    dim: int

    @property
    def rank(self) -> int:
        return len(self.basis)


@dataclass
class FlatLattice:
    arrangement: Arrangement
    flats: list[Flat]
    mobius: list[int]

    def __len__(self) -> int:
        return len(self.flats)

    @property
    def bottom(self) -> Flat:
        return self.flats[0]

    def leq(self, i: int, j: int) -> bool:
        """Flat i lies below flat j (reverse inclusion of subspaces)."""
        return self.flats[i].hyperplanes <= self.flats[j].hyperplanes

    def below(self, j: int) -> list[int]:
        return [i for i in range(len(self.flats)) if self.leq(i, j)]

    def characteristic_polynomial(self) -> IntPolynomial:
        coeffs = [0] * (self.arrangement.ell + 1)
        for flat, mu in zip(self.flats, self.mobius):
            coeffs[flat.dim] += mu
        return IntPolynomial(coeffs)


def _rref_insert(F: Field, basis, pivots, v):
    v = list(v)
    for row, piv in zip(basis, pivots):
        c = v[piv]
        if c:
            v = [F.sub(a, F.mul(c, b)) for a, b in zip(v, row)]
    lead = next((i for i, a in enumerate(v) if a), None)
    if lead is None:
        return None
    inv = F.inv(v[lead])
    v = tuple(F.mul(inv, a) for a in v)
    rows = []
    for row in basis:
        c = row[lead]
        if c:
            row = tuple(F.sub(a, F.mul(c, b)) for a, b in zip(row, v))
        rows.append(row)
    rows.append(v)
    piv = list(pivots) + [lead]
    order = sorted(range(len(rows)), key=lambda k: piv[k])
    return tuple(rows[k] for k in order), tuple(piv[k] for k in order), lead


def _span_mask(F: Field, rows: np.ndarray, basis, pivots) -> np.ndarray:
    res = rows.copy()
    for row, piv in zip(basis, pivots):
        coef = res[:, piv].copy()
        res = F.np_sub(res, F.np_mul(coef[:, None], np.asarray(row, dtype=np.int64)[None, :]))
    return ~res.any(axis=1)


def _check_lattice_guard(A: Arrangement) -> None:
    if len(A) > config.LATTICE_MAX_HYPERPLANES:
        raise GuardExceeded(f"{len(A)} hyperplanes exceed the lattice guard {config.LATTICE_MAX_HYPERPLANES}")
    if A.ell > config.LATTICE_MAX_DIM:
        raise GuardExceeded(f"dimension {A.ell} exceeds the lattice guard {config.LATTICE_MAX_DIM}")


def flat_lattice(A: Arrangement) -> FlatLattice:
    """All intersections (nonempty ones, for affine A) with Mobius values.

    Flats are found rank by rank: each flat is extended by one hyperplane at a
    time and closed under span membership; hyperplanes swallowed by a closure
    already computed are skipped, so each cover is produced once per flat.
    """
    _check_lattice_guard(A)
    F = A.field
    rows = A.rows
    n_h = len(A)
    affine = A.kind == "affine"
    const_col = A.ell

    bottom = ((), (), np.zeros(n_h, dtype=bool))
    levels = [[bottom]]
    while True:
        nxt: dict[bytes, tuple] = {}
        for basis, pivots, mask in levels[-1]:
            covered = mask.copy()
            for h in range(n_h):
                if covered[h]:
                    continue
                ins = _rref_insert(F, basis, pivots, rows[h].tolist())
                covered[h] = True
                if ins is None:
                    continue
                nb, npiv, lead = ins
                if affine and lead == const_col:
                    continue  # empty intersection
                new_mask = _span_mask(F, rows, nb, npiv)
                covered |= new_mask
                key = np.packbits(new_mask).tobytes()
                if key not in nxt:
                    nxt[key] = (nb, npiv, new_mask)
        if not nxt:
            break
        levels.append(list(nxt.values()))

    flats: list[Flat] = []
    masks: list[np.ndarray] = []
    level_of: list[int] = []
    for r, level in enumerate(levels):
        level = sorted(level, key=lambda item: tuple(np.flatnonzero(item[2])))
        for basis, _, mask in level:
            flats.append(Flat(basis, frozenset(np.flatnonzero(mask).tolist()), A.ell - r))
            masks.append(mask)
            level_of.append(r)
    mobius = _mobius(masks, level_of)
    return FlatLattice(A, flats, mobius)


def _mobius(masks: list[np.ndarray], level_of: list[int]) -> list[int]:
    """mu(X) = -sum over Y < X of mu(Y), evaluated one rank at a time."""
    n = len(masks)
    if n == 0:
        return []
    M = np.array(masks, dtype=np.float64).reshape(n, -1)
    mu = np.zeros(n, dtype=np.int64)
    mu[0] = 1
    start = 1
    block = 512
    while start < n:
        r = level_of[start]
        end = start
        while end < n and level_of[end] == r:
            end += 1
        low = M[:start]
        for s in range(start, end, block):
            e = min(end, s + block)
            missing = low @ (1.0 - M[s:e]).T  # hyperplanes of Y not containing X
            leq = (missing == 0).astype(np.int64)
            mu[s:e] = -(leq.T @ mu[:start])
        start = end
    return [int(x) for x in mu]


def characteristic_polynomial(A: Arrangement) -> IntPolynomial:
    return flat_lattice(A).characteristic_polynomial()


def chi_by_subspaces(G: Graph, F: Field) -> IntPolynomial:
    """chi(A_G^q) = sum_i c_i t_q^(falling i), with c_i counted by RREF enumeration.

    A subspace avoids every hyperplane of A_G^q exactly when, for every clique
    K, the matrix columns indexed by K are linearly independent.
    """
    cliques = [[v - 1 for v in K] for K in maximal_cliques(G)]
    counts = count_rref(F, G.ell, clique_predicate(F, cliques))
    out = IntPolynomial()
    for i, c in enumerate(counts):
        out = out + c * q_falling(i, F.q)
    return out


def graph_characteristic_polynomial(G: Graph, F: Field, method: str = "auto") -> IntPolynomial:
    """chi(A_G^q, t); "auto" uses the lattice inside its guards, else subspace counting."""
    if method not in ("auto", "lattice", "subspaces"):
        raise InputError(f"unknown method {method!r}")
    if method == "subspaces":
        return chi_by_subspaces(G, F)
    A = build_central(G, F)
    if method == "auto" and (len(A) > config.LATTICE_MAX_HYPERPLANES or A.ell > config.LATTICE_MAX_DIM):
        return chi_by_subspaces(G, F)
    return characteristic_polynomial(A)


# -- finite-field point counting ---------------------------------------------

def point_count(A: Arrangement, k: int) -> int:
    """Points of (F_{p^k})^ell on no hyperplane of A, by exhaustive enumeration."""
    from .field import field_create

    F = A.field
    if F.m != 1:
        raise InputError("point counting is implemented over prime base fields only")
    if not isinstance(k, int) or k < 1:
        raise InputError("k must be a positive integer")
    total = F.q ** (k * A.ell)
    if total > config.POINT_COUNT_MAX:
        raise GuardExceeded(f"{total} points exceed the point-count guard {config.POINT_COUNT_MAX}")
    E = field_create(F.p, k)
    Q = E.q
    ell = A.ell
    if ell == 0:
        return 1 if not A.hyperplanes else 0
    forms = [([(j, a) for j, a in enumerate(h.normal) if a], h.constant) for h in A.hyperplanes]
    alive_total = 0
    chunk = 1 << 18
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        coords = []
        rest = idx
        for _ in range(ell):
            rest, d = np.divmod(rest, Q)
            coords.append(d)
        alive = np.ones(len(idx), dtype=bool)
        for support, b in forms:
            val = np.zeros(len(idx), dtype=np.int64)
            for j, a in support:
                val = E.np_add(val, E.np_mul(a, coords[j]))
            alive &= val != b
        alive_total += int(alive.sum())
    return alive_total


def cone_decone_check(G: Graph, F: Field) -> bool:
    """chi(A_{G+K_1}^q, t) == (t - 1) chi(~A_G^q, t), both from lattices."""
    coned = characteristic_polynomial(build_central(join_complete(G, 1), F))
    affine = characteristic_polynomial(build_affine(G, F))
    return coned == IntPolynomial([-1, 1]) * affine


def affine_lemma_check(G: Graph, F: Field) -> bool:
    """chi(~A_G^q, t) == q^ell chi(A_G^q, t / q)."""
    ell, q = G.ell, F.q
    affine = characteristic_polynomial(build_affine(G, F))
    central = graph_characteristic_polynomial(G, F)
    return affine == central.scale_coefficients(lambda d: q ** (ell - d))
