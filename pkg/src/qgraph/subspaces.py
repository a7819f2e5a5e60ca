"""Enumeration of subspaces of F_q^ell through reduced row echelon forms.

A subspace of dimension i is the row space of exactly one i x ell matrix in
reduced row echelon form.  The matrix is built column by column: a column is
either the next pivot e_r or an arbitrary vector supported on the r pivot rows
already opened.  Column j of the matrix is the image of the coordinate vector
e_j, so a subspace X lies in the hyperplane {a . x = 0} iff sum_j a_j col_j = 0.
"""

from __future__ import annotations

import itertools
from typing import Callable, Sequence

from .field import Field

Column = tuple[int, ...]
# predicate(c, columns) -> False prunes the branch; called after column c is placed
Predicate = Callable[[int, list[Column]], bool]


def _pad(v: Column, r: int) -> Column:
    return v + (0,) * (r - len(v))


def rank(F: Field, vectors: Sequence[Column]) -> int:
    rows = [list(v) for v in vectors]
    if not rows:
        return 0
    width = max(len(v) for v in rows)
    rows = [r + [0] * (width - len(r)) for r in rows]
    rk = 0
    for col in range(width):
        piv = next((i for i in range(rk, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        inv = F.inv(rows[rk][col])
        rows[rk] = [F.mul(inv, x) for x in rows[rk]]
        for i in range(len(rows)):
            if i != rk and rows[i][col]:
                c = rows[i][col]
                rows[i] = [F.sub(x, F.mul(c, y)) for x, y in zip(rows[i], rows[rk])]
        rk += 1
        if rk == len(rows):
            break
    return rk


def count_rref(F: Field, ell: int, accept: Predicate | None = None) -> list[int]:
    """Number of accepted subspaces of F^ell of each dimension 0..ell."""
    counts = [0] * (ell + 1)
    cols: list[Column] = []

    def place(c: int, r: int) -> None:
        if c == ell:
            counts[r] += 1
            return
        # new pivot column
        cols.append((0,) * r + (1,))
        if accept is None or accept(c, cols):
            place(c + 1, r + 1)
        cols.pop()
        # free column inside the r pivot rows
        for vec in itertools.product(F.codes(), repeat=r):
            cols.append(vec)
            if accept is None or accept(c, cols):
                place(c + 1, r)
            cols.pop()

    place(0, 0)
    return counts


def hyperplane_predicate(F: Field, normals: Sequence[Column]) -> Predicate:
    """Reject a partial matrix as soon as some hyperplane contains its row space."""
    by_last: dict[int, list[list[tuple[int, int]]]] = {}
    for a in normals:
        support = [(j, x) for j, x in enumerate(a) if x]
        by_last.setdefault(support[-1][0], []).append(support)

    def accept(c: int, cols: list[Column]) -> bool:
        r = max(len(v) for v in cols)
        for support in by_last.get(c, ()):
            acc = [0] * r
            for j, x in support:
                for row, y in enumerate(cols[j]):
                    if y:
                        acc[row] = F.add(acc[row], F.mul(x, y))
            if not any(acc):
                return False
        return True

    return accept


def clique_predicate(F: Field, cliques: Sequence[Sequence[int]]) -> Predicate:
    """Reject unless the columns of every clique (0-based vertex ids) stay independent."""
    by_vertex: dict[int, list[list[int]]] = {}
    for K in cliques:
        K = sorted(K)
        for idx, v in enumerate(K):
            if idx:
                by_vertex.setdefault(v, []).append(K[: idx + 1])

    def accept(c: int, cols: list[Column]) -> bool:
        if not any(cols[c]):
            return False
        for prefix in by_vertex.get(c, ()):
            r = len(cols[c])
            vecs = [_pad(cols[j], r) for j in prefix]
            if rank(F, vecs) < len(vecs):
                return False
        return True

    return accept
