"""Acceptance criteria 1-12, one test each; every test records a PASS/FAIL line."""

from __future__ import annotations

import itertools
import random
import time
from functools import lru_cache
from importlib import resources

import pytest

from conftest import ACCEPTANCE
from qgraph.arrangement import (
    affine_lemma_check,
    build_central,
    cone_decone_check,
    graph_characteristic_polynomial,
    point_count,
)
from qgraph.derivations import certify_chordal
from qgraph.field import field_create, field_from_order
from qgraph.graph import (
    Graph,
    chromatic_polynomial,
    clique_number,
    complete_graph,
    cycle_graph,
    graph_from_edges,
    is_chordal,
    is_triangle_free,
    parse_graph,
    path_graph,
)
from qgraph.intpoly import IntPolynomial
from qgraph.qcomb import expand_q_falling, q_binomial, q_falling, q_stirling, subspace_counts_oracle
from qgraph.theorems import (
    closed_form,
    probe_polynomiality,
    stable_partition_rows,
    verify_congruence,
    verify_triangle_free,
)

t = IntPolynomial.t()


def record(n: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {n:>2}. {title}" + (f"  ({detail})" if detail else "")
    ACCEPTANCE.append(line)
    print(line)


def labeled_graphs(ell: int):
    pairs = list(itertools.combinations(range(1, ell + 1), 2))
    for r in range(len(pairs) + 1):
        for es in itertools.combinations(pairs, r):
            yield graph_from_edges(ell, es)


def canonical(G: Graph) -> tuple:
    best = None
    for perm in itertools.permutations(range(1, G.ell + 1)):
        edges = tuple(sorted(tuple(sorted((perm[i - 1], perm[j - 1]))) for i, j in G.edges))
        if best is None or edges < best:
            best = edges
    return (G.ell, best)


def graphs_up_to_iso(max_vertices: int):
    seen = set()
    for ell in range(1, max_vertices + 1):
        for G in labeled_graphs(ell):
            key = canonical(G)
            if key not in seen:
                seen.add(key)
                yield G


@lru_cache(maxsize=None)
def chi(G: Graph, q: int, method: str = "auto") -> IntPolynomial:
    return graph_characteristic_polynomial(G, field_from_order(q), method)


def random_sample(n: int = 200, seed: int = 2024) -> list[Graph]:
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        ell = rng.randint(1, 5)
        pairs = itertools.combinations(range(1, ell + 1), 2)
        out.append(graph_from_edges(ell, [e for e in pairs if rng.random() < 0.5]))
    return out


SAMPLE = random_sample()


def test_01_complete_graphs():
    start = time.perf_counter()
    bad = [(q, ell) for q in (2, 3, 4) for ell in range(1, 5)
           if chi(complete_graph(ell), q, "lattice") != IntPolynomial.from_roots(q**i for i in range(ell))]
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 10
    record(1, "complete graphs, lattice chi = prod (t - q^i)", ok, f"{elapsed:.1f}s, mismatches {bad}")
    assert ok


def test_02_paths_and_cycles():
    start = time.perf_counter()
    bad = []
    for q in (2, 3):
        for ell in range(1, 7):
            if chi(path_graph(ell), q, "lattice") != (t - 1) * (t - q) ** (ell - 1):
                bad.append(("path", q, ell))
        for ell in range(4, 7):
            lemma = (t - q) ** ell + (-1) ** ell * (q - 1) ** (ell - 1) * (t - q)
            if chi(cycle_graph(ell), q, "lattice") != lemma:
                bad.append(("cycle", q, ell))
        # the variant ending in (t - 1) for C4 does not survive
        variant = (t - q) ** 4 + (q - 1) ** 3 * (t - 1)
        if chi(cycle_graph(4), q, "lattice") == variant:
            bad.append(("C4 variant", q))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 30
    record(2, "paths and cycles match closed forms; C4 follows the cycle lemma", ok,
           f"{elapsed:.1f}s, mismatches {bad}")
    assert ok


def test_03_remark_pair():
    start = time.perf_counter()
    data = resources.files("qgraph").joinpath("data")
    G = parse_graph(data.joinpath("remark_G.txt").read_text())
    H = parse_graph(data.joinpath("remark_H.txt").read_text())
    target = t**7 - 30 * t**6 + 376 * t**5 - 2545 * t**4 + 9934 * t**3 - 21880 * t**2 + 24384 * t - 10240
    chrom_G = t**7 - 14 * t**6 + 83 * t**5 - 265 * t**4 + 474 * t**3 - 441 * t**2 + 162 * t
    chrom_H = t**7 - 14 * t**6 + 83 * t**5 - 264 * t**4 + 468 * t**3 - 430 * t**2 + 156 * t
    ok = (chi(G, 2, "lattice") == target and chi(H, 2, "lattice") == target
          and chromatic_polynomial(G) == chrom_G and chromatic_polynomial(H) == chrom_H
          and chrom_G != chrom_H)
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 300
    record(3, "remark pair: equal arrangement polynomials, different chromatic polynomials", ok, f"{elapsed:.1f}s")
    assert ok


def test_04_congruence():
    failures = 0
    cases = 0
    for G in SAMPLE:
        for q in (3, 4, 5):
            P = chi(G, q)
            for k in range(G.ell + 1):
                cases += 1
                if not verify_congruence(G, q, k, P).ok:
                    failures += 1
    record(4, "congruence chi(q^k)/(q-1)^ell = chi(G,k) mod q-1 on 200 random graphs", failures == 0,
           f"{cases} cases, {failures} failures")
    assert failures == 0


def test_05_stable_partitions():
    failures = 0
    cases = 0
    for G in SAMPLE:
        for q in (3, 4):
            for row in stable_partition_rows(G, q, chi(G, q)):
                cases += 1
                failures += not row.ok
    record(5, "c_i/(q-1)^(ell-i) is a non-negative integer = s_i mod q-1", failures == 0,
           f"{cases} cases, {failures} failures")
    assert failures == 0


def test_06_subspace_oracle():
    bad = []
    n = 0
    for q in (2, 3):
        F = field_create(q)
        for ell in range(1, 5):
            for G in labeled_graphs(ell):
                n += 1
                counts = subspace_counts_oracle(build_central(G, F))
                if list(expand_q_falling(chi(G, q, "lattice"), q).coeffs) != counts:
                    bad.append((G, q))
    record(6, "q-falling coefficients equal subspace counts", not bad, f"{n} graph/field pairs")
    assert not bad


def test_07_point_counts():
    bad = []
    n = 0
    for q in (2, 3):
        F = field_create(q)
        for ell in range(1, 4):
            for G in labeled_graphs(ell):
                A = build_central(G, F)
                P = chi(G, q, "lattice")
                for k in range(1, 4):
                    n += 1
                    if point_count(A, k) != P(q**k):
                        bad.append((G, q, k))
    record(7, "chi(q^k) equals the number of points off the arrangement", not bad, f"{n} counts")
    assert not bad


def test_08_identities():
    bad = []
    for q in (2, 3, 4, 5):
        for ell in range(9):
            binom = sum((q_binomial(ell, i, q) * q_falling(i, q) for i in range(ell + 1)), IntPolynomial())
            stir = sum(((q - 1) ** (ell - i) * q_stirling(ell, i, q) * q_falling(i, q) for i in range(ell + 1)),
                       IntPolynomial())
            if binom != t**ell or stir != (t - 1) ** ell:
                bad.append((q, ell))
    record(8, "q-binomial and q-Stirling expansions of t^ell and (t-1)^ell", not bad)
    assert not bad


def test_09_affine_and_cone():
    small = list(itertools.islice(graphs_up_to_iso(5), 20))
    bad = [(G, q) for G in small for q in (2, 3)
           if not (affine_lemma_check(G, field_create(q)) and cone_decone_check(G, field_create(q)))]
    record(9, "affine lemma and cone/decone on 20 small graphs", not bad and len(small) == 20,
           f"{len(small)} graphs")
    assert not bad and len(small) == 20


def test_10_triangle_free():
    graphs = [G for G in graphs_up_to_iso(5) if is_triangle_free(G)]
    bad = [(G, q) for G in graphs for q in (2, 3) if not verify_triangle_free(G, q, chi(G, q))]
    record(10, "triangle-free theorem on all triangle-free graphs with <= 5 vertices", not bad,
           f"{len(graphs)} graphs up to isomorphism")
    assert not bad


def test_11_freeness():
    start = time.perf_counter()
    graphs = [G for G in graphs_up_to_iso(4) if is_chordal(G) and clique_number(G) <= 3]
    bad = []
    for q in (2, 3):
        F = field_create(q)
        for G in graphs:
            cert = certify_chordal(G, F)
            if not cert.passed or IntPolynomial.from_roots(cert.degree_check) != chi(G, q, "lattice"):
                bad.append((G, q))
        for ell in (4, 5):
            if chi(cycle_graph(ell), q).factors_into_integer_linear():
                bad.append((f"C{ell}", q))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 300
    record(11, "chordal bases pass the Saito check; C4 and C5 do not factor", ok,
           f"{len(graphs)} chordal graphs, {elapsed:.1f}s")
    assert ok


def test_12_probe_exploratory():
    # reported only: the probe is exploratory and never fails the build
    cases = [
        ("P4", path_graph(4), [2, 3, 4, 5, 7], None, lambda q: closed_form("path", ell=4, q=q)),
        ("C4", cycle_graph(4), [2, 3, 4, 5, 7], 3, lambda q: closed_form("cycle", ell=4, q=q)),
        ("C5", cycle_graph(5), [2, 3, 4, 5, 7, 8], 4, lambda q: closed_form("cycle", ell=5, q=q)),
        ("K3", complete_graph(3), [2, 3, 4, 5, 7], None, lambda q: closed_form("complete", ell=3, q=q)),
    ]
    notes = []
    all_ok = True
    for name, G, qs, bound, formula in cases:
        try:
            report = probe_polynomiality(G, qs, bound)
            ok = report.fitted and all(report.at(q) == formula(q) for q in (11, 13, 16))
            ok = ok and report.limits_match()
        except Exception as exc:  # noqa: BLE001 - exploratory
            ok = False
            name += f" error {exc}"
        all_ok &= ok
        notes.append(f"{name}:{'ok' if ok else 'no'}")
    record(12, "polynomiality probe (exploratory, not asserted)", all_ok, ", ".join(notes))
