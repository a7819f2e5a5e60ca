"""Simple graphs on vertices 1..ell and the combinatorics built on them."""

from __future__ import annotations

import functools
import hashlib
import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from . import config
from .errors import GuardExceeded, InputError
from .intpoly import IntPolynomial, falling_factorial


@dataclass(frozen=True)
class Graph:
    ell: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if not isinstance(self.ell, int) or self.ell < 0:
            raise InputError(f"vertex count must be a non-negative integer, got {self.ell!r}")
        for i, j in self.edges:
            if not (1 <= i < j <= self.ell):
                raise InputError(f"malformed edge ({i}, {j}) for ell={self.ell}")

    @property
    def vertices(self) -> range:
        return range(1, self.ell + 1)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    @cached_property
    def adjacency(self) -> dict[int, frozenset]:
        nbrs: dict[int, set] = {v: set() for v in self.vertices}
        for i, j in self.edges:
            nbrs[i].add(j)
            nbrs[j].add(i)
        return {v: frozenset(s) for v, s in nbrs.items()}

    @cached_property
    def _masks(self) -> list[int]:
        # bit v set in _masks[u] iff {u, v} is an edge; index 0 unused
        masks = [0] * (self.ell + 1)
        for i, j in self.edges:
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        return masks

    def neighbors(self, v: int) -> frozenset:
        return self.adjacency[v]

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(self.has_edge(a, b) for a, b in itertools.combinations(vs, 2))

    def induced(self, vertices: Iterable[int]) -> Graph:
        """Induced subgraph, relabelled to 1..k in increasing vertex order."""
        keep = sorted(set(vertices))
        pos = {v: k + 1 for k, v in enumerate(keep)}
        return Graph(len(keep), frozenset(
            (pos[i], pos[j]) for i, j in self.edges if i in pos and j in pos))

    def to_text(self) -> str:
        lines = [str(self.ell)] + [f"{i} {j}" for i, j in self.sorted_edges()]
        return "\n".join(lines) + "\n"

    def digest(self) -> str:
        return hashlib.sha256(self.to_text().encode()).hexdigest()

    def __repr__(self) -> str:
        return f"Graph({self.ell}, {self.sorted_edges()})"


def graph_from_edges(ell: int, edges: Iterable[Iterable[int]]) -> Graph:
    if not isinstance(ell, int) or ell < 1:
        raise InputError(f"ell must be a positive integer, got {ell!r}")
    out = set()
    for e in edges:
        i, j = tuple(e)
        if i == j:
            raise InputError(f"loop edge at vertex {i}")
        for v in (i, j):
            if not 1 <= v <= ell:
                raise InputError(f"endpoint {v} outside 1..{ell}")
        out.add((min(i, j), max(i, j)))
    return Graph(ell, frozenset(out))


def parse_graph(text: str) -> Graph:
    """Read the plain-text format: first data line ell, then one 'i j' per edge."""
    ell = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            nums = [int(x) for x in parts]
        except ValueError:
            raise InputError(f"line {lineno}: expected integers, got {raw!r}") from None
        if ell is None:
            if len(nums) != 1:
                raise InputError(f"line {lineno}: expected the vertex count")
            ell = nums[0]
            continue
        if len(nums) != 2:
            raise InputError(f"line {lineno}: expected an edge 'i j', got {raw!r}")
        edges.append(nums)
    if ell is None:
        raise InputError("empty graph file")
    return graph_from_edges(ell, edges)


def read_graph(path) -> Graph:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_graph(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read graph file {path}: {exc}") from exc


# -- standard families -------------------------------------------------------

def empty_graph(ell: int) -> Graph:
    return Graph(ell, frozenset())


def complete_graph(ell: int) -> Graph:
    return Graph(ell, frozenset(itertools.combinations(range(1, ell + 1), 2)))


def path_graph(ell: int) -> Graph:
    return Graph(ell, frozenset((i, i + 1) for i in range(1, ell)))


def cycle_graph(ell: int) -> Graph:
    if ell < 3:
        raise InputError("a cycle needs at least 3 vertices")
    return Graph(ell, frozenset((i, i + 1) for i in range(1, ell)) | {(1, ell)})


# -- cliques -----------------------------------------------------------------

def maximal_cliques(G: Graph) -> list[tuple[int, ...]]:
    """Bron-Kerbosch with pivoting over bitmasks, output sorted."""
    masks = G._masks
    out: list[tuple[int, ...]] = []

    def bits(x: int):
        while x:
            low = x & -x
            yield low.bit_length() - 1
            x ^= low

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(tuple(bits(r)))
            return
        pivot = max(bits(p | x), key=lambda u: (masks[u] & p).bit_count())
        for v in list(bits(p & ~masks[pivot])):
            expand(r | (1 << v), p & masks[v], x & masks[v])
            p &= ~(1 << v)
            x |= 1 << v

    full = sum(1 << v for v in G.vertices)
    if full:
        expand(0, full, 0)
    return sorted(out)


def all_cliques(G: Graph) -> list[tuple[int, ...]]:
    """Every nonempty clique (exponential; for small graphs and tests)."""
    seen = set()
    for K in maximal_cliques(G):
        for r in range(1, len(K) + 1):
            seen.update(itertools.combinations(K, r))
    return sorted(seen, key=lambda c: (len(c), c))


def clique_number(G: Graph) -> int:
    return max((len(K) for K in maximal_cliques(G)), default=0)


def is_triangle_free(G: Graph) -> bool:
    return clique_number(G) <= 2


# -- chordality --------------------------------------------------------------

def lex_bfs(G: Graph) -> list[int]:
    """Lexicographic BFS visit order; ties go to the smallest vertex."""
    labels: dict[int, list[int]] = {v: [] for v in G.vertices}
    order: list[int] = []
    n = G.ell
    for step in range(n):
        v = max(labels, key=lambda u: (labels[u], -u))
        order.append(v)
        del labels[v]
        for u in G.neighbors(v):
            if u in labels:
                labels[u].append(n - step)
    return order


def is_peo(G: Graph, order: list[int]) -> bool:
    """Each vertex's earlier neighbours form a clique."""
    if sorted(order) != list(G.vertices):
        return False
    seen: set[int] = set()
    for v in order:
        if not G.is_clique(sorted(G.neighbors(v) & seen)):
            return False
        seen.add(v)
    return True


def chordality(G: Graph) -> tuple[bool, list[int] | None]:
    order = lex_bfs(G)
    if is_peo(G, order):
        return True, order
    return False, None


def is_chordal(G: Graph) -> bool:
    return chordality(G)[0]


def induced_cycle_witness(G: Graph) -> tuple[int, ...] | None:
    """An induced cycle of length >= 4, or None when G is chordal."""
    for v in G.vertices:
        nv = G.neighbors(v)
        for a, b in itertools.combinations(sorted(nv), 2):
            if G.has_edge(a, b):
                continue
            blocked = (nv - {a, b}) | {v}
            prev = {a: None}
            queue = deque([a])
            while queue and b not in prev:
                u = queue.popleft()
                for w in sorted(G.neighbors(u)):
                    if w not in prev and w not in blocked:
                        prev[w] = u
                        queue.append(w)
            if b in prev:
                path = []
                u = b
                while u is not None:
                    path.append(u)
                    u = prev[u]
                return _normalize_cycle([v] + path)
    return None


def _normalize_cycle(cycle: list[int]) -> tuple[int, ...]:
    k = cycle.index(min(cycle))
    rot = cycle[k:] + cycle[:k]
    if rot[-1] < rot[1]:
        rot = [rot[0]] + rot[1:][::-1]
    return tuple(rot)


def earlier_neighbor_counts(G: Graph, order: list[int]) -> list[int]:
    """|N_{G_i}(v_i)| for each position i of an ordering."""
    seen: set[int] = set()
    out = []
    for v in order:
        out.append(len(G.neighbors(v) & seen))
        seen.add(v)
    return out


# -- surgery -----------------------------------------------------------------

def _check_edge(G: Graph, e) -> tuple[int, int]:
    i, j = tuple(e)
    i, j = min(i, j), max(i, j)
    if (i, j) not in G.edges:
        raise InputError(f"({i}, {j}) is not an edge")
    return i, j


def delete_edge(G: Graph, e) -> Graph:
    edge = _check_edge(G, e)
    return Graph(G.ell, G.edges - {edge})


def contraction_map(ell: int, e: tuple[int, int]) -> dict[int, int]:
    """Vertex map of G -> G/e: j merges into i < j and later labels shift down."""
    i, j = e
    return {v: (i if v == j else (v - 1 if v > j else v)) for v in range(1, ell + 1)}


def contract_edge(G: Graph, e) -> Graph:
    edge = _check_edge(G, e)
    f = contraction_map(G.ell, edge)
    new = set()
    for a, b in G.edges:
        fa, fb = f[a], f[b]
        if fa != fb:
            new.add((min(fa, fb), max(fa, fb)))
    return Graph(G.ell - 1, frozenset(new))


def join_complete(G: Graph, m: int) -> Graph:
    """G + K_m: m new vertices ell+1..ell+m joined to everything."""
    if m < 0:
        raise InputError("m must be non-negative")
    n = G.ell + m
    new = set(G.edges)
    for v in range(G.ell + 1, n + 1):
        for u in range(1, v):
            new.add((u, v))
    return Graph(n, frozenset(new))


def dc_hypotheses(G: Graph, e) -> bool:
    """Whether the q-deletion-contraction formula applies to edge e.

    (1) e is a maximal clique, and (2) every clique of G/e is the image of a
    clique of G under the contraction map.
    """
    edge = _check_edge(G, e)
    cliques = maximal_cliques(G)
    if edge not in cliques:
        return False
    f = contraction_map(G.ell, edge)
    images = [frozenset(f[v] for v in K) for K in cliques]
    for K in maximal_cliques(contract_edge(G, edge)):
        if not any(set(K) <= img for img in images):
            return False
    return True


# -- chromatic polynomial ----------------------------------------------------

def chromatic_polynomial(G: Graph) -> IntPolynomial:
    """Deletion-contraction (or addition-contraction when dense), memoized."""
    if G.ell > config.CHROMATIC_MAX_VERTICES:
        raise GuardExceeded(f"chromatic polynomial limited to {config.CHROMATIC_MAX_VERTICES} vertices")
    edges = frozenset((i - 1, j - 1) for i, j in G.edges)
    return IntPolynomial(_chrom(G.ell, edges))


def _canonical(n: int, edges: frozenset) -> tuple[int, frozenset]:
    deg = [0] * n
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    order = sorted(range(n), key=lambda v: (deg[v], v))
    pos = {v: k for k, v in enumerate(order)}
    return n, frozenset((min(pos[a], pos[b]), max(pos[a], pos[b])) for a, b in edges)


def _components(n: int, edges: frozenset) -> list[list[int]]:
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for a, b in edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        comp, stack = [], [s]
        seen[s] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in nbrs[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _contract(n: int, edges: frozenset, a: int, b: int) -> frozenset:
    # merge b into a, relabel vertices above b down by one
    def f(v):
        v = a if v == b else v
        return v - 1 if v > b else v
    out = set()
    for u, w in edges:
        fu, fw = f(u), f(w)
        if fu != fw:
            out.add((min(fu, fw), max(fu, fw)))
    return frozenset(out)


def _chrom(n: int, edges: frozenset) -> tuple[int, ...]:
    return _chrom_cached(*_canonical(n, edges))


@functools.lru_cache(maxsize=200_000)
def _chrom_cached(n: int, edges: frozenset) -> tuple[int, ...]:
    m = len(edges)
    if m == 0:
        return (0,) * n + (1,)
    if m == n * (n - 1) // 2:
        return falling_factorial(n).coeffs
    comps = _components(n, edges)
    if len(comps) > 1:
        result = IntPolynomial([1])
        for comp in comps:
            pos = {v: k for k, v in enumerate(comp)}
            sub = frozenset((pos[a], pos[b]) for a, b in edges if a in pos)
            result = result * IntPolynomial(_chrom(len(comp), sub))
        return result.coeffs
    if m == n - 1:
        return (IntPolynomial.t() * IntPolynomial([-1, 1]) ** (n - 1)).coeffs
    if 2 * m > n * (n - 1) // 2:
        # dense: P(G) = P(G + e) + P(G / e) for a non-edge e
        a, b = next((u, w) for u, w in itertools.combinations(range(n), 2) if (u, w) not in edges)
        added = IntPolynomial(_chrom(n, edges | {(a, b)}))
        merged = IntPolynomial(_chrom(n - 1, _contract(n, edges, a, b)))
        return (added + merged).coeffs
    a, b = max(edges)
    deleted = IntPolynomial(_chrom(n, edges - {(a, b)}))
    merged = IntPolynomial(_chrom(n - 1, _contract(n, edges, a, b)))
    return (deleted - merged).coeffs


def count_colorings(G: Graph, k: int) -> int:
    """Brute-force count of proper k-colourings (small graphs, tests)."""
    total = 0
    edges = G.sorted_edges()
    for colors in itertools.product(range(k), repeat=G.ell):
        if all(colors[i - 1] != colors[j - 1] for i, j in edges):
            total += 1
    return total


# -- stable partitions -------------------------------------------------------

@dataclass(frozen=True)
class StablePartitionCounts:
    """``counts[i]`` is the number of stable partitions into i blocks (index 0 unused)."""

    counts: tuple[int, ...]

    def s(self, i: int) -> int:
        return self.counts[i] if 0 <= i < len(self.counts) else 0


def stable_partition_counts(G: Graph) -> StablePartitionCounts:
    """Count set partitions with no edge inside a block, by block number.

    Vertices are placed in order; a block is summarised by the set of later
    vertices it forbids, so interchangeable states are merged by memoisation.
    """
    n = G.ell
    if n > config.STABLE_PARTITION_MAX_VERTICES:
        raise GuardExceeded(f"stable partitions limited to {config.STABLE_PARTITION_MAX_VERTICES} vertices")
    later = [0] * n
    for i, j in G.edges:
        later[i - 1] |= 1 << (j - 1)

    @functools.lru_cache(maxsize=None)
    def go(v: int, blocks: tuple[int, ...]) -> tuple[int, ...]:
        if v == n:
            out = [0] * (n + 1)
            out[len(blocks)] = 1
            return tuple(out)
        acc = [0] * (n + 1)
        bit = 1 << v
        keep = ~((bit << 1) - 1)  # drop vertices <= v from masks
        seen = {}
        for idx, mask in enumerate(blocks):
            if mask & bit:
                continue
            seen[mask] = seen.get(mask, 0) + 1
        for mask, mult in seen.items():
            rest = list(blocks)
            rest.remove(mask)
            nxt = tuple(sorted([(b & keep) for b in rest] + [((mask | later[v]) & keep)]))
            sub = go(v + 1, nxt)
            for k in range(n + 1):
                acc[k] += mult * sub[k]
        nxt = tuple(sorted([(b & keep) for b in blocks] + [later[v] & keep]))
        sub = go(v + 1, nxt)
        for k in range(n + 1):
            acc[k] += sub[k]
        return tuple(acc)

    return StablePartitionCounts(go(0, ()))


def stable_partitions_brute(G: Graph) -> StablePartitionCounts:
    """Enumerate every set partition directly (restricted growth strings)."""
    n = G.ell
    counts = [0] * (n + 1)
    edges = G.sorted_edges()

    def rgs(prefix: list[int], nblocks: int):
        if len(prefix) == n:
            if all(prefix[i - 1] != prefix[j - 1] for i, j in edges):
                counts[nblocks] += 1
            return
        for b in range(nblocks + 1):
            rgs(prefix + [b], max(nblocks, b + 1))

    rgs([], 0)
    return StablePartitionCounts(tuple(counts))
