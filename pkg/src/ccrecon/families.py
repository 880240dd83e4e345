"""Seeded instance generators: classic families, random graphs, and the
adversarial constructions used by the lower-bound experiments.
"""

from __future__ import annotations

import random
from itertools import combinations
from typing import Callable, Mapping

from .errors import InvalidInputError
from .graphs import Graph


def _require(params: Mapping, key: str) -> int:
    if key not in params:
        raise InvalidInputError(f"family parameter {key!r} is required")
    value = params[key]
    if not isinstance(value, int):
        raise InvalidInputError(f"family parameter {key!r} must be an integer, got {value!r}")
    return value


def _edgeless(params, rng):
    return Graph(_require(params, "n"))


def _path(params, rng):
    n = _require(params, "n")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def _cycle(params, rng):
    n = _require(params, "n")
    if n < 3:
        raise InvalidInputError(f"cycle needs n >= 3, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def _star(params, rng):
    # Center is vertex 0, leaves are 1..n-1.
    n = _require(params, "n")
    return Graph(n, [(0, i) for i in range(1, n)])


def _complete(params, rng):
    n = _require(params, "n")
    return Graph(n, combinations(range(n), 2))


def _grid(params, rng):
    rows = _require(params, "rows")
    cols = _require(params, "cols")
    if rows < 1 or cols < 1:
        raise InvalidInputError("grid needs rows >= 1 and cols >= 1")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, edges)


def _er_with_m_edges(params, rng):
    n = _require(params, "n")
    m = _require(params, "m")
    all_pairs = list(combinations(range(n), 2))
    if m < 0 or m > len(all_pairs):
        raise InvalidInputError(f"m={m} impossible for n={n}")
    return Graph(n, rng.sample(all_pairs, m))


def _bounded_degree(params, rng):
    n = _require(params, "n")
    delta = _require(params, "delta")
    if delta < 0:
        raise InvalidInputError("delta must be nonnegative")
    prob = float(params.get("prob", 0.5))
    pairs = list(combinations(range(n), 2))
    rng.shuffle(pairs)
    degree = [0] * n
    edges = []
    for u, v in pairs:
        if degree[u] < delta and degree[v] < delta and rng.random() < prob:
            degree[u] += 1
            degree[v] += 1
            edges.append((u, v))
    return Graph(n, edges)


def _partial_ktree(params, rng):
    n = _require(params, "n")
    k = _require(params, "k")
    if k < 1 or n < k + 1:
        raise InvalidInputError(f"partial_ktree needs k >= 1 and n >= k+1, got n={n}, k={k}")
    delete_prob = float(params.get("delete_prob", 0.0))
    # Random k-tree: seed clique on 0..k, then attach each new vertex to a
    # uniformly chosen existing k-clique.
    edges = set(combinations(range(k + 1), 2))
    cliques = [tuple(sorted(c)) for c in combinations(range(k + 1), k)]
    for v in range(k + 1, n):
        base = cliques[rng.randrange(len(cliques))]
        for u in base:
            edges.add((u, v))
        for drop in base:
            cliques.append(tuple(sorted((set(base) - {drop}) | {v})))
    initial = set(combinations(range(k + 1), 2))
    kept = []
    for e in sorted(edges):
        if e not in initial and rng.random() < delete_prob:
            continue
        kept.append(e)
    return Graph(n, kept)


def _clique_pair(params, rng):
    # Two eta-cliques on {0..eta-1} and {eta..2*eta-1}; any further vertices
    # are isolated. A seeded bipartite edge set crosses between the cliques.
    eta = _require(params, "eta")
    if eta < 1:
        raise InvalidInputError("eta must be positive")
    n = params.get("n", 2 * eta)
    if not isinstance(n, int) or n < 2 * eta:
        raise InvalidInputError(f"clique_pair needs n >= 2*eta, got n={n!r}")
    cross_prob = float(params.get("cross_prob", 0.5))
    edges = list(combinations(range(eta), 2))
    edges += list(combinations(range(eta, 2 * eta), 2))
    for u in range(eta):
        for v in range(eta, 2 * eta):
            if rng.random() < cross_prob:
                edges.append((u, v))
    return Graph(n, edges)


def _g_uv(params, rng, with_uv=False):
    # Vertices 0 and 1 are the distinguished pair; all others attach to both.
    n = _require(params, "n")
    if n < 2:
        raise InvalidInputError("g_uv needs n >= 2")
    edges = []
    for x in range(2, n):
        edges.append((0, x))
        edges.append((1, x))
    if with_uv:
        edges.append((0, 1))
    return Graph(n, edges)


def _block_chain(params, rng):
    # Consecutive blocks of p vertices induce cliques; a path v_i v_{i+1}
    # threads through all of them.
    n = _require(params, "n")
    p = _require(params, "p")
    if p < 1:
        raise InvalidInputError("p must be positive")
    edges = set()
    for i in range(n - 1):
        edges.add((i, i + 1))
    for i in range(n):
        for j in range(i + 1, n):
            if i // p == j // p:
                edges.add((i, j))
    return Graph(n, sorted(edges))


_FAMILIES: dict[str, Callable] = {
    "edgeless": _edgeless,
    "path": _path,
    "cycle": _cycle,
    "star": _star,
    "complete": _complete,
    "grid": _grid,
    "er_with_m_edges": _er_with_m_edges,
    "bounded_degree": _bounded_degree,
    "partial_ktree": _partial_ktree,
    "clique_pair": _clique_pair,
    "g_uv": lambda params, rng: _g_uv(params, rng, with_uv=False),
    "g_uv_plus": lambda params, rng: _g_uv(params, rng, with_uv=True),
    "block_chain": _block_chain,
    "block_chain_#cc": _block_chain,
}

FAMILY_NAMES = tuple(name for name in _FAMILIES if name != "block_chain_#cc")


def generate(family: str, params: Mapping, seed: int) -> Graph:
    """Build an instance; deterministic for fixed (family, params, seed)."""
    try:
        builder = _FAMILIES[family]
    except KeyError:
        raise InvalidInputError(
            f"unknown family {family!r}; known: {', '.join(FAMILY_NAMES)}"
        ) from None
    return builder(params, random.Random(seed))


def clique_pair_output_forms(eta: int, n: int, q: frozenset[int] | set[int]):
    """The two admissible component partitions a clique-pair instance can
    produce for a query, as lists of blocks (empty blocks dropped)."""
    c1 = frozenset(range(eta))
    c2 = frozenset(range(eta, 2 * eta))
    inside1 = frozenset(q) & c1
    inside2 = frozenset(q) & c2
    singles = [frozenset({v}) for v in sorted(set(q) - c1 - c2)]
    split = singles + [b for b in (inside1, inside2) if b]
    joined = singles + ([inside1 | inside2] if inside1 | inside2 else [])
    return split, joined
