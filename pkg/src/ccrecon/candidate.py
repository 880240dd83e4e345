"""Working-supergraph bookkeeping shared by the reconstruction algorithms.

All algorithms here follow the same evidence rule: start from the complete
graph and delete a pair only when some query showed its endpoints in
different components. Deletions accumulate in per-vertex bitmasks, which
keeps the per-query cost proportional to the query size.
"""

from __future__ import annotations

import math
import random
from typing import Iterable, Iterator

from .errors import InvalidInputError
from .graphs import Graph


class CandidateGraph:
    """Supergraph candidate: edge set starts complete and only shrinks."""

    __slots__ = ("n", "candidate_edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] | None = None):
        self.n = n
        if edges is None:
            self.candidate_edges = {
                (u, v) for u in range(n) for v in range(u + 1, n)
            }
        else:
            self.candidate_edges = {
                (u, v) if u < v else (v, u) for u, v in edges
            }

    @classmethod
    def from_graph(cls, g: Graph) -> "CandidateGraph":
        return cls(g.n, g.edges)

    def remove(self, u: int, v: int) -> None:
        self.candidate_edges.discard((u, v) if u < v else (v, u))

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.candidate_edges

    def neighbors(self, v: int) -> set[int]:
        return {b if a == v else a for a, b in self.candidate_edges if v in (a, b)}

    def to_graph(self) -> Graph:
        return Graph(self.n, self.candidate_edges)

    def __len__(self) -> int:
        return len(self.candidate_edges)


def removal_query_count(n_active: int, p: int) -> int:
    """Number of randomized queries needed to certify all removals at
    exclusion size p with failure probability at most 1/n^3 per pair."""
    if n_active <= 1:
        return 0
    return math.ceil(3 * math.e * (p + 1) ** 2 * math.log(n_active))


def bernoulli_members(members: Iterable[int], denom: float,
                      rng: random.Random) -> frozenset[int]:
    """Independent inclusion with probability 1/denom over an arbitrary
    vertex collection (iterated in sorted order for determinism)."""
    if denom < 1:
        raise InvalidInputError(f"denominator must be >= 1, got {denom}")
    ordered = sorted(members)
    if denom == 1:
        return frozenset(ordered)
    p = 1.0 / denom
    return frozenset(v for v in ordered if rng.random() < p)


def _mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def split_removal_program(n: int, queries: Iterable[frozenset[int]],
                          active: Iterable[int] | None = None,
                          collect_sizes: bool = False):
    """Generator core of the non-adaptive algorithms.

    Yields each query, receives its component partition, and records every
    pair of queried vertices that appeared in different components. Returns
    (graph of surviving pairs among the active vertices, stats).
    """
    members = sorted(active) if active is not None else list(range(n))
    active_mask = _mask(members)
    removed = {v: 0 for v in members}
    total_bits = 0
    sizes: list[int] = []
    pair_count = len(members) * (len(members) - 1) // 2
    executed = 0
    for q in queries:
        parts = yield q
        executed += 1
        q_mask = _mask(q) & active_mask
        for block in parts.blocks:
            block_mask = _mask(block) & active_mask
            others = q_mask & ~block_mask
            if not others:
                continue
            for v in _bits(block_mask):
                newly = others & ~removed[v]
                if newly:
                    removed[v] |= newly
                    total_bits += newly.bit_count()
        if collect_sizes:
            sizes.append(pair_count - total_bits // 2)
    edges = []
    for v in members:
        above = active_mask & ~((1 << (v + 1)) - 1) & ~removed[v]
        for u in _bits(above):
            edges.append((v, u))
    stats = {"queries": executed}
    if collect_sizes:
        stats["candidate_sizes"] = sizes
    return Graph(n, edges), stats
