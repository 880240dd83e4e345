"""Immutable simple undirected graphs on vertices 0..n-1, plus the
ground-truth connected-components computation that backs every oracle.
"""

from __future__ import annotations

import os
from typing import Iterable, Iterator

from .errors import InvalidInputError

# Graphs at or below this vertex count memoize component computations.
# Exhaustive small-n suites re-query the same subsets thousands of times.
_CC_CACHE_MAX_N = 24


class Partition:
    """Disjoint nonempty vertex blocks covering a queried set.

    Blocks are stored canonically (each block a frozenset, blocks ordered by
    their minimum vertex) so transcripts and comparisons are deterministic.
    """

    __slots__ = ("blocks", "_index")

    def __init__(self, blocks: Iterable[Iterable[int]]):
        normalized = []
        for b in blocks:
            fb = frozenset(b)
            if not fb:
                raise InvalidInputError("partition blocks must be nonempty")
            normalized.append(fb)
        normalized.sort(key=min)
        self.blocks: tuple[frozenset[int], ...] = tuple(normalized)
        index: dict[int, int] = {}
        for i, b in enumerate(self.blocks):
            for v in b:
                if v in index:
                    raise InvalidInputError(f"vertex {v} appears in two blocks")
                index[v] = i
        self._index = index

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self) -> Iterator[frozenset[int]]:
        return iter(self.blocks)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash(self.blocks)

    def __repr__(self) -> str:
        inner = ", ".join("{" + ",".join(map(str, sorted(b))) + "}" for b in self.blocks)
        return f"Partition([{inner}])"

    @property
    def support(self) -> frozenset[int]:
        """All vertices covered by the partition."""
        return frozenset(self._index)

    def block_of(self, v: int) -> frozenset[int]:
        try:
            return self.blocks[self._index[v]]
        except KeyError:
            raise InvalidInputError(f"vertex {v} not in partition") from None

    def block_index(self, v: int) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise InvalidInputError(f"vertex {v} not in partition") from None

    def same_block(self, u: int, v: int) -> bool:
        return self.block_index(u) == self.block_index(v)

    def to_lists(self) -> list[list[int]]:
        """Canonical JSON-friendly form: sorted lists, ordered by first element."""
        return [sorted(b) for b in self.blocks]


class Graph:
    """Simple undirected graph: vertex count plus a set of unordered pairs.

    Immutable after construction; safe to share across concurrent sessions.
    """

    __slots__ = ("n", "_edges", "_adj", "_adj_masks", "_cc_cache")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if not isinstance(n, int) or n < 0:
            raise InvalidInputError(f"vertex count must be a nonnegative integer, got {n!r}")
        self.n = n
        normalized: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInputError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise InvalidInputError(f"self-loop at vertex {u}")
            normalized.add((u, v) if u < v else (v, u))
        self._edges: frozenset[tuple[int, int]] = frozenset(normalized)
        adj: list[set[int]] = [set() for _ in range(n)]
        masks = [0] * n
        for u, v in self._edges:
            adj[u].add(v)
            adj[v].add(u)
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        self._adj: tuple[frozenset[int], ...] = tuple(frozenset(a) for a in adj)
        self._adj_masks: tuple[int, ...] = tuple(masks)
        self._cc_cache: dict[int, Partition] | None = {} if n <= _CC_CACHE_MAX_N else None

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        return self._edges

    @property
    def m(self) -> int:
        return len(self._edges)

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> frozenset[int]:
        self._check_vertex(v)
        return self._adj[v]

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self._adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return v in self._adj[u]

    def adjacency_mask(self, v: int) -> int:
        """Neighbors of v as a bitmask (bit u set iff uv is an edge)."""
        self._check_vertex(v)
        return self._adj_masks[v]

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise InvalidInputError(f"vertex {v} out of range for n={self.n}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _mask_of(vertices: Iterable[int], n: int) -> int:
    mask = 0
    for v in vertices:
        if not (0 <= v < n):
            raise InvalidInputError(f"vertex {v} out of range for n={n}")
        mask |= 1 << v
    return mask


def _iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def components_bruteforce(g: Graph, s: Iterable[int]) -> Partition:
    """Connected components of the subgraph induced by ``s``, by direct traversal.

    This is the ground-truth backend for every simulated oracle; it never
    performs queries itself.
    """
    s_mask = _mask_of(s, g.n)
    cached = g._cc_cache
    if cached is not None:
        hit = cached.get(s_mask)
        if hit is not None:
            return hit
    masks = g._adj_masks
    blocks: list[list[int]] = []
    remaining = s_mask
    while remaining:
        low = remaining & -remaining
        frontier = low
        comp = 0
        remaining ^= low
        while frontier:
            comp |= frontier
            reach = 0
            for v in _iter_bits(frontier):
                reach |= masks[v]
            frontier = reach & remaining
            remaining &= ~frontier
        blocks.append(list(_iter_bits(comp)))
    result = Partition(blocks)
    if cached is not None:
        cached[s_mask] = result
    return result


def graph_equal(a: Graph, b: Graph) -> bool:
    """Labeled edge-set equality. Raises when vertex counts differ."""
    if a.n != b.n:
        raise InvalidInputError(f"vertex counts differ: {a.n} != {b.n}")
    return a.edges == b.edges


def save_graph(g: Graph, path: str | os.PathLike) -> None:
    """Write the text format: first line n, then one 'u v' line per edge.

    Edges are written with u < v, sorted, so saving is canonical and
    loading a saved file reproduces the bytes.
    """
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for u, v in sorted(g.edges))
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def load_graph(path: str | os.PathLike) -> Graph:
    """Parse the text format written by :func:`save_graph`.

    Lines starting with '#' are ignored; duplicate edge lines are rejected.
    """
    with open(path, "r", encoding="ascii") as fh:
        raw = [line.strip() for line in fh]
    lines = [line for line in raw if line and not line.startswith("#")]
    if not lines:
        raise InvalidInputError("graph file is empty")
    try:
        n = int(lines[0])
    except ValueError:
        raise InvalidInputError(f"bad vertex count line: {lines[0]!r}") from None
    seen: set[tuple[int, int]] = set()
    edges: list[tuple[int, int]] = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise InvalidInputError(f"bad edge line: {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise InvalidInputError(f"bad edge line: {line!r}") from None
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise InvalidInputError(f"duplicate edge line: {line!r}")
        seen.add(key)
        edges.append((u, v))
    return Graph(n, edges)
