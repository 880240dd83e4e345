"""Adaptive neighbor search by group testing, and the edge-count-bounded
reconstruction built on it.

This is the deterministic contender used by the race combinator. Its query
bound is O((n+m) log n): for each vertex the binary splitting touches each
found neighbor O(log n) times plus one probe per miss level.
"""

from __future__ import annotations

from .errors import InvalidInputError
from .graphs import Graph
from .oracles import OracleSession, drive_program


def _neighbor_search(v: int, s: frozenset[int], counter: list[int]):
    """Yield CC queries to find N(v) within s: query {v} | s, then recurse
    into halves of v's component."""
    counter[0] += 1
    parts = yield frozenset((v,)) | s
    component = parts.block_of(v) - {v}
    if not component:
        return frozenset()
    if len(s) == 1:
        return frozenset(s)
    ordered = sorted(component)
    mid = (len(ordered) + 1) // 2
    found = yield from _neighbor_search(v, frozenset(ordered[:mid]), counter)
    if ordered[mid:]:
        more = yield from _neighbor_search(v, frozenset(ordered[mid:]), counter)
        found |= more
    return found


def find_neighbors_program(n: int, v: int, s):
    s = frozenset(s)
    if not (0 <= v < n):
        raise InvalidInputError(f"vertex {v} out of range for n={n}")
    if v in s:
        raise InvalidInputError(f"vertex {v} must not be in the searched set")
    counter = [0]
    found = yield from _neighbor_search(v, s, counter)
    return found, {"queries": counter[0]}


def find_neighbors(session: OracleSession, v: int, s, *,
                   stats: dict | None = None) -> frozenset[int]:
    """Exactly the neighbors of v inside s, via adaptive binary splitting."""
    found, info = drive_program(session, find_neighbors_program(session.n, v, s))
    if stats is not None:
        stats.update(info)
    return found


def edge_bounded_program(n: int):
    """Reconstruct by finding each vertex's neighbors among later vertices."""
    edges = []
    total = 0
    for v in range(n):
        rest = frozenset(range(v + 1, n))
        found, info = yield from find_neighbors_program(n, v, rest)
        total += info["queries"]
        edges.extend((v, u) for u in found)
    return Graph(n, edges), {"queries": total, "rounds": n}


def reconstruct_edge_bounded(session: OracleSession, *,
                             stats: dict | None = None) -> Graph:
    """Deterministic exact reconstruction; efficient when edges are few."""
    graph, info = drive_program(session, edge_bounded_program(session.n))
    if stats is not None:
        stats.update(info)
    return graph
