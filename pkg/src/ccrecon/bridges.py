"""Executable oracle simulations: each procedure answers one oracle's query
using another oracle, with exact query accounting.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import InvalidInputError
from .graphs import Partition
from .oracles import OracleSession


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra

    def groups(self):
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())


def mis_via_cc(session: OracleSession, s) -> frozenset[int]:
    """Maximal independent set of the hidden graph on s, using |s| CC queries.

    Grow a set T through s in ascending order; keep a vertex exactly when the
    CC answer on T plus the vertex is all singletons.
    """
    chosen: list[int] = []
    for v in sorted(set(s)):
        parts = session.cc_query(set(chosen) | {v})
        if all(len(block) == 1 for block in parts.blocks):
            chosen.append(v)
    return frozenset(chosen)


def components_via_mis(session: OracleSession, s) -> Partition:
    """Components of the hidden graph on s from pairwise MIS queries.

    A MIS of a two-vertex subgraph has size 2 exactly when the pair is a
    non-edge, so C(|s|,2) queries decode the adjacency; union-find assembles
    the components.
    """
    members = sorted(set(s))
    uf = _UnionFind(members)
    for i, u in enumerate(members):
        for v in members[i + 1:]:
            answer = session.mis_query({u, v})
            if len(answer) == 1:
                uf.union(u, v)
    return Partition(uf.groups())


def sep_via_cc(session: OracleSession, v: int, w: int, u) -> bool:
    """Answer a separation query with one CC query on the complement."""
    us = frozenset(u)
    if v == w:
        raise InvalidInputError("separation query needs two distinct vertices")
    if v in us or w in us:
        raise InvalidInputError("separation endpoints must not be in the removed set")
    rest = frozenset(range(session.n)) - us
    parts = session.cc_query(rest)
    return not parts.same_block(v, w)


def components_via_sep(session: OracleSession, s) -> Partition:
    """Components of the hidden graph on s from C(|s|,2) separation queries,
    each removing everything outside s."""
    members = sorted(set(s))
    outside = frozenset(range(session.n)) - set(members)
    uf = _UnionFind(members)
    for i, u in enumerate(members):
        for v in members[i + 1:]:
            separated = session.sep_query(u, v, outside)
            if not separated:
                uf.union(u, v)
    return Partition(uf.groups())


def pairwise_neighborhood_via_mis(session: OracleSession, v: int) -> frozenset[int]:
    """Certify N(v) with n-1 pairwise MIS queries (size-1 answer = edge).

    Pair queries cannot be gamed by an adversarial MIS strategy, so this is
    the canonical certificate that costs linearly many MIS queries on stars.
    """
    neighbors = []
    for u in range(session.n):
        if u == v:
            continue
        answer = session.mis_query({v, u})
        if len(answer) == 1:
            neighbors.append(u)
    return frozenset(neighbors)


BRIDGES = {
    "mis-via-cc": mis_via_cc,
    "components-via-mis": components_via_mis,
    "sep-via-cc": sep_via_cc,
    "components-via-sep": components_via_sep,
}


@dataclass
class BridgeReport:
    procedure: str
    queries_used: int
    output: object

    def to_json(self) -> str:
        out = self.output
        if isinstance(out, Partition):
            payload = out.to_lists()
        elif isinstance(out, frozenset):
            payload = sorted(out)
        else:
            payload = out
        return json.dumps({
            "procedure": self.procedure,
            "queries_used": self.queries_used,
            "output": payload,
        }, sort_keys=True)


def run_bridge(procedure: str, session: OracleSession, **kwargs) -> BridgeReport:
    """Dispatch one bridge procedure and report its exact query cost."""
    try:
        fn = BRIDGES[procedure]
    except KeyError:
        raise InvalidInputError(
            f"unknown bridge {procedure!r}; known: {', '.join(sorted(BRIDGES))}"
        ) from None
    before = session.query_count
    output = fn(session, **kwargs)
    return BridgeReport(
        procedure=procedure,
        queries_used=session.query_count - before,
        output=output,
    )
