"""Graph parameter computations: maximum degree, degeneracy, exact
treewidth decision, and maximum pairwise connectivity.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from . import elimination
from .errors import CapacityError
from .graphs import Graph

TREEWIDTH_MAX_N = 60


def degeneracy(g: Graph) -> int:
    """Smallest d such that every induced subgraph has a vertex of degree <= d.

    Computed by the standard min-degree peeling order.
    """
    adj = {v: set(g.neighbors(v)) for v in g.vertices()}
    best = 0
    while adj:
        v = min(adj, key=lambda u: (len(adj[u]), u))
        best = max(best, len(adj[v]))
        for u in adj[v]:
            adj[u].discard(v)
        del adj[v]
    return best


def treewidth_leq(g: Graph, w: int, *, max_n: int = TREEWIDTH_MAX_N,
                  max_states: int = elimination.DEFAULT_MAX_STATES) -> bool:
    """Exact decision: is the treewidth of g at most w?

    Intended for desk scale; raises CapacityError beyond the vertex guard or
    when the underlying search exceeds its state guard.
    """
    if g.n > max_n:
        raise CapacityError(f"treewidth decision guarded at n <= {max_n}, got n={g.n}")
    return elimination.find_elimination_order(g, w, max_states=max_states) is not None


def exact_treewidth(g: Graph, *, max_n: int = TREEWIDTH_MAX_N,
                    max_states: int = elimination.DEFAULT_MAX_STATES) -> int:
    """Exact treewidth by increasing-width decisions, desk scale only."""
    if g.n > max_n:
        raise CapacityError(f"treewidth computation guarded at n <= {max_n}, got n={g.n}")
    if g.n == 0:
        return 0
    adj = elimination.adjacency_dict(g)
    low = elimination.contraction_lower_bound(adj)
    _, high = elimination.min_fill_order(g)
    w = low
    while w < high:
        if elimination.find_elimination_order(g, w, max_states=max_states) is not None:
            return w
        w += 1
    return high


def quick_treewidth(g: Graph) -> int | None:
    """Treewidth when the contraction lower bound meets the min-fill upper
    bound; None otherwise. Cheap enough for per-record bookkeeping."""
    if g.n == 0:
        return 0
    low = elimination.contraction_lower_bound(elimination.adjacency_dict(g))
    _, high = elimination.min_fill_order(g)
    return high if low == high else None


def _max_flow_paths(g: Graph, u: int, v: int) -> int:
    """Internally vertex-disjoint u-v paths with at least one internal vertex.

    Unit-capacity max flow on the vertex-split network, with the direct edge
    uv removed (it would be the only internal-vertex-free path).
    """
    n = g.n
    # Node 2x = entry of x, 2x+1 = exit of x. Source is exit(u), sink entry(v).
    capacity: dict[tuple[int, int], int] = {}
    adj: dict[int, list[int]] = {}

    def add_edge(a: int, b: int, cap: int) -> None:
        if (a, b) not in capacity:
            capacity[(a, b)] = 0
            capacity[(b, a)] = capacity.get((b, a), 0)
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        capacity[(a, b)] += cap

    for x in g.vertices():
        if x != u and x != v:
            add_edge(2 * x, 2 * x + 1, 1)
    for a, b in g.edges:
        if {a, b} == {u, v}:
            continue
        add_edge(2 * a + 1, 2 * b, n)
        add_edge(2 * b + 1, 2 * a, n)
    source, sink = 2 * u + 1, 2 * v
    flow = 0
    while True:
        parent = {source: source}
        queue = deque([source])
        while queue and sink not in parent:
            x = queue.popleft()
            for y in adj.get(x, ()):
                if y not in parent and capacity.get((x, y), 0) > 0:
                    parent[y] = x
                    queue.append(y)
        if sink not in parent:
            return flow
        y = sink
        while y != source:
            x = parent[y]
            capacity[(x, y)] -= 1
            capacity[(y, x)] += 1
            y = x
        flow += 1


def pairwise_connectivity(g: Graph) -> int:
    """Maximum over vertex pairs of the number of vertex-disjoint connecting
    paths that each use at least one internal vertex."""
    best = 0
    for u in range(g.n):
        for v in range(u + 1, g.n):
            best = max(best, _max_flow_paths(g, u, v))
    return best


@dataclass(frozen=True)
class GraphParams:
    """The classical parameters of one graph; None marks values left
    uncomputed because a size guard was exceeded."""

    max_degree: int
    degeneracy: int
    treewidth: int | None
    pairwise_connectivity: int | None
    edge_count: int


def graph_params(g: Graph, *, treewidth_max_n: int = TREEWIDTH_MAX_N,
                 lambda_max_n: int = TREEWIDTH_MAX_N) -> GraphParams:
    """Compute all parameters, skipping the expensive ones beyond their guards."""
    tw: int | None
    try:
        tw = exact_treewidth(g, max_n=treewidth_max_n)
    except CapacityError:
        tw = None
    lam = pairwise_connectivity(g) if g.n <= lambda_max_n else None
    return GraphParams(
        max_degree=g.max_degree(),
        degeneracy=degeneracy(g),
        treewidth=tw,
        pairwise_connectivity=lam,
        edge_count=g.m,
    )
