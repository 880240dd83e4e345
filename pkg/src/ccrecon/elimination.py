"""Elimination-ordering machinery: exact width decision with memoized
branch-and-bound, the min-fill heuristic, and order-to-bag conversion.

A graph has width <= w along an elimination order when every vertex has at
most w remaining neighbors (in the fill graph) at the moment it is removed.
The fill graph after eliminating a set of vertices depends only on the set,
not on the elimination order inside it, which makes memoization on the
remaining vertex set sound.
"""

from __future__ import annotations

from .errors import CapacityError
from .graphs import Graph

DEFAULT_MAX_STATES = 500_000


def adjacency_dict(g: Graph) -> dict[int, set[int]]:
    return {v: set(g.neighbors(v)) for v in g.vertices()}


def eliminate(adj: dict[int, set[int]], v: int) -> None:
    """Remove v, connecting its neighbors into a clique (in place)."""
    nbrs = adj[v]
    for u in nbrs:
        adj[u].discard(v)
    nbr_list = list(nbrs)
    for i, a in enumerate(nbr_list):
        for b in nbr_list[i + 1:]:
            adj[a].add(b)
            adj[b].add(a)
    del adj[v]


def fill_count(adj: dict[int, set[int]], v: int) -> int:
    """Number of fill edges eliminating v would create."""
    nbr_list = list(adj[v])
    missing = 0
    for i, a in enumerate(nbr_list):
        for b in nbr_list[i + 1:]:
            if b not in adj[a]:
                missing += 1
    return missing


def adj_degeneracy(adj: dict[int, set[int]]) -> int:
    """Degeneracy by min-degree peeling of an adjacency dict."""
    work = {v: set(nb) for v, nb in adj.items()}
    best = 0
    while work:
        v = min(work, key=lambda u: (len(work[u]), u))
        best = max(best, len(work[v]))
        for u in work[v]:
            work[u].discard(v)
        del work[v]
    return best


def contraction_lower_bound(adj: dict[int, set[int]]) -> int:
    """Treewidth lower bound by repeated min-degree contraction (MMD+).

    Contracting an edge yields a minor, so the largest minimum degree seen
    over the contraction sequence bounds the treewidth from below.
    """
    work = {v: set(nb) for v, nb in adj.items()}
    best = 0
    while len(work) > 1:
        v = min(work, key=lambda u: (len(work[u]), u))
        deg = len(work[v])
        best = max(best, deg)
        if deg == 0:
            del work[v]
            continue
        u = min(work[v], key=lambda x: (len(work[x]), x))
        merged = (work[v] | work[u]) - {u, v}
        for x in work[v]:
            work[x].discard(v)
        for x in work[u]:
            work[x].discard(u)
        del work[v]
        del work[u]
        work[u] = merged
        for x in merged:
            work[x].add(u)
    return best


def min_fill_order(g: Graph) -> tuple[list[int], int]:
    """Greedy min-fill elimination order and the width it achieves."""
    adj = adjacency_dict(g)
    order: list[int] = []
    width = 0
    while adj:
        v = min(adj, key=lambda u: (fill_count(adj, u), len(adj[u]), u))
        width = max(width, len(adj[v]))
        order.append(v)
        eliminate(adj, v)
    return order, width


def _is_simplicial(adj: dict[int, set[int]], v: int) -> bool:
    nbr_list = list(adj[v])
    for i, a in enumerate(nbr_list):
        for b in nbr_list[i + 1:]:
            if b not in adj[a]:
                return False
    return True


def _reduce(adj: dict[int, set[int]], w: int, order: list[int]) -> bool:
    """Apply safe eliminations in place. Returns False when the state is
    refuted (a simplicial vertex of degree > w forces a too-large clique)."""
    changed = True
    while changed and adj:
        changed = False
        for v in sorted(adj, key=lambda u: (len(adj[u]), u)):
            deg = len(adj[v])
            if deg > 2:
                break
            if deg <= 1 or (deg == 2 and w >= 2):
                if deg > w:
                    return False
                order.append(v)
                eliminate(adj, v)
                changed = True
                break
        if changed:
            continue
        for v in list(adj):
            if _is_simplicial(adj, v):
                if len(adj[v]) > w:
                    return False
                order.append(v)
                eliminate(adj, v)
                changed = True
                break
    return True


class _Search:
    def __init__(self, w: int, max_states: int):
        self.w = w
        self.max_states = max_states
        self.states = 0
        self.failed: set[frozenset[int]] = set()

    def run(self, adj: dict[int, set[int]], order: list[int]) -> bool:
        if not _reduce(adj, self.w, order):
            return False
        if not adj:
            return True
        key = frozenset(adj)
        if key in self.failed:
            return False
        self.states += 1
        if self.states > self.max_states:
            raise CapacityError(
                f"width-{self.w} elimination search exceeded {self.max_states} states"
            )
        if adj_degeneracy(adj) > self.w:
            self.failed.add(key)
            return False
        candidates = [v for v in adj if len(adj[v]) <= self.w]
        candidates.sort(key=lambda v: (fill_count(adj, v), len(adj[v]), v))
        for v in candidates:
            child = {u: set(nb) for u, nb in adj.items()}
            eliminate(child, v)
            mark = len(order)
            order.append(v)
            if self.run(child, order):
                return True
            del order[mark:]
        self.failed.add(key)
        return False


def find_elimination_order(g: Graph, w: int, max_states: int = DEFAULT_MAX_STATES) -> list[int] | None:
    """An elimination order of width <= w, or None when none exists.

    Raises CapacityError when the branch-and-bound search exceeds its
    state guard.
    """
    if w < 0:
        return None if g.n > 0 or g.m > 0 else []
    if w == 0:
        return sorted(g.vertices()) if g.m == 0 else None
    if w >= g.n - 1:
        return sorted(g.vertices())
    adj = adjacency_dict(g)
    if contraction_lower_bound(adj) > w:
        return None
    order, width = min_fill_order(g)
    if width <= w:
        return order
    adj = adjacency_dict(g)
    order = []
    search = _Search(w, max_states)
    if search.run(adj, order):
        return order
    return None


def order_to_bags(g: Graph, order: list[int]) -> tuple[list[frozenset[int]], list[tuple[int, int]]]:
    """Bags and tree edges of the decomposition induced by an elimination order.

    Bag i is vertex order[i] together with its fill-graph neighborhood at
    elimination time; bag i attaches to the bag of the first-eliminated
    vertex among that neighborhood. Forest components are chained so the
    result is a single tree.
    """
    if g.n == 0:
        return [frozenset()], []
    adj = adjacency_dict(g)
    position = {v: i for i, v in enumerate(order)}
    bags: list[frozenset[int]] = []
    tree_edges: list[tuple[int, int]] = []
    roots: list[int] = []
    for i, v in enumerate(order):
        nbrs = set(adj[v])
        bags.append(frozenset(nbrs | {v}))
        if nbrs:
            parent_vertex = min(nbrs, key=lambda u: position[u])
            tree_edges.append((i, position[parent_vertex]))
        else:
            roots.append(i)
        eliminate(adj, v)
    for a, b in zip(roots, roots[1:]):
        tree_edges.append((a, b))
    return bags, tree_edges
