"""Reconstruction for graphs of bounded treewidth.

Phase one learns a supergraph candidate with the same split-removal loop as
the bounded-degree algorithm (exclusion size k suffices because non-edges of
a width-k completion have separators of size k). Phase two plans a
non-adaptive query collection from a tree decomposition of the candidate:
balanced separators isolate pair tests inside components, and color classes
of a proper coloring let one query test a separator vertex against a whole
independent set at once.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

from . import elimination
from .candidate import CandidateGraph, split_removal_program
from .errors import CapacityError, InvalidInputError
from .graphs import Graph, components_bruteforce
from .oracles import OracleSession, drive_program
from .params import treewidth_leq
from .recon_maxdeg import bounded_degree_program
from .schemes import QueryScheme, build_splitter, scheme_from_splitter

AUTO_EXACT_MAX_N = 60
AUTO_EXACT_MAX_STATES = 100_000


def _as_graph(h) -> Graph:
    if isinstance(h, CandidateGraph):
        return h.to_graph()
    if isinstance(h, Graph):
        return h
    raise InvalidInputError(f"expected a graph or candidate, got {type(h).__name__}")


@dataclass(frozen=True)
class TreeDecomposition:
    """Tree of bags over a graph; width is the largest bag size minus one."""

    bags: tuple[frozenset[int], ...]
    tree_edges: tuple[tuple[int, int], ...]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def neighbors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.bags]
        for a, b in self.tree_edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def validate(self, g: Graph) -> bool:
        """Check the three decomposition conditions plus tree shape."""
        b = len(self.bags)
        if b == 0 or len(self.tree_edges) != b - 1:
            return False
        adj = self.neighbors()
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != b:
            return False
        covered: set[int] = set()
        for bag in self.bags:
            covered |= bag
        if covered != set(g.vertices()):
            return False
        for u, v in g.edges:
            if not any(u in bag and v in bag for bag in self.bags):
                return False
        for v in g.vertices():
            holding = [i for i, bag in enumerate(self.bags) if v in bag]
            reached = {holding[0]}
            stack = [holding[0]]
            holding_set = set(holding)
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y in holding_set and y not in reached:
                        reached.add(y)
                        stack.append(y)
            if reached != holding_set:
                return False
        return True


def tree_decomposition(h, strategy: str = "min_fill", *, k: int | None = None,
                       max_states: int = elimination.DEFAULT_MAX_STATES) -> TreeDecomposition:
    """Tree decomposition of a candidate graph.

    'min_fill' is the greedy heuristic; 'exact' decides width <= k and raises
    CapacityError when the search is guarded out or no such decomposition
    exists; 'auto' tries to improve on min-fill with a bounded exact search.
    """
    g = _as_graph(h)
    if strategy == "min_fill":
        order, _ = elimination.min_fill_order(g)
    elif strategy == "exact":
        if k is None:
            raise InvalidInputError("exact strategy needs a target width k")
        order = elimination.find_elimination_order(g, k, max_states=max_states)
        if order is None:
            raise CapacityError(f"no tree decomposition of width <= {k} exists")
    elif strategy == "auto":
        order = _auto_order(g)
    else:
        raise InvalidInputError(f"unknown strategy {strategy!r}")
    bags, tree_edges = elimination.order_to_bags(g, order)
    return TreeDecomposition(bags=tuple(bags), tree_edges=tuple(tree_edges))


def _auto_order(g: Graph) -> list[int]:
    order_mf, width_mf = elimination.min_fill_order(g)
    if g.n > AUTO_EXACT_MAX_N:
        return order_mf
    low = elimination.contraction_lower_bound(elimination.adjacency_dict(g))
    for w in range(low, width_mf):
        try:
            order = elimination.find_elimination_order(
                g, w, max_states=AUTO_EXACT_MAX_STATES)
        except CapacityError:
            return order_mf
        if order is not None:
            return order
    return order_mf


def _peel_elimination_order(td: TreeDecomposition) -> list[int]:
    """Vertex order from repeatedly peeling leaf bags: vertices unique to the
    current leaf go first. The reverse is a coloring-friendly order."""
    adj = [set(nb) for nb in td.neighbors()]
    alive = set(range(len(td.bags)))
    eliminated: set[int] = set()
    order: list[int] = []
    while alive:
        if len(alive) == 1:
            t = next(iter(alive))
            order.extend(sorted(td.bags[t] - eliminated))
            eliminated |= td.bags[t]
            alive.remove(t)
            break
        t = min(i for i in alive if len(adj[i]) <= 1)
        parent = next(iter(adj[t]))
        unique = sorted((td.bags[t] - td.bags[parent]) - eliminated)
        order.extend(unique)
        eliminated |= set(unique)
        adj[parent].discard(t)
        adj[t].clear()
        alive.remove(t)
    return order


def proper_coloring(h, td: TreeDecomposition) -> dict[int, int]:
    """Greedy coloring along the reverse of a decomposition-derived
    elimination order; uses at most width+1 colors."""
    g = _as_graph(h)
    if not td.validate(g):
        raise InvalidInputError("tree decomposition does not cover the graph")
    order = _peel_elimination_order(td)
    coloring: dict[int, int] = {}
    for v in reversed(order):
        taken = {coloring[u] for u in g.neighbors(v) if u in coloring}
        c = 1
        while c in taken:
            c += 1
        coloring[v] = c
    return coloring


def balanced_separator(h, td: TreeDecomposition, comp: frozenset[int]) -> frozenset[int]:
    """A bag restricted to the component whose removal leaves all pieces at
    most half the component size; tiny components separate themselves."""
    g = _as_graph(h)
    comp = frozenset(comp)
    if len(comp) <= td.width + 1:
        return comp
    for bag in td.bags:
        restricted = bag & comp
        if not restricted:
            continue
        leftover = comp - restricted
        if all(2 * len(block) <= len(comp)
               for block in components_bruteforce(g, leftover).blocks):
            return restricted
    raise CapacityError("no balanced separator bag found; decomposition invalid")


@dataclass(frozen=True)
class IterationPlan:
    """One while-iteration of the pruning plan."""

    unprocessed: frozenset[int]
    separators: tuple[frozenset[int], ...]
    h_max: int
    k1_sets: tuple[frozenset[int], ...]
    k2_sets: tuple[frozenset[int], ...]


@dataclass(frozen=True)
class PrunePlan:
    iterations: tuple[IterationPlan, ...]

    def queries(self) -> list[frozenset[int]]:
        out: list[frozenset[int]] = []
        for it in self.iterations:
            out.extend(it.k1_sets)
            out.extend(it.k2_sets)
        return out

    def to_json(self) -> str:
        payload = [
            {
                "unprocessed": sorted(it.unprocessed),
                "separators": [sorted(s) for s in it.separators],
                "h": it.h_max,
                "k1": [sorted(q) for q in it.k1_sets],
                "k2": [sorted(q) for q in it.k2_sets],
            }
            for it in self.iterations
        ]
        return json.dumps(payload, indent=2)


def plan_prune_queries(h, td: TreeDecomposition, coloring: dict[int, int]) -> PrunePlan:
    """Build every query of the pruning phase up front (it is non-adaptive
    once the candidate is fixed)."""
    g = _as_graph(h)
    n_colors = td.width + 1
    remaining = set(range(g.n))
    iterations: list[IterationPlan] = []
    while remaining:
        comps = components_bruteforce(g, remaining).blocks
        separators = [balanced_separator(g, td, comp) for comp in comps]
        ordered = [sorted(s) for s in separators]
        h_max = max(len(s) for s in ordered)
        k1: list[frozenset[int]] = []
        for i in range(1, h_max + 1):
            for j in range(i + 1, h_max + 1):
                q: set[int] = set()
                for sep in ordered:
                    if len(sep) >= i:
                        q.add(sep[i - 1])
                    if len(sep) >= j:
                        q.add(sep[j - 1])
                k1.append(frozenset(q))
        union_s = set()
        for sep in ordered:
            union_s.update(sep)
        rest = remaining - union_s
        classes: dict[int, list[int]] = {c: [] for c in range(1, n_colors + 1)}
        for v in sorted(rest):
            classes[coloring[v]].append(v)
        k2: list[frozenset[int]] = []
        for i in range(1, h_max + 1):
            for c in range(1, n_colors + 1):
                q = {sep[(i - 1) % len(sep)] for sep in ordered}
                q.update(classes[c])
                k2.append(frozenset(q))
        iterations.append(IterationPlan(
            unprocessed=frozenset(remaining),
            separators=tuple(frozenset(s) for s in ordered),
            h_max=h_max,
            k1_sets=tuple(k1),
            k2_sets=tuple(k2),
        ))
        remaining = rest
    return PrunePlan(iterations=tuple(iterations))


def prune_program(h, *, td: TreeDecomposition | None = None,
                  plan: PrunePlan | None = None):
    """Program form of the pruning phase: run the planned queries and delete
    every candidate pair the oracle certifies as split."""
    g = _as_graph(h)
    if plan is None:
        if td is None:
            td = tree_decomposition(g, strategy="auto")
        coloring = proper_coloring(g, td)
        plan = plan_prune_queries(g, td, coloring)
    surviving, info = yield from split_removal_program(g.n, plan.queries())
    edges = g.edges & surviving.edges
    stats = {
        "queries": info["queries"],
        "prune_iterations": len(plan.iterations),
    }
    return Graph(g.n, edges), stats


def learn_supergraph(session: OracleSession, k: int, *,
                     rng: random.Random | None = None,
                     scheme: QueryScheme | None = None,
                     stats: dict | None = None) -> CandidateGraph:
    """Phase one: a candidate that contains the hidden graph and, with high
    probability, has treewidth at most k."""
    graph, info = drive_program(
        session, bounded_degree_program(session.n, k, rng=rng, scheme=scheme)
    )
    if stats is not None:
        stats.update(info)
    return CandidateGraph.from_graph(graph)


def prune_supergraph(session: OracleSession, h, *,
                     td: TreeDecomposition | None = None,
                     stats: dict | None = None) -> Graph:
    """Phase two: recover the hidden graph from a supergraph candidate."""
    graph, info = drive_program(session, prune_program(h, td=td))
    if stats is not None:
        stats.update(info)
    return graph


def treewidth_program(n: int, k: int, *, rng: random.Random | None = None,
                      scheme: QueryScheme | None = None):
    """Both phases as one program (two rounds of adaptivity)."""
    cand, learn_info = yield from bounded_degree_program(n, k, rng=rng, scheme=scheme)
    graph, prune_info = yield from prune_program(cand)
    stats = {
        "learn_queries": learn_info["queries"],
        "prune_queries": prune_info["queries"],
        "prune_iterations": prune_info["prune_iterations"],
        "queries": learn_info["queries"] + prune_info["queries"],
        "rounds": prune_info["prune_iterations"],
    }
    return graph, stats


def reconstruct_treewidth(session: OracleSession, k: int, *,
                          rng: random.Random | None = None,
                          scheme: QueryScheme | None = None,
                          stats: dict | None = None) -> Graph:
    """Recover a hidden graph of treewidth at most k."""
    if k < 0:
        raise InvalidInputError(f"treewidth bound must be nonnegative, got {k}")
    graph, info = drive_program(session, treewidth_program(session.n, k, rng=rng, scheme=scheme))
    if stats is not None:
        stats.update(info)
    return graph


def unknown_treewidth_program(n: int, *, rng: random.Random | None = None,
                              deterministic: bool = False,
                              decision_max_n: int = AUTO_EXACT_MAX_N,
                              decision_max_states: int = elimination.DEFAULT_MAX_STATES):
    """Doubling wrapper: learn with guess D; if the candidate's treewidth
    exceeds D the guess was low, so double and relearn; otherwise prune."""
    if deterministic == (rng is not None):
        raise InvalidInputError("provide rng for randomized mode or deterministic=True")
    guess = 1
    guesses = []
    round_queries = []
    while True:
        guesses.append(guess)
        if deterministic:
            scheme = scheme_from_splitter(build_splitter(n, guess + 2), guess)
            cand, info = yield from bounded_degree_program(n, guess, scheme=scheme)
        else:
            cand, info = yield from bounded_degree_program(n, guess, rng=rng)
        round_queries.append(info["queries"])
        if treewidth_leq(cand, guess, max_n=decision_max_n,
                         max_states=decision_max_states):
            graph, prune_info = yield from prune_program(cand)
            stats = {
                "rounds": len(guesses),
                "doublings": len(guesses) - 1,
                "guesses": guesses,
                "guess_final": guess,
                "round_queries": round_queries,
                "prune_queries": prune_info["queries"],
                "prune_iterations": prune_info["prune_iterations"],
                "queries": sum(round_queries) + prune_info["queries"],
            }
            return graph, stats
        guess *= 2


def reconstruct_unknown_treewidth(session: OracleSession, *,
                                  rng: random.Random | None = None,
                                  deterministic: bool = False,
                                  stats: dict | None = None) -> Graph:
    """Treewidth pipeline without a known width bound (desk scale: the
    stopping rule runs the exact treewidth decision on the candidate)."""
    graph, info = drive_program(
        session,
        unknown_treewidth_program(session.n, rng=rng, deterministic=deterministic),
    )
    if stats is not None:
        stats.update(info)
    return graph
