"""Reconstruction for graphs of bounded degeneracy: peel off low-degree
vertices in rounds, learning each round's induced subgraph with the
bounded-degree routine run at the (deliberately wrong) bound 4d.

In a d-degenerate graph every induced subgraph has average degree at most
2d, so at least half its vertices have degree at most 4d; each round
therefore halves the active set and the loop ends within 1 + log2(n) rounds.
"""

from __future__ import annotations

import random

from .candidate import bernoulli_members, removal_query_count, split_removal_program
from .errors import InvalidInputError, ParameterTooSmallError
from .graphs import Graph
from .oracles import OracleSession, drive_program
from .schemes import QueryScheme, build_splitter, scheme_from_splitter


def _inner_queries(active, bound, rng, scheme):
    if scheme is not None:
        for q in scheme.queries:
            restricted = q & active
            if restricted:
                yield restricted
    else:
        for _ in range(removal_query_count(len(active), bound)):
            yield bernoulli_members(active, bound + 1, rng)


def degeneracy_program(n: int, d: int, *, rng: random.Random | None = None,
                       scheme: QueryScheme | None = None,
                       require_half_progress: bool = False):
    """Program form of the peeling loop.

    Each round reconstructs the active induced subgraph at degree bound 4d,
    commits the learned non-edges, and retires every vertex whose learned
    degree is at most 4d. An empty retirement set (or, when
    require_half_progress is set, one smaller than half the active set)
    signals that d was an underestimate.
    """
    if (rng is None) == (scheme is None):
        raise InvalidInputError("provide exactly one of rng (randomized) or scheme")
    if d < 0:
        raise InvalidInputError(f"degeneracy bound must be nonnegative, got {d}")
    bound = 4 * d
    if scheme is not None:
        if scheme.p != bound:
            raise InvalidInputError(
                f"scheme has p={scheme.p}, the degeneracy routine at d={d} needs p={bound}"
            )
        if scheme.n != n:
            raise InvalidInputError(f"scheme is for n={scheme.n}, session has n={n}")
    candidate = {(u, v) for u in range(n) for v in range(u + 1, n)}
    active = frozenset(range(n))
    round_log: list[dict] = []
    total_queries = 0
    while active:
        queries = _inner_queries(active, bound, rng, scheme)
        learned, info = yield from split_removal_program(n, queries, active=active)
        total_queries += info["queries"]
        ordered = sorted(active)
        learned_edges = learned.edges
        for i, u in enumerate(ordered):
            for v in ordered[i + 1:]:
                if (u, v) not in learned_edges:
                    candidate.discard((u, v))
        low = frozenset(v for v in active if learned.degree(v) <= bound)
        round_log.append({
            "active": len(active),
            "removed": len(low),
            "queries": info["queries"],
        })
        if not low:
            raise ParameterTooSmallError(
                f"no vertex of learned degree <= {bound}; degeneracy exceeds {d}"
            )
        if require_half_progress and 2 * len(low) < len(active):
            raise ParameterTooSmallError(
                f"round removed {len(low)} of {len(active)} vertices; degeneracy exceeds {d}"
            )
        active -= low
    stats = {
        "rounds": len(round_log),
        "round_log": round_log,
        "queries": total_queries,
    }
    return Graph(n, candidate), stats


def reconstruct_degeneracy(session: OracleSession, d: int, *,
                           rng: random.Random | None = None,
                           scheme: QueryScheme | None = None,
                           stats: dict | None = None) -> Graph:
    """Recover a hidden graph of degeneracy at most d.

    In scheme mode pass a 4d-exclusion scheme over the full vertex set; each
    round restricts it to the active vertices.
    """
    graph, info = drive_program(
        session, degeneracy_program(session.n, d, rng=rng, scheme=scheme)
    )
    if stats is not None:
        stats.update(info)
    return graph


def unknown_degeneracy_program(n: int, *, rng: random.Random | None = None,
                               deterministic: bool = False):
    """Doubling wrapper: attempt the peel with guess D, restarting from
    scratch with 2D whenever a round retires less than half the active set."""
    if deterministic == (rng is not None):
        raise InvalidInputError("provide rng for randomized mode or deterministic=True")
    guess = 1
    guesses = []
    restarts = 0
    while True:
        guesses.append(guess)
        try:
            if deterministic:
                scheme = scheme_from_splitter(build_splitter(n, 4 * guess + 2), 4 * guess)
                graph, info = yield from degeneracy_program(
                    n, guess, scheme=scheme, require_half_progress=True)
            else:
                graph, info = yield from degeneracy_program(
                    n, guess, rng=rng, require_half_progress=True)
        except ParameterTooSmallError:
            restarts += 1
            guess *= 2
            continue
        info.update({
            "restarts": restarts,
            "guesses": guesses,
            "guess_final": guess,
        })
        return graph, info


def reconstruct_unknown_degeneracy(session: OracleSession, *,
                                   rng: random.Random | None = None,
                                   deterministic: bool = False,
                                   stats: dict | None = None) -> Graph:
    """Degeneracy peeling without a known bound."""
    graph, info = drive_program(
        session,
        unknown_degeneracy_program(session.n, rng=rng, deterministic=deterministic),
    )
    if stats is not None:
        stats.update(info)
    return graph
