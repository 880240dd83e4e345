"""Reconstruction for graphs of bounded maximum degree (and the
pairwise-connectivity generalization), in randomized, scheme-driven, and
unknown-parameter variants.
"""

from __future__ import annotations

import random

from .candidate import bernoulli_members, removal_query_count, split_removal_program
from .errors import InvalidInputError
from .graphs import Graph
from .oracles import OracleSession, drive_program
from .schemes import QueryScheme, build_splitter, scheme_from_splitter


def _check_mode(rng, scheme):
    if (rng is None) == (scheme is None):
        raise InvalidInputError("provide exactly one of rng (randomized) or scheme")


def _random_queries(n, p, rng, count):
    for _ in range(count):
        yield bernoulli_members(range(n), p + 1, rng)


def bounded_degree_program(n: int, delta: int, *, rng: random.Random | None = None,
                           scheme: QueryScheme | None = None,
                           collect_sizes: bool = False):
    """Program form of the non-adaptive bounded-degree reconstruction.

    Randomized mode performs exactly removal_query_count(n, delta) queries
    with inclusion probability 1/(delta+1); scheme mode performs one query
    per scheme entry.
    """
    _check_mode(rng, scheme)
    if delta < 0:
        raise InvalidInputError(f"degree bound must be nonnegative, got {delta}")
    if scheme is not None:
        if scheme.p != delta:
            raise InvalidInputError(
                f"scheme has p={scheme.p}, expected the degree bound {delta}"
            )
        if scheme.n != n:
            raise InvalidInputError(f"scheme is for n={scheme.n}, session has n={n}")
        queries = iter(scheme.queries)
    else:
        queries = _random_queries(n, delta, rng, removal_query_count(n, delta))
    graph, stats = yield from split_removal_program(n, queries, collect_sizes=collect_sizes)
    stats["rounds"] = 1
    return graph, stats


def reconstruct_bounded_degree(session: OracleSession, delta: int, *,
                               rng: random.Random | None = None,
                               scheme: QueryScheme | None = None,
                               stats: dict | None = None) -> Graph:
    """Recover a hidden graph whose maximum degree is at most delta."""
    graph, info = drive_program(
        session,
        bounded_degree_program(session.n, delta, rng=rng, scheme=scheme,
                               collect_sizes=stats is not None),
    )
    if stats is not None:
        stats.update(info)
    return graph


def reconstruct_bounded_connectivity(session: OracleSession, lam: int, *,
                                     rng: random.Random | None = None,
                                     scheme: QueryScheme | None = None,
                                     stats: dict | None = None) -> Graph:
    """Same removal machinery with the pairwise-connectivity parameter.

    Any two non-adjacent vertices are separated by at most lam vertices, so
    inclusion probability 1/(lam+1) suffices and lam replaces the degree
    bound everywhere.
    """
    return reconstruct_bounded_degree(session, lam, rng=rng, scheme=scheme, stats=stats)


def unknown_degree_program(n: int, *, rng: random.Random | None = None,
                           deterministic: bool = False):
    """Doubling wrapper: guess D, run the bounded-degree routine as if the
    bound were D+1, and double D whenever the output shows a vertex of
    degree above D."""
    if deterministic == (rng is not None):
        raise InvalidInputError("provide rng for randomized mode or deterministic=True")
    guess = 1
    guesses = []
    round_queries = []
    while True:
        guesses.append(guess)
        bound = guess + 1
        if deterministic:
            scheme = scheme_from_splitter(build_splitter(n, bound + 2), bound)
            graph, info = yield from bounded_degree_program(n, bound, scheme=scheme)
        else:
            graph, info = yield from bounded_degree_program(n, bound, rng=rng)
        round_queries.append(info["queries"])
        if graph.max_degree() <= guess:
            stats = {
                "rounds": len(guesses),
                "doublings": len(guesses) - 1,
                "guesses": guesses,
                "guess_final": guess,
                "round_queries": round_queries,
                "queries": sum(round_queries),
            }
            return graph, stats
        guess *= 2


def reconstruct_unknown_degree(session: OracleSession, *,
                               rng: random.Random | None = None,
                               deterministic: bool = False,
                               stats: dict | None = None) -> Graph:
    """Bounded-degree reconstruction without a known degree bound."""
    graph, info = drive_program(
        session, unknown_degree_program(session.n, rng=rng, deterministic=deterministic)
    )
    if stats is not None:
        stats.update(info)
    return graph
